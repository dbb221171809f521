//! Reads channel and scheme documents, validates them and round-trips them.
//!
//! Run with `cargo run --example spec_files`.

use secbc::specfile::{parse_document, parse_scheme, to_json};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

fn main() -> secbc::Result<()> {
    let text = std::fs::read_to_string(format!("{DATA}/dirty.json"))?;
    let doc = parse_document(&text)?;
    println!("alphabets: {:?}", doc.spec.alphabets);
    println!("violations: {:?}", doc.spec.validate());

    let scheme_text = std::fs::read_to_string(format!("{DATA}/dirty_scheme.json"))?;
    let scheme = parse_scheme(&scheme_text, &doc.spec.alphabets)?;
    println!("scheme alphabets: {:?}", scheme.alphabets);

    let combined = to_json(&doc.spec, Some(&scheme));
    let back = parse_document(&combined)?;
    println!("round trip equal: {}", back.spec == doc.spec && back.scheme.as_ref() == Some(&scheme));

    let mut broken = doc.spec.clone();
    broken.channel_law[0] = 0.85;
    for v in broken.validate() {
        println!("violation: {v}");
    }
    Ok(())
}
