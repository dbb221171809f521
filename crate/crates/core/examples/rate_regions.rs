//! Evaluates the four regions for one fixed scheme on a channel with state.
//!
//! Run with `cargo run --example rate_regions`.

use secbc::presets;
use secbc::region::{polygon_labeled, RegionKind, SecureTerms};
use secbc::induced_joint;

fn main() -> secbc::Result<()> {
    let spec = presets::binary_dirty_channel(0.2, 0.02, 0.2);
    let scheme = presets::state_copy_scheme(&spec.alphabets, 0.3, 0.45);
    let j = induced_joint(&spec, &scheme)?;

    let t = SecureTerms::compute(&j)?;
    println!("{t:#?}");

    for kind in RegionKind::ALL {
        let b = kind.evaluate(&j)?;
        println!(
            "{:<10} r1 <= {:.4}  r2 <= {:.4}  r1 + r2 <= {:.4}",
            kind.name(),
            b.r1_max,
            b.r2_max,
            b.sum_max
        );
        let poly = polygon_labeled(&b, kind);
        for (label, v) in poly.labels.iter().zip(&poly.vertices) {
            println!("    {label:<2} {v}");
        }
    }
    Ok(())
}
