//! Entropies and mutual informations of a small joint distribution.
//!
//! Run with `cargo run --example entropy`.

use secbc::prob::{binary_entropy, vars, JointDistribution};

fn main() -> secbc::Result<()> {
    // X uniform bit through a BSC(0.11), and Z an independent fair coin.
    let p = 0.11;
    let bsc = JointDistribution::new(
        vars(&[("X", 2), ("Y", 2)]),
        vec![0.5 * (1.0 - p), 0.5 * p, 0.5 * p, 0.5 * (1.0 - p)],
    )?;
    let coin = JointDistribution::uniform(vars(&[("Z", 2)]))?;
    let j = bsc.product(&coin)?;

    println!("H(X)       = {:.6}", j.entropy(&["X"], &[])?);
    println!("H(Y|X)     = {:.6}", j.entropy(&["Y"], &["X"])?);
    println!("I(X;Y)     = {:.6}", j.mutual_information(&["X"], &["Y"], &[])?);
    println!("1 - h(p)   = {:.6}", 1.0 - binary_entropy(p));
    println!("I(X;Z|Y)   = {:.6}", j.mutual_information(&["X"], &["Z"], &["Y"])?);

    let given_y0 = j.condition(&[("Y", 0)])?;
    println!("p(X | Y=0) = {:?}", given_y0.marginalize(&["X"])?.mass());
    Ok(())
}
