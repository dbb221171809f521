//! Corner points of the secure region and the two single-user rectangles.
//!
//! Run with `cargo run --example corner_points`.

use secbc::presets;
use secbc::region::{corner_points, eval_secure_si, polygon};
use secbc::induced_joint;

fn main() -> secbc::Result<()> {
    // Both receivers see their own pipe well and the other pipe badly.
    let spec = presets::parallel_bsc(0.02, 0.05);
    let scheme = presets::pipe_scheme(0.5, 0.5);
    let j = induced_joint(&spec, &scheme)?;

    let c = corner_points(&j)?;
    for (label, p) in c.labeled() {
        println!("{label} = {p}");
    }
    let region = polygon(&eval_secure_si(&j)?);
    println!("pentagon: {:?}", c.pentagon());
    println!("area = {:.6}, convex = {}", region.area(), region.is_convex(1e-12));
    Ok(())
}
