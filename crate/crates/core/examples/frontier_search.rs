//! Traces region frontiers by searching over coding schemes.
//!
//! Run with `cargo run --release --example frontier_search`.

use secbc::presets;
use secbc::region::{RatePair, RegionKind};
use secbc::search::{search_frontier, SearchConfig};

fn main() -> secbc::Result<()> {
    let pipes = presets::clean_parallel_pipes();
    let f = search_frontier(&pipes, RegionKind::Marton, &SearchConfig::new(2000, 1))?;
    println!("clean pipes, marton: {} schemes", f.evaluated);
    for v in &f.region.vertices {
        println!("    {v}");
    }
    println!("contains (1, 1): {}", f.region.contains_point(RatePair::new(1.0, 1.0), 1e-9));

    let dirty = presets::binary_dirty_channel(0.3, 0.05, 0.1);
    for kind in [RegionKind::Secure, RegionKind::Steinberg, RegionKind::Marton] {
        let mut cfg = SearchConfig::new(2000, 7);
        cfg.max_u = 1;
        let f = search_frontier(&dirty, kind, &cfg)?;
        println!("dirty channel, {:<9} area {:.5}", kind.name(), f.region.area());
    }
    Ok(())
}
