//! Leakage to the eavesdropping receiver on a wiretap-style channel, with
//! and without secrecy randomization.
//!
//! Run with `cargo run --release --example leakage`.

use secbc::codec::{assign_rates, simulate, CodebookConfig, RateAllocation};
use secbc::{induced_joint, presets};

fn main() -> secbc::Result<()> {
    // Receiver 1 is noiseless, receiver 2 sees a BSC(0.1).
    let spec = presets::wiretap_bsc(0.0, 0.1);
    let scheme = presets::wiretap_scheme();
    let rates = assign_rates(&induced_joint(&spec, &scheme)?, 0.05)?;
    println!("rates: {rates:?}");
    for n in [8, 12, 16] {
        let cfg = CodebookConfig {
            epsilon: 0.2,
            trials: 200,
            codebooks: 20,
            leakage_samples: 1000,
            enumeration_budget: 1 << 20,
            ..CodebookConfig::new(n, rates)
        };
        let r = simulate(&spec, &scheme, &cfg)?;
        let l = r.leakage[0].expect("within budget");
        println!("N={n:<2} leakage {:.4} +- {:.4} bits/use", l.value, l.std_error);
    }

    // No randomization and a transparent eavesdropper: everything leaks.
    let open = presets::wiretap_bsc(0.0, 0.0);
    let rates = RateAllocation { r1: 0.25, ..Default::default() };
    let cfg = CodebookConfig { epsilon: 0.2, trials: 100, leakage_samples: 500, ..CodebookConfig::new(16, rates) };
    let r = simulate(&open, &scheme, &cfg)?;
    let l = r.leakage[0].expect("within budget");
    println!("transparent: leakage {:.4}, R1 = {:.4}", l.value, r.realized_rates.r1);
    Ok(())
}
