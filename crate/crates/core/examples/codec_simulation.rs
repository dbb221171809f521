//! Monte Carlo runs of the double-binning code: decode error against block
//! length, and encoder failure with too few state-matching candidates.
//!
//! Run with `cargo run --release --example codec_simulation`.

use secbc::codec::{assign_rates, binning_feasibility, simulate, CodebookConfig, RateAllocation};
use secbc::{induced_joint, presets, CodingScheme, SchemeAlphabets};

fn main() -> secbc::Result<()> {
    let pipes = presets::clean_parallel_pipes();
    let scheme = presets::pipe_scheme(0.5, 0.5);
    let j = induced_joint(&pipes, &scheme)?;
    let rates = RateAllocation { r1: 0.15, r2: 0.15, rp1: 0.0, rp2: 0.0, rs1: 0.1, rs2: 0.1 };
    println!("violated constraints: {:?}", binning_feasibility(&j, &rates)?);
    println!("N   err1    err2    enc_fail");
    for n in [8, 16, 32] {
        let cfg = CodebookConfig { epsilon: 0.1, codebooks: 100, leakage_samples: 0, ..CodebookConfig::new(n, rates) };
        let r = simulate(&pipes, &scheme, &cfg)?;
        println!(
            "{n:<3} {:.4}  {:.4}  {:.4}",
            r.decode_error[0].value, r.decode_error[1].value, r.encoder_failure.value
        );
    }

    // V1 copies a uniform state or erases it, so I(W;V1) = 0.45 bits.
    let spec = presets::binary_dirty_channel(0.5, 0.05, 0.05);
    let erase = 0.55;
    let scheme = CodingScheme::from_fn(
        SchemeAlphabets { u: 1, v1: 3, v2: 1 },
        &spec.alphabets,
        vec![1.0],
        move |w, _, v1, _| match v1 {
            2 => erase,
            v if v == w => 1.0 - erase,
            _ => 0.0,
        },
        |_, v1, _, x| (x == v1 % 2) as u8 as f64,
    );
    let j = induced_joint(&spec, &scheme)?;
    let need = assign_rates(&j, 0.1)?;
    println!("\nRs1 needed > {:.3}", need.rs1 - 0.1);
    for (label, rs1) in [("0.2 below", 0.25), ("0.1 above", 0.55)] {
        print!("Rs1 {label}:");
        for n in [8, 16, 32] {
            let rates = RateAllocation { rs1, ..Default::default() };
            let cfg = CodebookConfig { epsilon: 0.15, codebooks: 50, leakage_samples: 0, ..CodebookConfig::new(n, rates) };
            print!("  N={n} fail={:.3}", simulate(&spec, &scheme, &cfg)?.encoder_failure.value);
        }
        println!();
    }
    Ok(())
}
