mod common;

use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;
use secbc::codec::{
    assign_rates, binning_feasibility, Constraint, estimate_leakage, index_count, simulate, sweep, Codebook, CodebookConfig,
    CodecModel, CodewordIndex, Decoded, RateAllocation, TypicalSet, SWEEP_HEADER,
};
use secbc::region::SecureTerms;
use secbc::{induced_joint, presets, Error};

fn small_cfg(n: usize, rates: RateAllocation) -> CodebookConfig {
    CodebookConfig { trials: 200, leakage_samples: 0, ..CodebookConfig::new(n, rates) }
}

#[test]
fn index_counts_round_and_cap() {
    assert_eq!(index_count(16, 0.25).unwrap(), 16);
    assert_eq!(index_count(10, 0.0).unwrap(), 1);
    assert_eq!(index_count(3, 0.1).unwrap(), 1);
    assert_eq!(index_count(7, 0.5).unwrap(), 11);
    assert!(matches!(index_count(100, 0.5), Err(Error::Capacity(_))));
}

#[test]
fn zero_rates_give_one_codeword_and_constant_u() {
    let model = Arc::new(CodecModel::new(&presets::wiretap_bsc(0.0, 0.1), &presets::wiretap_scheme()).unwrap());
    let cb = Codebook::build(model, &small_cfg(12, RateAllocation::default())).unwrap();
    assert_eq!(cb.tables[0].len(), 1);
    assert_eq!(cb.tables[1].len(), 1);
    assert!(cb.u_seq.iter().all(|&u| u == 0));
    assert_eq!(cb.realized_rates(), RateAllocation::default());
}

#[test]
fn realized_rates_follow_rounded_counts() {
    let model = Arc::new(CodecModel::new(&presets::clean_parallel_pipes(), &presets::pipe_scheme(0.5, 0.5)).unwrap());
    let rates = RateAllocation { r1: 0.25, r2: 0.1, rs1: 0.125, ..Default::default() };
    let cb = Codebook::build(model, &small_cfg(8, rates)).unwrap();
    assert_eq!((cb.tables[0].bins, cb.tables[0].candidates), (4, 2));
    assert_eq!(cb.tables[1].bins, 2);
    let r = cb.realized_rates();
    assert_eq!((r.r1, r.r2, r.rs1), (0.25, 0.125, 0.125));
}

#[test]
fn simulation_is_deterministic_per_seed() {
    let spec = presets::parallel_bsc(0.05, 0.1);
    let scheme = presets::pipe_scheme(0.5, 0.5);
    let rates = assign_rates(&induced_joint(&spec, &scheme).unwrap(), 0.1).unwrap();
    let cfg = CodebookConfig { leakage_samples: 20, codebooks: 3, ..small_cfg(10, rates) };
    let a = simulate(&spec, &scheme, &cfg).unwrap();
    assert_eq!(a, simulate(&spec, &scheme, &cfg).unwrap());
    assert_eq!(a.to_json(), simulate(&spec, &scheme, &cfg).unwrap().to_json());
    let other = simulate(&spec, &scheme, &CodebookConfig { seed: 1, ..cfg }).unwrap();
    assert_ne!(a.decode_error, other.decode_error);
}

#[test]
fn out_of_range_arguments_are_rejected() {
    let model = Arc::new(CodecModel::new(&presets::clean_parallel_pipes(), &presets::pipe_scheme(0.5, 0.5)).unwrap());
    let cb = Codebook::build(model, &small_cfg(8, RateAllocation { r1: 0.25, ..Default::default() })).unwrap();
    let mut rng = common::rng(0);
    let w = vec![0u8; 8];
    assert!(cb.encode(4, 0, &w, &mut rng).is_err());
    assert!(cb.encode(0, 0, &w[..7], &mut rng).is_err());
    assert!(cb.decode(2, &w).is_err());
    assert!(cb.decode(0, &w[..3]).is_err());
}

#[test]
fn noiseless_decoding_usually_recovers_the_message() {
    let model = Arc::new(CodecModel::new(&presets::clean_parallel_pipes(), &presets::pipe_scheme(0.5, 0.5)).unwrap());
    let rates = RateAllocation { r1: 0.15, r2: 0.15, rs1: 0.1, rs2: 0.1, ..Default::default() };
    let cb = Codebook::build(model, &CodebookConfig { epsilon: 0.1, ..small_cfg(32, rates) }).unwrap();
    let mut rng = common::rng(5);
    let mut right = 0;
    for _ in 0..200 {
        let (m1, m2) = (rng.random_range(0..cb.tables[0].bins), rng.random_range(0..cb.tables[1].bins));
        let w = cb.model.sample_state(32, &mut rng);
        let enc = cb.encode(m1, m2, &w, &mut rng).unwrap();
        let (y1, y2) = cb.model.transmit(&enc.x, &w, &mut rng);
        assert_eq!(y1, cb.tables[0].codeword(enc.codewords[0]));
        assert_eq!(y2, cb.tables[1].codeword(enc.codewords[1]));
        right += usize::from(cb.decode(0, &y1).unwrap() == Decoded::Message(m1));
    }
    assert!(right >= 150, "{right}/200");
}

#[test]
fn pure_noise_eavesdropper_learns_nothing() {
    let spec = presets::wiretap_bsc(0.0, 0.5);
    let rates = RateAllocation { r1: 0.25, ..Default::default() };
    let cfg = CodebookConfig { trials: 50, leakage_samples: 300, ..CodebookConfig::new(12, rates) };
    let l = simulate(&spec, &presets::wiretap_scheme(), &cfg).unwrap().leakage[0].unwrap();
    assert!(l.value.abs() <= 3.0 * l.std_error + 1e-9, "{l:?}");
}

#[test]
fn transparent_eavesdropper_matches_codeword_collisions() {
    // With Y2 = V1 and one codeword per bin, the leakage is the entropy of
    // the codeword of a uniform message, divided by N.
    let spec = presets::wiretap_bsc(0.0, 0.0);
    let model = Arc::new(CodecModel::new(&spec, &presets::wiretap_scheme()).unwrap());
    let n = 3;
    let cfg = small_cfg(n, RateAllocation { r1: 1.0, ..Default::default() });
    for index in 0..5 {
        let cb = Codebook::build_indexed(model.clone(), &cfg, index).unwrap();
        let bins = cb.tables[0].bins;
        let mut counts: HashMap<&[u8], usize> = HashMap::new();
        for bin in 0..bins {
            *counts.entry(cb.tables[0].codeword(CodewordIndex { bin, sub_bin: 0, candidate: 0 })).or_default() += 1;
        }
        let b = bins as f64;
        let exact: f64 = counts.values().map(|&k| k as f64 / b * (b / k as f64).log2()).sum::<f64>() / n as f64;
        let est = estimate_leakage(&cb, 0, 4000, 1 << 16, &mut common::rng(index)).unwrap();
        assert!((est.value - exact).abs() <= 4.0 * est.std_error + 1e-9, "{est:?} vs {exact}");
    }
}

#[test]
fn leakage_over_budget_is_reported_missing() {
    let spec = presets::wiretap_bsc(0.0, 0.1);
    let rates = RateAllocation { r1: 0.5, rp1: 0.5, ..Default::default() };
    let cfg = CodebookConfig { leakage_samples: 10, enumeration_budget: 16, ..small_cfg(12, rates) };
    let r = simulate(&spec, &presets::wiretap_scheme(), &cfg).unwrap();
    assert_eq!(r.leakage[0], None);
    assert!(r.to_json().contains("\"leakage\": [\n    null"));
}

#[test]
fn assigned_rates_meet_every_constraint() {
    let spec = presets::wiretap_bsc(0.0, 0.1);
    let j = induced_joint(&spec, &presets::wiretap_scheme()).unwrap();
    let r = assign_rates(&j, 0.05).unwrap();
    // V2 is constant, so receiver 2 cannot decode even the margin in Rs2.
    let v = binning_feasibility(&j, &r).unwrap();
    assert_eq!(v.iter().map(|c| c.constraint).collect::<Vec<_>>(), [Constraint::Decode2]);
    let t = SecureTerms::compute(&j).unwrap();
    assert!((r.rp1 - (t.v1_y2_given_v2 - 0.05)).abs() < 1e-12);
    assert!(r.r1 > 0.0);
}

#[test]
fn infeasible_rates_are_reported() {
    let j = induced_joint(&presets::clean_parallel_pipes(), &presets::pipe_scheme(0.5, 0.5)).unwrap();
    let r = RateAllocation { r1: 1.2, ..Default::default() };
    let v = binning_feasibility(&j, &r).unwrap();
    assert!(v.iter().any(|c| c.to_string().starts_with("R1+Rp1+Rs1 < I(V1;Y1|U)")));
}

#[test]
fn sweep_rows_have_header_columns() {
    let spec = presets::parallel_bsc(0.05, 0.1);
    let base = CodebookConfig { trials: 50, leakage_samples: 5, enumeration_budget: 1, ..CodebookConfig::new(1, Default::default()) };
    let rows = sweep(&spec, &presets::pipe_scheme(0.5, 0.5), &[6, 8], 0.1, &base).unwrap();
    assert_eq!(rows.len(), 2);
    let cols = SWEEP_HEADER.split(',').count();
    for row in rows {
        let line = row.to_csv();
        assert_eq!(line.split(',').count(), cols);
        assert!(line.ends_with("NA,NA"));
    }
}

#[test]
fn typical_acceptance_grows_with_block_length() {
    let target = [0.1, 0.2, 0.3, 0.4];
    let mut rng = common::rng(9);
    let rates: Vec<f64> = [16, 64, 256, 1024]
        .iter()
        .map(|&n| {
            let set = TypicalSet::new(&target, 0.05, n);
            let hits = (0..2000)
                .filter(|_| {
                    set.contains((0..n).map(|_| {
                        let x: f64 = rng.random();
                        target.iter().scan(0.0, |acc, p| { *acc += p; Some(*acc) }).position(|c| x < c).unwrap_or(3)
                    }))
                })
                .count();
            hits as f64 / 2000.0
        })
        .collect();
    assert!(rates.windows(2).all(|w| w[0] < w[1]), "{rates:?}");
    assert!(rates[3] > 0.95, "{rates:?}");
}

proptest! {
    #[test]
    fn exact_type_is_typical(counts in prop::collection::vec(1u32..20, 2..6), eps in 0.001f64..0.2) {
        let n: u32 = counts.iter().sum();
        let target: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
        let seq: Vec<usize> = counts.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize)).collect();
        let set = TypicalSet::new(&target, eps, n as usize);
        prop_assert!(set.contains(seq.iter().copied()));
    }

    #[test]
    fn zero_probability_cells_are_never_typical(counts in prop::collection::vec(1u32..20, 2..6)) {
        let n: u32 = counts.iter().sum();
        let mut target: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
        target.push(0.0);
        let mut seq: Vec<usize> = counts.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize)).collect();
        seq[0] = target.len() - 1;
        prop_assert!(!TypicalSet::new(&target, 1.0, n as usize).contains(seq.into_iter()));
    }
}
