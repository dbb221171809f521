use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::codebook::{Codebook, CodebookConfig, CodecModel, Decoded, EncodeOutcome};
use super::leakage::leakage_samples;
use super::rates::{assign_rates, RateAllocation};
use super::Estimate;
use crate::channel::{ChannelSpec, CodingScheme};
use crate::error::{Error, Result};
use crate::streams::{stream_rng, DOMAIN_LEAKAGE, DOMAIN_TRIAL};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportConfig {
    #[serde(rename = "N")]
    pub n: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub trials: usize,
    pub codebooks: usize,
    pub requested_rates: RateAllocation,
    pub leakage_samples: usize,
    pub enumeration_budget: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub realized_rates: RateAllocation,
    /// Per receiver.
    pub decode_error: [Estimate; 2],
    pub encoder_failure: Estimate,
    /// Per message; `None` when skipped or over the enumeration budget.
    pub leakage: [Option<Estimate>; 2],
    pub config: ReportConfig,
}

impl SimulationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    err: [u64; 2],
    fail: u64,
}

fn run_trial(cb: &Codebook, seed: u64, trial: u64) -> Result<Tally> {
    let mut rng = stream_rng(seed, DOMAIN_TRIAL, trial);
    let m1 = rng.random_range(0..cb.tables[0].bins);
    let m2 = rng.random_range(0..cb.tables[1].bins);
    let w = cb.model.sample_state(cb.n, &mut rng);
    let enc = cb.encode(m1, m2, &w, &mut rng)?;
    let (y1, y2) = cb.model.transmit(&enc.x, &w, &mut rng);
    let mut tally = Tally { fail: (enc.outcome == EncodeOutcome::Failure) as u64, ..Tally::default() };
    for (t, (y, m)) in [(&y1, m1), (&y2, m2)].into_iter().enumerate() {
        tally.err[t] = (cb.decode(t, y)? != Decoded::Message(m)) as u64;
    }
    Ok(tally)
}

/// Runs `cfg.trials` encode/transmit/decode trials against one codebook and
/// estimates leakage for both messages.
///
/// Leakage is reported as `None` when `cfg.leakage_samples` is 0 or the
/// enumeration exceeds `cfg.enumeration_budget`.
pub fn simulate_codebook(cb: &Codebook, cfg: &CodebookConfig) -> Result<SimulationReport> {
    simulate_ensemble(std::slice::from_ref(cb), cfg)
}

/// Like [`simulate_codebook`], with trial `i` using codebook `i mod len`.
/// Leakage samples are split evenly over the codebooks and pooled.
pub fn simulate_ensemble(codebooks: &[Codebook], cfg: &CodebookConfig) -> Result<SimulationReport> {
    cfg.validate()?;
    let cb = codebooks
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty codebook ensemble".into()))?;
    let tallies = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| run_trial(&codebooks[(i % codebooks.len() as u64) as usize], cfg.seed, i))
        .collect::<Result<Vec<_>>>()?;
    let total = tallies.iter().fold(Tally::default(), |a, b| Tally {
        err: [a.err[0] + b.err[0], a.err[1] + b.err[1]],
        fail: a.fail + b.fail,
    });
    let trials = cfg.trials as u64;

    let mut leakage = [None, None];
    if cfg.leakage_samples > 0 {
        for (t, slot) in leakage.iter_mut().enumerate() {
            let mut rng = stream_rng(cfg.seed, DOMAIN_LEAKAGE, t as u64);
            *slot = match pooled_leakage(codebooks, t, cfg, &mut rng) {
                Ok(e) => Some(e),
                Err(Error::Capacity(_)) => None,
                Err(e) => return Err(e),
            };
        }
    }

    Ok(SimulationReport {
        realized_rates: cb.realized_rates(),
        decode_error: [
            Estimate::proportion(total.err[0], trials),
            Estimate::proportion(total.err[1], trials),
        ],
        encoder_failure: Estimate::proportion(total.fail, trials),
        leakage,
        config: ReportConfig {
            n: cfg.block_len,
            epsilon: cfg.epsilon,
            seed: cfg.seed,
            trials: cfg.trials,
            codebooks: codebooks.len(),
            requested_rates: cfg.rates,
            leakage_samples: cfg.leakage_samples,
            enumeration_budget: cfg.enumeration_budget,
        },
    })
}

fn pooled_leakage<R: Rng + ?Sized>(
    codebooks: &[Codebook],
    t: usize,
    cfg: &CodebookConfig,
    rng: &mut R,
) -> Result<Estimate> {
    let used = codebooks.len().min(cfg.leakage_samples);
    let mut values = Vec::with_capacity(cfg.leakage_samples);
    for (c, cb) in codebooks[..used].iter().enumerate() {
        let share = cfg.leakage_samples / used + usize::from(c < cfg.leakage_samples % used);
        values.extend(leakage_samples(cb, t, share, cfg.enumeration_budget, rng)?);
    }
    Ok(Estimate::from_samples(&values))
}

/// Draws `cfg.codebooks` codebooks and runs [`simulate_ensemble`].
pub fn simulate(spec: &ChannelSpec, scheme: &CodingScheme, cfg: &CodebookConfig) -> Result<SimulationReport> {
    let model = Arc::new(CodecModel::new(spec, scheme)?);
    simulate_model(&model, cfg)
}

fn simulate_model(model: &Arc<CodecModel>, cfg: &CodebookConfig) -> Result<SimulationReport> {
    cfg.validate()?;
    let codebooks = (0..cfg.codebooks as u64)
        .map(|i| Codebook::build_indexed(model.clone(), cfg, i))
        .collect::<Result<Vec<_>>>()?;
    simulate_ensemble(&codebooks, cfg)
}

/// One row of an N-sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub rates: RateAllocation,
    pub err: [f64; 2],
    pub enc_fail: f64,
    pub leak: [Option<f64>; 2],
}

pub const SWEEP_HEADER: &str = "N,R1,R2,Rp1,Rp2,Rs1,Rs2,err1,err2,enc_fail,leak1,leak2";

impl SweepRow {
    /// CSV line matching [`SWEEP_HEADER`]; missing leakage is written `NA`.
    pub fn to_csv(&self) -> String {
        let leak = |v: Option<f64>| v.map_or("NA".to_string(), |x| x.to_string());
        let r = self.rates;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            r.r1,
            r.r2,
            r.rp1,
            r.rp2,
            r.rs1,
            r.rs2,
            self.err[0],
            self.err[1],
            self.enc_fail,
            leak(self.leak[0]),
            leak(self.leak[1])
        )
    }
}

/// Simulates each block length with rates from [`assign_rates`].
/// `base` supplies epsilon, seed, trials and the leakage settings.
pub fn sweep(
    spec: &ChannelSpec,
    scheme: &CodingScheme,
    block_lens: &[usize],
    margin: f64,
    base: &CodebookConfig,
) -> Result<Vec<SweepRow>> {
    if !(margin > 0.0) {
        return Err(Error::InvalidArgument("margin must be > 0".into()));
    }
    let model = Arc::new(CodecModel::new(spec, scheme)?);
    let rates = assign_rates(&model.joint, margin)?;
    block_lens
        .iter()
        .map(|&n| {
            let cfg = CodebookConfig { block_len: n, rates, ..base.clone() };
            let rep = simulate_model(&model, &cfg)?;
            Ok(SweepRow {
                n,
                rates: rep.realized_rates,
                err: [rep.decode_error[0].value, rep.decode_error[1].value],
                enc_fail: rep.encoder_failure.value,
                leak: [rep.leakage[0].map(|e| e.value), rep.leakage[1].map(|e| e.value)],
            })
        })
        .collect()
}
