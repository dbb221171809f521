//! Monte Carlo double-binning codes: random codebooks over a shared sequence
//! `u`, a stochastic encoder that picks a sub-bin at random and then the
//! first candidate pair jointly typical with the state, joint-typicality
//! decoding, and exact-posterior leakage estimates.

mod codebook;
mod leakage;
mod rates;
mod sim;
mod typical;

use serde::Serialize;

pub use codebook::{
    index_count, CodeTable, Codebook, CodebookConfig, CodecModel, CodewordIndex, Decoded, EncodeOutcome,
    Encoded, U_RETRY_CAP,
};
pub use leakage::{enumeration_size, estimate_leakage, leakage_samples};
pub use rates::{assign_rates, binning_feasibility, Constraint, ConstraintViolation, RateAllocation};
pub use sim::{simulate, simulate_codebook, simulate_ensemble, sweep, ReportConfig, SimulationReport, SweepRow, SWEEP_HEADER};
pub use typical::TypicalSet;

/// A Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn proportion(hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        Self { value: p, std_error: (p * (1.0 - p) / trials as f64).sqrt() }
    }

    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = if xs.len() > 1 {
            xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Self { value: mean, std_error: (var / n).sqrt() }
    }
}
