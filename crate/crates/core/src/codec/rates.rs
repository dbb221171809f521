use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::prob::JointDistribution;
use crate::region::SecureTerms;

/// The six rates of the double-binning code, in bits per channel use.
///
/// `r*` index messages (bins), `rp*` the secrecy randomization (sub-bins)
/// and `rs*` the state-matching candidates inside each sub-bin.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct RateAllocation {
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    #[serde(rename = "Rp1")]
    pub rp1: f64,
    #[serde(rename = "Rp2")]
    pub rp2: f64,
    #[serde(rename = "Rs1")]
    pub rs1: f64,
    #[serde(rename = "Rs2")]
    pub rs2: f64,
}

impl RateAllocation {
    pub fn message(&self, t: usize) -> f64 {
        [self.r1, self.r2][t]
    }

    pub fn randomization(&self, t: usize) -> f64 {
        [self.rp1, self.rp2][t]
    }

    pub fn binning(&self, t: usize) -> f64 {
        [self.rs1, self.rs2][t]
    }

    /// Codebook rate `R_t + R'_t + R*_t` of receiver `t` (0-based).
    pub fn total(&self, t: usize) -> f64 {
        self.message(t) + self.randomization(t) + self.binning(t)
    }

    pub fn all(&self) -> [f64; 6] {
        [self.r1, self.r2, self.rp1, self.rp2, self.rs1, self.rs2]
    }
}

/// Rates for a fixed joint that meet the decoding, secrecy and
/// state-matching requirements with slack `margin`:
///
/// * `R'_1 = [I(V1;Y2|U,V2) - margin]+`, `R'_2 = [I(V2;Y1|U,V1) - margin]+`
/// * `R*_t = max(I(V1;V2|U), I(W;V_t|U)) + margin`, raised equally until
///   `R*_1 + R*_2 >= I(V1;V2|U) + I(V1,V2;W|U) + 2 margin`
/// * `R_t = [I(V_t;Y_t|U) - R'_t - R*_t - margin]+`
///
/// When the bracket defining `R_t` is negative no allocation can satisfy the
/// decoding constraint; [`binning_feasibility`] reports it.
pub fn assign_rates(j: &JointDistribution, margin: f64) -> Result<RateAllocation> {
    let t = SecureTerms::compute(j)?;
    let rp1 = (t.v1_y2_given_v2 - margin).max(0.0);
    let rp2 = (t.v2_y1_given_v1 - margin).max(0.0);
    let mut rs1 = t.v1_v2.max(t.w_v1) + margin;
    let mut rs2 = t.v1_v2.max(t.w_v2) + margin;
    let need = t.v1_v2 + t.v12_w + 2.0 * margin;
    if rs1 + rs2 < need {
        let half = (need - rs1 - rs2) / 2.0;
        rs1 += half;
        rs2 += half;
    }
    Ok(RateAllocation {
        r1: (t.v1_y1 - rp1 - rs1 - margin).max(0.0),
        r2: (t.v2_y2 - rp2 - rs2 - margin).max(0.0),
        rp1,
        rp2,
        rs1,
        rs2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `R_1 + R'_1 + R*_1 < I(V1;Y1|U)`
    Decode1,
    /// `R_2 + R'_2 + R*_2 < I(V2;Y2|U)`
    Decode2,
    /// `R*_1 > I(W;V1|U)`
    Bin1,
    /// `R*_2 > I(W;V2|U)`
    Bin2,
    /// `R*_1 + R*_2 > I(V1;V2|U) + I(V1,V2;W|U)`
    BinSum,
}

/// A violated constraint with both sides evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstraintViolation {
    pub constraint: Constraint,
    pub lhs: f64,
    pub rhs: f64,
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lhs, op, rhs) = match self.constraint {
            Constraint::Decode1 => ("R1+Rp1+Rs1", "<", "I(V1;Y1|U)"),
            Constraint::Decode2 => ("R2+Rp2+Rs2", "<", "I(V2;Y2|U)"),
            Constraint::Bin1 => ("Rs1", ">", "I(W;V1|U)"),
            Constraint::Bin2 => ("Rs2", ">", "I(W;V2|U)"),
            Constraint::BinSum => ("Rs1+Rs2", ">", "I(V1;V2|U)+I(V1,V2;W|U)"),
        };
        write!(f, "{lhs} {op} {rhs} fails: {:.6} vs {:.6}", self.lhs, self.rhs)
    }
}

/// Checks the strict decoding and state-matching inequalities.
pub fn binning_feasibility(
    j: &JointDistribution,
    rates: &RateAllocation,
) -> Result<Vec<ConstraintViolation>> {
    let t = SecureTerms::compute(j)?;
    let checks = [
        (Constraint::Decode1, rates.total(0), t.v1_y1, false),
        (Constraint::Decode2, rates.total(1), t.v2_y2, false),
        (Constraint::Bin1, rates.rs1, t.w_v1, true),
        (Constraint::Bin2, rates.rs2, t.w_v2, true),
        (Constraint::BinSum, rates.rs1 + rates.rs2, t.v1_v2 + t.v12_w, true),
    ];
    Ok(checks
        .into_iter()
        .filter(|&(_, lhs, rhs, greater)| if greater { lhs <= rhs } else { lhs >= rhs })
        .map(|(constraint, lhs, rhs, _)| ConstraintViolation { constraint, lhs, rhs })
        .collect())
}
