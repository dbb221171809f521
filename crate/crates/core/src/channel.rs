//! State-dependent two-receiver broadcast channel and coding schemes.
//!
//! Tensor layouts (row-major, last index fastest):
//!
//! | law           | index order          |
//! |---------------|----------------------|
//! | `state_law`   | `[w]`                |
//! | `channel_law` | `[x][w][y1][y2]`     |
//! | `u_law`       | `[u]`                |
//! | `aux_law`     | `[w][u][v1][v2]`     |
//! | `input_law`   | `[w][v1][v2][x]`     |
//!
//! The channel law is `p(y1, y2 | x, w)`. A channel whose outputs depend on
//! the state only through the input is written with a law constant in `w`.

use std::fmt;

use crate::error::{Error, Result};
use crate::prob::{vars, JointDistribution, DEFAULT_MAX_ENTRIES};

/// Tolerance on the total of every conditional slice.
pub const SLICE_TOL: f64 = 1e-12;

/// Variable order of [`induced_joint`].
pub const JOINT_VARIABLES: [&str; 7] = ["W", "U", "V1", "V2", "X", "Y1", "Y2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChannelAlphabets {
    pub w: usize,
    pub x: usize,
    pub y1: usize,
    pub y2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeAlphabets {
    pub u: usize,
    pub v1: usize,
    pub v2: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSpec {
    pub alphabets: ChannelAlphabets,
    /// `p(w)`
    pub state_law: Vec<f64>,
    /// `p(y1, y2 | x, w)` laid out `[x][w][y1][y2]`
    pub channel_law: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodingScheme {
    pub alphabets: SchemeAlphabets,
    /// `p(u)`
    pub u_law: Vec<f64>,
    /// `p(v1, v2 | w, u)` laid out `[w][u][v1][v2]`
    pub aux_law: Vec<f64>,
    /// `p(x | w, v1, v2)` laid out `[w][v1][v2][x]`
    pub input_law: Vec<f64>,
}

impl ChannelSpec {
    /// Builds the channel law from a function of `(x, w, y1, y2)`.
    pub fn from_fn(
        alphabets: ChannelAlphabets,
        state_law: Vec<f64>,
        law: impl Fn(usize, usize, usize, usize) -> f64,
    ) -> Self {
        let a = alphabets;
        let mut channel_law = Vec::with_capacity(a.x * a.w * a.y1 * a.y2);
        for x in 0..a.x {
            for w in 0..a.w {
                for y1 in 0..a.y1 {
                    for y2 in 0..a.y2 {
                        channel_law.push(law(x, w, y1, y2));
                    }
                }
            }
        }
        Self { alphabets, state_law, channel_law }
    }

    pub fn channel_prob(&self, x: usize, w: usize, y1: usize, y2: usize) -> f64 {
        let a = &self.alphabets;
        self.channel_law[((x * a.w + w) * a.y1 + y1) * a.y2 + y2]
    }

    /// Every shape and normalization problem, with tensor coordinates.
    pub fn validate(&self) -> Vec<Violation> {
        let a = &self.alphabets;
        let mut out = Vec::new();
        for (name, c) in [("W", a.w), ("X", a.x), ("Y1", a.y1), ("Y2", a.y2)] {
            if c == 0 {
                out.push(Violation::new("alphabets", vec![], ViolationKind::ZeroCardinality(name)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        check_law(&mut out, "state_law", &self.state_law, &[], &[a.w]);
        check_law(&mut out, "channel_law", &self.channel_law, &[("x", a.x), ("w", a.w)], &[a.y1, a.y2]);
        out
    }
}

impl CodingScheme {
    /// Builds a scheme from functions of `(w, u, v1, v2)` and `(w, v1, v2, x)`.
    pub fn from_fn(
        alphabets: SchemeAlphabets,
        channel: &ChannelAlphabets,
        u_law: Vec<f64>,
        aux: impl Fn(usize, usize, usize, usize) -> f64,
        input: impl Fn(usize, usize, usize, usize) -> f64,
    ) -> Self {
        let (s, c) = (alphabets, channel);
        let mut aux_law = Vec::with_capacity(c.w * s.u * s.v1 * s.v2);
        for w in 0..c.w {
            for u in 0..s.u {
                for v1 in 0..s.v1 {
                    for v2 in 0..s.v2 {
                        aux_law.push(aux(w, u, v1, v2));
                    }
                }
            }
        }
        let mut input_law = Vec::with_capacity(c.w * s.v1 * s.v2 * c.x);
        for w in 0..c.w {
            for v1 in 0..s.v1 {
                for v2 in 0..s.v2 {
                    for x in 0..c.x {
                        input_law.push(input(w, v1, v2, x));
                    }
                }
            }
        }
        Self { alphabets, u_law, aux_law, input_law }
    }

    pub fn aux_prob(&self, w: usize, u: usize, v1: usize, v2: usize) -> f64 {
        let s = &self.alphabets;
        self.aux_law[((w * s.u + u) * s.v1 + v1) * s.v2 + v2]
    }

    /// `p(x | w, v1, v2)` as a slice over `x`.
    pub fn input_slice(&self, w: usize, v1: usize, v2: usize, x_card: usize) -> &[f64] {
        let s = &self.alphabets;
        let base = ((w * s.v1 + v1) * s.v2 + v2) * x_card;
        &self.input_law[base..base + x_card]
    }

    /// Shape and normalization problems relative to `spec`'s alphabets.
    pub fn validate_against(&self, spec: &ChannelSpec) -> Vec<Violation> {
        let (s, c) = (&self.alphabets, &spec.alphabets);
        let mut out = Vec::new();
        for (name, n) in [("U", s.u), ("V1", s.v1), ("V2", s.v2)] {
            if n == 0 {
                out.push(Violation::new("alphabets", vec![], ViolationKind::ZeroCardinality(name)));
            }
        }
        if !out.is_empty() || c.w == 0 || c.x == 0 {
            return out;
        }
        check_law(&mut out, "u_law", &self.u_law, &[], &[s.u]);
        check_law(&mut out, "aux_law", &self.aux_law, &[("w", c.w), ("u", s.u)], &[s.v1, s.v2]);
        check_law(
            &mut out,
            "input_law",
            &self.input_law,
            &[("w", c.w), ("v1", s.v1), ("v2", s.v2)],
            &[c.x],
        );
        out
    }
}

/// The seven-variable joint `p(w) p(u) p(v1,v2|w,u) p(x|w,v1,v2) p(y1,y2|x,w)`
/// over [`JOINT_VARIABLES`].
pub fn induced_joint(spec: &ChannelSpec, scheme: &CodingScheme) -> Result<JointDistribution> {
    let mut violations = spec.validate();
    violations.extend(scheme.validate_against(spec));
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }
    let (c, s) = (&spec.alphabets, &scheme.alphabets);
    let dims = [c.w, s.u, s.v1, s.v2, c.x, c.y1, c.y2];
    let size = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&n| n <= DEFAULT_MAX_ENTRIES)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "joint over alphabets {dims:?} exceeds {DEFAULT_MAX_ENTRIES} entries"
            ))
        })?;
    let mut mass = Vec::with_capacity(size);
    for w in 0..c.w {
        let pw = spec.state_law[w];
        for u in 0..s.u {
            let pwu = pw * scheme.u_law[u];
            for v1 in 0..s.v1 {
                for v2 in 0..s.v2 {
                    let pv = pwu * scheme.aux_prob(w, u, v1, v2);
                    let input = scheme.input_slice(w, v1, v2, c.x);
                    for (x, &px) in input.iter().enumerate() {
                        let pvx = pv * px;
                        for y1 in 0..c.y1 {
                            for y2 in 0..c.y2 {
                                mass.push(pvx * spec.channel_prob(x, w, y1, y2));
                            }
                        }
                    }
                }
            }
        }
    }
    let names: Vec<(&str, usize)> = JOINT_VARIABLES.iter().copied().zip(dims).collect();
    JointDistribution::from_weights(vars(&names), mass)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ViolationKind {
    ZeroCardinality(&'static str),
    Length { expected: usize, found: usize },
    Negative(f64),
    NonFinite(f64),
    SliceSum(f64),
    /// A nested array whose shape differs from the declared alphabets.
    Shape(String),
}

/// One problem found in a channel or scheme description.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub law: String,
    pub coords: Vec<(String, usize)>,
    pub kind: ViolationKind,
}

impl Violation {
    pub fn new(law: impl Into<String>, coords: Vec<(String, usize)>, kind: ViolationKind) -> Self {
        Self { law: law.into(), coords, kind }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.law)?;
        for (name, i) in &self.coords {
            write!(f, "[{name}={i}]")?;
        }
        match &self.kind {
            ViolationKind::ZeroCardinality(v) => write!(f, ": alphabet of {v} is empty"),
            ViolationKind::Length { expected, found } => {
                write!(f, ": expected {expected} entries, found {found}")
            }
            ViolationKind::Negative(p) => write!(f, ": negative entry {p}"),
            ViolationKind::NonFinite(p) => write!(f, ": non-finite entry {p}"),
            ViolationKind::SliceSum(s) => write!(f, ": slice sums to {}, expected 1", (s * 1e12).round() / 1e12),
            ViolationKind::Shape(msg) => write!(f, ": {msg}"),
        }
    }
}

/// Checks a conditional law whose leading axes (`cond`) index slices over
/// the trailing `inner` axes.
fn check_law(
    out: &mut Vec<Violation>,
    law: &str,
    data: &[f64],
    cond: &[(&str, usize)],
    inner: &[usize],
) {
    let slice: usize = inner.iter().product();
    let slices: usize = cond.iter().map(|c| c.1).product();
    if data.len() != slice * slices {
        out.push(Violation::new(
            law,
            vec![],
            ViolationKind::Length { expected: slice * slices, found: data.len() },
        ));
        return;
    }
    for (si, chunk) in data.chunks(slice).enumerate() {
        let coords = unravel(si, cond);
        let mut bad = false;
        for (k, &p) in chunk.iter().enumerate() {
            let kind = if !p.is_finite() {
                ViolationKind::NonFinite(p)
            } else if p < 0.0 {
                ViolationKind::Negative(p)
            } else {
                continue;
            };
            bad = true;
            let mut c = coords.clone();
            let inner_names: Vec<(&str, usize)> = inner_axis_names(law)
                .iter()
                .copied()
                .zip(inner.iter().copied())
                .collect();
            c.extend(unravel(k, &inner_names));
            out.push(Violation::new(law, c, kind));
        }
        let sum: f64 = chunk.iter().sum();
        if !bad && (sum - 1.0).abs() > SLICE_TOL {
            out.push(Violation::new(law, coords, ViolationKind::SliceSum(sum)));
        }
    }
}

fn inner_axis_names(law: &str) -> &'static [&'static str] {
    match law {
        "state_law" => &["w"],
        "channel_law" => &["y1", "y2"],
        "u_law" => &["u"],
        "aux_law" => &["v1", "v2"],
        "input_law" => &["x"],
        _ => &[],
    }
}

fn unravel(mut idx: usize, axes: &[(&str, usize)]) -> Vec<(String, usize)> {
    let mut out = vec![(String::new(), 0); axes.len()];
    for (k, &(name, card)) in axes.iter().enumerate().rev() {
        out[k] = (name.to_string(), idx % card);
        idx /= card;
    }
    out
}
