//! Exact-posterior leakage estimation against a fixed codebook.
//!
//! For message `t` the estimator samples `(m1, m2, w, j1, j2)` and the
//! channel output `y` seen by the other receiver, then evaluates
//! `log2 p(y | m_t) - log2 p(y)` by enumerating every state sequence and
//! index tuple. The encoder's candidate choice is deterministic given those,
//! so each tuple maps to one codeword pair.

use rand::Rng;

use super::codebook::{Codebook, CodewordIndex};
use super::Estimate;
use crate::error::{Error, Result};

/// Enumeration of `(w^N, m1, j1, m2, j2)` with the encoder's codeword choice.
struct Enumeration {
    n: usize,
    radix: [usize; 4],
    /// Kernel slice offsets, `n` per tuple.
    slices: Vec<u32>,
    log_prior: Vec<f64>,
    message: Vec<u32>,
    chosen: Vec<[u32; 2]>,
}

fn tuple_count(cb: &Codebook) -> Option<usize> {
    let (a, b) = (&cb.tables[0], &cb.tables[1]);
    let w = cb.model.card.w;
    let mut count = 1usize;
    for _ in 0..cb.n {
        count = count.checked_mul(w)?;
    }
    [a.bins, a.sub_bins, b.bins, b.sub_bins]
        .into_iter()
        .try_fold(count, |c, k| c.checked_mul(k))
}

/// Number of `(state sequence, index tuple)` combinations the estimator
/// would enumerate, or `None` on overflow.
pub fn enumeration_size(cb: &Codebook) -> Option<usize> {
    tuple_count(cb)
}

impl Enumeration {
    fn build(cb: &Codebook, t: usize, budget: usize) -> Result<Self> {
        let count = tuple_count(cb).filter(|&c| c <= budget).ok_or_else(|| {
            Error::Capacity(format!(
                "leakage enumeration exceeds budget {budget} at N = {}; use a smaller N or rates",
                cb.n
            ))
        })?;
        let model = &cb.model;
        let c = model.card;
        let n = cb.n;
        let y_other = c.y[1 - t];
        let (a, b) = (&cb.tables[0], &cb.tables[1]);
        let radix = [a.bins, a.sub_bins, b.bins, b.sub_bins];
        let per_w: usize = radix.iter().product();
        let log_pw: Vec<f64> = model.spec.state_law.iter().map(|p| p.log2()).collect();

        let mut slices = Vec::with_capacity(count * n);
        let mut log_prior = Vec::with_capacity(count);
        let mut message = Vec::with_capacity(count);
        let mut chosen = Vec::with_capacity(count);
        let mut w = vec![0u8; n];
        for w_idx in 0..count / per_w {
            let mut rem = w_idx;
            for s in w.iter_mut().rev() {
                *s = (rem % c.w) as u8;
                rem /= c.w;
            }
            let lp: f64 = w.iter().map(|&s| log_pw[s as usize]).sum();
            for m1 in 0..radix[0] {
                for j1 in 0..radix[1] {
                    for m2 in 0..radix[2] {
                        for j2 in 0..radix[3] {
                            let k = if lp.is_finite() {
                                cb.select_candidates([m1, m2], [j1, j2], &w).unwrap_or([0, 0])
                            } else {
                                [0, 0]
                            };
                            let v1 = a.codeword(CodewordIndex { bin: m1, sub_bin: j1, candidate: k[0] });
                            let v2 = b.codeword(CodewordIndex { bin: m2, sub_bin: j2, candidate: k[1] });
                            for i in 0..n {
                                let cell = (w[i] as usize * c.v[0] + v1[i] as usize) * c.v[1] + v2[i] as usize;
                                slices.push((cell * y_other) as u32);
                            }
                            log_prior.push(lp);
                            message.push([m1, m2][t] as u32);
                            chosen.push([k[0] as u32, k[1] as u32]);
                        }
                    }
                }
            }
        }
        Ok(Self { n, radix, slices, log_prior, message, chosen })
    }

    fn index(&self, w_idx: usize, m: [usize; 2], j: [usize; 2]) -> usize {
        let r = self.radix;
        (((w_idx * r[0] + m[0]) * r[1] + j[0]) * r[2] + m[1]) * r[3] + j[1]
    }
}

/// `log2` of a sum of powers of two.
fn log2_sum_exp2(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + values.map(|v| (v - max).exp2()).sum::<f64>().log2()
}

/// Estimates `(1/N) I(M_t; Y_other^N)` in bits per channel use, where
/// `t = 0` is message 1 observed at receiver 2 and `t = 1` is message 2
/// observed at receiver 1.
///
/// Fails with [`Error::Capacity`] when the enumeration exceeds `budget`.
pub fn estimate_leakage<R: Rng + ?Sized>(
    cb: &Codebook,
    t: usize,
    samples: usize,
    budget: usize,
    rng: &mut R,
) -> Result<Estimate> {
    Ok(Estimate::from_samples(&leakage_samples(cb, t, samples, budget, rng)?))
}

/// Per-sample values `(log2 p(y | m_t) - log2 p(y)) / N` behind
/// [`estimate_leakage`].
pub fn leakage_samples<R: Rng + ?Sized>(
    cb: &Codebook,
    t: usize,
    samples: usize,
    budget: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if t > 1 {
        return Err(Error::InvalidArgument(format!("message index {t} (expected 0 or 1)")));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("leakage needs at least one sample".into()));
    }
    if cb.tables[t].bins == 1 {
        return Ok(vec![0.0; samples]);
    }
    let e = Enumeration::build(cb, t, budget)?;
    let model = &cb.model;
    let (a, b) = (&cb.tables[0], &cb.tables[1]);
    let kernel = &model.eaves_log_kernel[t];
    let log_bins = (cb.tables[t].bins as f64).log2();
    let n = e.n;
    let mut scores = vec![0.0; e.log_prior.len()];
    let mut values = Vec::with_capacity(samples);

    for _ in 0..samples {
        let m = [rng.random_range(0..a.bins), rng.random_range(0..b.bins)];
        let j = [rng.random_range(0..a.sub_bins), rng.random_range(0..b.sub_bins)];
        let w = model.sample_state(n, rng);
        let w_idx = w.iter().fold(0usize, |acc, &s| acc * model.card.w + s as usize);
        let idx = e.index(w_idx, m, j);
        let k = e.chosen[idx];
        let v1 = a.codeword(CodewordIndex { bin: m[0], sub_bin: j[0], candidate: k[0] as usize });
        let v2 = b.codeword(CodewordIndex { bin: m[1], sub_bin: j[1], candidate: k[1] as usize });
        let x: Vec<u8> = (0..n).map(|i| model.sample_input(w[i], v1[i], v2[i], rng)).collect();
        let (y1, y2) = model.transmit(&x, &w, rng);
        let y = if t == 0 { y2 } else { y1 };

        for (i, s) in scores.iter_mut().enumerate() {
            let row = &e.slices[i * n..(i + 1) * n];
            *s = e.log_prior[i] + row.iter().zip(&y).map(|(&o, &yv)| kernel[o as usize + yv as usize]).sum::<f64>();
        }
        let all = log2_sum_exp2(scores.iter().copied());
        let target = m[t] as u32;
        let given = log2_sum_exp2(
            scores.iter().zip(&e.message).filter(|(_, mm)| **mm == target).map(|(s, _)| *s),
        );
        values.push((given - all + log_bins) / n as f64);
    }
    Ok(values)
}
