use std::sync::Arc;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use super::rates::RateAllocation;
use super::typical::TypicalSet;
use crate::channel::{induced_joint, ChannelSpec, CodingScheme};
use crate::error::{Error, Result};
use crate::prob::JointDistribution;
use crate::streams::{stream_rng, DOMAIN_CODEBOOK};

/// Redraws allowed when looking for a typical shared sequence `u`.
pub const U_RETRY_CAP: usize = 1000;

/// Largest exponent `N R` accepted for a single index range.
const MAX_INDEX_BITS: f64 = 40.0;

#[derive(Clone, Debug, PartialEq)]
pub struct CodebookConfig {
    /// Block length `N`.
    pub block_len: usize,
    pub rates: RateAllocation,
    /// Typicality slack (max-norm on empirical joint frequencies).
    pub epsilon: f64,
    pub seed: u64,
    pub trials: usize,
    /// Independent codebooks drawn per simulation; trials are spread over
    /// them round-robin so error rates average over the random-code ensemble.
    pub codebooks: usize,
    /// Channel outputs drawn per leakage estimate; 0 skips leakage.
    pub leakage_samples: usize,
    /// Largest number of `(state sequence, index tuple)` combinations the
    /// leakage estimator may enumerate.
    pub enumeration_budget: usize,
    /// Largest total number of stored codeword symbols.
    pub max_codebook_symbols: usize,
}

impl CodebookConfig {
    pub fn new(block_len: usize, rates: RateAllocation) -> Self {
        Self {
            block_len,
            rates,
            epsilon: 0.05,
            seed: 0,
            trials: 2000,
            codebooks: 1,
            leakage_samples: 200,
            enumeration_budget: 1 << 16,
            max_codebook_symbols: 1 << 26,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_len == 0 {
            return Err(Error::InvalidArgument("block length must be >= 1".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidArgument("epsilon must be > 0".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be >= 1".into()));
        }
        if self.codebooks == 0 {
            return Err(Error::InvalidArgument("codebooks must be >= 1".into()));
        }
        if self.rates.all().iter().any(|r| !(*r >= 0.0) || !r.is_finite()) {
            return Err(Error::InvalidArgument(format!("rates must be finite and >= 0: {:?}", self.rates)));
        }
        Ok(())
    }
}

/// `max(1, round(2^(n rate)))`.
pub fn index_count(n: usize, rate: f64) -> Result<usize> {
    let bits = n as f64 * rate;
    if bits > MAX_INDEX_BITS {
        return Err(Error::Capacity(format!(
            "2^({n} x {rate}) indices is beyond the supported range; use a smaller N or rate"
        )));
    }
    Ok((bits.exp2().round() as usize).max(1))
}

/// Per-symbol laws and typicality targets derived from a channel and scheme.
#[derive(Debug)]
pub struct CodecModel {
    pub spec: ChannelSpec,
    pub scheme: CodingScheme,
    pub joint: JointDistribution,
    pub(crate) card: Cards,
    /// `P(u, w, v1, v2)` laid out `[u][w][v1][v2]`.
    pub(crate) enc_target: Vec<f64>,
    /// `P(u, v_t, y_t)` laid out `[u][v][y]`.
    pub(crate) dec_target: [Vec<f64>; 2],
    pub(crate) u_law: Vec<f64>,
    u_sampler: WeightedIndex<f64>,
    state_sampler: WeightedIndex<f64>,
    v_samplers: [Vec<WeightedIndex<f64>>; 2],
    input_samplers: Vec<WeightedIndex<f64>>,
    channel_samplers: Vec<WeightedIndex<f64>>,
    /// `log2 p(y_other | w, v1, v2)` for the receiver that must not learn
    /// message `t`, laid out `[w][v1][v2][y]`.
    pub(crate) eaves_log_kernel: [Vec<f64>; 2],
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Cards {
    pub w: usize,
    pub v: [usize; 2],
    pub y: [usize; 2],
}

fn sampler(weights: &[f64]) -> Result<WeightedIndex<f64>> {
    WeightedIndex::new(weights).map_err(|e| Error::InvalidDistribution(e.to_string()))
}

impl CodecModel {
    pub fn new(spec: &ChannelSpec, scheme: &CodingScheme) -> Result<Self> {
        let joint = induced_joint(spec, scheme)?;
        let (c, s) = (spec.alphabets, scheme.alphabets);
        let card = Cards { w: c.w, v: [s.v1, s.v2], y: [c.y1, c.y2] };
        if [c.w, c.x, c.y1, c.y2, s.u, s.v1, s.v2].iter().any(|&n| n > u8::MAX as usize + 1) {
            return Err(Error::Capacity("codec alphabets are limited to 256 symbols".into()));
        }

        let mut enc_target = Vec::with_capacity(s.u * c.w * s.v1 * s.v2);
        for u in 0..s.u {
            for w in 0..c.w {
                for v1 in 0..s.v1 {
                    for v2 in 0..s.v2 {
                        enc_target.push(scheme.u_law[u] * spec.state_law[w] * scheme.aux_prob(w, u, v1, v2));
                    }
                }
            }
        }
        let dec_target = [
            joint.marginalize(&["U", "V1", "Y1"])?.mass().to_vec(),
            joint.marginalize(&["U", "V2", "Y2"])?.mass().to_vec(),
        ];

        let mut v_samplers: [Vec<WeightedIndex<f64>>; 2] = [Vec::new(), Vec::new()];
        for u in 0..s.u {
            let mut p1 = vec![0.0; s.v1];
            let mut p2 = vec![0.0; s.v2];
            for w in 0..c.w {
                for v1 in 0..s.v1 {
                    for v2 in 0..s.v2 {
                        let p = spec.state_law[w] * scheme.aux_prob(w, u, v1, v2);
                        p1[v1] += p;
                        p2[v2] += p;
                    }
                }
            }
            v_samplers[0].push(sampler(&p1)?);
            v_samplers[1].push(sampler(&p2)?);
        }
        let input_samplers = scheme
            .input_law
            .chunks(c.x)
            .map(sampler)
            .collect::<Result<Vec<_>>>()?;
        let channel_samplers = spec
            .channel_law
            .chunks(c.y1 * c.y2)
            .map(sampler)
            .collect::<Result<Vec<_>>>()?;

        let mut eaves_log_kernel = [Vec::new(), Vec::new()];
        for w in 0..c.w {
            for v1 in 0..s.v1 {
                for v2 in 0..s.v2 {
                    let mut k = [vec![0.0; c.y2], vec![0.0; c.y1]];
                    for (x, &px) in scheme.input_slice(w, v1, v2, c.x).iter().enumerate() {
                        for y1 in 0..c.y1 {
                            for y2 in 0..c.y2 {
                                let p = px * spec.channel_prob(x, w, y1, y2);
                                k[0][y2] += p;
                                k[1][y1] += p;
                            }
                        }
                    }
                    for t in 0..2 {
                        eaves_log_kernel[t].extend(k[t].iter().map(|p| p.log2()));
                    }
                }
            }
        }

        Ok(Self {
            spec: spec.clone(),
            scheme: scheme.clone(),
            joint,
            card,
            enc_target,
            dec_target,
            u_law: scheme.u_law.clone(),
            u_sampler: sampler(&scheme.u_law)?,
            state_sampler: sampler(&spec.state_law)?,
            v_samplers,
            input_samplers,
            channel_samplers,
            eaves_log_kernel,
        })
    }

    pub fn sample_state<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<u8> {
        (0..n).map(|_| self.state_sampler.sample(rng) as u8).collect()
    }

    /// Passes `x` through the memoryless channel, returning `(y1, y2)`.
    pub fn transmit<R: Rng + ?Sized>(&self, x: &[u8], w: &[u8], rng: &mut R) -> (Vec<u8>, Vec<u8>) {
        let y2c = self.card.y[1];
        x.iter()
            .zip(w)
            .map(|(&x, &w)| {
                let y = self.channel_samplers[x as usize * self.card.w + w as usize].sample(rng);
                ((y / y2c) as u8, (y % y2c) as u8)
            })
            .unzip()
    }

    pub(crate) fn sample_input<R: Rng + ?Sized>(&self, w: u8, v1: u8, v2: u8, rng: &mut R) -> u8 {
        let slice = (w as usize * self.card.v[0] + v1 as usize) * self.card.v[1] + v2 as usize;
        self.input_samplers[slice].sample(rng) as u8
    }
}

/// Index of one codeword: message bin, secrecy sub-bin, and candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodewordIndex {
    pub bin: usize,
    pub sub_bin: usize,
    pub candidate: usize,
}

/// One user's codewords stored bin-major: `(bin, sub_bin, candidate)`.
#[derive(Clone, Debug)]
pub struct CodeTable {
    pub bins: usize,
    pub sub_bins: usize,
    pub candidates: usize,
    n: usize,
    symbols: Vec<u8>,
}

impl CodeTable {
    pub fn len(&self) -> usize {
        self.bins * self.sub_bins * self.candidates
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn per_bin(&self) -> usize {
        self.sub_bins * self.candidates
    }

    pub fn codeword(&self, idx: CodewordIndex) -> &[u8] {
        self.row(self.flat(idx))
    }

    pub(crate) fn flat(&self, idx: CodewordIndex) -> usize {
        (idx.bin * self.sub_bins + idx.sub_bin) * self.candidates + idx.candidate
    }

    pub(crate) fn row(&self, flat: usize) -> &[u8] {
        &self.symbols[flat * self.n..(flat + 1) * self.n]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodeOutcome {
    /// A jointly typical candidate pair was found.
    Success,
    /// No candidate pair was typical; the first candidates were sent.
    Failure,
}

#[derive(Clone, Debug)]
pub struct Encoded {
    pub x: Vec<u8>,
    pub codewords: [CodewordIndex; 2],
    pub outcome: EncodeOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decoded {
    Message(usize),
    /// No codeword is typical with the output.
    NoMatch,
    /// Codewords from two or more bins are typical with the output.
    Ambiguous,
}

/// Random double-binning codebook over a shared sequence `u`.
#[derive(Clone, Debug)]
pub struct Codebook {
    pub model: Arc<CodecModel>,
    pub n: usize,
    pub epsilon: f64,
    pub u_seq: Vec<u8>,
    pub tables: [CodeTable; 2],
    enc_set: TypicalSet,
    dec_sets: [TypicalSet; 2],
}

impl Codebook {
    pub fn build(model: Arc<CodecModel>, cfg: &CodebookConfig) -> Result<Self> {
        Self::build_indexed(model, cfg, 0)
    }

    /// Codebook number `index` of the ensemble for `cfg.seed`.
    pub fn build_indexed(model: Arc<CodecModel>, cfg: &CodebookConfig, index: u64) -> Result<Self> {
        cfg.validate()?;
        let n = cfg.block_len;
        let r = &cfg.rates;
        let mut shape = [[0usize; 3]; 2];
        let mut total = 0usize;
        for t in 0..2 {
            shape[t] = [
                index_count(n, r.message(t))?,
                index_count(n, r.randomization(t))?,
                index_count(n, r.binning(t))?,
            ];
            let words = shape[t].iter().try_fold(1usize, |a, &b| a.checked_mul(b));
            total = words
                .and_then(|w| w.checked_mul(n))
                .and_then(|s| s.checked_add(total))
                .filter(|&s| s <= cfg.max_codebook_symbols)
                .ok_or_else(|| {
                    Error::Capacity(format!(
                        "codebook exceeds {} stored symbols at N = {n}; lower N or the rates",
                        cfg.max_codebook_symbols
                    ))
                })?;
        }

        let mut rng = stream_rng(cfg.seed, DOMAIN_CODEBOOK, index);
        let u_set = TypicalSet::new(&model.u_law, cfg.epsilon, n);
        let mut u_seq = None;
        for _ in 0..U_RETRY_CAP {
            let cand: Vec<u8> = (0..n).map(|_| model.u_sampler.sample(&mut rng) as u8).collect();
            if u_set.contains(cand.iter().map(|&u| u as usize)) {
                u_seq = Some(cand);
                break;
            }
        }
        let u_seq = u_seq.ok_or_else(|| {
            Error::DegenerateScheme(format!(
                "no typical u sequence in {U_RETRY_CAP} draws at N = {n}, epsilon = {}",
                cfg.epsilon
            ))
        })?;

        let tables = [0, 1].map(|t| {
            let [bins, sub_bins, candidates] = shape[t];
            let count = bins * sub_bins * candidates;
            let mut symbols = Vec::with_capacity(count * n);
            for _ in 0..count {
                symbols.extend(
                    u_seq.iter().map(|&u| model.v_samplers[t][u as usize].sample(&mut rng) as u8),
                );
            }
            CodeTable { bins, sub_bins, candidates, n, symbols }
        });

        let enc_set = TypicalSet::new(&model.enc_target, cfg.epsilon, n);
        let dec_sets = [
            TypicalSet::new(&model.dec_target[0], cfg.epsilon, n),
            TypicalSet::new(&model.dec_target[1], cfg.epsilon, n),
        ];
        Ok(Self { model, n, epsilon: cfg.epsilon, u_seq, tables, enc_set, dec_sets })
    }

    /// Rates implied by the rounded table sizes.
    pub fn realized_rates(&self) -> RateAllocation {
        let r = |k: usize| (k as f64).log2() / self.n as f64;
        let [a, b] = &self.tables;
        RateAllocation {
            r1: r(a.bins),
            r2: r(b.bins),
            rp1: r(a.sub_bins),
            rp2: r(b.sub_bins),
            rs1: r(a.candidates),
            rs2: r(b.candidates),
        }
    }

    /// First candidate pair `(k1, k2)` in lexicographic order whose codewords
    /// are jointly typical with `(u, w)`.
    pub fn select_candidates(&self, bins: [usize; 2], sub_bins: [usize; 2], w: &[u8]) -> Option<[usize; 2]> {
        let c = &self.model.card;
        let (v1c, v2c) = (c.v[0], c.v[1]);
        let base: Vec<usize> = self
            .u_seq
            .iter()
            .zip(w)
            .map(|(&u, &w)| (u as usize * c.w + w as usize) * v1c * v2c)
            .collect();
        let mut partial = vec![0usize; self.n];
        let mut counts = vec![0u32; self.enc_set.cells()];
        let (t1, t2) = (&self.tables[0], &self.tables[1]);
        for k1 in 0..t1.candidates {
            let v1 = t1.codeword(CodewordIndex { bin: bins[0], sub_bin: sub_bins[0], candidate: k1 });
            for ((p, &b), &v) in partial.iter_mut().zip(&base).zip(v1) {
                *p = b + v as usize * v2c;
            }
            for k2 in 0..t2.candidates {
                let v2 = t2.codeword(CodewordIndex { bin: bins[1], sub_bin: sub_bins[1], candidate: k2 });
                let cells = partial.iter().zip(v2).map(|(&p, &v)| p + v as usize);
                if self.enc_set.check(cells, &mut counts) {
                    return Some([k1, k2]);
                }
            }
        }
        None
    }

    /// Stochastic encoder: draws sub-bins uniformly, searches for a typical
    /// candidate pair, and draws `x` symbol by symbol from `p(x | w, v1, v2)`.
    pub fn encode<R: Rng + ?Sized>(&self, m1: usize, m2: usize, w: &[u8], rng: &mut R) -> Result<Encoded> {
        if w.len() != self.n {
            return Err(Error::InvalidArgument(format!("state sequence has length {}, N = {}", w.len(), self.n)));
        }
        for (t, m) in [m1, m2].into_iter().enumerate() {
            if m >= self.tables[t].bins {
                return Err(Error::InvalidArgument(format!(
                    "message {m} out of range for receiver {} ({} messages)",
                    t + 1,
                    self.tables[t].bins
                )));
            }
        }
        let sub = [
            rng.random_range(0..self.tables[0].sub_bins),
            rng.random_range(0..self.tables[1].sub_bins),
        ];
        let (k, outcome) = match self.select_candidates([m1, m2], sub, w) {
            Some(k) => (k, EncodeOutcome::Success),
            None => ([0, 0], EncodeOutcome::Failure),
        };
        let codewords = [
            CodewordIndex { bin: m1, sub_bin: sub[0], candidate: k[0] },
            CodewordIndex { bin: m2, sub_bin: sub[1], candidate: k[1] },
        ];
        let v1 = self.tables[0].codeword(codewords[0]);
        let v2 = self.tables[1].codeword(codewords[1]);
        let x = (0..self.n).map(|i| self.model.sample_input(w[i], v1[i], v2[i], rng)).collect();
        Ok(Encoded { x, codewords, outcome })
    }

    /// Joint-typicality decoder for receiver `t` (0-based): the unique bin
    /// holding a codeword typical with `(u, y)`.
    pub fn decode(&self, t: usize, y: &[u8]) -> Result<Decoded> {
        if t > 1 {
            return Err(Error::InvalidArgument(format!("receiver index {t} (expected 0 or 1)")));
        }
        if y.len() != self.n {
            return Err(Error::InvalidArgument(format!("output has length {}, N = {}", y.len(), self.n)));
        }
        let (vc, yc) = (self.model.card.v[t], self.model.card.y[t]);
        let base: Vec<usize> = self
            .u_seq
            .iter()
            .zip(y)
            .map(|(&u, &y)| u as usize * vc * yc + y as usize)
            .collect();
        let set = &self.dec_sets[t];
        let table = &self.tables[t];
        let mut counts = vec![0u32; set.cells()];
        let mut found = None;
        for bin in 0..table.bins {
            let start = bin * table.per_bin();
            for flat in start..start + table.per_bin() {
                let v = table.row(flat);
                let cells = base.iter().zip(v).map(|(&b, &v)| b + v as usize * yc);
                if set.check(cells, &mut counts) {
                    if found.is_some() {
                        return Ok(Decoded::Ambiguous);
                    }
                    found = Some(bin);
                    break;
                }
            }
        }
        Ok(found.map_or(Decoded::NoMatch, Decoded::Message))
    }
}
