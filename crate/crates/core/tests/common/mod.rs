#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use secbc::{ChannelAlphabets, ChannelSpec, CodingScheme, SchemeAlphabets};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random pmf of length `n`; about one draw in four has a zero entry.
pub fn pmf<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
    if n > 1 && rng.random_bool(0.25) {
        w[rng.random_range(0..n)] = 0.0;
    }
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}

/// Concatenated random pmfs of length `n`, `blocks` of them.
pub fn conditional<R: Rng>(rng: &mut R, blocks: usize, n: usize) -> Vec<f64> {
    (0..blocks).flat_map(|_| pmf(rng, n)).collect()
}

pub fn random_spec<R: Rng>(rng: &mut R, w: usize) -> ChannelSpec {
    let a = ChannelAlphabets { w, x: 2, y1: 2, y2: 2 };
    ChannelSpec { alphabets: a, state_law: pmf(rng, w), channel_law: conditional(rng, 2 * w, 4) }
}

pub fn random_scheme<R: Rng>(rng: &mut R, c: &ChannelAlphabets, u: usize) -> CodingScheme {
    let s = SchemeAlphabets { u, v1: rng.random_range(2..=3), v2: rng.random_range(2..=3) };
    CodingScheme {
        alphabets: s,
        u_law: pmf(rng, u),
        aux_law: conditional(rng, c.w * u, s.v1 * s.v2),
        input_law: conditional(rng, c.w * s.v1 * s.v2, c.x),
    }
}

/// A stateless product channel `X = (X1, X2)` with `Y_t` driven by `X_t`
/// only, and a scheme with `V1`, `V2` independent and `X_t` drawn from `V_t`
/// alone. Every penalty term of the secure region is zero.
pub fn separable_pair<R: Rng>(rng: &mut R) -> (ChannelSpec, CodingScheme) {
    let a = ChannelAlphabets { w: 1, x: 4, y1: 2, y2: 2 };
    let (c1, c2) = (conditional(rng, 2, 2), conditional(rng, 2, 2));
    let spec = ChannelSpec::from_fn(a, vec![1.0], |x, _, y1, y2| c1[(x / 2) * 2 + y1] * c2[(x % 2) * 2 + y2]);
    let s = SchemeAlphabets { u: 1, v1: rng.random_range(2..=3), v2: rng.random_range(2..=3) };
    let (p1, p2) = (pmf(rng, s.v1), pmf(rng, s.v2));
    let (f1, f2) = (conditional(rng, s.v1, 2), conditional(rng, s.v2, 2));
    let scheme = CodingScheme::from_fn(
        s,
        &a,
        vec![1.0],
        |_, _, v1, v2| p1[v1] * p2[v2],
        |_, v1, v2, x| f1[v1 * 2 + x / 2] * f2[v2 * 2 + x % 2],
    );
    (spec, scheme)
}

/// Naive `H(A|C)` in bits by summing over every assignment of a dense joint
/// with variable cardinalities `dims`.
pub fn naive_entropy(mass: &[f64], dims: &[usize], a: &[usize], c: &[usize]) -> f64 {
    let ac: Vec<usize> = a.iter().chain(c).copied().collect();
    let p_ac = naive_marginal(mass, dims, &ac);
    let p_c = naive_marginal(mass, dims, c);
    let mut h = 0.0;
    for (key, &p) in &p_ac {
        if p > 0.0 {
            let pc = p_c[&key[a.len()..].to_vec()];
            h -= p * (p / pc).log2();
        }
    }
    h
}

/// Naive `I(A;B|C)` as the expectation of `log p(abc) p(c) / (p(ac) p(bc))`.
pub fn naive_mi(mass: &[f64], dims: &[usize], a: &[usize], b: &[usize], c: &[usize]) -> f64 {
    let cat = |x: &[usize], y: &[usize]| x.iter().chain(y).copied().collect::<Vec<_>>();
    let abc = cat(&cat(a, b), c);
    let (p_abc, p_ac, p_bc, p_c) = (
        naive_marginal(mass, dims, &abc),
        naive_marginal(mass, dims, &cat(a, c)),
        naive_marginal(mass, dims, &cat(b, c)),
        naive_marginal(mass, dims, c),
    );
    let mut i = 0.0;
    for (key, &p) in &p_abc {
        if p > 0.0 {
            let (ka, kb, kc) = (&key[..a.len()], &key[a.len()..a.len() + b.len()], &key[a.len() + b.len()..]);
            i += p * (p * p_c[kc] / (p_ac[&cat(ka, kc)] * p_bc[&cat(kb, kc)])).log2();
        }
    }
    i
}

fn naive_marginal(
    mass: &[f64],
    dims: &[usize],
    keep: &[usize],
) -> std::collections::HashMap<Vec<usize>, f64> {
    let mut out = std::collections::HashMap::new();
    let mut idx = vec![0usize; dims.len()];
    for &p in mass {
        let key: Vec<usize> = keep.iter().map(|&k| idx[k]).collect();
        *out.entry(key).or_insert(0.0) += p;
        for d in (0..dims.len()).rev() {
            idx[d] += 1;
            if idx[d] < dims[d] {
                break;
            }
            idx[d] = 0;
        }
    }
    out
}

/// Raises every entry of each length-`n` block to `power` and renormalizes,
/// pushing the laws toward determinism.
pub fn sharpen(law: &mut [f64], n: usize, power: i32) {
    for block in law.chunks_mut(n) {
        block.iter_mut().for_each(|p| *p = p.powi(power));
        let s: f64 = block.iter().sum();
        block.iter_mut().for_each(|p| *p /= s);
    }
}
