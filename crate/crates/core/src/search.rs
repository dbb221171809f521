//! Frontier search over coding schemes.
//!
//! Candidates are visited in a fixed order and truncated at the budget:
//!
//! 1. schemes supplied by the caller,
//! 2. deterministic-map schemes: independent uniform auxiliaries paired with
//!    every deterministic input map `x = f(w, v1, v2)`, smallest alphabets
//!    first, using at most half the budget,
//! 3. random schemes with simplex draws for every conditional slice.
//!
//! Candidate `k` of phase 3 draws from its own counter-seeded stream, so the
//! hull for budget `b` is built from a prefix of the candidates for any
//! larger budget.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;

use crate::channel::{induced_joint, ChannelSpec, CodingScheme, SchemeAlphabets};
use crate::error::{Error, Result};
use crate::region::{hull_of, polygon_labeled, RateRegion, RegionKind};
use crate::streams::{stream_rng, StreamRng, DOMAIN_SEARCH};

/// Largest number of deterministic maps enumerated for one alphabet choice.
const MAX_MAPS_PER_SHAPE: u64 = 4096;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub budget: usize,
    pub seed: u64,
    /// Largest `|U|`.
    pub max_u: usize,
    /// Largest `|V1|` and `|V2|`; `None` means `|X| |W| + 1`.
    pub max_v: Option<usize>,
    /// Evaluated first, in order.
    pub initial: Vec<CodingScheme>,
}

impl SearchConfig {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self { budget, seed, max_u: 2, max_v: None, initial: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub struct Frontier {
    pub region: RateRegion,
    pub evaluated: usize,
}

/// Convex hull of the union of the chosen region over `cfg.budget` schemes.
pub fn search_frontier(spec: &ChannelSpec, kind: RegionKind, cfg: &SearchConfig) -> Result<Frontier> {
    let candidates = candidate_list(spec, cfg)?;
    let regions = candidates
        .par_iter()
        .map(|c| {
            let scheme = c.build(spec, cfg);
            let j = induced_joint(spec, &scheme)?;
            Ok(polygon_labeled(&kind.evaluate(&j)?, kind))
        })
        .collect::<Result<Vec<RateRegion>>>()?;
    Ok(Frontier { region: hull_of(&regions), evaluated: regions.len() })
}

/// The schemes a search with this configuration visits, in order.
pub fn sampled_schemes(spec: &ChannelSpec, cfg: &SearchConfig) -> Result<Vec<CodingScheme>> {
    Ok(candidate_list(spec, cfg)?.iter().map(|c| c.build(spec, cfg)).collect())
}

enum Candidate {
    Given(usize),
    DeterministicMap { v1: usize, v2: usize, map: u64 },
    Random(u64),
}

impl Candidate {
    fn build(&self, spec: &ChannelSpec, cfg: &SearchConfig) -> CodingScheme {
        match *self {
            Candidate::Given(i) => cfg.initial[i].clone(),
            Candidate::DeterministicMap { v1, v2, map } => deterministic_scheme(spec, v1, v2, map),
            Candidate::Random(k) => {
                random_scheme(spec, cfg, &mut stream_rng(cfg.seed, DOMAIN_SEARCH, k))
            }
        }
    }
}

fn candidate_list(spec: &ChannelSpec, cfg: &SearchConfig) -> Result<Vec<Candidate>> {
    if cfg.budget == 0 {
        return Err(Error::InvalidArgument("search budget must be at least 1".into()));
    }
    if cfg.max_u == 0 || cfg.max_v == Some(0) {
        return Err(Error::InvalidArgument("alphabet caps must be at least 1".into()));
    }
    let c = &spec.alphabets;
    let mut out: Vec<Candidate> = (0..cfg.initial.len().min(cfg.budget)).map(Candidate::Given).collect();

    let det_budget = ((cfg.budget - out.len()) / 2) as u64;
    let max_v = v_cap(spec, cfg);
    let mut shapes: Vec<(u64, usize, usize)> = Vec::new();
    for v1 in 1..=max_v {
        for v2 in 1..=max_v {
            let cells = (c.w * v1 * v2) as u32;
            if let Some(n) = (c.x as u64).checked_pow(cells).filter(|&n| n <= MAX_MAPS_PER_SHAPE) {
                shapes.push((n, v1, v2));
            }
        }
    }
    shapes.sort_unstable();
    let mut used = 0u64;
    'shapes: for (n, v1, v2) in shapes {
        for map in 0..n {
            if used >= det_budget {
                break 'shapes;
            }
            out.push(Candidate::DeterministicMap { v1, v2, map });
            used += 1;
        }
    }
    let mut k = 0u64;
    while out.len() < cfg.budget {
        out.push(Candidate::Random(k));
        k += 1;
    }
    Ok(out)
}

fn v_cap(spec: &ChannelSpec, cfg: &SearchConfig) -> usize {
    cfg.max_v.unwrap_or(spec.alphabets.x * spec.alphabets.w + 1)
}

fn deterministic_scheme(spec: &ChannelSpec, v1: usize, v2: usize, map: u64) -> CodingScheme {
    let c = spec.alphabets;
    let x_of = move |w: usize, a: usize, b: usize| {
        let cell = ((w * v1 + a) * v2 + b) as u32;
        ((map / (c.x as u64).pow(cell)) % c.x as u64) as usize
    };
    let uniform = 1.0 / (v1 * v2) as f64;
    CodingScheme::from_fn(
        SchemeAlphabets { u: 1, v1, v2 },
        &c,
        vec![1.0],
        move |_, _, _, _| uniform,
        move |w, a, b, x| (x == x_of(w, a, b)) as u8 as f64,
    )
}

/// Symmetric Dirichlet draw; concentrations below one favor sparse slices.
fn simplex(rng: &mut StreamRng, n: usize, alpha: f64) -> Vec<f64> {
    let gamma = Gamma::new(alpha, 1.0).expect("positive shape");
    let mut v: Vec<f64> = (0..n).map(|_| gamma.sample(rng)).collect();
    let total: f64 = v.iter().sum();
    if total > 0.0 && total.is_finite() {
        v.iter_mut().for_each(|p| *p /= total);
    } else {
        v.iter_mut().for_each(|p| *p = 0.0);
        v[rng.random_range(0..n)] = 1.0;
    }
    // force an exact unit total so slice validation cannot trip on rounding
    let drift: f64 = 1.0 - v.iter().sum::<f64>();
    let top = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    v[top] += drift;
    v
}

fn point_mass(rng: &mut StreamRng, n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[rng.random_range(0..n)] = 1.0;
    v
}

fn random_scheme(spec: &ChannelSpec, cfg: &SearchConfig, rng: &mut StreamRng) -> CodingScheme {
    const ALPHAS: [f64; 3] = [1.0, 0.3, 0.1];
    let c = spec.alphabets;
    let max_v = v_cap(spec, cfg);
    let u = rng.random_range(1..=cfg.max_u);
    let v1 = rng.random_range(1..=max_v);
    let v2 = rng.random_range(1..=max_v);
    let aux_alpha = ALPHAS[rng.random_range(0..ALPHAS.len())];
    let in_alpha = ALPHAS[rng.random_range(0..ALPHAS.len())];
    let deterministic_input = rng.random_bool(1.0 / 3.0);

    let u_law = simplex(rng, u, 1.0);
    let mut aux_law = Vec::with_capacity(c.w * u * v1 * v2);
    for _ in 0..c.w * u {
        aux_law.extend(simplex(rng, v1 * v2, aux_alpha));
    }
    let mut input_law = Vec::with_capacity(c.w * v1 * v2 * c.x);
    for _ in 0..c.w * v1 * v2 {
        if deterministic_input {
            input_law.extend(point_mass(rng, c.x));
        } else {
            input_law.extend(simplex(rng, c.x, in_alpha));
        }
    }
    CodingScheme { alphabets: SchemeAlphabets { u, v1, v2 }, u_law, aux_law, input_law }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::region::{polygon_labeled, RatePair};

    #[test]
    fn budget_one_with_given_scheme_is_that_polygon() {
        let spec = presets::parallel_bsc(0.1, 0.2);
        let scheme = presets::pipe_scheme(0.5, 0.3);
        let mut cfg = SearchConfig::new(1, 7);
        cfg.initial.push(scheme.clone());
        let f = search_frontier(&spec, RegionKind::Marton, &cfg).unwrap();
        let j = induced_joint(&spec, &scheme).unwrap();
        let p = polygon_labeled(&RegionKind::Marton.evaluate(&j).unwrap(), RegionKind::Marton);
        assert_eq!(f.evaluated, 1);
        assert_eq!(f.region.vertices, p.vertices);
    }

    #[test]
    fn random_schemes_are_valid() {
        let spec = presets::binary_dirty_channel(0.3, 0.1, 0.2);
        let cfg = SearchConfig::new(200, 3);
        for s in sampled_schemes(&spec, &cfg).unwrap() {
            assert!(s.validate_against(&spec).is_empty());
        }
    }

    #[test]
    fn zero_budget_is_rejected() {
        let spec = presets::clean_parallel_pipes();
        assert!(search_frontier(&spec, RegionKind::Marton, &SearchConfig::new(0, 1)).is_err());
    }

    #[test]
    fn deterministic_phase_reaches_clean_pipe_optimum() {
        let spec = presets::clean_parallel_pipes();
        let f = search_frontier(&spec, RegionKind::Marton, &SearchConfig::new(1000, 1)).unwrap();
        assert!(f.region.contains_point(RatePair::new(1.0, 1.0), 1e-9));
    }
}
