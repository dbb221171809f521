//! Exact finite-alphabet probability engine.
//!
//! A [`JointDistribution`] is a dense row-major tensor over an ordered list of
//! named discrete variables (the last variable varies fastest). All
//! information quantities are in bits, with `0 log 0 = 0`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest dense tensor a distribution may hold.
pub const DEFAULT_MAX_ENTRIES: usize = 10_000_000;

/// Allowed deviation of the total mass from one.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Mutual information in `(-MI_CLAMP_TOL, 0)` is reported as exactly zero.
pub const MI_CLAMP_TOL: f64 = 1e-12;

/// A named discrete variable and its alphabet size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableId {
    name: String,
    cardinality: usize,
}

impl VariableId {
    pub fn new(name: impl Into<String>, cardinality: usize) -> Result<Self> {
        let name = name.into();
        if cardinality == 0 {
            return Err(Error::InvalidArgument(format!(
                "variable `{name}` must have cardinality >= 1"
            )));
        }
        Ok(Self { name, cardinality })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.name, self.cardinality)
    }
}

/// Shorthand for building a variable list in tests and examples.
///
/// Panics on a zero cardinality.
pub fn vars(spec: &[(&str, usize)]) -> Vec<VariableId> {
    spec.iter()
        .map(|&(n, c)| VariableId::new(n, c).expect("cardinality must be positive"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    variables: Vec<VariableId>,
    mass: Vec<f64>,
}

impl JointDistribution {
    /// Builds a distribution from an already normalized mass tensor.
    pub fn new(variables: Vec<VariableId>, mass: Vec<f64>) -> Result<Self> {
        let d = Self::unchecked(variables, mass)?;
        let total: f64 = d.mass.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!(
                "mass sums to {total}, expected 1"
            )));
        }
        Ok(d)
    }

    /// Builds a distribution from non-negative weights, normalizing them.
    pub fn from_weights(variables: Vec<VariableId>, weights: Vec<f64>) -> Result<Self> {
        let mut d = Self::unchecked(variables, weights)?;
        let total: f64 = d.mass.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "weights must have a positive finite total, got {total}"
            )));
        }
        d.mass.iter_mut().for_each(|p| *p /= total);
        Ok(d)
    }

    pub fn uniform(variables: Vec<VariableId>) -> Result<Self> {
        let n = checked_size(&variables, DEFAULT_MAX_ENTRIES)?;
        Self::from_weights(variables, vec![1.0; n])
    }

    /// A distribution over no variables: a single unit atom.
    pub fn trivial() -> Self {
        Self { variables: Vec::new(), mass: vec![1.0] }
    }

    /// Product distribution of independent factors. Variable names must be
    /// distinct across the factors.
    pub fn product(&self, other: &JointDistribution) -> Result<Self> {
        let mut variables = self.variables.clone();
        variables.extend(other.variables.iter().cloned());
        checked_size(&variables, DEFAULT_MAX_ENTRIES)?;
        let mut mass = Vec::with_capacity(self.mass.len() * other.mass.len());
        for &a in &self.mass {
            for &b in &other.mass {
                mass.push(a * b);
            }
        }
        Self::unchecked(variables, mass)
    }

    fn unchecked(variables: Vec<VariableId>, mass: Vec<f64>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &variables {
            if !seen.insert(v.name.as_str()) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        let size = checked_size(&variables, DEFAULT_MAX_ENTRIES)?;
        if mass.len() != size {
            return Err(Error::DimensionMismatch(format!(
                "tensor has {} entries, variables require {size}",
                mass.len()
            )));
        }
        if let Some((i, p)) = mass.iter().enumerate().find(|(_, p)| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidDistribution(format!(
                "entry {i} is {p}; entries must be finite and non-negative"
            )));
        }
        Ok(Self { variables, mass })
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.variables
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn dims(&self) -> Vec<usize> {
        self.variables.iter().map(|v| v.cardinality).collect()
    }

    pub fn has_variable(&self, name: &str) -> bool {
        self.variables.iter().any(|v| v.name == name)
    }

    pub fn axis(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Probability of one full assignment, one symbol per variable in order.
    pub fn prob(&self, assignment: &[usize]) -> f64 {
        assert_eq!(assignment.len(), self.variables.len(), "assignment arity");
        let mut idx = 0;
        for (v, &s) in self.variables.iter().zip(assignment) {
            assert!(s < v.cardinality, "symbol {s} out of range for {v}");
            idx = idx * v.cardinality + s;
        }
        self.mass[idx]
    }

    /// Sums out every variable not in `keep`. The result lists the kept
    /// variables in their original order.
    pub fn marginalize(&self, keep: &[&str]) -> Result<JointDistribution> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument("keep-set must be nonempty".into()));
        }
        let axes = self.axes(keep)?;
        Ok(self.reduce_to(&axes))
    }

    /// Restricts to the slice where each named variable takes the given
    /// symbol and renormalizes. Conditioned variables are removed.
    pub fn condition(&self, given: &[(&str, usize)]) -> Result<JointDistribution> {
        let names: Vec<&str> = given.iter().map(|g| g.0).collect();
        let axes = self.axes(&names)?;
        let mut fixed: Vec<Option<usize>> = vec![None; self.variables.len()];
        for (&ax, &(name, sym)) in axes.iter().zip(given) {
            if sym >= self.variables[ax].cardinality {
                return Err(Error::InvalidArgument(format!(
                    "symbol {sym} out of range for `{name}`"
                )));
            }
            fixed[ax] = Some(sym);
        }
        let dims = self.dims();
        let variables: Vec<VariableId> = self
            .variables
            .iter()
            .zip(&fixed)
            .filter(|(_, f)| f.is_none())
            .map(|(v, _)| v.clone())
            .collect();
        let mut slice = Vec::with_capacity(self.mass.len());
        let mut digits = vec![0usize; dims.len()];
        for &p in &self.mass {
            if digits.iter().zip(&fixed).all(|(d, f)| f.is_none_or(|s| s == *d)) {
                slice.push(p);
            }
            increment(&mut digits, &dims);
        }
        let total: f64 = slice.iter().sum();
        if total <= 0.0 {
            return Err(Error::DegenerateEvent);
        }
        slice.iter_mut().for_each(|p| *p /= total);
        Ok(JointDistribution { variables, mass: slice })
    }

    /// Conditional entropy `H(vars | given)` in bits.
    pub fn entropy(&self, vars: &[&str], given: &[&str]) -> Result<f64> {
        let a = self.axes(vars)?;
        let c = self.axes(given)?;
        disjoint(self, &[&a, &c])?;
        let joint_axes = union(&[&a, &c]);
        let joint = self.reduce_to(&joint_axes);
        let jd = joint.dims();
        let cond_pos = positions(&joint_axes, &c);
        let cond = reduce(&jd, &joint.mass, &cond_pos);
        let proj = projection(&jd, &cond_pos);
        let h: f64 = joint
            .mass
            .iter()
            .zip(&proj)
            .filter(|(p, _)| **p > 0.0)
            .map(|(&p, &ci)| -p * (p / cond[ci]).log2())
            .sum();
        Ok(h.max(0.0))
    }

    /// Conditional mutual information `I(a; b | given)` in bits.
    pub fn mutual_information(&self, a: &[&str], b: &[&str], given: &[&str]) -> Result<f64> {
        let aa = self.axes(a)?;
        let bb = self.axes(b)?;
        let cc = self.axes(given)?;
        disjoint(self, &[&aa, &bb, &cc])?;
        let all = union(&[&aa, &bb, &cc]);
        let joint = self.reduce_to(&all);
        let jd = joint.dims();
        let ac = positions(&all, &union(&[&aa, &cc]));
        let bc = positions(&all, &union(&[&bb, &cc]));
        let c = positions(&all, &cc);
        let (m_ac, m_bc, m_c) = (
            reduce(&jd, &joint.mass, &ac),
            reduce(&jd, &joint.mass, &bc),
            reduce(&jd, &joint.mass, &c),
        );
        let (p_ac, p_bc, p_c) = (projection(&jd, &ac), projection(&jd, &bc), projection(&jd, &c));
        let mut mi = 0.0;
        for (s, &p) in joint.mass.iter().enumerate() {
            if p > 0.0 {
                mi += p * (p * m_c[p_c[s]] / (m_ac[p_ac[s]] * m_bc[p_bc[s]])).log2();
            }
        }
        if mi < 0.0 && mi > -MI_CLAMP_TOL {
            mi = 0.0;
        }
        Ok(mi)
    }

    /// Axis indices for a set of names, sorted ascending and deduplicated.
    fn axes(&self, names: &[&str]) -> Result<Vec<usize>> {
        let mut out = names.iter().map(|n| self.axis(n)).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn reduce_to(&self, axes: &[usize]) -> JointDistribution {
        let variables = axes.iter().map(|&a| self.variables[a].clone()).collect();
        let mass = reduce(&self.dims(), &self.mass, axes);
        JointDistribution { variables, mass }
    }
}

fn checked_size(variables: &[VariableId], cap: usize) -> Result<usize> {
    let mut size = 1usize;
    for v in variables {
        if v.cardinality == 0 {
            return Err(Error::InvalidArgument(format!("variable `{}` has cardinality 0", v.name)));
        }
        size = size
            .checked_mul(v.cardinality)
            .filter(|&s| s <= cap)
            .ok_or_else(|| {
                Error::Capacity(format!("joint tensor exceeds {cap} entries"))
            })?;
    }
    Ok(size)
}

fn disjoint(d: &JointDistribution, sets: &[&Vec<usize>]) -> Result<()> {
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if let Some(ax) = sets[i].iter().find(|a| sets[j].contains(a)) {
                return Err(Error::OverlappingSets(d.variables[*ax].name.clone()));
            }
        }
    }
    Ok(())
}

fn union(sets: &[&Vec<usize>]) -> Vec<usize> {
    let mut out: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Positions of `sub` axes inside the sorted axis list `all`.
fn positions(all: &[usize], sub: &[usize]) -> Vec<usize> {
    sub.iter().map(|a| all.iter().position(|b| b == a).expect("subset")).collect()
}

fn increment(digits: &mut [usize], dims: &[usize]) {
    for k in (0..dims.len()).rev() {
        digits[k] += 1;
        if digits[k] < dims[k] {
            return;
        }
        digits[k] = 0;
    }
}

/// Calls `f(linear, projected)` for every entry of a row-major tensor, where
/// `projected` is the row-major index over the `keep` axes (sorted).
fn for_each_projected(dims: &[usize], keep: &[usize], mut f: impl FnMut(usize, usize)) {
    let mut ostride = vec![0usize; dims.len()];
    let mut s = 1;
    for &k in keep.iter().rev() {
        ostride[k] = s;
        s *= dims[k];
    }
    let total: usize = dims.iter().product();
    let mut digits = vec![0usize; dims.len()];
    let mut out = 0usize;
    for lin in 0..total {
        f(lin, out);
        for k in (0..dims.len()).rev() {
            digits[k] += 1;
            out += ostride[k];
            if digits[k] < dims[k] {
                break;
            }
            out -= dims[k] * ostride[k];
            digits[k] = 0;
        }
    }
}

fn reduce(dims: &[usize], data: &[f64], keep: &[usize]) -> Vec<f64> {
    let size: usize = keep.iter().map(|&k| dims[k]).product();
    let mut out = vec![0.0; size];
    for_each_projected(dims, keep, |lin, o| out[o] += data[lin]);
    out
}

fn projection(dims: &[usize], keep: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.iter().product());
    for_each_projected(dims, keep, |_, o| out.push(o));
    out
}

/// Binary entropy function in bits.
pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p]
        .iter()
        .filter(|&&q| q > 0.0)
        .map(|&q| -q * q.log2())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bsc_joint(p: f64) -> JointDistribution {
        let m = vec![0.5 * (1.0 - p), 0.5 * p, 0.5 * p, 0.5 * (1.0 - p)];
        JointDistribution::new(vars(&[("X", 2), ("Y", 2)]), m).unwrap()
    }

    #[test]
    fn marginal_of_uniform_square_is_uniform() {
        let d = JointDistribution::uniform(vars(&[("A", 2), ("B", 2)])).unwrap();
        let m = d.marginalize(&["A"]).unwrap();
        assert_eq!(m.mass(), &[0.5, 0.5]);
        assert_eq!(m.variables()[0].name(), "A");
    }

    #[test]
    fn marginal_of_product_recovers_factor() {
        let a = JointDistribution::new(vars(&[("A", 3)]), vec![0.2, 0.3, 0.5]).unwrap();
        let b = JointDistribution::new(vars(&[("B", 2)]), vec![0.25, 0.75]).unwrap();
        let c = JointDistribution::new(vars(&[("C", 2)]), vec![0.5, 0.5]).unwrap();
        let d = a.product(&b).unwrap().product(&c).unwrap();
        let m = d.marginalize(&["B"]).unwrap();
        assert_abs_diff_eq!(m.mass()[0], 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(m.mass()[1], 0.75, epsilon = 1e-15);
    }

    #[test]
    fn marginalize_rejects_unknown_and_empty() {
        let d = bsc_joint(0.1);
        assert!(matches!(d.marginalize(&["Z"]), Err(Error::UnknownVariable(_))));
        assert!(matches!(d.marginalize(&[]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn condition_independent_pair_leaves_other_marginal() {
        let a = JointDistribution::new(vars(&[("A", 2)]), vec![0.3, 0.7]).unwrap();
        let b = JointDistribution::new(vars(&[("B", 2)]), vec![0.6, 0.4]).unwrap();
        let d = a.product(&b).unwrap();
        for s in 0..2 {
            let c = d.condition(&[("A", s)]).unwrap();
            assert_abs_diff_eq!(c.mass()[0], 0.6, epsilon = 1e-15);
            assert_abs_diff_eq!(c.mass()[1], 0.4, epsilon = 1e-15);
        }
    }

    #[test]
    fn condition_on_copy_is_point_mass() {
        let d = JointDistribution::new(vars(&[("A", 2), ("B", 2)]), vec![0.5, 0.0, 0.0, 0.5])
            .unwrap();
        let c = d.condition(&[("A", 0)]).unwrap();
        assert_eq!(c.mass(), &[1.0, 0.0]);
    }

    #[test]
    fn condition_on_null_event_is_error() {
        let d = JointDistribution::new(vars(&[("A", 2), ("B", 2)]), vec![0.5, 0.5, 0.0, 0.0])
            .unwrap();
        assert!(matches!(d.condition(&[("A", 1)]), Err(Error::DegenerateEvent)));
    }

    #[test]
    fn entropy_closed_forms() {
        let bit = JointDistribution::uniform(vars(&[("X", 2)])).unwrap();
        assert_abs_diff_eq!(bit.entropy(&["X"], &[]).unwrap(), 1.0, epsilon = 1e-15);
        let six = JointDistribution::uniform(vars(&[("X", 6)])).unwrap();
        assert_abs_diff_eq!(six.entropy(&["X"], &[]).unwrap(), 2.584962500721156, epsilon = 1e-12);
        let d = bsc_joint(0.3);
        assert!(matches!(d.entropy(&["X"], &["X"]), Err(Error::OverlappingSets(_))));
    }

    #[test]
    fn self_conditioning_entropy_vanishes() {
        let d = JointDistribution::new(vars(&[("X", 3), ("Y", 3)]), {
            let mut m = vec![0.0; 9];
            m[0] = 0.2;
            m[4] = 0.3;
            m[8] = 0.5;
            m
        })
        .unwrap();
        // Y is a copy of X
        assert_abs_diff_eq!(d.entropy(&["Y"], &["X"]).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            d.mutual_information(&["X"], &["Y"], &[]).unwrap(),
            d.entropy(&["X"], &[]).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn bsc_mutual_information() {
        let d = bsc_joint(0.11);
        let mi = d.mutual_information(&["X"], &["Y"], &[]).unwrap();
        assert_abs_diff_eq!(mi, 1.0 - binary_entropy(0.11), epsilon = 1e-14);
        // the rounded textbook figure 0.500072 is about 1.2e-5 low
        assert_abs_diff_eq!(mi, 0.500_072, epsilon = 2e-5);
        assert_abs_diff_eq!(mi, 0.500_084_04, epsilon = 1e-8);
    }

    #[test]
    fn independent_pair_has_zero_information() {
        let a = JointDistribution::new(vars(&[("A", 2)]), vec![0.3, 0.7]).unwrap();
        let b = JointDistribution::new(vars(&[("B", 3)]), vec![0.1, 0.6, 0.3]).unwrap();
        let d = a.product(&b).unwrap();
        assert_abs_diff_eq!(d.mutual_information(&["A"], &["B"], &[]).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn constructor_errors() {
        assert!(matches!(
            JointDistribution::new(vars(&[("A", 2)]), vec![0.5, 0.6]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            JointDistribution::new(vars(&[("A", 2)]), vec![1.5, -0.5]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            JointDistribution::new(vars(&[("A", 2), ("A", 2)]), vec![0.25; 4]),
            Err(Error::DuplicateVariable(_))
        ));
        assert!(matches!(
            JointDistribution::uniform(vars(&[("A", 10_000), ("B", 10_000)])),
            Err(Error::Capacity(_))
        ));
        assert!(VariableId::new("A", 0).is_err());
    }
}
