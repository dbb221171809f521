//! Strong typicality: a tuple of sequences is typical for a target joint pmf
//! when every empirical cell frequency is within `epsilon` of its target and
//! no zero-probability cell occurs.

/// Absorbs rounding in `N (p +- epsilon)` so exact boundaries count as inside.
const BOUNDARY_SLACK: f64 = 1e-9;

/// Per-cell count window `[lower, upper]` for a fixed block length.
#[derive(Clone, Debug)]
pub struct TypicalSet {
    lower: Vec<u32>,
    upper: Vec<u32>,
}

impl TypicalSet {
    pub fn new(target: &[f64], epsilon: f64, n: usize) -> Self {
        let nf = n as f64;
        let (lower, upper) = target
            .iter()
            .map(|&p| {
                if p <= 0.0 {
                    (0, 0)
                } else {
                    let lo = (nf * (p - epsilon) - BOUNDARY_SLACK).ceil().max(0.0);
                    let hi = (nf * (p + epsilon) + BOUNDARY_SLACK).floor().min(nf);
                    (lo as u32, hi as u32)
                }
            })
            .unzip();
        Self { lower, upper }
    }

    pub fn cells(&self) -> usize {
        self.lower.len()
    }

    /// Whether the cell sequence has a typical empirical distribution.
    /// `counts` is scratch space of length [`Self::cells`].
    pub fn check(&self, cells: impl Iterator<Item = usize>, counts: &mut [u32]) -> bool {
        counts.iter_mut().for_each(|c| *c = 0);
        for c in cells {
            counts[c] += 1;
            if counts[c] > self.upper[c] {
                return false;
            }
        }
        counts.iter().zip(&self.lower).all(|(c, lo)| c >= lo)
    }

    /// Convenience form of [`Self::check`] that allocates its own scratch.
    pub fn contains(&self, cells: impl Iterator<Item = usize>) -> bool {
        let mut counts = vec![0; self.cells()];
        self.check(cells, &mut counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_frequencies_are_typical() {
        let t = TypicalSet::new(&[0.25, 0.75], 0.0, 8);
        assert!(t.contains([0, 1, 1, 1, 0, 1, 1, 1].into_iter()));
        assert!(!t.contains([0, 0, 0, 1, 1, 1, 1, 1].into_iter()));
    }

    #[test]
    fn zero_probability_cell_is_forbidden() {
        let t = TypicalSet::new(&[0.5, 0.0, 0.5], 0.4, 10);
        assert!(!t.contains([0, 0, 0, 0, 0, 2, 2, 2, 2, 1].into_iter()));
        assert!(t.contains([0, 0, 0, 0, 0, 0, 2, 2, 2, 2].into_iter()));
    }

    #[test]
    fn boundary_deviation_counts_as_inside() {
        // 0.3 +- 0.05 at n = 20 spans counts 5..=7
        let t = TypicalSet::new(&[0.3, 0.7], 0.05, 20);
        for (ones, ok) in [(4, false), (5, true), (7, true), (8, false)] {
            let seq = (0..20).map(|i| if i < ones { 0 } else { 1 });
            assert_eq!(t.contains(seq), ok, "count {ones}");
        }
    }
}
