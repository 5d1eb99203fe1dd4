use serde::{Deserialize, Serialize};

use super::{PartialColoring, Window};
use crate::distset::DistanceSet;
use crate::exact::LatticeVector;

/// The coloring `(a, b) ↦ (w_a·a + w_b·b) mod t`. Proper exactly when no
/// distance has weight `≡ 0 (mod t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearColoring {
    pub t: usize,
    pub weights: (i64, i64),
}

impl LinearColoring {
    pub fn color(&self, p: LatticeVector) -> usize {
        let t = self.t as i64;
        (self.weights.0 * p.a.rem_euclid(t) + self.weights.1 * p.b.rem_euclid(t)).rem_euclid(t) as usize
    }

    pub fn is_proper_for(&self, ds: &DistanceSet) -> bool {
        ds.lattice_coords().iter().all(|&d| self.color(d) != 0)
    }

    pub fn restrict(&self, w: &Window) -> PartialColoring {
        PartialColoring::from_pairs(self.t, w.points().map(|p| (p, self.color(p))))
            .expect("colors are reduced mod t")
    }
}

/// Scans all `t²` weight pairs in lexicographic order.
pub fn find_linear_coloring(ds: &DistanceSet, t: usize) -> Option<LinearColoring> {
    let t64 = t as i64;
    (0..t64)
        .flat_map(|wa| (0..t64).map(move |wb| (wa, wb)))
        .map(|weights| LinearColoring { t, weights })
        .find(|lc| lc.is_proper_for(ds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distset::{generate_theorem_family, parse_distance_set};
    use crate::exact::Radicand;

    #[test]
    fn counterexample_weights() {
        let d = generate_theorem_family(3).unwrap();
        let lc = find_linear_coloring(&d, 3).unwrap();
        assert_eq!(lc.weights, (1, 1));
        let values: Vec<_> = d.lattice_coords().iter().map(|&c| lc.color(c)).collect();
        // elements in value order: 1, √2, 2, 1+√2, 2√2
        assert_eq!(values, vec![1, 1, 2, 2, 2]);
        assert_eq!(find_linear_coloring(&d, 2), None);
    }

    #[test]
    fn parity_on_rank_one() {
        let d = parse_distance_set("1", Radicand::TWO).unwrap();
        assert_eq!(find_linear_coloring(&d, 2).unwrap().weights, (1, 0));
        assert_eq!(find_linear_coloring(&d, 1), None);
    }

    #[test]
    fn theorem_family_uses_unit_weights() {
        for t in 2..=7 {
            let d = generate_theorem_family(t).unwrap();
            assert_eq!(find_linear_coloring(&d, t).unwrap().weights, (1, 1));
            assert_eq!(find_linear_coloring(&d, t - 1), None);
        }
    }

    #[test]
    fn negative_coordinates_reduce_correctly() {
        let lc = LinearColoring { t: 3, weights: (1, 1) };
        assert_eq!(lc.color(LatticeVector::new(-1, 0)), 2);
        assert_eq!(lc.color(LatticeVector::new(-4, -4)), 1);
    }
}
