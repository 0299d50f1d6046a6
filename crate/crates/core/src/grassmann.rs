//! Points of a Grassmannian in canonical form.

use num_traits::{One, Zero};

use crate::poly::{combinations, RatMatrix, Rational};

/// A linear subspace of `Q^ambient`, stored as its reduced row echelon basis.
///
/// Two points are equal exactly when their canonical bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannPoint {
    ambient_dim: usize,
    basis: RatMatrix,
    pivots: Vec<usize>,
}

impl GrassmannPoint {
    /// The span of the rows of `spanning`.
    pub fn from_spanning(spanning: &RatMatrix) -> Self {
        let (basis, pivots) = spanning.rref();
        GrassmannPoint {
            ambient_dim: spanning.cols(),
            basis,
            pivots,
        }
    }

    pub fn subspace_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn canonical_basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let extended = self
            .basis
            .vstack(&RatMatrix::from_vec(1, v.len(), v.to_vec()));
        extended.rank() == self.subspace_dim()
    }

    /// Plücker coordinate for a sorted column subset of size `subspace_dim`.
    pub fn pluecker_coordinate(&self, subset: &[usize]) -> Rational {
        self.basis
            .select_columns(subset)
            .determinant()
            .expect("square by construction")
    }

    /// All Plücker coordinates in lexicographic subset order, scaled so the first
    /// nonzero coordinate is 1. The length is `C(ambient, dim)`.
    pub fn pluecker(&self) -> Vec<Rational> {
        let k = self.subspace_dim();
        let coords: Vec<Rational> = combinations(self.ambient_dim, k)
            .iter()
            .map(|s| self.pluecker_coordinate(s))
            .collect();
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(Rational::one);
        coords.into_iter().map(|c| c / &lead).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn canonical_form_ignores_spanning_set() {
        let a = GrassmannPoint::from_spanning(&RatMatrix::from_i64(&[&[1, 0, 1], &[1, 0, -1]]));
        let b = GrassmannPoint::from_spanning(&RatMatrix::from_i64(&[&[0, 0, 2], &[3, 0, 0]]));
        assert_eq!(a, b);
        assert_eq!(
            a.canonical_basis(),
            &RatMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1]])
        );
        assert_eq!(a.pluecker(), vec![rat(0), rat(1), rat(0)]);
        assert!(a.contains(&[rat(5), rat(0), rat(-1)]));
        assert!(!a.contains(&[rat(0), rat(1), rat(0)]));
    }
}
