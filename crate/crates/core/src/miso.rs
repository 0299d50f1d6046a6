//! Multi-input single-output systems: the coefficient span as a complete invariant.

use num_traits::Zero;

use crate::arsys::ARSystem;
use crate::error::{Error, Result};
use crate::grassmann::GrassmannPoint;
use crate::poly::{RatMatrix, Rational};

/// Span of the coefficient vectors (order `s^0 .. s^n`) of the dehomogenized entries.
pub fn miso_invariant(ar: &ARSystem) -> Result<GrassmannPoint> {
    if ar.outputs() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected one output, got {}",
            ar.outputs()
        )));
    }
    let n = ar.mcmillan_degree();
    let rows: Vec<Vec<Rational>> = ar
        .matrix()
        .row(0)
        .iter()
        .map(|e| {
            let f = e.dehomogenize();
            (0..=n)
                .map(|k| f.coeffs().get(k).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    let point = GrassmannPoint::from_spanning(&RatMatrix::from_rows(rows)?);
    if point.subspace_dim() != ar.inputs() + 1 {
        return Err(Error::DegenerateSystem);
    }
    Ok(point)
}

pub fn miso_equivalent(a: &ARSystem, b: &ARSystem) -> Result<bool> {
    if (a.inputs(), a.mcmillan_degree()) != (b.inputs(), b.mcmillan_degree()) {
        return Err(Error::DimensionMismatch(format!(
            "(m, n) = ({}, {}) vs ({}, {})",
            a.inputs(),
            a.mcmillan_degree(),
            b.inputs(),
            b.mcmillan_degree()
        )));
    }
    Ok(miso_invariant(a)? == miso_invariant(b)?)
}

/// `N = mn + m + n`, one less than the number of coefficients of a `1 x (m+1)`
/// vector of degree `n` forms.
pub fn ambient_dimension_n(m: usize, n: usize) -> usize {
    m * n + m + n
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::poly::{combinations, rat, HomPolyMatrix};
    use crate::sample;

    fn ar(entries: &[&[i64]]) -> ARSystem {
        ARSystem::from_matrix(HomPolyMatrix::from_i64(&[entries]), entries.len() - 1).unwrap()
    }

    fn pluecker_relations_hold(point: &GrassmannPoint) -> bool {
        let coords = point.pluecker();
        let subsets = combinations(point.ambient_dim(), 2);
        let p =
            |i: usize, j: usize| coords[subsets.iter().position(|s| s == &[i, j]).unwrap()].clone();
        combinations(point.ambient_dim(), 4).iter().all(|q| {
            (p(q[0], q[1]) * p(q[2], q[3]) - p(q[0], q[2]) * p(q[1], q[3])
                + p(q[0], q[3]) * p(q[1], q[2]))
            .is_zero()
        })
    }

    #[test]
    fn invariant_examples() {
        let a = ar(&[&[1, 0, 0], &[0, 0, 1]]);
        let inv = miso_invariant(&a).unwrap();
        assert_eq!(
            inv.canonical_basis(),
            &RatMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1]])
        );
        assert_eq!(inv.pluecker(), vec![rat(0), rat(1), rat(0)]);

        let full = miso_invariant(&ar(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(full.canonical_basis(), &RatMatrix::identity(2));

        let b = ar(&[&[1, 0, 1], &[1, 0, -1]]);
        assert_eq!(miso_invariant(&b).unwrap(), inv);
    }

    #[test]
    fn equivalence_examples() {
        let a = ar(&[&[1, 0, 0], &[0, 0, 1]]);
        assert!(miso_equivalent(&a, &ar(&[&[1, 0, 1], &[1, 0, -1]])).unwrap());
        assert!(!miso_equivalent(&a, &ar(&[&[1, 0, 0], &[0, 1, 0]])).unwrap());
        assert!(matches!(
            miso_equivalent(&a, &ar(&[&[1, 0], &[0, 1]])),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            miso_invariant(&ar(&[&[1, 0], &[2, 0]])),
            Err(Error::DegenerateSystem)
        ));
    }

    #[test]
    fn ambient_dimension() {
        assert_eq!(ambient_dimension_n(1, 1), 3);
        assert_eq!(ambient_dimension_n(2, 3), 11);
        for m in 1..5 {
            for n in 1..5 {
                assert_eq!((m + 1) * (n + 1) - 1, ambient_dimension_n(m, n));
            }
        }
    }

    #[test]
    fn invariance_under_many_transforms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3 {
            let sys = sample::random_ar(&mut rng, 2, &[3], 5);
            let Ok(inv) = miso_invariant(&sys) else {
                continue;
            };
            for _ in 0..100 {
                let t = sample::random_invertible(&mut rng, 3, 6);
                assert_eq!(miso_invariant(&sys.act(&t).unwrap()).unwrap(), inv);
            }
        }
    }

    proptest! {
        #[test]
        fn pluecker_relations(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sys = sample::random_ar(&mut rng, 1, &[3], 4);
            if let Ok(point) = miso_invariant(&sys) {
                prop_assert!(pluecker_relations_hold(&point));
            }
        }

        #[test]
        fn separation(seed in any::<u64>(), m in 1usize..3, n in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = sample::random_ar(&mut rng, m, &[n], 3);
            let b = sample::random_ar(&mut rng, m, &[n], 3);
            if let (Ok(ia), Ok(ib)) = (miso_invariant(&a), miso_invariant(&b)) {
                let stacked = ia.canonical_basis().vstack(ib.canonical_basis());
                let same_span = stacked.rank() == m + 1;
                prop_assert_eq!(same_span, ia == ib);
            }
        }

        #[test]
        fn equivalence_relation(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = sample::random_ar(&mut rng, 1, &[2], 3);
            prop_assume!(miso_invariant(&a).is_ok());
            let b = a.act(&sample::random_invertible(&mut rng, 2, 4)).unwrap();
            let c = b.act(&sample::random_invertible(&mut rng, 2, 4)).unwrap();
            let d = sample::random_ar(&mut rng, 1, &[2], 3);
            prop_assert!(miso_equivalent(&a, &a).unwrap());
            prop_assert!(miso_equivalent(&a, &b).unwrap() && miso_equivalent(&b, &a).unwrap());
            prop_assert!(miso_equivalent(&b, &c).unwrap() && miso_equivalent(&a, &c).unwrap());
            if let Ok(ad) = miso_equivalent(&a, &d) {
                prop_assert_eq!(ad, miso_equivalent(&d, &a).unwrap());
            }
        }
    }
}
