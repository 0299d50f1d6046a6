//! Seeded random generators for systems used by the property suites.

use rand::Rng;

use crate::arsys::ARSystem;
use crate::poly::{rat, HomPoly, HomPolyMatrix, RatMatrix, Rational};
use crate::realization::{FeedbackTransform, StateSpace};

pub fn random_rational<R: Rng>(rng: &mut R, range: i64) -> Rational {
    rat(rng.gen_range(-range..=range))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, range: i64) -> RatMatrix {
    let data = (0..rows * cols)
        .map(|_| random_rational(rng, range))
        .collect();
    RatMatrix::from_vec(rows, cols, data)
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, range: i64) -> RatMatrix {
    loop {
        let m = random_matrix(rng, n, n, range);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_hompoly<R: Rng>(rng: &mut R, degree: usize, range: i64) -> HomPoly {
    HomPoly::from_coeffs((0..=degree).map(|_| random_rational(rng, range)).collect())
}

/// A valid AR system with the given row degrees; redraws until full generic rank.
pub fn random_ar<R: Rng>(rng: &mut R, m: usize, row_degrees: &[usize], range: i64) -> ARSystem {
    let p = row_degrees.len();
    loop {
        let rows = row_degrees
            .iter()
            .map(|&nu| (0..m + p).map(|_| random_hompoly(rng, nu, range)).collect())
            .collect();
        let matrix = HomPolyMatrix::from_rows(rows).expect("rectangular");
        if let Ok(ar) = ARSystem::validate(matrix, row_degrees.to_vec(), m, p) {
            return ar;
        }
    }
}

/// Row degrees as even as possible with the given sum.
pub fn balanced_degrees(n: usize, p: usize) -> Vec<usize> {
    (0..p).map(|i| n / p + usize::from(i < n % p)).collect()
}

pub fn random_state_space<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    p: usize,
    proper: bool,
    range: i64,
) -> StateSpace {
    let d = if proper {
        random_matrix(rng, p, m, range)
    } else {
        RatMatrix::zeros(p, m)
    };
    StateSpace::new(
        random_matrix(rng, n, n, range),
        random_matrix(rng, n, m, range),
        random_matrix(rng, p, n, range),
        d,
    )
    .expect("consistent shapes")
}

/// Random state-space system that is both controllable and observable.
pub fn random_minimal_state_space<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    p: usize,
    proper: bool,
    range: i64,
) -> StateSpace {
    loop {
        let ss = random_state_space(rng, n, m, p, proper, range);
        if ss.is_controllable() && ss.is_observable() {
            return ss;
        }
    }
}

/// Random element of the full feedback group with `G = 0`.
pub fn random_feedback<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    p: usize,
    range: i64,
) -> FeedbackTransform {
    FeedbackTransform {
        s: random_invertible(rng, n, range),
        t1: random_invertible(rng, m, range),
        t2: random_invertible(rng, p, range),
        f: random_matrix(rng, m, p, range),
        g: RatMatrix::zeros(p, m),
    }
}
