use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{HomPoly, HomPolyMatrix, RatMatrix, Rational};

/// Minimal homogeneous generators of the right kernel `{v : M v^T = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBasis {
    pub q: HomPolyMatrix,
    pub row_degrees: Vec<usize>,
}

impl SyzygyBasis {
    pub fn len(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row_degrees.is_empty()
    }

    /// Whether the homogeneous vector `v` (all entries of one degree) lies in the
    /// module generated by these rows.
    pub fn module_contains(&self, v: &[HomPoly]) -> bool {
        let d = v.first().map_or(0, HomPoly::degree);
        let target = vector_coeffs(v, d);
        if target.iter().all(Zero::is_zero) {
            return true;
        }
        let span = graded_span(&self.q, &self.row_degrees, d, v.len());
        if span.rows() == 0 {
            return false;
        }
        let rank = span.rank();
        span.vstack(&RatMatrix::from_vec(1, target.len(), target))
            .rank()
            == rank
    }

    /// Mutual containment of two generated modules.
    pub fn same_module(&self, other: &SyzygyBasis) -> bool {
        other.q.to_rows().iter().all(|r| self.module_contains(r))
            && self.q.to_rows().iter().all(|r| other.module_contains(r))
    }
}

/// Coefficients of a homogeneous vector of degree `d`, entry-major: entry `k`,
/// monomial `s^(d-j) t^j` sits at index `k*(d+1)+j`. Zero entries may carry any label.
pub fn vector_coeffs(v: &[HomPoly], d: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); v.len() * (d + 1)];
    for (k, e) in v.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        assert_eq!(e.degree(), d, "vector entries must share one degree");
        for (j, c) in e.coeffs().iter().enumerate() {
            out[k * (d + 1) + j] = c.clone();
        }
    }
    out
}

fn vector_from_coeffs(coeffs: &[Rational], len: usize, d: usize) -> Vec<HomPoly> {
    (0..len)
        .map(|k| HomPoly::from_coeffs(coeffs[k * (d + 1)..(k + 1) * (d + 1)].to_vec()))
        .collect()
}

/// Degree-`d` slice of the module generated by `rows`: all `s^a t^b * row`.
pub fn graded_span(rows: &HomPolyMatrix, degrees: &[usize], d: usize, len: usize) -> RatMatrix {
    let mut out = Vec::new();
    for (i, &mu) in degrees.iter().enumerate() {
        if mu > d {
            continue;
        }
        let shift = d - mu;
        for b in 0..=shift {
            let mono = HomPoly::monomial(Rational::one(), shift - b, b);
            let shifted: Vec<HomPoly> = rows.row(i).iter().map(|e| &mono * e).collect();
            out.push(vector_coeffs(&shifted, d));
        }
    }
    if out.is_empty() {
        return RatMatrix::zeros(0, len * (d + 1));
    }
    RatMatrix::from_rows(out).expect("uniform lengths")
}

/// Linear map sending the coefficients of a degree-`d` vector `v` to those of `M v^T`.
fn kernel_system(m: &HomPolyMatrix, row_degrees: &[usize], d: usize) -> RatMatrix {
    let cols = m.cols();
    let eq_count: usize = row_degrees.iter().map(|nu| nu + d + 1).sum();
    let mut a = RatMatrix::zeros(eq_count, cols * (d + 1));
    let mut base = 0;
    for (i, &nu) in row_degrees.iter().enumerate() {
        for k in 0..cols {
            let entry = m.get(i, k);
            if entry.is_zero() {
                continue;
            }
            for (e, c) in entry.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for j in 0..=d {
                    // s^(nu-e) t^e * s^(d-j) t^j contributes to t-power e+j
                    a.set(base + e + j, k * (d + 1) + j, c.clone());
                }
            }
        }
        base += nu + d + 1;
    }
    a
}

fn normalize_first_nonzero(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
        let inv = Rational::one() / lead;
        for c in v.iter_mut() {
            *c *= &inv;
        }
    }
}

fn cmp_coeffs(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Minimal homogeneous generating set of the right kernel of `m`, whose row `i` is
/// homogeneous of degree `row_degrees[i]`.
///
/// Generators are found degree by degree: at degree `d` the kernel slice is solved
/// exactly and only vectors outside the span of the lower-degree generators times
/// monomials are kept. The search stops once `cols - rank` generators exist, which
/// is the rank of the (free) kernel module; failing to get there by `max_degree`
/// is reported as `BudgetExceeded`.
pub fn minimal_syzygies(
    m: &HomPolyMatrix,
    row_degrees: &[usize],
    max_degree: usize,
) -> Result<SyzygyBasis> {
    let cols = m.cols();
    let target = cols - m.generic_rank();
    let mut gens: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut d = 0;
    while gens.len() < target {
        if d > max_degree {
            return Err(Error::BudgetExceeded(max_degree));
        }
        let kernel = kernel_system(m, row_degrees, d).nullspace().rref().0;
        if kernel.rows() > 0 {
            let current = HomPolyMatrix::from_rows(
                gens.iter()
                    .map(|(mu, c)| vector_from_coeffs(c, cols, *mu))
                    .collect(),
            )?;
            let degrees: Vec<usize> = gens.iter().map(|(mu, _)| *mu).collect();
            let mut span = if gens.is_empty() {
                RatMatrix::zeros(0, cols * (d + 1))
            } else {
                graded_span(&current, &degrees, d, cols)
            };
            let mut rank = span.rank();
            let mut fresh = Vec::new();
            for i in 0..kernel.rows() {
                let cand = RatMatrix::from_vec(1, cols * (d + 1), kernel.row(i).to_vec());
                let extended = span.vstack(&cand);
                let r = extended.rank();
                if r > rank {
                    span = extended;
                    rank = r;
                    let mut c = kernel.row(i).to_vec();
                    normalize_first_nonzero(&mut c);
                    fresh.push(c);
                }
            }
            fresh.sort_by(|a, b| cmp_coeffs(a, b));
            gens.extend(fresh.into_iter().map(|c| (d, c)));
        }
        d += 1;
    }
    let row_degrees_out: Vec<usize> = gens.iter().map(|(mu, _)| *mu).collect();
    let rows: Vec<Vec<HomPoly>> = gens
        .iter()
        .map(|(mu, c)| vector_from_coeffs(c, cols, *mu))
        .collect();
    let q = if rows.is_empty() {
        HomPolyMatrix::new(0, cols, Vec::new())?
    } else {
        HomPolyMatrix::from_rows(rows)?
    };
    Ok(SyzygyBasis {
        q,
        row_degrees: row_degrees_out,
    })
}
