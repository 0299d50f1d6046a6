//! Homogeneous autoregressive systems.
//!
//! An [`ARSystem`] is a full-row-rank `p x (m+p)` matrix `P(s, t)` whose row `i`
//! is homogeneous of degree `nu_i`; its McMillan degree is `n = sum(nu_i)`. The
//! stored matrix is one representative of its unimodular equivalence class; the
//! row spaces returned by [`ARSystem::rho_embedding`] serve as the computable
//! invariant of the class.

mod syzygy;

use num_traits::Zero;

pub use syzygy::{graded_span, minimal_syzygies, vector_coeffs, SyzygyBasis};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannPoint;
use crate::poly::{poly_gcd_list, rat, HomPoly, HomPolyMatrix, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ARSystem {
    matrix: HomPolyMatrix,
    row_degrees: Vec<usize>,
    inputs: usize,
    outputs: usize,
}

impl ARSystem {
    /// Checks shape, per-row homogeneity and full generic row rank. Zero entries are
    /// relabelled to their row degree.
    pub fn validate(
        matrix: HomPolyMatrix,
        row_degrees: Vec<usize>,
        m: usize,
        p: usize,
    ) -> Result<Self> {
        if p == 0 || matrix.rows() != p || matrix.cols() != m + p || row_degrees.len() != p {
            return Err(Error::ShapeMismatch(format!(
                "expected a {p}x{} matrix with {p} row degrees, got {}x{} with {}",
                m + p,
                matrix.rows(),
                matrix.cols(),
                row_degrees.len()
            )));
        }
        let mut matrix = matrix;
        for (i, &nu) in row_degrees.iter().enumerate() {
            for j in 0..m + p {
                let e = matrix.get(i, j);
                if e.is_zero() {
                    if e.degree() != nu {
                        matrix.set(i, j, HomPoly::zero(nu));
                    }
                } else if e.degree() != nu {
                    return Err(Error::NotHomogeneous {
                        row: i,
                        col: j,
                        expected: nu,
                    });
                }
            }
        }
        let rank = matrix.generic_rank();
        if rank != p {
            return Err(Error::RankDeficient { rank, expected: p });
        }
        Ok(ARSystem {
            matrix,
            row_degrees,
            inputs: m,
            outputs: p,
        })
    }

    /// Validates with each row degree read off the row's entries.
    pub fn from_matrix(matrix: HomPolyMatrix, m: usize) -> Result<Self> {
        let row_degrees = (0..matrix.rows())
            .map(|i| {
                matrix
                    .row(i)
                    .iter()
                    .find(|e| !e.is_zero())
                    .map_or(0, HomPoly::degree)
            })
            .collect();
        let p = matrix.rows();
        Self::validate(matrix, row_degrees, m, p)
    }

    pub fn matrix(&self) -> &HomPolyMatrix {
        &self.matrix
    }

    pub fn row_degrees(&self) -> &[usize] {
        &self.row_degrees
    }

    /// `m`
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// `p`
    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn mcmillan_degree(&self) -> usize {
        self.row_degrees.iter().sum()
    }

    pub fn maximal_minors(&self) -> Vec<HomPoly> {
        self.matrix
            .maximal_minors(self.outputs)
            .expect("p <= m + p")
    }

    /// Observable when the maximal minors have no common zero on the projective line.
    pub fn is_observable(&self) -> bool {
        poly_gcd_list(&self.maximal_minors()).is_ok_and(|g| g.degree() == 0)
    }

    /// `P -> P T^{-1}`.
    pub fn act(&self, t: &RatMatrix) -> Result<ARSystem> {
        let n = self.inputs + self.outputs;
        if t.rows() != n || t.cols() != n {
            return Err(Error::ShapeMismatch(format!("transform must be {n}x{n}")));
        }
        let inv = t.inverse()?;
        Ok(ARSystem {
            matrix: self.matrix.mul_constant_right(&inv),
            row_degrees: self.row_degrees.clone(),
            inputs: self.inputs,
            outputs: self.outputs,
        })
    }

    /// Minimal generators of the right kernel module of `P`.
    pub fn compute_q(&self) -> Result<SyzygyBasis> {
        minimal_syzygies(&self.matrix, &self.row_degrees, self.mcmillan_degree())
    }

    /// The left kernel of `Q^T`, i.e. the double syzygy of `P`.
    pub fn observable_part(&self) -> Result<ARSystem> {
        let q = self.compute_q()?;
        let back = minimal_syzygies(&q.q, &q.row_degrees, self.mcmillan_degree())?;
        ARSystem::validate(back.q, back.row_degrees, self.inputs, self.outputs)
    }

    /// Row space of `{s^a t^b * row_i(P) : a + b = ell - nu_i}` in
    /// `Q^((m+p)(ell+1))`; entry `k` with monomial `s^(ell-j) t^j` is coordinate
    /// `k*(ell+1) + j`.
    pub fn rho_embedding(&self, ell: usize) -> Result<GrassmannPoint> {
        let n = self.mcmillan_degree();
        if ell < n {
            return Err(Error::EllTooSmall { ell, n });
        }
        let cols = self.inputs + self.outputs;
        let span = graded_span(&self.matrix, &self.row_degrees, ell, cols);
        Ok(GrassmannPoint::from_spanning(&span))
    }

    /// Verifies `U * self = other` for a unimodular witness `U` whose entry `(i, j)`
    /// is homogeneous of degree `nu_i - nu_j` (zero when negative).
    pub fn is_equivalent_via(&self, other: &ARSystem, u: &HomPolyMatrix) -> Result<bool> {
        let p = self.outputs;
        if other.outputs != p || other.inputs != self.inputs || u.rows() != p || u.cols() != p {
            return Err(Error::ShapeMismatch(
                "witness and systems disagree in size".into(),
            ));
        }
        if self.row_degrees != other.row_degrees {
            return Ok(false);
        }
        let nu = &self.row_degrees;
        for i in 0..p {
            for j in 0..p {
                let e = u.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if nu[i] < nu[j] || e.degree() != nu[i] - nu[j] {
                    return Ok(false);
                }
            }
        }
        // the degree pattern forces det U to be a constant
        if u.eval(&rat(1), &rat(1)).determinant()?.is_zero() {
            return Ok(false);
        }
        let product = u.mul(&self.matrix)?;
        Ok((0..p).all(|i| {
            (0..self.inputs + p).all(|j| {
                let (a, b) = (product.get(i, j), other.matrix.get(i, j));
                if a.is_zero() || b.is_zero() {
                    a.is_zero() && b.is_zero()
                } else {
                    a == b
                }
            })
        }))
    }
}
