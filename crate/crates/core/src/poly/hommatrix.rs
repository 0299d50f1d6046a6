use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hompoly::HomPoly;
use super::rational::Rational;
use super::ratmatrix::RatMatrix;
use super::unipoly::UniPoly;
use super::{combinations, rat};
use crate::error::{Error, Result};

/// Seed used by [`HomPolyMatrix::generic_rank`] when the caller does not supply one.
pub const DEFAULT_RANK_SEED: u64 = 0x5eed_0f_4a11;

const RANK_POINT_RANGE: i64 = 10_000;

/// Row-major matrix of homogeneous polynomials in `(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<HomPoly>,
}

impl HomPolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<HomPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(HomPolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<HomPoly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(HomPolyMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Rows given as coefficient lists (`s^d, ..., t^d`) per entry.
    pub fn from_i64(rows: &[&[&[i64]]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| HomPoly::from_i64(c)).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    /// Embeds a constant matrix with every entry of degree 0.
    pub fn from_constant(m: &RatMatrix) -> Self {
        let entries = m
            .to_rows()
            .into_iter()
            .flatten()
            .map(HomPoly::constant)
            .collect();
        HomPolyMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    /// The pencil `s*K + t*L`, every entry of degree 1.
    pub fn pencil(k: &RatMatrix, l: &RatMatrix) -> Self {
        assert_eq!((k.rows(), k.cols()), (l.rows(), l.cols()));
        let entries = (0..k.rows())
            .flat_map(|i| (0..k.cols()).map(move |j| (i, j)))
            .map(|(i, j)| HomPoly::from_coeffs(vec![k.get(i, j).clone(), l.get(i, j).clone()]))
            .collect();
        HomPolyMatrix {
            rows: k.rows(),
            cols: k.cols(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &HomPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: HomPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[HomPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<HomPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(HomPoly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        HomPolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let entries = (0..self.rows)
            .flat_map(|i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        HomPolyMatrix {
            rows: self.rows,
            cols: cols.len(),
            entries,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| self.row(i).iter().cloned())
            .collect();
        HomPolyMatrix {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn hstack(&self, other: &HomPolyMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        for i in 0..self.rows {
            entries.extend(self.row(i).iter().cloned());
            entries.extend(other.row(i).iter().cloned());
        }
        HomPolyMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            entries,
        }
    }

    pub fn vstack(&self, other: &HomPolyMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        HomPolyMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Per-row degree when every entry of each row carries the same degree label.
    pub fn uniform_row_degrees(&self) -> Option<Vec<usize>> {
        (0..self.rows)
            .map(|i| {
                let d = self.row(i).first().map_or(0, HomPoly::degree);
                self.row(i).iter().all(|e| e.degree() == d).then_some(d)
            })
            .collect()
    }

    /// Checks that `deg(i, j) = r_i + c_j` for some integer shifts, which is what
    /// makes every minor homogeneous.
    pub fn has_consistent_degrees(&self) -> bool {
        if self.rows == 0 || self.cols == 0 {
            return true;
        }
        let d = |i: usize, j: usize| self.get(i, j).degree() as i64;
        (0..self.rows).all(|i| (0..self.cols).all(|j| d(i, j) - d(i, 0) == d(0, j) - d(0, 0)))
    }

    pub fn eval(&self, s0: &Rational, t0: &Rational) -> RatMatrix {
        RatMatrix::from_vec(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e.eval(s0, t0)).collect(),
        )
    }

    /// `self * m` for a constant matrix `m`; requires uniform row degrees.
    pub fn mul_constant_right(&self, m: &RatMatrix) -> Self {
        assert_eq!(self.cols, m.rows(), "product shape mismatch");
        let mut entries = Vec::with_capacity(self.rows * m.cols());
        for i in 0..self.rows {
            let d = self.row(i).first().map_or(0, HomPoly::degree);
            for j in 0..m.cols() {
                let mut acc = HomPoly::zero(d);
                for k in 0..self.cols {
                    let c = m.get(k, j);
                    if !c.is_zero() && !self.get(i, k).is_zero() {
                        acc = &acc + &self.get(i, k).scale(c);
                    }
                }
                entries.push(acc);
            }
        }
        HomPolyMatrix {
            rows: self.rows,
            cols: m.cols(),
            entries,
        }
    }

    /// `m * self` for a constant matrix `m`; requires uniform column degrees.
    pub fn mul_constant_left(&self, m: &RatMatrix) -> Self {
        self.transpose()
            .mul_constant_right(&m.transpose())
            .transpose()
    }

    /// Polynomial matrix product. Zero entries are skipped so their labels do not matter.
    pub fn mul(&self, other: &HomPolyMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: Option<HomPoly> = None;
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let term = a * b;
                    acc = Some(match acc {
                        Some(x) if x.degree() == term.degree() => &x + &term,
                        Some(_) => {
                            return Err(Error::NotHomogeneous {
                                row: i,
                                col: j,
                                expected: term.degree(),
                            })
                        }
                        None => term,
                    });
                }
                let d = self.get(i, 0).degree() + other.get(0, j).degree();
                entries.push(acc.unwrap_or_else(|| HomPoly::zero(d)));
            }
        }
        Ok(HomPolyMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    fn expected_det_degree(&self) -> usize {
        (0..self.rows).map(|i| self.get(i, i).degree()).sum()
    }

    fn check_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.has_consistent_degrees() {
            return Err(Error::NotHomogeneous {
                row: 0,
                col: 0,
                expected: self.get(0, 0).degree(),
            });
        }
        Ok(())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<HomPoly> {
        self.check_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(HomPoly::one());
        }
        let expected = self.expected_det_degree();
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = HomPoly::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(HomPoly::zero(expected));
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -&det } else { det })
    }

    /// Exact determinant by cofactor expansion along the first row.
    pub fn determinant_laplace(&self) -> Result<HomPoly> {
        self.check_square()?;
        Ok(laplace(&self.to_rows(), self.expected_det_degree()))
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<HomPoly> {
        self.select_rows(rows).select_columns(cols).determinant()
    }

    /// All `k x k` minors on the first `k` rows, column subsets in lexicographic order.
    pub fn maximal_minors(&self, k: usize) -> Result<Vec<HomPoly>> {
        if k > self.rows.min(self.cols) {
            return Err(Error::BadSize(format!(
                "minor size {k} exceeds matrix size {}x{}",
                self.rows, self.cols
            )));
        }
        let rows: Vec<usize> = (0..k).collect();
        combinations(self.cols, k)
            .iter()
            .map(|cols| self.minor(&rows, cols))
            .collect()
    }

    pub fn rank_at_point(&self, s0: &Rational, t0: &Rational) -> Result<usize> {
        if s0.is_zero() && t0.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(self.eval(s0, t0).rank())
    }

    /// Rank over the field of rational functions.
    pub fn generic_rank(&self) -> usize {
        self.generic_rank_seeded(DEFAULT_RANK_SEED)
    }

    /// Evaluation at a random integer point is a lower bound on the generic rank, so
    /// a full evaluated rank is returned directly; anything else is settled by exact
    /// fraction-free elimination.
    pub fn generic_rank_seeded(&self, seed: u64) -> usize {
        let full = self.rows.min(self.cols);
        if full == 0 {
            return 0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s0 = rat(rng.gen_range(-RANK_POINT_RANGE..=RANK_POINT_RANGE));
        let t0 = rat(rng.gen_range(-RANK_POINT_RANGE..=RANK_POINT_RANGE));
        if !(s0.is_zero() && t0.is_zero()) && self.eval(&s0, &t0).rank() == full {
            return full;
        }
        self.exact_rank()
    }

    /// Fraction-free elimination over `Q[s]` on the chart `t = 1`.
    pub fn exact_rank(&self) -> usize {
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().map(HomPoly::dehomogenize).collect())
            .collect();
        bareiss_rank(rows)
    }
}

fn laplace(a: &[Vec<HomPoly>], degree: usize) -> HomPoly {
    let n = a.len();
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = HomPoly::zero(degree);
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<HomPoly>> = a[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let sub_degree = degree - a[0][j].degree();
        let term = &a[0][j] * &laplace(&sub, sub_degree);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Rank of a polynomial matrix by Bareiss elimination with full pivoting.
pub(crate) fn bareiss_rank(mut a: Vec<Vec<UniPoly>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = UniPoly::one();
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let pivot = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
        rank += 1;
    }
    rank
}

impl fmt::Display for HomPolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Monic gcd of homogeneous polynomials. The `t`-power is tracked separately
/// because the chart `t = 1` cannot see it.
pub fn poly_gcd_list(fs: &[HomPoly]) -> Result<HomPoly> {
    let nonzero: Vec<&HomPoly> = fs.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }
    let tpow = nonzero
        .iter()
        .filter_map(|f| f.t_valuation())
        .min()
        .unwrap_or(0);
    let g = nonzero
        .iter()
        .fold(UniPoly::zero(), |g, f| g.gcd(&f.dehomogenize()));
    let gdeg = g.degree().unwrap_or(0);
    let core = HomPoly::homogenize(&g, gdeg).expect("degree fits");
    let t = HomPoly::t().pow(tpow);
    Ok((&core * &t).normalized())
}
