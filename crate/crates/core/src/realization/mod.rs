//! State-space systems, the feedback group, and left coprime factorizations.
//!
//! External variables are ordered `w = (u; y)` throughout. A factorization
//! `G = D^{-1} N` corresponds to the behaviour `R w = 0` with `R = (-N  D)`.

use num_traits::{One, Zero};

use crate::arsys::{minimal_syzygies, ARSystem};
use crate::error::{Error, Result};
use crate::poly::{poly_gcd_list, HomPoly, HomPolyMatrix, RatMatrix, Rational, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub a: RatMatrix,
    pub b: RatMatrix,
    pub c: RatMatrix,
    pub d: RatMatrix,
}

impl StateSpace {
    pub fn new(a: RatMatrix, b: RatMatrix, c: RatMatrix, d: RatMatrix) -> Result<Self> {
        let n = a.rows();
        let (m, p) = (b.cols(), c.rows());
        if a.cols() != n || b.rows() != n || c.cols() != n || d.rows() != p || d.cols() != m {
            return Err(Error::ShapeMismatch(format!(
                "A {}x{}, B {}x{}, C {}x{}, D {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols(),
                d.rows(),
                d.cols()
            )));
        }
        Ok(StateSpace { a, b, c, d })
    }

    pub fn strictly_proper(a: RatMatrix, b: RatMatrix, c: RatMatrix) -> Result<Self> {
        let d = RatMatrix::zeros(c.rows(), b.cols());
        Self::new(a, b, c, d)
    }

    pub fn states(&self) -> usize {
        self.a.rows()
    }

    pub fn inputs(&self) -> usize {
        self.b.cols()
    }

    pub fn outputs(&self) -> usize {
        self.c.rows()
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.d.is_zero()
    }

    /// `[C; CA; ...; CA^(n-1)]`
    pub fn observability_matrix(&self) -> RatMatrix {
        let mut out = self.c.clone();
        let mut block = self.c.clone();
        for _ in 1..self.states() {
            block = &block * &self.a;
            out = out.vstack(&block);
        }
        out
    }

    /// `[B, AB, ..., A^(n-1)B]`
    pub fn controllability_matrix(&self) -> RatMatrix {
        let mut out = self.b.clone();
        let mut block = self.b.clone();
        for _ in 1..self.states() {
            block = &self.a * &block;
            out = out.hstack(&block);
        }
        out
    }

    pub fn is_observable(&self) -> bool {
        self.states() == 0 || self.observability_matrix().rank() == self.states()
    }

    pub fn is_controllable(&self) -> bool {
        self.states() == 0 || self.controllability_matrix().rank() == self.states()
    }

    /// Restriction to the observable quotient: the rows `W` of the reduced
    /// observability matrix give coordinates `x_o = W x`.
    pub fn observable_reduction(&self) -> StateSpace {
        let (w, pivots) = self.observability_matrix().rref();
        let a = (&w * &self.a).select_columns(&pivots);
        let b = &w * &self.b;
        let c = self.c.select_columns(&pivots);
        StateSpace {
            a,
            b,
            c,
            d: self.d.clone(),
        }
    }

    /// Characteristic polynomial `det(sI - A)` and the coefficient matrices of
    /// `adj(sI - A) = sum_k M_k s^(n-k)`, by the Faddeev-LeVerrier recursion.
    pub fn resolvent(&self) -> (UniPoly, Vec<RatMatrix>) {
        let n = self.states();
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut mats = Vec::with_capacity(n);
        let mut prev = RatMatrix::zeros(n, n);
        for k in 1..=n {
            let mk = (&self.a * &prev).add(&RatMatrix::identity(n).scale(&coeffs[n - k + 1]));
            let amk = &self.a * &mk;
            let trace: Rational = (0..n).map(|i| amk.get(i, i).clone()).sum();
            coeffs[n - k] = -trace / Rational::from_integer((k as i64).into());
            mats.push(mk.clone());
            prev = mk;
        }
        (UniPoly::new(coeffs), mats)
    }

    /// `(chi_A, C adj(sI-A) B + chi_A D)`: the transfer function with its
    /// denominator cleared.
    pub fn transfer_numerator(&self) -> (UniPoly, Vec<Vec<UniPoly>>) {
        let (chi, mats) = self.resolvent();
        let n = self.states();
        let (p, m) = (self.outputs(), self.inputs());
        let terms: Vec<RatMatrix> = mats.iter().map(|mk| &(&self.c * mk) * &self.b).collect();
        let out = (0..p)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut coeffs = vec![Rational::zero(); n + 1];
                        for (k, t) in terms.iter().enumerate() {
                            coeffs[n - k - 1] += t.get(i, j);
                        }
                        let adj = UniPoly::new(coeffs);
                        &adj + &chi.scale(self.d.get(i, j))
                    })
                    .collect()
            })
            .collect();
        (chi, out)
    }
}

/// Element of the full feedback group: `u -> u + F y`, then `x -> S x`,
/// `u -> T1 u`, `y -> T2 y`. `g` is the feed-forward block `y -> y + G u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeedbackTransform {
    pub s: RatMatrix,
    pub t1: RatMatrix,
    pub t2: RatMatrix,
    pub f: RatMatrix,
    pub g: RatMatrix,
}

impl FeedbackTransform {
    pub fn identity(n: usize, m: usize, p: usize) -> Self {
        FeedbackTransform {
            s: RatMatrix::identity(n),
            t1: RatMatrix::identity(m),
            t2: RatMatrix::identity(p),
            f: RatMatrix::zeros(m, p),
            g: RatMatrix::zeros(p, m),
        }
    }

    /// The element acting as `self` followed by `next`.
    pub fn then(&self, next: &FeedbackTransform) -> Result<FeedbackTransform> {
        let t1_inv = self.t1.inverse()?;
        Ok(FeedbackTransform {
            s: &next.s * &self.s,
            t1: &next.t1 * &self.t1,
            t2: &next.t2 * &self.t2,
            f: self.f.add(&(&(&t1_inv * &next.f) * &self.t2)),
            g: RatMatrix::zeros(self.g.rows(), self.g.cols()),
        })
    }

    /// The block matrix `[[T1, F], [G, T2]]` acting on `(u; y)`.
    pub fn block_matrix(&self) -> RatMatrix {
        self.t1.hstack(&self.f).vstack(&self.g.hstack(&self.t2))
    }

    /// The transformation of `(u; y)` induced by this group element on the
    /// trajectories of the closed loop produced by [`apply_full_feedback`]:
    /// `(u; y) -> [[T1, -T1 F], [0, T2]] (u; y)`.
    pub fn external_matrix(&self) -> Result<RatMatrix> {
        if !self.g.is_zero() {
            return Err(Error::ShapeMismatch(
                "feed-forward block must be zero for state feedback".into(),
            ));
        }
        let top_right = (&self.t1 * &self.f).scale(&-Rational::one());
        Ok(self.t1.hstack(&top_right).vstack(&self.g.hstack(&self.t2)))
    }
}

/// `(S(A + BFC)S^{-1}, S B T1^{-1}, T2 C S^{-1}, 0)`.
pub fn apply_full_feedback(ss: &StateSpace, g: &FeedbackTransform) -> Result<StateSpace> {
    if !ss.is_strictly_proper() {
        return Err(Error::NotStrictlyProper);
    }
    let (n, m, p) = (ss.states(), ss.inputs(), ss.outputs());
    if g.s.rows() != n || g.t1.rows() != m || g.t2.rows() != p || g.f.rows() != m || g.f.cols() != p
    {
        return Err(Error::ShapeMismatch(
            "feedback transform does not match the system".into(),
        ));
    }
    if !g.g.is_zero() {
        return Err(Error::ShapeMismatch(
            "feed-forward block must be zero for state feedback".into(),
        ));
    }
    let s_inv = g.s.inverse()?;
    let t1_inv = g.t1.inverse()?;
    g.t2.inverse()?;
    let closed = ss.a.add(&(&(&ss.b * &g.f) * &ss.c));
    let a = &(&g.s * &closed) * &s_inv;
    let b = &(&g.s * &ss.b) * &t1_inv;
    let c = &(&g.t2 * &ss.c) * &s_inv;
    StateSpace::strictly_proper(a, b, c)
}

/// Left matrix fraction `G = D^{-1} N` with polynomial `D` (`p x p`) and `N` (`p x m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFD {
    pub dmat: Vec<Vec<UniPoly>>,
    pub nmat: Vec<Vec<UniPoly>>,
    pub row_degrees: Vec<usize>,
}

impl MFD {
    pub fn new(
        dmat: Vec<Vec<UniPoly>>,
        nmat: Vec<Vec<UniPoly>>,
        row_degrees: Vec<usize>,
    ) -> Result<Self> {
        let p = dmat.len();
        let m = nmat.first().map_or(0, Vec::len);
        if nmat.len() != p
            || row_degrees.len() != p
            || dmat.iter().any(|r| r.len() != p)
            || nmat.iter().any(|r| r.len() != m)
        {
            return Err(Error::ShapeMismatch("D must be p x p and N p x m".into()));
        }
        let mfd = MFD {
            dmat,
            nmat,
            row_degrees,
        };
        mfd.homogeneous_rows()?;
        if mfd.det_d().is_zero() {
            return Err(Error::RankDeficient {
                rank: 0,
                expected: p,
            });
        }
        Ok(mfd)
    }

    /// Row degrees read from the entries.
    pub fn with_natural_degrees(dmat: Vec<Vec<UniPoly>>, nmat: Vec<Vec<UniPoly>>) -> Result<Self> {
        let degrees = dmat
            .iter()
            .zip(&nmat)
            .map(|(d, n)| {
                d.iter()
                    .chain(n)
                    .filter_map(UniPoly::degree)
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        Self::new(dmat, nmat, degrees)
    }

    pub fn outputs(&self) -> usize {
        self.dmat.len()
    }

    pub fn inputs(&self) -> usize {
        self.nmat.first().map_or(0, Vec::len)
    }

    pub fn mcmillan_degree(&self) -> usize {
        self.row_degrees.iter().sum()
    }

    /// `(D N)` with row `i` homogenized to degree `nu_i`.
    pub fn homogeneous_rows(&self) -> Result<HomPolyMatrix> {
        let rows = self
            .dmat
            .iter()
            .zip(&self.nmat)
            .zip(&self.row_degrees)
            .map(|((d, n), &nu)| {
                d.iter()
                    .chain(n)
                    .map(|f| HomPoly::homogenize(f, nu))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        HomPolyMatrix::from_rows(rows)
    }

    pub fn det_d(&self) -> UniPoly {
        let h = self.homogeneous_rows().expect("validated degrees");
        let cols: Vec<usize> = (0..self.outputs()).collect();
        h.select_columns(&cols)
            .determinant()
            .expect("square")
            .dehomogenize()
    }

    /// No common zero of the maximal minors of `(D N)` in the finite plane.
    pub fn is_left_coprime(&self) -> bool {
        let h = self.homogeneous_rows().expect("validated degrees");
        let minors: Vec<HomPoly> = h
            .maximal_minors(self.outputs())
            .expect("p <= m + p")
            .iter()
            .map(|f| {
                HomPoly::homogenize(&f.dehomogenize(), f.dehomogenize().degree().unwrap_or(0))
                    .unwrap()
            })
            .collect();
        poly_gcd_list(&minors).is_ok_and(|g| g.degree() == 0)
    }

    /// `D (C adj(sI-A) B + chi_A D_ss) = N chi_A`.
    pub fn realizes(&self, ss: &StateSpace) -> bool {
        let (chi, numer) = ss.transfer_numerator();
        let (p, m) = (self.outputs(), self.inputs());
        if ss.outputs() != p || ss.inputs() != m {
            return false;
        }
        (0..p).all(|i| {
            (0..m).all(|j| {
                let lhs = (0..p).fold(UniPoly::zero(), |acc, k| {
                    &acc + &(&self.dmat[i][k] * &numer[k][j])
                });
                lhs == &self.nmat[i][j] * &chi
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Reduce unobservable systems to their observable part.
    #[default]
    Reduce,
    /// Reject unobservable systems.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftFactorization {
    pub mfd: MFD,
    /// Whether the system was first reduced to its observable part.
    pub reduced: bool,
}

pub fn left_coprime_mfd(ss: &StateSpace) -> Result<MFD> {
    left_coprime_mfd_with(ss, Reduction::Reduce).map(|f| f.mfd)
}

/// Rows of `(D  -N)` come from a minimal left kernel basis `L = [L1 L2]` of
/// `[sI - A; -C]`: `D = L2`, `N = L1 B + L2 D_ss`.
pub fn left_coprime_mfd_with(ss: &StateSpace, mode: Reduction) -> Result<LeftFactorization> {
    let observable = ss.is_observable();
    if !observable && mode == Reduction::Strict {
        return Err(Error::NotObservable);
    }
    let sys = if observable {
        ss.clone()
    } else {
        ss.observable_reduction()
    };
    let (n, p) = (sys.states(), sys.outputs());

    let pencil_top =
        HomPolyMatrix::pencil(&RatMatrix::identity(n), &sys.a.scale(&-Rational::one()));
    let bottom = HomPolyMatrix::pencil(&RatMatrix::zeros(p, n), &sys.c.scale(&-Rational::one()));
    let stacked = pencil_top.vstack(&bottom);
    let kernel = minimal_syzygies(&stacked.transpose(), &vec![1; n], n.max(1))?;

    let mut dmat = Vec::with_capacity(p);
    let mut nmat = Vec::with_capacity(p);
    for i in 0..kernel.len() {
        let row: Vec<UniPoly> = kernel.q.row(i).iter().map(HomPoly::dehomogenize).collect();
        let (l1, l2) = row.split_at(n);
        let d_row = l2.to_vec();
        let n_row = (0..sys.inputs())
            .map(|j| {
                let from_b = (0..n).fold(UniPoly::zero(), |acc, k| {
                    &acc + &l1[k].scale(sys.b.get(k, j))
                });
                (0..p).fold(from_b, |acc, k| &acc + &l2[k].scale(sys.d.get(k, j)))
            })
            .collect();
        dmat.push(d_row);
        nmat.push(n_row);
    }
    let mfd = MFD::new(dmat, nmat, kernel.row_degrees.clone())?;
    Ok(LeftFactorization {
        mfd,
        reduced: !observable,
    })
}

/// The AR system `(-N  D)` on `(u; y)`, each row homogenized to its row degree.
pub fn to_hom_ar(mfd: &MFD) -> Result<ARSystem> {
    let (p, m) = (mfd.outputs(), mfd.inputs());
    let rows = mfd
        .dmat
        .iter()
        .zip(&mfd.nmat)
        .zip(&mfd.row_degrees)
        .map(|((d, n), &nu)| {
            n.iter()
                .map(|f| HomPoly::homogenize(&-f, nu))
                .chain(d.iter().map(|f| HomPoly::homogenize(f, nu)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ARSystem::validate(
        HomPolyMatrix::from_rows(rows)?,
        mfd.row_degrees.clone(),
        m,
        p,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeedbackImage {
    Proper(MFD),
    /// The transformed `D` block is singular.
    Improper {
        dmat: Vec<Vec<UniPoly>>,
        nmat: Vec<Vec<UniPoly>>,
    },
}

/// `(-N  D) -> (-N  D) T^{-1}` on `(u; y)`.
pub fn apply_extended_feedback(mfd: &MFD, t: &RatMatrix) -> Result<FeedbackImage> {
    let (p, m) = (mfd.outputs(), mfd.inputs());
    if t.rows() != m + p || t.cols() != m + p {
        return Err(Error::ShapeMismatch(format!(
            "transform must be {0}x{0}",
            m + p
        )));
    }
    let inv = t.inverse()?;
    let mut dmat = Vec::with_capacity(p);
    let mut nmat = Vec::with_capacity(p);
    for i in 0..p {
        let r: Vec<UniPoly> = mfd.nmat[i]
            .iter()
            .map(|f| -f)
            .chain(mfd.dmat[i].iter().cloned())
            .collect();
        let image: Vec<UniPoly> = (0..m + p)
            .map(|j| (0..m + p).fold(UniPoly::zero(), |acc, k| &acc + &r[k].scale(inv.get(k, j))))
            .collect();
        nmat.push(image[..m].iter().map(|f| -f).collect());
        dmat.push(image[m..].to_vec());
    }
    match MFD::new(dmat.clone(), nmat.clone(), mfd.row_degrees.clone()) {
        Ok(mfd) => Ok(FeedbackImage::Proper(mfd)),
        Err(Error::RankDeficient { .. }) => Ok(FeedbackImage::Improper { dmat, nmat }),
        Err(e) => Err(e),
    }
}

/// Compares closing the loop in state space with acting on the AR representation:
/// both routes must give the same `rho_n` point.
pub fn consistency_check_lemma_bij(ss: &StateSpace, g: &FeedbackTransform) -> Result<bool> {
    let direct = to_hom_ar(&left_coprime_mfd(&apply_full_feedback(ss, g)?)?)?;
    let acted = to_hom_ar(&left_coprime_mfd(ss)?)?.act(&g.external_matrix()?)?;
    let n = direct.mcmillan_degree();
    if acted.mcmillan_degree() != n {
        return Ok(false);
    }
    Ok(direct.rho_embedding(n)? == acted.rho_embedding(n)?)
}
