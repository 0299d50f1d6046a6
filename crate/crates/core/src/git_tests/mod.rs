//! Nondegeneracy and the subspace-rank stability criterion.
//!
//! With `Q(s, t)` the `m x (m+p)` kernel matrix of `P`, the criterion asks that
//! for every proper subspace `H` of dimension `h` the rank of `Q * H^T` over
//! `Q(s, t)` exceeds `m h / (m+p)` (stability) or reaches it (semistability).

mod charts;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arsys::ARSystem;
use crate::error::{Error, Result};
use crate::ideals::{find_rational_point, groebner, Budget, IdealStatus, MultiPoly};
use crate::poly::{combinations, subset_sign, HomPoly, HomPolyMatrix, RatMatrix, Rational};
use crate::sample;

pub use charts::{chart_matrix, chart_variables, hom_to_multi, multi_determinant};

/// `rank * (ell + 1) + degree`.
pub fn euler_characteristic(rank: i64, degree: i64, ell: i64) -> i64 {
    rank * (ell + 1) + degree
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedBound {
    pub h: usize,
    pub strict_bound: usize,
    pub weak_bound: usize,
}

impl GradedBound {
    pub fn new(m: usize, p: usize, h: usize) -> Result<Self> {
        if h == 0 || h >= m + p {
            return Err(Error::BadSize(format!(
                "subspace dimension {h} outside 1..{}",
                m + p - 1
            )));
        }
        let num = m * h;
        let den = m + p;
        Ok(GradedBound {
            h,
            strict_bound: num / den + 1,
            weak_bound: num.div_ceil(den),
        })
    }

    pub fn all(m: usize, p: usize) -> Vec<GradedBound> {
        (1..m + p)
            .map(|h| GradedBound::new(m, p, h).expect("h in range"))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegeneracyStatus {
    Nondegenerate,
    Degenerate,
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyVerdict {
    pub status: DegeneracyStatus,
    /// Full-rank `m x (m+p)` constant matrix with `det [P; K] = 0`.
    pub witness: Option<RatMatrix>,
    /// Columns where the witness is the identity.
    pub chart: Option<Vec<usize>>,
}

impl DegeneracyVerdict {
    fn nondegenerate() -> Self {
        DegeneracyVerdict {
            status: DegeneracyStatus::Nondegenerate,
            witness: None,
            chart: None,
        }
    }
}

/// `det [P; K]` expanded along the rows of `P`:
/// `sum_I sign(I) p_I(s, t) * det K[:, I^c]`.
pub fn laplace_expansion(p: &HomPolyMatrix, k: &RatMatrix) -> Result<HomPoly> {
    let total = p.cols();
    if k.cols() != total || p.rows() + k.rows() != total {
        return Err(Error::ShapeMismatch("[P; K] must be square".into()));
    }
    let rows: Vec<usize> = (0..p.rows()).collect();
    let degree = p
        .uniform_row_degrees()
        .map(|d| d.iter().sum())
        .ok_or_else(|| Error::ShapeMismatch("P must have homogeneous rows".into()))?;
    let mut acc = HomPoly::zero(degree);
    for subset in combinations(total, p.rows()) {
        let rest = complement(&subset, total);
        let km = k.select_columns(&rest).determinant()?;
        if km.is_zero() {
            continue;
        }
        let pi = p.select_rows(&rows).select_columns(&subset).determinant()?;
        let term = pi.scale(&km);
        acc = if subset_sign(&subset) {
            &acc - &term
        } else {
            &acc + &term
        };
    }
    Ok(acc)
}

fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|c| !subset.contains(c)).collect()
}

/// Scales a rational vector to coprime integers with a positive first nonzero entry.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        g = -g;
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

fn primitive_rows(m: &RatMatrix) -> RatMatrix {
    RatMatrix::from_vec(
        m.rows(),
        m.cols(),
        (0..m.rows()).flat_map(|i| primitive(m.row(i))).collect(),
    )
}

pub fn is_nondegenerate(ar: &ARSystem, budget: Budget) -> DegeneracyVerdict {
    if ar.outputs() == 1 {
        return miso_degeneracy(ar);
    }
    general_degeneracy(ar, budget)
}

/// Chart search valid for any `p`.
pub(crate) fn general_degeneracy(ar: &ARSystem, budget: Budget) -> DegeneracyVerdict {
    let (m, p) = (ar.inputs(), ar.outputs());
    let total = m + p;
    let pm = ar.matrix();
    let rows: Vec<usize> = (0..p).collect();
    let charts = combinations(total, m);

    // Coordinate witnesses: K = rows e_J kills every term but p_{J^c}.
    for chart in &charts {
        let rest = complement(chart, total);
        let minor = pm
            .select_rows(&rows)
            .select_columns(&rest)
            .determinant()
            .expect("consistent degrees");
        if minor.is_zero() {
            let mut k = RatMatrix::zeros(m, total);
            for (i, &c) in chart.iter().enumerate() {
                k.set(i, c, Rational::one());
            }
            return DegeneracyVerdict {
                status: DegeneracyStatus::Degenerate,
                witness: Some(k),
                chart: Some(chart.clone()),
            };
        }
    }

    let minors: Vec<(Vec<usize>, HomPoly)> = combinations(total, p)
        .into_iter()
        .map(|subset| {
            let minor = pm
                .select_rows(&rows)
                .select_columns(&subset)
                .determinant()
                .expect("consistent degrees");
            (subset, minor)
        })
        .collect();
    let outcomes: Vec<ChartOutcome> = charts
        .par_iter()
        .map(|chart| degeneracy_chart(&minors, chart, m, total, budget))
        .collect();
    if let Some((chart, point)) = first_solvable(&charts, &outcomes) {
        let witness = point.map(|params| chart_matrix(chart, m, total, params));
        return DegeneracyVerdict {
            status: DegeneracyStatus::Degenerate,
            witness,
            chart: Some(chart.clone()),
        };
    }
    if outcomes.iter().any(|o| matches!(o, ChartOutcome::Budget)) {
        DegeneracyVerdict {
            status: DegeneracyStatus::NotCertified,
            witness: None,
            chart: None,
        }
    } else {
        DegeneracyVerdict::nondegenerate()
    }
}

fn miso_degeneracy(ar: &ARSystem) -> DegeneracyVerdict {
    let n = ar.mcmillan_degree();
    let coeffs = RatMatrix::from_rows(
        ar.matrix()
            .row(0)
            .iter()
            .map(|e| e.coeffs().to_vec())
            .collect(),
    )
    .expect("equal degrees");
    debug_assert_eq!(coeffs.cols(), n + 1);
    let deps = coeffs.transpose().nullspace();
    if deps.rows() == 0 {
        return DegeneracyVerdict::nondegenerate();
    }
    let dependency = RatMatrix::from_vec(1, deps.cols(), deps.row(0).to_vec());
    let k = primitive_rows(&dependency.nullspace());
    DegeneracyVerdict {
        status: DegeneracyStatus::Degenerate,
        witness: Some(k),
        chart: None,
    }
}

enum ChartOutcome {
    /// A common zero exists; the point is present when a rational one was found.
    Solvable(Option<Vec<Rational>>),
    Empty,
    Budget,
}

/// First chart with a rational point, else the first chart with any solution.
fn first_solvable<'a>(
    charts: &'a [Vec<usize>],
    outcomes: &'a [ChartOutcome],
) -> Option<(&'a Vec<usize>, Option<&'a Vec<Rational>>)> {
    let solvable = || {
        charts.iter().zip(outcomes).filter_map(|(c, o)| match o {
            ChartOutcome::Solvable(point) => Some((c, point.as_ref())),
            _ => None,
        })
    };
    solvable()
        .find(|(_, p)| p.is_some())
        .or_else(|| solvable().next())
}

fn decide(equations: &[MultiPoly], budget: Budget) -> ChartOutcome {
    if equations.is_empty() {
        return ChartOutcome::Solvable(find_rational_point(equations, budget));
    }
    match groebner(equations, budget).status {
        IdealStatus::NoComplexSolution => ChartOutcome::Empty,
        IdealStatus::BudgetExceeded => ChartOutcome::Budget,
        IdealStatus::HasComplexSolution => {
            ChartOutcome::Solvable(find_rational_point(equations, budget))
        }
    }
}

fn degeneracy_chart(
    minors: &[(Vec<usize>, HomPoly)],
    chart: &[usize],
    m: usize,
    total: usize,
    budget: Budget,
) -> ChartOutcome {
    let vars = chart_variables("k", chart, m, total);
    let k = charts::symbolic_chart(&vars, chart, m, total);
    let degree = minors.first().map_or(0, |(_, f)| f.degree());
    let mut equations = vec![MultiPoly::zero(vars.clone()); degree + 1];
    for (subset, pi) in minors {
        if pi.is_zero() {
            continue;
        }
        let rest = complement(subset, total);
        let sub: Vec<Vec<MultiPoly>> = k
            .iter()
            .map(|row| rest.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let km = multi_determinant(&sub);
        if km.is_zero() {
            continue;
        }
        let km = if subset_sign(subset) { km.neg() } else { km };
        for (j, c) in pi.coeffs().iter().enumerate() {
            if !c.is_zero() {
                equations[j] = equations[j].add(&km.scale(c));
            }
        }
    }
    equations.retain(|e| !e.is_zero());
    decide(&equations, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityStatus {
    StableCertified,
    SemistableCertified,
    CriterionFails,
    NotCertified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityMode {
    GenericSubspace,
    Exhaustive,
}

/// Outcome of the exhaustive search at one bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundCheck {
    Holds,
    Violated,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub bound: GradedBound,
    /// Rank of `Q * H^T` for the generic subspaces drawn.
    pub achieved: usize,
    pub strict: Option<BoundCheck>,
    pub weak: Option<BoundCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceWitness {
    pub h: usize,
    /// `rank(Q * H^T) <= max_rank` for this subspace.
    pub max_rank: usize,
    /// Basis rows of `H`, when a rational point was found.
    pub basis: Option<RatMatrix>,
    pub chart: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub mode: StabilityMode,
    pub details: Vec<RankReport>,
    pub witness: Option<SubspaceWitness>,
}

const GENERIC_DRAWS: usize = 3;
const GENERIC_RANGE: i64 = 50;

pub fn stability_check(
    ar: &ARSystem,
    mode: StabilityMode,
    seed: u64,
    budget: Budget,
) -> Result<StabilityVerdict> {
    let q = ar.observable_part()?.compute_q()?.q;
    let (m, p) = (ar.inputs(), ar.outputs());
    let total = m + p;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<RatMatrix> = (0..GENERIC_DRAWS)
        .map(|_| sample::random_invertible(&mut rng, total, GENERIC_RANGE))
        .collect();
    let mut details: Vec<RankReport> = GradedBound::all(m, p)
        .into_iter()
        .map(|bound| {
            let cols: Vec<usize> = (0..bound.h).collect();
            let achieved = draws
                .iter()
                .map(|a| {
                    q.mul_constant_right(a)
                        .select_columns(&cols)
                        .generic_rank_seeded(seed)
                })
                .max()
                .unwrap_or(0);
            RankReport {
                bound,
                achieved,
                strict: None,
                weak: None,
            }
        })
        .collect();

    if mode == StabilityMode::GenericSubspace {
        let failing = details.iter().find(|r| r.achieved < r.bound.strict_bound);
        let (status, witness) = match failing {
            Some(r) => {
                let h = r.bound.h;
                let basis = draws[0]
                    .select_columns(&(0..h).collect::<Vec<_>>())
                    .transpose();
                let rank = q.mul_constant_right(&basis.transpose()).exact_rank();
                (
                    StabilityStatus::CriterionFails,
                    Some(SubspaceWitness {
                        h,
                        max_rank: rank,
                        basis: Some(basis),
                        chart: Vec::new(),
                    }),
                )
            }
            None => (StabilityStatus::NotCertified, None),
        };
        return Ok(StabilityVerdict {
            status,
            mode,
            details,
            witness,
        });
    }

    let mut strict_witnesses = Vec::with_capacity(details.len());
    for report in &mut details {
        let (check, witness) =
            subspace_search(&q, report.bound.h, report.bound.strict_bound - 1, budget);
        report.strict = Some(check);
        strict_witnesses.push(witness);
    }
    if details.iter().all(|r| r.strict == Some(BoundCheck::Holds)) {
        return Ok(StabilityVerdict {
            status: StabilityStatus::StableCertified,
            mode,
            details,
            witness: None,
        });
    }
    let strict_witness = strict_witnesses.iter().flatten().next().cloned();

    let mut weak_witness = None;
    for (report, strict_witness) in details.iter_mut().zip(strict_witnesses) {
        let (check, witness) = if report.bound.weak_bound == report.bound.strict_bound {
            (report.strict.expect("strict pass ran"), strict_witness)
        } else {
            subspace_search(&q, report.bound.h, report.bound.weak_bound - 1, budget)
        };
        report.weak = Some(check);
        if weak_witness.is_none() {
            weak_witness = witness;
        }
    }
    let weak: Vec<BoundCheck> = details
        .iter()
        .map(|r| r.weak.expect("weak pass ran"))
        .collect();
    let (status, witness) = if weak.contains(&BoundCheck::Violated) {
        (StabilityStatus::CriterionFails, weak_witness)
    } else if weak.contains(&BoundCheck::Undecided) {
        (StabilityStatus::NotCertified, strict_witness)
    } else {
        (StabilityStatus::SemistableCertified, strict_witness)
    };
    Ok(StabilityVerdict {
        status,
        mode,
        details,
        witness,
    })
}

/// Searches for an `h`-dimensional `H` with `rank(Q * H^T) <= r`, chart by chart.
fn subspace_search(
    q: &HomPolyMatrix,
    h: usize,
    r: usize,
    budget: Budget,
) -> (BoundCheck, Option<SubspaceWitness>) {
    let total = q.cols();
    let charts = combinations(total, h);
    let outcomes: Vec<ChartOutcome> = charts
        .par_iter()
        .map(|chart| rank_chart(q, chart, h, r, budget))
        .collect();
    if let Some((chart, point)) = first_solvable(&charts, &outcomes) {
        let basis = point.map(|params| chart_matrix(chart, h, total, params));
        return (
            BoundCheck::Violated,
            Some(SubspaceWitness {
                h,
                max_rank: r,
                basis,
                chart: chart.clone(),
            }),
        );
    }
    if outcomes.iter().any(|o| matches!(o, ChartOutcome::Budget)) {
        (BoundCheck::Undecided, None)
    } else {
        (BoundCheck::Holds, None)
    }
}

fn rank_chart(
    q: &HomPolyMatrix,
    chart: &[usize],
    h: usize,
    r: usize,
    budget: Budget,
) -> ChartOutcome {
    let total = q.cols();
    let params = chart_variables("h", chart, h, total);
    let nparams = params.len();
    let vars: Arc<[String]> = params
        .iter()
        .cloned()
        .chain(["s".to_string(), "t".to_string()])
        .collect();
    let hm = charts::symbolic_chart(&vars, chart, h, total);
    let qm: Vec<Vec<MultiPoly>> = (0..q.rows())
        .map(|i| {
            q.row(i)
                .iter()
                .map(|e| hom_to_multi(e, &vars, nparams))
                .collect()
        })
        .collect();
    // (Q H^T)_{ij} = sum_k Q_ik H_jk
    let prod: Vec<Vec<MultiPoly>> = qm
        .iter()
        .map(|qrow| {
            hm.iter()
                .map(|hrow| {
                    qrow.iter()
                        .zip(hrow)
                        .fold(MultiPoly::zero(vars.clone()), |acc, (a, b)| {
                            acc.add(&a.mul(b))
                        })
                })
                .collect()
        })
        .collect();
    let size = r + 1;
    let mut equations = Vec::new();
    for rows in combinations(q.rows(), size) {
        for cols in combinations(h, size) {
            let sub: Vec<Vec<MultiPoly>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| prod[i][j].clone()).collect())
                .collect();
            let det = multi_determinant(&sub);
            for (_, coeff) in det.coefficients_in_trailing(2, params.clone()) {
                if !coeff.is_zero() {
                    equations.push(coeff);
                }
            }
        }
    }
    decide(&equations, budget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub sampled: usize,
    pub nondegenerate: usize,
    pub stable: usize,
    /// Nondegenerate samples that were not certified stable.
    pub counterexamples: Vec<(ARSystem, StabilityStatus)>,
}

/// Samples random systems of each `(m, p, n)` size; every nondegenerate one must
/// come out stable.
pub fn nondegenerate_implies_stable_suite(
    sizes: &[(usize, usize, usize)],
    samples: usize,
    seed: u64,
    budget: Budget,
) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport {
        sampled: 0,
        nondegenerate: 0,
        stable: 0,
        counterexamples: Vec::new(),
    };
    for &(m, p, n) in sizes {
        if m + p > 4 || n > 4 {
            return Err(Error::BadSize(format!(
                "(m, p, n) = ({m}, {p}, {n}) is too large for exhaustive checks"
            )));
        }
        let degrees = sample::balanced_degrees(n, p);
        for _ in 0..samples {
            let ar = sample::random_ar(&mut rng, m, &degrees, 5);
            report.sampled += 1;
            if is_nondegenerate(&ar, budget).status != DegeneracyStatus::Nondegenerate {
                continue;
            }
            report.nondegenerate += 1;
            let verdict = stability_check(&ar, StabilityMode::Exhaustive, seed, budget)?;
            if verdict.status == StabilityStatus::StableCertified {
                report.stable += 1;
            } else {
                report.counterexamples.push((ar, verdict.status));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
