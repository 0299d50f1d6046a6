use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::groebner::{groebner, reduce, Budget, IdealStatus};
use super::multipoly::{Monomial, MultiPoly};
use crate::poly::{RatMatrix, Rational, UniPoly};

/// Largest integer whose divisors are enumerated when searching rational roots.
const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;
/// Upper bound on Gröbner computations spent by [`find_rational_point`].
const SEARCH_NODE_LIMIT: usize = 200;

/// Whether the reduced basis defines a finite-dimensional quotient (every variable
/// has a pure power among the leading monomials).
pub fn is_zero_dimensional(basis: &[MultiPoly]) -> bool {
    let Some(first) = basis.first() else {
        return false;
    };
    let n = first.nvars();
    (0..n).all(|i| {
        basis
            .iter()
            .any(|g| g.leading().unwrap().0.pure_power_of() == Some(i))
    }) || basis.iter().any(|g| g.is_constant())
}

/// Rational solutions of a zero-dimensional system, found by computing the minimal
/// polynomial of one coordinate at a time and searching its rational roots.
///
/// Returns `None` when the basis is `{1}`, not zero-dimensional, or no rational
/// point was found. At most one point is returned.
pub fn solve_if_zero_dimensional(basis: &[MultiPoly]) -> Option<Vec<Vec<Rational>>> {
    if basis.is_empty() || basis.iter().any(MultiPoly::is_constant) || !is_zero_dimensional(basis) {
        return None;
    }
    let mut nodes = 0;
    solve_zero_dim(basis, Budget::default(), &mut nodes).map(|p| vec![p])
}

/// Best-effort search for a rational point of the variety of `generators`.
/// Positive-dimensional components are cut down by trying small integer values
/// for the free coordinates in variable order.
pub fn find_rational_point(generators: &[MultiPoly], budget: Budget) -> Option<Vec<Rational>> {
    let mut nodes = 0;
    search(generators.to_vec(), budget, &mut nodes)
}

fn search(gens: Vec<MultiPoly>, budget: Budget, nodes: &mut usize) -> Option<Vec<Rational>> {
    *nodes += 1;
    if *nodes > SEARCH_NODE_LIMIT {
        return None;
    }
    let verdict = groebner(&gens, budget);
    if verdict.status != IdealStatus::HasComplexSolution {
        return None;
    }
    let basis = verdict.basis.unwrap();
    let vars = gens.first()?.vars().clone();
    if basis.is_empty() {
        return Some(vec![Rational::zero(); vars.len()]);
    }
    if is_zero_dimensional(&basis) {
        return solve_zero_dim(&basis, budget, nodes);
    }
    let fixed = fixed_values(&basis);
    let free = (0..vars.len())
        .find(|&i| fixed[i].is_none() && !is_leading_var(&basis, i))
        .or_else(|| (0..vars.len()).find(|&i| fixed[i].is_none()))?;
    for c in [0i64, 1, -1, 2, -2, 3] {
        let mut next = basis.clone();
        next.push(
            MultiPoly::var(vars.clone(), free)
                .sub(&MultiPoly::constant(vars.clone(), crate::poly::rat(c))),
        );
        if let Some(p) = search(next, budget, nodes) {
            return Some(p);
        }
    }
    None
}

fn is_leading_var(basis: &[MultiPoly], i: usize) -> bool {
    basis.iter().any(|g| g.leading().unwrap().0.exps()[i] > 0)
}

/// Variables pinned by a basis element of the form `x_i - c`.
fn fixed_values(basis: &[MultiPoly]) -> Vec<Option<Rational>> {
    let n = basis[0].nvars();
    let mut out = vec![None; n];
    for g in basis {
        let (lm, _) = g.leading().unwrap();
        if lm.degree() == 1
            && g.terms().len() <= 2
            && g.terms().iter().skip(1).all(|(m, _)| m.is_one())
        {
            let i = lm.pure_power_of().unwrap();
            let c = g.terms().get(1).map_or_else(Rational::zero, |(_, c)| -c);
            out[i] = Some(c);
        }
    }
    out
}

fn solve_zero_dim(basis: &[MultiPoly], budget: Budget, nodes: &mut usize) -> Option<Vec<Rational>> {
    let fixed = fixed_values(basis);
    if fixed.iter().all(Option::is_some) {
        return Some(fixed.into_iter().map(Option::unwrap).collect());
    }
    let vars = basis[0].vars().clone();
    let i = fixed.iter().position(Option::is_none).unwrap();
    let minpoly = minimal_polynomial(basis, i)?;
    for r in rational_roots(&minpoly) {
        let mut next = basis.to_vec();
        next.push(MultiPoly::var(vars.clone(), i).sub(&MultiPoly::constant(vars.clone(), r)));
        *nodes += 1;
        if *nodes > SEARCH_NODE_LIMIT {
            return None;
        }
        let v = groebner(&next, budget);
        if v.status == IdealStatus::HasComplexSolution {
            if let Some(p) = solve_zero_dim(&v.basis.unwrap(), budget, nodes) {
                return Some(p);
            }
        }
    }
    None
}

/// Minimal polynomial of `x_i` in the finite-dimensional quotient, found from the
/// first linear dependency among the normal forms of `1, x_i, x_i^2, ...`.
fn minimal_polynomial(basis: &[MultiPoly], i: usize) -> Option<UniPoly> {
    let vars = basis[0].vars().clone();
    let n = vars.len();
    let mut forms: Vec<MultiPoly> = Vec::new();
    let mut power = MultiPoly::constant(vars.clone(), Rational::one());
    let x = MultiPoly::var(vars, i);
    for _ in 0..=256 {
        forms.push(reduce(&power, basis));
        let mut monos: Vec<Monomial> = forms
            .iter()
            .flat_map(|f| f.terms().iter().map(|(m, _)| m.clone()))
            .collect();
        monos.sort();
        monos.dedup();
        // columns: forms, rows: monomials
        let mut m = RatMatrix::zeros(monos.len(), forms.len());
        for (col, f) in forms.iter().enumerate() {
            for (mono, c) in f.terms() {
                let row = monos.binary_search(mono).unwrap();
                m.set(row, col, c.clone());
            }
        }
        let null = m.nullspace();
        if null.rows() > 0 {
            let coeffs = null.row(0).to_vec();
            return Some(UniPoly::new(coeffs));
        }
        power = power.mul(&x);
        debug_assert_eq!(power.nvars(), n);
    }
    None
}

/// Rational roots of `f`, in increasing order, by the rational root theorem.
pub fn rational_roots(f: &UniPoly) -> Vec<Rational> {
    if f.is_zero() {
        return Vec::new();
    }
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let ints = &ints[low..];
    if ints.len() > 1 {
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
            return roots;
        };
        let reduced = UniPoly::new(
            ints.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        );
        let mut candidates: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    candidates.push(Rational::new(BigInt::from(*p) * sign, BigInt::from(*q)));
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        roots.extend(candidates.into_iter().filter(|r| reduced.eval(r).is_zero()));
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_SEARCH_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::multipoly::names;
    use crate::poly::{frac, rat};

    #[test]
    fn solve_examples() {
        let v = names("x", 2);
        let x = MultiPoly::var(v.clone(), 0);
        let y = MultiPoly::var(v.clone(), 1);
        let c = |k| MultiPoly::constant(v.clone(), rat(k));
        let pts = solve_if_zero_dimensional(&[x.sub(&c(1)), y.sub(&c(2))]).unwrap();
        assert_eq!(pts, vec![vec![rat(1), rat(2)]]);

        let v1 = names("x", 1);
        let x1 = MultiPoly::var(v1.clone(), 0);
        let two = MultiPoly::constant(v1.clone(), rat(2));
        assert!(solve_if_zero_dimensional(&[x1.mul(&x1).sub(&two)]).is_none());
        assert!(solve_if_zero_dimensional(&[MultiPoly::constant(v1, rat(1))]).is_none());
    }

    #[test]
    fn nonlinear_zero_dimensional() {
        // x^2 - 3x + 2 = 0, y - x^2 = 0 -> (1, 1) is a rational solution
        let v = names("x", 2);
        let x = MultiPoly::var(v.clone(), 0);
        let y = MultiPoly::var(v.clone(), 1);
        let c = |k| MultiPoly::constant(v.clone(), rat(k));
        let gens = vec![x.mul(&x).sub(&x.mul(&c(3))).add(&c(2)), y.sub(&x.mul(&x))];
        let basis = groebner(&gens, Budget::default()).basis.unwrap();
        let p = &solve_if_zero_dimensional(&basis).unwrap()[0];
        assert!(gens.iter().all(|g| g.eval(p).is_zero()));
    }

    #[test]
    fn positive_dimensional_point() {
        // x*y - 1 = 0 has no point with x = 0 but does with x = 1
        let v = names("x", 2);
        let x = MultiPoly::var(v.clone(), 0);
        let y = MultiPoly::var(v.clone(), 1);
        let gens = vec![x.mul(&y).sub(&MultiPoly::constant(v, rat(1)))];
        let p = find_rational_point(&gens, Budget::default()).unwrap();
        assert!(gens[0].eval(&p).is_zero());
    }

    #[test]
    fn roots() {
        // (2x - 1)(x + 3) x = 2x^3 + 5x^2 - 3x
        let f = UniPoly::from_i64(&[0, -3, 5, 2]);
        assert_eq!(rational_roots(&f), vec![rat(-3), rat(0), frac(1, 2)]);
        assert!(rational_roots(&UniPoly::from_i64(&[-2, 0, 1])).is_empty());
    }
}
