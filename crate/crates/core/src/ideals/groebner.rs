use std::collections::HashSet;

use num_traits::Zero;

use super::multipoly::{Monomial, MultiPoly};

/// Work limits for Buchberger's algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of S-pairs reduced.
    pub max_pairs: usize,
    /// Maximum total degree of any S-pair or basis element.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 20_000,
            max_degree: 24,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealStatus {
    NoComplexSolution,
    HasComplexSolution,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealVerdict {
    pub status: IdealStatus,
    pub basis: Option<Vec<MultiPoly>>,
}

impl IdealVerdict {
    fn exceeded() -> Self {
        IdealVerdict {
            status: IdealStatus::BudgetExceeded,
            basis: None,
        }
    }
}

/// Full normal form of `f` modulo `basis` (whose elements must be monic).
pub fn reduce(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some((lm, lc)) = p.leading().cloned() {
        match basis
            .iter()
            .find(|g| g.leading().is_some_and(|(gm, _)| gm.divides(&lm)))
        {
            Some(g) => {
                let (gm, gc) = g.leading().unwrap();
                let c = &lc / gc;
                p = p.sub_mul_term(g, &lm.div(gm), &c);
            }
            None => {
                rem.push((lm.clone(), lc));
                p = p.tail();
            }
        }
    }
    MultiPoly::from_terms(f.vars().clone(), rem)
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, lcm: &Monomial) -> MultiPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let a = f.mul_term(&lcm.div(fm), &(gc.clone()));
    a.sub_mul_term(g, &lcm.div(gm), fc)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis under grevlex by Buchberger's algorithm with the product
/// and chain criteria.
pub fn groebner(generators: &[MultiPoly], budget: Budget) -> IdealVerdict {
    let Some(first) = generators.first() else {
        return IdealVerdict {
            status: IdealStatus::HasComplexSolution,
            basis: Some(Vec::new()),
        };
    };
    let vars = first.vars().clone();
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let unit = |vars| IdealVerdict {
        status: IdealStatus::NoComplexSolution,
        basis: Some(vec![MultiPoly::constant(vars, num_traits::One::one())]),
    };

    let mut inputs: Vec<MultiPoly> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    inputs.sort_by(|a, b| a.leading().unwrap().0.cmp(&b.leading().unwrap().0));
    for g in inputs {
        let r = reduce(&g, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return unit(vars);
        }
        if r.total_degree() > budget.max_degree {
            return IdealVerdict::exceeded();
        }
        add_element(&mut basis, &mut pairs, &mut pending, r.monic());
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.lcm.cmp(&b.lcm))
            .map(|(k, _)| k)
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        pending.remove(&(i, j));

        let (mi, mj) = (
            &basis[i].leading().unwrap().0,
            &basis[j].leading().unwrap().0,
        );
        if mi.coprime(mj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().unwrap().0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if lcm.degree() > budget.max_degree {
            return IdealVerdict::exceeded();
        }
        processed += 1;
        if processed > budget.max_pairs {
            return IdealVerdict::exceeded();
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j], &lcm), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return unit(vars);
        }
        if r.total_degree() > budget.max_degree {
            return IdealVerdict::exceeded();
        }
        add_element(&mut basis, &mut pairs, &mut pending, r.monic());
    }

    let reduced = interreduce(basis);
    IdealVerdict {
        status: IdealStatus::HasComplexSolution,
        basis: Some(reduced),
    }
}

fn add_element(
    basis: &mut Vec<MultiPoly>,
    pairs: &mut Vec<Pair>,
    pending: &mut HashSet<(usize, usize)>,
    g: MultiPoly,
) {
    let j = basis.len();
    let gm = g.leading().unwrap().0.clone();
    for (i, f) in basis.iter().enumerate() {
        let lcm = f.leading().unwrap().0.lcm(&gm);
        pairs.push(Pair { i, j, lcm });
        pending.insert((i, j));
    }
    basis.push(g);
}

/// Minimal, fully reduced, monic basis sorted by leading monomial.
fn interreduce(basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let gm = &g.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let hm = &h.leading().unwrap().0;
            l != k && hm.divides(gm) && (hm != gm || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, h)| h.clone())
            .collect();
        let (lm, lc) = minimal[k].leading().unwrap().clone();
        let tail = minimal[k].tail();
        let tail = reduce(&tail, &others);
        let head = MultiPoly::from_terms(minimal[k].vars().clone(), vec![(lm, lc)]);
        out.push(head.add(&tail).monic());
    }
    out.sort_by(|a, b| a.leading().unwrap().0.cmp(&b.leading().unwrap().0));
    out
}

/// `true` when every element of `generators` reduces to zero modulo `basis`.
pub fn ideal_contains_all(basis: &[MultiPoly], generators: &[MultiPoly]) -> bool {
    generators.iter().all(|g| reduce(g, basis).is_zero())
}

/// `true` when no term of any element is divisible by another element's leading
/// monomial and all leading coefficients are 1.
pub fn is_reduced(basis: &[MultiPoly]) -> bool {
    basis.iter().enumerate().all(|(k, g)| {
        let monic = g.leading().is_some_and(|(_, c)| num_traits::One::is_one(c));
        monic
            && basis
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .all(|(_, h)| {
                    let hm = &h.leading().unwrap().0;
                    g.terms().iter().all(|(m, c)| c.is_zero() || !hm.divides(m))
                })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::multipoly::names;
    use crate::poly::rat;

    fn xs(n: usize) -> Vec<MultiPoly> {
        let v = names("x", n);
        (0..n).map(|i| MultiPoly::var(v.clone(), i)).collect()
    }

    fn c(v: &MultiPoly, k: i64) -> MultiPoly {
        MultiPoly::constant(v.vars().clone(), rat(k))
    }

    #[test]
    fn inconsistent_linear() {
        let x = &xs(1)[0];
        let v = groebner(&[x.clone(), x.add(&c(x, 1))], Budget::default());
        assert_eq!(v.status, IdealStatus::NoComplexSolution);
        assert_eq!(v.basis.unwrap(), vec![c(x, 1)]);
    }

    #[test]
    fn complex_only_solution() {
        let x = &xs(1)[0];
        let v = groebner(&[x.mul(x).add(&c(x, 1))], Budget::default());
        assert_eq!(v.status, IdealStatus::HasComplexSolution);
    }

    #[test]
    fn redundant_generator() {
        let x = &xs(1)[0];
        let v = groebner(
            &[x.mul(x).sub(&c(x, 1)), x.sub(&c(x, 1))],
            Budget::default(),
        );
        assert_eq!(v.status, IdealStatus::HasComplexSolution);
        assert_eq!(v.basis.unwrap(), vec![x.sub(&c(x, 1))]);
    }

    #[test]
    fn cyclic_three() {
        let v = xs(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let gens = vec![
            x.add(y).add(z),
            x.mul(y).add(&y.mul(z)).add(&z.mul(x)),
            x.mul(y).mul(z).sub(&c(x, 1)),
        ];
        let verdict = groebner(&gens, Budget::default());
        assert_eq!(verdict.status, IdealStatus::HasComplexSolution);
        let basis = verdict.basis.unwrap();
        assert!(is_reduced(&basis));
        assert!(ideal_contains_all(&basis, &gens));
        // known reduced grevlex basis: x+y+z, y^2+yz+z^2, z^3-1
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn budget_is_reported() {
        let v = xs(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let gens = vec![x.mul(y).sub(z), x.mul(z).sub(y), y.mul(z).sub(x)];
        let verdict = groebner(
            &gens,
            Budget {
                max_pairs: 0,
                max_degree: 24,
            },
        );
        assert_eq!(verdict.status, IdealStatus::BudgetExceeded);
    }
}
