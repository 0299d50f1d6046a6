use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::poly::Rational;

/// Exponent vector compared in graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn new(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
            degree: self.degree - other.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when the monomial is a pure power of variable `i`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    // smaller exponent in the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over the rationals in named variables; terms are kept sorted in
/// decreasing grevlex order with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MultiPoly {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: Arc<[String]>, c: Rational) -> Self {
        let n = vars.len();
        Self::from_terms(vars, vec![(Monomial::one(n), c)])
    }

    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let n = vars.len();
        Self::from_terms(vars, vec![(Monomial::var(n, i), Rational::one())])
    }

    /// Sorts and merges the given terms.
    pub fn from_terms(vars: Arc<[String]>, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        MultiPoly {
            vars,
            terms: merged,
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// All terms after the leading one.
    pub fn tail(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, lc)) if !lc.is_one() => self.scale(&(Rational::one() / lc)),
            _ => self.clone(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    /// `self - c * mono * other`, merging the sorted term lists.
    pub fn sub_mul_term(&self, other: &MultiPoly, mono: &Monomial, c: &Rational) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(m, x)| (m.mul(mono), -(x * c)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, x) = a.next().unwrap().clone();
                        let (_, y) = b.next().unwrap();
                        let s = x + y;
                        if !s.is_zero() {
                            out.push((m, s));
                        }
                    }
                },
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Self {
        self.sub_mul_term(other, &Monomial::one(self.nvars()), &-Rational::one())
    }

    pub fn sub(&self, other: &MultiPoly) -> Self {
        self.sub_mul_term(other, &Monomial::one(self.nvars()), &Rational::one())
    }

    pub fn mul(&self, other: &MultiPoly) -> Self {
        let mut acc = Self::zero(self.vars.clone());
        for (m, c) in &other.terms {
            acc = acc.sub_mul_term(self, m, &-c);
        }
        acc
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| (0..e).fold(acc, |acc, _| acc * x))
            })
            .sum()
    }

    /// Splits off the trailing `k` variables: returns, for every exponent pattern in
    /// those variables, the coefficient polynomial in the leading variables. Used to
    /// turn "identically zero in (s, t)" into equations on the parameters.
    pub fn coefficients_in_trailing(
        &self,
        k: usize,
        head_vars: Arc<[String]>,
    ) -> Vec<(Vec<u16>, MultiPoly)> {
        let n = self.nvars();
        assert!(k <= n && head_vars.len() == n - k);
        let mut groups: Vec<(Vec<u16>, Vec<(Monomial, Rational)>)> = Vec::new();
        for (m, c) in &self.terms {
            let (head, tail) = m.exps().split_at(n - k);
            let head = Monomial::new(head.to_vec());
            match groups.iter_mut().find(|(t, _)| t == tail) {
                Some((_, ts)) => ts.push((head, c.clone())),
                None => groups.push((tail.to_vec(), vec![(head, c.clone())])),
            }
        }
        groups.sort_by(|a, b| a.0.cmp(&b.0));
        groups
            .into_iter()
            .map(|(tail, ts)| (tail, MultiPoly::from_terms(head_vars.clone(), ts)))
            .collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let vars: Vec<(&str, usize)> = self
                .vars
                .iter()
                .zip(m.exps())
                .map(|(v, &e)| (v.as_str(), e as usize))
                .collect();
            crate::poly::write_term(f, c, &vars, k == 0)?;
        }
        Ok(())
    }
}

/// Variable list helper: `names("k", 3)` gives `k1, k2, k3`.
pub fn names(prefix: &str, n: usize) -> Arc<[String]> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}
