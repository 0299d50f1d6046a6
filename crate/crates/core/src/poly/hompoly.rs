use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Homogeneous polynomial in `(s, t)` of a fixed formal degree `d`.
///
/// `coeffs[j]` is the coefficient of `s^(d-j) t^j`. The zero polynomial keeps
/// its degree label so that zero entries still carry a row degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl HomPoly {
    pub fn zero(degree: usize) -> Self {
        HomPoly {
            degree,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn constant(c: Rational) -> Self {
        HomPoly {
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c * s^a * t^b`.
    pub fn monomial(c: Rational, a: usize, b: usize) -> Self {
        let mut p = Self::zero(a + b);
        p.coeffs[b] = c;
        p
    }

    pub fn s() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Builds from the coefficient list ordered `s^d, s^(d-1) t, ..., t^d`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a homogeneous polynomial needs degree+1 coefficients"
        );
        HomPoly {
            degree: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    /// Builds from `(coefficient, s-exponent, t-exponent)` terms; every term must
    /// have total degree `degree`. Repeated monomials are summed.
    pub fn from_terms(degree: usize, terms: &[(Rational, usize, usize)]) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (c, a, b) in terms {
            if a + b != degree {
                return Err(Error::Parse(format!(
                    "term s^{a} t^{b} does not have degree {degree}"
                )));
            }
            p.coeffs[*b] += c;
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^a t^b` (zero if `a + b` differs from the degree).
    pub fn coeff(&self, a: usize, b: usize) -> Rational {
        if a + b != self.degree {
            return Rational::zero();
        }
        self.coeffs[b].clone()
    }

    /// Nonzero terms as `(coefficient, s-exponent, t-exponent)`.
    pub fn terms(&self) -> Vec<(Rational, usize, usize)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (c.clone(), self.degree - j, j))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Each term `c s^a` becomes `c s^a t^(target-a)`.
    pub fn homogenize(f: &UniPoly, target_degree: usize) -> Result<Self> {
        if let Some(d) = f.degree() {
            if d > target_degree {
                return Err(Error::DegreeExceeded {
                    degree: d,
                    target: target_degree,
                });
            }
        }
        let mut p = Self::zero(target_degree);
        for (a, c) in f.coeffs().iter().enumerate() {
            p.coeffs[target_degree - a] = c.clone();
        }
        Ok(p)
    }

    /// The chart `t = 1`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn eval(&self, s0: &Rational, t0: &Rational) -> Rational {
        // Horner in s with t-powers accumulated from the right.
        let mut acc = Rational::zero();
        let mut tpow = Rational::one();
        let mut spow = Rational::one();
        let d = self.degree;
        let mut spows = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            spows.push(spow.clone());
            spow *= s0;
        }
        for j in 0..=d {
            if !self.coeffs[j].is_zero() {
                acc += &self.coeffs[j] * &spows[d - j] * &tpow;
            }
            tpow *= t0;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Power of `t` dividing the polynomial (`None` for zero).
    pub fn t_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact quotient `self / divisor`, or `None` if the division is not exact.
    pub fn exact_div(&self, divisor: &HomPoly) -> Option<HomPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.degree < divisor.degree {
            return if self.is_zero() {
                Some(HomPoly::zero(0))
            } else {
                None
            };
        }
        let degree = self.degree - divisor.degree;
        if self.is_zero() {
            return Some(HomPoly::zero(degree));
        }
        // Dehomogenized division loses t-powers; those are restored by the degree label.
        let (q, r) = self.dehomogenize().div_rem(&divisor.dehomogenize());
        if !r.is_zero() {
            return None;
        }
        HomPoly::homogenize(&q, degree).ok()
    }

    /// Scaled so the first nonzero coefficient (highest power of `s`) is 1.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lc) => self.scale(&(Rational::one() / lc)),
            None => self.clone(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = HomPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for &HomPoly {
    type Output = HomPoly;
    fn add(self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(
            self.degree, rhs.degree,
            "adding homogeneous polynomials of different degrees"
        );
        HomPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &HomPoly {
    type Output = HomPoly;
    fn sub(self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(
            self.degree, rhs.degree,
            "subtracting homogeneous polynomials of different degrees"
        );
        HomPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &HomPoly {
    type Output = HomPoly;
    fn mul(self, rhs: &HomPoly) -> HomPoly {
        let mut out = HomPoly::zero(self.degree + rhs.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;
    fn neg(self) -> HomPoly {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, a, b) in self.terms() {
            super::write_term(f, &c, &[("s", a), ("t", b)], first)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
