//! Exact rational arithmetic, univariate and homogeneous bivariate polynomials,
//! and polynomial-matrix linear algebra.

mod hommatrix;
mod hompoly;
mod rational;
mod ratmatrix;
mod unipoly;

use std::fmt;

use num_traits::{One, Signed};

pub use hommatrix::{poly_gcd_list, HomPolyMatrix, DEFAULT_RANK_SEED};
pub use hompoly::HomPoly;
pub use rational::{format_rational, frac, parse_rational, rat, Rational};
pub use ratmatrix::RatMatrix;
pub use unipoly::UniPoly;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sign of the permutation that sorts `subset ++ complement` (both sorted),
/// i.e. `(-1)^(sum(subset) - k(k-1)/2)` with 0-based indices.
pub fn subset_sign(subset: &[usize]) -> bool {
    let k = subset.len();
    let sum: usize = subset.iter().sum();
    (sum - k * (k.saturating_sub(1)) / 2) % 2 == 1
}

pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    vars: &[(&str, usize)],
    first: bool,
) -> fmt::Result {
    let negative = c.is_negative();
    let abs = c.abs();
    if first {
        if negative {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if negative { " - " } else { " + " })?;
    }
    let mut factors: Vec<String> = Vec::new();
    if !abs.is_one() {
        factors.push(abs.to_string());
    }
    for &(name, e) in vars {
        match e {
            0 => {}
            1 => factors.push(name.to_string()),
            _ => factors.push(format!("{name}^{e}")),
        }
    }
    if factors.is_empty() {
        factors.push("1".into());
    }
    write!(f, "{}", factors.join("*"))
}
