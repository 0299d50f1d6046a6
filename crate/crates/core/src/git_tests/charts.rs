//! Affine charts of Grassmannians and small symbolic determinants.

use std::sync::Arc;

use num_traits::One;

use crate::ideals::{Monomial, MultiPoly};
use crate::poly::{HomPoly, RatMatrix, Rational};

/// Parameter names for the chart with identity at `chart`; row-major over the
/// remaining columns.
pub fn chart_variables(prefix: &str, chart: &[usize], rows: usize, total: usize) -> Arc<[String]> {
    (0..rows)
        .flat_map(|i| {
            (0..total)
                .filter(|c| !chart.contains(c))
                .map(move |c| format!("{prefix}{}_{}", i + 1, c + 1))
        })
        .collect()
}

/// The chart matrix with the leading variables of `vars` as parameters.
pub(crate) fn symbolic_chart(
    vars: &Arc<[String]>,
    chart: &[usize],
    rows: usize,
    total: usize,
) -> Vec<Vec<MultiPoly>> {
    let mut next = 0;
    (0..rows)
        .map(|i| {
            (0..total)
                .map(|c| match chart.iter().position(|&j| j == c) {
                    Some(k) if k == i => MultiPoly::constant(vars.clone(), Rational::one()),
                    Some(_) => MultiPoly::zero(vars.clone()),
                    None => {
                        next += 1;
                        MultiPoly::var(vars.clone(), next - 1)
                    }
                })
                .collect()
        })
        .collect()
}

/// The chart matrix evaluated at `params`.
pub fn chart_matrix(chart: &[usize], rows: usize, total: usize, params: &[Rational]) -> RatMatrix {
    let mut out = RatMatrix::zeros(rows, total);
    let mut next = params.iter();
    for i in 0..rows {
        for c in 0..total {
            match chart.iter().position(|&j| j == c) {
                Some(k) if k == i => out.set(i, c, Rational::one()),
                Some(_) => {}
                None => out.set(i, c, next.next().expect("one value per parameter").clone()),
            }
        }
    }
    out
}

/// Embeds `f(s, t)` with `s, t` at positions `offset` and `offset + 1` of `vars`.
pub fn hom_to_multi(f: &HomPoly, vars: &Arc<[String]>, offset: usize) -> MultiPoly {
    let terms = f
        .terms()
        .into_iter()
        .map(|(c, a, b)| {
            let mut exps = vec![0u16; vars.len()];
            exps[offset] = a as u16;
            exps[offset + 1] = b as u16;
            (Monomial::new(exps), c)
        })
        .collect();
    MultiPoly::from_terms(vars.clone(), terms)
}

/// Cofactor expansion along the first row; meant for sizes up to 4 or so.
pub fn multi_determinant(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    match n {
        0 => panic!("empty determinant"),
        1 => m[0][0].clone(),
        _ => {
            let vars = m[0][0].vars().clone();
            let mut acc = MultiPoly::zero(vars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&multi_determinant(&minor));
                acc = if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::names;
    use crate::poly::rat;

    #[test]
    fn chart_layout() {
        let vars = chart_variables("k", &[1], 2, 3);
        assert_eq!(
            &*vars,
            &[
                "k1_1".to_string(),
                "k1_3".into(),
                "k2_1".into(),
                "k2_3".into()
            ][..]
        );
        let m = chart_matrix(&[0, 2], 2, 3, &[rat(5), rat(7)]);
        assert_eq!(m, RatMatrix::from_i64(&[&[1, 5, 0], &[0, 7, 1]]));
    }

    #[test]
    fn determinant_of_symbols() {
        let vars = names("x", 4);
        let x = |i| MultiPoly::var(vars.clone(), i);
        let det = multi_determinant(&[vec![x(0), x(1)], vec![x(2), x(3)]]);
        assert_eq!(det, x(0).mul(&x(3)).sub(&x(1).mul(&x(2))));
        let one = MultiPoly::constant(vars.clone(), Rational::one());
        let zero = MultiPoly::zero(vars.clone());
        let id = vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero, one.clone()],
        ];
        assert_eq!(multi_determinant(&id), one);
    }
}
