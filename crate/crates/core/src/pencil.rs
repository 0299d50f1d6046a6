//! Generalized first-order systems `K x' + L x + M w = 0`.
//!
//! External variables are ordered `w = (y; u)` here, following the block layout
//! of [`PencilSystem::from_state_space`]. [`to_input_output_order`] moves an AR
//! system to the `(u; y)` order used everywhere else.

use crate::arsys::{minimal_syzygies, ARSystem};
use crate::error::{Error, Result};
use crate::poly::{poly_gcd_list, HomPolyMatrix, RatMatrix, Rational};
use crate::realization::StateSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSystem {
    pub k: RatMatrix,
    pub l: RatMatrix,
    pub m: RatMatrix,
    states: usize,
    inputs: usize,
    outputs: usize,
}

impl PencilSystem {
    /// `K, L` are `(n+p) x n` and `M` is `(n+p) x (m+p)`.
    pub fn new(k: RatMatrix, l: RatMatrix, m: RatMatrix, outputs: usize) -> Result<Self> {
        let n = k.cols();
        if k.rows() != n + outputs
            || l.rows() != k.rows()
            || l.cols() != n
            || m.rows() != k.rows()
            || m.cols() < outputs
        {
            return Err(Error::ShapeMismatch(format!(
                "K {}x{}, L {}x{}, M {}x{} with p = {outputs}",
                k.rows(),
                k.cols(),
                l.rows(),
                l.cols(),
                m.rows(),
                m.cols()
            )));
        }
        let inputs = m.cols() - outputs;
        Ok(PencilSystem {
            k,
            l,
            m,
            states: n,
            inputs,
            outputs,
        })
    }

    /// `K = [-I; 0]`, `L = [A; C]`, `M = [[0, B], [-I, D]]`.
    pub fn from_state_space(ss: &StateSpace) -> Self {
        let (n, m, p) = (ss.states(), ss.inputs(), ss.outputs());
        let minus = |k: usize| RatMatrix::identity(k).scale(&-Rational::from_integer(1.into()));
        let k = minus(n).vstack(&RatMatrix::zeros(p, n));
        let l = ss.a.vstack(&ss.c);
        let top = RatMatrix::zeros(n, p).hstack(&ss.b);
        let bottom = minus(p).hstack(&ss.d);
        PencilSystem {
            k,
            l,
            m: top.vstack(&bottom),
            states: n,
            inputs: m,
            outputs: p,
        }
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    /// `sK + tL`.
    pub fn pencil(&self) -> HomPolyMatrix {
        HomPolyMatrix::pencil(&self.k, &self.l)
    }

    pub fn is_admissible(&self) -> bool {
        self.pencil().generic_rank() == self.states
    }

    /// `[sK + tL  M]` has full row rank at every point of the projective line.
    pub fn is_controllable(&self) -> Result<bool> {
        if !self.is_admissible() {
            return Err(Error::NotAdmissible);
        }
        let full = self.pencil().hstack(&HomPolyMatrix::from_constant(&self.m));
        let minors = full.maximal_minors(self.states + self.outputs)?;
        Ok(poly_gcd_list(&minors).is_ok_and(|g| g.degree() == 0))
    }

    /// `(U K S^{-1}, U L S^{-1}, U M T^{-1})`.
    pub fn act(&self, u: &RatMatrix, s: &RatMatrix, t: &RatMatrix) -> Result<PencilSystem> {
        let rows = self.states + self.outputs;
        let ext = self.inputs + self.outputs;
        if u.rows() != rows || s.rows() != self.states || t.rows() != ext {
            return Err(Error::ShapeMismatch(
                "transform sizes do not match the pencil".into(),
            ));
        }
        if !u.is_invertible() {
            return Err(Error::SingularTransform);
        }
        let s_inv = s.inverse()?;
        let t_inv = t.inverse()?;
        Ok(PencilSystem {
            k: &(u * &self.k) * &s_inv,
            l: &(u * &self.l) * &s_inv,
            m: &(u * &self.m) * &t_inv,
            ..self.clone()
        })
    }

    /// Eliminates `x`: `Lambda (sK + tL) = 0` with `Lambda` a minimal left kernel
    /// basis, then `P = Lambda M` in `(y; u)` order.
    pub fn to_ar(&self) -> Result<ARSystem> {
        if !self.is_controllable()? {
            return Err(Error::NotControllable);
        }
        let rows = self.states + self.outputs;
        let lambda = minimal_syzygies(
            &self.pencil().transpose(),
            &vec![1; self.states],
            rows.max(1),
        )?;
        let p = lambda.q.mul_constant_right(&self.m);
        ARSystem::validate(p, lambda.row_degrees, self.inputs, self.outputs)
    }

    /// Inverse of [`PencilSystem::from_state_space`] on pencils where `[K  M_y]` is
    /// invertible; returns `SingularTransform` otherwise.
    pub fn to_state_space(&self) -> Result<StateSpace> {
        let (n, p) = (self.states, self.outputs);
        let y_cols: Vec<usize> = (0..p).collect();
        let u_cols: Vec<usize> = (p..p + self.inputs).collect();
        let chart = self.k.hstack(&self.m.select_columns(&y_cols));
        let u = chart.inverse()?.scale(&-Rational::from_integer(1.into()));
        let l = &u * &self.l;
        let mu = &u * &self.m.select_columns(&u_cols);
        let top: Vec<usize> = (0..n).collect();
        let bottom: Vec<usize> = (n..n + p).collect();
        StateSpace::new(
            l.select_rows(&top),
            mu.select_rows(&top),
            l.select_rows(&bottom),
            mu.select_rows(&bottom),
        )
    }
}

/// Permutation `T` with `(u; y) = T (y; u)`.
pub fn yu_to_uy(m: usize, p: usize) -> RatMatrix {
    let mut t = RatMatrix::zeros(m + p, m + p);
    for j in 0..m {
        t.set(j, p + j, Rational::from_integer(1.into()));
    }
    for j in 0..p {
        t.set(m + j, j, Rational::from_integer(1.into()));
    }
    t
}

/// Reorders the columns of a `(y; u)` AR system to `(u; y)`.
pub fn to_input_output_order(ar: &ARSystem) -> Result<ARSystem> {
    ar.act(&yu_to_uy(ar.inputs(), ar.outputs()))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::realization::{left_coprime_mfd, to_hom_ar};
    use crate::sample;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows)
    }

    fn scalar() -> PencilSystem {
        PencilSystem::new(
            m(&[&[-1], &[0]]),
            m(&[&[0], &[1]]),
            m(&[&[0, 1], &[-1, 0]]),
            1,
        )
        .unwrap()
    }

    fn double_integrator() -> StateSpace {
        StateSpace::strictly_proper(m(&[&[0, 1], &[0, 0]]), m(&[&[0], &[1]]), m(&[&[1, 0]]))
            .unwrap()
    }

    fn same_rho(a: &ARSystem, b: &ARSystem) -> bool {
        let n = a.mcmillan_degree();
        n == b.mcmillan_degree() && a.rho_embedding(n).unwrap() == b.rho_embedding(n).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(scalar().is_admissible());
        let zero = PencilSystem::new(
            RatMatrix::zeros(2, 1),
            RatMatrix::zeros(2, 1),
            m(&[&[0, 1], &[-1, 0]]),
            1,
        )
        .unwrap();
        assert!(!zero.is_admissible());
        assert!(matches!(zero.is_controllable(), Err(Error::NotAdmissible)));
        assert!(PencilSystem::from_state_space(&double_integrator()).is_admissible());
        assert!(PencilSystem::new(
            RatMatrix::zeros(3, 1),
            RatMatrix::zeros(2, 1),
            RatMatrix::zeros(3, 2),
            1
        )
        .is_err());
    }

    #[test]
    fn controllability() {
        assert!(scalar().is_controllable().unwrap());
        let silent = PencilSystem::new(
            m(&[&[-1], &[0]]),
            m(&[&[0], &[1]]),
            RatMatrix::zeros(2, 2),
            1,
        )
        .unwrap();
        assert!(!silent.is_controllable().unwrap());
        let ss =
            StateSpace::strictly_proper(m(&[&[1, 0], &[0, 2]]), m(&[&[1], &[0]]), m(&[&[1, 1]]))
                .unwrap();
        assert!(!PencilSystem::from_state_space(&ss)
            .is_controllable()
            .unwrap());
    }

    #[test]
    fn state_space_blocks() {
        let ss = StateSpace::new(m(&[&[0]]), m(&[&[1]]), m(&[&[1]]), m(&[&[0]])).unwrap();
        assert_eq!(PencilSystem::from_state_space(&ss), scalar());
        let ps = PencilSystem::from_state_space(&double_integrator());
        assert_eq!(ps.k, m(&[&[-1, 0], &[0, -1], &[0, 0]]));
        assert_eq!(ps.l, m(&[&[0, 1], &[0, 0], &[1, 0]]));
        assert_eq!(ps.m, m(&[&[0, 0], &[0, 1], &[-1, 0]]));
        assert!(ps.k.hstack(&ps.m.select_columns(&[0])).is_invertible());
        assert_eq!(ps.to_state_space().unwrap(), double_integrator());
    }

    #[test]
    fn action_examples() {
        let ps = scalar();
        let id = |k| RatMatrix::identity(k);
        assert_eq!(ps.act(&id(2), &id(1), &id(2)).unwrap(), ps);
        let two = |k| id(k).scale(&Rational::from_integer(2.into()));
        let acted = ps.act(&two(2), &two(1), &id(2)).unwrap();
        assert_eq!(
            (acted.k.clone(), acted.l.clone()),
            (ps.k.clone(), ps.l.clone())
        );
        assert_eq!(acted.m, ps.m.scale(&Rational::from_integer(2.into())));
        assert!(matches!(
            ps.act(&RatMatrix::zeros(2, 2), &id(1), &id(2)),
            Err(Error::SingularTransform)
        ));
    }

    #[test]
    fn elimination_examples() {
        let p = scalar().to_ar().unwrap();
        assert_eq!(
            p.matrix(),
            &HomPolyMatrix::from_i64(&[&[&[-1, 0], &[0, 1]]])
        );
        let uy = to_input_output_order(&p).unwrap();
        assert_eq!(
            uy.matrix(),
            &HomPolyMatrix::from_i64(&[&[&[0, 1], &[-1, 0]]])
        );

        let ss = double_integrator();
        let eliminated =
            to_input_output_order(&PencilSystem::from_state_space(&ss).to_ar().unwrap()).unwrap();
        let factored = to_hom_ar(&left_coprime_mfd(&ss).unwrap()).unwrap();
        assert!(same_rho(&eliminated, &factored));
        assert_eq!(yu_to_uy(1, 2), m(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn routes_agree_on_seeded_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(616);
        for i in 0..50 {
            let n = 1 + i % 3;
            let (mm, p) = [(1, 1), (2, 1), (1, 2)][i % 3];
            let ss = sample::random_minimal_state_space(&mut rng, n, mm, p, i % 2 == 0, 3);
            let eliminated =
                to_input_output_order(&PencilSystem::from_state_space(&ss).to_ar().unwrap())
                    .unwrap();
            let factored = to_hom_ar(&left_coprime_mfd(&ss).unwrap()).unwrap();
            assert!(same_rho(&eliminated, &factored), "sample {i}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn controllability_matches_kalman(seed in any::<u64>(), n in 1usize..5, mm in 1usize..3, p in 1usize..3, sparse in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ss = sample::random_state_space(&mut rng, n, mm, p, true, 2);
            if sparse {
                ss.b = RatMatrix::zeros(n, mm);
                ss.b.set(0, 0, Rational::from_integer(1.into()));
            }
            let ps = PencilSystem::from_state_space(&ss);
            prop_assert_eq!(ps.is_controllable().unwrap(), ss.is_controllable());
        }

        #[test]
        fn action_preserves_structure(seed in any::<u64>(), n in 1usize..4, mm in 1usize..3, p in 1usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ss = sample::random_minimal_state_space(&mut rng, n, mm, p, true, 3);
            let ps = PencilSystem::from_state_space(&ss);
            let u = sample::random_invertible(&mut rng, n + p, 3);
            let s = sample::random_invertible(&mut rng, n, 3);
            let t = sample::random_invertible(&mut rng, mm + p, 3);
            let moved = ps.act(&u, &s, &RatMatrix::identity(mm + p)).unwrap();
            prop_assert!(moved.is_admissible());
            prop_assert!(moved.is_controllable().unwrap());
            prop_assert!(same_rho(&moved.to_ar().unwrap(), &ps.to_ar().unwrap()));
            let general = ps.act(&u, &s, &t).unwrap();
            prop_assert!(general.is_controllable().unwrap());
            prop_assert!(same_rho(&general.to_ar().unwrap(), &ps.to_ar().unwrap().act(&t).unwrap()));
            // Same transfer function after moving back to state space.
            let back = moved.to_state_space().unwrap();
            prop_assert!(left_coprime_mfd(&back).unwrap().realizes(&ss));
        }
    }
}
