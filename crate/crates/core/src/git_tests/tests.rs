use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures;
use crate::poly::rat;

fn ar(entries: &[&[i64]]) -> ARSystem {
    ARSystem::from_matrix(HomPolyMatrix::from_i64(&[entries]), entries.len() - 1).unwrap()
}

fn verifies(ar: &ARSystem, k: &RatMatrix) -> bool {
    let stacked = ar.matrix().vstack(&HomPolyMatrix::from_constant(k));
    k.rank() == ar.inputs() && stacked.determinant().unwrap().is_zero()
}

fn exhaustive(ar: &ARSystem) -> StabilityVerdict {
    stability_check(ar, StabilityMode::Exhaustive, 1, Budget::default()).unwrap()
}

#[test]
fn euler_examples() {
    assert_eq!(euler_characteristic(3, 4, 2), 13);
    assert_eq!(euler_characteristic(2, 0, 0), 2);
    assert_eq!(euler_characteristic(0, 5, 7), 5);
}

#[test]
fn graded_bounds() {
    let b = GradedBound::new(3, 2, 3).unwrap();
    assert_eq!((b.strict_bound, b.weak_bound), (2, 2));
    let b = GradedBound::new(3, 2, 4).unwrap();
    assert_eq!((b.strict_bound, b.weak_bound), (3, 3));
    let b = GradedBound::new(1, 1, 1).unwrap();
    assert_eq!((b.strict_bound, b.weak_bound), (1, 1));
    let b = GradedBound::new(2, 2, 2).unwrap();
    assert_eq!((b.strict_bound, b.weak_bound), (2, 1));
    assert!(GradedBound::new(2, 2, 4).is_err());
    assert!(GradedBound::new(2, 2, 0).is_err());
    assert_eq!(GradedBound::all(3, 2).len(), 4);
}

#[test]
fn miso_degeneracy_examples() {
    let v = is_nondegenerate(&ar(&[&[1, 0], &[0, 1]]), Budget::default());
    assert_eq!(v.status, DegeneracyStatus::Nondegenerate);
    let v = is_nondegenerate(&ar(&[&[1, 0], &[2, 0]]), Budget::default());
    assert_eq!(v.status, DegeneracyStatus::Degenerate);
    assert_eq!(v.witness, Some(RatMatrix::from_i64(&[&[1, 2]])));
}

#[test]
fn example_is_degenerate_on_a_coordinate_chart() {
    let sys = fixtures::degenerate_stable_system();
    let v = is_nondegenerate(&sys, Budget::default());
    assert_eq!(v.status, DegeneracyStatus::Degenerate);
    assert_eq!(v.chart, Some(vec![2, 3, 4]));
    let k = v.witness.unwrap();
    assert_eq!(
        k,
        RatMatrix::from_i64(&[&[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]])
    );
    assert!(verifies(&sys, &k));
}

#[test]
fn hidden_degeneracy_needs_the_ideal_search() {
    // (s, t, 0; 0, s + 2t, s) has no t^2 terms, so some K kills det [P; K];
    // a generic T hides it from the coordinate charts.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let base = ARSystem::validate(
        HomPolyMatrix::from_i64(&[&[&[1, 0], &[0, 1], &[0, 0]], &[&[0, 0], &[1, 2], &[1, 0]]]),
        vec![1, 1],
        1,
        2,
    )
    .unwrap();
    let t = sample::random_invertible(&mut rng, base.inputs() + base.outputs(), 4);
    let moved = base.act(&t).unwrap();
    let v = is_nondegenerate(&moved, Budget::default());
    assert_eq!(v.status, DegeneracyStatus::Degenerate);
    let k = v.witness.expect("rational witness");
    assert!(verifies(&moved, &k));
}

#[test]
fn random_two_output_systems_are_nondegenerate() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let sys = sample::random_ar(&mut rng, 1, &[1, 1], 5);
        assert_eq!(
            is_nondegenerate(&sys, Budget::default()).status,
            DegeneracyStatus::Nondegenerate
        );
    }
}

#[test]
fn stability_examples() {
    let v = exhaustive(&ar(&[&[1, 0], &[0, 1]]));
    assert_eq!(v.status, StabilityStatus::StableCertified);
    assert_eq!(v.details.len(), 1);

    let bad = ar(&[&[1, 0, 1], &[1, 0, 1]]);
    let v = exhaustive(&bad);
    assert_eq!(v.status, StabilityStatus::CriterionFails);
    let w = v.witness.unwrap();
    assert_eq!((w.h, w.max_rank), (1, 0));
    assert_eq!(w.basis, Some(RatMatrix::from_i64(&[&[1, 1]])));

    // Generic subspaces miss the special line.
    let v = stability_check(&bad, StabilityMode::GenericSubspace, 1, Budget::default()).unwrap();
    assert_eq!(v.status, StabilityStatus::NotCertified);
    assert_eq!(v.details[0].achieved, 1);
}

#[test]
fn example_is_stable() {
    let sys = fixtures::degenerate_stable_system();
    let generic =
        stability_check(&sys, StabilityMode::GenericSubspace, 3, Budget::default()).unwrap();
    let achieved: Vec<usize> = generic.details.iter().map(|r| r.achieved).collect();
    let required: Vec<usize> = generic
        .details
        .iter()
        .map(|r| r.bound.strict_bound)
        .collect();
    assert_eq!(required, vec![1, 2, 2, 3]);
    assert!(achieved.iter().zip(&required).all(|(a, r)| a >= r));
    assert_eq!(generic.status, StabilityStatus::NotCertified);

    let v = exhaustive(&sys);
    assert_eq!(v.status, StabilityStatus::StableCertified);
    assert!(v
        .details
        .iter()
        .all(|r| r.strict == Some(BoundCheck::Holds)));
}

#[test]
fn semistable_but_not_stable() {
    // m = p = 2, h = 2: the weak bound 1 is reached by the plane of the u-coordinates.
    let sys = ARSystem::validate(
        HomPolyMatrix::from_i64(&[
            &[&[1, 0], &[0, 1], &[0, 0], &[0, 0]],
            &[&[0, 0], &[0, 0], &[1, 0], &[0, 1]],
        ]),
        vec![1, 1],
        2,
        2,
    )
    .unwrap();
    let v = exhaustive(&sys);
    assert_eq!(v.status, StabilityStatus::SemistableCertified);
    let w = v.witness.unwrap();
    assert_eq!(w.h, 2);
}

#[test]
fn miso_sweep_matches_nondegeneracy() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cases = vec![
        ar(&[&[1, 0, 1], &[1, 0, 1]]),
        ar(&[&[1, 0, 0], &[0, 0, 1]]),
        ar(&[&[1, 1, 0, 0], &[2, 2, 0, 0]]),
    ];
    for n in 1..=3 {
        for _ in 0..4 {
            cases.push(sample::random_ar(&mut rng, 1, &[n], 3));
        }
    }
    for sys in cases {
        let nondeg =
            is_nondegenerate(&sys, Budget::default()).status == DegeneracyStatus::Nondegenerate;
        let status = exhaustive(&sys).status;
        let semistable = matches!(
            status,
            StabilityStatus::StableCertified | StabilityStatus::SemistableCertified
        );
        assert_eq!(nondeg, semistable, "{:?}", sys.matrix());
    }
}

#[test]
fn small_suites() {
    let report =
        nondegenerate_implies_stable_suite(&[(1, 1, 2), (2, 1, 2)], 6, 17, Budget::default())
            .unwrap();
    assert_eq!(report.sampled, 12);
    assert!(report.counterexamples.is_empty());
    assert_eq!(report.stable, report.nondegenerate);
    assert!(nondegenerate_implies_stable_suite(&[(3, 2, 2)], 1, 0, Budget::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn laplace_identity(seed in any::<u64>(), m in 1usize..3, p in 1usize..3, nu in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degrees = vec![nu; p];
        let sys = sample::random_ar(&mut rng, m, &degrees, 4);
        let k = sample::random_matrix(&mut rng, m, m + p, 3);
        let direct = sys.matrix().vstack(&HomPolyMatrix::from_constant(&k)).determinant().unwrap();
        prop_assert_eq!(laplace_expansion(sys.matrix(), &k).unwrap(), direct);
    }

    #[test]
    fn miso_fast_path_matches_chart_search(seed in any::<u64>(), m in 1usize..3, n in 0usize..3, dep in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sys = sample::random_ar(&mut rng, m, &[n], 3);
        if dep && m + 1 > 1 {
            // Force a dependency: last entry is a combination of the others.
            let row = sys.matrix().row(0).to_vec();
            let mut last = HomPoly::zero(n);
            for (i, e) in row[..m].iter().enumerate() {
                last = &last + &e.scale(&rat(i as i64 + 1));
            }
            let mut entries = row;
            entries[m] = last;
            if let Ok(s) = ARSystem::validate(HomPolyMatrix::from_rows(vec![entries]).unwrap(), vec![n], m, 1) {
                sys = s;
            }
        }
        let fast = is_nondegenerate(&sys, Budget::default());
        let slow = general_degeneracy(&sys, Budget::default());
        prop_assert_eq!(fast.status, slow.status);
        for k in [fast.witness, slow.witness].into_iter().flatten() {
            prop_assert!(verifies(&sys, &k));
        }
    }

    #[test]
    fn witnesses_verify(seed in any::<u64>(), m in 1usize..3, p in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degrees = sample::balanced_degrees(2, p);
        let sys = sample::random_ar(&mut rng, m, &degrees, 2);
        let v = is_nondegenerate(&sys, Budget::default());
        if let Some(k) = v.witness {
            prop_assert_eq!(v.status, DegeneracyStatus::Degenerate);
            prop_assert!(verifies(&sys, &k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn stability_is_invariant_under_the_action(seed in any::<u64>(), m in 1usize..3, n in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = sample::random_ar(&mut rng, m, &[n], 2);
        let t = sample::random_invertible(&mut rng, m + 1, 3);
        let moved = sys.act(&t).unwrap();
        prop_assert_eq!(exhaustive(&sys).status, exhaustive(&moved).status);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hidden_violations_are_found(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let decoupled = ARSystem::validate(
            HomPolyMatrix::from_i64(&[&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]], &[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]]),
            vec![1, 1],
            2,
            2,
        )
        .unwrap();
        let t = sample::random_invertible(&mut rng, 4, 3);
        let moved = decoupled.act(&t).unwrap();
        let v = exhaustive(&moved);
        prop_assert_eq!(v.status, StabilityStatus::SemistableCertified);
        // The violating planes form a conic; a rational point is not always found.
        let w = v.witness.unwrap();
        if let Some(basis) = w.basis {
            let q = moved.compute_q().unwrap().q;
            prop_assert_eq!(basis.rank(), w.h);
            prop_assert!(q.mul_constant_right(&basis.transpose()).exact_rank() <= w.max_rank);
        }
    }
}
