use fbinv::arsys::ARSystem;
use fbinv::cli::SystemFile;
use fbinv::fixtures;
use fbinv::git_tests::{is_nondegenerate, nondegenerate_implies_stable_suite, stability_check, DegeneracyStatus, StabilityMode, StabilityStatus};
use fbinv::ideals::Budget;
use fbinv::miso::miso_invariant;
use fbinv::pencil::{to_input_output_order, PencilSystem};
use fbinv::poly::{HomPolyMatrix, RatMatrix};
use fbinv::realization::{left_coprime_mfd, to_hom_ar};
use fbinv::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn moved_example() -> (ARSystem, RatMatrix) {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/generic5.json")).unwrap();
    let SystemFile::Transform(t) = SystemFile::parse(&text).unwrap() else { panic!("transform expected") };
    (fixtures::degenerate_stable_system().act(&t).unwrap(), t)
}

#[test]
fn moved_example_keeps_its_verdicts() {
    let (moved, _) = moved_example();
    let v = is_nondegenerate(&moved, Budget::default());
    assert_eq!(v.status, DegeneracyStatus::Degenerate);
    let k = v.witness.expect("rational witness");
    assert_eq!(k.rank(), 3);
    assert!(moved.matrix().vstack(&HomPolyMatrix::from_constant(&k)).determinant().unwrap().is_zero());
    let s = stability_check(&moved, StabilityMode::Exhaustive, 0, Budget::default()).unwrap();
    assert_eq!(s.status, StabilityStatus::StableCertified);
}

#[test]
fn witness_transports_along_the_action() {
    // det [P T^{-1}; K T^{-1}] = det [P; K] / det T, so e3, e4, e5 move to K T^{-1}.
    let (moved, t) = moved_example();
    let e345 = RatMatrix::from_i64(&[&[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]]);
    let k = &e345 * &t.inverse().unwrap();
    assert!(moved.matrix().vstack(&HomPolyMatrix::from_constant(&k)).determinant().unwrap().is_zero());
}

#[test]
fn miso_invariant_from_both_routes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=3 {
        let ss = sample::random_minimal_state_space(&mut rng, n, 2, 1, n % 2 == 0, 4);
        let factored = to_hom_ar(&left_coprime_mfd(&ss).unwrap()).unwrap();
        let eliminated = to_input_output_order(&PencilSystem::from_state_space(&ss).to_ar().unwrap()).unwrap();
        match (miso_invariant(&factored), miso_invariant(&eliminated)) {
            (Ok(a), Ok(b)) => assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            other => panic!("routes disagree: {other:?}"),
        }
    }
}

#[test]
fn square_two_by_two_suite() {
    let report = nondegenerate_implies_stable_suite(&[(2, 2, 2)], 4, 31, Budget::default()).unwrap();
    assert!(report.counterexamples.is_empty(), "{:?}", report.counterexamples);
}
