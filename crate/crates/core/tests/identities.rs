//! Cross-formula identities that tie the copy-space quantities to
//! independently computed reference values.

use approx::assert_abs_diff_eq;
use entmeas_core::audit::random_state;
use entmeas_core::measures::three_tangle;
use entmeas_core::oracle::{self, pair_concurrence};
use entmeas_core::projector::{component_norm, husimi_moment, ProjectorSpec};
use entmeas_core::state::{bell, ghz, w};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[test]
fn mixed_component_squared_norm_decomposes_into_concurrence_and_tangle() {
    // For three qubits at two copies, the squared norm of the component that
    // is antisymmetric on the first two parties and symmetric on the third
    // equals (pair concurrence)^2 / 4 + tangle / 8. The left side uses only
    // the projector machinery; the right side uses the spin-flip concurrence
    // of the reduced pair and the copy-order-4 tangle.
    let spec = ProjectorSpec::parse(2, "antisym,antisym,sym").unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    let mut states: Vec<_> =
        (0..100).map(|_| random_state(&mut rng, &[2, 2, 2]).unwrap()).collect();
    states.push(ghz(3).unwrap());
    states.push(w(3).unwrap());

    for (i, state) in states.iter().enumerate() {
        let lhs = component_norm(state, &spec).unwrap().powi(2);
        let c_ab = pair_concurrence(state, 0, 1).unwrap();
        let tau = three_tangle(state).unwrap().magnitude;
        let rhs = c_ab * c_ab / 4.0 + tau / 8.0;
        assert!(
            (lhs - rhs).abs() <= 1e-8,
            "state {i}: component norm identity off by {}",
            (lhs - rhs).abs()
        );
    }
}

#[test]
fn ghz_and_w_endpoints_of_the_identity() {
    // ghz3: pair concurrence 0, tangle 1 -> squared norm 1/8.
    let spec = ProjectorSpec::parse(2, "antisym,antisym,sym").unwrap();
    let lhs = component_norm(&ghz(3).unwrap(), &spec).unwrap().powi(2);
    assert_abs_diff_eq!(lhs, 0.125, epsilon = 1e-12);
    assert_abs_diff_eq!(pair_concurrence(&ghz(3).unwrap(), 0, 1).unwrap(), 0.0, epsilon = 1e-10);

    // w3: pair concurrence 2/3, tangle 0 -> squared norm 1/9.
    let lhs = component_norm(&w(3).unwrap(), &spec).unwrap().powi(2);
    assert_abs_diff_eq!(lhs, 1.0 / 9.0, epsilon = 1e-12);
    assert_abs_diff_eq!(
        pair_concurrence(&w(3).unwrap(), 0, 1).unwrap(),
        2.0 / 3.0,
        epsilon = 1e-10
    );
}

#[test]
fn pair_singlet_overlap_is_half_the_spin_flip_concurrence() {
    use entmeas_core::measures::concurrence_2qubit;
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    for _ in 0..100 {
        let state = random_state(&mut rng, &[2, 2]).unwrap();
        let ours = concurrence_2qubit(&state).unwrap().magnitude;
        let rho = oracle::reduced_density(&state, &[0, 1]).unwrap();
        let spin_flip = oracle::wootters_concurrence(&rho).unwrap();
        assert!(
            (2.0 * ours - spin_flip).abs() <= 1e-8,
            "2x overlap vs spin flip differ by {}",
            (2.0 * ours - spin_flip).abs()
        );
    }
    assert_abs_diff_eq!(concurrence_2qubit(&bell()).unwrap().magnitude, 0.5, epsilon = 1e-14);
}

#[test]
fn symmetric_moment_matches_subset_purity_expression() {
    let mut rng = ChaCha12Rng::seed_from_u64(13);
    for dims in [&[2usize, 2][..], &[2, 2, 2], &[3, 3], &[2, 2, 2, 2]] {
        for _ in 0..25 {
            let state = random_state(&mut rng, dims).unwrap();
            let direct = husimi_moment(&state, 2).unwrap();
            let via_swap = oracle::husimi2_swap(&state).unwrap();
            assert!(
                (direct - via_swap).abs() <= 1e-10,
                "{dims:?}: moment identity off by {}",
                (direct - via_swap).abs()
            );
        }
    }
}

#[test]
fn tangle_cross_assignments_agree_on_random_states() {
    let mut rng = ChaCha12Rng::seed_from_u64(17);
    for _ in 0..50 {
        let state = random_state(&mut rng, &[2, 2, 2]).unwrap();
        let report = three_tangle(&state).unwrap();
        assert!(
            report.max_cross_discrepancy() <= 1e-10,
            "tangle assignments disagree by {}",
            report.max_cross_discrepancy()
        );
    }
}

#[test]
fn two_copy_component_norms_resolve_the_identity_on_random_states() {
    use entmeas_core::projector::q2_sign_patterns;
    let mut rng = ChaCha12Rng::seed_from_u64(19);
    for dims in [&[2usize, 2][..], &[2, 2, 2], &[3, 3]] {
        let state = random_state(&mut rng, dims).unwrap();
        let total: f64 = q2_sign_patterns(dims.len())
            .iter()
            .map(|spec| component_norm(&state, spec).unwrap().powi(2))
            .sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
    }
}
