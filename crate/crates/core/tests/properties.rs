use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cohere_core::channels::{dilate, ChannelPreset};
use cohere_core::correlations::{
    discord_fixed_basis, one_way_deficit, qi_relative_entropy, verify_coherence_chain, BipartiteState, IncoherentOp,
};
use cohere_core::gates::{GateSpec, UnitaryGate};
use cohere_core::linalg::{partial_trace, tensor_product, ComplexMatrix};
use cohere_core::measures::{coherence_l1, coherence_rel_entropy, relative_entropy};
use cohere_core::powers::{cohering_power, decohering_power, Maximizer, MaxCoherentSet};
use cohere_core::report::{Check, Relation, VerificationReport};
use cohere_core::states::{
    dephase, random_density, random_density_with, random_incoherent_with, random_unitary, random_unitary_with,
    DensityOperator, ReferenceBasis,
};

fn comp(d: usize) -> ReferenceBasis {
    ReferenceBasis::computational(d)
}

fn hermitian(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |v| {
        let m = ComplexMatrix::new(d, d, v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap();
        m.hermitian_part()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eig_reconstructs(m in (1usize..=6).prop_flat_map(hermitian)) {
        let e = m.eig_hermitian().unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&m) <= 1e-10);
        let v = &e.eigenvectors;
        prop_assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(m.rows())) <= 1e-10);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn partial_trace_of_product(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let a = random_density(da, seed);
        let b = random_density(db, seed ^ 1);
        let ab = tensor_product(a.matrix(), b.matrix()).unwrap();
        prop_assert!(partial_trace(&ab, &[da, db], &[0]).unwrap().max_abs_diff(a.matrix()) <= 1e-12);
        prop_assert!(partial_trace(&ab, &[da, db], &[1]).unwrap().max_abs_diff(b.matrix()) <= 1e-12);
    }

    #[test]
    fn dephasing_is_idempotent(seed in any::<u64>(), d in 2usize..=5) {
        let rho = random_density(d, seed);
        let basis = ReferenceBasis::new(random_unitary(d, seed ^ 7), "random");
        let once = dephase(&rho, &basis, &[0]).unwrap();
        let twice = dephase(&once, &basis, &[0]).unwrap();
        prop_assert!(once.matrix().max_abs_diff(twice.matrix()) <= 1e-12);
        prop_assert!((once.matrix().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(coherence_rel_entropy(&once, &basis).unwrap().bits() <= 1e-10);
        prop_assert!(coherence_l1(&once, &basis).unwrap() <= 1e-10);
    }

    #[test]
    fn coherence_bounds(seed in any::<u64>(), d in 2usize..=5) {
        let rho = random_density(d, seed);
        let c = coherence_rel_entropy(&rho, &comp(d)).unwrap().bits();
        prop_assert!(c >= 0.0 && c <= (d as f64).log2() + 1e-9);
    }

    #[test]
    fn klein_and_closed_form(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density_with(d, &mut rng);
        let sigma = random_density_with(d, &mut rng);
        prop_assert!(relative_entropy(&rho, &sigma).unwrap().bits() >= -1e-12);
        let diag = random_incoherent_with(d, &mut rng);
        let c = coherence_rel_entropy(&rho, &comp(d)).unwrap().bits();
        prop_assert!(relative_entropy(&rho, &diag).unwrap().bits() >= c - 1e-9);
    }

    #[test]
    fn convexity_reduction(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unitary_with(d, &mut rng);
        let delta = random_incoherent_with(d, &mut rng);
        let lhs = coherence_rel_entropy(&delta.evolve(&u).unwrap(), &comp(d)).unwrap().bits();
        let power = cohering_power(&u, &comp(d)).unwrap();
        prop_assert!(lhs <= power.value + 1e-9);
        prop_assert!(power.value >= 0.0 && power.value <= (d as f64).log2() + 1e-9);
    }

    #[test]
    fn permutation_covariance(seed in any::<u64>(), d in 2usize..=4, shift in 1usize..4) {
        let u = random_unitary(d, seed);
        let mut p = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            p[((i + shift) % d, i)] = Complex64::new(1.0, 0.0);
        }
        let relabeled = ReferenceBasis::new(UnitaryGate::from_matrix(p).unwrap(), "shifted");
        let a = cohering_power(&u, &comp(d)).unwrap();
        let b = cohering_power(&u, &relabeled).unwrap();
        prop_assert!((a.value - b.value).abs() <= 1e-12);
        // vector i of the relabeled basis is |i + shift>
        if let (Maximizer::BasisIndex { index: ia }, Maximizer::BasisIndex { index: ib }) = (a.maximizer, b.maximizer) {
            let pa = cohere_core::states::PureState::basis(d, ia).evolve(&u).unwrap().density();
            let pb = cohere_core::states::PureState::basis(d, (ib + shift) % d).evolve(&u).unwrap().density();
            let ca = coherence_rel_entropy(&pa, &comp(d)).unwrap().bits();
            let cb = coherence_rel_entropy(&pb, &comp(d)).unwrap().bits();
            prop_assert!((ca - cb).abs() <= 1e-12);
        }
    }

    #[test]
    fn free_mode_dominates_canonical(p in 0.0f64..=1.0, k in 0usize..5) {
        let e = ChannelPreset::ALL[k].build(p).unwrap();
        let free = decohering_power(&e, &MaxCoherentSet::free(2), &comp(2)).unwrap().value;
        let canonical = decohering_power(&e, &MaxCoherentSet::canonical(2), &comp(2)).unwrap().value;
        prop_assert!(free >= canonical - 1e-9);
        prop_assert!(free <= 1.0 + 1e-9 && canonical >= -1e-9);
    }

    #[test]
    fn dilation_matches_partial_trace(seed in any::<u64>(), m in 1usize..=3) {
        let u = random_unitary(2 * m, seed);
        let e = dilate(&u, m).unwrap();
        let rho = random_density(2, seed ^ 3);
        let joint = rho.tensor(&DensityOperator::basis_state(m, 0)).unwrap().evolve(&u).unwrap();
        let reduced = joint.reduce(&[0]).unwrap();
        prop_assert!(e.apply(&rho).unwrap().matrix().max_abs_diff(reduced.matrix()) <= 1e-10);
    }

    #[test]
    fn chain_monotone(seed in any::<u64>(), d in 2usize..=3) {
        let rho = random_density(d, seed);
        let r = verify_coherence_chain(&rho, IncoherentOp::Gcnot(d)).unwrap();
        prop_assert!(r.values.c_a >= r.values.c_ae - 1e-9);
    }

    #[test]
    fn correlation_identities(seed in any::<u64>(), db in 2usize..=3) {
        let rho = random_density(2 * db, seed).with_dims(vec![2, db]).unwrap();
        let bs = BipartiteState::computational(rho.clone()).unwrap();
        let qi = qi_relative_entropy(&bs).unwrap().bits();
        let c_a = coherence_rel_entropy(&rho.reduce(&[0]).unwrap(), &comp(2)).unwrap().bits();
        prop_assert!((c_a + discord_fixed_basis(&bs).unwrap().bits() - qi).abs() <= 1e-9);
        let chi = dephase(&rho, &comp(2), &[0]).unwrap();
        let lhs = coherence_rel_entropy(&chi, &comp(2 * db)).unwrap().bits() + qi;
        prop_assert!((lhs - coherence_rel_entropy(&rho, &comp(2 * db)).unwrap().bits()).abs() <= 1e-9);
    }

    #[test]
    fn check_pass_flag(lhs in -2.0f64..2.0, rhs in -2.0f64..2.0, tol in 0.0f64..0.5, r in 0usize..3) {
        let relation = [Relation::Equal, Relation::AtLeast, Relation::AtMost][r];
        let c = Check::new("p", "", relation, lhs, rhs, tol);
        let expected = match relation {
            Relation::Equal => (lhs - rhs).abs() <= tol,
            Relation::AtLeast => lhs - rhs >= -tol,
            Relation::AtMost => rhs - lhs >= -tol,
        };
        prop_assert_eq!(c.pass, expected);
        let mut rep = VerificationReport::new("prop", Some(1), None);
        rep.push(c);
        let text = rep.to_json().unwrap();
        prop_assert_eq!(VerificationReport::from_json(&text).unwrap(), rep);
    }

    #[test]
    fn gate_spec_round_trip(a in -3.0f64..3.0, b in -3.0f64..3.0, g in -3.0f64..3.0, d in -3.0f64..3.0) {
        let spec = GateSpec::Zyz { alpha: a, beta: b, gamma: g, delta: d };
        prop_assert_eq!(spec.to_string().parse::<GateSpec>().unwrap(), spec);
    }
}

#[test]
fn quantum_incoherent_states_have_no_deficit() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let s0 = random_density_with(2, &mut rng);
        let s1 = random_density_with(2, &mut rng);
        let mut m = ComplexMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = s0.matrix()[(i, j)] * 0.4;
                m[(2 + i, 2 + j)] = s1.matrix()[(i, j)] * 0.6;
            }
        }
        let bs = BipartiteState::computational(DensityOperator::new(m, vec![2, 2]).unwrap()).unwrap();
        assert!(one_way_deficit(&bs).unwrap().value <= 1e-6);
    }
}
