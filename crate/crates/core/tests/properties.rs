use nalgebra::DVector;
use proptest::prelude::*;

use probdel::analysis::{max_f2, real_pair_for_ab};
use probdel::fidelity::{
    f1_closed, f2_closed_general, f2_plus_blank, f2_real, oracle_fidelities, rho1_closed,
    rho2_closed,
};
use probdel::linalg::{fidelity_pure, outer, partial_trace, tensor, ANCILLA, MODE1, MODE2};
use probdel::{
    BlankState, Complex, DeletionMachine, MachineParams, Mode, PureState, QubitState, SystemLayout,
};

fn unit_vec(n: usize) -> impl Strategy<Value = Vec<Complex>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_filter("non-degenerate", |v| {
            v.iter().map(|(x, y)| x * x + y * y).sum::<f64>() > 1e-3
        })
        .prop_map(|v| {
            let z: Vec<Complex> = v.into_iter().map(|(x, y)| Complex::new(x, y)).collect();
            let norm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            z.into_iter().map(|c| c / norm).collect()
        })
}

fn qubit() -> impl Strategy<Value = QubitState> {
    unit_vec(2).prop_map(|v| QubitState::new(v[0], v[1]).unwrap())
}

fn params() -> impl Strategy<Value = MachineParams> {
    unit_vec(2)
        .prop_filter("p ≠ 0", |v| v[0].norm() > 1e-6)
        .prop_map(|v| MachineParams::new(v[0], v[1]).unwrap())
}

fn blank() -> impl Strategy<Value = BlankState> {
    unit_vec(2).prop_map(|v| BlankState::new(v[0], v[1]).unwrap())
}

fn state(layout: SystemLayout) -> impl Strategy<Value = PureState> {
    unit_vec(layout.dim()).prop_map(move |v| PureState::from_slice(layout.clone(), &v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn outer_is_a_pure_density_matrix(psi in state(SystemLayout::deletion())) {
        let rho = outer(&psi);
        prop_assert!((rho.trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(rho.hermitian_deviation() <= 1e-12);
        prop_assert!(rho.min_eigenvalue() >= -1e-10);
        prop_assert!((rho.purity() - 1.0).abs() <= 1e-12);
        prop_assert!((fidelity_pure(&psi, &rho).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn partial_trace_preserves_trace(psi in state(SystemLayout::deletion())) {
        let rho = outer(&psi);
        for name in [MODE1, MODE2, ANCILLA] {
            let reduced = partial_trace(&rho, name).unwrap();
            prop_assert!((reduced.trace().re - rho.trace().re).abs() <= 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_product_returns_factor(
        u in state(SystemLayout::qubit(MODE1)),
        v in state(SystemLayout::qubit(MODE2)),
        w in state(SystemLayout::single(ANCILLA, 3).unwrap()),
    ) {
        let rho = outer(&u.tensor(&v).unwrap().tensor(&w).unwrap());
        for (name, factor) in [(MODE1, &u), (MODE2, &v), (ANCILLA, &w)] {
            let reduced = partial_trace(&rho, name).unwrap();
            let expected = outer(factor);
            let dev = (reduced.entries() - expected.entries()).camax();
            prop_assert!(dev <= 1e-12, "{name}: {dev}");
        }
    }

    #[test]
    fn tensor_is_associative(u in unit_vec(2), v in unit_vec(2), w in unit_vec(3)) {
        let (u, v, w) = (
            DVector::from_vec(u),
            DVector::from_vec(v),
            DVector::from_vec(w),
        );
        let left = tensor(&tensor(&u, &v), &w);
        let right = tensor(&u, &tensor(&v, &w));
        prop_assert!((left - right).camax() <= 1e-15);
    }

    #[test]
    fn machine_is_an_isometry(p in params(), b in blank()) {
        let report = DeletionMachine::new(p, b).verify_isometry();
        prop_assert!(report.holds, "deviation {}", report.max_deviation);
    }

    #[test]
    fn output_is_normalized(input in qubit(), p in params(), b in blank()) {
        let out = DeletionMachine::new(p, b).apply(&input).unwrap();
        prop_assert!((out.amplitudes().norm_squared() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn reduced_states_are_valid(input in qubit(), p in params(), b in blank()) {
        let m = DeletionMachine::new(p, b);
        for mode in [Mode::Mode1, Mode::Mode2] {
            let rho = m.reduced_state(&input, mode).unwrap();
            prop_assert!((rho.trace().re - 1.0).abs() <= 1e-12);
            prop_assert!(rho.hermitian_deviation() <= 1e-12);
            prop_assert!(rho.min_eigenvalue() >= -1e-10);
        }
    }

    #[test]
    fn reduced_states_match_closed_forms(input in qubit(), p in params(), b in blank()) {
        let m = DeletionMachine::new(p, b);
        let rho1 = m.reduced_state(&input, Mode::Mode1).unwrap();
        let rho2 = m.reduced_state(&input, Mode::Mode2).unwrap();
        prop_assert!((rho1.entries() - rho1_closed(&input, p.q())).camax() <= 1e-10);
        prop_assert!((rho2.entries() - rho2_closed(&input, &p, &b)).camax() <= 1e-10);
    }

    #[test]
    fn pati_braunstein_limit_matches_linear_extension(input in qubit(), b in blank()) {
        // a²|0,Σ,A₀⟩ + ab|01A⟩ + ab|10A⟩ + b²|1,Σ,A₁⟩
        let layout = SystemLayout::deletion();
        let (a, bb) = (input.a(), input.b());
        let mut expected = DVector::<Complex>::zeros(12);
        for (k, m) in [(0, b.m0()), (1, b.m1())] {
            expected[layout.flat_index(&[0, k, 1])] += a * a * m;
            expected[layout.flat_index(&[1, k, 2])] += bb * bb * m;
        }
        expected[layout.flat_index(&[0, 1, 0])] += a * bb;
        expected[layout.flat_index(&[1, 0, 0])] += a * bb;
        let out = DeletionMachine::pati_braunstein(b).apply(&input).unwrap();
        prop_assert!((out.amplitudes() - expected).camax() <= 1e-12);
    }

    #[test]
    fn closed_forms_agree_with_oracle(input in qubit(), p in params(), b in blank()) {
        let oracle = oracle_fidelities(&input, &p, &b).unwrap();
        prop_assert!((f1_closed(&input, p.q()) - oracle.f1).abs() <= 1e-10);
        prop_assert!((f2_closed_general(&input, &p, &b) - oracle.f2).abs() <= 1e-10);
        for f in [oracle.f1, oracle.f2] {
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
        }
    }

    #[test]
    fn specialization_chain(ab in -0.5f64..=0.5, q in 0.0f64..1.0, cplx in qubit(), pc in params()) {
        let plus = BlankState::plus();
        prop_assert!((f2_closed_general(&cplx, &pc, &plus) - f2_plus_blank(&cplx, &pc)).abs() <= 1e-12);

        let (a, b) = real_pair_for_ab(ab).unwrap();
        let input = QubitState::real(a, b).unwrap();
        let params = MachineParams::new(
            Complex::new((1.0 - q * q).sqrt(), 0.0),
            Complex::new(q, 0.0),
        ).unwrap();
        let general = f2_closed_general(&input, &params, &plus);
        prop_assert!((general - f2_plus_blank(&input, &params)).abs() <= 1e-12);
        prop_assert!((general - f2_real(a, b, q)).abs() <= 1e-12);
    }

    #[test]
    fn pb_gap_equals_overlap_weight(input in qubit(), b in blank()) {
        let pb = MachineParams::pati_braunstein();
        let gap = f2_closed_general(&input, &pb, &b) - f1_closed(&input, pb.q());
        prop_assert!((gap - input.overlap_weight()).abs() <= 1e-12);
    }

    #[test]
    fn f2_real_symmetric_in_inputs(theta in 0.0f64..std::f64::consts::TAU, q in 0.0f64..=1.0) {
        let (a, b) = (theta.cos(), theta.sin());
        prop_assert!((f2_real(a, b, q) - f2_real(b, a, q)).abs() <= 1e-15);
    }

    #[test]
    fn max_f2_dominates_every_q(ab in -0.499f64..0.499, q in 0.0f64..=1.0) {
        let (a, b) = real_pair_for_ab(ab).unwrap();
        prop_assert!(max_f2(ab).unwrap() >= f2_real(a, b, q) - 1e-12);
    }
}
