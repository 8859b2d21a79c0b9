use std::f64::consts::TAU;

use pqc_fourier::circuits::{
    hea, hee, Bindings, Entangler, Layout, Model, OutputType, QnnSpec, Variable, DATA_VAR,
};
use pqc_fourier::fourier::{
    evaluate_on_grid, extract_coefficients, model_spectrum, model_spectrum_on, nyquist,
    parseval_sum, sample_spectra, sum_sq_statistics,
};
use pqc_fourier::seeding::{substream, uniform_angles};
use pqc_fourier::sim::{Observable, Pauli, PauliString};
use pqc_fourier::Error;
use proptest::prelude::*;

fn layout() -> impl Strategy<Value = Layout> {
    let axes = prop_oneof![
        Just(vec![Pauli::Y]),
        Just(vec![Pauli::X]),
        Just(vec![Pauli::Z, Pauli::Y]),
        Just(vec![Pauli::Y, Pauli::Z]),
        Just(vec![Pauli::X, Pauli::Y, Pauli::Z]),
    ];
    let ent = prop_oneof![Just(Entangler::Chain), Just(Entangler::Ring)];
    (axes, ent).prop_map(|(a, e)| Layout::new(a, e))
}

fn output() -> impl Strategy<Value = OutputType> {
    prop_oneof![Just(OutputType::Expectation), Just(OutputType::Probability)]
}

/// Random QNN model with its trainable angles.
fn qnn_model() -> impl Strategy<Value = (QnnSpec, Vec<f64>)> {
    (2usize..=3, 1usize..=4, layout(), output(), any::<u64>()).prop_map(|(n, l, lay, out, seed)| {
        let spec = QnnSpec::new(n, l).with_layout(lay).with_output(out);
        let theta = uniform_angles(&mut substream(seed, 0), n);
        (spec, theta)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_grids_agree((spec, theta) in qnn_model(), extra in 1usize..12) {
        let m = spec.model(&theta).unwrap();
        let r = m.data_gate_count();
        let a = model_spectrum(&m).unwrap();
        let b = model_spectrum_on(&m, nyquist(r) + extra).unwrap();
        for k in -(r as i64)..=(r as i64) {
            prop_assert!((a.coeff(k) - b.coeff(k)).norm() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn exact_spectrum_invariants((spec, theta) in qnn_model(), xs in prop::collection::vec(0.0..TAU, 5)) {
        let m = spec.model(&theta).unwrap();
        let s = model_spectrum(&m).unwrap();
        prop_assert!(s.hermitian_defect() < 1e-10);

        let grid = evaluate_on_grid(&m, s.grid_size()).unwrap();
        let mean_sq = grid.iter().map(|f| f * f).sum::<f64>() / grid.len() as f64;
        prop_assert!((parseval_sum(&s) - mean_sq).abs() < 1e-10);

        for x in xs {
            let direct = m.output(x).unwrap();
            prop_assert!((s.reconstruct(x) - direct).abs() < 1e-8);
            prop_assert!((m.output(x + TAU).unwrap() - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn outputs_are_periodic_in_every_parameter(
        n in 2usize..=3,
        layers in 1usize..=4,
        lay in layout(),
        seed in any::<u64>(),
        x in 0.0..TAU,
    ) {
        let t = hea(n, layers, &lay).unwrap();
        let theta = uniform_angles(&mut substream(seed, 1), t.num_params());
        let model = Model::new(
            t.clone(),
            Observable::Pauli(PauliString::all_z(n)),
            Variable::param(0, 0),
            Bindings::params(t.split_params(&theta).unwrap()),
        )
        .unwrap();
        let base = model.output(x).unwrap();
        for i in 0..t.num_params() {
            let mut shifted = theta.clone();
            shifted[i] += TAU;
            let b = Bindings::params(t.split_params(&shifted).unwrap());
            let f = model.with_fixed(b).unwrap().output(x).unwrap();
            prop_assert!((f - base).abs() < 1e-10, "parameter {i}");
        }
    }
}

#[test]
fn two_layer_embedding_on_nine_and_seventeen_points() {
    let t = hee(2, 2, &Layout::single(Pauli::Y, Entangler::Chain)).unwrap();
    let m = Model::new(
        t,
        Observable::Pauli(PauliString::all_z(2)),
        Variable::data(DATA_VAR),
        Bindings::default(),
    )
    .unwrap();
    assert_eq!(m.data_gate_count(), 4);
    let a = model_spectrum_on(&m, 9).unwrap();
    let b = model_spectrum_on(&m, 17).unwrap();
    for k in -4..=4 {
        assert!((a.coeff(k) - b.coeff(k)).norm() < 1e-10);
    }
}

#[test]
fn support_is_within_band_limit() {
    let spec = QnnSpec::new(2, 3);
    let m = spec.model(&[0.4, 1.9]).unwrap();
    let r = m.data_gate_count();
    // Extract as if the band limit were 3R; the extra coefficients vanish.
    let big = 3 * r;
    let samples = evaluate_on_grid(&m, nyquist(big)).unwrap();
    let s = extract_coefficients(&samples, big).unwrap();
    for k in (r as i64 + 1)..=(big as i64) {
        assert!(s.coeff(k).norm() < 1e-12 && s.coeff(-k).norm() < 1e-12);
    }
}

#[test]
fn coarse_grid_is_rejected() {
    let m = QnnSpec::new(2, 2).model(&[0.1, 0.2]).unwrap();
    match model_spectrum_on(&m, 8) {
        Err(Error::Nyquist { required, got }) => assert_eq!((required, got), (9, 8)),
        other => panic!("expected Nyquist error, got {other:?}"),
    }
}

#[test]
fn parameter_variable_has_unit_band_limit() {
    let t = hea(3, 2, &Layout::default()).unwrap();
    let theta = uniform_angles(&mut substream(3, 3), t.num_params());
    let m = Model::new(
        t.clone(),
        Observable::Pauli(PauliString::all_z(3)),
        Variable::param(1, 2),
        Bindings::params(t.split_params(&theta).unwrap()),
    )
    .unwrap();
    let s = model_spectrum(&m).unwrap();
    assert_eq!(s.max_freq(), 1);
    assert_eq!(s.coeffs().len(), 3);
}

#[test]
fn shared_prefix_matches_direct_spectra() {
    let spec =
        QnnSpec::new(3, 2).with_layout(Layout::new(vec![Pauli::Z, Pauli::Y], Entangler::Ring));
    let spectra = sample_spectra(&spec, 6, 11).unwrap();
    for (s, shared) in spectra.iter().enumerate() {
        let theta = uniform_angles(&mut substream(11, s as u64), 3);
        let direct = model_spectrum(&spec.model(&theta).unwrap()).unwrap();
        for (a, b) in shared.coeffs().iter().zip(direct.coeffs()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

#[test]
fn sum_square_statistics_are_reproducible() {
    let spec = QnnSpec::new(2, 4);
    let a = sum_sq_statistics(&spec, 40, 5).unwrap();
    let b = sum_sq_statistics(&spec, 40, 5).unwrap();
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    assert_eq!(a.variance.to_bits(), b.variance.to_bits());
    let c = sum_sq_statistics(&spec, 40, 6).unwrap();
    assert_ne!(a.mean.to_bits(), c.mean.to_bits());
    assert!(matches!(
        sum_sq_statistics(&spec, 1, 5),
        Err(Error::Config(_))
    ));
}
