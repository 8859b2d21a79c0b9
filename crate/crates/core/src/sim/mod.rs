//! Dense statevector simulation.
//!
//! Rotations follow the `exp(-i angle P / 2)` convention, so every Pauli
//! generator has eigenvalues `+-1/2`. Amplitude index bit `q` holds qubit `q`.

mod gate;
mod observable;
mod state;

pub use gate::{Gate, GateKind, Pauli, Slot};
pub use observable::{expectation, probability, Bitstring, Observable, PauliString};
pub(crate) use state::check_qubits;
pub use state::{apply_gate, zero_state, Statevector, MAX_QUBITS};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gate list whose rotation slots are all constants.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundCircuit {
    gates: Vec<Gate>,
}

impl BoundCircuit {
    pub fn new(gates: Vec<Gate>) -> Result<Self> {
        if let Some(g) = gates
            .iter()
            .find(|g| g.is_rotation() && g.angle().is_none())
        {
            return Err(Error::Binding(format!(
                "rotation on qubits {:?} has unresolved slot {:?}",
                g.qubits, g.slot
            )));
        }
        Ok(BoundCircuit { gates })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Apply every gate to `state` in order.
    pub fn apply_to(&self, state: &mut Statevector) -> Result<()> {
        self.gates.iter().try_for_each(|g| state.apply(g))
    }
}

/// Simulate `circuit` from `|0...0>` on `n` qubits.
pub fn run(circuit: &BoundCircuit, n: usize) -> Result<Statevector> {
    let mut state = Statevector::zero(n)?;
    circuit.apply_to(&mut state)?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    #[test]
    fn zero_state_layouts() {
        assert_eq!(
            zero_state(1).unwrap().amplitudes(),
            &[c(1.0, 0.0), c(0.0, 0.0)]
        );
        assert_eq!(
            zero_state(2).unwrap().amplitudes(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
        let s = zero_state(3).unwrap();
        assert_eq!(s.amplitudes().len(), 8);
        assert!((s.norm_sqr() - 1.0).abs() < TOL);
        assert!(s.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn zero_state_rejects_out_of_range() {
        let err = zero_state(0).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        let err = zero_state(MAX_QUBITS + 1).unwrap_err();
        assert!(err.to_string().contains(&MAX_QUBITS.to_string()));
    }

    #[test]
    fn rz_on_zero_is_phase() {
        let theta = 0.77;
        let s = apply_gate(&zero_state(1).unwrap(), &Gate::rz(0, Slot::Constant(theta))).unwrap();
        let want = [Complex64::from_polar(1.0, -theta / 2.0), c(0.0, 0.0)];
        assert!(close(s.amplitudes(), &want, TOL));
    }

    #[test]
    fn rx_zero_is_identity() {
        let mut s = zero_state(2).unwrap();
        s.apply(&Gate::hadamard(0)).unwrap();
        s.apply(&Gate::ry(1, Slot::Constant(0.4))).unwrap();
        let t = apply_gate(&s, &Gate::rx(1, Slot::Constant(0.0))).unwrap();
        assert!(close(s.amplitudes(), t.amplitudes(), TOL));
    }

    #[test]
    fn unbound_slot_is_binding_error() {
        let err = apply_gate(&zero_state(1).unwrap(), &Gate::rx(0, Slot::data("x"))).unwrap_err();
        assert!(matches!(err, Error::Binding(_)));
        let err = BoundCircuit::new(vec![Gate::ry(0, Slot::param(0, 0))]).unwrap_err();
        assert!(matches!(err, Error::Binding(_)));
    }

    #[test]
    fn out_of_range_qubit_is_structural() {
        let err = apply_gate(&zero_state(2).unwrap(), &Gate::cnot(0, 2)).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
        let err = apply_gate(&zero_state(2).unwrap(), &Gate::cnot(1, 1)).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
    }

    #[test]
    fn hadamard_expectation_and_probabilities() {
        let s = apply_gate(&zero_state(1).unwrap(), &Gate::hadamard(0)).unwrap();
        let z: PauliString = "Z".parse().unwrap();
        assert!(expectation(&s, &z).unwrap().abs() < TOL);

        let mut s = zero_state(2).unwrap();
        s.apply(&Gate::hadamard(0)).unwrap();
        s.apply(&Gate::hadamard(1)).unwrap();
        for b in ["00", "01", "10", "11"] {
            let p = probability(&s, &b.parse().unwrap()).unwrap();
            assert!((p - 0.25).abs() < TOL);
        }
    }

    #[test]
    fn basis_projectors() {
        let s = zero_state(2).unwrap();
        assert_eq!(probability(&s, &"00".parse().unwrap()).unwrap(), 1.0);
        assert_eq!(probability(&s, &"11".parse().unwrap()).unwrap(), 0.0);
        let err = probability(&s, &"0".parse().unwrap()).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
        let all_z = PauliString::all_z(3);
        assert_eq!(expectation(&zero_state(3).unwrap(), &all_z).unwrap(), 1.0);
    }

    #[test]
    fn bitstring_index_is_little_endian() {
        let b: Bitstring = "100".parse().unwrap();
        assert_eq!(b.index(), 1);
        let b: Bitstring = "011".parse().unwrap();
        assert_eq!(b.index(), 6);
        let mut s = zero_state(3).unwrap();
        s.apply(&Gate::rx(0, Slot::Constant(std::f64::consts::PI)))
            .unwrap();
        assert!((probability(&s, &"100".parse().unwrap()).unwrap() - 1.0).abs() < TOL);
    }

    #[test]
    fn bell_state() {
        let circ = BoundCircuit::new(vec![Gate::hadamard(0), Gate::cnot(0, 1)]).unwrap();
        let s = run(&circ, 2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)];
        assert!(close(s.amplitudes(), &want, TOL));
    }

    #[test]
    fn empty_circuit_is_zero_state() {
        let s = run(&BoundCircuit::default(), 2).unwrap();
        assert_eq!(s, zero_state(2).unwrap());
    }

    #[test]
    fn fixed_unitary_matches_builtin() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let had = [c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)];
        let fixed = Gate::fixed(&had, &[1]).unwrap();
        let mut a = zero_state(2).unwrap();
        a.apply(&Gate::ry(0, Slot::Constant(0.3))).unwrap();
        let b = apply_gate(&a, &fixed).unwrap();
        let want = apply_gate(&a, &Gate::hadamard(1)).unwrap();
        assert!(close(b.amplitudes(), want.amplitudes(), TOL));

        // CNOT with control qubits[0] as a 4x4 matrix in the local basis.
        let o = c(0.0, 0.0);
        let l = c(1.0, 0.0);
        let cx = [l, o, o, o, o, o, o, l, o, o, l, o, o, l, o, o];
        let fixed = Gate::fixed(&cx, &[0, 1]).unwrap();
        let mut a = zero_state(2).unwrap();
        a.apply(&Gate::ry(0, Slot::Constant(1.1))).unwrap();
        a.apply(&Gate::rx(1, Slot::Constant(0.4))).unwrap();
        let b = apply_gate(&a, &fixed).unwrap();
        let want = apply_gate(&a, &Gate::cnot(0, 1)).unwrap();
        assert!(close(b.amplitudes(), want.amplitudes(), TOL));
    }

    #[test]
    fn fixed_rejects_non_unitary() {
        let m = [c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(Gate::fixed(&m, &[0]), Err(Error::Structure(_))));
    }

    #[test]
    fn multi_qubit_rotation_matches_basis_change() {
        // exp(-i t ZZ/2) = CNOT (I x RZ(t)) CNOT
        let t = 0.9;
        let mut prep = zero_state(2).unwrap();
        prep.apply(&Gate::hadamard(0)).unwrap();
        prep.apply(&Gate::ry(1, Slot::Constant(0.6))).unwrap();
        let a = apply_gate(
            &prep,
            &Gate::rotation(&[(0, Pauli::Z), (1, Pauli::Z)], Slot::Constant(t)),
        )
        .unwrap();
        let mut b = prep.clone();
        b.apply(&Gate::cnot(0, 1)).unwrap();
        b.apply(&Gate::rz(1, Slot::Constant(t))).unwrap();
        b.apply(&Gate::cnot(0, 1)).unwrap();
        assert!(close(a.amplitudes(), b.amplitudes(), TOL));
    }

    #[test]
    fn gate_json_shape() {
        let g = Gate::ry(1, Slot::param(0, 1));
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["kind"], "rotation");
        assert_eq!(v["qubits"], serde_json::json!([1]));
        assert_eq!(v["slot"]["parameter"]["index"], 1);
        let back: Gate = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
        let v = serde_json::to_value(Gate::cnot(0, 1)).unwrap();
        assert!(v.get("slot").is_none());
    }
}
