//! Circuit templates with symbolic slots, the hardware-efficient ansatz and
//! embedding families, and the partitioned [`Model`] used for spectral analysis.

mod ansatz;
mod model;
mod template;

pub use ansatz::{hea, hee, parse_axes, qnn, Entangler, Layout, OutputType, QnnSpec, DATA_VAR};
pub use model::{data_gate_count, Model, Variable};
pub use template::{bind, Bindings, Block, CircuitTemplate};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::sim::{run, zero_state, Gate, Pauli, Slot};
    use std::collections::BTreeMap;

    #[test]
    fn bind_zero_angles_is_identity() {
        let t = hea(2, 1, &Layout::single(Pauli::Y, Entangler::Chain)).unwrap();
        let circ = bind(&t, &[vec![0.0, 0.0]], &BTreeMap::new()).unwrap();
        let s = run(&circ, 2).unwrap();
        assert!(s
            .amplitudes()
            .iter()
            .zip(zero_state(2).unwrap().amplitudes())
            .all(|(a, b)| (a - b).norm() < 1e-12));
    }

    #[test]
    fn bind_dimension_mismatch() {
        let t = hea(2, 1, &Layout::single(Pauli::Y, Entangler::Chain)).unwrap();
        let err = bind(&t, &[vec![0.0, 0.0, 0.0]], &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::Binding(ref m) if m.contains("layer0")));
        let err = bind(&t, &[], &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::Binding(_)));
    }

    #[test]
    fn bind_missing_data_names_variable() {
        let t = hee(2, 1, &Layout::single(Pauli::Y, Entangler::Chain)).unwrap();
        let err = bind(&t, &[], &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::Binding(ref m) if m.contains("`x`")));
    }

    #[test]
    fn bind_substitutes_data() {
        let t = hee(2, 1, &Layout::single(Pauli::Y, Entangler::Chain)).unwrap();
        let data = BTreeMap::from([("x".to_string(), std::f64::consts::PI)]);
        let circ = bind(&t, &[], &data).unwrap();
        let angles: Vec<_> = circ.gates().iter().filter_map(Gate::angle).collect();
        assert_eq!(angles, vec![std::f64::consts::PI; 2]);
        assert_eq!(circ.len(), t.gates().len());
    }

    #[test]
    fn template_validation() {
        let bad_block = CircuitTemplate::new(
            1,
            vec![Gate::rx(0, Slot::param(1, 0))],
            vec![Block::new("a", 1)],
            vec![],
        );
        assert!(matches!(bad_block, Err(Error::Structure(_))));
        let bad_index = CircuitTemplate::new(
            1,
            vec![Gate::rx(0, Slot::param(0, 2))],
            vec![Block::new("a", 2)],
            vec![],
        );
        assert!(matches!(bad_index, Err(Error::Structure(_))));
        let bad_var = CircuitTemplate::new(1, vec![Gate::rx(0, Slot::data("y"))], vec![], vec![]);
        assert!(matches!(bad_var, Err(Error::Structure(_))));
    }

    #[test]
    fn template_json_round_trip() {
        let t = QnnSpec::new(3, 2).template().unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in ["n", "gates", "blocks", "data_vars"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let back: CircuitTemplate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);

        let bad = r#"{"n": 1, "gates": [{"kind": "cnot", "qubits": [0, 1]}]}"#;
        assert!(serde_json::from_str::<CircuitTemplate>(bad).is_err());
    }

    #[test]
    fn block_partition_covers_every_slot() {
        let t = QnnSpec::new(3, 4).template().unwrap();
        let mut seen: Vec<Vec<usize>> = t.blocks().iter().map(|b| vec![0; b.dim]).collect();
        for g in t.gates() {
            if let Some(Slot::Parameter { block, index }) = g.slot {
                seen[block][index] += 1;
            }
        }
        assert!(seen.iter().flatten().all(|&c| c == 1));
        let flat: usize = seen.iter().map(Vec::len).sum();
        assert_eq!(flat, t.num_params());
        assert_eq!(t.locate_param(2), Some((0, 2)));
        assert_eq!(t.locate_param(3), None);
    }
}
