use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::template::{Bindings, CircuitTemplate};
use crate::error::{Error, Result};
use crate::sim::{BoundCircuit, Observable, Slot, Statevector};

/// Scalar variable chosen for spectral analysis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    Data(String),
    Parameter { block: usize, index: usize },
}

impl Variable {
    pub fn data(name: impl Into<String>) -> Self {
        Variable::Data(name.into())
    }

    pub fn param(block: usize, index: usize) -> Self {
        Variable::Parameter { block, index }
    }

    pub fn matches(&self, slot: &Slot) -> bool {
        match (self, slot) {
            (Variable::Data(a), Slot::Data(b)) => a == b,
            (Variable::Parameter { block, index }, Slot::Parameter { block: b, index: i }) => {
                block == b && index == i
            }
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Variable::Data(name) => name.clone(),
            Variable::Parameter { block, index } => format!("theta[{block}][{index}]"),
        }
    }
}

/// A circuit template, an observable, the variable singled out for Fourier
/// analysis and values for everything else.
///
/// Gates before the first one touching the variable prepare the state the
/// variable's block acts on; the gates after it together with the
/// observable form the effective measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Model {
    template: CircuitTemplate,
    observable: Observable,
    fourier_var: Variable,
    fixed: Bindings,
}

impl Model {
    pub fn new(
        template: CircuitTemplate,
        observable: Observable,
        fourier_var: Variable,
        fixed: Bindings,
    ) -> Result<Self> {
        let n = template.num_qubits();
        match &observable {
            Observable::Pauli(p) if p.len() > n => {
                return Err(Error::Structure(format!(
                    "Pauli observable on {} qubits for a {n}-qubit template",
                    p.len()
                )))
            }
            Observable::Projector(b) if b.len() != n => {
                return Err(Error::Structure(format!(
                    "projector on {} qubits for a {n}-qubit template",
                    b.len()
                )))
            }
            _ => {}
        }
        let model = Model {
            template,
            observable,
            fourier_var,
            fixed,
        };
        if model.data_gate_count() == 0 {
            return Err(Error::Structure(format!(
                "Fourier variable `{}` does not drive any rotation",
                model.fourier_var.label()
            )));
        }
        // Validate the fixed values once, with a placeholder for the variable.
        let probe = model.bindings_at(0.0);
        model
            .template
            .bind_range(0..0, &probe.params, &probe.data)?;
        Ok(model)
    }

    pub fn template(&self) -> &CircuitTemplate {
        &self.template
    }

    pub fn observable(&self) -> &Observable {
        &self.observable
    }

    pub fn fourier_var(&self) -> &Variable {
        &self.fourier_var
    }

    pub fn fixed(&self) -> &Bindings {
        &self.fixed
    }

    pub fn num_qubits(&self) -> usize {
        self.template.num_qubits()
    }

    /// Number of rotations driven by the Fourier variable. The output is a
    /// trigonometric polynomial of at most this degree in the variable.
    pub fn data_gate_count(&self) -> usize {
        self.template
            .gates()
            .iter()
            .filter(|g| g.slot.as_ref().is_some_and(|s| self.fourier_var.matches(s)))
            .count()
    }

    /// Same model with different fixed values.
    pub fn with_fixed(&self, fixed: Bindings) -> Result<Self> {
        Model::new(
            self.template.clone(),
            self.observable.clone(),
            self.fourier_var.clone(),
            fixed,
        )
    }

    /// Fixed values with the Fourier variable set to `value`.
    pub fn bindings_at(&self, value: f64) -> Bindings {
        let mut b = self.fixed.clone();
        match &self.fourier_var {
            Variable::Data(name) => {
                b.data.insert(name.clone(), value);
            }
            Variable::Parameter { block, index } => {
                if let Some(slot) = b.params.get_mut(*block).and_then(|v| v.get_mut(*index)) {
                    *slot = value;
                }
            }
        }
        b
    }

    /// Bound circuit for the gates in `range` with the variable at `value`.
    pub fn bind_range(&self, range: Range<usize>, value: f64) -> Result<BoundCircuit> {
        let b = self.bindings_at(value);
        self.template.bind_range(range, &b.params, &b.data)
    }

    /// Final state with the variable at `value`.
    pub fn state(&self, value: f64) -> Result<Statevector> {
        let circuit = self.bind_range(0..self.template.gates().len(), value)?;
        crate::sim::run(&circuit, self.num_qubits())
    }

    /// Model output with the Fourier variable at `value`.
    pub fn output(&self, value: f64) -> Result<f64> {
        self.observable.evaluate(&self.state(value)?)
    }

    /// State after the first `split` gates with the variable at `value`.
    pub fn state_prefix(&self, split: usize, value: f64) -> Result<Statevector> {
        let mut state = Statevector::zero(self.num_qubits())?;
        self.bind_range(0..split, value)?.apply_to(&mut state)?;
        Ok(state)
    }

    /// Output when the first `split` gates have already produced `prefix`.
    pub fn output_from(&self, prefix: &Statevector, split: usize, value: f64) -> Result<f64> {
        let mut state = prefix.clone();
        self.bind_range(split..self.template.gates().len(), value)?
            .apply_to(&mut state)?;
        self.observable.evaluate(&state)
    }

    /// Output for arbitrary bindings, ignoring the stored fixed values.
    pub fn output_with(&self, bindings: &Bindings) -> Result<f64> {
        let circuit = self.template.bind_range(
            0..self.template.gates().len(),
            &bindings.params,
            &bindings.data,
        )?;
        self.observable
            .evaluate(&crate::sim::run(&circuit, self.num_qubits())?)
    }
}

/// Rotation count of the model's Fourier variable.
pub fn data_gate_count(model: &Model) -> usize {
    model.data_gate_count()
}
