use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Single-qubit Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" => Ok(Pauli::I),
            "X" | "x" => Ok(Pauli::X),
            "Y" | "y" => Ok(Pauli::Y),
            "Z" | "z" => Ok(Pauli::Z),
            other => Err(Error::Config(format!("unknown Pauli axis `{other}`"))),
        }
    }
}

/// Where a rotation gate gets its angle from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    /// Trainable parameter `index` of block `block`.
    Parameter { block: usize, index: usize },
    /// Named scalar data variable.
    Data(String),
    /// Fixed angle in radians.
    Constant(f64),
}

impl Slot {
    pub fn data(name: impl Into<String>) -> Self {
        Slot::Data(name.into())
    }

    pub fn param(block: usize, index: usize) -> Self {
        Slot::Parameter { block, index }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GateKind {
    /// `exp(-i angle P / 2)` where `paulis[j]` acts on `qubits[j]`.
    Rotation {
        paulis: Vec<Pauli>,
    },
    Hadamard,
    /// `qubits = [control, target]`.
    Cnot,
    /// Dense unitary on one or two qubits, row-major `[re, im]` pairs.
    /// The local basis index puts `qubits[0]` in the least significant bit.
    Fixed {
        matrix: Vec<[f64; 2]>,
    },
}

/// A gate together with the qubits it acts on and, for rotations, its angle slot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    #[serde(flatten)]
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<Slot>,
}

impl Gate {
    /// Multi-qubit Pauli rotation `exp(-i angle P / 2)`.
    pub fn rotation(terms: &[(usize, Pauli)], slot: Slot) -> Self {
        Gate {
            kind: GateKind::Rotation {
                paulis: terms.iter().map(|&(_, p)| p).collect(),
            },
            qubits: terms.iter().map(|&(q, _)| q).collect(),
            slot: Some(slot),
        }
    }

    pub fn axis_rotation(axis: Pauli, qubit: usize, slot: Slot) -> Self {
        Self::rotation(&[(qubit, axis)], slot)
    }

    pub fn rx(qubit: usize, slot: Slot) -> Self {
        Self::axis_rotation(Pauli::X, qubit, slot)
    }

    pub fn ry(qubit: usize, slot: Slot) -> Self {
        Self::axis_rotation(Pauli::Y, qubit, slot)
    }

    pub fn rz(qubit: usize, slot: Slot) -> Self {
        Self::axis_rotation(Pauli::Z, qubit, slot)
    }

    pub fn hadamard(qubit: usize) -> Self {
        Gate {
            kind: GateKind::Hadamard,
            qubits: vec![qubit],
            slot: None,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate {
            kind: GateKind::Cnot,
            qubits: vec![control, target],
            slot: None,
        }
    }

    /// Fixed unitary on one or two qubits. `matrix` is row-major.
    pub fn fixed(matrix: &[Complex64], qubits: &[usize]) -> Result<Self> {
        let gate = Gate {
            kind: GateKind::Fixed {
                matrix: matrix.iter().map(|z| [z.re, z.im]).collect(),
            },
            qubits: qubits.to_vec(),
            slot: None,
        };
        gate.check_shape()?;
        Ok(gate)
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self.kind, GateKind::Rotation { .. })
    }

    /// Resolved angle, if the slot is a constant.
    pub fn angle(&self) -> Option<f64> {
        match self.slot {
            Some(Slot::Constant(a)) => Some(a),
            _ => None,
        }
    }

    /// Copy of this gate with its slot replaced by a constant angle.
    pub fn with_angle(&self, angle: f64) -> Self {
        Gate {
            slot: Some(Slot::Constant(angle)),
            ..self.clone()
        }
    }

    /// The inverse gate. Rotations must already be resolved.
    pub fn inverse(&self) -> Result<Self> {
        match &self.kind {
            GateKind::Rotation { .. } => {
                let angle = self.angle().ok_or_else(|| {
                    Error::Binding(format!("cannot invert rotation with slot {:?}", self.slot))
                })?;
                Ok(self.with_angle(-angle))
            }
            GateKind::Hadamard | GateKind::Cnot => Ok(self.clone()),
            GateKind::Fixed { .. } => {
                let m = self.fixed_matrix().expect("fixed gate");
                let dim = self.local_dim();
                let mut adj = vec![Complex64::new(0.0, 0.0); dim * dim];
                for r in 0..dim {
                    for c in 0..dim {
                        adj[c * dim + r] = m[r * dim + c].conj();
                    }
                }
                Gate::fixed(&adj, &self.qubits)
            }
        }
    }

    pub(crate) fn local_dim(&self) -> usize {
        1 << self.qubits.len()
    }

    pub(crate) fn fixed_matrix(&self) -> Option<Vec<Complex64>> {
        match &self.kind {
            GateKind::Fixed { matrix } => Some(
                matrix
                    .iter()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect(),
            ),
            _ => None,
        }
    }

    fn check_shape(&self) -> Result<()> {
        let arity = self.qubits.len();
        match &self.kind {
            GateKind::Rotation { paulis } => {
                if arity == 0 || paulis.len() != arity {
                    return Err(Error::Structure(format!(
                        "rotation lists {} Pauli factors for {} qubits",
                        paulis.len(),
                        arity
                    )));
                }
            }
            GateKind::Hadamard if arity != 1 => {
                return Err(Error::Structure(
                    "Hadamard acts on exactly one qubit".into(),
                ));
            }
            GateKind::Cnot if arity != 2 => {
                return Err(Error::Structure("CNOT needs a control and a target".into()));
            }
            GateKind::Fixed { matrix } => {
                if !(1..=2).contains(&arity) {
                    return Err(Error::Structure(
                        "fixed unitaries act on one or two qubits".into(),
                    ));
                }
                let dim = 1 << arity;
                if matrix.len() != dim * dim {
                    return Err(Error::Structure(format!(
                        "fixed unitary on {arity} qubit(s) needs {} entries, got {}",
                        dim * dim,
                        matrix.len()
                    )));
                }
                let m = self.fixed_matrix().expect("fixed gate");
                for r in 0..dim {
                    for c in 0..dim {
                        let dot: Complex64 = (0..dim)
                            .map(|k| m[k * dim + r].conj() * m[k * dim + c])
                            .sum();
                        let want = if r == c { 1.0 } else { 0.0 };
                        if (dot - want).norm() > 1e-10 {
                            return Err(Error::Structure("fixed matrix is not unitary".into()));
                        }
                    }
                }
            }
            _ => {}
        }
        if self.slot.is_some() && !self.is_rotation() {
            return Err(Error::Structure(format!(
                "only rotations carry a slot, found one on {:?}",
                self.kind
            )));
        }
        for (i, &q) in self.qubits.iter().enumerate() {
            if self.qubits[..i].contains(&q) {
                return Err(Error::Structure(format!("qubit {q} repeated in one gate")));
            }
        }
        Ok(())
    }

    /// Check the gate is well formed on an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<()> {
        self.check_shape()?;
        if let Some(&q) = self.qubits.iter().find(|&&q| q >= n) {
            return Err(Error::Structure(format!(
                "qubit index {q} out of range for {n} qubits"
            )));
        }
        Ok(())
    }
}
