use std::collections::BTreeMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{check_qubits, BoundCircuit, Gate, Slot};

/// Named group of trainable parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub dim: usize,
}

impl Block {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        Block {
            name: name.into(),
            dim,
        }
    }
}

/// Gate sequence with unresolved parameter and data slots.
///
/// JSON form: `{"n": .., "gates": [{"kind": .., "qubits": [..], "slot": ..}], "blocks": [..], "data_vars": [..]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTemplate")]
pub struct CircuitTemplate {
    n: usize,
    gates: Vec<Gate>,
    blocks: Vec<Block>,
    data_vars: Vec<String>,
}

#[derive(Deserialize)]
struct RawTemplate {
    n: usize,
    gates: Vec<Gate>,
    #[serde(default)]
    blocks: Vec<Block>,
    #[serde(default)]
    data_vars: Vec<String>,
}

impl TryFrom<RawTemplate> for CircuitTemplate {
    type Error = Error;

    fn try_from(raw: RawTemplate) -> Result<Self> {
        CircuitTemplate::new(raw.n, raw.gates, raw.blocks, raw.data_vars)
    }
}

/// Concrete values for every parameter block and data variable of a template.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Bindings {
    pub params: Vec<Vec<f64>>,
    pub data: BTreeMap<String, f64>,
}

impl Bindings {
    pub fn new(params: Vec<Vec<f64>>, data: BTreeMap<String, f64>) -> Self {
        Bindings { params, data }
    }

    pub fn params(params: Vec<Vec<f64>>) -> Self {
        Bindings {
            params,
            data: BTreeMap::new(),
        }
    }

    pub fn with_data(mut self, name: impl Into<String>, value: f64) -> Self {
        self.data.insert(name.into(), value);
        self
    }
}

impl CircuitTemplate {
    pub fn new(
        n: usize,
        gates: Vec<Gate>,
        blocks: Vec<Block>,
        data_vars: Vec<String>,
    ) -> Result<Self> {
        check_qubits(n)?;
        for (i, name) in data_vars.iter().enumerate() {
            if data_vars[..i].contains(name) {
                return Err(Error::Structure(format!(
                    "data variable `{name}` declared twice"
                )));
            }
        }
        for gate in &gates {
            gate.validate(n)?;
            match &gate.slot {
                Some(Slot::Parameter { block, index }) => {
                    let b = blocks.get(*block).ok_or_else(|| {
                        Error::Structure(format!("slot references missing block {block}"))
                    })?;
                    if *index >= b.dim {
                        return Err(Error::Structure(format!(
                            "slot index {index} out of range for block `{}` of dimension {}",
                            b.name, b.dim
                        )));
                    }
                }
                Some(Slot::Data(name)) if !data_vars.contains(name) => {
                    return Err(Error::Structure(format!(
                        "undeclared data variable `{name}`"
                    )));
                }
                _ => {}
            }
        }
        Ok(CircuitTemplate {
            n,
            gates,
            blocks,
            data_vars,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn data_vars(&self) -> &[String] {
        &self.data_vars
    }

    /// Total number of trainable parameters across blocks.
    pub fn num_params(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    /// `(block, index)` for flat parameter position `flat`, blocks in order.
    pub fn locate_param(&self, flat: usize) -> Option<(usize, usize)> {
        let mut rest = flat;
        for (b, block) in self.blocks.iter().enumerate() {
            if rest < block.dim {
                return Some((b, rest));
            }
            rest -= block.dim;
        }
        None
    }

    /// Split a flat parameter vector into per-block vectors.
    pub fn split_params(&self, flat: &[f64]) -> Result<Vec<Vec<f64>>> {
        if flat.len() != self.num_params() {
            return Err(Error::Binding(format!(
                "expected {} parameters, got {}",
                self.num_params(),
                flat.len()
            )));
        }
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut at = 0;
        for b in &self.blocks {
            out.push(flat[at..at + b.dim].to_vec());
            at += b.dim;
        }
        Ok(out)
    }

    /// Template made of `self` followed by `other`; blocks and data variables are merged.
    pub fn then(&self, other: &CircuitTemplate) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Structure(format!(
                "cannot append a {}-qubit template to a {}-qubit one",
                other.n, self.n
            )));
        }
        let offset = self.blocks.len();
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().map(|g| match &g.slot {
            Some(Slot::Parameter { block, index }) => Gate {
                slot: Some(Slot::Parameter {
                    block: block + offset,
                    index: *index,
                }),
                ..g.clone()
            },
            _ => g.clone(),
        }));
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        let mut data_vars = self.data_vars.clone();
        for v in &other.data_vars {
            if !data_vars.contains(v) {
                data_vars.push(v.clone());
            }
        }
        CircuitTemplate::new(self.n, gates, blocks, data_vars)
    }

    fn check_bindings(&self, params: &[Vec<f64>], data: &BTreeMap<String, f64>) -> Result<()> {
        if params.len() != self.blocks.len() {
            return Err(Error::Binding(format!(
                "template has {} parameter block(s), got {}",
                self.blocks.len(),
                params.len()
            )));
        }
        for (block, values) in self.blocks.iter().zip(params) {
            if values.len() != block.dim {
                return Err(Error::Binding(format!(
                    "block `{}` has dimension {}, got {} value(s)",
                    block.name,
                    block.dim,
                    values.len()
                )));
            }
        }
        if let Some(missing) = self.data_vars.iter().find(|v| !data.contains_key(*v)) {
            return Err(Error::Binding(format!("missing data variable `{missing}`")));
        }
        Ok(())
    }

    /// Resolve the gates in `range` against the given values.
    pub fn bind_range(
        &self,
        range: Range<usize>,
        params: &[Vec<f64>],
        data: &BTreeMap<String, f64>,
    ) -> Result<BoundCircuit> {
        self.check_bindings(params, data)?;
        let gates = self.gates[range]
            .iter()
            .map(|g| match &g.slot {
                Some(Slot::Parameter { block, index }) => g.with_angle(params[*block][*index]),
                Some(Slot::Data(name)) => g.with_angle(data[name]),
                _ => g.clone(),
            })
            .collect();
        BoundCircuit::new(gates)
    }
}

/// Resolve every slot of `template`, preserving gate order.
pub fn bind(
    template: &CircuitTemplate,
    params: &[Vec<f64>],
    data: &BTreeMap<String, f64>,
) -> Result<BoundCircuit> {
    template.bind_range(0..template.gates.len(), params, data)
}
