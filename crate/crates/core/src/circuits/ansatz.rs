use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::model::{Model, Variable};
use super::template::{Bindings, Block, CircuitTemplate};
use crate::error::{Error, Result};
use crate::sim::{Bitstring, Gate, Observable, Pauli, PauliString, Slot};

/// Name of the scalar data variable fed to the embedding.
pub const DATA_VAR: &str = "x";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entangler {
    /// CNOT(0,1), CNOT(1,2), ..., CNOT(n-2,n-1).
    #[default]
    Chain,
    /// Chain plus CNOT(n-1,0).
    Ring,
}

impl FromStr for Entangler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "chain" => Ok(Entangler::Chain),
            "ring" => Ok(Entangler::Ring),
            other => Err(Error::Config(format!("unknown entangler `{other}`"))),
        }
    }
}

impl fmt::Display for Entangler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Entangler::Chain => "chain",
            Entangler::Ring => "ring",
        })
    }
}

/// Content of one hardware-efficient layer: for each axis in `axes`, one
/// rotation about that axis on every qubit, then the CNOT entangler.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layout {
    pub axes: Vec<Pauli>,
    pub entangler: Entangler,
}

impl Layout {
    pub fn new(axes: Vec<Pauli>, entangler: Entangler) -> Self {
        Layout { axes, entangler }
    }

    /// One rotation about `axis` per qubit.
    pub fn single(axis: Pauli, entangler: Entangler) -> Self {
        Layout {
            axes: vec![axis],
            entangler,
        }
    }

    /// Rotations per qubit per layer.
    pub fn rotations_per_qubit(&self) -> usize {
        self.axes.len()
    }

    /// Axes written as a lowercase string such as `"zy"`.
    pub fn axes_label(&self) -> String {
        self.axes
            .iter()
            .map(|p| p.as_char().to_ascii_lowercase())
            .collect()
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.axes.is_empty() || self.axes.contains(&Pauli::I) {
            return Err(Error::Config(format!(
                "layer axes must be a non-empty list of X/Y/Z, got `{}`",
                self.axes_label()
            )));
        }
        if n == 0 || (n < 2 && self.entangler == Entangler::Ring) {
            return Err(Error::Structure(format!(
                "{} entangler needs at least 2 qubits, got {n}",
                self.entangler
            )));
        }
        Ok(())
    }
}

/// Default layer: RY on every qubit, CNOT chain.
impl Default for Layout {
    fn default() -> Self {
        Layout::single(Pauli::Y, Entangler::Chain)
    }
}

/// Parse axis strings such as `"y"`, `"zy"` or `"z,y"`.
pub fn parse_axes(s: &str) -> Result<Vec<Pauli>> {
    s.chars()
        .filter(|c| !matches!(c, ',' | ' ' | '-'))
        .map(|c| c.to_string().parse::<Pauli>())
        .collect::<Result<Vec<_>>>()
}

fn entangler_gates(n: usize, entangler: Entangler) -> impl Iterator<Item = Gate> {
    let ring = (entangler == Entangler::Ring).then(|| Gate::cnot(n - 1, 0));
    (0..n - 1).map(|q| Gate::cnot(q, q + 1)).chain(ring)
}

fn layered(
    n: usize,
    layers: usize,
    layout: &Layout,
    mut slot: impl FnMut(usize, usize) -> Slot,
) -> Result<Vec<Gate>> {
    layout.check(n)?;
    if layers == 0 {
        return Err(Error::Config("layer count must be at least 1".into()));
    }
    let per_layer = n * layout.axes.len();
    let mut gates = Vec::with_capacity(layers * (per_layer + n));
    for layer in 0..layers {
        for (a, &axis) in layout.axes.iter().enumerate() {
            for q in 0..n {
                gates.push(Gate::axis_rotation(axis, q, slot(layer, a * n + q)));
            }
        }
        gates.extend(entangler_gates(n, layout.entangler));
    }
    Ok(gates)
}

/// Hardware-efficient ansatz: `layers` blocks, one per layer, each holding
/// `n * axes.len()` trainable angles.
pub fn hea(n: usize, layers: usize, layout: &Layout) -> Result<CircuitTemplate> {
    let gates = layered(n, layers, layout, Slot::param)?;
    let dim = n * layout.axes.len();
    let blocks = (0..layers)
        .map(|l| Block::new(format!("layer{l}"), dim))
        .collect();
    CircuitTemplate::new(n, gates, blocks, Vec::new())
}

/// Hardware-efficient embedding: the [`hea`] layout with every rotation
/// reading the single data variable [`DATA_VAR`].
pub fn hee(n: usize, layers: usize, layout: &Layout) -> Result<CircuitTemplate> {
    let gates = layered(n, layers, layout, |_, _| Slot::data(DATA_VAR))?;
    CircuitTemplate::new(n, gates, Vec::new(), vec![DATA_VAR.to_string()])
}

/// Output measured at the end of a QNN circuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputType {
    /// `<Z...Z>` on all qubits.
    #[default]
    Expectation,
    /// Probability of the all-zero bitstring.
    Probability,
}

impl OutputType {
    pub fn observable(self, n: usize) -> Observable {
        match self {
            OutputType::Expectation => Observable::Pauli(PauliString::all_z(n)),
            OutputType::Probability => Observable::Projector(Bitstring::zeros(n)),
        }
    }

    /// Sum of squared Fourier coefficients at the 2-design point:
    /// `1/(2^n+1)` for a traceless Pauli, `1/(2^(n-1)(2^n+1))` for a basis projector.
    pub fn design_value(self, n: usize) -> f64 {
        let d = 2f64.powi(n as i32);
        match self {
            OutputType::Expectation => 1.0 / (d + 1.0),
            OutputType::Probability => 1.0 / (2f64.powi(n as i32 - 1) * (d + 1.0)),
        }
    }
}

impl FromStr for OutputType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "expectation" => Ok(OutputType::Expectation),
            "probability" => Ok(OutputType::Probability),
            other => Err(Error::Config(format!("unknown output type `{other}`"))),
        }
    }
}

impl fmt::Display for OutputType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputType::Expectation => "expectation",
            OutputType::Probability => "probability",
        })
    }
}

/// Knobs of the QNN family: `L` embedding layers followed by one trainable layer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QnnSpec {
    pub n: usize,
    pub embed_layers: usize,
    pub layout: Layout,
    /// Axis of the single trainable rotation layer (one parameter per qubit).
    pub trainable_axis: Pauli,
    pub output: OutputType,
}

impl QnnSpec {
    pub fn new(n: usize, embed_layers: usize) -> Self {
        QnnSpec {
            n,
            embed_layers,
            layout: Layout::default(),
            trainable_axis: Pauli::Y,
            output: OutputType::Expectation,
        }
    }

    pub fn with_layout(mut self, layout: Layout) -> Self {
        self.layout = layout;
        self
    }

    pub fn with_output(mut self, output: OutputType) -> Self {
        self.output = output;
        self
    }

    /// `hee(n, L)` followed by a one-layer [`hea`] with `trainable_axis`.
    pub fn template(&self) -> Result<CircuitTemplate> {
        let embed = hee(self.n, self.embed_layers, &self.layout)?;
        let train = hea(
            self.n,
            1,
            &Layout::single(self.trainable_axis, self.layout.entangler),
        )?;
        embed.then(&train)
    }

    /// Model with the trainable angles bound to `theta` and `x` as Fourier variable.
    pub fn model(&self, theta: &[f64]) -> Result<Model> {
        let template = self.template()?;
        let params = template.split_params(theta)?;
        Model::new(
            template,
            self.output.observable(self.n),
            Variable::data(DATA_VAR),
            Bindings::params(params),
        )
    }
}

/// QNN model with all trainable angles zero; see [`QnnSpec`].
pub fn qnn(n: usize, embed_layers: usize, layout: &Layout) -> Result<Model> {
    QnnSpec::new(n, embed_layers)
        .with_layout(layout.clone())
        .model(&vec![0.0; n])
}
