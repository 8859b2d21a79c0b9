use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};

use crate::circuits::{parse_axes, Entangler, Layout, OutputType};
use crate::error::{Error, Result};

/// Which experiment a config drives.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Mean and variance of `sum_k |c_k|^2` per `(n, L)`.
    #[default]
    Fig3,
    /// Median and max of `|c_k|` per frequency at one depth.
    Fig4,
    /// Variance of the first parameter's gradient in a deep HEA.
    Gradvar,
    /// Trace-norm distance of HEA two-copy moments from Haar.
    Expressibility,
    /// Full spectrum of one QNN model.
    Spectrum,
    /// Sampled `sum_k |c_k|^2` against the 2-design value and measured epsilon.
    DesignBound,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::Fig3,
        Experiment::Fig4,
        Experiment::Gradvar,
        Experiment::Expressibility,
        Experiment::Spectrum,
        Experiment::DesignBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Fig3 => "fig3",
            Experiment::Fig4 => "fig4",
            Experiment::Gradvar => "gradvar",
            Experiment::Expressibility => "expressibility",
            Experiment::Spectrum => "spectrum",
            Experiment::DesignBound => "design-bound",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase().replace('_', "-");
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Parse integer lists such as `"2,4,6"`, `"5..50:5"` or `"1..3,8"`.
///
/// Ranges `a..b` include both ends; `:s` sets the step.
pub fn parse_int_list(s: &str) -> Result<Vec<usize>> {
    let bad = |item: &str| Error::Config(format!("bad integer list item `{item}` in `{s}`"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        match item.split_once("..") {
            None => out.push(item.parse().map_err(|_| bad(item))?),
            Some((lo, rest)) => {
                let (hi, step) = match rest.split_once(':') {
                    Some((hi, step)) => (hi, step.parse::<usize>().map_err(|_| bad(item))?),
                    None => (rest, 1),
                };
                let lo: usize = lo.trim().parse().map_err(|_| bad(item))?;
                let hi: usize = hi.trim().parse().map_err(|_| bad(item))?;
                if step == 0 || lo > hi {
                    return Err(bad(item));
                }
                out.extend((lo..=hi).step_by(step));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Config(format!("empty integer list `{s}`")));
    }
    Ok(out)
}

fn int_list<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<usize>>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        List(Vec<usize>),
        Text(String),
    }
    match Option::<Raw>::deserialize(d)? {
        None => Ok(None),
        Some(Raw::List(v)) => Ok(Some(v)),
        Some(Raw::Text(s)) => parse_int_list(&s)
            .map(Some)
            .map_err(serde::de::Error::custom),
    }
}

/// Settings for one experiment run.
///
/// `qubits` and `layers` left unset take per-experiment defaults; see
/// [`ExperimentConfig::resolved`]. In JSON they may be arrays or strings in
/// the [`parse_int_list`] syntax.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(deserialize_with = "int_list")]
    pub qubits: Option<Vec<usize>>,
    #[serde(deserialize_with = "int_list")]
    pub layers: Option<Vec<usize>>,
    /// Parameter draws for sampled statistics.
    pub samples: usize,
    /// Draws `M` for two-copy moments.
    pub moments: usize,
    /// Independent seeds `seed, seed + 1, ...` per expressibility point.
    pub repeats: usize,
    pub seed: u64,
    pub output_type: OutputType,
    /// Rotation axes of each layer, e.g. `"y"` or `"zy"`.
    pub axis: String,
    pub entangler: Entangler,
    pub output: Option<PathBuf>,
    pub format: Format,
    /// Worker threads; all cores when unset.
    pub workers: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: Experiment::Fig3,
            qubits: None,
            layers: None,
            samples: 300,
            moments: 5000,
            repeats: 3,
            seed: 42,
            output_type: OutputType::Expectation,
            axis: "y".into(),
            entangler: Entangler::Chain,
            output: None,
            format: Format::Csv,
            workers: None,
        }
    }
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            ..Default::default()
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("bad config: {e}")))
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn with_qubits(mut self, qubits: Vec<usize>) -> Self {
        self.qubits = Some(qubits);
        self
    }

    pub fn with_layers(mut self, layers: Vec<usize>) -> Self {
        self.layers = Some(layers);
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn with_output_type(mut self, output_type: OutputType) -> Self {
        self.output_type = output_type;
        self
    }

    pub fn qubit_list(&self) -> Vec<usize> {
        self.qubits
            .clone()
            .unwrap_or_else(|| match self.experiment {
                Experiment::Spectrum => vec![2],
                Experiment::Expressibility => vec![2, 3, 4],
                _ => vec![2, 4, 6, 8],
            })
    }

    pub fn layer_list(&self) -> Vec<usize> {
        self.layers
            .clone()
            .unwrap_or_else(|| match self.experiment {
                Experiment::Fig4 => vec![15],
                Experiment::Spectrum => vec![5],
                Experiment::Gradvar => vec![20],
                Experiment::Expressibility => vec![1, 5, 10, 20],
                _ => (5..=50).step_by(5).collect(),
            })
    }

    /// Copy with `qubits` and `layers` filled in.
    pub fn resolved(&self) -> Self {
        ExperimentConfig {
            qubits: Some(self.qubit_list()),
            layers: Some(self.layer_list()),
            ..self.clone()
        }
    }

    pub fn layout(&self) -> Result<Layout> {
        Ok(Layout::new(parse_axes(&self.axis)?, self.entangler))
    }

    pub fn validate(&self) -> Result<()> {
        let qubits = self.qubit_list();
        let layers = self.layer_list();
        let fail = |msg: String| Err(Error::Config(msg));
        if qubits.is_empty() || layers.is_empty() {
            return fail("qubit and layer lists must be non-empty".into());
        }
        if qubits.contains(&0) || layers.contains(&0) {
            return fail("qubit and layer counts must be positive".into());
        }
        if self.entangler == Entangler::Ring && qubits.iter().any(|&n| n < 2) {
            return fail("ring entangler needs at least 2 qubits".into());
        }
        if self.samples < 2 {
            return fail(format!("samples must be at least 2, got {}", self.samples));
        }
        if self.repeats == 0 {
            return fail("repeats must be at least 1".into());
        }
        if self.workers == Some(0) {
            return fail("workers must be at least 1".into());
        }
        let layout = self.layout()?;
        if layout.axes.is_empty() || layout.axes.contains(&crate::sim::Pauli::I) {
            return fail(format!(
                "axis must name X, Y or Z rotations, got `{}`",
                self.axis
            ));
        }
        match self.experiment {
            Experiment::Gradvar if self.samples < 30 => fail(format!(
                "gradvar needs at least 30 samples, got {}",
                self.samples
            )),
            Experiment::Expressibility | Experiment::DesignBound if self.moments < 100 => fail(
                format!("moments must be at least 100, got {}", self.moments),
            ),
            Experiment::Fig4 if layers.len() != 1 => fail("fig4 takes a single layer count".into()),
            Experiment::Spectrum if layers.len() != 1 || qubits.len() != 1 => {
                fail("spectrum takes a single qubit count and layer count".into())
            }
            _ => Ok(()),
        }
    }
}
