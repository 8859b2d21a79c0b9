use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::config::{Experiment, ExperimentConfig, Format};
use crate::circuits::OutputType;
use crate::diagnostics::{DecayFit, GradientVarianceEntry};
use crate::error::Result;

/// Sum-of-squares statistics at one `(n, L)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fig3Row {
    pub n: usize,
    #[serde(rename = "L")]
    pub layers: usize,
    pub n_samples: usize,
    pub mean: f64,
    pub variance: f64,
    pub theory: f64,
}

/// Aggregated `|c_k|` for one frequency.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fig4Row {
    pub n: usize,
    pub k: i64,
    pub median_abs: f64,
    pub max_abs: f64,
}

/// `epsilon2` for one `(n, L, seed)`; `L = 0, M = 0` marks the Haar-vs-Haar control.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpressibilityRow {
    pub n: usize,
    #[serde(rename = "L")]
    pub layers: usize,
    #[serde(rename = "M")]
    pub moments: usize,
    pub epsilon2: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub k: i64,
    pub re: f64,
    pub im: f64,
    pub abs2: f64,
}

/// Sampled mean of `sum_k |c_k|^2` against its 2-design value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignBoundRow {
    pub n: usize,
    #[serde(rename = "L")]
    pub layers: usize,
    #[serde(rename = "type")]
    pub output_type: OutputType,
    pub mean: f64,
    pub variance: f64,
    pub theory: f64,
    /// Empty above the two-copy moment cap.
    pub epsilon2: Option<f64>,
    pub satisfied: bool,
}

/// Result rows of one run, typed by experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "items", rename_all = "kebab-case")]
pub enum Rows {
    Fig3(Vec<Fig3Row>),
    Fig4(Vec<Fig4Row>),
    Gradvar(Vec<GradientVarianceEntry>),
    Expressibility(Vec<ExpressibilityRow>),
    Spectrum(Vec<SpectrumRow>),
    DesignBound(Vec<DesignBoundRow>),
}

fn write_table<T: Serialize, W: Write>(header: &[&str], rows: &[T], w: W) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(header)?;
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

fn read_table<T: DeserializeOwned, R: Read>(r: R) -> Result<Vec<T>> {
    csv::Reader::from_reader(r)
        .deserialize()
        .map(|row| row.map_err(Into::into))
        .collect()
}

impl Rows {
    /// CSV column names for an experiment.
    pub fn header(experiment: Experiment) -> &'static [&'static str] {
        match experiment {
            Experiment::Fig3 => &["n", "L", "n_samples", "mean", "variance", "theory"],
            Experiment::Fig4 => &["n", "k", "median_abs", "max_abs"],
            Experiment::Gradvar => &["n", "L", "i", "variance", "n_samples", "seed"],
            Experiment::Expressibility => &["n", "L", "M", "epsilon2", "seed"],
            Experiment::Spectrum => &["k", "re", "im", "abs2"],
            Experiment::DesignBound => &[
                "n",
                "L",
                "type",
                "mean",
                "variance",
                "theory",
                "epsilon2",
                "satisfied",
            ],
        }
    }

    pub fn experiment(&self) -> Experiment {
        match self {
            Rows::Fig3(_) => Experiment::Fig3,
            Rows::Fig4(_) => Experiment::Fig4,
            Rows::Gradvar(_) => Experiment::Gradvar,
            Rows::Expressibility(_) => Experiment::Expressibility,
            Rows::Spectrum(_) => Experiment::Spectrum,
            Rows::DesignBound(_) => Experiment::DesignBound,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Rows::Fig3(v) => v.len(),
            Rows::Fig4(v) => v.len(),
            Rows::Gradvar(v) => v.len(),
            Rows::Expressibility(v) => v.len(),
            Rows::Spectrum(v) => v.len(),
            Rows::DesignBound(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Header line followed by one line per row.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let header = Self::header(self.experiment());
        match self {
            Rows::Fig3(v) => write_table(header, v, w),
            Rows::Fig4(v) => write_table(header, v, w),
            Rows::Gradvar(v) => write_table(header, v, w),
            Rows::Expressibility(v) => write_table(header, v, w),
            Rows::Spectrum(v) => write_table(header, v, w),
            Rows::DesignBound(v) => write_table(header, v, w),
        }
    }

    /// Parse rows written by [`Rows::write_csv`].
    pub fn read_csv<R: Read>(experiment: Experiment, r: R) -> Result<Self> {
        Ok(match experiment {
            Experiment::Fig3 => Rows::Fig3(read_table(r)?),
            Experiment::Fig4 => Rows::Fig4(read_table(r)?),
            Experiment::Gradvar => Rows::Gradvar(read_table(r)?),
            Experiment::Expressibility => Rows::Expressibility(read_table(r)?),
            Experiment::Spectrum => Rows::Spectrum(read_table(r)?),
            Experiment::DesignBound => Rows::DesignBound(read_table(r)?),
        })
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }
}

/// A point that was not computed, with the reason.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedRow {
    pub n: usize,
    #[serde(rename = "L")]
    pub layers: Option<usize>,
    pub reason: String,
}

/// Gradient-variance decay fit over the qubit counts at one depth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerFit {
    #[serde(rename = "L")]
    pub layers: usize,
    pub fit: DecayFit,
}

/// Everything a run produced, with the resolved config it ran under.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub config: ExperimentConfig,
    pub version: String,
    pub seed: u64,
    pub wall_clock_secs: f64,
    pub rows: Rows,
    pub skipped: Vec<SkippedRow>,
    pub fits: Vec<LayerFit>,
}

impl ExperimentRecord {
    /// CSV carries the rows only; JSON carries the whole record.
    pub fn write<W: Write>(&self, format: Format, mut w: W) -> Result<()> {
        match format {
            Format::Csv => self.rows.write_csv(w),
            Format::Json => {
                serde_json::to_writer_pretty(&mut w, self)?;
                writeln!(w)?;
                Ok(())
            }
        }
    }

    pub fn has_skips(&self) -> bool {
        !self.skipped.is_empty()
    }
}
