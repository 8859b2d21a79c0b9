use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{hea, Bindings, Layout, Model, QnnSpec, Variable};
use crate::error::{Error, Result};
use crate::fourier::mean_variance;
use crate::seeding::{substream, uniform_angles};
use crate::sim::{Observable, PauliString, Slot};

/// A family of models indexed by a flat vector of trainable angles.
pub trait ModelFamily: Sync {
    fn num_qubits(&self) -> usize;
    fn num_layers(&self) -> usize;
    fn num_params(&self) -> usize;
    /// Model with the trainable angles set to `theta`.
    fn model(&self, theta: &[f64]) -> Result<Model>;
}

impl ModelFamily for QnnSpec {
    fn num_qubits(&self) -> usize {
        self.n
    }

    fn num_layers(&self) -> usize {
        self.embed_layers
    }

    fn num_params(&self) -> usize {
        self.n
    }

    fn model(&self, theta: &[f64]) -> Result<Model> {
        QnnSpec::model(self, theta)
    }
}

/// Layered hardware-efficient ansatz measured with a fixed observable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeaSpec {
    pub n: usize,
    pub layers: usize,
    pub layout: Layout,
    pub observable: Observable,
}

impl HeaSpec {
    /// `Z` on all qubits, default layout.
    pub fn new(n: usize, layers: usize) -> Self {
        HeaSpec {
            n,
            layers,
            layout: Layout::default(),
            observable: Observable::Pauli(PauliString::all_z(n)),
        }
    }

    pub fn with_layout(mut self, layout: Layout) -> Self {
        self.layout = layout;
        self
    }

    pub fn with_observable(mut self, observable: Observable) -> Self {
        self.observable = observable;
        self
    }
}

impl ModelFamily for HeaSpec {
    fn num_qubits(&self) -> usize {
        self.n
    }

    fn num_layers(&self) -> usize {
        self.layers
    }

    fn num_params(&self) -> usize {
        self.n * self.layers * self.layout.rotations_per_qubit()
    }

    fn model(&self, theta: &[f64]) -> Result<Model> {
        let template = hea(self.n, self.layers, &self.layout)?;
        let params = template.split_params(theta)?;
        Model::new(
            template,
            self.observable.clone(),
            Variable::param(0, 0),
            Bindings::params(params),
        )
    }
}

fn bindings_for(model: &Model, theta: &[f64]) -> Result<Bindings> {
    Ok(Bindings::new(
        model.template().split_params(theta)?,
        model.fixed().data.clone(),
    ))
}

fn output_at(model: &Model, theta: &[f64]) -> Result<f64> {
    model.output_with(&bindings_for(model, theta)?)
}

/// `(f(theta + pi/2 e_i) - f(theta - pi/2 e_i)) / 2`.
///
/// Data variables take their values from the model's fixed bindings.
/// Exact when parameter `i` drives at most one Pauli rotation.
pub fn parameter_shift_grad(model: &Model, theta: &[f64], i: usize) -> Result<f64> {
    let template = model.template();
    let (block, index) = template.locate_param(i).ok_or_else(|| {
        Error::Binding(format!(
            "parameter index {i} out of range for {} parameters",
            template.num_params()
        ))
    })?;
    let uses = template
        .gates()
        .iter()
        .filter(|g| g.slot == Some(Slot::Parameter { block, index }))
        .count();
    if uses > 1 {
        return Err(Error::UnsupportedGenerator(format!(
            "parameter {i} drives {uses} rotations; its generator spectrum is not +-1/2"
        )));
    }
    let mut plus = theta.to_vec();
    let mut minus = theta.to_vec();
    plus[i] += FRAC_PI_2;
    minus[i] -= FRAC_PI_2;
    Ok(0.5 * (output_at(model, &plus)? - output_at(model, &minus)?))
}

/// Central difference `(f(theta + h e_i) - f(theta - h e_i)) / 2h`.
pub fn finite_difference_grad(model: &Model, theta: &[f64], i: usize, h: f64) -> Result<f64> {
    if i >= theta.len() {
        return Err(Error::Binding(format!("parameter index {i} out of range")));
    }
    let mut plus = theta.to_vec();
    let mut minus = theta.to_vec();
    plus[i] += h;
    minus[i] -= h;
    Ok((output_at(model, &plus)? - output_at(model, &minus)?) / (2.0 * h))
}

/// One row of a gradient-variance sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradientVarianceEntry {
    pub n: usize,
    #[serde(rename = "L")]
    pub layers: usize,
    pub i: usize,
    pub variance: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// Unbiased variance of `df/dtheta_i` over `theta` uniform on `[0, 2pi)^d`.
pub fn gradient_variance<F: ModelFamily + ?Sized>(
    family: &F,
    i: usize,
    n_samples: usize,
    seed: u64,
) -> Result<GradientVarianceEntry> {
    if n_samples < 30 {
        return Err(Error::Config(format!(
            "gradient variance needs at least 30 samples, got {n_samples}"
        )));
    }
    let d = family.num_params();
    let base = family.model(&vec![0.0; d])?;
    let grads = (0..n_samples)
        .into_par_iter()
        .map(|s| {
            let theta = uniform_angles(&mut substream(seed, s as u64), d);
            parameter_shift_grad(&base, &theta, i)
        })
        .collect::<Result<Vec<_>>>()?;
    let (_, variance) = mean_variance(&grads)?;
    Ok(GradientVarianceEntry {
        n: family.num_qubits(),
        layers: family.num_layers(),
        i,
        variance,
        n_samples,
        seed,
    })
}

/// Least-squares fit of `ln Var = a + slope * n ln 2`, reported as `Var ~ b^{-n}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub b: f64,
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
    pub residuals: Vec<f64>,
}

pub fn fit_decay(entries: &[GradientVarianceEntry]) -> Result<DecayFit> {
    if let Some(e) = entries.iter().find(|e| e.variance <= 0.0) {
        return Err(Error::Config(format!(
            "cannot fit a decay through non-positive variance at n = {}",
            e.n
        )));
    }
    let xs: Vec<f64> = entries
        .iter()
        .map(|e| e.n as f64 * std::f64::consts::LN_2)
        .collect();
    let ys: Vec<f64> = entries.iter().map(|e| e.variance.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if xs.len() < 2 || sxx == 0.0 {
        return Err(Error::Config(
            "decay fit needs at least two distinct qubit counts".into(),
        ));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals: Vec<f64> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| y - (intercept + slope * x))
        .collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    Ok(DecayFit {
        b: 2f64.powf(-slope),
        intercept,
        slope,
        r_squared,
        residuals,
    })
}

/// Variances for a sweep together with their exponential fit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradientVarianceReport {
    pub per_n: Vec<GradientVarianceEntry>,
    pub fit: Option<DecayFit>,
}

impl GradientVarianceReport {
    pub fn new(per_n: Vec<GradientVarianceEntry>) -> Self {
        let fit = fit_decay(&per_n).ok();
        GradientVarianceReport { per_n, fit }
    }
}
