//! Exact Fourier coefficients of model outputs in one variable.
//!
//! With rotations `exp(-i x P / 2)`, an output driven by `R` rotations in `x`
//! is a trigonometric polynomial `f(x) = sum_{|k| <= R} c_k e^{-i k x}`.
//! Sampling it on `N >= 2R + 1` equispaced points and applying the inverse
//! kernel `e^{+i k x_j}` recovers every `c_k` exactly, and the grid mean of
//! `|f|^2` equals `sum_k |c_k|^2`.

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{Bindings, Model, QnnSpec, Variable};
use crate::error::{Error, Result};
use crate::seeding::{substream, uniform_angles};
use crate::sim::Slot;

/// Coefficients `c_{-R..=R}` of a real periodic function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierSpectrum {
    max_freq: usize,
    coeffs: Vec<Complex64>,
    grid_size: usize,
    /// Name of the analysed variable, if the spectrum came from a model.
    pub var: Option<String>,
    /// Values of every other slot when the spectrum was taken.
    pub fixed: Option<Bindings>,
}

impl FourierSpectrum {
    pub fn max_freq(&self) -> usize {
        self.max_freq
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// `c_k`, zero outside `-R..=R`.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let r = self.max_freq as i64;
        if k.abs() > r {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + r) as usize]
        }
    }

    /// `(k, c_k)` for `k = -R..=R`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let r = self.max_freq as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - r, c))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `f(x) = sum_k c_k e^{-i k x}`, real part.
    pub fn reconstruct(&self, x: f64) -> f64 {
        self.iter()
            .map(|(k, c)| (c * Complex64::from_polar(1.0, -(k as f64) * x)).re)
            .sum()
    }

    /// Largest `|c_k - conj(c_{-k})|`; zero for real-valued functions.
    pub fn hermitian_defect(&self) -> f64 {
        let r = self.max_freq as i64;
        (0..=r)
            .map(|k| (self.coeff(-k) - self.coeff(k).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Write `k,re,im,abs2` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["k", "re", "im", "abs2"])?;
        for (k, c) in self.iter() {
            out.serialize((k, c.re, c.im, c.norm_sqr()))?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Grid point `j` of an `N`-point grid on `[0, 2pi)`.
#[inline]
pub fn grid_point(j: usize, n: usize) -> f64 {
    TAU * j as f64 / n as f64
}

/// Smallest grid that resolves a band limit of `r`.
pub fn nyquist(r: usize) -> usize {
    2 * r + 1
}

/// Model output at `x_j = 2 pi j / N` for `j = 0..N`.
pub fn evaluate_on_grid(model: &Model, grid_size: usize) -> Result<Vec<f64>> {
    let required = nyquist(model.data_gate_count());
    if grid_size < required {
        return Err(Error::Nyquist {
            required,
            got: grid_size,
        });
    }
    (0..grid_size)
        .into_par_iter()
        .map(|j| model.output(grid_point(j, grid_size)))
        .collect()
}

/// Coefficients `c_k = (1/N) sum_j f_j e^{+i k 2 pi j / N}` for `|k| <= R`.
pub fn extract_coefficients(samples: &[f64], max_freq: usize) -> Result<FourierSpectrum> {
    let n = samples.len();
    if n < nyquist(max_freq) {
        return Err(Error::Nyquist {
            required: nyquist(max_freq),
            got: n,
        });
    }
    let r = max_freq as i64;
    let coeffs = (-r..=r)
        .map(|k| {
            let k = k.rem_euclid(n as i64) as usize;
            let sum: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, &f)| f * Complex64::from_polar(1.0, grid_point((k * j) % n, n)))
                .sum();
            sum / n as f64
        })
        .collect();
    Ok(FourierSpectrum {
        max_freq,
        coeffs,
        grid_size: n,
        var: None,
        fixed: None,
    })
}

/// Spectrum of the model in its Fourier variable on a grid of `grid_size` points.
pub fn model_spectrum_on(model: &Model, grid_size: usize) -> Result<FourierSpectrum> {
    let samples = evaluate_on_grid(model, grid_size)?;
    let mut spectrum = extract_coefficients(&samples, model.data_gate_count())?;
    spectrum.var = Some(model.fourier_var().label());
    spectrum.fixed = Some(model.fixed().clone());
    Ok(spectrum)
}

/// Spectrum on the minimal grid `N = 2R + 1`.
pub fn model_spectrum(model: &Model) -> Result<FourierSpectrum> {
    model_spectrum_on(model, nyquist(model.data_gate_count()))
}

/// `sum_k |c_k|^2`.
pub fn parseval_sum(spectrum: &FourierSpectrum) -> f64 {
    spectrum.coeffs.iter().map(|c| c.norm_sqr()).sum()
}

/// Two-variable coefficients `c_{k1,k2}` on a square tensor grid.
///
/// `samples[j1 * N + j2]` holds `f(x_{j1}, y_{j2})`; the result is indexed
/// `[(k1 + R) * (2R + 1) + (k2 + R)]`.
pub fn extract_coefficients_2d(samples: &[f64], max_freq: usize) -> Result<Vec<Complex64>> {
    let n = (samples.len() as f64).sqrt().round() as usize;
    if n * n != samples.len() {
        return Err(Error::Structure(format!(
            "{} samples do not form a square grid",
            samples.len()
        )));
    }
    if n < nyquist(max_freq) {
        return Err(Error::Nyquist {
            required: nyquist(max_freq),
            got: n,
        });
    }
    let r = max_freq as i64;
    // Transform rows first, then columns.
    let rows: Vec<FourierSpectrum> = samples
        .chunks(n)
        .map(|row| extract_coefficients(row, max_freq))
        .collect::<Result<_>>()?;
    let width = nyquist(max_freq);
    let mut out = vec![Complex64::new(0.0, 0.0); width * width];
    for k2 in -r..=r {
        let column: Vec<Complex64> = rows.iter().map(|s| s.coeff(k2)).collect();
        for k1 in -r..=r {
            let k = k1.rem_euclid(n as i64) as usize;
            let sum: Complex64 = column
                .iter()
                .enumerate()
                .map(|(j, &f)| f * Complex64::from_polar(1.0, grid_point((k * j) % n, n)))
                .sum();
            out[(k1 + r) as usize * width + (k2 + r) as usize] = sum / n as f64;
        }
    }
    Ok(out)
}

/// Joint spectrum of the model in its Fourier variable and `second`.
/// Returns `(R, coefficients)` with `R` the larger of the two band limits.
pub fn model_spectrum_2d(model: &Model, second: &Variable) -> Result<(usize, Vec<Complex64>)> {
    if second == model.fourier_var() {
        return Err(Error::Structure("the two variables must differ".into()));
    }
    let count = |v: &Variable| {
        model
            .template()
            .gates()
            .iter()
            .filter(|g| g.slot.as_ref().is_some_and(|s| v.matches(s)))
            .count()
    };
    let r = count(model.fourier_var()).max(count(second));
    if count(second) == 0 {
        return Err(Error::Structure(format!(
            "variable `{}` does not drive any rotation",
            second.label()
        )));
    }
    let n = nyquist(r);
    let samples: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let mut b = model.bindings_at(grid_point(idx / n, n));
            let y = grid_point(idx % n, n);
            match second {
                Variable::Data(name) => {
                    b.data.insert(name.clone(), y);
                }
                Variable::Parameter { block, index } => {
                    if let Some(v) = b.params.get_mut(*block).and_then(|p| p.get_mut(*index)) {
                        *v = y;
                    }
                }
            }
            model.output_with(&b)
        })
        .collect::<Result<_>>()?;
    Ok((r, extract_coefficients_2d(&samples, r)?))
}

/// Mean and unbiased variance of `sum_k |c_k|^2` over sampled parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumSquareStats {
    pub mean: f64,
    pub variance: f64,
    pub n_samples: usize,
    pub per_sample: Option<Vec<f64>>,
}

impl SumSquareStats {
    /// Statistics of the given per-sample values (at least two).
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let (mean, variance) = mean_variance(&values)?;
        Ok(SumSquareStats {
            mean,
            variance,
            n_samples: values.len(),
            per_sample: Some(values),
        })
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        (self.variance / self.n_samples as f64).sqrt()
    }
}

/// Sample mean and unbiased (n - 1) variance.
pub fn mean_variance(values: &[f64]) -> Result<(f64, f64)> {
    if values.len() < 2 {
        return Err(Error::Config(format!(
            "need at least 2 samples, got {}",
            values.len()
        )));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, var))
}

/// Spectrum in `x` for each of `n_samples` uniform draws of the trainable
/// angles on `[0, 2pi)`; sample `s` uses substream `(seed, s)`.
///
/// The embedding part of the circuit does not depend on the trainable
/// angles, so its grid states are prepared once and shared by all samples.
pub fn sample_spectra(
    family: &QnnSpec,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<FourierSpectrum>> {
    let base = family.model(&vec![0.0; family.n])?;
    let template = base.template();
    let num_params = template.num_params();
    let r = base.data_gate_count();
    let grid = nyquist(r);
    let split = template
        .gates()
        .iter()
        .position(|g| matches!(g.slot, Some(Slot::Parameter { .. })))
        .unwrap_or(template.gates().len());

    let prefixes = (0..grid)
        .into_par_iter()
        .map(|j| base.state_prefix(split, grid_point(j, grid)))
        .collect::<Result<Vec<_>>>()?;

    (0..n_samples)
        .into_par_iter()
        .map(|s| {
            let theta = uniform_angles(&mut substream(seed, s as u64), num_params);
            let model = base.with_fixed(Bindings::params(template.split_params(&theta)?))?;
            let samples = prefixes
                .iter()
                .enumerate()
                .map(|(j, prefix)| model.output_from(prefix, split, grid_point(j, grid)))
                .collect::<Result<Vec<_>>>()?;
            let mut spectrum = extract_coefficients(&samples, r)?;
            spectrum.var = Some(model.fourier_var().label());
            spectrum.fixed = Some(model.fixed().clone());
            Ok(spectrum)
        })
        .collect()
}

/// Statistics of `sum_k |c_k|^2` over `n_samples` parameter draws.
pub fn sum_sq_statistics(family: &QnnSpec, n_samples: usize, seed: u64) -> Result<SumSquareStats> {
    if n_samples < 2 {
        return Err(Error::Config(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    let values = sample_spectra(family, n_samples, seed)?
        .iter()
        .map(parseval_sum)
        .collect();
    SumSquareStats::from_values(values)
}
