use std::time::Instant;

use super::config::{Experiment, ExperimentConfig};
use super::record::{
    DesignBoundRow, ExperimentRecord, ExpressibilityRow, Fig3Row, Fig4Row, LayerFit, Rows,
    SkippedRow, SpectrumRow,
};
use crate::circuits::{hea, QnnSpec};
use crate::diagnostics::{
    design_bound_check, expressibility2, fit_decay, gradient_variance, haar_second_moment,
    trace_distance_norm, HeaSpec, MAX_MOMENT_QUBITS,
};
use crate::error::{Error, Result};
use crate::fourier::{model_spectrum, sample_spectra, sum_sq_statistics};
use crate::seeding::{substream, uniform_angles};
use crate::sim::{zero_state, MAX_QUBITS};

struct Outcome {
    rows: Rows,
    skipped: Vec<SkippedRow>,
    fits: Vec<LayerFit>,
}

impl Outcome {
    fn new(rows: Rows, skipped: Vec<SkippedRow>) -> Self {
        Outcome {
            rows,
            skipped,
            fits: Vec::new(),
        }
    }
}

fn statevector_skip(n: usize, layers: usize) -> Option<SkippedRow> {
    (n > MAX_QUBITS).then(|| SkippedRow {
        n,
        layers: Some(layers),
        reason: format!("statevector cap n ≤ {MAX_QUBITS}"),
    })
}

fn qnn_spec(config: &ExperimentConfig, n: usize, layers: usize) -> Result<QnnSpec> {
    Ok(QnnSpec::new(n, layers)
        .with_layout(config.layout()?)
        .with_output(config.output_type))
}

/// Middle value of a sample; mean of the two middle values for even sizes.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    })
}

fn fig3(config: &ExperimentConfig) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for n in config.qubit_list() {
        for layers in config.layer_list() {
            if let Some(skip) = statevector_skip(n, layers) {
                skipped.push(skip);
                continue;
            }
            let stats =
                sum_sq_statistics(&qnn_spec(config, n, layers)?, config.samples, config.seed)?;
            rows.push(Fig3Row {
                n,
                layers,
                n_samples: stats.n_samples,
                mean: stats.mean,
                variance: stats.variance,
                theory: config.output_type.design_value(n),
            });
        }
    }
    Ok(Outcome::new(Rows::Fig3(rows), skipped))
}

fn fig4(config: &ExperimentConfig) -> Result<Outcome> {
    let layers = config.layer_list()[0];
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for n in config.qubit_list() {
        if let Some(skip) = statevector_skip(n, layers) {
            skipped.push(skip);
            continue;
        }
        let spectra = sample_spectra(&qnn_spec(config, n, layers)?, config.samples, config.seed)?;
        let r = spectra[0].max_freq() as i64;
        for k in -r..=r {
            let mags: Vec<f64> = spectra.iter().map(|s| s.coeff(k).norm()).collect();
            rows.push(Fig4Row {
                n,
                k,
                median_abs: median(&mags).unwrap_or(0.0),
                max_abs: mags.iter().copied().fold(0.0, f64::max),
            });
        }
    }
    Ok(Outcome::new(Rows::Fig4(rows), skipped))
}

fn gradvar(config: &ExperimentConfig) -> Result<Outcome> {
    let layout = config.layout()?;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut fits = Vec::new();
    for layers in config.layer_list() {
        let mut entries = Vec::new();
        for n in config.qubit_list() {
            if let Some(skip) = statevector_skip(n, layers) {
                skipped.push(skip);
                continue;
            }
            let family = HeaSpec::new(n, layers)
                .with_layout(layout.clone())
                .with_observable(config.output_type.observable(n));
            entries.push(gradient_variance(&family, 0, config.samples, config.seed)?);
        }
        if let Ok(fit) = fit_decay(&entries) {
            fits.push(LayerFit { layers, fit });
        }
        rows.extend(entries);
    }
    Ok(Outcome {
        rows: Rows::Gradvar(rows),
        skipped,
        fits,
    })
}

fn expressibility(config: &ExperimentConfig) -> Result<Outcome> {
    let layout = config.layout()?;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for n in config.qubit_list() {
        if n > MAX_MOMENT_QUBITS {
            skipped.push(SkippedRow {
                n,
                layers: None,
                reason: format!("expressibility cap n ≤ {MAX_MOMENT_QUBITS}"),
            });
            continue;
        }
        let state = zero_state(n)?;
        let haar = haar_second_moment(&state)?;
        rows.push(ExpressibilityRow {
            n,
            layers: 0,
            moments: 0,
            epsilon2: trace_distance_norm(&haar, &haar)?,
            seed: config.seed,
        });
        for layers in config.layer_list() {
            let template = hea(n, layers, &layout)?;
            for r in 0..config.repeats as u64 {
                let seed = config.seed.wrapping_add(r);
                rows.push(ExpressibilityRow {
                    n,
                    layers,
                    moments: config.moments,
                    epsilon2: expressibility2(&template, &state, config.moments, seed)?,
                    seed,
                });
            }
        }
    }
    Ok(Outcome::new(Rows::Expressibility(rows), skipped))
}

fn spectrum(config: &ExperimentConfig) -> Result<Outcome> {
    let n = config.qubit_list()[0];
    let layers = config.layer_list()[0];
    if let Some(skip) = statevector_skip(n, layers) {
        return Ok(Outcome::new(Rows::Spectrum(vec![]), vec![skip]));
    }
    let theta = uniform_angles(&mut substream(config.seed, 0), n);
    let model = qnn_spec(config, n, layers)?.model(&theta)?;
    let rows = model_spectrum(&model)?
        .iter()
        .map(|(k, c)| SpectrumRow {
            k,
            re: c.re,
            im: c.im,
            abs2: c.norm_sqr(),
        })
        .collect();
    Ok(Outcome::new(Rows::Spectrum(rows), vec![]))
}

fn design_bound(config: &ExperimentConfig) -> Result<Outcome> {
    let layout = config.layout()?;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for n in config.qubit_list() {
        for layers in config.layer_list() {
            if let Some(skip) = statevector_skip(n, layers) {
                skipped.push(skip);
                continue;
            }
            let stats =
                sum_sq_statistics(&qnn_spec(config, n, layers)?, config.samples, config.seed)?;
            let epsilon2 = if n <= MAX_MOMENT_QUBITS {
                let template = hea(n, layers, &layout)?;
                Some(expressibility2(
                    &template,
                    &zero_state(n)?,
                    config.moments,
                    config.seed,
                )?)
            } else {
                None
            };
            let report = design_bound_check(n, &stats, config.output_type, epsilon2);
            rows.push(DesignBoundRow {
                n,
                layers,
                output_type: report.output_type,
                mean: report.sum_sq,
                variance: report.variance,
                theory: report.theory,
                epsilon2: report.epsilon2,
                satisfied: report.satisfied,
            });
        }
    }
    Ok(Outcome::new(Rows::DesignBound(rows), skipped))
}

fn in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Config(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Validate `config` and run its experiment.
///
/// Rows come out in `(n, L, sample)` order whatever the worker count.
pub fn run(config: &ExperimentConfig) -> Result<ExperimentRecord> {
    config.validate()?;
    let config = config.resolved();
    let start = Instant::now();
    let outcome = in_pool(config.workers, || match config.experiment {
        Experiment::Fig3 => fig3(&config),
        Experiment::Fig4 => fig4(&config),
        Experiment::Gradvar => gradvar(&config),
        Experiment::Expressibility => expressibility(&config),
        Experiment::Spectrum => spectrum(&config),
        Experiment::DesignBound => design_bound(&config),
    })??;
    Ok(ExperimentRecord {
        seed: config.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_clock_secs: start.elapsed().as_secs_f64(),
        rows: outcome.rows,
        skipped: outcome.skipped,
        fits: outcome.fits,
        config,
    })
}

fn run_as(experiment: Experiment, config: &ExperimentConfig) -> Result<ExperimentRecord> {
    run(&ExperimentConfig {
        experiment,
        ..config.clone()
    })
}

/// Mean and variance of `sum_k |c_k|^2` for every `(n, L)`.
pub fn run_fig3(config: &ExperimentConfig) -> Result<ExperimentRecord> {
    run_as(Experiment::Fig3, config)
}

/// Median and max `|c_k|` per frequency at a single depth.
pub fn run_fig4(config: &ExperimentConfig) -> Result<ExperimentRecord> {
    run_as(Experiment::Fig4, config)
}

/// Variance of `df/dtheta_0` for every `(n, L)` plus a decay fit per depth.
pub fn run_gradvar(config: &ExperimentConfig) -> Result<ExperimentRecord> {
    run_as(Experiment::Gradvar, config)
}

/// `epsilon2` of `hea(n, L)` per seed, with one Haar control row per `n`.
pub fn run_expressibility(config: &ExperimentConfig) -> Result<ExperimentRecord> {
    run_as(Experiment::Expressibility, config)
}

/// Spectrum of one model with trainable angles drawn from substream `(seed, 0)`.
pub fn run_spectrum(config: &ExperimentConfig) -> Result<ExperimentRecord> {
    run_as(Experiment::Spectrum, config)
}

/// Sampled sum of squares against the 2-design value, with `epsilon2` of `hea(n, L)`.
pub fn run_design_bound(config: &ExperimentConfig) -> Result<ExperimentRecord> {
    run_as(Experiment::DesignBound, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn medians() {
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[3.0]), Some(3.0));
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    #[test]
    fn expressibility_cap_is_a_skip() {
        let c = ExperimentConfig::new(Experiment::Expressibility)
            .with_qubits(vec![1, 6])
            .with_layers(vec![1]);
        let c = ExperimentConfig {
            moments: 100,
            repeats: 1,
            ..c
        };
        let rec = run(&c).unwrap();
        assert_eq!(rec.skipped.len(), 1);
        assert_eq!(rec.skipped[0].n, 6);
        assert_eq!(rec.skipped[0].reason, "expressibility cap n ≤ 5");
        let Rows::Expressibility(rows) = &rec.rows else {
            panic!("wrong row kind")
        };
        assert_eq!(rows.len(), 2);
        assert_eq!(
            (rows[0].layers, rows[0].moments, rows[0].epsilon2),
            (0, 0, 0.0)
        );
    }

    #[test]
    fn statevector_cap_is_a_skip() {
        let c = ExperimentConfig::new(Experiment::Fig3)
            .with_qubits(vec![13])
            .with_layers(vec![1])
            .with_samples(2);
        let rec = run(&c).unwrap();
        assert!(rec.rows.is_empty());
        assert!(rec.has_skips());
    }

    #[test]
    fn fig4_rows_stay_in_band() {
        let c = ExperimentConfig::new(Experiment::Fig4)
            .with_qubits(vec![2])
            .with_layers(vec![2]);
        let c = ExperimentConfig { samples: 2, ..c };
        let rec = run(&c).unwrap();
        let Rows::Fig4(rows) = &rec.rows else {
            panic!("wrong row kind")
        };
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.k.abs() <= 4));
        assert!(rows.iter().all(|r| r.median_abs <= r.max_abs));
    }
}
