use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pqc_fourier::circuits::{Entangler, OutputType};
use pqc_fourier::harness::{self, parse_int_list, Experiment, ExperimentConfig, Format};
use pqc_fourier::Error;

#[derive(Parser)]
#[command(
    name = "pqc-fourier",
    version,
    about = "Fourier-spectrum and barren-plateau experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean and variance of the sum of squared Fourier coefficients per (n, L)
    Fig3(Opts),
    /// Median and max |c_k| per frequency at one depth
    Fig4(Opts),
    /// Gradient variance of the first HEA parameter, with a decay fit
    Gradvar(Opts),
    /// Trace-norm distance of HEA two-copy moments from Haar (n <= 5)
    Expressibility(Opts),
    /// Fourier coefficients of one QNN model
    Spectrum(Opts),
    /// Sum of squares against the 2-design value and measured epsilon
    DesignBound(Opts),
}

#[derive(Args)]
struct Opts {
    /// JSON config; flags given here override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Qubit counts, e.g. 2,4,6 or 2..8:2
    #[arg(long)]
    qubits: Option<String>,
    /// Layer counts, e.g. 20 or 5..50:5
    #[arg(long)]
    layers: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    /// Draws per two-copy moment
    #[arg(long)]
    moments: Option<usize>,
    /// Seeds per expressibility point
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    output_type: Option<OutputType>,
    /// Rotation axes per layer, e.g. y or zy
    #[arg(long)]
    axis: Option<String>,
    #[arg(long)]
    entangler: Option<Entangler>,
}

impl Opts {
    fn into_config(self, experiment: Experiment) -> pqc_fourier::Result<ExperimentConfig> {
        let mut c = match &self.config {
            Some(path) => ExperimentConfig::from_json_file(path)?,
            None => ExperimentConfig::default(),
        };
        c.experiment = experiment;
        if let Some(q) = &self.qubits {
            c.qubits = Some(parse_int_list(q)?);
        }
        if let Some(l) = &self.layers {
            c.layers = Some(parse_int_list(l)?);
        }
        c.samples = self.samples.unwrap_or(c.samples);
        c.moments = self.moments.unwrap_or(c.moments);
        c.repeats = self.repeats.unwrap_or(c.repeats);
        c.seed = self.seed.unwrap_or(c.seed);
        c.output = self.output.or(c.output);
        c.format = self.format.unwrap_or(c.format);
        c.workers = self.workers.or(c.workers);
        c.output_type = self.output_type.unwrap_or(c.output_type);
        c.axis = self.axis.unwrap_or(c.axis);
        c.entangler = self.entangler.unwrap_or(c.entangler);
        Ok(c)
    }
}

fn execute(experiment: Experiment, opts: Opts) -> pqc_fourier::Result<bool> {
    let config = opts.into_config(experiment)?;
    let record = harness::run(&config)?;
    match &config.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            record.write(config.format, &mut w)?;
            w.flush()?;
        }
        None => record.write(config.format, io::stdout().lock())?,
    }
    for skip in &record.skipped {
        match skip.layers {
            Some(l) => eprintln!("skipped n={} L={l}: {}", skip.n, skip.reason),
            None => eprintln!("skipped n={}: {}", skip.n, skip.reason),
        }
    }
    for f in &record.fits {
        eprintln!(
            "fit L={}: b={:.4} slope={:.4} R^2={:.4}",
            f.layers, f.fit.b, f.fit.slope, f.fit.r_squared
        );
    }
    eprintln!(
        "{} rows in {:.2}s",
        record.rows.len(),
        record.wall_clock_secs
    );
    Ok(record.has_skips())
}

fn main() -> ExitCode {
    let (experiment, opts) = match Cli::parse().command {
        Command::Fig3(o) => (Experiment::Fig3, o),
        Command::Fig4(o) => (Experiment::Fig4, o),
        Command::Gradvar(o) => (Experiment::Gradvar, o),
        Command::Expressibility(o) => (Experiment::Expressibility, o),
        Command::Spectrum(o) => (Experiment::Spectrum, o),
        Command::DesignBound(o) => (Experiment::DesignBound, o),
    };
    match execute(experiment, opts) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
