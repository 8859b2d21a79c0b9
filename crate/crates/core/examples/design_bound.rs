//! Sampled `sum_k |c_k|^2` against the 2-design value, with the measured
//! expressibility of `hea(n, L)` as the allowed gap.
//!
//! ```text
//! cargo run --release --example design_bound -- 2,4 20 probability
//! ```

use pqc_fourier::circuits::OutputType;
use pqc_fourier::harness::{parse_int_list, run_design_bound, ExperimentConfig, Rows};
use pqc_fourier::Result;

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let output: OutputType = args
        .get(2)
        .map_or(Ok(OutputType::Expectation), |s| s.parse())?;
    let config = ExperimentConfig::default()
        .with_qubits(parse_int_list(args.first().map_or("2,4", String::as_str))?)
        .with_layers(parse_int_list(args.get(1).map_or("1,20", String::as_str))?)
        .with_output_type(output);

    let record = run_design_bound(&config)?;
    let Rows::DesignBound(rows) = &record.rows else {
        unreachable!()
    };
    for r in rows {
        let eps = r.epsilon2.map_or("n/a".into(), |e| format!("{e:.4}"));
        println!(
            "n={} L={:>2} {}: mean {:.5} theory {:.5} epsilon2 {eps} satisfied {}",
            r.n, r.layers, r.output_type, r.mean, r.theory, r.satisfied
        );
    }
    Ok(())
}
