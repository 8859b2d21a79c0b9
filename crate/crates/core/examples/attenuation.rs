//! Typical size of each Fourier coefficient at fixed depth for growing `n`.
//!
//! ```text
//! cargo run --release --example attenuation -- 2,4,6 15
//! ```

use pqc_fourier::harness::{parse_int_list, run_fig4, ExperimentConfig, Rows};
use pqc_fourier::Result;

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let config = ExperimentConfig::default()
        .with_qubits(parse_int_list(
            args.first().map_or("2,4,6", String::as_str),
        )?)
        .with_layers(parse_int_list(args.get(1).map_or("15", String::as_str))?);

    let record = run_fig4(&config)?;
    let Rows::Fig4(rows) = &record.rows else {
        unreachable!()
    };
    for n in config.qubit_list() {
        let of_n: Vec<_> = rows.iter().filter(|r| r.n == n).collect();
        let peak = of_n.iter().map(|r| r.median_abs).fold(0.0, f64::max);
        let low: Vec<String> = of_n
            .iter()
            .filter(|r| (0..=4).contains(&r.k))
            .map(|r| format!("{:.4}", r.median_abs))
            .collect();
        println!(
            "n={n}: {} frequencies, max_k median|c_k| = {peak:.5}, median|c_0..4| = [{}]",
            of_n.len(),
            low.join(", ")
        );
    }
    Ok(())
}
