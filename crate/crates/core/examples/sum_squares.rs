//! Mean and variance of `sum_k |c_k|^2` over random trainable angles as the
//! embedding deepens, next to the 2-design value.
//!
//! ```text
//! cargo run --release --example sum_squares -- 2,4 5..30:5 zy
//! ```
//!
//! Arguments: qubit list, layer list, layer axes (default `y`).

use pqc_fourier::harness::{parse_int_list, run_fig3, ExperimentConfig, Rows};
use pqc_fourier::Result;

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut config = ExperimentConfig::default()
        .with_qubits(parse_int_list(args.first().map_or("2,4", String::as_str))?)
        .with_layers(parse_int_list(
            args.get(1).map_or("5..30:5", String::as_str),
        )?);
    if let Some(axis) = args.get(2) {
        config.axis = axis.clone();
    }

    let record = run_fig3(&config)?;
    let Rows::Fig3(rows) = &record.rows else {
        unreachable!()
    };
    println!("axes {} / {}", config.axis, config.entangler);
    println!(
        "{:>3} {:>4} {:>10} {:>10} {:>10} {:>8}",
        "n", "L", "mean", "variance", "theory", "rel"
    );
    for r in rows {
        println!(
            "{:>3} {:>4} {:>10.5} {:>10.2e} {:>10.5} {:>+8.3}",
            r.n,
            r.layers,
            r.mean,
            r.variance,
            r.theory,
            (r.mean - r.theory) / r.theory
        );
    }
    eprintln!("{:.1}s", record.wall_clock_secs);
    Ok(())
}
