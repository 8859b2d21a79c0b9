//! Gradient variance of the first parameter of a deep HEA against `n`, and
//! the fitted decay base `b` in `Var ~ b^-n`.
//!
//! ```text
//! cargo run --release --example gradient_variance -- 2..8:2 20
//! ```

use pqc_fourier::diagnostics::{
    finite_difference_grad, gradient_variance, parameter_shift_grad, GradientVarianceReport,
    HeaSpec, ModelFamily,
};
use pqc_fourier::harness::parse_int_list;
use pqc_fourier::seeding::{substream, uniform_angles};
use pqc_fourier::Result;

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let qubits = parse_int_list(args.first().map_or("2..8:2", String::as_str))?;
    let layers: usize = args.get(1).map_or(20, |s| s.parse().expect("layer count"));

    // One gradient by both rules first.
    let family = HeaSpec::new(3, 2);
    let theta = uniform_angles(&mut substream(0, 0), family.num_params());
    let model = family.model(&theta)?;
    println!(
        "hea(3, 2) d/dtheta_0: shift rule {:+.10}, central difference {:+.10}",
        parameter_shift_grad(&model, &theta, 0)?,
        finite_difference_grad(&model, &theta, 0, 1e-5)?
    );

    let entries = qubits
        .iter()
        .map(|&n| gradient_variance(&HeaSpec::new(n, layers), 0, 500, 42))
        .collect::<Result<Vec<_>>>()?;
    let report = GradientVarianceReport::new(entries);
    for e in &report.per_n {
        println!(
            "n={:>2} L={} Var[d f/d theta_0] = {:.4e}",
            e.n, e.layers, e.variance
        );
    }
    if let Some(fit) = &report.fit {
        println!("b = {:.4}, R^2 = {:.4}", fit.b, fit.r_squared);
    }
    Ok(())
}
