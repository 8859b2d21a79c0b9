//! Exact Fourier coefficients of a QNN output in the data variable `x`.
//!
//! Prints the spectrum as `k,re,im,abs2` CSV, then checks Parseval and
//! reconstruction against direct evaluation.
//!
//! ```text
//! cargo run --release --example spectrum -- 3 4
//! ```

use pqc_fourier::circuits::QnnSpec;
use pqc_fourier::fourier::{model_spectrum, parseval_sum};
use pqc_fourier::seeding::{substream, uniform_angles};
use pqc_fourier::Result;

fn main() -> Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let n = args.first().copied().unwrap_or(2);
    let layers = args.get(1).copied().unwrap_or(3);

    let theta = uniform_angles(&mut substream(1, 0), n);
    let model = QnnSpec::new(n, layers).model(&theta)?;
    let spectrum = model_spectrum(&model)?;
    spectrum.write_csv(std::io::stdout().lock())?;

    eprintln!(
        "R = {} data gates, grid of {} points",
        model.data_gate_count(),
        spectrum.grid_size()
    );
    eprintln!("sum |c_k|^2 = {:.10}", parseval_sum(&spectrum));
    eprintln!("hermitian defect = {:.2e}", spectrum.hermitian_defect());
    for x in [0.3, 1.7, 4.0] {
        let direct = model.output(x)?;
        eprintln!(
            "f({x}) = {direct:+.10}   series = {:+.10}",
            spectrum.reconstruct(x)
        );
    }
    Ok(())
}
