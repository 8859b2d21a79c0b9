//! Distance of the HEA two-copy moment from the Haar moment as depth grows,
//! plus a Monte Carlo check of the Haar closed form.
//!
//! ```text
//! cargo run --release --example expressibility -- 2 5000
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;
use pqc_fourier::circuits::{hea, Layout};
use pqc_fourier::diagnostics::{expressibility2, haar_random_unitary, haar_second_moment};
use pqc_fourier::seeding::substream;
use pqc_fourier::sim::zero_state;
use pqc_fourier::Result;

fn main() -> Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let n = args.first().copied().unwrap_or(2);
    let moments = args.get(1).copied().unwrap_or(5000);
    let state = zero_state(n)?;

    for layers in [1, 2, 5, 10, 20] {
        let template = hea(n, layers, &Layout::default())?;
        let eps: Vec<String> = (0..3)
            .map(|seed| {
                expressibility2(&template, &state, moments, seed).map(|e| format!("{e:.4}"))
            })
            .collect::<Result<_>>()?;
        println!("hea({n}, {layers:>2}): epsilon2 = [{}]", eps.join(", "));
    }

    // Closed form against 2000 sampled Haar unitaries.
    let d = 1usize << n;
    let exact = haar_second_moment(&state)?;
    let mut acc = DMatrix::<Complex64>::zeros(d * d, d * d);
    let draws = 2000;
    for s in 0..draws {
        let u = haar_random_unitary(d, &mut substream(9, s));
        let col = u.column(0);
        let v = DMatrix::from_fn(d * d, 1, |r, _| col[r / d] * col[r % d]);
        acc += &v * v.adjoint();
    }
    acc /= Complex64::new(draws as f64, 0.0);
    println!(
        "largest entry gap, closed form vs {draws} Haar draws: {:.3e}",
        (acc - exact.matrix).camax()
    );
    Ok(())
}
