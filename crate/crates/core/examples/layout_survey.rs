//! Rank embedding layouts by how close the one-variable family `E(x)` comes
//! to a unitary 2-design on `|0...0>`, next to the sampled mean of
//! `sum_k |c_k|^2` relative to its 2-design value.
//!
//! The two-copy moment of `E(x)|0>` is a trigonometric polynomial of degree
//! `2R` in `x`, so averaging over `4R + 1` grid points gives it exactly.
//!
//! ```text
//! cargo run --release --example layout_survey -- 2 20
//! ```

use pqc_fourier::circuits::{hee, Entangler, Layout, OutputType, QnnSpec, DATA_VAR};
use pqc_fourier::diagnostics::{haar_second_moment, states_second_moment, trace_distance_norm};
use pqc_fourier::fourier::{grid_point, sum_sq_statistics};
use pqc_fourier::sim::{zero_state, Pauli};
use pqc_fourier::Result;
use std::collections::BTreeMap;

fn embedding_epsilon(n: usize, layers: usize, layout: &Layout) -> Result<f64> {
    let template = hee(n, layers, layout)?;
    let r = template.gates().iter().filter(|g| g.slot.is_some()).count();
    let grid = 4 * r + 1;
    let states = (0..grid)
        .map(|j| {
            let data = BTreeMap::from([(DATA_VAR.to_string(), grid_point(j, grid))]);
            let circuit = pqc_fourier::circuits::bind(&template, &[], &data)?;
            pqc_fourier::sim::run(&circuit, n)
        })
        .collect::<Result<Vec<_>>>()?;
    let ensemble = states_second_moment(&states)?;
    trace_distance_norm(&haar_second_moment(&zero_state(n)?)?, &ensemble)
}

fn main() -> Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let n = args.first().copied().unwrap_or(2);
    let layers = args.get(1).copied().unwrap_or(20);

    use Pauli::{X, Y, Z};
    let candidates = [
        vec![X],
        vec![Y],
        vec![Z],
        vec![X, Y],
        vec![X, Z],
        vec![Y, X],
        vec![Y, Z],
        vec![Z, X],
        vec![Z, Y],
        vec![X, Y, Z],
        vec![Z, X, Z],
        vec![Z, Y, Z],
    ];
    let mut rows = Vec::new();
    for axes in candidates {
        for entangler in [Entangler::Chain, Entangler::Ring] {
            let layout = Layout::new(axes.clone(), entangler);
            let spec = QnnSpec::new(n, layers).with_layout(layout.clone());
            let mean = sum_sq_statistics(&spec, 100, 7)?.mean;
            let ratio = mean / OutputType::Expectation.design_value(n);
            rows.push((embedding_epsilon(n, layers, &layout)?, ratio, layout));
        }
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    println!("n={n} L={layers}");
    println!(
        "{:>8} {:>6} {:>12} {:>12}",
        "axes", "ent", "epsilon2", "mean/theory"
    );
    for (eps, ratio, layout) in rows {
        println!(
            "{:>8} {:>6} {:>12.5} {:>12.4}",
            layout.axes_label(),
            layout.entangler,
            eps,
            ratio
        );
    }
    Ok(())
}
