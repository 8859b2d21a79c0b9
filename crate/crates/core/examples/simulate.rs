//! Build a small circuit by hand, run it and read outputs.
//!
//! ```text
//! cargo run --example simulate
//! ```

use std::f64::consts::FRAC_PI_3;

use pqc_fourier::sim::{expectation, probability, run, Bitstring, BoundCircuit, Gate, Slot};
use pqc_fourier::Result;

fn main() -> Result<()> {
    // Bell pair, then a partial X rotation on qubit 1.
    let circuit = BoundCircuit::new(vec![
        Gate::hadamard(0),
        Gate::cnot(0, 1),
        Gate::rx(1, Slot::Constant(FRAC_PI_3)),
    ])?;
    let state = run(&circuit, 2)?;

    for (i, a) in state.amplitudes().iter().enumerate() {
        println!("|{:02b}>  {:+.4} {:+.4}i", i, a.re, a.im);
    }
    for p in ["ZI", "IZ", "ZZ", "XX", "YY"] {
        println!("<{p}> = {:+.6}", expectation(&state, &p.parse()?)?);
    }
    for b in ["00", "10", "01", "11"] {
        let bits: Bitstring = b.parse()?;
        println!("P({b}) = {:.6}", probability(&state, &bits)?);
    }

    // Gates serialize to JSON, so circuits can be stored and reloaded.
    println!("{}", serde_json::to_string_pretty(circuit.gates())?);
    Ok(())
}
