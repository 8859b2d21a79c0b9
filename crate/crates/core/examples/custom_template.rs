//! A hand-written template with one trainable block and two data variables,
//! its JSON form, and the joint spectrum in both variables.
//!
//! ```text
//! cargo run --example custom_template
//! ```

use pqc_fourier::circuits::{Bindings, Block, CircuitTemplate, Model, Variable};
use pqc_fourier::fourier::{model_spectrum, model_spectrum_2d, parseval_sum};
use pqc_fourier::sim::{Gate, Observable, Pauli, PauliString, Slot};
use pqc_fourier::Result;

fn main() -> Result<()> {
    let gates = vec![
        Gate::ry(0, Slot::data("x")),
        Gate::rx(1, Slot::data("y")),
        Gate::cnot(0, 1),
        Gate::rotation(&[(0, Pauli::Z), (1, Pauli::Z)], Slot::param(0, 0)),
        Gate::ry(0, Slot::data("x")),
        Gate::ry(1, Slot::param(0, 1)),
    ];
    let template = CircuitTemplate::new(
        2,
        gates,
        vec![Block::new("train", 2)],
        vec!["x".into(), "y".into()],
    )?;
    let json = serde_json::to_string(&template)?;
    let template: CircuitTemplate = serde_json::from_str(&json)?;
    println!("template JSON: {} bytes", json.len());

    let fixed = Bindings::params(vec![vec![0.8, -1.1]]).with_data("y", 0.4);
    let model = Model::new(
        template,
        Observable::Pauli(PauliString::all_z(2)),
        Variable::data("x"),
        fixed,
    )?;
    let s = model_spectrum(&model)?;
    println!("spectrum in x (R = {}):", s.max_freq());
    for (k, c) in s.iter() {
        println!("  c_{k:+} = {:+.6} {:+.6}i", c.re, c.im);
    }
    println!("sum |c_k|^2 = {:.8}", parseval_sum(&s));

    let (r, joint) = model_spectrum_2d(&model, &Variable::data("y"))?;
    let side = 2 * r + 1;
    println!("joint spectrum in (x, y), |c|^2 on a {side}x{side} grid:");
    for row in joint.chunks(side) {
        let line: Vec<String> = row.iter().map(|c| format!("{:.4}", c.norm_sqr())).collect();
        println!("  {}", line.join(" "));
    }
    Ok(())
}
