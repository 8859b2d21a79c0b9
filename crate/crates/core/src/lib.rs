//! Statevector simulation of parameterized quantum circuits together with
//! exact Fourier-spectrum extraction and barren-plateau diagnostics.
//!
//! The crate is organised bottom-up:
//!
//! * [`sim`]: dense statevector, Pauli rotations, expectation and probability outputs.
//! * [`circuits`]: templates with parameter/data slots, the hardware-efficient
//!   ansatz and embedding, and the [`circuits::Model`] used for spectral analysis.
//! * [`fourier`]: grid evaluation, exact coefficients, Parseval sums and sampled statistics.
//! * [`diagnostics`]: parameter-shift gradients, gradient variance, two-copy moments,
//!   expressibility and the 2-design bound check.
//! * [`harness`]: experiment configs, runners and CSV/JSON records.

pub mod circuits;
pub mod diagnostics;
pub mod error;
pub mod fourier;
pub mod harness;
pub mod seeding;
pub mod sim;

pub use error::{Error, Result};
