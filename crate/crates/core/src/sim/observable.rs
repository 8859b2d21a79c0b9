use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gate::Pauli;
use super::state::{PauliMasks, Statevector};
use crate::error::{Error, Result};

/// Tensor product of Paulis; character `q` of the text form acts on qubit `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(paulis: Vec<Pauli>) -> Self {
        PauliString(paulis)
    }

    /// `Z` on every one of `n` qubits.
    pub fn all_z(n: usize) -> Self {
        PauliString(vec![Pauli::Z; n])
    }

    pub fn identity(n: usize) -> Self {
        PauliString(vec![Pauli::I; n])
    }

    pub fn paulis(&self) -> &[Pauli] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|p| write!(f, "{p}"))
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| c.to_string().parse())
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

/// Computational basis bitstring; character `q` is the value of qubit `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn new(bits: Vec<bool>) -> Self {
        Bitstring(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Bitstring(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Amplitude index of `|b>` with qubit 0 as the least significant bit.
    pub fn index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(q, _)| 1usize << q)
            .sum()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0
            .iter()
            .try_for_each(|&b| write!(f, "{}", if b { '1' } else { '0' }))
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Config(format!("bad bit `{other}` in bitstring"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bitstring)
    }
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(PauliString);
string_serde!(Bitstring);

/// Measured quantity: a Pauli expectation or a bitstring probability.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Pauli(PauliString),
    Projector(Bitstring),
}

impl Observable {
    pub fn evaluate(&self, state: &Statevector) -> Result<f64> {
        match self {
            Observable::Pauli(p) => expectation(state, p),
            Observable::Projector(b) => probability(state, b),
        }
    }

    /// Number of qubits the observable is written on.
    pub fn width(&self) -> usize {
        match self {
            Observable::Pauli(p) => p.len(),
            Observable::Projector(b) => b.len(),
        }
    }
}

/// `<psi|P|psi>` for a Pauli string acting on at most `n` qubits.
pub fn expectation(state: &Statevector, obs: &PauliString) -> Result<f64> {
    let n = state.num_qubits();
    if obs.len() > n {
        return Err(Error::Structure(format!(
            "Pauli string on {} qubits applied to {n}-qubit state",
            obs.len()
        )));
    }
    // States are normalised, so the identity contributes exactly 1.
    if obs.is_identity() {
        return Ok(1.0);
    }
    let masks = PauliMasks::new(obs.paulis().iter().copied().enumerate());
    let amps = state.amplitudes();
    let value: Complex64 = amps
        .iter()
        .enumerate()
        .map(|(j, &a)| amps[j ^ masks.flip].conj() * masks.coeff(j) * a)
        .sum();
    debug_assert!(
        value.im.abs() < 1e-10,
        "Pauli expectation has imaginary residue {}",
        value.im
    );
    Ok(value.re)
}

/// `|<b|psi>|^2`; the bitstring must cover every qubit.
pub fn probability(state: &Statevector, b: &Bitstring) -> Result<f64> {
    let n = state.num_qubits();
    if b.len() != n {
        return Err(Error::Structure(format!(
            "bitstring of length {} for {n}-qubit state",
            b.len()
        )));
    }
    Ok(state.amplitudes()[b.index()].norm_sqr())
}
