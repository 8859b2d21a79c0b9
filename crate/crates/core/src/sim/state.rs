use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gate::{Gate, GateKind, Pauli};
use crate::error::{Error, Result};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense pure state of `n` qubits. Amplitude index bit `q` is qubit `q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

/// Bit masks describing how a Pauli string acts on basis states:
/// `P|j> = i^{ny} (-1)^{popcount(j & phase)} |j ^ flip>`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PauliMasks {
    pub flip: usize,
    pub phase: usize,
    pub ny: u32,
}

impl PauliMasks {
    pub fn new(terms: impl IntoIterator<Item = (usize, Pauli)>) -> Self {
        let mut m = PauliMasks {
            flip: 0,
            phase: 0,
            ny: 0,
        };
        for (q, p) in terms {
            let bit = 1usize << q;
            match p {
                Pauli::I => {}
                Pauli::X => m.flip |= bit,
                Pauli::Y => {
                    m.flip |= bit;
                    m.phase |= bit;
                    m.ny += 1;
                }
                Pauli::Z => m.phase |= bit,
            }
        }
        m
    }

    /// Coefficient of `|j ^ flip>` in `P|j>`.
    #[inline]
    pub fn coeff(&self, j: usize) -> Complex64 {
        let sign = if (j & self.phase).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        match self.ny % 4 {
            0 => Complex64::new(sign, 0.0),
            1 => Complex64::new(0.0, sign),
            2 => Complex64::new(-sign, 0.0),
            _ => Complex64::new(0.0, -sign),
        }
    }
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "qubit count {n} outside supported range 1..={MAX_QUBITS}"
        )))
    }
}

impl Statevector {
    /// `|0...0>` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n, amps })
    }

    /// Wrap raw amplitudes. The length must be a power of two and the norm 1 within 1e-10.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Structure(format!(
                "amplitude vector of length {len} is not 2^n with n >= 1"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_qubits(n)?;
        let state = Statevector { n, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Structure(format!(
                "amplitudes have squared norm {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Apply a resolved gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        match &gate.kind {
            GateKind::Rotation { paulis } => {
                let angle = gate.angle().ok_or_else(|| {
                    Error::Binding(format!("rotation slot {:?} is not bound", gate.slot))
                })?;
                let masks =
                    PauliMasks::new(gate.qubits.iter().copied().zip(paulis.iter().copied()));
                self.rotate(masks, angle);
            }
            GateKind::Hadamard => self.hadamard(gate.qubits[0]),
            GateKind::Cnot => self.cnot(gate.qubits[0], gate.qubits[1]),
            GateKind::Fixed { .. } => {
                let m = gate.fixed_matrix().expect("fixed gate");
                match gate.qubits.as_slice() {
                    [q] => self.one_qubit(*q, [m[0], m[1], m[2], m[3]]),
                    [q0, q1] => self.two_qubit(*q0, *q1, &m),
                    _ => unreachable!("validated arity"),
                }
            }
        }
        Ok(())
    }

    fn rotate(&mut self, masks: PauliMasks, angle: f64) {
        let (s, c) = (angle / 2.0).sin_cos();
        // -i sin(angle/2)
        let mis = Complex64::new(0.0, -s);
        if masks.flip == 0 {
            for (j, a) in self.amps.iter_mut().enumerate() {
                *a *= c + mis * masks.coeff(j);
            }
            return;
        }
        let top = 1usize << (usize::BITS - 1 - masks.flip.leading_zeros());
        for k in 0..self.amps.len() {
            if k & top != 0 {
                continue;
            }
            let kf = k ^ masks.flip;
            let a = self.amps[k];
            let b = self.amps[kf];
            self.amps[k] = a * c + mis * masks.coeff(kf) * b;
            self.amps[kf] = b * c + mis * masks.coeff(k) * a;
        }
    }

    fn one_qubit(&mut self, q: usize, m: [Complex64; 4]) {
        let bit = 1usize << q;
        for k in 0..self.amps.len() {
            if k & bit != 0 {
                continue;
            }
            let a = self.amps[k];
            let b = self.amps[k | bit];
            self.amps[k] = m[0] * a + m[1] * b;
            self.amps[k | bit] = m[2] * a + m[3] * b;
        }
    }

    fn two_qubit(&mut self, q0: usize, q1: usize, m: &[Complex64]) {
        let (b0, b1) = (1usize << q0, 1usize << q1);
        for k in 0..self.amps.len() {
            if k & (b0 | b1) != 0 {
                continue;
            }
            let idx = [k, k | b0, k | b1, k | b0 | b1];
            let v = idx.map(|i| self.amps[i]);
            for (r, &i) in idx.iter().enumerate() {
                self.amps[i] = (0..4).map(|c| m[r * 4 + c] * v[c]).sum();
            }
        }
    }

    fn hadamard(&mut self, q: usize) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bit = 1usize << q;
        for k in 0..self.amps.len() {
            if k & bit != 0 {
                continue;
            }
            let a = self.amps[k];
            let b = self.amps[k | bit];
            self.amps[k] = (a + b) * h;
            self.amps[k | bit] = (a - b) * h;
        }
    }

    fn cnot(&mut self, control: usize, target: usize) {
        let (cb, tb) = (1usize << control, 1usize << target);
        for k in 0..self.amps.len() {
            if k & cb != 0 && k & tb == 0 {
                self.amps.swap(k, k | tb);
            }
        }
    }
}

/// `|0...0>` on `n` qubits, `1 <= n <= MAX_QUBITS`.
pub fn zero_state(n: usize) -> Result<Statevector> {
    Statevector::zero(n)
}

/// Apply a resolved gate, returning the new state.
pub fn apply_gate(state: &Statevector, gate: &Gate) -> Result<Statevector> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}
