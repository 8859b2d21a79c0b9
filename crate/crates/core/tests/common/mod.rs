//! Dense-matrix reference implementations shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use pqc_fourier::sim::{Gate, GateKind, Pauli};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_matrix(p: Pauli) -> DMatrix<Complex64> {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match p {
        Pauli::I => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        Pauli::X => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        Pauli::Y => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        Pauli::Z => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// `P_{n-1} (x) ... (x) P_0`: qubit 0 is the least significant index bit.
pub fn pauli_string_matrix(n: usize, terms: &[(usize, Pauli)]) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::identity(1, 1);
    for q in (0..n).rev() {
        let p = terms
            .iter()
            .find(|(t, _)| *t == q)
            .map_or(Pauli::I, |&(_, p)| p);
        m = m.kronecker(&pauli_matrix(p));
    }
    m
}

/// `exp(-i angle P / 2)` by the matrix exponential.
pub fn rotation_matrix(n: usize, terms: &[(usize, Pauli)], angle: f64) -> DMatrix<Complex64> {
    (pauli_string_matrix(n, terms) * c(0.0, -angle / 2.0)).exp()
}

fn bit(j: usize, q: usize) -> usize {
    (j >> q) & 1
}

/// Full `2^n x 2^n` matrix of a resolved gate.
pub fn gate_matrix(n: usize, gate: &Gate) -> DMatrix<Complex64> {
    let d = 1usize << n;
    match &gate.kind {
        GateKind::Rotation { paulis } => {
            let terms: Vec<(usize, Pauli)> = gate
                .qubits
                .iter()
                .copied()
                .zip(paulis.iter().copied())
                .collect();
            rotation_matrix(n, &terms, gate.angle().expect("bound angle"))
        }
        GateKind::Hadamard => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let local =
                DMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]);
            embed(n, &[gate.qubits[0]], &local)
        }
        GateKind::Cnot => {
            let (ctl, tgt) = (gate.qubits[0], gate.qubits[1]);
            DMatrix::from_fn(d, d, |i, j| {
                let image = if bit(j, ctl) == 1 { j ^ (1 << tgt) } else { j };
                if i == image {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            })
        }
        GateKind::Fixed { matrix } => {
            let k = gate.qubits.len();
            let dim = 1 << k;
            let local = DMatrix::from_fn(dim, dim, |r, col| {
                let [re, im] = matrix[r * dim + col];
                c(re, im)
            });
            embed(n, &gate.qubits, &local)
        }
    }
}

/// Lift a local matrix on `qubits` (first listed = least significant local bit).
pub fn embed(n: usize, qubits: &[usize], local: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let d = 1usize << n;
    let local_index = |j: usize| {
        qubits
            .iter()
            .enumerate()
            .map(|(b, &q)| bit(j, q) << b)
            .sum::<usize>()
    };
    let mask: usize = qubits.iter().map(|&q| 1 << q).sum();
    DMatrix::from_fn(d, d, |i, j| {
        if i & !mask != j & !mask {
            c(0.0, 0.0)
        } else {
            local[(local_index(i), local_index(j))]
        }
    })
}

/// Product of gate matrices, first gate applied first.
pub fn circuit_matrix(n: usize, gates: &[Gate]) -> DMatrix<Complex64> {
    gates
        .iter()
        .fold(DMatrix::identity(1 << n, 1 << n), |acc, g| {
            gate_matrix(n, g) * acc
        })
}

pub fn zero_vector(n: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(1 << n);
    v[0] = c(1.0, 0.0);
    v
}

/// `<psi| O |psi>` with `O` given densely.
pub fn dense_expectation(psi: &DVector<Complex64>, o: &DMatrix<Complex64>) -> f64 {
    (psi.adjoint() * o * psi)[(0, 0)].re
}
