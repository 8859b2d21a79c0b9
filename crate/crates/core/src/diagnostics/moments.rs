use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::circuits::CircuitTemplate;
use crate::error::{Error, Result};
use crate::seeding::{substream, symmetric_angles};
use crate::sim::Statevector;

/// Largest register for which two-copy moments are formed densely (`4^5 = 1024`).
pub const MAX_MOMENT_QUBITS: usize = 5;

/// Two-copy state `E[U^{(x)2} rho^{(x)2} U^{dag (x)2}]` as a `d^2 x d^2` matrix.
/// Basis index of `|i>|j>` is `i * d + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondMomentMatrix {
    pub d: usize,
    pub matrix: DMatrix<Complex64>,
}

impl SecondMomentMatrix {
    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Largest entry of `|M - M^dag|`.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).camax()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .matrix
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Largest entry of `|M S - S M|` with `S` the copy swap.
    pub fn swap_commutator(&self) -> f64 {
        let s = swap_operator(self.d);
        (&self.matrix * &s - &s * &self.matrix).camax()
    }
}

fn check_moment_qubits(n: usize) -> Result<()> {
    if n > MAX_MOMENT_QUBITS {
        return Err(Error::Config(format!(
            "two-copy moments are capped at n <= {MAX_MOMENT_QUBITS}, got {n}"
        )));
    }
    Ok(())
}

/// `S |i>|j> = |j>|i>` on two copies of a `d`-dimensional space.
pub fn swap_operator(d: usize) -> DMatrix<Complex64> {
    let mut s = DMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            s[(j * d + i, i * d + j)] = Complex64::new(1.0, 0.0);
        }
    }
    s
}

/// Haar average of a pure two-copy state: `(I + S) / (d (d + 1))`.
pub fn haar_second_moment(state: &Statevector) -> Result<SecondMomentMatrix> {
    let n = state.num_qubits();
    check_moment_qubits(n)?;
    let d = 1usize << n;
    let scale = 1.0 / (d * (d + 1)) as f64;
    let mut m = swap_operator(d);
    for k in 0..d * d {
        m[(k, k)] += Complex64::new(1.0, 0.0);
    }
    m *= Complex64::new(scale, 0.0);
    Ok(SecondMomentMatrix { d, matrix: m })
}

/// `|phi> (x) |phi>` as a length `d^2` vector.
fn doubled(phi: &[Complex64]) -> Vec<Complex64> {
    phi.iter()
        .flat_map(|&a| phi.iter().map(move |&b| a * b))
        .collect()
}

const CHUNK: usize = 256;

/// Average of `v v^dag` over the given two-copy vectors, accumulated in order.
fn average_projector(vectors: &[Vec<Complex64>], dim: usize) -> DMatrix<Complex64> {
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for chunk in vectors.chunks(CHUNK) {
        let a = DMatrix::from_fn(dim, chunk.len(), |r, c| chunk[c][r]);
        acc += &a * a.adjoint();
    }
    acc / Complex64::new(vectors.len() as f64, 0.0)
}

/// Monte Carlo estimate of the template's two-copy moment acting on `state`.
///
/// Every parameter and data slot is drawn uniformly from `[-pi, pi)`; draw
/// `s` uses substream `(seed, s)`. Accumulation follows the draw index.
pub fn ensemble_second_moment(
    template: &CircuitTemplate,
    state: &Statevector,
    samples: usize,
    seed: u64,
) -> Result<SecondMomentMatrix> {
    let n = template.num_qubits();
    if state.num_qubits() != n {
        return Err(Error::Structure(format!(
            "{}-qubit input state for a {n}-qubit template",
            state.num_qubits()
        )));
    }
    check_moment_qubits(n)?;
    if samples < 100 {
        return Err(Error::Config(format!(
            "ensemble moment needs at least 100 draws, got {samples}"
        )));
    }
    let d = 1usize << n;
    let vectors = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = substream(seed, s as u64);
            let params: Vec<Vec<f64>> = template
                .blocks()
                .iter()
                .map(|b| symmetric_angles(&mut rng, b.dim))
                .collect();
            let data = template
                .data_vars()
                .iter()
                .map(|v| (v.clone(), symmetric_angles(&mut rng, 1)[0]))
                .collect();
            let circuit = crate::circuits::bind(template, &params, &data)?;
            let mut phi = state.clone();
            circuit.apply_to(&mut phi)?;
            Ok(doubled(phi.amplitudes()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SecondMomentMatrix {
        d,
        matrix: average_projector(&vectors, d * d),
    })
}

/// Two-copy moment of a fixed list of pure states, each weighted equally.
pub fn states_second_moment(states: &[Statevector]) -> Result<SecondMomentMatrix> {
    let first = states
        .first()
        .ok_or_else(|| Error::Config("no states given".into()))?;
    let n = first.num_qubits();
    check_moment_qubits(n)?;
    if states.iter().any(|s| s.num_qubits() != n) {
        return Err(Error::Structure(
            "states have different qubit counts".into(),
        ));
    }
    let d = 1usize << n;
    let vectors: Vec<_> = states.iter().map(|s| doubled(s.amplitudes())).collect();
    Ok(SecondMomentMatrix {
        d,
        matrix: average_projector(&vectors, d * d),
    })
}

/// Sum of absolute eigenvalues of the Hermitian difference `a - b`.
pub fn trace_distance_norm(a: &SecondMomentMatrix, b: &SecondMomentMatrix) -> Result<f64> {
    if a.d != b.d {
        return Err(Error::Structure(format!(
            "moment dimensions differ: {} vs {}",
            a.d, b.d
        )));
    }
    let diff = &a.matrix - &b.matrix;
    // Symmetrise away rounding before the Hermitian solver.
    let diff = (&diff + diff.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(diff.symmetric_eigenvalues().iter().map(|e| e.abs()).sum())
}

/// Trace-norm distance between the Haar and template two-copy moments.
pub fn expressibility2(
    template: &CircuitTemplate,
    state: &Statevector,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let haar = haar_second_moment(state)?;
    let ensemble = ensemble_second_moment(template, state, samples, seed)?;
    trace_distance_norm(&haar, &ensemble)
}

/// Haar-random `d x d` unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal folded into `Q`.
pub fn haar_random_unitary<R: Rng>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..d {
        let diag = r[(c, c)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for row in 0..d {
            q[(row, c)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{hea, Entangler, Layout};
    use crate::seeding::substream;
    use crate::sim::{zero_state, Gate, Pauli};

    #[test]
    fn haar_moment_single_qubit() {
        let m = haar_second_moment(&zero_state(1).unwrap()).unwrap();
        assert_eq!(m.d, 2);
        assert!((m.trace().re - 1.0).abs() < 1e-12);
        let ev = m.eigenvalues();
        assert!(ev[0].abs() < 1e-12);
        for e in &ev[1..] {
            assert!((e - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!(m.swap_commutator() < 1e-12);
        assert!(m.hermitian_defect() < 1e-12);
    }

    #[test]
    fn moment_cap() {
        let s = zero_state(6).unwrap();
        assert!(matches!(haar_second_moment(&s), Err(Error::Config(_))));
    }

    #[test]
    fn empty_template_gives_product_state() {
        let t = CircuitTemplate::new(2, vec![], vec![], vec![]).unwrap();
        let s = zero_state(2).unwrap();
        let m = ensemble_second_moment(&t, &s, 100, 0).unwrap();
        assert!((m.matrix[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!((m.matrix.sum().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_unitary_point_ensemble() {
        let t = CircuitTemplate::new(1, vec![Gate::hadamard(0)], vec![], vec![]).unwrap();
        let m = ensemble_second_moment(&t, &zero_state(1).unwrap(), 128, 3).unwrap();
        // (H|0>)^{(x)2} = |++>, every entry of the projector is 1/4.
        assert!(m
            .matrix
            .iter()
            .all(|z| (z.re - 0.25).abs() < 1e-12 && z.im.abs() < 1e-12));
    }

    #[test]
    fn too_few_draws() {
        let t = hea(2, 1, &Layout::single(Pauli::Y, Entangler::Chain)).unwrap();
        let err = ensemble_second_moment(&t, &zero_state(2).unwrap(), 99, 0).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn haar_against_itself_is_zero() {
        let h = haar_second_moment(&zero_state(2).unwrap()).unwrap();
        assert_eq!(trace_distance_norm(&h, &h).unwrap(), 0.0);
    }

    #[test]
    fn sampled_unitaries_are_unitary() {
        let mut rng = substream(5, 0);
        let u = haar_random_unitary(4, &mut rng);
        let err = (&u * u.adjoint() - DMatrix::identity(4, 4)).camax();
        assert!(err < 1e-12);
    }
}
