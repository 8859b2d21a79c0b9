//! Barren-plateau diagnostics: parameter-shift gradients and their variance,
//! two-copy moments and expressibility, and the 2-design check on
//! `sum_k |c_k|^2`.

mod bound;
mod gradient;
mod moments;

pub use bound::{design_bound_check, DesignBoundReport};
pub use gradient::{
    finite_difference_grad, fit_decay, gradient_variance, parameter_shift_grad, DecayFit,
    GradientVarianceEntry, GradientVarianceReport, HeaSpec, ModelFamily,
};
pub use moments::{
    ensemble_second_moment, expressibility2, haar_random_unitary, haar_second_moment,
    states_second_moment, swap_operator, trace_distance_norm, SecondMomentMatrix,
    MAX_MOMENT_QUBITS,
};
