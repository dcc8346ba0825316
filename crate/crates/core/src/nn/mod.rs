//! Small hand-rolled neural-network toolbox: seeded RNG, dense and
//! convolutional layers with analytic backprop, SGD with momentum, and a
//! finite-difference gradient checker.
//!
//! Everything is `f64` and deterministic given a seed. There is no autograd;
//! each layer exposes an explicit `backward` that accumulates parameter
//! gradients, and the gradient checker keeps those derivations honest.

mod conv;
mod gradcheck;
mod linear;
mod rng;
mod sgd;

pub use conv::{Conv2d, FeatureMap};
pub use gradcheck::{check_bundle_grads, relative_error};
pub use linear::Linear;
pub use rng::{derive_seed, SeededRng};
pub use sgd::sgd_momentum_step;

use ndarray::{ArrayViewD, ArrayViewMutD};

/// A set of named parameter tensors.
///
/// Models implement this to expose their tensors to the optimizer, the
/// checkpoint writer, and the gradient checker. `tensors`/`tensors_mut`
/// must yield the same names in the same order, and `zeros_like` must
/// produce an identically-shaped bundle.
pub trait ParamBundle {
    fn tensors(&self) -> Vec<(String, ArrayViewD<'_, f64>)>;
    fn tensors_mut(&mut self) -> Vec<(String, ArrayViewMutD<'_, f64>)>;
    fn zeros_like(&self) -> Self;
}
