//! Central finite-difference verification of analytic gradients.

use ndarray::IxDyn;

use super::ParamBundle;

/// Symmetric relative error; zero when both gradients vanish.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / (a.abs() + b.abs() + 1e-6)
}

/// Compares every component of `analytic` against a central finite
/// difference of `loss` and returns the worst relative error.
///
/// `analytic` must be shaped like `params` and hold dL/dparam. The loss is
/// re-evaluated on perturbed clones, so `params` itself is never mutated.
pub fn check_bundle_grads<P, F>(params: &P, analytic: &P, loss: F) -> f64
where
    P: ParamBundle + Clone,
    F: Fn(&P) -> f64,
{
    let mut worst = 0.0f64;
    let grads = analytic.tensors();
    for (ti, (name, g)) in grads.iter().enumerate() {
        let indices: Vec<IxDyn> = g.indexed_iter().map(|(idx, _)| idx).collect();
        for idx in indices {
            let base = params.tensors()[ti].1[&idx];
            let h = 1e-5 * base.abs().max(1.0);

            let mut plus = params.clone();
            plus.tensors_mut()[ti].1[&idx] = base + h;
            let f_plus = loss(&plus);

            let mut minus = params.clone();
            minus.tensors_mut()[ti].1[&idx] = base - h;
            let f_minus = loss(&minus);

            let fd = (f_plus - f_minus) / (2.0 * h);
            let err = relative_error(g[&idx], fd);
            if err > worst {
                worst = err;
            }
            debug_assert!(
                err.is_finite(),
                "non-finite gradient check for {name} at {idx:?}"
            );
        }
    }
    worst
}
