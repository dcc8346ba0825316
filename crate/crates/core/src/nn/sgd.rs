//! Plain stochastic gradient descent with momentum.

use super::ParamBundle;

/// One update step: `v <- momentum*v - lr*g; p <- p + v`.
///
/// `vel` must be a `zeros_like` clone of `params` on the first call and is
/// carried between steps.
pub fn sgd_momentum_step<P: ParamBundle>(
    params: &mut P,
    grads: &P,
    vel: &mut P,
    lr: f64,
    momentum: f64,
) {
    let gs = grads.tensors();
    for (((_, mut p), (_, g)), (_, mut v)) in
        params.tensors_mut().into_iter().zip(gs).zip(vel.tensors_mut())
    {
        v.zip_mut_with(&g, |v, &g| *v = momentum * *v - lr * g);
        p.zip_mut_with(&v.view(), |p, &v| *p += v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::ParamBundle;
    use ndarray::{Array1, ArrayViewD, ArrayViewMutD};

    #[derive(Clone)]
    struct One(Array1<f64>);

    impl ParamBundle for One {
        fn tensors(&self) -> Vec<(String, ArrayViewD<'_, f64>)> {
            vec![("x".into(), self.0.view().into_dyn())]
        }
        fn tensors_mut(&mut self) -> Vec<(String, ArrayViewMutD<'_, f64>)> {
            vec![("x".into(), self.0.view_mut().into_dyn())]
        }
        fn zeros_like(&self) -> Self {
            One(Array1::zeros(self.0.len()))
        }
    }

    #[test]
    fn momentum_accumulates() {
        let mut p = One(Array1::zeros(1));
        let g = One(Array1::from_elem(1, 1.0));
        let mut v = p.zeros_like();
        sgd_momentum_step(&mut p, &g, &mut v, 0.1, 0.9);
        assert!((p.0[0] - (-0.1)).abs() < 1e-15);
        sgd_momentum_step(&mut p, &g, &mut v, 0.1, 0.9);
        // v = 0.9*(-0.1) - 0.1 = -0.19; p = -0.1 - 0.19 = -0.29
        assert!((p.0[0] - (-0.29)).abs() < 1e-15);
    }
}
