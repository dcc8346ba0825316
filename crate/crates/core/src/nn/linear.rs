//! Dense layer with explicit backward pass.

use ndarray::linalg::general_mat_mul;
use ndarray::{Array1, Array2, ArrayView1, Axis};

use super::SeededRng;

/// Affine map `y = W x + b` with `W: [out, in]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Linear {
    pub w: Array2<f64>,
    pub b: Array1<f64>,
}

impl Linear {
    pub fn zeros(out_dim: usize, in_dim: usize) -> Self {
        Linear {
            w: Array2::zeros((out_dim, in_dim)),
            b: Array1::zeros(out_dim),
        }
    }

    /// Fan-in scaled init: weights ~ N(0, 1/in_dim), biases zero.
    pub fn seeded(out_dim: usize, in_dim: usize, rng: &mut SeededRng) -> Self {
        let std = (1.0 / in_dim as f64).sqrt();
        let w = Array2::from_shape_fn((out_dim, in_dim), |_| rng.normal() * std);
        Linear {
            w,
            b: Array1::zeros(out_dim),
        }
    }

    pub fn out_dim(&self) -> usize {
        self.w.nrows()
    }

    pub fn in_dim(&self) -> usize {
        self.w.ncols()
    }

    pub fn forward(&self, x: &ArrayView1<f64>) -> Array1<f64> {
        self.w.dot(x) + &self.b
    }

    /// Accumulates dL/dW and dL/db into `grad` and returns dL/dx.
    pub fn backward(
        &self,
        x: &ArrayView1<f64>,
        d_out: &ArrayView1<f64>,
        grad: &mut Linear,
    ) -> Array1<f64> {
        let d_col = d_out.insert_axis(Axis(1));
        let x_row = x.insert_axis(Axis(0));
        general_mat_mul(1.0, &d_col, &x_row, 1.0, &mut grad.w);
        grad.b += d_out;
        self.w.t().dot(d_out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn forward_matches_hand_computation() {
        let lin = Linear {
            w: array![[1.0, 2.0], [3.0, 4.0]],
            b: array![0.5, -0.5],
        };
        let y = lin.forward(&array![1.0, 1.0].view());
        assert_eq!(y, array![3.5, 6.5]);
    }

    #[test]
    fn backward_accumulates_outer_product() {
        let lin = Linear {
            w: array![[1.0, 2.0], [3.0, 4.0]],
            b: array![0.0, 0.0],
        };
        let mut grad = Linear::zeros(2, 2);
        let x = array![1.0, -1.0];
        let d_out = array![2.0, 3.0];
        let dx = lin.backward(&x.view(), &d_out.view(), &mut grad);
        assert_eq!(grad.w, array![[2.0, -2.0], [3.0, -3.0]]);
        assert_eq!(grad.b, array![2.0, 3.0]);
        // dx = W^T d_out
        assert_eq!(dx, array![11.0, 16.0]);
    }
}
