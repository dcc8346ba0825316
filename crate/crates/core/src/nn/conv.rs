//! Strided 3x3 convolution via im2col and matrix multiplication.
//!
//! Feature maps are stored as `[h*w, channels]` matrices so convolution,
//! pooling and the backward pass all reduce to GEMM and simple gathers;
//! nothing in the pipeline needs a channel-major transpose.

use ndarray::linalg::general_mat_mul;
use ndarray::{Array1, Array2, Axis};

use super::SeededRng;

pub const KERNEL: usize = 3;
const PAD: isize = 1;

/// A `[h*w, channels]` activation matrix with its spatial dimensions.
#[derive(Debug, Clone)]
pub struct FeatureMap {
    pub data: Array2<f64>,
    pub h: usize,
    pub w: usize,
}

impl FeatureMap {
    pub fn zeros(h: usize, w: usize, channels: usize) -> Self {
        FeatureMap {
            data: Array2::zeros((h * w, channels)),
            h,
            w,
        }
    }

    pub fn channels(&self) -> usize {
        self.data.ncols()
    }
}

/// 3x3 convolution with padding 1 and a configurable stride.
///
/// Weights are stored flattened as `[in_c*9, out_c]` so the forward pass is
/// one GEMM against the im2col patch matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Conv2d {
    pub w: Array2<f64>,
    pub b: Array1<f64>,
    pub in_c: usize,
    pub out_c: usize,
    pub stride: usize,
}

impl Conv2d {
    pub fn zeros(in_c: usize, out_c: usize, stride: usize) -> Self {
        Conv2d {
            w: Array2::zeros((in_c * KERNEL * KERNEL, out_c)),
            b: Array1::zeros(out_c),
            in_c,
            out_c,
            stride,
        }
    }

    /// Fan-in scaled init (fan_in = in_c * 9), zero biases.
    pub fn seeded(in_c: usize, out_c: usize, stride: usize, rng: &mut SeededRng) -> Self {
        let fan_in = in_c * KERNEL * KERNEL;
        let std = (1.0 / fan_in as f64).sqrt();
        let w = Array2::from_shape_fn((fan_in, out_c), |_| rng.normal() * std);
        Conv2d {
            w,
            b: Array1::zeros(out_c),
            in_c,
            out_c,
            stride,
        }
    }

    pub fn out_hw(&self, h: usize, w: usize) -> (usize, usize) {
        ((h - 1) / self.stride + 1, (w - 1) / self.stride + 1)
    }

    /// im2col gather: rows are output positions, columns are
    /// `(in_channel, ky, kx)` taps. Out-of-bounds taps contribute zero.
    pub fn im2col(&self, input: &FeatureMap) -> Array2<f64> {
        let (oh, ow) = self.out_hw(input.h, input.w);
        let mut patches = Array2::zeros((oh * ow, self.in_c * KERNEL * KERNEL));
        for oy in 0..oh {
            for ox in 0..ow {
                let row = oy * ow + ox;
                for ky in 0..KERNEL {
                    let y = (oy * self.stride) as isize + ky as isize - PAD;
                    if y < 0 || y >= input.h as isize {
                        continue;
                    }
                    for kx in 0..KERNEL {
                        let x = (ox * self.stride) as isize + kx as isize - PAD;
                        if x < 0 || x >= input.w as isize {
                            continue;
                        }
                        let src = y as usize * input.w + x as usize;
                        for c in 0..self.in_c {
                            patches[[row, c * KERNEL * KERNEL + ky * KERNEL + kx]] =
                                input.data[[src, c]];
                        }
                    }
                }
            }
        }
        patches
    }

    /// Returns the pre-activation map and the patch matrix needed by
    /// `backward`.
    pub fn forward(&self, input: &FeatureMap) -> (FeatureMap, Array2<f64>) {
        let (oh, ow) = self.out_hw(input.h, input.w);
        let patches = self.im2col(input);
        let mut data = patches.dot(&self.w);
        data += &self.b;
        (FeatureMap { data, h: oh, w: ow }, patches)
    }

    /// Accumulates weight/bias gradients and returns dL/dinput.
    ///
    /// `d_pre` is the gradient at the pre-activation output, shaped like the
    /// forward output `[oh*ow, out_c]`.
    pub fn backward(
        &self,
        d_pre: &Array2<f64>,
        patches: &Array2<f64>,
        in_h: usize,
        in_w: usize,
        grad: &mut Conv2d,
    ) -> FeatureMap {
        general_mat_mul(1.0, &patches.t(), d_pre, 1.0, &mut grad.w);
        grad.b += &d_pre.sum_axis(Axis(0));

        // Scatter-add of d_patches back onto the input grid (col2im).
        let d_patches = d_pre.dot(&self.w.t());
        let (oh, ow) = self.out_hw(in_h, in_w);
        let mut d_input = FeatureMap::zeros(in_h, in_w, self.in_c);
        for oy in 0..oh {
            for ox in 0..ow {
                let row = oy * ow + ox;
                for ky in 0..KERNEL {
                    let y = (oy * self.stride) as isize + ky as isize - PAD;
                    if y < 0 || y >= in_h as isize {
                        continue;
                    }
                    for kx in 0..KERNEL {
                        let x = (ox * self.stride) as isize + kx as isize - PAD;
                        if x < 0 || x >= in_w as isize {
                            continue;
                        }
                        let dst = y as usize * in_w + x as usize;
                        for c in 0..self.in_c {
                            d_input.data[[dst, c]] +=
                                d_patches[[row, c * KERNEL * KERNEL + ky * KERNEL + kx]];
                        }
                    }
                }
            }
        }
        d_input
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn impulse_map(h: usize, w: usize, y: usize, x: usize) -> FeatureMap {
        let mut fm = FeatureMap::zeros(h, w, 1);
        fm.data[[y * w + x, 0]] = 1.0;
        fm
    }

    #[test]
    fn identity_kernel_reproduces_input() {
        // Kernel with 1.0 at the center tap copies the input at stride 1.
        let mut conv = Conv2d::zeros(1, 1, 1);
        conv.w[[1 * KERNEL + 1, 0]] = 1.0;
        let fm = impulse_map(4, 5, 2, 3);
        let (out, _) = conv.forward(&fm);
        assert_eq!(out.h, 4);
        assert_eq!(out.w, 5);
        assert_abs_diff_eq!(out.data[[2 * 5 + 3, 0]], 1.0);
        assert_abs_diff_eq!(out.data.sum(), 1.0);
    }

    #[test]
    fn stride_two_output_shape() {
        let conv = Conv2d::zeros(2, 3, 2);
        assert_eq!(conv.out_hw(8, 16), (4, 8));
        assert_eq!(conv.out_hw(7, 15), (4, 8));
    }

    #[test]
    fn shifted_kernel_translates_impulse() {
        // Tap at (ky=0, kx=0) reads input(y-1, x-1), shifting the image by +1.
        let mut conv = Conv2d::zeros(1, 1, 1);
        conv.w[[0, 0]] = 1.0;
        let fm = impulse_map(4, 4, 1, 1);
        let (out, _) = conv.forward(&fm);
        assert_abs_diff_eq!(out.data[[2 * 4 + 2, 0]], 1.0);
        assert_abs_diff_eq!(out.data.sum(), 1.0);
    }

    #[test]
    fn backward_matches_finite_difference_on_weights() {
        let mut rng = SeededRng::new(11);
        let conv = Conv2d::seeded(2, 3, 2, &mut rng);
        let mut input = FeatureMap::zeros(5, 6, 2);
        for v in input.data.iter_mut() {
            *v = rng.normal();
        }
        // Loss = sum of outputs, so d_pre is all ones.
        let loss = |c: &Conv2d| c.forward(&input).0.data.sum();

        let (out, patches) = conv.forward(&input);
        let d_pre = Array2::ones(out.data.raw_dim());
        let mut grad = Conv2d::zeros(2, 3, 2);
        let d_input = conv.backward(&d_pre, &patches, 5, 6, &mut grad);

        let h = 1e-6;
        for idx in [(0usize, 0usize), (5, 1), (17, 2), (8, 0)] {
            let mut plus = conv.clone();
            plus.w[idx] += h;
            let mut minus = conv.clone();
            minus.w[idx] -= h;
            let fd = (loss(&plus) - loss(&minus)) / (2.0 * h);
            assert_abs_diff_eq!(grad.w[idx], fd, epsilon = 1e-6);
        }

        // Input gradient via finite differences on one element.
        let h_in = 1e-6;
        let probe = (7usize, 1usize);
        let mut plus = input.clone();
        plus.data[probe] += h_in;
        let mut minus = input.clone();
        minus.data[probe] -= h_in;
        let fd = (conv.forward(&plus).0.data.sum() - conv.forward(&minus).0.data.sum())
            / (2.0 * h_in);
        assert_abs_diff_eq!(d_input.data[probe], fd, epsilon = 1e-6);
    }
}
