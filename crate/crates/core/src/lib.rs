//! End-to-end toolkit for predicting the physical symptoms of VR sickness
//! (nausea, oculomotor strain, disorientation) from 360-degree video clips.
//!
//! The pipeline has three model stages. An [`encoder`] turns a clip into a
//! sequence of motion-emphasizing feature vectors. A [`store`] network —
//! an external memory trained only on comfortable content — reconstructs the
//! "expected" feature sequence, so the residual signals sickness-inducing
//! content. A [`predictor`] derives a difference embedding from the
//! input/expected pair and regresses the three symptom scores.
//!
//! Around the model sit the dataset tools: [`corpus`] (manifest schema and
//! clip ingestion), [`ssq`] (Simulator Sickness Questionnaire scoring),
//! [`synth`] (a synthetic benchmark generator with analytic ground truth),
//! [`evalkit`] (PLCC/SROCC/RMSE evaluation), and [`trainkit`] (the two-stage
//! training recipe plus checkpoint persistence).
//!
//! All model parameters and training math are `f64`; clip tensors are stored
//! on disk as `f32` (the `VCT1` format) and widened on load.

pub mod corpus;
pub mod encoder;
pub mod error;
pub mod evalkit;
pub mod nn;
pub mod predictor;
pub mod ssq;
pub mod store;
pub mod synth;
pub mod trainkit;

pub use error::{Error, Result};
