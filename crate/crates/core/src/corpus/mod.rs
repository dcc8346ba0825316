//! Dataset schema and ingestion: clip manifests, decoded frame tensors,
//! subjective ratings, physiological signals, and cross-validation folds.
//!
//! Frames are pre-decoded; this crate never links a video codec. Clips are
//! read either from a raw `VCT1` tensor file or a directory of numbered PNG
//! frames (see [`vct1`] and [`pngdir`]).

mod clip;
mod folds;
mod manifest;
mod physio;
pub mod pngdir;
pub mod vct1;

pub use clip::{load_clip, VideoClip};
pub use folds::{make_folds, Fold};
pub use manifest::{load_manifest, write_manifest, Manifest};
pub use physio::{summarize_physio, PhysioSummary};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ssq::SSQRecord;

/// How a clip's frames map onto the viewing sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Projection {
    Equirectangular,
    SyntheticFlat,
}

/// Per-clip metadata as stored in the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClipMeta {
    pub id: String,
    pub frames_path: String,
    pub fps: f64,
    pub duration_s: f64,
    pub width: usize,
    pub height: usize,
    pub projection: Projection,
}

impl ClipMeta {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: String| Error::InvalidField {
            record: self.id.clone(),
            field: field.into(),
            reason,
        };
        if self.id.is_empty() {
            return Err(bad("id", "empty clip id".into()));
        }
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return Err(bad("fps", format!("{} is not a positive rate", self.fps)));
        }
        if !(self.duration_s > 0.0 && self.duration_s.is_finite()) {
            return Err(bad(
                "duration_s",
                format!("{} is not a positive duration", self.duration_s),
            ));
        }
        if self.width == 0 || self.height == 0 {
            return Err(bad("width/height", "zero-sized frame".into()));
        }
        Ok(())
    }

    /// Expected frame count from the rate/duration metadata.
    pub fn nominal_frames(&self) -> usize {
        (self.fps * self.duration_s).round() as usize
    }
}

/// Kind of recorded physiological signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhysioKind {
    HeartRate,
    Gsr,
    Eeg,
    Other,
}

/// A physiological recording aligned to one clip viewing.
///
/// Signals are schema-level data only: they are stored and summarized but
/// never fed to the predictor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysioSignal {
    pub clip_id: String,
    pub subject_id: String,
    pub kind: PhysioKind,
    pub sample_rate_hz: f64,
    pub samples: Vec<f64>,
}

impl PhysioSignal {
    pub fn validate(&self) -> Result<()> {
        let record = format!("physio {}/{}", self.clip_id, self.subject_id);
        if self.samples.is_empty() {
            return Err(Error::EmptyInput {
                what: format!("{record} samples"),
            });
        }
        if !(self.sample_rate_hz > 0.0 && self.sample_rate_hz.is_finite()) {
            return Err(Error::InvalidField {
                record,
                field: "sample_rate_hz".into(),
                reason: format!("{} is not a positive rate", self.sample_rate_hz),
            });
        }
        Ok(())
    }
}

pub(crate) fn rating_ref(r: &SSQRecord) -> String {
    format!("rating {}/{}", r.clip_id, r.subject_id)
}
