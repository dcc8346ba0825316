//! Clip loading: dispatches on the frames path and validates the decoded
//! tensor against the manifest metadata.

use std::path::Path;

use ndarray::Array4;

use super::{pngdir, vct1, ClipMeta};
use crate::error::{Error, Result};

/// A decoded clip: `T x H x W x 3` frame tensor with values in [0, 1].
#[derive(Debug, Clone)]
pub struct VideoClip {
    pub meta: ClipMeta,
    pub frames: Array4<f64>,
}

impl VideoClip {
    pub fn frame_count(&self) -> usize {
        self.frames.dim().0
    }
}

/// Loads the frames referenced by `meta`. Relative paths resolve against
/// `root` (normally the manifest's directory).
///
/// A directory is read as PNG frames, anything else as a `VCT1` file.
/// Values are normalized into [0, 1]; non-finite data is an error, and the
/// frame count must match `fps * duration_s` within one frame.
pub fn load_clip(meta: &ClipMeta, root: &Path) -> Result<VideoClip> {
    meta.validate()?;
    let raw = Path::new(&meta.frames_path);
    let path = if raw.is_absolute() {
        raw.to_path_buf()
    } else {
        root.join(raw)
    };
    if !path.exists() {
        return Err(Error::io(
            &path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "no such clip"),
        ));
    }
    let mut frames = if path.is_dir() {
        pngdir::read_png_dir(&path)?
    } else {
        vct1::read_vct1(&path)?
    };

    let (t, h, w, c) = frames.dim();
    if c != 3 {
        return Err(Error::DimensionMismatch {
            what: format!("clip {} channels", meta.id),
            expected: vec![3],
            actual: vec![c],
        });
    }
    if h != meta.height || w != meta.width {
        return Err(Error::DimensionMismatch {
            what: format!("clip {} frame size", meta.id),
            expected: vec![meta.height, meta.width],
            actual: vec![h, w],
        });
    }
    if t < 2 {
        return Err(Error::Precondition {
            what: format!("clip {} has {t} frame(s); need at least 2", meta.id),
        });
    }
    let nominal = meta.nominal_frames();
    if (t as i64 - nominal as i64).abs() > 1 {
        return Err(Error::DimensionMismatch {
            what: format!("clip {} frame count vs fps*duration", meta.id),
            expected: vec![nominal],
            actual: vec![t],
        });
    }
    for &v in frames.iter() {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                what: format!("pixel data of clip {}", meta.id),
            });
        }
    }
    frames.mapv_inplace(|v| v.clamp(0.0, 1.0));
    Ok(VideoClip {
        meta: meta.clone(),
        frames,
    })
}
