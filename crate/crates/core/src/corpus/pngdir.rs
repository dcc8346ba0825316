//! PNG frame directories: 8-bit RGB files named `frame_%06d.png`,
//! indexed from 0 with no gaps.

use std::path::{Path, PathBuf};

use ndarray::Array4;

use crate::error::{Error, Result};

pub fn frame_path(dir: &Path, index: usize) -> PathBuf {
    dir.join(format!("frame_{index:06}.png"))
}

/// Loads all consecutive frames starting at index 0.
pub fn read_png_dir(dir: &Path) -> Result<Array4<f64>> {
    let mut frames: Vec<image::RgbImage> = Vec::new();
    loop {
        let path = frame_path(dir, frames.len());
        if !path.exists() {
            break;
        }
        let img = image::open(&path)
            .map_err(|e| Error::parse(&path, e.to_string()))?
            .to_rgb8();
        if let Some(first) = frames.first() {
            if img.dimensions() != first.dimensions() {
                return Err(Error::DimensionMismatch {
                    what: format!("frame {}", frames.len()),
                    expected: vec![first.width() as usize, first.height() as usize],
                    actual: vec![img.width() as usize, img.height() as usize],
                });
            }
        }
        frames.push(img);
    }
    if frames.is_empty() {
        return Err(Error::EmptyInput {
            what: format!("png frame directory {}", dir.display()),
        });
    }
    let (w, h) = frames[0].dimensions();
    let (t, h, w) = (frames.len(), h as usize, w as usize);
    let mut tensor = Array4::zeros((t, h, w, 3));
    for (ti, img) in frames.iter().enumerate() {
        for (x, y, pixel) in img.enumerate_pixels() {
            for c in 0..3 {
                tensor[[ti, y as usize, x as usize, c]] = pixel.0[c] as f64 / 255.0;
            }
        }
    }
    Ok(tensor)
}

/// Writes frames as 8-bit RGB PNGs (values clamped to [0, 1] then scaled).
pub fn write_png_dir(dir: &Path, frames: &Array4<f64>) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let (t, h, w, c) = frames.dim();
    if c != 3 {
        return Err(Error::DimensionMismatch {
            what: "png frame channels".into(),
            expected: vec![3],
            actual: vec![c],
        });
    }
    for ti in 0..t {
        let mut img = image::RgbImage::new(w as u32, h as u32);
        for y in 0..h {
            for x in 0..w {
                let px = |ch: usize| {
                    (frames[[ti, y, x, ch]].clamp(0.0, 1.0) * 255.0).round() as u8
                };
                img.put_pixel(x as u32, y as u32, image::Rgb([px(0), px(1), px(2)]));
            }
        }
        let path = frame_path(dir, ti);
        img.save(&path).map_err(|e| Error::parse(&path, e.to_string()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_read_preserves_quantized_values() {
        let dir = tempfile::tempdir().unwrap();
        let frames = Array4::from_shape_fn((3, 4, 5, 3), |(t, y, x, c)| {
            ((t * 31 + y * 7 + x * 3 + c) % 256) as f64 / 255.0
        });
        write_png_dir(dir.path(), &frames).unwrap();
        let loaded = read_png_dir(dir.path()).unwrap();
        assert_eq!(loaded.dim(), (3, 4, 5, 3));
        for (a, b) in frames.iter().zip(loaded.iter()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_directory_errors() {
        let dir = tempfile::tempdir().unwrap();
        assert!(read_png_dir(dir.path()).is_err());
    }
}
