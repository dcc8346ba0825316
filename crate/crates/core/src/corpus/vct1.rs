//! The `VCT1` raw clip tensor format.
//!
//! Layout: bytes 0-3 magic `VCT1`; bytes 4-19 four little-endian u32
//! `(T, H, W, C)`; then `T*H*W*C` little-endian f32 values in T-major,
//! then H, W, C order. Write/read round-trips are bit-exact.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use ndarray::Array4;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"VCT1";
const HEADER_LEN: usize = 20;

/// Writes a frame tensor, narrowing values to f32.
pub fn write_vct1(path: &Path, frames: &Array4<f64>) -> Result<()> {
    let (t, h, w, c) = frames.dim();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let io_err = |e: std::io::Error| Error::io(path, e);
    out.write_all(MAGIC).map_err(io_err)?;
    for dim in [t, h, w, c] {
        out.write_all(&(dim as u32).to_le_bytes()).map_err(io_err)?;
    }
    // Standard layout iteration is exactly T, H, W, C order.
    let mut buf = Vec::with_capacity(4 * 4096);
    for &v in frames.iter() {
        buf.extend_from_slice(&(v as f32).to_le_bytes());
        if buf.len() >= 4 * 4096 {
            out.write_all(&buf).map_err(io_err)?;
            buf.clear();
        }
    }
    out.write_all(&buf).map_err(io_err)?;
    out.flush().map_err(io_err)
}

/// Reads a tensor file, widening values to f64. Dimensions come from the
/// header; a short payload is a dimension-mismatch error.
pub fn read_vct1(path: &Path) -> Result<Array4<f64>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.len() < HEADER_LEN {
        return Err(Error::Truncated {
            offset: bytes.len() as u64,
            what: "VCT1 header".into(),
        });
    }
    if &bytes[0..4] != MAGIC {
        return Err(Error::parse(
            path,
            format!("bad VCT1 magic {:?} at offset 0", &bytes[0..4]),
        ));
    }
    let mut dims = [0usize; 4];
    for (i, dim) in dims.iter_mut().enumerate() {
        let off = 4 + 4 * i;
        *dim = u32::from_le_bytes(bytes[off..off + 4].try_into().unwrap()) as usize;
    }
    let [t, h, w, c] = dims;
    let count = t
        .checked_mul(h)
        .and_then(|n| n.checked_mul(w))
        .and_then(|n| n.checked_mul(c))
        .ok_or_else(|| Error::parse(path, "VCT1 dimensions overflow".to_string()))?;
    let expected_len = HEADER_LEN + 4 * count;
    if bytes.len() != expected_len {
        return Err(Error::DimensionMismatch {
            what: format!("VCT1 payload of {}", path.display()),
            expected: vec![count],
            actual: vec![(bytes.len().saturating_sub(HEADER_LEN)) / 4],
        });
    }
    let mut values = Vec::with_capacity(count);
    for i in 0..count {
        let off = HEADER_LEN + 4 * i;
        values.push(f32::from_le_bytes(bytes[off..off + 4].try_into().unwrap()) as f64);
    }
    Array4::from_shape_vec((t, h, w, c), values)
        .map_err(|e| Error::parse(path, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_dimensions_are_echoed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("clip.vct");
        let frames = Array4::from_shape_fn((8, 16, 32, 3), |(t, y, x, c)| {
            ((t + y + x + c) % 7) as f64 / 7.0
        });
        write_vct1(&path, &frames).unwrap();
        let loaded = read_vct1(&path).unwrap();
        assert_eq!(loaded.dim(), (8, 16, 32, 3));
    }

    #[test]
    fn truncated_payload_is_dimension_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("clip.vct");
        let frames = Array4::from_elem((8, 4, 4, 3), 0.5);
        write_vct1(&path, &frames).unwrap();
        let bytes = fs::read(&path).unwrap();
        fs::write(&path, &bytes[..bytes.len() - 40]).unwrap();
        match read_vct1(&path) {
            Err(Error::DimensionMismatch { .. }) => {}
            other => panic!("expected DimensionMismatch, got {other:?}"),
        }
    }

    #[test]
    fn bad_magic_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("clip.vct");
        fs::write(&path, b"NOPE\x01\x00\x00\x00\x01\x00\x00\x00\x01\x00\x00\x00\x01\x00\x00\x00").unwrap();
        let err = read_vct1(&path).unwrap_err();
        assert!(err.to_string().contains("magic"), "{err}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn round_trip_is_bit_exact_in_f32(
            t in 2usize..5,
            h in 1usize..6,
            w in 1usize..6,
            seed in 0u64..1000,
        ) {
            let mut rng = crate::nn::SeededRng::new(seed);
            let frames = Array4::from_shape_fn((t, h, w, 3), |_| {
                // Quantize to f32 so the round trip is exact by construction.
                (rng.uniform() as f32) as f64
            });
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("c.vct");
            write_vct1(&path, &frames).unwrap();
            let loaded = read_vct1(&path).unwrap();
            prop_assert_eq!(frames, loaded);
        }
    }
}
