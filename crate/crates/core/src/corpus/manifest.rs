//! Manifest schema (UTF-8 JSON, schema_version 1) and validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{rating_ref, ClipMeta, PhysioSignal};
use crate::error::{Error, Result};
use crate::ssq::SSQRecord;

pub const SCHEMA_VERSION: u32 = 1;

/// The dataset index: clip metadata, subjective ratings, physiological
/// signals, and named id splits.
///
/// Split names of the form `group/member` declare membership in a
/// cross-validation group; member id lists within one group must be
/// pairwise disjoint. Names without a `/` are free-form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub clips: Vec<ClipMeta>,
    #[serde(default)]
    pub ratings: Vec<SSQRecord>,
    #[serde(default)]
    pub physio: Vec<PhysioSignal>,
    #[serde(default)]
    pub splits: BTreeMap<String, Vec<String>>,
}

impl Manifest {
    pub fn new(clips: Vec<ClipMeta>) -> Self {
        Manifest {
            schema_version: SCHEMA_VERSION,
            clips,
            ratings: Vec::new(),
            physio: Vec::new(),
            splits: BTreeMap::new(),
        }
    }

    pub fn clip_ids(&self) -> Vec<String> {
        self.clips.iter().map(|c| c.id.clone()).collect()
    }

    pub fn clip(&self, id: &str) -> Option<&ClipMeta> {
        self.clips.iter().find(|c| c.id == id)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaVersion {
                found: self.schema_version as i64,
                expected: SCHEMA_VERSION,
            });
        }
        let mut ids = BTreeSet::new();
        for clip in &self.clips {
            clip.validate()?;
            if !ids.insert(clip.id.clone()) {
                return Err(Error::DuplicateClipId {
                    id: clip.id.clone(),
                });
            }
        }
        for rating in &self.ratings {
            rating.validate()?;
            if !ids.contains(&rating.clip_id) {
                return Err(Error::UnknownClipId {
                    id: rating.clip_id.clone(),
                    referenced_by: rating_ref(rating),
                });
            }
        }
        for signal in &self.physio {
            signal.validate()?;
            if !ids.contains(&signal.clip_id) {
                return Err(Error::UnknownClipId {
                    id: signal.clip_id.clone(),
                    referenced_by: format!("physio {}/{}", signal.clip_id, signal.subject_id),
                });
            }
        }
        for (name, members) in &self.splits {
            for id in members {
                if !ids.contains(id) {
                    return Err(Error::UnknownClipId {
                        id: id.clone(),
                        referenced_by: format!("split {name:?}"),
                    });
                }
            }
        }
        self.validate_split_groups()?;
        Ok(())
    }

    fn validate_split_groups(&self) -> Result<()> {
        let mut groups: BTreeMap<&str, Vec<(&String, BTreeSet<&String>)>> = BTreeMap::new();
        for (name, members) in &self.splits {
            if let Some((group, _)) = name.split_once('/') {
                groups
                    .entry(group)
                    .or_default()
                    .push((name, members.iter().collect()));
            }
        }
        for (group, splits) in groups {
            for i in 0..splits.len() {
                for j in i + 1..splits.len() {
                    if let Some(shared) = splits[i].1.intersection(&splits[j].1).next() {
                        return Err(Error::OverlappingSplits {
                            group: group.to_string(),
                            a: splits[i].0.clone(),
                            b: splits[j].0.clone(),
                            id: (*shared).clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses and validates a manifest file.
pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::parse(path, e.to_string()))?;
    if let Some(version) = value.get("schema_version").and_then(|v| v.as_i64()) {
        if version != SCHEMA_VERSION as i64 {
            return Err(Error::SchemaVersion {
                found: version,
                expected: SCHEMA_VERSION,
            });
        }
    }
    let manifest: Manifest =
        serde_json::from_value(value).map_err(|e| Error::parse(path, e.to_string()))?;
    manifest.validate()?;
    Ok(manifest)
}

/// Writes a manifest as pretty-printed JSON. `load_manifest` on the result
/// reparses to an equal value.
pub fn write_manifest(manifest: &Manifest, path: &Path) -> Result<()> {
    manifest.validate()?;
    let mut text = serde_json::to_string_pretty(manifest)
        .map_err(|e| Error::parse(path, e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Projection;

    fn meta(id: &str) -> ClipMeta {
        ClipMeta {
            id: id.into(),
            frames_path: format!("clips/{id}.vct"),
            fps: 30.0,
            duration_s: 2.0,
            width: 32,
            height: 16,
            projection: Projection::SyntheticFlat,
        }
    }

    #[test]
    fn two_clips_load_back() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        let manifest = Manifest::new(vec![meta("v01"), meta("v02")]);
        write_manifest(&manifest, &path).unwrap();
        let loaded = load_manifest(&path).unwrap();
        assert_eq!(loaded, manifest);
        assert_eq!(loaded.clips.len(), 2);
        assert!(loaded.ratings.is_empty());
    }

    #[test]
    fn duplicate_clip_id_names_offender() {
        let manifest = Manifest::new(vec![meta("v01"), meta("v01")]);
        let err = manifest.validate().unwrap_err();
        assert!(err.to_string().contains("v01"), "{err}");
    }

    #[test]
    fn dangling_rating_names_offender() {
        let mut manifest = Manifest::new(vec![meta("v01")]);
        manifest.ratings.push(SSQRecord {
            clip_id: "v99".into(),
            subject_id: "s01".into(),
            items: vec![0; 16],
        });
        let err = manifest.validate().unwrap_err();
        assert!(err.to_string().contains("v99"), "{err}");
    }

    #[test]
    fn bad_fps_is_rejected() {
        let mut m = meta("v01");
        m.fps = 0.0;
        let err = Manifest::new(vec![m]).validate().unwrap_err();
        assert!(err.to_string().contains("fps"), "{err}");
    }

    #[test]
    fn wrong_schema_version_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        std::fs::write(
            &path,
            r#"{"schema_version": 2, "clips": [], "ratings": [], "physio": [], "splits": {}}"#,
        )
        .unwrap();
        match load_manifest(&path) {
            Err(Error::SchemaVersion { found: 2, .. }) => {}
            other => panic!("expected SchemaVersion error, got {other:?}"),
        }
    }

    #[test]
    fn overlapping_cv_group_splits_are_rejected() {
        let mut manifest = Manifest::new(vec![meta("v01"), meta("v02")]);
        manifest
            .splits
            .insert("cv/fold0".into(), vec!["v01".into()]);
        manifest
            .splits
            .insert("cv/fold1".into(), vec!["v01".into(), "v02".into()]);
        let err = manifest.validate().unwrap_err();
        assert!(matches!(err, Error::OverlappingSplits { .. }), "{err}");

        // Free-form splits may overlap.
        let mut free = Manifest::new(vec![meta("v01")]);
        free.splits.insert("train".into(), vec!["v01".into()]);
        free.splits.insert("debug".into(), vec!["v01".into()]);
        free.validate().unwrap();
    }

    #[test]
    fn split_with_unknown_id_is_rejected() {
        let mut manifest = Manifest::new(vec![meta("v01")]);
        manifest.splits.insert("all".into(), vec!["v03".into()]);
        let err = manifest.validate().unwrap_err();
        assert!(err.to_string().contains("v03"), "{err}");
    }
}
