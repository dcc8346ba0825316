//! Simulator Sickness Questionnaire scoring.
//!
//! Converts raw 16-item questionnaire responses (each rated 0-3) into the
//! three weighted subscale scores — nausea, oculomotor, disorientation —
//! plus the total score, and normalizes them to [0, 1] regression targets.
//!
//! Item order follows the canonical questionnaire: 1 general discomfort,
//! 2 fatigue, 3 headache, 4 eyestrain, 5 difficulty focusing, 6 increased
//! salivation, 7 sweating, 8 nausea, 9 difficulty concentrating, 10 fullness
//! of head, 11 blurred vision, 12 dizzy (eyes open), 13 dizzy (eyes closed),
//! 14 vertigo, 15 stomach awareness, 16 burping.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ITEM_COUNT: usize = 16;
pub const MAX_RATING: u8 = 3;

/// 1-based item numbers contributing to the nausea subscale.
pub const NAUSEA_ITEMS: [usize; 7] = [1, 6, 7, 8, 9, 15, 16];
/// 1-based item numbers contributing to the oculomotor subscale.
pub const OCULOMOTOR_ITEMS: [usize; 7] = [1, 2, 3, 4, 5, 9, 11];
/// 1-based item numbers contributing to the disorientation subscale.
pub const DISORIENTATION_ITEMS: [usize; 7] = [5, 8, 10, 11, 12, 13, 14];

pub const NAUSEA_WEIGHT: f64 = 9.54;
pub const OCULOMOTOR_WEIGHT: f64 = 7.58;
pub const DISORIENTATION_WEIGHT: f64 = 13.92;
pub const TOTAL_WEIGHT: f64 = 3.74;

/// Theoretical maxima (every item rated 3): raw subscale sum 21.
pub const NAUSEA_MAX: f64 = 21.0 * NAUSEA_WEIGHT;
pub const OCULOMOTOR_MAX: f64 = 21.0 * OCULOMOTOR_WEIGHT;
pub const DISORIENTATION_MAX: f64 = 21.0 * DISORIENTATION_WEIGHT;
pub const TOTAL_MAX: f64 = 63.0 * TOTAL_WEIGHT;

/// One subject's raw questionnaire response for one clip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSQRecord {
    pub clip_id: String,
    pub subject_id: String,
    pub items: Vec<u8>,
}

impl SSQRecord {
    pub fn validate(&self) -> Result<()> {
        if self.items.len() != ITEM_COUNT {
            return Err(Error::InvalidField {
                record: format!("{}/{}", self.clip_id, self.subject_id),
                field: "items".into(),
                reason: format!("expected {ITEM_COUNT} items, got {}", self.items.len()),
            });
        }
        for (i, &v) in self.items.iter().enumerate() {
            if v > MAX_RATING {
                return Err(Error::InvalidField {
                    record: format!("{}/{}", self.clip_id, self.subject_id),
                    field: format!("i{}", i + 1),
                    reason: format!("rating {v} outside 0..={MAX_RATING}"),
                });
            }
        }
        Ok(())
    }
}

/// Weighted subscale scores in questionnaire units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymptomScores {
    pub nausea: f64,
    pub oculomotor: f64,
    pub disorientation: f64,
    pub total: f64,
}

/// Subscale scores rescaled by their theoretical maxima into [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedScores {
    pub nausea: f64,
    pub oculomotor: f64,
    pub disorientation: f64,
    pub total: f64,
}

fn raw_sum(items: &[u8], members: &[usize; 7]) -> f64 {
    members.iter().map(|&i| items[i - 1] as f64).sum()
}

/// Scores one record with the standard weighting table.
pub fn score_ssq(record: &SSQRecord) -> Result<SymptomScores> {
    record.validate()?;
    let raw_n = raw_sum(&record.items, &NAUSEA_ITEMS);
    let raw_o = raw_sum(&record.items, &OCULOMOTOR_ITEMS);
    let raw_d = raw_sum(&record.items, &DISORIENTATION_ITEMS);
    Ok(SymptomScores {
        nausea: NAUSEA_WEIGHT * raw_n,
        oculomotor: OCULOMOTOR_WEIGHT * raw_o,
        disorientation: DISORIENTATION_WEIGHT * raw_d,
        total: TOTAL_WEIGHT * (raw_n + raw_o + raw_d),
    })
}

fn clamp01(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Divides each component by its theoretical maximum and clamps to [0, 1].
pub fn normalize_scores(s: &SymptomScores) -> NormalizedScores {
    NormalizedScores {
        nausea: clamp01(s.nausea / NAUSEA_MAX),
        oculomotor: clamp01(s.oculomotor / OCULOMOTOR_MAX),
        disorientation: clamp01(s.disorientation / DISORIENTATION_MAX),
        total: clamp01(s.total / TOTAL_MAX),
    }
}

/// Per-clip label: component-wise arithmetic mean over subjects.
pub fn aggregate_subjects(records: &[SSQRecord]) -> Result<SymptomScores> {
    if records.is_empty() {
        return Err(Error::EmptyInput {
            what: "ssq records for clip".into(),
        });
    }
    let scores: Vec<SymptomScores> = records.iter().map(score_ssq).collect::<Result<_>>()?;
    Ok(mean_scores(&scores))
}

/// Trimmed-mean aggregation: per component, drop `floor(trim * n)` values
/// from each end (keeping at least one) before averaging.
pub fn aggregate_subjects_trimmed(records: &[SSQRecord], trim: f64) -> Result<SymptomScores> {
    if records.is_empty() {
        return Err(Error::EmptyInput {
            what: "ssq records for clip".into(),
        });
    }
    if !(0.0..0.5).contains(&trim) {
        return Err(Error::Precondition {
            what: format!("trim fraction {trim} outside [0, 0.5)"),
        });
    }
    let scores: Vec<SymptomScores> = records.iter().map(score_ssq).collect::<Result<_>>()?;
    let n = scores.len();
    let mut k = (trim * n as f64).floor() as usize;
    if 2 * k >= n {
        k = (n - 1) / 2;
    }
    let trimmed_mean = |select: fn(&SymptomScores) -> f64| -> f64 {
        let mut vals: Vec<f64> = scores.iter().map(select).collect();
        vals.sort_by(|a, b| a.total_cmp(b));
        let kept = &vals[k..n - k];
        kept.iter().sum::<f64>() / kept.len() as f64
    };
    Ok(SymptomScores {
        nausea: trimmed_mean(|s| s.nausea),
        oculomotor: trimmed_mean(|s| s.oculomotor),
        disorientation: trimmed_mean(|s| s.disorientation),
        total: trimmed_mean(|s| s.total),
    })
}

fn mean_scores(scores: &[SymptomScores]) -> SymptomScores {
    let n = scores.len() as f64;
    SymptomScores {
        nausea: scores.iter().map(|s| s.nausea).sum::<f64>() / n,
        oculomotor: scores.iter().map(|s| s.oculomotor).sum::<f64>() / n,
        disorientation: scores.iter().map(|s| s.disorientation).sum::<f64>() / n,
        total: scores.iter().map(|s| s.total).sum::<f64>() / n,
    }
}

/// Reads a ratings CSV with header `clip_id,subject_id,i1,...,i16`.
pub fn read_ratings_csv(path: &Path) -> Result<Vec<SSQRecord>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::parse(path, e.to_string()))?;
    {
        let headers = reader
            .headers()
            .map_err(|e| Error::parse(path, e.to_string()))?;
        let mut expected = vec!["clip_id".to_string(), "subject_id".to_string()];
        expected.extend((1..=ITEM_COUNT).map(|i| format!("i{i}")));
        let found: Vec<String> = headers.iter().map(str::to_string).collect();
        if found != expected {
            return Err(Error::parse(
                path,
                format!("bad ratings header {found:?}"),
            ));
        }
    }
    let mut records = Vec::new();
    for (line, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::parse(path, e.to_string()))?;
        if row.len() != 2 + ITEM_COUNT {
            return Err(Error::parse(
                path,
                format!("row {}: expected {} fields, got {}", line + 2, 2 + ITEM_COUNT, row.len()),
            ));
        }
        let mut items = Vec::with_capacity(ITEM_COUNT);
        for v in row.iter().skip(2) {
            let v: u8 = v.trim().parse().map_err(|_| {
                Error::parse(path, format!("row {}: non-integer rating {v:?}", line + 2))
            })?;
            items.push(v);
        }
        let record = SSQRecord {
            clip_id: row[0].to_string(),
            subject_id: row[1].to_string(),
            items,
        };
        record.validate()?;
        records.push(record);
    }
    Ok(records)
}

/// Groups records by clip id, preserving first-seen clip order within a
/// sorted map.
pub fn group_by_clip(records: &[SSQRecord]) -> BTreeMap<String, Vec<SSQRecord>> {
    let mut map: BTreeMap<String, Vec<SSQRecord>> = BTreeMap::new();
    for r in records {
        map.entry(r.clip_id.clone()).or_default().push(r.clone());
    }
    map
}

/// Writes a `clip_id,nausea,oculomotor,disorientation,total` table.
pub fn write_scores_csv<W: Write>(
    mut out: W,
    rows: &BTreeMap<String, (f64, f64, f64, f64)>,
) -> Result<()> {
    let io_err = |e: std::io::Error| Error::io("<scores csv>", e);
    writeln!(out, "clip_id,nausea,oculomotor,disorientation,total").map_err(io_err)?;
    for (id, (n, o, d, t)) in rows {
        writeln!(out, "{id},{n},{o},{d},{t}").map_err(io_err)?;
    }
    Ok(())
}

/// Reads a `clip_id,nausea,oculomotor,disorientation,total` table into
/// normalized scores (values are taken as-is; callers that expect [0, 1]
/// data should validate ranges themselves).
pub fn read_scores_csv(path: &Path) -> Result<BTreeMap<String, NormalizedScores>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::parse(path, e.to_string()))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::parse(path, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let expected = ["clip_id", "nausea", "oculomotor", "disorientation", "total"];
    if headers != expected {
        return Err(Error::parse(path, format!("bad scores header {headers:?}")));
    }
    let mut map = BTreeMap::new();
    for (line, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::parse(path, e.to_string()))?;
        if row.len() != 5 {
            return Err(Error::parse(
                path,
                format!("row {}: expected 5 fields", line + 2),
            ));
        }
        let mut vals = [0.0f64; 4];
        for (i, v) in row.iter().skip(1).enumerate() {
            vals[i] = v.trim().parse().map_err(|_| {
                Error::parse(path, format!("row {}: bad number {v:?}", line + 2))
            })?;
        }
        map.insert(
            row[0].to_string(),
            NormalizedScores {
                nausea: vals[0],
                oculomotor: vals[1],
                disorientation: vals[2],
                total: vals[3],
            },
        );
    }
    Ok(map)
}
