//! Summary statistics for stored physiological signals.

use serde::{Deserialize, Serialize};

use super::PhysioSignal;
use crate::error::{Error, Result};

/// Sample statistics; `std` uses the population convention (divide by n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysioSummary {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

pub fn summarize_physio(signal: &PhysioSignal) -> Result<PhysioSummary> {
    if signal.samples.is_empty() {
        return Err(Error::EmptyInput {
            what: format!("physio samples for {}/{}", signal.clip_id, signal.subject_id),
        });
    }
    let n = signal.samples.len() as f64;
    let mean = signal.samples.iter().sum::<f64>() / n;
    let var = signal
        .samples
        .iter()
        .map(|x| (x - mean) * (x - mean))
        .sum::<f64>()
        / n;
    let min = signal.samples.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = signal.samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(PhysioSummary {
        mean,
        std: var.sqrt(),
        min,
        max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::PhysioKind;

    fn signal(samples: Vec<f64>) -> PhysioSignal {
        PhysioSignal {
            clip_id: "c".into(),
            subject_id: "s".into(),
            kind: PhysioKind::HeartRate,
            sample_rate_hz: 1.0,
            samples,
        }
    }

    #[test]
    fn constant_series_has_zero_std() {
        let s = summarize_physio(&signal(vec![60.0, 60.0, 60.0])).unwrap();
        assert_eq!(s.mean, 60.0);
        assert_eq!(s.std, 0.0);
        assert_eq!((s.min, s.max), (60.0, 60.0));
    }

    #[test]
    fn population_std_of_two_points() {
        // mean 2, squared deviations (1,1), population variance 1.
        let s = summarize_physio(&signal(vec![1.0, 3.0])).unwrap();
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.std, 1.0);
    }

    #[test]
    fn empty_samples_error() {
        assert!(summarize_physio(&signal(vec![])).is_err());
    }
}
