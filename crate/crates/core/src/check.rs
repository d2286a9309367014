use serde::{Deserialize, Serialize};

use crate::tol;

/// Outcome of numerically checking an inequality over many samples.
///
/// Each sample contributes a slack `allowed − observed`; a sample is a
/// violation when its slack is below `−tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub samples: usize,
    pub violations: usize,
    pub tolerance: f64,
    pub min_slack: f64,
    /// Samples whose slack is within [`tol::NEAR_EQUALITY`] of zero.
    pub near_equality: usize,
    /// Largest `observed / allowed` ratio, for bounds where that makes sense.
    pub max_ratio: Option<f64>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            samples: 0,
            violations: 0,
            tolerance,
            min_slack: f64::INFINITY,
            near_equality: 0,
            max_ratio: None,
            notes: Vec::new(),
        }
    }

    pub fn record(&mut self, slack: f64) {
        self.samples += 1;
        if !(slack >= -self.tolerance) {
            self.violations += 1;
        }
        self.min_slack = self.min_slack.min(slack);
        if slack.abs() < tol::NEAR_EQUALITY {
            self.near_equality += 1;
        }
    }

    pub fn record_ratio(&mut self, ratio: f64) {
        self.max_ratio = Some(self.max_ratio.map_or(ratio, |r| r.max(ratio)));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn merge(&mut self, other: &CheckReport) {
        self.samples += other.samples;
        self.violations += other.violations;
        self.min_slack = self.min_slack.min(other.min_slack);
        self.near_equality += other.near_equality;
        if let Some(r) = other.max_ratio {
            self.record_ratio(r);
        }
        self.notes.extend(other.notes.iter().cloned());
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// Fraction of samples at (numerical) equality.
    pub fn near_equality_fraction(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.near_equality as f64 / self.samples as f64
        }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} samples, {} violations (tol {:.1e}), min slack {:.3e}, {} near equality",
            self.name, self.samples, self.violations, self.tolerance, self.min_slack, self.near_equality
        )?;
        if let Some(r) = self.max_ratio {
            write!(f, ", max ratio {r:.6}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
