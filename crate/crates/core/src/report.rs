//! Deterministic, serialisable verification reports. A report never embeds
//! wall-clock data; identical configuration and seed reproduce identical
//! bytes.

use serde::Serialize;

pub const SCHEMA: &str = "orlicz-lab/v1";

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// Stable identifier of the statement the check exercises.
    pub anchor: String,
    pub max_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckReport {
    pub fn new(name: &str, anchor: &str, max_violation: f64, tolerance: f64) -> Self {
        // Clamp so the report stays valid JSON (no non-finite numbers).
        let clamped = if max_violation.is_finite() {
            max_violation
        } else {
            1e300
        };
        CheckReport {
            name: name.to_string(),
            anchor: anchor.to_string(),
            max_violation: clamped,
            tolerance,
            pass: clamped <= tolerance,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    /// Worst violation across checks, normalised to each check's tolerance.
    pub max_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, trials: usize, seed: u64, checks: Vec<CheckReport>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        let max_violation = checks
            .iter()
            .map(|c| c.max_violation / c.tolerance.max(1e-300))
            .fold(0.0, f64::max);
        SuiteReport {
            schema: SCHEMA,
            suite: suite.to_string(),
            trials,
            seed,
            checks,
            max_violation,
            tolerance: 1.0,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialisation")
    }

    /// Re-grade the report against tolerances scaled by `scale ∈ (0, 1]`.
    /// Overrides may only tighten the pinned defaults, never loosen them.
    pub fn tightened(mut self, scale: f64) -> Result<Self, String> {
        if !(scale > 0.0 && scale <= 1.0) {
            return Err(format!(
                "tolerance scale must lie in (0, 1], got {scale}"
            ));
        }
        for c in &mut self.checks {
            c.tolerance *= scale;
            c.pass = c.max_violation <= c.tolerance;
        }
        self.pass = self.checks.iter().all(|c| c.pass);
        self.max_violation = self
            .checks
            .iter()
            .map(|c| c.max_violation / c.tolerance.max(1e-300))
            .fold(0.0, f64::max);
        Ok(self)
    }
}

/// Accumulates the worst violation seen while iterating trials.
#[derive(Clone, Copy, Debug, Default)]
pub struct Worst(pub f64);

impl Worst {
    pub fn absorb(&mut self, v: f64) {
        if v > self.0 {
            self.0 = v;
        }
    }

    /// Absorb the relative excess of `value` over `bound` (0 when within).
    pub fn absorb_excess(&mut self, value: f64, bound: f64) {
        if value > bound {
            self.absorb((value - bound) / (1.0 + bound.abs()));
        }
    }

    pub fn merge(mut self, other: Worst) -> Worst {
        self.absorb(other.0);
        self
    }
}
