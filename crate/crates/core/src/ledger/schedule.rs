//! Token value over time.
//!
//! All three kinds are step functions of `k = floor(t / step)`:
//!
//! * `ROT`: `v₀ · (N − k) / N` with `N = lifetime / step`, and 0 once `k ≥ N`.
//! * `MOT`: `v₀ · (1 + g)^k`.
//! * `MOT_THEN_ROT`: `MOT` up to the milestone, then `ROT` starting from the
//!   value reached at the milestone.
//!
//! Values are whole cents. ROT uses exact integer arithmetic, so it reaches 0
//! exactly at the lifetime.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pricing::{round_cents, Cents};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScheduleKind {
    #[serde(rename = "ROT")]
    Rot,
    #[serde(rename = "MOT")]
    Mot,
    #[serde(rename = "MOT_THEN_ROT")]
    MotThenRot,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid value schedule: {0}")]
pub struct ScheduleError(pub &'static str);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueSchedule {
    pub kind: ScheduleKind,
    #[serde(rename = "initial_value_cents")]
    pub initial_value: Cents,
    /// seconds
    #[serde(rename = "step_seconds")]
    pub step: i64,
    /// Length of the depreciation phase in seconds; unused for `MOT`.
    #[serde(rename = "lifetime_seconds")]
    pub lifetime: i64,
    /// Growth per step during the amplification phase.
    pub growth_rate: f64,
    /// Seconds after issuance at which `MOT_THEN_ROT` switches to decline.
    #[serde(rename = "milestone_seconds")]
    pub milestone: Option<i64>,
}

impl ValueSchedule {
    pub fn rot(initial_value: Cents, lifetime: i64, step: i64) -> Result<Self, ScheduleError> {
        let s = Self {
            kind: ScheduleKind::Rot,
            initial_value,
            step,
            lifetime,
            growth_rate: 0.0,
            milestone: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn mot(initial_value: Cents, growth_rate: f64, step: i64) -> Result<Self, ScheduleError> {
        let s = Self {
            kind: ScheduleKind::Mot,
            initial_value,
            step,
            lifetime: 0,
            growth_rate,
            milestone: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn mot_then_rot(
        initial_value: Cents,
        growth_rate: f64,
        step: i64,
        milestone: i64,
        lifetime: i64,
    ) -> Result<Self, ScheduleError> {
        let s = Self {
            kind: ScheduleKind::MotThenRot,
            initial_value,
            step,
            lifetime,
            growth_rate,
            milestone: Some(milestone),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), ScheduleError> {
        if self.initial_value.0 < 0 {
            return Err(ScheduleError("initial value is negative"));
        }
        if self.step <= 0 {
            return Err(ScheduleError("step must be positive"));
        }
        let needs_decline = matches!(self.kind, ScheduleKind::Rot | ScheduleKind::MotThenRot);
        if needs_decline && (self.lifetime <= 0 || self.lifetime % self.step != 0) {
            return Err(ScheduleError("lifetime must be a positive multiple of step"));
        }
        let grows = matches!(self.kind, ScheduleKind::Mot | ScheduleKind::MotThenRot);
        if grows && !(self.growth_rate.is_finite() && self.growth_rate >= 0.0) {
            return Err(ScheduleError("growth rate must be finite and non-negative"));
        }
        match (self.kind, self.milestone) {
            (ScheduleKind::MotThenRot, Some(m)) if m >= 0 => {}
            (ScheduleKind::MotThenRot, _) => {
                return Err(ScheduleError("MOT_THEN_ROT needs a non-negative milestone"))
            }
            (_, Some(_)) => return Err(ScheduleError("milestone only applies to MOT_THEN_ROT")),
            (_, None) => {}
        }
        Ok(())
    }

    /// Value `t` seconds after issuance. Negative `t` is treated as 0.
    pub fn value_at(&self, t: i64) -> Cents {
        let t = t.max(0);
        match self.kind {
            ScheduleKind::Rot => declining(self.initial_value, t, self.step, self.lifetime),
            ScheduleKind::Mot => growing(self.initial_value, t, self.step, self.growth_rate),
            ScheduleKind::MotThenRot => {
                let milestone = self.milestone.unwrap_or(0);
                if t < milestone {
                    growing(self.initial_value, t, self.step, self.growth_rate)
                } else {
                    let peak = growing(self.initial_value, milestone, self.step, self.growth_rate);
                    declining(peak, t - milestone, self.step, self.lifetime)
                }
            }
        }
    }

    /// Seconds after issuance from which the value is permanently zero.
    pub fn zero_from(&self) -> Option<i64> {
        match self.kind {
            ScheduleKind::Rot => Some(self.lifetime),
            ScheduleKind::Mot => None,
            ScheduleKind::MotThenRot => Some(self.milestone.unwrap_or(0) + self.lifetime),
        }
    }
}

fn declining(initial: Cents, t: i64, step: i64, lifetime: i64) -> Cents {
    let steps_total = i128::from(lifetime / step);
    let elapsed = i128::from(t / step);
    if elapsed >= steps_total {
        return Cents::ZERO;
    }
    let num = i128::from(initial.0) * (steps_total - elapsed);
    Cents(div_round_half_even(num, steps_total) as i64)
}

fn growing(initial: Cents, t: i64, step: i64, growth_rate: f64) -> Cents {
    let k = (t / step).min(i64::from(i32::MAX)) as i32;
    Cents(round_cents(initial.0 as f64 * (1.0 + growth_rate).powi(k)))
}

/// `num / den` rounded to nearest, ties to even. Both operands non-negative.
fn div_round_half_even(num: i128, den: i128) -> i128 {
    let q = num / den;
    let r = num % den;
    match (2 * r).cmp(&den) {
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal if q % 2 == 1 => q + 1,
        _ => q,
    }
}
