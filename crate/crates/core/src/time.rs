//! Time constants shared across the simulator. All durations are seconds.

pub const SECONDS_PER_DAY: i64 = 86_400;

/// Julian year (365.25 days).
pub const SECONDS_PER_YEAR: i64 = 31_557_600;

/// One twelfth of a Julian year, so that a whole number of years is always
/// a whole number of months.
pub const SECONDS_PER_MONTH: i64 = SECONDS_PER_YEAR / 12;

/// Flux horizon in days: floor(50 × 365.25).
pub const DEFAULT_HORIZON_DAYS: i64 = 18_262;

/// Token lifetime: 50 Julian years.
pub const DEFAULT_TOKEN_LIFETIME: i64 = 50 * SECONDS_PER_YEAR;

/// How long a published token quote stays valid.
pub const QUOTE_VALIDITY: i64 = 30 * SECONDS_PER_DAY;

pub fn seconds_to_days(seconds: i64) -> f64 {
    seconds as f64 / SECONDS_PER_DAY as f64
}
