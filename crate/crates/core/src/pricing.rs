//! Translating accumulated flux into initial token values.
//!
//! Two policies share one budget:
//!
//! * **Division**: each quote is the remaining budget times the target's
//!   share of the table's total flux, and issued values are subtracted from
//!   the budget. Issued values can never add up to more than the initial
//!   budget.
//! * **Coefficient**: the first quote fixes `budget_initial / Σ flux` as a
//!   conversion rate, and every later quote is `rate × flux`. The budget is
//!   not drawn down, so cumulative issuance may exceed it.
//!
//! Money is held in integer cents. Proportional amounts are rounded half to
//! even and clamped to the remaining budget.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flux::FluxTable;
use crate::ledger::ValueSchedule;
use crate::time::{seconds_to_days, DEFAULT_TOKEN_LIFETIME, QUOTE_VALIDITY, SECONDS_PER_DAY};

/// 3.2 trillion USD.
pub const DEFAULT_BUDGET: Cents = Cents(320_000_000_000_000);

/// An amount of US dollars in whole cents.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Cents(pub i64);

impl Cents {
    pub const ZERO: Cents = Cents(0);

    /// Nearest cent, ties to even.
    pub fn from_usd(usd: f64) -> Option<Cents> {
        let c = (usd * 100.0).round_ties_even();
        (c.is_finite() && c.abs() < i64::MAX as f64).then_some(Cents(c as i64))
    }

    pub fn to_usd(self) -> f64 {
        self.0 as f64 / 100.0
    }

    pub fn checked_add(self, other: Cents) -> Option<Cents> {
        self.0.checked_add(other.0).map(Cents)
    }

    pub fn checked_sub(self, other: Cents) -> Option<Cents> {
        self.0.checked_sub(other.0).map(Cents)
    }
}

impl fmt::Display for Cents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        f.pad(&format!("{sign}{}.{:02}", abs / 100, abs % 100))
    }
}

/// Rounds a non-negative real number of cents to the nearest whole cent
/// (ties to even), saturating at `i64::MAX`.
pub(crate) fn round_cents(value: f64) -> i64 {
    let r = value.round_ties_even();
    if r >= i64::MAX as f64 {
        i64::MAX
    } else {
        r.max(0.0) as i64
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PricingError {
    #[error("unknown object id `{0}`")]
    UnknownId(String),
    #[error("flux table contains a non-finite or negative value")]
    NonFinite,
    #[error("quote of {quote} exceeds remaining budget {remaining}")]
    Overdraw { quote: Cents, remaining: Cents },
    #[error("lifetime {lifetime} s is not a positive multiple of step {step} s")]
    InvalidLifetime { lifetime: i64, step: i64 },
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PricingPolicy {
    Division,
    Coefficient,
}

impl fmt::Display for PricingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Division => "division",
            Self::Coefficient => "coefficient",
        })
    }
}

impl FromStr for PricingPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "division" => Ok(Self::Division),
            "coefficient" => Ok(Self::Coefficient),
            other => Err(format!("unknown pricing policy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetState {
    pub budget_initial: Cents,
    pub budget_remaining: Cents,
    /// Cents per unit flux, fixed by the first coefficient-policy quote.
    pub coefficient: Option<f64>,
    pub issued_total: Cents,
}

impl BudgetState {
    pub fn new(budget_initial: Cents) -> Result<Self, PricingError> {
        if budget_initial.0 < 0 {
            return Err(PricingError::InvalidBudget(format!("{budget_initial} is negative")));
        }
        Ok(Self {
            budget_initial,
            budget_remaining: budget_initial,
            coefficient: None,
            issued_total: Cents::ZERO,
        })
    }
}

impl Default for BudgetState {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET).expect("default budget is valid")
    }
}

/// Published price of one removal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuoteRecord", into = "QuoteRecord")]
pub struct TokenQuote {
    pub object_id: String,
    pub initial_value: Cents,
    /// seconds
    pub lifetime: i64,
    /// Unix seconds.
    pub quoted_at: i64,
    pub valid_until: i64,
    pub policy: PricingPolicy,
}

impl TokenQuote {
    pub fn to_json(&self) -> String {
        serde_json::to_value(self)
            .expect("quote serialises")
            .to_string()
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// JSON shape of a quote: `{object_id, initial_value_cents, lifetime_days,
/// quoted_at, valid_until, policy}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuoteRecord {
    object_id: String,
    initial_value_cents: i64,
    lifetime_days: f64,
    quoted_at: i64,
    valid_until: i64,
    policy: PricingPolicy,
}

impl From<TokenQuote> for QuoteRecord {
    fn from(q: TokenQuote) -> Self {
        Self {
            object_id: q.object_id,
            initial_value_cents: q.initial_value.0,
            lifetime_days: seconds_to_days(q.lifetime),
            quoted_at: q.quoted_at,
            valid_until: q.valid_until,
            policy: q.policy,
        }
    }
}

impl TryFrom<QuoteRecord> for TokenQuote {
    type Error = String;

    fn try_from(r: QuoteRecord) -> Result<Self, Self::Error> {
        let seconds = r.lifetime_days * SECONDS_PER_DAY as f64;
        if !(seconds.is_finite() && seconds > 0.0 && seconds.fract() == 0.0) {
            return Err(format!("lifetime_days {} is not a whole number of seconds", r.lifetime_days));
        }
        if r.initial_value_cents < 0 {
            return Err("initial_value_cents is negative".into());
        }
        if r.valid_until <= r.quoted_at {
            return Err("valid_until must be after quoted_at".into());
        }
        Ok(Self {
            object_id: r.object_id,
            initial_value: Cents(r.initial_value_cents),
            lifetime: seconds as i64,
            quoted_at: r.quoted_at,
            valid_until: r.valid_until,
            policy: r.policy,
        })
    }
}

/// Time and lifetime attached to a quote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuoteTerms {
    pub quoted_at: i64,
    pub lifetime: i64,
}

impl QuoteTerms {
    pub fn at(quoted_at: i64) -> Self {
        Self {
            quoted_at,
            lifetime: DEFAULT_TOKEN_LIFETIME,
        }
    }
}

/// Prices `target_id` against `table`. Under the coefficient policy the first
/// call fixes `state.coefficient`.
pub fn quote(
    table: &FluxTable,
    target_id: &str,
    state: &mut BudgetState,
    policy: PricingPolicy,
    terms: QuoteTerms,
) -> Result<TokenQuote, PricingError> {
    if !table.is_well_formed() {
        return Err(PricingError::NonFinite);
    }
    let flux = table
        .get(target_id)
        .ok_or_else(|| PricingError::UnknownId(target_id.to_owned()))?;
    let total = table.total();
    if !total.is_finite() {
        return Err(PricingError::NonFinite);
    }

    let cents = match policy {
        PricingPolicy::Division => {
            let remaining = state.budget_remaining.0;
            if total == 0.0 {
                0
            } else {
                round_cents(remaining as f64 * (flux / total)).min(remaining)
            }
        }
        PricingPolicy::Coefficient => {
            let coefficient = *state.coefficient.get_or_insert_with(|| {
                if total == 0.0 {
                    0.0
                } else {
                    state.budget_initial.0 as f64 / total
                }
            });
            round_cents(coefficient * flux)
        }
    };

    Ok(TokenQuote {
        object_id: target_id.to_owned(),
        initial_value: Cents(cents),
        lifetime: terms.lifetime,
        quoted_at: terms.quoted_at,
        valid_until: terms.quoted_at + QUOTE_VALIDITY,
        policy,
    })
}

/// Books an issued quote against the budget.
pub fn apply_removal(
    state: &BudgetState,
    quote: &TokenQuote,
    policy: PricingPolicy,
) -> Result<BudgetState, PricingError> {
    let mut next = state.clone();
    let value = quote.initial_value;
    next.issued_total = state
        .issued_total
        .checked_add(value)
        .ok_or_else(|| PricingError::InvalidBudget("issued total overflows".into()))?;
    if policy == PricingPolicy::Division {
        if value > state.budget_remaining || value.0 < 0 {
            return Err(PricingError::Overdraw {
                quote: value,
                remaining: state.budget_remaining,
            });
        }
        next.budget_remaining = Cents(state.budget_remaining.0 - value.0);
    }
    Ok(next)
}

/// Depreciation step for token schedules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ScheduleStep {
    #[default]
    Yearly,
    Monthly,
}

impl ScheduleStep {
    pub fn seconds(self) -> i64 {
        match self {
            Self::Yearly => crate::time::SECONDS_PER_YEAR,
            Self::Monthly => crate::time::SECONDS_PER_MONTH,
        }
    }
}

impl FromStr for ScheduleStep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "yearly" | "year" => Ok(Self::Yearly),
            "monthly" | "month" => Ok(Self::Monthly),
            other => Err(format!("unknown schedule step `{other}`")),
        }
    }
}

impl fmt::Display for ScheduleStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Yearly => "yearly",
            Self::Monthly => "monthly",
        })
    }
}

/// Stepwise-linear depreciation from `initial_value` to zero over `lifetime`.
pub fn make_schedule(
    initial_value: Cents,
    lifetime: i64,
    step: i64,
) -> Result<ValueSchedule, PricingError> {
    ValueSchedule::rot(initial_value, lifetime, step)
        .map_err(|_| PricingError::InvalidLifetime { lifetime, step })
}
