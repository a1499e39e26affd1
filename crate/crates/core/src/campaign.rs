//! Greedy removal campaign: compute fluxes, remove the highest-flux object,
//! price it, repeat on the reduced catalogue.
//!
//! The environment is frozen. There are no launches or fragmentation, and
//! surviving trajectories do not depend on earlier removals. The simulation
//! start epoch is pinned from the initial catalogue so every iteration
//! evaluates the same time window.

use std::fmt::Write as _;

use thiserror::Error;

use crate::catalogue::{Catalogue, CatalogueError};
use crate::flux::{accumulate_flux, FluxConfig, FluxError, FluxTable};
use crate::pricing::{
    apply_removal, quote, BudgetState, Cents, PricingError, PricingPolicy, QuoteTerms, TokenQuote,
};
use crate::time::{seconds_to_days, DEFAULT_TOKEN_LIFETIME};

pub const DEFAULT_ITERATIONS: usize = 50;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CampaignError {
    #[error("{requested} iterations requested but the catalogue holds {available} objects")]
    TooManyIterations { requested: usize, available: usize },
    #[error("at least one iteration is required")]
    NoIterations,
    #[error(transparent)]
    Flux(#[from] FluxError),
    #[error(transparent)]
    Pricing(#[from] PricingError),
    #[error(transparent)]
    Catalogue(#[from] CatalogueError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationResult {
    /// 1-based.
    pub iteration: usize,
    pub removed_id: String,
    pub removed_flux: f64,
    pub total_flux: f64,
    pub initial_token_value: Cents,
    /// seconds
    pub lifetime: i64,
    /// Budget left before this removal was booked.
    pub budget_remaining_before: Cents,
    pub quote: TokenQuote,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignReport {
    pub iterations: Vec<IterationResult>,
    pub policy: PricingPolicy,
    pub config: FluxConfig,
    pub budget_initial: Cents,
    pub final_budget: BudgetState,
}

impl CampaignReport {
    pub fn issued_total(&self) -> Cents {
        self.final_budget.issued_total
    }

    /// `iteration,removed_id,removed_flux,total_flux,initial_token_value,lifetime_days`,
    /// with the token value in dollars.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "iteration,removed_id,removed_flux,total_flux,initial_token_value,lifetime_days\n",
        );
        for r in &self.iterations {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.iteration,
                r.removed_id,
                r.removed_flux,
                r.total_flux,
                r.initial_token_value,
                seconds_to_days(r.lifetime)
            );
        }
        out
    }

    /// One quote JSON object per line, in removal order.
    pub fn quotes_jsonl(&self) -> String {
        self.iterations
            .iter()
            .map(|r| r.quote.to_json() + "\n")
            .collect()
    }
}

/// Id with the largest flux; ties go to the smallest id.
pub fn select_target(table: &FluxTable) -> Result<String, FluxError> {
    let mut best: Option<(&str, f64)> = None;
    for (id, flux) in table.iter() {
        if best.is_none_or(|(_, b)| flux > b) {
            best = Some((id, flux));
        }
    }
    best.map(|(id, _)| id.to_owned()).ok_or(FluxError::EmptyTable)
}

pub fn run_campaign(
    catalogue: &Catalogue,
    n_iterations: usize,
    policy: PricingPolicy,
    config: &FluxConfig,
    budget: BudgetState,
) -> Result<CampaignReport, CampaignError> {
    run_campaign_observed(catalogue, n_iterations, policy, config, budget, |_, _| {})
}

/// [`run_campaign`] that also hands each iteration's flux table to
/// `observe(iteration, table)` before the removal.
pub fn run_campaign_observed(
    catalogue: &Catalogue,
    n_iterations: usize,
    policy: PricingPolicy,
    config: &FluxConfig,
    budget: BudgetState,
    mut observe: impl FnMut(usize, &FluxTable),
) -> Result<CampaignReport, CampaignError> {
    if n_iterations == 0 {
        return Err(CampaignError::NoIterations);
    }
    if n_iterations > catalogue.len() {
        return Err(CampaignError::TooManyIterations {
            requested: n_iterations,
            available: catalogue.len(),
        });
    }
    config.validate()?;
    let config = config.resolved_for(catalogue);
    let quoted_at = config.start_epoch.unwrap_or(0.0).floor() as i64;
    let terms = QuoteTerms {
        quoted_at,
        lifetime: DEFAULT_TOKEN_LIFETIME,
    };

    let budget_initial = budget.budget_initial;
    let mut state = budget;
    let mut current = catalogue.clone();
    let mut iterations = Vec::with_capacity(n_iterations);
    for iteration in 1..=n_iterations {
        let table = accumulate_flux(&current, &config)?;
        observe(iteration, &table);
        let target = select_target(&table)?;
        let removed_flux = table.get(&target).expect("selected from table");
        let budget_remaining_before = state.budget_remaining;
        let q = quote(&table, &target, &mut state, policy, terms)?;
        state = apply_removal(&state, &q, policy)?;
        iterations.push(IterationResult {
            iteration,
            removed_id: target.clone(),
            removed_flux,
            total_flux: table.total(),
            initial_token_value: q.initial_value,
            lifetime: q.lifetime,
            budget_remaining_before,
            quote: q,
        });
        current = current.remove_object(&target)?;
    }

    Ok(CampaignReport {
        iterations,
        policy,
        config,
        budget_initial,
        final_budget: state,
    })
}
