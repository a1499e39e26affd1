//! Collision-flux simulation and proof-of-disposal token economy for
//! active debris removal (ADR).
//!
//! The crate is organised as a pipeline:
//!
//! ```text
//! catalogue ──► propagation ──► flux ──► campaign ──► pricing ──► ledger
//!  (TLE/CSV)    (Kepler + J2)   (grid)   (greedy)     (budget)    (POD tokens)
//! ```
//!
//! * [`catalogue`] ingests orbital objects from TLE or canonical CSV.
//! * [`propagation`] moves Keplerian elements to Cartesian states.
//! * [`flux`] hashes objects into a cubic grid once per time step and
//!   accumulates a collision flux for every object that has neighbours.
//! * [`campaign`] repeatedly removes the highest-flux object.
//! * [`pricing`] turns a removed object's flux into an initial token value.
//! * [`ledger`] issues, transfers and values depreciating or amplifying
//!   tokens in a hash-chained append-only log.
//!
//! Runnable walkthroughs for each stage live in `examples/`; the `adr-sim`
//! binary wraps the same pipeline for file-based use.

#![forbid(unsafe_code)]

pub mod campaign;
pub mod catalogue;
pub mod cli;
pub mod flux;
pub mod ledger;
pub mod pricing;
pub mod propagation;
pub mod synth;
pub mod time;

pub use campaign::{run_campaign, select_target, CampaignError, CampaignReport, IterationResult};
pub use catalogue::{Catalogue, CatalogueError, CatalogueObject, KeplerianElements};
pub use flux::{accumulate_flux, find_encounters, CellKey, Encounter, FluxConfig, FluxError, FluxTable};
pub use ledger::{
    DisposalProof, Ledger, LedgerEntry, LedgerError, ScheduleKind, Token, ValueSchedule,
};
pub use pricing::{BudgetState, Cents, PricingError, PricingPolicy, TokenQuote};
pub use propagation::{propagate, solve_kepler, PerturbationMode, PropagationError, StateVector};
