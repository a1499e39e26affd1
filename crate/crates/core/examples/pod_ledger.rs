//! Issue, trade and value a proof-of-disposal token, then replay the log.

use adr_currency::ledger::{parse_log, replay};
use adr_currency::pricing::{quote, QuoteTerms};
use adr_currency::synth::{synthetic_catalogue, SynthConfig};
use adr_currency::time::SECONDS_PER_YEAR;
use adr_currency::{
    accumulate_flux, select_target, BudgetState, DisposalProof, FluxConfig, Ledger, PricingPolicy,
    ValueSchedule,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalogue = synthetic_catalogue(&SynthConfig::new(200, 2, 5))?;
    let config = FluxConfig {
        horizon: 90.0 * 86_400.0,
        ..FluxConfig::default()
    };
    let table = accumulate_flux(&catalogue, &config)?;
    let target = select_target(&table)?;

    let now = 1_700_000_000;
    let mut budget = BudgetState::default();
    let q = quote(&table, &target, &mut budget, PricingPolicy::Division, QuoteTerms::at(now))?;
    println!("quote for {target}: {} USD, valid until {}", q.initial_value, q.valid_until);

    let mut ledger = Ledger::new();
    let schedule = ValueSchedule::rot(q.initial_value, q.lifetime, SECONDS_PER_YEAR)?;
    let proof = DisposalProof {
        object_id: target.clone(),
        remover_id: "orbital-sweepers".into(),
        disposed_at: now + 20 * 86_400,
        evidence_digest: "9f2c".repeat(16),
    };
    let token = ledger.issue(proof, q, schedule)?;
    ledger.transfer(&token, "orbital-sweepers", "insurer-a", now + 40 * 86_400)?;
    for years in [0, 1, 10, 25, 50] {
        let at = now + 20 * 86_400 + years * SECONDS_PER_YEAR;
        println!("value after {years:>2} y: {} USD", ledger.token(&token).unwrap().value_at(at));
    }

    let log = ledger.export();
    print!("{log}");
    let rebuilt = replay(&parse_log(log.as_bytes())?)?;
    assert_eq!(rebuilt, ledger);
    println!("replayed {} entries, head {}", rebuilt.entries().len(), rebuilt.head_digest());
    Ok(())
}
