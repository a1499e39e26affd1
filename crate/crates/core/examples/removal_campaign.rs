//! Greedy removal campaign under both pricing policies.

use adr_currency::synth::{synthetic_catalogue, SynthConfig};
use adr_currency::{run_campaign, BudgetState, FluxConfig, PricingPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalogue = synthetic_catalogue(&SynthConfig::new(400, 3, 2017))?;
    let config = FluxConfig {
        horizon: 180.0 * 86_400.0,
        ..FluxConfig::default()
    };
    for policy in [PricingPolicy::Division, PricingPolicy::Coefficient] {
        let report = run_campaign(&catalogue, 10, policy, &config, BudgetState::default())?;
        println!("policy {policy}");
        println!("{:>4} {:>10} {:>12} {:>12} {:>20}", "it", "removed", "flux", "total", "token USD");
        for r in &report.iterations {
            println!(
                "{:>4} {:>10} {:>12.5} {:>12.5} {:>20}",
                r.iteration, r.removed_id, r.removed_flux, r.total_flux, r.initial_token_value
            );
        }
        println!(
            "issued {} USD, remaining {} USD\n",
            report.issued_total(),
            report.final_budget.budget_remaining
        );
    }
    Ok(())
}
