//! Accumulate collision flux over a year and print the distribution.
//!
//! cargo run --release --example flux_distribution [objects] [days]

use adr_currency::flux::flux_histogram;
use adr_currency::synth::{synthetic_catalogue, SynthConfig};
use adr_currency::{accumulate_flux, FluxConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let objects: usize = args.next().map_or(Ok(500), |s| s.parse())?;
    let days: f64 = args.next().map_or(Ok(365.0), |s| s.parse())?;

    let catalogue = synthetic_catalogue(&SynthConfig::new(objects, 3, 7))?;
    let config = FluxConfig {
        horizon: days * 86_400.0,
        ..FluxConfig::default()
    };
    let table = accumulate_flux(&catalogue, &config)?;
    let nonzero = table.iter().filter(|(_, f)| *f > 0.0).count();
    println!(
        "{} objects, {} with flux, {} encounters, total {:.4}",
        table.len(),
        nonzero,
        table.encounter_count(),
        table.total()
    );

    let bins = flux_histogram(&table, 12)?;
    let widest = bins.iter().map(|b| b.1).max().unwrap_or(1).max(1);
    for (lower, count) in bins {
        let bar = "#".repeat(count * 50 / widest);
        println!("{lower:>10.4} {count:>5} {bar}");
    }
    Ok(())
}
