//! Find close approaches at one instant with the spatial hash grid.

use std::collections::BTreeMap;

use adr_currency::flux::DEFAULT_CELL_SIZE_KM;
use adr_currency::synth::{synthetic_catalogue, SynthConfig};
use adr_currency::{find_encounters, propagate, PerturbationMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalogue = synthetic_catalogue(&SynthConfig::new(300, 2, 42))?;
    let t = 10.0 * 86_400.0;
    let mut states = BTreeMap::new();
    for obj in catalogue.iter() {
        states.insert(obj.id.clone(), propagate(&obj.elements, t, PerturbationMode::J2Secular)?);
    }
    let encounters = find_encounters(&states, DEFAULT_CELL_SIZE_KM, t);
    println!("{} objects, {} encounters at day 10", states.len(), encounters.len());
    for e in encounters.iter().take(10) {
        println!("  {} - {}  {:.3} km/s", e.id_a, e.id_b, e.relative_speed);
    }
    Ok(())
}
