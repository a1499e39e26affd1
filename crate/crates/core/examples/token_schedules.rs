//! Value trajectories for the three token schedules.

use adr_currency::time::SECONDS_PER_YEAR;
use adr_currency::{Cents, ValueSchedule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v0 = Cents::from_usd(1_000_000.0).expect("finite");
    let life = 50 * SECONDS_PER_YEAR;
    let rot = ValueSchedule::rot(v0, life, SECONDS_PER_YEAR)?;
    let mot = ValueSchedule::mot(v0, 0.03, SECONDS_PER_YEAR)?;
    let both = ValueSchedule::mot_then_rot(v0, 0.03, SECONDS_PER_YEAR, 10 * SECONDS_PER_YEAR, life)?;

    println!("{:>5} {:>16} {:>16} {:>16}", "year", "ROT", "MOT", "MOT_THEN_ROT");
    for year in (0..=60).step_by(5) {
        let t = year * SECONDS_PER_YEAR;
        println!(
            "{year:>5} {:>16} {:>16} {:>16}",
            rot.value_at(t),
            mot.value_at(t),
            both.value_at(t)
        );
    }
    Ok(())
}
