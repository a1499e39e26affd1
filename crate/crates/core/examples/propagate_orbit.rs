//! Propagate one orbit in both perturbation modes and show the nodal drift.

use adr_currency::propagation::{advance_elements, orbital_period};
use adr_currency::{propagate, KeplerianElements, PerturbationMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let el = KeplerianElements {
        epoch: 0.0,
        semi_major_axis: 7_078.137,
        eccentricity: 0.001,
        inclination: 98.2_f64.to_radians(),
        raan: 0.0,
        arg_perigee: 0.0,
        mean_anomaly_at_epoch: 0.0,
    };
    let period = orbital_period(&el);
    println!("period {:.2} min", period / 60.0);

    println!("{:>8} {:>12} {:>12} {:>12}  mode", "t [s]", "x [km]", "y [km]", "z [km]");
    for mode in [PerturbationMode::TwoBody, PerturbationMode::J2Secular] {
        for k in 0..=4 {
            let t = k as f64 * period / 4.0;
            let s = propagate(&el, t, mode)?;
            let [x, y, z] = s.position;
            println!("{t:>8.0} {x:>12.3} {y:>12.3} {z:>12.3}  {mode}");
        }
    }

    let day = advance_elements(&el, 86_400.0, PerturbationMode::J2Secular);
    let drift = (day.raan - el.raan).to_degrees();
    println!("J2 node drift {:+.4} deg/day (sun-synchronous is about +0.9856)", drift);
    Ok(())
}
