//! Parse a two-line element set and print the canonical catalogue CSV.
//!
//! cargo run --example ingest_tle [path.tle]

use adr_currency::catalogue::parse_tle;

const SAMPLE: &str = "\
ISS (ZARYA)
1 25544U 98067A   08264.51782528 -.00002182  00000-0 -11606-4 0  2927
2 25544  51.6416 247.4627 0006703 130.5360 325.0288 15.72125391563537
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_owned(),
    };
    let catalogue = parse_tle(&text)?;
    for obj in catalogue.iter() {
        eprintln!(
            "{} {:?}: perigee {:.1} km",
            obj.id,
            obj.name,
            obj.elements.perigee_altitude()
        );
    }
    print!("{}", catalogue.to_csv());
    Ok(())
}
