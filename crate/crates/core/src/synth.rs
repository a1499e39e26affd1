//! Seeded synthetic catalogues for desk-scale experiments.
//!
//! Objects are spread over `clusters` tight groups. Each group shares an
//! altitude, inclination and node, with small jitter, so group members keep
//! crossing each other's path and produce encounters. Angles are drawn in
//! degrees and converted the same way the CSV reader does, so a generated
//! catalogue survives a CSV round trip exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalogue::{radians_from_degrees, Catalogue, CatalogueError, CatalogueObject, KeplerianElements};
use crate::propagation::EARTH_RADIUS_KM;

/// 2017-04-01T00:00:00Z
pub const SYNTH_EPOCH: f64 = 1_491_004_800.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub objects: usize,
    pub clusters: usize,
    pub seed: u64,
    /// Range for cluster centre altitudes, km.
    pub altitude_range: (f64, f64),
    /// Range for cluster inclinations, degrees.
    pub inclination_range: (f64, f64),
    /// Half-width of per-object altitude jitter, km.
    pub altitude_jitter: f64,
    /// Half-width of inclination and node jitter, degrees.
    pub plane_jitter_deg: f64,
    pub max_eccentricity: f64,
    /// Cross-section range, m².
    pub cross_section_range: (f64, f64),
}

impl SynthConfig {
    pub fn new(objects: usize, clusters: usize, seed: u64) -> Self {
        Self {
            objects,
            clusters,
            seed,
            altitude_range: (600.0, 1200.0),
            inclination_range: (45.0, 100.0),
            altitude_jitter: 2.0,
            plane_jitter_deg: 0.02,
            max_eccentricity: 5e-4,
            cross_section_range: (1.0, 20.0),
        }
    }
}

/// Generates the catalogue described by `config`. Object `i` belongs to
/// cluster `i mod clusters`; ids are `SYN-00001`, `SYN-00002`, ...
pub fn synthetic_catalogue(config: &SynthConfig) -> Result<Catalogue, CatalogueError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let clusters = config.clusters.max(1);
    let centres: Vec<(f64, f64, f64)> = (0..clusters)
        .map(|_| {
            (
                rng.random_range(config.altitude_range.0..=config.altitude_range.1),
                rng.random_range(config.inclination_range.0..=config.inclination_range.1),
                rng.random_range(0.0..360.0),
            )
        })
        .collect();

    let jitter = |rng: &mut ChaCha8Rng, half: f64| {
        if half > 0.0 {
            rng.random_range(-half..=half)
        } else {
            0.0
        }
    };
    let objects = (0..config.objects)
        .map(|i| {
            let (alt, inc, raan) = centres[i % clusters];
            let altitude = alt + jitter(&mut rng, config.altitude_jitter);
            let inc = inc + jitter(&mut rng, config.plane_jitter_deg);
            let raan = raan + jitter(&mut rng, config.plane_jitter_deg);
            let ecc = if config.max_eccentricity > 0.0 {
                rng.random_range(0.0..config.max_eccentricity)
            } else {
                0.0
            };
            let argp: f64 = rng.random_range(0.0..360.0);
            let mean_anom: f64 = rng.random_range(0.0..360.0);
            let (lo, hi) = config.cross_section_range;
            let cross_section = if hi > lo { rng.random_range(lo..hi) } else { lo };
            CatalogueObject {
                id: format!("SYN-{:05}", i + 1),
                name: format!("SYNTH C{} #{}", i % clusters + 1, i + 1),
                elements: KeplerianElements {
                    epoch: SYNTH_EPOCH,
                    semi_major_axis: EARTH_RADIUS_KM + altitude,
                    eccentricity: ecc,
                    inclination: radians_from_degrees(inc),
                    raan: radians_from_degrees(raan),
                    arg_perigee: radians_from_degrees(argp),
                    mean_anomaly_at_epoch: radians_from_degrees(mean_anom),
                },
                cross_section,
            }
        })
        .collect();
    Catalogue::new(objects, format!("synthetic seed={}", config.seed))
}
