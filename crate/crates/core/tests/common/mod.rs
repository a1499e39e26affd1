//! Independent reference implementations used to check the library.
//!
//! Nothing here calls the grid, the Kepler solver, the flux accumulator or
//! the pricing code. The oracles work from first principles: all-pairs
//! scans, bisection, numerical integration and direct formulas.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use adr_currency::catalogue::{Catalogue, KeplerianElements};
use adr_currency::flux::FluxConfig;
use adr_currency::propagation::{PerturbationMode, MU_EARTH};
use adr_currency::{propagate, PricingPolicy};

/// Root of `E − e sin E = M` by bisection on `[0, 2π]` for `M ∈ [0, 2π)`.
pub fn bisection_kepler(mean_anomaly: f64, eccentricity: f64, tol: f64) -> f64 {
    let f = |x: f64| x - eccentricity * x.sin() - mean_anomaly;
    let (mut lo, mut hi) = (0.0_f64, TAU);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn accel(r: [f64; 3]) -> [f64; 3] {
    let d = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let k = -MU_EARTH / (d * d * d);
    [k * r[0], k * r[1], k * r[2]]
}

/// Classic fixed-step RK4 on the two-body equations of motion.
pub fn rk4_two_body(r0: [f64; 3], v0: [f64; 3], duration: f64, steps: usize) -> ([f64; 3], [f64; 3]) {
    let h = duration / steps as f64;
    let (mut r, mut v) = (r0, v0);
    let add = |a: [f64; 3], b: [f64; 3], s: f64| [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]];
    for _ in 0..steps {
        let k1v = accel(r);
        let k1r = v;
        let k2v = accel(add(r, k1r, h / 2.0));
        let k2r = add(v, k1v, h / 2.0);
        let k3v = accel(add(r, k2r, h / 2.0));
        let k3r = add(v, k2v, h / 2.0);
        let k4v = accel(add(r, k3r, h));
        let k4r = add(v, k3v, h);
        for i in 0..3 {
            r[i] += h / 6.0 * (k1r[i] + 2.0 * k2r[i] + 2.0 * k3r[i] + k4r[i]);
            v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        }
    }
    (r, v)
}

pub fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn cube(p: [f64; 3], cell: f64) -> [i64; 3] {
    [
        (p[0] / cell).floor() as i64,
        (p[1] / cell).floor() as i64,
        (p[2] / cell).floor() as i64,
    ]
}

/// O(n²) scan: every `(i, j)`, `i < j`, whose cubes differ by at most one
/// index on each axis.
pub fn brute_force_pairs(positions: &[[f64; 3]], cell: f64) -> Vec<(usize, usize)> {
    let keys: Vec<[i64; 3]> = positions.iter().map(|p| cube(*p, cell)).collect();
    let mut out = Vec::new();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if (0..3).all(|a| (keys[i][a] - keys[j][a]).abs() <= 1) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Flux by brute force: propagate every object with `propagate`, scan all
/// pairs, and credit `w·v·Δt/(3c)³` to both partners in (time, id_a, id_b)
/// order.
pub fn oracle_flux(catalogue: &Catalogue, config: &FluxConfig) -> BTreeMap<String, f64> {
    let objects = catalogue.objects();
    let start = config
        .start_epoch
        .unwrap_or_else(|| objects.iter().map(|o| o.elements.epoch).fold(f64::MIN, f64::max));
    let volume = (3.0 * config.cell_size).powi(3);
    let mut flux = vec![0.0; objects.len()];
    let mut k = 0;
    loop {
        let t = k as f64 * config.step;
        if t >= config.horizon {
            break;
        }
        let states: Vec<_> = objects
            .iter()
            .map(|o| propagate(&o.elements, start - o.elements.epoch + t, config.perturbation_mode).unwrap())
            .collect();
        let positions: Vec<[f64; 3]> = states.iter().map(|s| s.position).collect();
        for (i, j) in brute_force_pairs(&positions, config.cell_size) {
            let v = dist(states[i].velocity, states[j].velocity);
            let w = if config.weight_by_cross_section {
                0.5 * (objects[i].cross_section + objects[j].cross_section) * 1e-6
            } else {
                1.0
            };
            let inc = w * v * config.step / volume;
            flux[i] += inc;
            flux[j] += inc;
        }
        k += 1;
    }
    objects.iter().map(|o| o.id.clone()).zip(flux).collect()
}

/// Greedy removal plus pricing, recomputed from scratch each iteration with
/// [`oracle_flux`]. Produces the campaign CSV body.
pub fn oracle_campaign_csv(
    catalogue: &Catalogue,
    iterations: usize,
    policy: PricingPolicy,
    config: &FluxConfig,
    budget_cents: i64,
) -> String {
    let mut config = config.clone();
    if config.start_epoch.is_none() {
        config.start_epoch = catalogue.iter().map(|o| o.elements.epoch).reduce(f64::max);
    }
    let mut out = String::from(
        "iteration,removed_id,removed_flux,total_flux,initial_token_value,lifetime_days\n",
    );
    let mut remaining = budget_cents;
    let mut coefficient: Option<f64> = None;
    let mut current = catalogue.clone();
    for it in 1..=iterations {
        let flux = oracle_flux(&current, &config);
        let total: f64 = flux.values().sum();
        let (id, f) = flux
            .iter()
            .fold(None::<(&String, f64)>, |best, (id, f)| match best {
                Some((_, bf)) if *f <= bf => best,
                _ => Some((id, *f)),
            })
            .unwrap();
        let cents = match policy {
            PricingPolicy::Division => {
                let v = if total == 0.0 {
                    0
                } else {
                    ((remaining as f64 * (f / total)).round_ties_even() as i64).min(remaining)
                };
                remaining -= v;
                v
            }
            PricingPolicy::Coefficient => {
                let c = *coefficient.get_or_insert(if total == 0.0 {
                    0.0
                } else {
                    budget_cents as f64 / total
                });
                (c * f).round_ties_even() as i64
            }
        };
        let _ = writeln!(
            out,
            "{it},{id},{f},{total},{}.{:02},18262.5",
            cents / 100,
            cents % 100
        );
        let id = id.clone();
        current = current.remove_object(&id).unwrap();
    }
    out
}

/// Random LEO elements with perigee above 300 km.
pub fn random_leo(rng: &mut impl rand::Rng) -> KeplerianElements {
    let a: f64 = 6_378.137 + rng.random_range(400.0..1_900.0);
    let max_e = ((a - 6_678.137) / a).min(0.05);
    KeplerianElements {
        epoch: 1.5e9,
        semi_major_axis: a,
        eccentricity: rng.random_range(0.0..max_e),
        inclination: rng.random_range(0.0..std::f64::consts::PI),
        raan: rng.random_range(0.0..TAU),
        arg_perigee: rng.random_range(0.0..TAU),
        mean_anomaly_at_epoch: rng.random_range(0.0..TAU),
    }
}

/// Strips `#` provenance lines from CLI output.
pub fn without_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

pub const TWO_BODY: PerturbationMode = PerturbationMode::TwoBody;

/// Builds a ledger by applying `ops` random operations, some of which are
/// meant to be rejected. Returns the live ledger and how many calls failed.
pub fn random_ledger(rng: &mut impl rand::Rng, ops: usize) -> (adr_currency::Ledger, usize) {
    use adr_currency::ledger::{DisposalProof, ValueSchedule};
    use adr_currency::pricing::{Cents, TokenQuote};

    const YEAR: i64 = 31_557_600;
    let parties = ["alice", "bob", "carol", "dave"];
    let mut ledger = adr_currency::Ledger::new();
    let mut clock: i64 = 1_500_000_000;
    let mut rejected = 0;
    for _ in 0..ops {
        clock += rng.random_range(0..3 * YEAR);
        let token_ids: Vec<String> = ledger.tokens().map(|t| t.token_id.clone()).collect();
        let result = match rng.random_range(0..10) {
            0..=3 => {
                let object_id = format!("OBJ-{}", rng.random_range(0..25));
                let cents = Cents(rng.random_range(0..5_000_000_000));
                let step = if rng.random_bool(0.5) { YEAR } else { YEAR / 12 };
                let lifetime = step * rng.random_range(1..=60);
                let schedule = match rng.random_range(0..3) {
                    0 => ValueSchedule::rot(cents, lifetime, step),
                    1 => ValueSchedule::mot(cents, rng.random_range(0.0..0.1), step),
                    _ => ValueSchedule::mot_then_rot(
                        cents,
                        rng.random_range(0.0..0.1),
                        step,
                        rng.random_range(0..20 * YEAR),
                        lifetime,
                    ),
                }
                .unwrap();
                let quoted_at = clock - rng.random_range(0..40 * 86_400);
                let quote = TokenQuote {
                    object_id: object_id.clone(),
                    initial_value: if rng.random_bool(0.95) { cents } else { Cents(cents.0 + 1) },
                    lifetime,
                    quoted_at,
                    valid_until: quoted_at + 30 * 86_400,
                    policy: adr_currency::PricingPolicy::Division,
                };
                let proof = DisposalProof {
                    object_id,
                    remover_id: parties[rng.random_range(0..parties.len())].into(),
                    disposed_at: clock,
                    evidence_digest: format!("{:016x}", rng.random::<u64>()),
                };
                ledger.issue(proof, quote, schedule).map(|_| ())
            }
            4..=6 if !token_ids.is_empty() => {
                let id = &token_ids[rng.random_range(0..token_ids.len())];
                let holder = ledger.token(id).unwrap().holder.clone();
                let from = if rng.random_bool(0.9) {
                    holder
                } else {
                    parties[rng.random_range(0..parties.len())].to_string()
                };
                let to = parties[rng.random_range(0..parties.len())];
                ledger.transfer(id, &from, to, clock).map(|_| ())
            }
            7 | 8 if !token_ids.is_empty() => {
                let id = &token_ids[rng.random_range(0..token_ids.len())];
                ledger.value(id, clock).map(|_| ())
            }
            _ => ledger.expire_due(clock).map(|_| ()),
        };
        if result.is_err() {
            rejected += 1;
        }
    }
    (ledger, rejected)
}
