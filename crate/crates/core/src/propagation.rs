//! Analytic two-body propagation with optional J2 secular drift.
//!
//! Constants are fixed for reproducibility:
//! μ = 398600.4418 km³/s², J2 = 1.08262668e−3, Rₑ = 6378.137 km.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

use crate::catalogue::KeplerianElements;

/// Earth gravitational parameter, km³/s².
pub const MU_EARTH: f64 = 398_600.441_8;
/// Earth equatorial radius, km.
pub const EARTH_RADIUS_KM: f64 = 6_378.137;
pub const J2: f64 = 1.082_626_68e-3;

const MAX_NEWTON_ITERATIONS: usize = 50;
const MAX_BISECTION_ITERATIONS: usize = 200;
const KEPLER_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum PropagationError {
    #[error("Kepler's equation did not converge for M = {mean_anomaly}, e = {eccentricity}")]
    NonConvergence { mean_anomaly: f64, eccentricity: f64 },
    #[error("invalid Kepler input: M = {mean_anomaly}, e = {eccentricity}")]
    InvalidInput { mean_anomaly: f64, eccentricity: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PerturbationMode {
    TwoBody,
    #[default]
    J2Secular,
}

impl std::str::FromStr for PerturbationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "twobody" | "two-body" | "two_body" => Ok(Self::TwoBody),
            "j2" | "j2secular" | "j2-secular" | "j2_secular" => Ok(Self::J2Secular),
            other => Err(format!("unknown perturbation mode `{other}`")),
        }
    }
}

impl std::fmt::Display for PerturbationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::TwoBody => "two-body",
            Self::J2Secular => "j2-secular",
        })
    }
}

/// Earth-centred inertial position (km) and velocity (km/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub position: [f64; 3],
    pub velocity: [f64; 3],
}

impl StateVector {
    pub fn radius(&self) -> f64 {
        norm(self.position)
    }

    pub fn speed(&self) -> f64 {
        norm(self.velocity)
    }

    /// Specific angular momentum |r × v|.
    pub fn angular_momentum(&self) -> f64 {
        norm(cross(self.position, self.velocity))
    }
}

pub(crate) fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Solves Kepler's equation `E − e·sin E = M` for the eccentric anomaly.
///
/// The returned `E` lies in the same 2π branch as `M`: `M` is reduced to
/// `[−π, π)`, solved there, and the branch offset added back. Newton steps
/// are kept inside the bracket `[m − e, m + e]`; if Newton has not settled
/// after 50 iterations the bracket is bisected instead.
pub fn solve_kepler(mean_anomaly: f64, eccentricity: f64) -> Result<f64, PropagationError> {
    if !mean_anomaly.is_finite() || !(0.0..1.0).contains(&eccentricity) {
        return Err(PropagationError::InvalidInput {
            mean_anomaly,
            eccentricity,
        });
    }
    let branch = ((mean_anomaly + PI) / TAU).floor();
    let offset = branch * TAU;
    let m = mean_anomaly - offset;
    let e = eccentricity;
    if e == 0.0 || m == 0.0 {
        return Ok(mean_anomaly);
    }

    let residual = |x: f64| x - e * x.sin() - m;
    let mut lo = m - e;
    let mut hi = m + e;
    let mut x = if e < 0.8 { m + e * m.sin() } else { m + e * m.signum() }.clamp(lo, hi);
    let mut converged = false;

    for _ in 0..MAX_NEWTON_ITERATIONS {
        let f = residual(x);
        if f == 0.0 {
            converged = true;
            break;
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let step = f / (1.0 - e * x.cos());
        let mut next = x - step;
        if !(lo..=hi).contains(&next) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            x = next;
            converged = true;
            break;
        }
        x = next;
    }

    if !converged {
        for _ in 0..MAX_BISECTION_ITERATIONS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if residual(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        x = 0.5 * (lo + hi);
    }

    if residual(x).abs() >= KEPLER_TOLERANCE {
        return Err(PropagationError::NonConvergence {
            mean_anomaly,
            eccentricity,
        });
    }
    Ok(x + offset)
}

/// Unperturbed mean motion √(μ/a³), rad/s.
pub fn mean_motion(semi_major_axis: f64) -> f64 {
    (MU_EARTH / semi_major_axis.powi(3)).sqrt()
}

/// Keplerian period 2π√(a³/μ) in seconds.
pub fn orbital_period(elements: &KeplerianElements) -> f64 {
    TAU * (elements.semi_major_axis.powi(3) / MU_EARTH).sqrt()
}

/// Secular element rates in rad/s: (RAAN, argument of perigee, mean anomaly).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularRates {
    pub raan: f64,
    pub arg_perigee: f64,
    pub mean_anomaly: f64,
}

pub fn secular_rates(elements: &KeplerianElements, mode: PerturbationMode) -> SecularRates {
    let n = mean_motion(elements.semi_major_axis);
    match mode {
        PerturbationMode::TwoBody => SecularRates {
            raan: 0.0,
            arg_perigee: 0.0,
            mean_anomaly: n,
        },
        PerturbationMode::J2Secular => {
            let e2 = elements.eccentricity * elements.eccentricity;
            let p = elements.semi_major_axis * (1.0 - e2);
            let k = n * J2 * (EARTH_RADIUS_KM / p).powi(2);
            let cos_i = elements.inclination.cos();
            let cos2 = cos_i * cos_i;
            SecularRates {
                raan: -1.5 * k * cos_i,
                arg_perigee: 0.75 * k * (5.0 * cos2 - 1.0),
                mean_anomaly: n + 0.75 * k * (1.0 - e2).sqrt() * (3.0 * cos2 - 1.0),
            }
        }
    }
}

/// Elements with the trig and rate terms that do not depend on time
/// precomputed, for repeated evaluation at many offsets.
#[derive(Debug, Clone, Copy)]
pub struct PreparedOrbit {
    semi_major_axis: f64,
    eccentricity: f64,
    semi_minor_ratio: f64,
    velocity_scale: f64,
    cos_inc: f64,
    sin_inc: f64,
    raan: f64,
    arg_perigee: f64,
    mean_anomaly: f64,
    rates: SecularRates,
}

struct Orientation {
    p: [f64; 3],
    q: [f64; 3],
}

impl PreparedOrbit {
    pub fn new(elements: &KeplerianElements, mode: PerturbationMode) -> Self {
        let a = elements.semi_major_axis;
        let e = elements.eccentricity;
        Self {
            semi_major_axis: a,
            eccentricity: e,
            semi_minor_ratio: (1.0 - e * e).sqrt(),
            velocity_scale: (MU_EARTH * a).sqrt(),
            cos_inc: elements.inclination.cos(),
            sin_inc: elements.inclination.sin(),
            raan: elements.raan,
            arg_perigee: elements.arg_perigee,
            mean_anomaly: elements.mean_anomaly_at_epoch,
            rates: secular_rates(elements, mode),
        }
    }

    fn orientation(&self, dt: f64) -> Orientation {
        let raan = (self.raan + self.rates.raan * dt).rem_euclid(TAU);
        let argp = (self.arg_perigee + self.rates.arg_perigee * dt).rem_euclid(TAU);
        let (sin_o, cos_o) = raan.sin_cos();
        let (sin_w, cos_w) = argp.sin_cos();
        let (sin_i, cos_i) = (self.sin_inc, self.cos_inc);
        Orientation {
            p: [
                cos_o * cos_w - sin_o * sin_w * cos_i,
                sin_o * cos_w + cos_o * sin_w * cos_i,
                sin_w * sin_i,
            ],
            q: [
                -cos_o * sin_w - sin_o * cos_w * cos_i,
                -sin_o * sin_w + cos_o * cos_w * cos_i,
                cos_w * sin_i,
            ],
        }
    }

    fn eccentric_anomaly(&self, dt: f64) -> Result<f64, PropagationError> {
        let m = (self.mean_anomaly + self.rates.mean_anomaly * dt).rem_euclid(TAU);
        solve_kepler(m, self.eccentricity)
    }

    /// Position only; skips the velocity terms.
    pub fn position_at(&self, dt: f64) -> Result<[f64; 3], PropagationError> {
        let ecc_anom = self.eccentric_anomaly(dt)?;
        let (sin_e, cos_e) = ecc_anom.sin_cos();
        let x = self.semi_major_axis * (cos_e - self.eccentricity);
        let y = self.semi_major_axis * self.semi_minor_ratio * sin_e;
        let o = self.orientation(dt);
        Ok([
            o.p[0] * x + o.q[0] * y,
            o.p[1] * x + o.q[1] * y,
            o.p[2] * x + o.q[2] * y,
        ])
    }

    pub fn state_at(&self, dt: f64) -> Result<StateVector, PropagationError> {
        let ecc_anom = self.eccentric_anomaly(dt)?;
        let (sin_e, cos_e) = ecc_anom.sin_cos();
        let a = self.semi_major_axis;
        let x = a * (cos_e - self.eccentricity);
        let y = a * self.semi_minor_ratio * sin_e;
        let r = a * (1.0 - self.eccentricity * cos_e);
        let vx = -self.velocity_scale / r * sin_e;
        let vy = self.velocity_scale / r * self.semi_minor_ratio * cos_e;
        let o = self.orientation(dt);
        Ok(StateVector {
            position: [
                o.p[0] * x + o.q[0] * y,
                o.p[1] * x + o.q[1] * y,
                o.p[2] * x + o.q[2] * y,
            ],
            velocity: [
                o.p[0] * vx + o.q[0] * vy,
                o.p[1] * vx + o.q[1] * vy,
                o.p[2] * vx + o.q[2] * vy,
            ],
        })
    }
}

/// State `dt` seconds after the elements' epoch (negative `dt` propagates
/// backwards).
pub fn propagate(
    elements: &KeplerianElements,
    dt: f64,
    mode: PerturbationMode,
) -> Result<StateVector, PropagationError> {
    PreparedOrbit::new(elements, mode).state_at(dt)
}

/// Mean elements re-referenced to `epoch + dt`, with the secular drift of
/// `mode` applied to the angles.
pub fn advance_elements(
    elements: &KeplerianElements,
    dt: f64,
    mode: PerturbationMode,
) -> KeplerianElements {
    let rates = secular_rates(elements, mode);
    KeplerianElements {
        epoch: elements.epoch + dt,
        raan: (elements.raan + rates.raan * dt).rem_euclid(TAU),
        arg_perigee: (elements.arg_perigee + rates.arg_perigee * dt).rem_euclid(TAU),
        mean_anomaly_at_epoch: (elements.mean_anomaly_at_epoch + rates.mean_anomaly * dt)
            .rem_euclid(TAU),
        ..*elements
    }
}
