//! Grid-based encounter detection and accumulated collision flux.
//!
//! Space is cut into cubes of `cell_size` km. At every time step each object
//! is hashed into its cube, and any two objects whose cubes differ by at most
//! one index on every axis (a 3×3×3 block, i.e. a 10 km cube for the default
//! 10/3 km cells) count as an encounter. Each encounter adds
//!
//! ```text
//! Δf = w · |v_a − v_b| · step / (3 · cell_size)³
//! ```
//!
//! to both partners.
//!
//! Steps are independent under analytic propagation, so they are evaluated in
//! parallel. Per-step encounter lists are then folded in ascending time, and
//! within a step in ascending `(id_a, id_b)`, so the resulting table is
//! bitwise identical for any worker count.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::catalogue::Catalogue;
use crate::propagation::{norm, PerturbationMode, PreparedOrbit, PropagationError, StateVector};
use crate::time::{DEFAULT_HORIZON_DAYS, SECONDS_PER_DAY};

pub const DEFAULT_CELL_SIZE_KM: f64 = 10.0 / 3.0;

/// m² → km²
const SQ_M_TO_SQ_KM: f64 = 1e-6;

/// Steps evaluated per parallel batch before folding.
const STEP_BATCH: usize = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FluxError {
    #[error("catalogue is empty")]
    EmptyCatalogue,
    #[error("flux table is empty")]
    EmptyTable,
    #[error("invalid flux configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("propagating `{id}` at t = {time} s: {source}")]
    Propagation {
        id: String,
        time: f64,
        source: PropagationError,
    },
}

/// Integer cube indices: `floor(coordinate / cell_size)` per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub ix: i64,
    pub iy: i64,
    pub iz: i64,
}

impl CellKey {
    /// True when the two cubes touch, including diagonally.
    pub fn is_adjacent(&self, other: &CellKey) -> bool {
        (self.ix - other.ix).abs() <= 1
            && (self.iy - other.iy).abs() <= 1
            && (self.iz - other.iz).abs() <= 1
    }

    fn offset(&self, d: [i64; 3]) -> CellKey {
        CellKey {
            ix: self.ix + d[0],
            iy: self.iy + d[1],
            iz: self.iz + d[2],
        }
    }
}

pub fn cell_of(position: [f64; 3], cell_size: f64) -> CellKey {
    CellKey {
        ix: (position[0] / cell_size).floor() as i64,
        iy: (position[1] / cell_size).floor() as i64,
        iz: (position[2] / cell_size).floor() as i64,
    }
}

/// The 13 neighbour offsets that are lexicographically after (0, 0, 0).
/// Visiting only these from every occupied cell reaches each adjacent pair
/// of cells exactly once.
const FORWARD_OFFSETS: [[i64; 3]; 13] = [
    [0, 0, 1],
    [0, 1, -1],
    [0, 1, 0],
    [0, 1, 1],
    [1, -1, -1],
    [1, -1, 0],
    [1, -1, 1],
    [1, 0, -1],
    [1, 0, 0],
    [1, 0, 1],
    [1, 1, -1],
    [1, 1, 0],
    [1, 1, 1],
];

/// Reusable buffers for one grid pass.
#[derive(Debug, Default)]
pub struct NeighborGrid {
    keyed: Vec<(CellKey, u32)>,
    cells: FxHashMap<CellKey, (u32, u32)>,
    pairs: Vec<(u32, u32)>,
}

impl NeighborGrid {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index pairs `(i, j)`, `i < j`, of positions in adjacent or shared
    /// cells, sorted ascending.
    pub fn pairs(&mut self, positions: &[[f64; 3]], cell_size: f64) -> &[(u32, u32)] {
        self.keyed.clear();
        self.keyed.extend(
            positions
                .iter()
                .enumerate()
                .map(|(i, p)| (cell_of(*p, cell_size), i as u32)),
        );
        self.keyed.sort_unstable();

        self.cells.clear();
        let mut start = 0;
        while start < self.keyed.len() {
            let key = self.keyed[start].0;
            let mut end = start + 1;
            while end < self.keyed.len() && self.keyed[end].0 == key {
                end += 1;
            }
            self.cells.insert(key, (start as u32, end as u32));
            start = end;
        }

        self.pairs.clear();
        let keyed = &self.keyed;
        for (key, &(s, e)) in &self.cells {
            let members = &keyed[s as usize..e as usize];
            for (n, a) in members.iter().enumerate() {
                for b in &members[n + 1..] {
                    self.pairs.push(ordered(a.1, b.1));
                }
            }
            for d in FORWARD_OFFSETS {
                if let Some(&(ns, ne)) = self.cells.get(&key.offset(d)) {
                    for a in members {
                        for b in &keyed[ns as usize..ne as usize] {
                            self.pairs.push(ordered(a.1, b.1));
                        }
                    }
                }
            }
        }
        self.pairs.sort_unstable();
        &self.pairs
    }
}

fn ordered(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// One close approach between two objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Encounter {
    pub id_a: String,
    pub id_b: String,
    /// Seconds from the simulation start.
    pub time: f64,
    /// km/s
    pub relative_speed: f64,
}

/// All pairs of objects sharing or touching a cube, each reported once with
/// `id_a < id_b`, ordered by `(id_a, id_b)`.
pub fn find_encounters(
    states: &BTreeMap<String, StateVector>,
    cell_size: f64,
    time: f64,
) -> Vec<Encounter> {
    let ids: Vec<&String> = states.keys().collect();
    let all: Vec<&StateVector> = states.values().collect();
    let positions: Vec<[f64; 3]> = all.iter().map(|s| s.position).collect();
    let mut grid = NeighborGrid::new();
    grid.pairs(&positions, cell_size)
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (all[i as usize], all[j as usize]);
            Encounter {
                id_a: ids[i as usize].clone(),
                id_b: ids[j as usize].clone(),
                time,
                relative_speed: relative_speed(&a.velocity, &b.velocity),
            }
        })
        .collect()
}

pub fn relative_speed(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    norm([a[0] - b[0], a[1] - b[1], a[2] - b[2]])
}

/// Volume of the 3×3×3 neighbourhood, km³.
pub fn neighborhood_volume(cell_size: f64) -> f64 {
    (3.0 * cell_size).powi(3)
}

/// Flux credited to each partner of one encounter.
pub fn flux_increment(relative_speed: f64, step: f64, cell_size: f64, weight: f64) -> f64 {
    weight * relative_speed * step / neighborhood_volume(cell_size)
}

/// Encounter weight for two cross-sections in m²; 1 when weighting is off.
pub fn pair_weight(cross_section_a: f64, cross_section_b: f64, weighted: bool) -> f64 {
    if weighted {
        0.5 * (cross_section_a + cross_section_b) * SQ_M_TO_SQ_KM
    } else {
        1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluxConfig {
    /// km
    pub cell_size: f64,
    /// seconds
    pub horizon: f64,
    /// seconds
    pub step: f64,
    pub perturbation_mode: PerturbationMode,
    pub weight_by_cross_section: bool,
    /// Unix seconds of `t = 0`. `None` means the latest epoch in the
    /// catalogue being evaluated.
    pub start_epoch: Option<f64>,
}

impl Default for FluxConfig {
    fn default() -> Self {
        Self {
            cell_size: DEFAULT_CELL_SIZE_KM,
            horizon: (DEFAULT_HORIZON_DAYS * SECONDS_PER_DAY) as f64,
            step: SECONDS_PER_DAY as f64,
            perturbation_mode: PerturbationMode::J2Secular,
            weight_by_cross_section: false,
            start_epoch: None,
        }
    }
}

impl FluxConfig {
    pub fn validate(&self) -> Result<(), FluxError> {
        if !(self.cell_size.is_finite() && self.cell_size > 0.0) {
            return Err(FluxError::InvalidConfig("cell_size must be positive"));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(FluxError::InvalidConfig("step must be positive"));
        }
        if !(self.horizon.is_finite() && self.horizon >= self.step) {
            return Err(FluxError::InvalidConfig("horizon must be at least one step"));
        }
        if matches!(self.start_epoch, Some(t) if !t.is_finite()) {
            return Err(FluxError::InvalidConfig("start_epoch must be finite"));
        }
        Ok(())
    }

    /// Number of sample times `k · step < horizon`.
    pub fn step_count(&self) -> usize {
        let mut n = (self.horizon / self.step).ceil() as usize;
        while n > 0 && (n - 1) as f64 * self.step >= self.horizon {
            n -= 1;
        }
        n
    }

    /// Copy with `start_epoch` fixed to the catalogue's latest epoch if unset.
    pub fn resolved_for(&self, catalogue: &Catalogue) -> FluxConfig {
        let mut cfg = self.clone();
        if cfg.start_epoch.is_none() {
            cfg.start_epoch = catalogue
                .iter()
                .map(|o| o.elements.epoch)
                .reduce(f64::max);
        }
        cfg
    }
}

/// Per-object accumulated flux over the horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxTable {
    flux: BTreeMap<String, f64>,
    config: FluxConfig,
    catalogue_hash: String,
    encounter_count: u64,
}

impl FluxTable {
    /// Table from explicit values, e.g. fluxes computed elsewhere.
    pub fn from_values(
        values: impl IntoIterator<Item = (String, f64)>,
        config: FluxConfig,
        catalogue_hash: impl Into<String>,
    ) -> Self {
        Self {
            flux: values.into_iter().collect(),
            config,
            catalogue_hash: catalogue_hash.into(),
            encounter_count: 0,
        }
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.flux.get(id).copied()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.flux.contains_key(id)
    }

    /// `(id, flux)` in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.flux.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.flux.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flux.is_empty()
    }

    /// Sum of all fluxes, added in ascending id order.
    pub fn total(&self) -> f64 {
        self.flux.values().sum()
    }

    pub fn max(&self) -> Option<f64> {
        self.flux.values().copied().reduce(f64::max)
    }

    pub fn config(&self) -> &FluxConfig {
        &self.config
    }

    pub fn catalogue_hash(&self) -> &str {
        &self.catalogue_hash
    }

    /// Number of (pair, step) encounters seen while accumulating.
    pub fn encounter_count(&self) -> u64 {
        self.encounter_count
    }

    pub fn is_well_formed(&self) -> bool {
        self.flux.values().all(|f| f.is_finite() && *f >= 0.0)
    }

    /// `id,flux` rows, highest flux first, ties by ascending id.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(&String, f64)> = self.flux.iter().map(|(k, v)| (k, *v)).collect();
        rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        let mut out = String::from("id,flux\n");
        for (id, f) in rows {
            let _ = writeln!(out, "{id},{f}");
        }
        out
    }
}

/// Runs the grid over every step of the horizon and sums each object's
/// encounter contributions.
pub fn accumulate_flux(catalogue: &Catalogue, config: &FluxConfig) -> Result<FluxTable, FluxError> {
    config.validate()?;
    if catalogue.is_empty() {
        return Err(FluxError::EmptyCatalogue);
    }
    let config = config.resolved_for(catalogue);
    let start = config.start_epoch.expect("resolved");
    let objects = catalogue.objects();
    let orbits: Vec<PreparedOrbit> = objects
        .iter()
        .map(|o| PreparedOrbit::new(&o.elements, config.perturbation_mode))
        .collect();
    let offsets: Vec<f64> = objects.iter().map(|o| start - o.elements.epoch).collect();

    let n = objects.len();
    let steps = config.step_count();
    let mut flux = vec![0.0_f64; n];
    let mut encounters = 0_u64;

    let evaluate = |grid: &mut StepBuffers, k: usize| -> Result<Vec<(u32, u32, f64)>, FluxError> {
        let t = k as f64 * config.step;
        let fail = |i: usize, source| FluxError::Propagation {
            id: objects[i].id.clone(),
            time: t,
            source,
        };
        grid.positions.clear();
        for (i, orbit) in orbits.iter().enumerate() {
            grid.positions
                .push(orbit.position_at(offsets[i] + t).map_err(|e| fail(i, e))?);
        }
        let pairs = grid.grid.pairs(&grid.positions, config.cell_size);
        if pairs.is_empty() {
            return Ok(Vec::new());
        }
        grid.velocity.clear();
        let mut out = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            let mut velocity = |i: u32| -> Result<[f64; 3], FluxError> {
                if let Some(v) = grid.velocity.get(&i) {
                    return Ok(*v);
                }
                let idx = i as usize;
                let v = orbits[idx]
                    .state_at(offsets[idx] + t)
                    .map_err(|e| fail(idx, e))?
                    .velocity;
                grid.velocity.insert(i, v);
                Ok(v)
            };
            let va = velocity(i)?;
            let vb = velocity(j)?;
            out.push((i, j, relative_speed(&va, &vb)));
        }
        Ok(out)
    };

    let mut k0 = 0;
    while k0 < steps {
        let k1 = (k0 + STEP_BATCH).min(steps);
        let batch: Vec<Vec<(u32, u32, f64)>> = (k0..k1)
            .into_par_iter()
            .map_init(|| StepBuffers::new(n), |buf, k| evaluate(buf, k))
            .collect::<Result<_, _>>()?;
        for step_pairs in batch {
            encounters += step_pairs.len() as u64;
            for (i, j, speed) in step_pairs {
                let (i, j) = (i as usize, j as usize);
                let w = pair_weight(
                    objects[i].cross_section,
                    objects[j].cross_section,
                    config.weight_by_cross_section,
                );
                let inc = flux_increment(speed, config.step, config.cell_size, w);
                flux[i] += inc;
                flux[j] += inc;
            }
        }
        k0 = k1;
    }

    Ok(FluxTable {
        flux: objects.iter().map(|o| o.id.clone()).zip(flux).collect(),
        config,
        catalogue_hash: catalogue.digest(),
        encounter_count: encounters,
    })
}

struct StepBuffers {
    positions: Vec<[f64; 3]>,
    grid: NeighborGrid,
    velocity: FxHashMap<u32, [f64; 3]>,
}

impl StepBuffers {
    fn new(n: usize) -> Self {
        Self {
            positions: Vec::with_capacity(n),
            grid: NeighborGrid::new(),
            velocity: FxHashMap::default(),
        }
    }
}

/// Equal-width bins over `[0, max flux]`. Bins are closed on the right
/// (`(lower, lower + width]`), the first one also includes 0, and the last
/// one ends exactly at the maximum. Returns `(lower_edge, count)`.
pub fn flux_histogram(table: &FluxTable, bin_count: usize) -> Result<Vec<(f64, usize)>, FluxError> {
    if bin_count == 0 {
        return Err(FluxError::InvalidConfig("bin_count must be at least 1"));
    }
    let max = table.max().ok_or(FluxError::EmptyTable)?;
    let width = max / bin_count as f64;
    let mut counts = vec![0_usize; bin_count];
    for (_, f) in table.iter() {
        let bin = if width > 0.0 {
            ((f / width).ceil() as usize).saturating_sub(1).min(bin_count - 1)
        } else {
            0
        };
        counts[bin] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i as f64 * width, c))
        .collect())
}

pub fn histogram_to_csv(bins: &[(f64, usize)]) -> String {
    let mut out = String::from("bin_lower,count\n");
    for (lower, count) in bins {
        let _ = writeln!(out, "{lower},{count}");
    }
    out
}
