//! Orbital-object catalogue: ingestion from TLE or canonical CSV, validation
//! and removal.
//!
//! The canonical interchange format is CSV with the header
//!
//! ```text
//! id,name,epoch_unix,sma_km,ecc,inc_deg,raan_deg,argp_deg,mean_anom_deg,cross_section_m2
//! ```
//!
//! Angles are stored in radians in memory and written in degrees. The
//! writer picks, among the doubles nearest the exact degree value, one that
//! converts back to the identical radian value, so any catalogue read from
//! CSV or TLE survives a write/read cycle field-exact.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::propagation::{EARTH_RADIUS_KM, MU_EARTH};

pub const CSV_HEADER: [&str; 10] = [
    "id",
    "name",
    "epoch_unix",
    "sma_km",
    "ecc",
    "inc_deg",
    "raan_deg",
    "argp_deg",
    "mean_anom_deg",
    "cross_section_m2",
];

pub const DEFAULT_CROSS_SECTION_M2: f64 = 1.0;

const TLE_LINE_LEN: usize = 69;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogueError {
    #[error("line {line}: checksum mismatch")]
    Checksum { line: usize },
    #[error("line {line}, column {column}: {reason}")]
    Format {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("line {line}: field `{field}` out of range")]
    Range { line: usize, field: &'static str },
    #[error("duplicate object id `{0}`")]
    DuplicateId(String),
    #[error("unknown object id `{0}`")]
    UnknownId(String),
}

impl CatalogueError {
    fn format(line: usize, column: usize, reason: impl Into<String>) -> Self {
        Self::Format {
            line,
            column,
            reason: reason.into(),
        }
    }
}

/// Mean Keplerian elements at a per-object epoch. Angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeplerianElements {
    /// UTC seconds since the Unix epoch.
    pub epoch: f64,
    pub semi_major_axis: f64,
    pub eccentricity: f64,
    pub inclination: f64,
    pub raan: f64,
    pub arg_perigee: f64,
    pub mean_anomaly_at_epoch: f64,
}

impl KeplerianElements {
    pub fn perigee_altitude(&self) -> f64 {
        self.semi_major_axis * (1.0 - self.eccentricity) - EARTH_RADIUS_KM
    }

    /// Name of the first field that breaks an invariant, if any.
    pub fn invalid_field(&self) -> Option<&'static str> {
        let angle_ok = |x: f64| (0.0..TAU).contains(&x);
        if !self.epoch.is_finite() {
            Some("epoch_unix")
        } else if !(self.semi_major_axis.is_finite() && self.semi_major_axis > EARTH_RADIUS_KM) {
            Some("sma_km")
        } else if !(0.0..1.0).contains(&self.eccentricity) || self.perigee_altitude() <= 0.0 {
            Some("ecc")
        } else if !(0.0..=PI).contains(&self.inclination) {
            Some("inc_deg")
        } else if !angle_ok(self.raan) {
            Some("raan_deg")
        } else if !angle_ok(self.arg_perigee) {
            Some("argp_deg")
        } else if !angle_ok(self.mean_anomaly_at_epoch) {
            Some("mean_anom_deg")
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogueObject {
    pub id: String,
    pub name: String,
    pub elements: KeplerianElements,
    /// m²
    pub cross_section: f64,
}

/// Validated set of objects, always ordered by ascending id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Catalogue {
    objects: Vec<CatalogueObject>,
    source_label: String,
}

impl Catalogue {
    /// Builds a catalogue, checking every invariant. `line` in a returned
    /// [`CatalogueError::Range`] is the 1-based position in `objects`.
    pub fn new(
        mut objects: Vec<CatalogueObject>,
        source_label: impl Into<String>,
    ) -> Result<Self, CatalogueError> {
        for (i, obj) in objects.iter().enumerate() {
            if let Some(field) = obj.elements.invalid_field() {
                return Err(CatalogueError::Range { line: i + 1, field });
            }
            if !(obj.cross_section.is_finite() && obj.cross_section > 0.0) {
                return Err(CatalogueError::Range {
                    line: i + 1,
                    field: "cross_section_m2",
                });
            }
        }
        objects.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = objects.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(CatalogueError::DuplicateId(w[0].id.clone()));
        }
        Ok(Self {
            objects,
            source_label: source_label.into(),
        })
    }

    pub fn objects(&self) -> &[CatalogueObject] {
        &self.objects
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CatalogueObject> {
        self.objects.iter()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.objects.iter().map(|o| o.id.as_str())
    }

    pub fn get(&self, id: &str) -> Option<&CatalogueObject> {
        self.position(id).map(|i| &self.objects[i])
    }

    fn position(&self, id: &str) -> Option<usize> {
        self.objects
            .binary_search_by(|o| o.id.as_str().cmp(id))
            .ok()
    }

    /// Copy of the catalogue without `id`.
    pub fn remove_object(&self, id: &str) -> Result<Catalogue, CatalogueError> {
        let idx = self
            .position(id)
            .ok_or_else(|| CatalogueError::UnknownId(id.to_owned()))?;
        let mut objects = self.objects.clone();
        objects.remove(idx);
        Ok(Self {
            objects,
            source_label: self.source_label.clone(),
        })
    }

    /// SHA-256 of the canonical CSV serialisation, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_csv().as_bytes()))
    }

    /// Canonical CSV (header plus one row per object, LF line endings).
    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(CSV_HEADER).expect("write to Vec");
        for obj in &self.objects {
            let el = &obj.elements;
            writer
                .write_record([
                    obj.id.clone(),
                    obj.name.clone(),
                    el.epoch.to_string(),
                    el.semi_major_axis.to_string(),
                    el.eccentricity.to_string(),
                    degrees_for(el.inclination).to_string(),
                    degrees_for(el.raan).to_string(),
                    degrees_for(el.arg_perigee).to_string(),
                    degrees_for(el.mean_anomaly_at_epoch).to_string(),
                    obj.cross_section.to_string(),
                ])
                .expect("write to Vec");
        }
        String::from_utf8(writer.into_inner().expect("flush Vec")).expect("csv output is UTF-8")
    }
}

impl fmt::Display for Catalogue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} objects)", self.source_label, self.objects.len())
    }
}

/// Free-function form of [`Catalogue::remove_object`].
pub fn remove_object(catalogue: &Catalogue, id: &str) -> Result<Catalogue, CatalogueError> {
    catalogue.remove_object(id)
}

/// Degrees → radians, wrapped into [0, 2π).
pub fn radians_from_degrees(deg: f64) -> f64 {
    let r = deg.rem_euclid(360.0).to_radians();
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A degree value that [`radians_from_degrees`] maps back to exactly `rad`,
/// when one exists within a few ulps of the nearest conversion.
pub fn degrees_for(rad: f64) -> f64 {
    let nearest = rad.to_degrees();
    let hits = |d: f64| (0.0..360.0).contains(&d) && radians_from_degrees(d) == rad;
    if hits(nearest) {
        return nearest;
    }
    let (mut up, mut down) = (nearest, nearest);
    for _ in 0..64 {
        up = up.next_up();
        down = down.next_down();
        if hits(down) {
            return down;
        }
        if hits(up) {
            return up;
        }
    }
    nearest
}

/// Parses canonical catalogue CSV. Lines starting with `#` are comments.
pub fn parse_catalogue_csv(text: &str) -> Result<Catalogue, CatalogueError> {
    parse_catalogue_csv_labeled(text, "csv")
}

pub fn parse_catalogue_csv_labeled(text: &str, label: &str) -> Result<Catalogue, CatalogueError> {
    if text.trim().is_empty() {
        return Err(CatalogueError::format(1, 1, "missing header"));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| CatalogueError::format(csv_line(e.position()), 1, e.to_string()))?
        .clone();
    let header_line = header.position().map_or(1, |p| p.line() as usize);
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(CatalogueError::format(header_line, 1, "unexpected header"));
    }

    let mut objects = Vec::new();
    let mut seen = BTreeSet::new();
    for record in reader.records() {
        let record =
            record.map_err(|e| CatalogueError::format(csv_line(e.position()), 1, e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != CSV_HEADER.len() {
            return Err(CatalogueError::format(
                line,
                record.len().min(CSV_HEADER.len()) + 1,
                format!("expected {} fields, found {}", CSV_HEADER.len(), record.len()),
            ));
        }
        let number = |col: usize| -> Result<f64, CatalogueError> {
            let raw = &record[col];
            let value: f64 = raw.trim().parse().map_err(|_| {
                CatalogueError::format(line, col + 1, format!("`{raw}` is not a number"))
            })?;
            if value.is_finite() {
                Ok(value)
            } else {
                Err(CatalogueError::Range {
                    line,
                    field: CSV_HEADER[col],
                })
            }
        };
        let id = record[0].trim().to_owned();
        if id.is_empty() {
            return Err(CatalogueError::format(line, 1, "empty id"));
        }
        let elements = KeplerianElements {
            epoch: number(2)?,
            semi_major_axis: number(3)?,
            eccentricity: number(4)?,
            inclination: radians_from_degrees(number(5)?),
            raan: radians_from_degrees(number(6)?),
            arg_perigee: radians_from_degrees(number(7)?),
            mean_anomaly_at_epoch: radians_from_degrees(number(8)?),
        };
        if let Some(field) = elements.invalid_field() {
            return Err(CatalogueError::Range { line, field });
        }
        let cross_section = if record[9].trim().is_empty() {
            DEFAULT_CROSS_SECTION_M2
        } else {
            number(9)?
        };
        if cross_section <= 0.0 {
            return Err(CatalogueError::Range {
                line,
                field: "cross_section_m2",
            });
        }
        if !seen.insert(id.clone()) {
            return Err(CatalogueError::DuplicateId(id));
        }
        objects.push(CatalogueObject {
            id,
            name: record[1].to_owned(),
            elements,
            cross_section,
        });
    }
    Catalogue::new(objects, label)
}

fn csv_line(pos: Option<&csv::Position>) -> usize {
    pos.map_or(0, |p| p.line() as usize)
}

/// TLE checksum: digits count their value, `-` counts one, everything else zero.
pub fn tle_checksum(line: &str) -> u8 {
    let sum: u32 = line
        .bytes()
        .take(TLE_LINE_LEN - 1)
        .map(|b| match b {
            b'0'..=b'9' => u32::from(b - b'0'),
            b'-' => 1,
            _ => 0,
        })
        .sum();
    (sum % 10) as u8
}

/// Parses two- or three-line element sets. Mean motion is converted to a
/// semi-major axis with a = (μ/n²)^(1/3); drag terms are ignored.
pub fn parse_tle(text: &str) -> Result<Catalogue, CatalogueError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut objects = Vec::new();
    let mut seen = BTreeSet::new();
    let mut i = 0;
    while i < lines.len() {
        let mut name = None;
        if !lines[i].1.starts_with("1 ") {
            let raw = lines[i].1.trim();
            name = Some(raw.strip_prefix("0 ").unwrap_or(raw).trim().to_owned());
            i += 1;
        }
        let Some(&(n1, line1)) = lines.get(i) else {
            let last = lines.last().map_or(1, |l| l.0);
            return Err(CatalogueError::format(last + 1, 1, "missing line 1"));
        };
        let Some(&(n2, line2)) = lines.get(i + 1) else {
            return Err(CatalogueError::format(n1 + 1, 1, "missing line 2"));
        };
        i += 2;

        check_tle_line(n1, line1, '1')?;
        check_tle_line(n2, line2, '2')?;
        let id1 = line1[2..7].trim();
        let id2 = line2[2..7].trim();
        if id1.is_empty() {
            return Err(CatalogueError::format(n1, 3, "empty catalogue number"));
        }
        if id1 != id2 {
            return Err(CatalogueError::format(n2, 3, "catalogue number differs from line 1"));
        }

        let field = |line_no: usize, line: &str, start: usize, end: usize| {
            let raw = line[start - 1..end].trim();
            raw.parse::<f64>().map_err(|_| {
                CatalogueError::format(line_no, start, format!("`{raw}` is not a number"))
            })
        };
        let year_2d = field(n1, line1, 19, 20)?;
        let day_of_year = field(n1, line1, 21, 32)?;
        let year = if year_2d < 57.0 { 2000 } else { 1900 } + year_2d as i64;
        let epoch = (days_from_civil(year, 1, 1) as f64 + day_of_year - 1.0) * 86_400.0;

        let inc = field(n2, line2, 9, 16)?;
        let raan = field(n2, line2, 18, 25)?;
        let ecc_digits = line2[26..33].trim();
        if ecc_digits.is_empty() || !ecc_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(CatalogueError::format(n2, 27, "eccentricity must be digits"));
        }
        let ecc: f64 = format!("0.{ecc_digits}").parse().expect("digits");
        let argp = field(n2, line2, 35, 42)?;
        let mean_anom = field(n2, line2, 44, 51)?;
        let rev_per_day = field(n2, line2, 53, 63)?;
        if rev_per_day <= 0.0 {
            return Err(CatalogueError::Range {
                line: n2,
                field: "mean_motion",
            });
        }
        let n_rad_s = rev_per_day * TAU / 86_400.0;
        let elements = KeplerianElements {
            epoch,
            semi_major_axis: (MU_EARTH / (n_rad_s * n_rad_s)).cbrt(),
            eccentricity: ecc,
            inclination: radians_from_degrees(inc),
            raan: radians_from_degrees(raan),
            arg_perigee: radians_from_degrees(argp),
            mean_anomaly_at_epoch: radians_from_degrees(mean_anom),
        };
        if let Some(field) = elements.invalid_field() {
            return Err(CatalogueError::Range { line: n2, field });
        }
        let id = id1.to_owned();
        if !seen.insert(id.clone()) {
            return Err(CatalogueError::DuplicateId(id));
        }
        objects.push(CatalogueObject {
            name: name.filter(|n| !n.is_empty()).unwrap_or_else(|| id.clone()),
            id,
            elements,
            cross_section: DEFAULT_CROSS_SECTION_M2,
        });
    }
    Catalogue::new(objects, "tle")
}

fn check_tle_line(line_no: usize, line: &str, number: char) -> Result<(), CatalogueError> {
    if !line.is_ascii() {
        return Err(CatalogueError::format(line_no, 1, "non-ASCII character"));
    }
    if line.len() != TLE_LINE_LEN {
        return Err(CatalogueError::format(
            line_no,
            line.len().min(TLE_LINE_LEN) + 1,
            format!("expected {TLE_LINE_LEN} columns, found {}", line.len()),
        ));
    }
    let bytes = line.as_bytes();
    if bytes[0] != number as u8 || bytes[1] != b' ' {
        return Err(CatalogueError::format(
            line_no,
            1,
            format!("expected line to start with `{number} `"),
        ));
    }
    let check = bytes[TLE_LINE_LEN - 1];
    if !check.is_ascii_digit() {
        return Err(CatalogueError::format(line_no, TLE_LINE_LEN, "checksum is not a digit"));
    }
    if check - b'0' != tle_checksum(line) {
        return Err(CatalogueError::Checksum { line: line_no });
    }
    Ok(())
}

/// Days since 1970-01-01 for a proleptic Gregorian date.
fn days_from_civil(year: i64, month: i64, day: i64) -> i64 {
    let y = if month <= 2 { year - 1 } else { year };
    let era = y.div_euclid(400);
    let yoe = y - era * 400;
    let mp = (month + 9) % 12;
    let doy = (153 * mp + 2) / 5 + day - 1;
    let doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    era * 146_097 + doe - 719_468
}
