//! Artifact formats: WaveField CSV (`x,t,re_u,im_u`, row-major over t then x) with a JSON
//! sidecar, catalog manifests, and a pretty JSON writer.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{BreatherSpec64, WaveField};
use crate::families::{FamilyCatalog, GrowthClass, Provenance};
use crate::grid::SpaceTimeGrid;

pub const FIELD_HEADER: [&str; 4] = ["x", "t", "re_u", "im_u"];

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// CSV of `f` at the nodes of `grid`.
pub fn field_csv(grid: &SpaceTimeGrid, f: impl Fn(f64, f64) -> Complex64) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(FIELD_HEADER).map_err(csv_err)?;
    for (x, t) in grid.nodes() {
        let u = f(x, t);
        w.write_record([x, t, u.re, u.im].map(|v| v.to_string())).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// One time slice in the field format.
pub fn snapshot_csv(xs: &[f64], t: f64, values: &[Complex64]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(FIELD_HEADER).map_err(csv_err)?;
    for (x, u) in xs.iter().zip(values) {
        w.write_record([*x, t, u.re, u.im].map(|v| v.to_string())).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// Rows `(x, t, u)` of a field CSV.
pub fn parse_field_csv(text: &str) -> Result<Vec<(f64, f64, Complex64)>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().ne(FIELD_HEADER) {
        return Err(Error::Io(format!("expected header {}, got {}", FIELD_HEADER.join(","), header.iter().collect::<Vec<_>>().join(","))));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(csv_err)?;
            let v: Vec<f64> = rec.iter().map(|s| s.parse::<f64>().map_err(|e| Error::Io(format!("{s}: {e}")))).collect::<Result<_>>()?;
            if v.len() != 4 {
                return Err(Error::Io(format!("row with {} fields", v.len())));
            }
            Ok((v[0], v[1], Complex64::new(v[2], v[3])))
        })
        .collect()
}

/// Derived constants carried in the sidecar (absent ones are omitted).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DerivedConstants {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period_x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period_t: Option<f64>,
}

impl DerivedConstants {
    pub fn of(spec: &BreatherSpec64) -> Self {
        Self {
            k0: spec.k0(),
            sigma0: spec.sigma0(),
            period_x: spec.period_x(),
            beta0: spec.beta0(),
            alpha0: spec.alpha0(),
            period_t: spec.period_t(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSidecar {
    pub label: String,
    pub spec: BreatherSpec64,
    pub derived: DerivedConstants,
    pub grid: SpaceTimeGrid,
    pub columns: Vec<String>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

/// Writes `<stem>.csv` and `<stem>.json` into `dir`; returns both paths.
pub fn write_field(
    dir: &Path,
    stem: &str,
    spec: &BreatherSpec64,
    grid: &SpaceTimeGrid,
    f: impl Fn(f64, f64) -> Complex64,
) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)?;
    let csv_path = dir.join(format!("{stem}.csv"));
    let json_path = dir.join(format!("{stem}.json"));
    fs::write(&csv_path, field_csv(grid, f)?)?;
    let side = FieldSidecar {
        label: stem.into(),
        spec: *spec,
        derived: DerivedConstants::of(spec),
        grid: grid.clone(),
        columns: FIELD_HEADER.iter().map(|s| s.to_string()).collect(),
    };
    write_json(&json_path, &side)?;
    Ok((csv_path, json_path))
}

pub fn write_wavefield(dir: &Path, stem: &str, field: &WaveField) -> Result<(PathBuf, PathBuf)> {
    let nx = field.grid.nx;
    let x0 = field.grid.x(0);
    let dx = if nx > 1 { field.grid.x(1) - x0 } else { 1.0 };
    let t0 = field.grid.t(0);
    let dt = field.grid.dt();
    // stored samples, looked up by node index
    let at = |x: f64, t: f64| {
        let i = ((x - x0) / dx).round() as usize;
        let j = if dt > 0.0 { ((t - t0) / dt).round() as usize } else { 0 };
        field.at(j, i)
    };
    write_field(dir, stem, &field.spec, &field.grid, at)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub label: String,
    pub provenance: Provenance,
    pub growth_class: GrowthClass,
    pub rate: Option<f64>,
    pub partner: Option<String>,
    /// Field dump, relative to the manifest.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub about: BreatherSpec64,
    pub entries: Vec<ManifestEntry>,
}

pub fn manifest(c: &FamilyCatalog) -> Manifest {
    Manifest {
        about: c.about,
        entries: c
            .entries
            .iter()
            .map(|e| ManifestEntry {
                label: e.label.clone(),
                provenance: e.solution.provenance.clone(),
                growth_class: e.solution.growth_class,
                rate: e.solution.growth_class.rate(),
                partner: e.asymptotic_partner.clone(),
                file: None,
            })
            .collect(),
    }
}

/// Field dumps of every entry on `grid` plus `manifest.json`.
pub fn export_catalog(dir: &Path, c: &FamilyCatalog, grid: &SpaceTimeGrid) -> Result<Manifest> {
    let mut m = manifest(c);
    for (row, e) in m.entries.iter_mut().zip(&c.entries) {
        let (csv_path, _) = write_field(dir, &e.label, &c.about, grid, |x, t| e.solution.eval(x, t))?;
        row.file = csv_path.file_name().map(|s| s.to_string_lossy().into_owned());
    }
    write_json(&dir.join("manifest.json"), &m)?;
    Ok(m)
}
