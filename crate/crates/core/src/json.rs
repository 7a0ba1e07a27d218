//! File schemas shared by the CLI and any external producer.
//!
//! Complex numbers are `[re, im]` pairs. A fiducial file is
//! `{ "d": int, "v": [[re,im], ...] }`; a table file is
//! `{ "d": int, "c": [[[re,im], ...], ...] }` in row-major order. Floats go
//! through serde_json's shortest round-trip formatting, so emitted values
//! re-parse to bit-identical doubles, and emitted objects use sorted keys.

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Result, SicError};
use crate::overlaps::{Fiducial, OverlapTable, VerificationReport};
use crate::search::SearchReport;
use crate::symbols::SymbolTable;

#[derive(Serialize, Deserialize)]
struct FiducialFile {
    d: usize,
    v: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    d: usize,
    c: Vec<Vec<[f64; 2]>>,
}

fn pair(z: Cx) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: [f64; 2]) -> Cx {
    Cx::new(p[0], p[1])
}

/// Parse a fiducial file. The vector must be unit (tolerance `1e-9`).
pub fn parse_fiducial(text: &str) -> Result<Fiducial> {
    let file: FiducialFile = serde_json::from_str(text)?;
    if file.v.len() != file.d {
        return Err(SicError::Schema(format!(
            "\"v\" has {} entries but d = {}",
            file.v.len(),
            file.d
        )));
    }
    Fiducial::new(file.v.into_iter().map(unpair).collect())
}

pub fn fiducial_json(f: &Fiducial) -> Value {
    serde_json::to_value(FiducialFile {
        d: f.dim(),
        v: f.coords().iter().copied().map(pair).collect(),
    })
    .expect("plain struct serializes")
}

pub fn parse_table(text: &str) -> Result<OverlapTable> {
    let file: TableFile = serde_json::from_str(text)?;
    if file.c.len() != file.d || file.c.iter().any(|row| row.len() != file.d) {
        return Err(SicError::Schema(format!(
            "\"c\" must be a {d} x {d} array",
            d = file.d
        )));
    }
    let rows = file.c;
    OverlapTable::from_fn(file.d, |j, k| unpair(rows[j][k]))
}

pub fn table_json(t: &OverlapTable) -> Value {
    let d = t.dim();
    serde_json::to_value(TableFile {
        d,
        c: (0..d)
            .map(|j| (0..d).map(|k| pair(t.at(j as i64, k as i64))).collect())
            .collect(),
    })
    .expect("plain struct serializes")
}

pub fn symbols_json(p: &SymbolTable) -> Value {
    let d = p.dim();
    let values: Vec<Vec<[f64; 2]>> = (0..d)
        .map(|j| (0..d).map(|k| pair(p.at(j as i64, k as i64))).collect())
        .collect();
    serde_json::json!({ "d": d, "p": values })
}

pub fn search_report_json(r: &SearchReport) -> Value {
    serde_json::json!({
        "d": r.dim,
        "success": r.success,
        "fiducial": fiducial_json(&r.fiducial),
        "potential_gap": r.potential_gap,
        "quartic_residual": r.quartic_residual,
        "restarts_used": r.restarts_used,
        "iterations": r.iterations,
        "wall_time_secs": r.wall_time_secs,
        "table": table_json(&r.table),
        "verification": serde_json::to_value(r.verification).expect("report serializes"),
    })
}

/// One-row CSV rendering of a verification report.
pub fn verification_csv(r: &VerificationReport) -> String {
    format!(
        "residual_hermitian,residual_norm,residual_torus,residual_quartic,tolerance,pass\n\
         {:e},{:e},{:e},{:e},{:e},{}\n",
        r.residual_hermitian,
        r.residual_norm,
        r.residual_torus,
        r.residual_quartic,
        r.tolerance,
        r.pass
    )
}
