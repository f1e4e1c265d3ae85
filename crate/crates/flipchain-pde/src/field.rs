//! Solution carriers, named initial profiles, and profile I/O.

use crate::grid::Grid1D;
use flipchain_core::ModelParams;
use std::io::{BufRead, Write};

/// Which equation a profile belongs to; this fixes its boundary values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Stretch,
    Energy,
}

impl FieldKind {
    /// Imposed Dirichlet values (left, right): stretch is pinned to 0 and
    /// tau_plus, energy to T- and T+ + tau_plus^2/2.
    pub fn boundary_values(self, params: &ModelParams) -> (f64, f64) {
        match self {
            FieldKind::Stretch => (0.0, params.tau_plus),
            FieldKind::Energy => (
                params.t_minus,
                params.t_plus + 0.5 * params.tau_plus * params.tau_plus,
            ),
        }
    }
}

/// Nodal values of one field at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct MacroField {
    pub kind: FieldKind,
    pub t: f64,
    pub values: Vec<f64>,
}

impl MacroField {
    pub fn new(kind: FieldKind, t: f64, values: Vec<f64>) -> Self {
        assert!(
            values.iter().all(|v| v.is_finite()),
            "field at t = {t} contains non-finite values"
        );
        MacroField { kind, t, values }
    }
}

/// Builds a named initial profile on the grid nodes.
///
/// "linear-tension" interpolates the imposed boundary values, "sine" adds a
/// sin(pi u) bump on top of that interpolant, and "constant" takes the left
/// boundary value everywhere (incompatible on the right unless the data
/// happens to match; the solvers warn and proceed). Unknown names yield None.
pub fn preset_profile(
    name: &str,
    kind: FieldKind,
    grid: &Grid1D,
    params: &ModelParams,
) -> Option<Vec<f64>> {
    let (lo, hi) = kind.boundary_values(params);
    let build = |f: &dyn Fn(f64) -> f64| grid.nodes().iter().map(|&u| f(u)).collect::<Vec<f64>>();
    match name {
        "linear-tension" => Some(build(&|u| lo + (hi - lo) * u)),
        "sine" => Some(build(&|u| {
            lo + (hi - lo) * u + (std::f64::consts::PI * u).sin()
        })),
        "constant" => Some(build(&|_| lo)),
        _ => None,
    }
}

/// Writes a field path as rows of (t, u, value).
pub fn write_fields_csv<W: Write>(
    path: &[MacroField],
    grid: &Grid1D,
    out: &mut W,
) -> std::io::Result<()> {
    writeln!(out, "t,u,value")?;
    for f in path {
        for (j, v) in f.values.iter().enumerate() {
            writeln!(out, "{},{},{}", f.t, j as f64 / grid.m as f64, v)?;
        }
    }
    Ok(())
}

/// Reads a tabulated profile as (u, value) rows with u ascending and linearly
/// interpolates it onto the grid nodes; u outside the tabulated range clamps
/// to the nearest endpoint. Blank lines, `#` comments, and a header row are
/// skipped.
pub fn read_profile_csv<R: BufRead>(input: R, grid: &Grid1D) -> Result<Vec<f64>, String> {
    let mut table: Vec<(f64, f64)> = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line.map_err(|e| format!("line {}: {e}", idx + 1))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split(',').map(str::trim);
        let (a, b) = match (cols.next(), cols.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(format!("line {}: expected two columns", idx + 1)),
        };
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(u), Ok(v)) => table.push((u, v)),
            _ if table.is_empty() => continue, // header row
            _ => return Err(format!("line {}: cannot parse '{line}'", idx + 1)),
        }
    }
    if table.len() < 2 {
        return Err("profile table needs at least two rows".into());
    }
    if !table.windows(2).all(|w| w[0].0 < w[1].0) {
        return Err("profile table must have strictly increasing u".into());
    }
    let values = grid
        .nodes()
        .iter()
        .map(|&u| {
            if u <= table[0].0 {
                return table[0].1;
            }
            if u >= table[table.len() - 1].0 {
                return table[table.len() - 1].1;
            }
            let i = table.partition_point(|&(tu, _)| tu <= u) - 1;
            let (u0, v0) = table[i];
            let (u1, v1) = table[i + 1];
            v0 + (v1 - v0) * (u - u0) / (u1 - u0)
        })
        .collect();
    Ok(values)
}
