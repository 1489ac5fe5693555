//! Text file formats: `.pfft` far-field tables, grid CSV, and plain-PGM
//! heatmaps.
//!
//! The `.pfft` format is line-oriented. A header of `#`-prefixed lines
//! carries the metadata, then N data lines follow, one per observation
//! direction, each holding N comma-separated fields ordered by incidence.
//! Complex fields are `re;im` pairs. Every decimal is written with 17
//! significant digits, enough to reproduce an IEEE double bit-for-bit on
//! read-back.
//!
//! ```text
//! #pfft v1
//! #kind=complex
//! #k=8.0000000000000000e0
//! #N=128
//! #model=coupled
//! #tau=1.0000000000000000e0,0.0000000000000000e0
//! #z0=1.2000000000000000e1,1.2000000000000000e1
//! <re>;<im>,<re>;<im>,...
//! ```

use crate::forward::{FarFieldMatrix, FarFieldModel, PhaselessMatrix};
use crate::indicators::GridField;
use crate::{Error, Result};
use num_complex::Complex64;
use std::fs;
use std::path::Path;

/// Either kind of far-field table, as stored in a `.pfft` file.
#[derive(Debug, Clone, PartialEq)]
pub enum FarFieldFile {
    Complex(FarFieldMatrix),
    Modulus(PhaselessMatrix),
}

impl FarFieldFile {
    pub fn into_complex(self) -> Result<FarFieldMatrix> {
        match self {
            FarFieldFile::Complex(m) => Ok(m),
            FarFieldFile::Modulus(_) => {
                Err(Error::Mismatch("file holds modulus data, not complex".into()))
            }
        }
    }

    pub fn into_modulus(self) -> Result<PhaselessMatrix> {
        match self {
            FarFieldFile::Modulus(m) => Ok(m),
            FarFieldFile::Complex(_) => {
                Err(Error::Mismatch("file holds complex data, not modulus".into()))
            }
        }
    }
}

fn dec(v: f64) -> String {
    format!("{v:.16e}")
}

fn render_far_field(file: &FarFieldFile) -> Result<String> {
    let (kind, n, k, model, tau, z0) = match file {
        FarFieldFile::Complex(m) => ("complex", m.n, m.k, m.model, m.tau, m.z0),
        FarFieldFile::Modulus(m) => ("modulus", m.n, m.k, m.model, m.tau, m.z0),
    };
    let mut out = String::new();
    out.push_str("#pfft v1\n");
    out.push_str(&format!("#kind={kind}\n"));
    out.push_str(&format!("#k={}\n", dec(k)));
    out.push_str(&format!("#N={n}\n"));
    out.push_str(&format!("#model={}\n", model.name()));
    if let Some(t) = tau {
        out.push_str(&format!("#tau={},{}\n", dec(t.re), dec(t.im)));
    }
    if let Some(z) = z0 {
        out.push_str(&format!("#z0={},{}\n", dec(z[0]), dec(z[1])));
    }
    match file {
        FarFieldFile::Complex(m) => {
            for row in 0..n {
                let mut line = String::new();
                for col in 0..n {
                    let v = m.get(row, col);
                    if !v.re.is_finite() || !v.im.is_finite() {
                        return Err(Error::Domain(format!(
                            "non-finite value at ({row}, {col})"
                        )));
                    }
                    if col > 0 {
                        line.push(',');
                    }
                    line.push_str(&dec(v.re));
                    line.push(';');
                    line.push_str(&dec(v.im));
                }
                out.push_str(&line);
                out.push('\n');
            }
        }
        FarFieldFile::Modulus(m) => {
            for row in 0..n {
                let mut line = String::new();
                for col in 0..n {
                    let v = m.get(row, col);
                    if !v.is_finite() {
                        return Err(Error::Domain(format!(
                            "non-finite value at ({row}, {col})"
                        )));
                    }
                    if v < 0.0 {
                        return Err(Error::Domain(format!(
                            "negative modulus {v} at ({row}, {col})"
                        )));
                    }
                    if col > 0 {
                        line.push(',');
                    }
                    line.push_str(&dec(v));
                }
                out.push_str(&line);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

/// Serialize a far-field table to `path` in the `.pfft` format.
pub fn write_far_field(file: &FarFieldFile, path: &Path) -> Result<()> {
    let text = render_far_field(file)?;
    fs::write(path, text)?;
    Ok(())
}

pub(crate) fn parse_f64(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: cannot parse decimal '{s}'")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("{what}: non-finite value '{s}'")));
    }
    Ok(v)
}

pub(crate) fn parse_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("{what}: expected two comma-separated decimals")))?;
    Ok((parse_f64(a, what)?, parse_f64(b, what)?))
}

/// Parse a `.pfft` file back into the table it was written from; numeric
/// values round-trip bitwise.
pub fn read_far_field(path: &Path) -> Result<FarFieldFile> {
    let text = fs::read_to_string(path)?;
    parse_far_field(&text)
}

fn parse_far_field(text: &str) -> Result<FarFieldFile> {
    let mut lines = text.lines();
    if lines.next() != Some("#pfft v1") {
        return Err(Error::Parse("missing '#pfft v1' signature line".into()));
    }
    let mut kind = None;
    let mut k = None;
    let mut n = None;
    let mut model = None;
    let mut tau = None;
    let mut z0 = None;
    let mut data_lines = Vec::new();
    for line in lines {
        if let Some(header) = line.strip_prefix('#') {
            if !data_lines.is_empty() {
                return Err(Error::Parse("header line after data began".into()));
            }
            let (key, value) = header
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed header '#{header}'")))?;
            match key {
                "kind" => match value {
                    "complex" | "modulus" => kind = Some(value.to_string()),
                    other => return Err(Error::Parse(format!("unknown kind '{other}'"))),
                },
                "k" => k = Some(parse_f64(value, "#k")?),
                "N" => {
                    n = Some(value.trim().parse::<usize>().map_err(|_| {
                        Error::Parse(format!("#N: cannot parse integer '{value}'"))
                    })?)
                }
                "model" => model = Some(FarFieldModel::parse(value)?),
                "tau" => {
                    let (re, im) = parse_pair(value, "#tau")?;
                    tau = Some(Complex64::new(re, im));
                }
                "z0" => {
                    let (x, y) = parse_pair(value, "#z0")?;
                    z0 = Some([x, y]);
                }
                other => return Err(Error::Parse(format!("unknown header key '{other}'"))),
            }
        } else if !line.trim().is_empty() {
            data_lines.push(line);
        }
    }
    let kind = kind.ok_or_else(|| Error::Parse("missing #kind header".into()))?;
    let k = k.ok_or_else(|| Error::Parse("missing #k header".into()))?;
    let n = n.ok_or_else(|| Error::Parse("missing #N header".into()))?;
    let model = model.ok_or_else(|| Error::Parse("missing #model header".into()))?;
    if data_lines.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} data lines, found {}",
            data_lines.len()
        )));
    }

    if kind == "complex" {
        let mut entries = Vec::with_capacity(n * n);
        for (row, line) in data_lines.iter().enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != n {
                return Err(Error::Parse(format!(
                    "row {row}: expected {n} fields, found {}",
                    fields.len()
                )));
            }
            for field in fields {
                let (re, im) = field.split_once(';').ok_or_else(|| {
                    Error::Parse(format!("row {row}: complex field '{field}' lacks ';'"))
                })?;
                entries.push(Complex64::new(
                    parse_f64(re, "entry")?,
                    parse_f64(im, "entry")?,
                ));
            }
        }
        Ok(FarFieldFile::Complex(FarFieldMatrix { n, k, model, tau, z0, entries }))
    } else {
        let mut entries = Vec::with_capacity(n * n);
        for (row, line) in data_lines.iter().enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != n {
                return Err(Error::Parse(format!(
                    "row {row}: expected {n} fields, found {}",
                    fields.len()
                )));
            }
            for field in fields {
                let v = parse_f64(field, "entry")?;
                if v < 0.0 {
                    return Err(Error::Parse(format!("row {row}: negative modulus {v}")));
                }
                entries.push(v);
            }
        }
        Ok(FarFieldFile::Modulus(PhaselessMatrix { n, k, model, tau, z0, entries }))
    }
}

/// Grid output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridFormat {
    Csv,
    Pgm,
}

/// Serialize an indicator field. CSV holds one `x,y,value` line per node in
/// storage order (y slowest). PGM is plain P2 with the values affinely
/// mapped onto 0..=65535 (a constant field maps to all zeros); rows run
/// from the top of the region down, so the image matches a plot with the
/// y-axis pointing up.
pub fn write_grid(field: &GridField, path: &Path, format: GridFormat) -> Result<()> {
    let (nx, ny) = (field.spec.nx(), field.spec.ny());
    let mut out = String::new();
    match format {
        GridFormat::Csv => {
            out.push_str("x,y,value\n");
            for iy in 0..ny {
                for ix in 0..nx {
                    let p = field.spec.node(ix, iy);
                    out.push_str(&format!(
                        "{},{},{}\n",
                        dec(p[0]),
                        dec(p[1]),
                        dec(field.get(ix, iy))
                    ));
                }
            }
        }
        GridFormat::Pgm => {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &v in &field.values {
                lo = lo.min(v);
                hi = hi.max(v);
            }
            let span = hi - lo;
            out.push_str(&format!("P2\n{nx} {ny}\n65535\n"));
            for iy in (0..ny).rev() {
                let mut line = String::new();
                for ix in 0..nx {
                    let v = field.get(ix, iy);
                    let level = if span > 0.0 {
                        ((v - lo) / span * 65535.0).round() as u32
                    } else {
                        0
                    };
                    if ix > 0 {
                        line.push(' ');
                    }
                    line.push_str(&level.to_string());
                }
                out.push_str(&line);
                out.push('\n');
            }
        }
    }
    fs::write(path, out)?;
    Ok(())
}
