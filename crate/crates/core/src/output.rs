//! CSV and JSON emitters. Every floating-point number is written with 17
//! significant digits in scientific notation, so values round-trip exactly.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::eigenbasis::{EigenFunction, GridSpec};
use crate::error::{Error, Result};
use crate::geometry::{FrameKind, ModelParams};
use crate::opalg::{OperatorMatrix, VerificationReport};
use crate::spectrum::SpectrumTable;

/// `v` with 17 significant digits, e.g. `1.6180339887498949e0`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// JSON formatter writing floats through [`fmt_f64`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Single-line JSON.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value.serialize(&mut ser)?;
    String::from_utf8(buf).map_err(|e| Error::Output(e.to_string()))
}

#[derive(Serialize)]
struct ParamsBlock<'a> {
    mass: f64,
    omega: f64,
    epsilon: f64,
    omega_hat: f64,
    lambda: f64,
    k: Option<f64>,
    regime: &'a str,
}

impl<'a> From<&'a ModelParams> for ParamsBlock<'a> {
    fn from(p: &'a ModelParams) -> Self {
        ParamsBlock {
            mass: p.mass,
            omega: p.omega,
            epsilon: p.epsilon,
            omega_hat: p.omega_hat,
            lambda: p.lambda,
            k: p.k,
            regime: p.regime.as_str(),
        }
    }
}

fn csv_string(rows: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    rows(&mut w)?;
    let bytes = w.into_inner().map_err(|e| Error::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Output(e.to_string()))
}

/// Columns `n, E_n`.
pub fn spectrum_csv(t: &SpectrumTable) -> Result<String> {
    csv_string(|w| {
        w.write_record(["n", "E_n"])?;
        for (n, e) in t.rows() {
            w.write_record([n.to_string(), fmt_f64(e)])?;
        }
        Ok(())
    })
}

pub fn spectrum_json(t: &SpectrumTable) -> Result<String> {
    #[derive(Serialize)]
    struct Row {
        n: usize,
        energy: f64,
    }
    #[derive(Serialize)]
    struct Doc<'a> {
        params: ParamsBlock<'a>,
        n_max: usize,
        levels: Vec<Row>,
    }
    to_json(&Doc {
        params: (&t.params).into(),
        n_max: t.n_max,
        levels: t.rows().map(|(n, energy)| Row { n, energy }).collect(),
    })
}

/// `U_n` for each requested `n`, sampled on a grid.
#[derive(Debug, Clone)]
pub struct EigenTable {
    pub params: ModelParams,
    pub grid: GridSpec,
    pub indices: Vec<usize>,
    pub coords: Vec<f64>,
    /// One row per coordinate, one column per index.
    pub values: Vec<Vec<f64>>,
}

impl EigenTable {
    pub fn new(p: &ModelParams, grid: GridSpec, indices: &[usize]) -> Result<Self> {
        let fs = indices.iter().map(|&n| EigenFunction::new(p, n)).collect::<Result<Vec<_>>>()?;
        let coords = grid.coords();
        let values = coords
            .iter()
            .map(|&c| fs.iter().map(|f| f.eval(grid.frame, c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(EigenTable { params: *p, grid, indices: indices.to_vec(), coords, values })
    }

    pub fn to_csv(&self) -> Result<String> {
        csv_string(|w| {
            let mut header = vec!["coord".to_string()];
            header.extend(self.indices.iter().map(|n| format!("U_{n}")));
            w.write_record(&header)?;
            for (c, row) in self.coords.iter().zip(&self.values) {
                let mut rec = vec![fmt_f64(*c)];
                rec.extend(row.iter().map(|&v| fmt_f64(v)));
                w.write_record(&rec)?;
            }
            Ok(())
        })
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Doc<'a> {
            params: ParamsBlock<'a>,
            frame: &'a str,
            grid: &'a GridSpec,
            indices: &'a [usize],
            coords: &'a [f64],
            values: &'a [Vec<f64>],
        }
        to_json(&Doc {
            params: (&self.params).into(),
            frame: frame_name(self.grid.frame),
            grid: &self.grid,
            indices: &self.indices,
            coords: &self.coords,
            values: &self.values,
        })
    }
}

pub fn frame_name(f: FrameKind) -> &'static str {
    match f {
        FrameKind::Natural => "natural",
        FrameKind::Conformal => "conformal",
    }
}

#[derive(Serialize)]
struct Band {
    /// Column minus row.
    offset: i64,
    values: Vec<f64>,
}

/// `{label, dim, format, entries | bands, band, params}`. Matrices with few
/// occupied diagonals are written as bands, the rest densely.
pub fn matrix_json(p: &ModelParams, m: &OperatorMatrix) -> Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        label: &'a str,
        dim: usize,
        format: &'a str,
        #[serde(skip_serializing_if = "Option::is_none")]
        entries: Option<Vec<Vec<f64>>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        bands: Option<Vec<Band>>,
        band: [usize; 2],
        params: ParamsBlock<'a>,
    }
    let (lower, upper) = m.band;
    let banded = 2 * (lower + upper + 1) <= m.dim;
    let (entries, bands) = if banded {
        let bands = (-(lower as i64)..=upper as i64)
            .map(|offset| {
                let values = (0..m.dim)
                    .filter_map(|i| {
                        let j = i as i64 + offset;
                        (0..m.dim as i64).contains(&j).then(|| m.get(i, j as usize))
                    })
                    .collect();
                Band { offset, values }
            })
            .collect();
        (None, Some(bands))
    } else {
        let rows = (0..m.dim).map(|i| (0..m.dim).map(|j| m.get(i, j)).collect()).collect();
        (Some(rows), None)
    };
    to_json(&Doc {
        label: &m.label,
        dim: m.dim,
        format: if banded { "banded" } else { "dense" },
        entries,
        bands,
        band: [lower, upper],
        params: p.into(),
    })
}

/// One JSON line per report.
pub fn report_lines(reports: &[VerificationReport]) -> Result<String> {
    let mut out = String::new();
    for r in reports {
        out.push_str(&to_json(r)?);
        out.push('\n');
    }
    Ok(out)
}

/// `(label, entries)` for every band of a banded matrix JSON blob, for readers.
pub fn parse_bands(json: &str) -> Result<Vec<(i64, Vec<f64>)>> {
    let v: serde_json::Value = serde_json::from_str(json)?;
    let bands = v["bands"].as_array().ok_or_else(|| Error::Output("matrix blob has no bands".into()))?;
    bands
        .iter()
        .map(|b| {
            let offset = b["offset"].as_i64().ok_or_else(|| Error::Output("band without offset".into()))?;
            let values = b["values"]
                .as_array()
                .ok_or_else(|| Error::Output("band without values".into()))?
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| Error::Output("non-numeric band value".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok((offset, values))
        })
        .collect()
}
