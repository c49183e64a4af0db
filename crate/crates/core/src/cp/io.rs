//! On-disk CP tensor format: a directory with `meta.json`
//! (`{"order": N, "rank": R, "dims": [I_1, …, I_N]}`), `svalues.txt` (one
//! s-value per line) and `factor_1.mtx` … `factor_N.mtx` in Matrix Market
//! format.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CpTensor;
use crate::error::{Error, Result};
use crate::linalg::{mtx, ColumnSource};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpMeta {
    pub order: usize,
    pub rank: usize,
    pub dims: Vec<usize>,
}

pub fn write_dir(dir: impl AsRef<Path>, x: &CpTensor) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let meta = CpMeta {
        order: x.order(),
        rank: x.rank(),
        dims: x.dims(),
    };
    fs::write(dir.join("meta.json"), serde_json::to_string_pretty(&meta)?)?;
    let mut w = BufWriter::new(fs::File::create(dir.join("svalues.txt"))?);
    for &v in x.svalues() {
        writeln!(w, "{}", mtx::fmt_f64(v))?;
    }
    w.flush()?;
    for (n, f) in x.factors().iter().enumerate() {
        mtx::write_path(dir.join(format!("factor_{}.mtx", n + 1)), f)?;
    }
    Ok(())
}

/// Reads a tensor directory; factor columns are renormalized on load.
pub fn read_dir(dir: impl AsRef<Path>) -> Result<CpTensor> {
    let dir = dir.as_ref();
    let meta: CpMeta = serde_json::from_str(&fs::read_to_string(dir.join("meta.json"))?)?;
    if meta.dims.len() != meta.order {
        return Err(Error::arg(format!(
            "meta.json lists {} dims for order {}",
            meta.dims.len(),
            meta.order
        )));
    }
    let text = fs::read_to_string(dir.join("svalues.txt"))?;
    let mut svalues = Vec::with_capacity(meta.rank);
    for (n, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        svalues.push(t.parse::<f64>().map_err(|_| Error::Parse {
            line: n + 1,
            msg: format!("bad s-value '{t}' in svalues.txt"),
        })?);
    }
    if svalues.len() != meta.rank {
        return Err(Error::arg(format!(
            "svalues.txt has {} values, meta.json says rank {}",
            svalues.len(),
            meta.rank
        )));
    }
    let mut factors = Vec::with_capacity(meta.order);
    for (n, &d) in meta.dims.iter().enumerate() {
        let f = mtx::read_path(dir.join(format!("factor_{}.mtx", n + 1)))?;
        if (f.nrows(), f.ncols()) != (d, meta.rank) {
            return Err(Error::dims(format!(
                "factor_{}.mtx is {}x{}, expected {d}x{}",
                n + 1,
                f.nrows(),
                f.ncols(),
                meta.rank
            )));
        }
        factors.push(f);
    }
    CpTensor::new(svalues, factors)
}
