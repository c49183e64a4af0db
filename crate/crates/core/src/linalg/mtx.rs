//! Matrix Market reader and writer.
//!
//! Sparse matrices use the `coordinate real general` format (1-based
//! indices), dense matrices the `array real general` format (column-major
//! values). Values are written with 17 significant digits so they round-trip
//! exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{DenseMatrix, Factor, SparseMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    SkewSymmetric,
}

/// Formats `v` with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_sparse<W: Write>(mut w: W, a: &SparseMatrix) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", a.rows(), a.cols(), a.nnz())?;
    for j in 0..a.cols() {
        let (ri, vs) = a.col(j);
        for (&i, &v) in ri.iter().zip(vs) {
            writeln!(w, "{} {} {}", i + 1, j + 1, fmt_f64(v))?;
        }
    }
    Ok(())
}

pub fn write_dense<W: Write>(mut w: W, a: &DenseMatrix) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} {}", a.rows(), a.cols())?;
    for v in a.data() {
        writeln!(w, "{}", fmt_f64(*v))?;
    }
    Ok(())
}

pub fn write_factor<W: Write>(w: W, f: &Factor) -> Result<()> {
    match f {
        Factor::Dense(d) => write_dense(w, d),
        Factor::Sparse(s) => write_sparse(w, s),
    }
}

pub fn write_path(path: impl AsRef<Path>, f: &Factor) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_factor(&mut w, f)?;
    w.flush()?;
    Ok(())
}

pub fn read_path(path: impl AsRef<Path>) -> Result<Factor> {
    read(BufReader::new(File::open(path)?))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Reads either format; coordinate files become [`Factor::Sparse`], array
/// files [`Factor::Dense`].
pub fn read<R: Read>(r: R) -> Result<Factor> {
    let reader = BufReader::new(r);
    let mut lines = reader.lines().enumerate();

    let (ln, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file"))
        .and_then(|(n, l)| Ok((n + 1, l?)))?;
    let tokens: Vec<String> = header.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(ln, "missing %%MatrixMarket matrix header"));
    }
    let coordinate = match tokens[2].as_str() {
        "coordinate" => true,
        "array" => false,
        other => return Err(parse_err(ln, format!("unsupported format '{other}'"))),
    };
    let field = match tokens[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "pattern" if coordinate => Field::Pattern,
        other => return Err(parse_err(ln, format!("unsupported field '{other}'"))),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        other => return Err(parse_err(ln, format!("unsupported symmetry '{other}'"))),
    };

    let mut body = lines.filter_map(|(n, l)| match l {
        Ok(s) => {
            let t = s.trim().to_string();
            if t.is_empty() || t.starts_with('%') {
                None
            } else {
                Some(Ok((n + 1, t)))
            }
        }
        Err(e) => Some(Err(Error::from(e))),
    });

    let (size_ln, size_line) = body.next().ok_or_else(|| parse_err(ln, "missing size line"))??;
    let sizes: Vec<usize> = size_line
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| parse_err(size_ln, format!("bad size line: {e}")))?;

    let parse_value = |n: usize, tok: Option<&str>| -> Result<f64> {
        let tok = tok.ok_or_else(|| parse_err(n, "missing value"))?;
        let v: f64 = tok
            .parse()
            .map_err(|_| parse_err(n, format!("bad value '{tok}'")))?;
        if !v.is_finite() {
            return Err(parse_err(n, "non-finite value"));
        }
        Ok(v)
    };

    if coordinate {
        if sizes.len() != 3 {
            return Err(parse_err(size_ln, "coordinate size line needs rows cols nnz"));
        }
        let (rows, cols, nnz) = (sizes[0], sizes[1], sizes[2]);
        let mut trip = Vec::with_capacity(nnz);
        for _ in 0..nnz {
            let (n, line) = body
                .next()
                .ok_or_else(|| parse_err(size_ln, format!("expected {nnz} entries")))??;
            let mut it = line.split_whitespace();
            let mut idx = |what: &str, bound: usize| -> Result<usize> {
                let t = it.next().ok_or_else(|| parse_err(n, format!("missing {what}")))?;
                let v: usize = t
                    .parse()
                    .map_err(|_| parse_err(n, format!("bad {what} '{t}'")))?;
                if v == 0 || v > bound {
                    return Err(parse_err(n, format!("{what} {v} out of range")));
                }
                Ok(v - 1)
            };
            let i = idx("row", rows)?;
            let j = idx("column", cols)?;
            let v = match field {
                Field::Pattern => 1.0,
                _ => parse_value(n, it.next())?,
            };
            trip.push((i, j, v));
            if i != j {
                match symmetry {
                    Symmetry::General => {}
                    Symmetry::Symmetric => trip.push((j, i, v)),
                    Symmetry::SkewSymmetric => trip.push((j, i, -v)),
                }
            }
        }
        Ok(Factor::Sparse(SparseMatrix::from_triplets(rows, cols, &trip)?))
    } else {
        if sizes.len() != 2 {
            return Err(parse_err(size_ln, "array size line needs rows cols"));
        }
        if symmetry != Symmetry::General {
            return Err(parse_err(ln, "only general array matrices are supported"));
        }
        let (rows, cols) = (sizes[0], sizes[1]);
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let (n, line) = body
                .next()
                .ok_or_else(|| parse_err(size_ln, format!("expected {} values", rows * cols)))??;
            data.push(parse_value(n, line.split_whitespace().next())?);
        }
        Ok(Factor::Dense(DenseMatrix::new(rows, cols, data)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_roundtrip_is_exact() {
        let a = SparseMatrix::from_triplets(
            4,
            3,
            &[(0, 0, 1.0 / 3.0), (3, 0, -2.5e-300), (2, 2, std::f64::consts::PI)],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_sparse(&mut buf, &a).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("%%MatrixMarket matrix coordinate real general\n4 3 3\n"));
        match read(&buf[..]).unwrap() {
            Factor::Sparse(b) => assert_eq!(a, b),
            _ => panic!("expected sparse"),
        }
    }

    #[test]
    fn dense_roundtrip_is_exact() {
        let a = DenseMatrix::from_fn(3, 2, |i, j| (i as f64 + 0.1) / (j as f64 + 7.0));
        let mut buf = Vec::new();
        write_dense(&mut buf, &a).unwrap();
        match read(&buf[..]).unwrap() {
            Factor::Dense(b) => assert_eq!(a, b),
            _ => panic!("expected dense"),
        }
    }

    #[test]
    fn symmetric_and_pattern_expand() {
        let src = "%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n3 3 2\n2 1\n3 3\n";
        let f = read(src.as_bytes()).unwrap();
        let d = f.to_dense();
        assert_eq!(d[(1, 0)], 1.0);
        assert_eq!(d[(0, 1)], 1.0);
        assert_eq!(d[(2, 2)], 1.0);
    }

    #[test]
    fn malformed_input_reports_line() {
        let src = "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n";
        match read(src.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(read("hello\n".as_bytes()).is_err());
        assert!(read("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n".as_bytes()).is_err());
    }
}
