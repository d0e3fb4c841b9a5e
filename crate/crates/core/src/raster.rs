//! ESRI ASCII grid reader/writer and a CSV convenience export.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Grid, MeasureField};
use crate::geometry::Point;
use crate::isovist::MeasureKind;

pub const NODATA: f64 = -9999.0;

/// Six significant digits, shortest decimal form.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{v:.5e}").parse().expect("float round-trips");
    format!("{rounded}")
}

pub fn export_raster(field: &MeasureField) -> String {
    let g = &field.grid;
    let mut out = String::new();
    let _ = writeln!(out, "ncols {}", g.n_cols);
    let _ = writeln!(out, "nrows {}", g.n_rows);
    let _ = writeln!(out, "xllcorner {}", g.origin.x);
    let _ = writeln!(out, "yllcorner {}", g.origin.y);
    let _ = writeln!(out, "cellsize {}", g.spacing);
    let _ = writeln!(out, "NODATA_value {}", NODATA);
    for row in (0..g.n_rows).rev() {
        let line: Vec<String> = (0..g.n_cols)
            .map(|col| match field.get(col, row) {
                Some(v) => sig6(v),
                None => "-9999".to_string(),
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses an ASCII grid. Cells equal to the NODATA value are unmasked.
pub fn import_raster(text: &str, kind: Option<MeasureKind>) -> Result<MeasureField> {
    let mut header: HashMap<String, f64> = HashMap::new();
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .peekable();
    while let Some(line) = lines.peek() {
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap_or_default();
        if key.parse::<f64>().is_ok() {
            break;
        }
        let value = parts
            .next()
            .and_then(|v| v.parse::<f64>().ok())
            .ok_or_else(|| Error::Raster(format!("bad header line '{line}'")))?;
        header.insert(key.to_ascii_lowercase(), value);
        lines.next();
    }
    let need = |k: &str| {
        header
            .get(k)
            .copied()
            .ok_or_else(|| Error::Raster(format!("header missing {k}")))
    };
    let n_cols = need("ncols")?;
    let n_rows = need("nrows")?;
    let spacing = need("cellsize")?;
    if n_cols < 1.0 || n_rows < 1.0 || n_cols.fract() != 0.0 || n_rows.fract() != 0.0 {
        return Err(Error::Raster(
            "ncols/nrows must be positive integers".into(),
        ));
    }
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::Raster("cellsize must be positive".into()));
    }
    let corner = |axis: &str| -> Result<f64> {
        if let Some(v) = header.get(&format!("{axis}llcorner")) {
            Ok(*v)
        } else if let Some(v) = header.get(&format!("{axis}llcenter")) {
            Ok(v - 0.5 * spacing)
        } else {
            Err(Error::Raster(format!("header missing {axis}llcorner")))
        }
    };
    let origin = Point::new(corner("x")?, corner("y")?);
    let nodata = header.get("nodata_value").copied().unwrap_or(NODATA);
    let (n_cols, n_rows) = (n_cols as usize, n_rows as usize);

    let mut values = vec![f64::NAN; n_cols * n_rows];
    let mut mask = vec![false; n_cols * n_rows];
    let mut count = 0;
    for (k, line) in lines.enumerate() {
        if k >= n_rows {
            return Err(Error::Raster(format!("more than {n_rows} data rows")));
        }
        let row = n_rows - 1 - k;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != n_cols {
            return Err(Error::Raster(format!(
                "row {} has {} values, expected {n_cols}",
                k + 1,
                cells.len()
            )));
        }
        for (col, tok) in cells.into_iter().enumerate() {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::Raster(format!("bad value '{tok}'")))?;
            let i = row * n_cols + col;
            if v != nodata && v.is_finite() {
                values[i] = v;
                mask[i] = true;
            }
        }
        count += 1;
    }
    if count != n_rows {
        return Err(Error::Raster(format!(
            "expected {n_rows} data rows, found {count}"
        )));
    }
    Ok(MeasureField {
        grid: Grid {
            origin,
            spacing,
            n_cols,
            n_rows,
            mask,
        },
        kind,
        values,
    })
}

/// `x,y,value` per masked node in grid order.
pub fn export_csv(field: &MeasureField) -> String {
    let mut out = String::from("x,y,value\n");
    for i in field.grid.masked() {
        let p = field.grid.position_of(i);
        let _ = writeln!(out, "{},{},{}", p.x, p.y, sig6(field.values[i]));
    }
    out
}
