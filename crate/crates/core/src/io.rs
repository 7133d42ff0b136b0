//! Number formatting and point CSV files.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::shapes::Point;

/// Shortest decimal that round-trips to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    // -0 prints as 0
    format!("{}", x + 0.0)
}

/// Decimal with 17 significant digits (exponent form outside `[1e-5, 1e15)`).
pub fn fmt_sig17(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        let decimals = (16 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.16e}")
    }
}

/// Points as CSV rows `x,y[,z]`, no header.
pub fn points_to_csv(points: &[Point]) -> String {
    let mut out = String::new();
    for p in points {
        let row: Vec<String> = p.coords().iter().map(|c| fmt_sig17(*c)).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// Parse `x,y[,z]` rows. Blank lines, `#` comments and a non-numeric header
/// row are skipped.
pub fn points_from_csv(text: &str) -> Result<Vec<Point>> {
    let mut out: Vec<Point> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        let coords = match parsed {
            Ok(c) => c,
            Err(_) if out.is_empty() && fields.iter().all(|f| f.parse::<f64>().is_err()) => continue,
            Err(_) => return Err(Error::parse(idx + 1, format!("bad point row {line:?}"))),
        };
        let p = Point::from_slice(&coords).map_err(|e| Error::parse(idx + 1, e.to_string()))?;
        if let Some(first) = out.first() {
            if first.dim() != p.dim() {
                return Err(Error::parse(
                    idx + 1,
                    format!("expected {} coordinates, found {}", first.dim(), p.dim()),
                ));
            }
        }
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_sig17(1.0), "1.0000000000000000");
        assert_eq!(fmt_sig17(-0.5), "-0.50000000000000000");
        assert_eq!(fmt_sig17(123.25), "123.25000000000000");
        let x = 0.1f64 + 0.2;
        assert_eq!(fmt_sig17(x).parse::<f64>().unwrap(), x);
        assert_eq!(fmt_sig17(1e-9).parse::<f64>().unwrap(), 1e-9);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let pts = vec![Point::new2(0.1, -2.0 / 3.0), Point::new2(1e-7, 12345.678)];
        let back = points_from_csv(&points_to_csv(&pts)).unwrap();
        assert_eq!(back, pts);
        let with_header = format!("x,y\n{}", points_to_csv(&pts));
        assert_eq!(points_from_csv(&with_header).unwrap(), pts);
    }

    #[test]
    fn bad_rows_name_their_line() {
        let err = points_from_csv("0,0\n1,abc\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(points_from_csv("0,0\n1,2,3\n").is_err());
    }
}
