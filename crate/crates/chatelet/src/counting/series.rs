//! Height series N(B) over a grid and the growth-exponent fit: least squares
//! slope of log(N/B) against log log B.

use crate::error::{Error, Result};
use crate::counting::surface::ChateletSurface;
use crate::counting::{count_brute, count_fast, CountConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoint {
    pub b: u64,
    pub two_n: u128,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountSeries {
    pub surface_id: String,
    pub method: String,
    pub grid: Vec<SeriesPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentFit {
    /// every grid point counted zero
    NoPoints,
    Fit { slope: f64, residual: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Fast,
}

pub fn count_series(
    s: &ChateletSurface,
    grid: &[u64],
    method: Method,
    cfg: &CountConfig,
) -> Result<CountSeries> {
    if grid.len() < 3 || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "series grid must be strictly increasing with at least 3 points".into(),
        ));
    }
    let mut out = Vec::with_capacity(grid.len());
    for &b in grid {
        let start = std::time::Instant::now();
        let two_n = match method {
            Method::Brute => count_brute(s, b, cfg)?,
            Method::Fast => count_fast(s, b, cfg)?,
        };
        out.push(SeriesPoint { b, two_n, seconds: start.elapsed().as_secs_f64() });
    }
    Ok(CountSeries {
        surface_id: s.id(),
        method: match method {
            Method::Brute => "brute".into(),
            Method::Fast => "fast".into(),
        },
        grid: out,
    })
}

/// Least-squares slope of log(N(B)/B) against log log B, with RMS residual.
pub fn fit_exponent(series: &CountSeries) -> ExponentFit {
    let pts: Vec<(f64, f64)> = series
        .grid
        .iter()
        .filter(|p| p.two_n > 0 && p.b > 3)
        .map(|p| {
            let n = p.two_n as f64 / 2.0;
            let x = (p.b as f64).ln().ln();
            let y = (n / p.b as f64).ln();
            (x, y)
        })
        .collect();
    if pts.is_empty() {
        return ExponentFit::NoPoints;
    }
    if pts.len() == 1 {
        return ExponentFit::Fit { slope: 0.0, residual: 0.0 };
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return ExponentFit::Fit { slope: 0.0, residual: f64::INFINITY };
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let residual = (pts
        .iter()
        .map(|p| {
            let e = p.1 - (slope * p.0 + intercept);
            e * e
        })
        .sum::<f64>()
        / n)
        .sqrt();
    ExponentFit::Fit { slope, residual }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_log_square_growth() {
        // N(B) = B (log B)^2 should fit slope 2
        let grid: Vec<u64> = vec![100, 1000, 10_000, 100_000, 1_000_000, 10_000_000];
        let series = CountSeries {
            surface_id: "synthetic".into(),
            method: "synthetic".into(),
            grid: grid
                .iter()
                .map(|&b| {
                    let n = b as f64 * (b as f64).ln().powi(2);
                    SeriesPoint { b, two_n: (2.0 * n) as u128, seconds: 0.0 }
                })
                .collect(),
        };
        match fit_exponent(&series) {
            ExponentFit::Fit { slope, .. } => assert!((slope - 2.0).abs() < 0.05, "slope={slope}"),
            ExponentFit::NoPoints => panic!("expected fit"),
        }
    }

    #[test]
    fn all_zero_marker() {
        let series = CountSeries {
            surface_id: "empty".into(),
            method: "synthetic".into(),
            grid: vec![
                SeriesPoint { b: 10, two_n: 0, seconds: 0.0 },
                SeriesPoint { b: 100, two_n: 0, seconds: 0.0 },
                SeriesPoint { b: 1000, two_n: 0, seconds: 0.0 },
            ],
        };
        assert_eq!(fit_exponent(&series), ExponentFit::NoPoints);
    }

    #[test]
    fn grid_validation() {
        let s = ChateletSurface::new(1, crate::arith::IntPoly::new(vec![1, 0, 0, 0, 1])).unwrap();
        let cfg = CountConfig::default();
        assert!(count_series(&s, &[10, 5, 20], Method::Brute, &cfg).is_err());
        assert!(count_series(&s, &[10, 20], Method::Brute, &cfg).is_err());
        let ser = count_series(&s, &[1, 2, 4], Method::Brute, &cfg).unwrap();
        assert_eq!(ser.grid.len(), 3);
        assert!(ser.grid.windows(2).all(|w| w[0].two_n <= w[1].two_n));
    }
}
