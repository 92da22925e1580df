//! Sample grids and functions tabulated on them.

use std::str::FromStr;

use crate::error::{Error, Result};

const MAX_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Ordered sample points, built from a linear or logarithmic rule or given explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGrid {
    points: Vec<f64>,
}

impl RealGrid {
    pub fn linear(min: f64, max: f64, count: usize) -> Result<Self> {
        Self::build(min, max, count, Spacing::Linear)
    }

    pub fn log(min: f64, max: f64, count: usize) -> Result<Self> {
        Self::build(min, max, count, Spacing::Log)
    }

    pub fn build(min: f64, max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::domain("grid bounds must be finite"));
        }
        if count == 0 || count > MAX_POINTS {
            return Err(Error::domain(format!("grid count {count} outside 1..={MAX_POINTS}")));
        }
        if max < min {
            return Err(Error::domain(format!("grid max {max} is below min {min}")));
        }
        if count == 1 {
            return Ok(Self { points: vec![min] });
        }
        let n = (count - 1) as f64;
        let points = match spacing {
            Spacing::Linear => (0..count)
                .map(|i| if i == count - 1 { max } else { min + (max - min) * i as f64 / n })
                .collect(),
            Spacing::Log => {
                if min <= 0.0 {
                    return Err(Error::domain("log grid needs a positive lower bound"));
                }
                let (a, b) = (min.ln(), max.ln());
                (0..count)
                    .map(|i| match i {
                        0 => min,
                        i if i == count - 1 => max,
                        i => (a + (b - a) * i as f64 / n).exp(),
                    })
                    .collect()
            }
        };
        Ok(Self { points })
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("grid must be nonempty"));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::domain("grid points must be finite"));
        }
        Ok(Self { points })
    }

    pub fn single(x: f64) -> Self {
        Self { points: vec![x] }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().copied()
    }

    pub fn is_increasing(&self) -> bool {
        self.points.windows(2).all(|w| w[0] < w[1])
    }
}

/// Parses `min:max:count[:log]` or a single number.
impl FromStr for RealGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        let num = |p: &str| {
            p.parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number `{p}` in grid `{s}`")))
        };
        match parts.as_slice() {
            [one] => Ok(Self::single(num(one)?)),
            [a, b, n] | [a, b, n, _] => {
                let count = n
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad count `{n}` in grid `{s}`")))?;
                let spacing = match parts.get(3) {
                    None => Spacing::Linear,
                    Some(t) if t.eq_ignore_ascii_case("log") => Spacing::Log,
                    Some(t) if t.eq_ignore_ascii_case("lin") || t.eq_ignore_ascii_case("linear") => {
                        Spacing::Linear
                    }
                    Some(t) => return Err(Error::Parse(format!("unknown spacing `{t}`"))),
                };
                Self::build(num(a)?, num(b)?, count, spacing).map_err(|e| match e {
                    Error::Domain(m) => Error::Parse(m),
                    e => e,
                })
            }
            _ => Err(Error::Parse(format!("grid `{s}` is not min:max:count[:log]"))),
        }
    }
}

/// Values (and optional pointwise error estimates) on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: RealGrid,
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: RealGrid, values: Vec<f64>, errors: Vec<f64>) -> Self {
        assert_eq!(grid.len(), values.len());
        assert_eq!(grid.len(), errors.len());
        Self { grid, values, errors }
    }

    pub fn from_fn(grid: RealGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.iter().map(f).collect();
        let errors = vec![0.0; grid.len()];
        Self { grid, values, errors }
    }

    pub fn max_error(&self) -> f64 {
        self.errors.iter().fold(0.0, |m, &e| m.max(e))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.iter().zip(self.values.iter().copied())
    }

    /// Local cubic interpolation; zero outside the grid (compact support).
    ///
    /// The origin is treated as a possible jump (odd functions): on grids that
    /// straddle it, stencils use only points strictly on the side of x.
    pub fn interpolate(&self, x: f64) -> f64 {
        let p = self.grid.points();
        let n = p.len();
        if n == 0 || x < p[0] || x > p[n - 1] {
            return 0.0;
        }
        if n == 1 {
            return self.values[0];
        }
        if x == 0.0 {
            if let Ok(i) = p.binary_search_by(|q| q.total_cmp(&0.0)) {
                return self.values[i];
            }
        }
        // side of the origin that x lies on
        // the origin joins the stencil only when the grid does not extend past it
        let (lo_all, hi_all) = if x > 0.0 {
            (if p[0] >= 0.0 { 0 } else { p.partition_point(|&q| q <= 0.0) }, n)
        } else {
            (0, if p[n - 1] <= 0.0 { n } else { p.partition_point(|&q| q < 0.0) })
        };
        let (lo_all, hi_all) = if hi_all > lo_all { (lo_all, hi_all) } else { (0, n) };
        let m = hi_all - lo_all;
        let i = (lo_all + p[lo_all..hi_all].partition_point(|&q| q <= x)).clamp(lo_all + 1, hi_all.max(lo_all + 1)) - 1;
        let width = m.min(4);
        let lo = i.saturating_sub(1).max(lo_all).min(hi_all - width);
        let hi = lo + width;
        let mut total = 0.0;
        for j in lo..hi {
            let mut w = 1.0;
            for k in lo..hi {
                if k != j {
                    w *= (x - p[k]) / (p[j] - p[k]);
                }
            }
            total += w * self.values[j];
        }
        total
    }

    /// Trapezoid rule over the grid points.
    pub fn trapezoid(&self) -> f64 {
        let p = self.grid.points();
        p.windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0] + v[1]))
            .sum()
    }
}
