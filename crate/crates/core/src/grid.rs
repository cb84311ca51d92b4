//! Inverse-temperature grids.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_GRID_MIN: f64 = 1e-3;
pub const DEFAULT_GRID_MAX: f64 = 40.0;
pub const DEFAULT_GRID_COUNT: usize = 41;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Log,
    Linear,
}

/// Strictly increasing, positive, finite beta values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaGrid {
    values: Vec<f64>,
}

impl BetaGrid {
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("beta grid is empty".into()));
        }
        if let Some(bad) = values.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "beta grid values must be positive and finite, got {bad}"
            )));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "beta grid must be strictly increasing".into(),
            ));
        }
        Ok(BetaGrid { values })
    }

    /// `count` points from `min` to `max` inclusive. Endpoints are exact.
    pub fn new(min: f64, max: f64, count: usize, scale: Scale) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParameter("grid count must be >= 1".into()));
        }
        if !(min.is_finite() && max.is_finite() && min > 0.0 && max >= min) {
            return Err(Error::InvalidParameter(format!(
                "grid bounds must satisfy 0 < min <= max, got {min}:{max}"
            )));
        }
        if count == 1 {
            return Self::from_values(vec![min]);
        }
        if min == max {
            return Err(Error::InvalidParameter(
                "grid with count > 1 needs min < max".into(),
            ));
        }
        let last = (count - 1) as f64;
        let values = (0..count)
            .map(|k| {
                if k == 0 {
                    min
                } else if k == count - 1 {
                    max
                } else {
                    let t = k as f64 / last;
                    match scale {
                        Scale::Log => (min.ln() + t * (max.ln() - min.ln())).exp(),
                        Scale::Linear => min + t * (max - min),
                    }
                }
            })
            .collect();
        Self::from_values(values)
    }

    /// 41 log-spaced points in `[1e-3, 40]`.
    pub fn default_grid() -> Self {
        Self::new(
            DEFAULT_GRID_MIN,
            DEFAULT_GRID_MAX,
            DEFAULT_GRID_COUNT,
            Scale::Log,
        )
        .expect("default grid is valid")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

impl Default for BetaGrid {
    fn default() -> Self {
        Self::default_grid()
    }
}

/// Parses `min:max:count:scale` with scale `log` or `linear` (`lin`).
impl FromStr for BetaGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::InvalidParameter(format!("grid spec {s:?}: {what}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [min, max, count, scale] = parts.as_slice() else {
            return Err(bad("expected min:max:count:scale"));
        };
        let min: f64 = min.parse().map_err(|_| bad("min is not a number"))?;
        let max: f64 = max.parse().map_err(|_| bad("max is not a number"))?;
        let count: usize = count
            .parse()
            .map_err(|_| bad("count is not a natural number"))?;
        let scale = match *scale {
            "log" => Scale::Log,
            "linear" | "lin" => Scale::Linear,
            _ => return Err(bad("scale must be log or linear")),
        };
        if count > 1_000_000 {
            return Err(bad("count above 1e6"));
        }
        Self::new(min, max, count, scale)
    }
}

impl fmt::Display for BetaGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} points in [{}, {}]",
            self.len(),
            self.min(),
            self.max()
        )
    }
}
