use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Boundary {
    Periodic { period: f64 },
    TruncatedLine,
}

/// Tensor grid in (x, t). Periodic grids exclude the right endpoint in x.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub nt: usize,
    pub boundary: Boundary,
}

impl SpaceTimeGrid {
    pub fn new(
        x_min: f64,
        x_max: f64,
        nx: usize,
        t_min: f64,
        t_max: f64,
        nt: usize,
        boundary: Boundary,
    ) -> Result<Self> {
        if nx < 2 || nt < 2 {
            return Err(Error::Grid(format!("need nx, nt >= 2 (got {nx}, {nt})")));
        }
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::Grid(format!("x range [{x_min}, {x_max}] is empty")));
        }
        if !(t_max >= t_min) || !t_min.is_finite() || !t_max.is_finite() {
            return Err(Error::Grid(format!("t range [{t_min}, {t_max}] is invalid")));
        }
        if let Boundary::Periodic { period } = boundary {
            if !(period > 0.0) {
                return Err(Error::Grid(format!("period {period} must be positive")));
            }
            let m = (x_max - x_min) / period;
            if (m - m.round()).abs() > 1e-9 * m.max(1.0) || m.round() < 1.0 {
                return Err(Error::Grid(format!(
                    "span {} is not an integer multiple of the period {period}",
                    x_max - x_min
                )));
            }
        }
        Ok(Self { x_min, x_max, nx, t_min, t_max, nt, boundary })
    }

    /// `periods` copies of `[x0, x0 + period)`.
    pub fn periodic(
        x0: f64,
        period: f64,
        periods: usize,
        nx: usize,
        t_min: f64,
        t_max: f64,
        nt: usize,
    ) -> Result<Self> {
        Self::new(
            x0,
            x0 + period * periods as f64,
            nx,
            t_min,
            t_max,
            nt,
            Boundary::Periodic { period },
        )
    }

    pub fn line(x_min: f64, x_max: f64, nx: usize, t_min: f64, t_max: f64, nt: usize) -> Result<Self> {
        Self::new(x_min, x_max, nx, t_min, t_max, nt, Boundary::TruncatedLine)
    }

    pub fn with_resolution(&self, nx: usize, nt: usize) -> Result<Self> {
        Self::new(self.x_min, self.x_max, nx, self.t_min, self.t_max, nt, self.boundary)
    }

    pub fn dx(&self) -> f64 {
        match self.boundary {
            Boundary::Periodic { .. } => (self.x_max - self.x_min) / self.nx as f64,
            Boundary::TruncatedLine => (self.x_max - self.x_min) / (self.nx - 1) as f64,
        }
    }

    pub fn dt(&self) -> f64 {
        (self.t_max - self.t_min) / (self.nt - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn t(&self, j: usize) -> f64 {
        self.t_min + j as f64 * self.dt()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }

    pub fn ts(&self) -> Vec<f64> {
        (0..self.nt).map(|j| self.t(j)).collect()
    }

    /// All nodes, row-major over t then x.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.nt).flat_map(move |j| (0..self.nx).map(move |i| (self.x(i), self.t(j))))
    }

    pub fn len(&self) -> usize {
        self.nx * self.nt
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
