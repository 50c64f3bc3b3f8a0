use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform one-dimensional grid `x_k = x_min + k (x_max - x_min) / (n - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if n_points < 2 {
            return Err(Error::InvalidArgument(format!("grid needs at least 2 points, got {n_points}")));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::InvalidArgument(format!("bad grid bounds [{x_min}, {x_max}]")));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    /// Symmetric grid on `[-half_extent, half_extent]`.
    pub fn symmetric(half_extent: f64, n_points: usize) -> Result<Self> {
        if !(half_extent.is_finite() && half_extent > 0.0) {
            return Err(Error::InvalidArgument(format!("half extent must be positive, got {half_extent}")));
        }
        Self::new(-half_extent, half_extent, n_points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn is_symmetric(&self) -> bool {
        self.x_min == -self.x_max
    }

    pub fn half_extent(&self) -> f64 {
        self.x_max.abs().min(self.x_min.abs())
    }

    /// Grid coordinate of index `k`. On symmetric grids this is computed as
    /// `x_max (2k - (n-1)) / (n-1)` so mirrored points are exact negatives.
    pub fn point(&self, k: usize) -> f64 {
        let n1 = (self.n_points - 1) as f64;
        if self.is_symmetric() {
            self.x_max * (2.0 * k as f64 - n1) / n1
        } else {
            self.x_min + k as f64 * (self.x_max - self.x_min) / n1
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.point(k)).collect()
    }

    /// Trapezoid-rule weight of index `k`.
    pub fn weight(&self, k: usize) -> f64 {
        let h = self.spacing();
        if k == 0 || k + 1 == self.n_points {
            0.5 * h
        } else {
            h
        }
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.weight(k)).collect()
    }

    pub fn require_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::GridSymmetry(format!("[{}, {}]", self.x_min, self.x_max)))
        }
    }
}

/// Symmetric grid `[-x_half_extent, x_half_extent]` with `n_points` points.
pub fn make_grid(x_half_extent: f64, n_points: usize) -> Result<Grid> {
    Grid::symmetric(x_half_extent, n_points)
}
