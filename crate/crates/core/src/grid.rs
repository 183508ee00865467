//! Sample grids for disk and half-plane sweeps.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("grid count `{0}` must be at least 2")]
    TooFewNodes(&'static str),
    #[error("disk radii must satisfy 0 < r_min < r_max < 1, got [{0}, {1}]")]
    Radii(f64, f64),
    #[error("rectangle [{x_min}, {x_max}] x [{y_min}, {y_max}] must have x_max < 1 and 0 < y_min < y_max")]
    Rectangle {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
    },
}

/// Rectangle in the closed upper half-plane, sampled on an `nx` by `ny` lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for RectGrid {
    fn default() -> Self {
        Self {
            x_min: -3.0,
            x_max: 0.99,
            y_min: 0.01,
            y_max: 3.0,
            nx: 100,
            ny: 100,
        }
    }
}

/// Polar disk grid, half-plane rectangle and the t-samples used by ratio sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub rect: RectGrid,
    pub n_t: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            r_min: 0.1,
            r_max: 0.99,
            n_r: 19,
            n_theta: 64,
            rect: RectGrid::default(),
            n_t: 21,
        }
    }
}

pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + step * i as f64 })
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), GridError> {
        for (name, n) in [
            ("n_r", self.n_r),
            ("n_theta", self.n_theta),
            ("n_t", self.n_t),
            ("nx", self.rect.nx),
            ("ny", self.rect.ny),
        ] {
            if n < 2 {
                return Err(GridError::TooFewNodes(name));
            }
        }
        if !(0.0 < self.r_min && self.r_min < self.r_max && self.r_max < 1.0) {
            return Err(GridError::Radii(self.r_min, self.r_max));
        }
        let r = &self.rect;
        if !(r.x_min < r.x_max && r.x_max < 1.0 && 0.0 < r.y_min && r.y_min < r.y_max) {
            return Err(GridError::Rectangle {
                x_min: r.x_min,
                x_max: r.x_max,
                y_min: r.y_min,
                y_max: r.y_max,
            });
        }
        Ok(())
    }

    pub fn radii(&self) -> Vec<f64> {
        linspace(self.r_min, self.r_max, self.n_r).collect()
    }

    /// The origin followed by `n_r` circles of `n_theta` points each. Angle
    /// index 0 is θ = 0, so θ = π is on the grid whenever `n_theta` is even.
    pub fn disk_points(&self) -> Vec<Complex64> {
        let mut pts = vec![Complex64::new(0.0, 0.0)];
        for r in self.radii() {
            for j in 0..self.n_theta {
                let theta = 2.0 * PI * j as f64 / self.n_theta as f64;
                pts.push(Complex64::from_polar(r, theta));
            }
        }
        pts
    }

    /// Lattice points of the rectangle (all with positive imaginary part).
    pub fn upper_points(&self) -> Vec<Complex64> {
        let r = &self.rect;
        let ys: Vec<f64> = linspace(r.y_min, r.y_max, r.ny).collect();
        linspace(r.x_min, r.x_max, r.nx)
            .flat_map(|x| ys.iter().map(move |&y| Complex64::new(x, y)))
            .collect()
    }

    /// Rectangle points together with their mirror images below the real axis.
    pub fn off_axis_points(&self) -> Vec<Complex64> {
        self.upper_points().into_iter().flat_map(|z| [z, z.conj()]).collect()
    }

    /// Real samples on [x_min, x_max].
    pub fn real_points(&self) -> Vec<f64> {
        linspace(self.rect.x_min, self.rect.x_max, self.rect.nx).collect()
    }

    pub fn t_samples(&self) -> Vec<f64> {
        linspace(0.0, 1.0, self.n_t).collect()
    }

    /// Halves the distance of the outer radius (and the rectangle's edge) to
    /// the boundary and roughly doubles every count.
    pub fn refined(&self) -> GridSpec {
        let mut rect = self.rect;
        rect.x_max = 1.0 - 0.5 * (1.0 - rect.x_max);
        rect.y_min *= 0.5;
        rect.nx = 2 * rect.nx - 1;
        rect.ny = 2 * rect.ny - 1;
        GridSpec {
            r_min: self.r_min,
            r_max: 1.0 - 0.5 * (1.0 - self.r_max),
            n_r: 2 * self.n_r - 1,
            n_theta: 2 * self.n_theta,
            rect,
            n_t: 2 * self.n_t - 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let g = GridSpec::default();
        g.validate().unwrap();
        let radii = g.radii();
        assert_eq!(radii.len(), 19);
        assert_eq!(radii[0], 0.1);
        assert_eq!(*radii.last().unwrap(), 0.99);
        let pts = g.disk_points();
        assert_eq!(pts.len(), 1 + 19 * 64);
        assert!(pts.iter().any(|z| (z - Complex64::new(-0.99, 0.0)).norm() < 1e-15));
        assert_eq!(g.upper_points().len(), 100 * 100);
        assert_eq!(g.off_axis_points().len(), 2 * 100 * 100);
        let t = g.t_samples();
        assert_eq!((t[0], t[20]), (0.0, 1.0));
    }

    #[test]
    fn validation() {
        let g = GridSpec {
            n_theta: 1,
            ..GridSpec::default()
        };
        assert_eq!(g.validate(), Err(GridError::TooFewNodes("n_theta")));
        let g = GridSpec {
            r_max: 1.0,
            ..GridSpec::default()
        };
        assert!(matches!(g.validate(), Err(GridError::Radii(..))));
        let mut g = GridSpec::default();
        g.rect.y_min = 0.0;
        assert!(matches!(g.validate(), Err(GridError::Rectangle { .. })));
    }

    #[test]
    fn refinement_moves_toward_boundary() {
        let g = GridSpec::default();
        let r = g.refined();
        r.validate().unwrap();
        assert!(r.r_max > g.r_max && r.r_max < 1.0);
        assert!(r.rect.x_max > g.rect.x_max);
    }
}
