//! Evaluation of truncated series on sampled sub-disk grids.
//!
//! A [`DiskGrid`] is a family of concentric circles strictly inside the unit
//! disk, each sampled at equally spaced angles.  [`range_stats`] reports the
//! sampled extrema together with a geometric tail majorant; certificates built
//! on top of it are claims about the sampled grid, not the full disk.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Margin every strict-inequality certificate must clear.
pub const EPSILON_STRICT: f64 = 1e-9;

/// Concentric sampling circles `|z| = r` with equally spaced angles.
#[derive(Debug, Clone)]
pub struct DiskGrid {
    radii: Vec<f64>,
    angles_per_circle: usize,
    label: String,
}

/// Wire format for grid configuration: `{"radii": [...], "angles": n}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridConfig {
    pub radii: Vec<f64>,
    pub angles: usize,
}

impl DiskGrid {
    /// Radii must be strictly increasing inside `(0, 1)`; at least 8 angles.
    pub fn new(radii: Vec<f64>, angles_per_circle: usize, label: &str) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::invariant("grid needs at least one radius"));
        }
        for (i, &r) in radii.iter().enumerate() {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::invariant(format!(
                    "grid radius {r} lies outside (0, 1)"
                )));
            }
            if i > 0 && radii[i - 1] >= r {
                return Err(Error::invariant("grid radii must be strictly ascending"));
            }
        }
        if angles_per_circle < 8 {
            return Err(Error::invariant(format!(
                "angles_per_circle = {angles_per_circle} is below the minimum of 8"
            )));
        }
        Ok(DiskGrid {
            radii,
            angles_per_circle,
            label: label.to_string(),
        })
    }

    /// Boundary-probing default: radii up to 0.99, 720 angles per circle.
    pub fn default_grid() -> Self {
        DiskGrid::new(vec![0.3, 0.5, 0.7, 0.9, 0.95, 0.99], 720, "default").expect("default grid")
    }

    pub fn from_config(config: &GridConfig, label: &str) -> Result<Self> {
        DiskGrid::new(config.radii.clone(), config.angles, label)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_circle(&self) -> usize {
        self.angles_per_circle
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn r_max(&self) -> f64 {
        *self.radii.last().expect("grid is nonempty")
    }

    /// Grid points in deterministic order: radii ascending, angles by index.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let m = self.angles_per_circle;
        self.radii.iter().flat_map(move |&r| {
            (0..m).map(move |j| {
                Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / m as f64)
            })
        })
    }
}

/// Sampled extrema of a series over a grid, with witnesses and tail majorant.
#[derive(Debug, Clone)]
pub struct RangeStat {
    pub min_real: f64,
    pub max_abs: f64,
    pub argmin_point: Complex64,
    pub argmax_point: Complex64,
    /// Geometric tail majorant at the largest grid radius.
    pub tail_estimate: f64,
}

/// Horner evaluation at a point of the open unit disk.
pub fn evaluate(series: &TruncatedSeries, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::PointOutsideDisk { modulus: z.norm() });
    }
    Ok(eval_horner(series, z))
}

pub(crate) fn eval_horner(series: &TruncatedSeries, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in series.coeffs().iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Sampled min of the real part and max of the modulus over the whole grid.
///
/// Ties resolve to the earliest grid point, so the result is deterministic.
pub fn range_stats(series: &TruncatedSeries, grid: &DiskGrid) -> RangeStat {
    let mut min_real = f64::INFINITY;
    let mut max_abs = f64::NEG_INFINITY;
    let mut argmin = Complex64::new(0.0, 0.0);
    let mut argmax = Complex64::new(0.0, 0.0);
    for z in grid.points() {
        let v = eval_horner(series, z);
        if v.re < min_real {
            min_real = v.re;
            argmin = z;
        }
        if v.norm() > max_abs {
            max_abs = v.norm();
            argmax = z;
        }
    }
    RangeStat {
        min_real,
        max_abs,
        argmin_point: argmin,
        argmax_point: argmax,
        tail_estimate: tail_bound(series, grid.r_max()),
    }
}

/// Heuristic tail majorant `M r^(N+1) / (1 - r)` where `M` is the largest
/// coefficient modulus over the top quarter of retained indices.
///
/// It is reported alongside certificates, never silently absorbed; it is a
/// geometric-decay heuristic, not a rigorous remainder bound.
pub fn tail_bound(series: &TruncatedSeries, r: f64) -> f64 {
    assert!(r > 0.0 && r < 1.0, "tail bound radius must lie in (0, 1)");
    let n = series.order();
    let count = ((n + 1) / 4).max(1);
    let start = n + 1 - count;
    let m = series.coeffs()[start..]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    m * r.powi(n as i32 + 1) / (1.0 - r)
}
