//! Deterministic two-stage maximizer: an exhaustive coarse grid followed by
//! Nelder-Mead refinement from the best grid point.
//!
//! The grid stage is evaluated in lexicographic index order (last axis
//! fastest) and keeps the first maximizer on ties, so the result does not
//! depend on evaluation order.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Grid points per axis.
    pub grid_points: usize,
    /// Spread of objective values over the simplex at convergence.
    pub tolerance: f64,
    /// Largest vertex distance from the best vertex at convergence.
    pub x_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_points: 24,
            tolerance: 1e-8,
            x_tolerance: 1e-6,
            max_iterations: 5000,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(Error::BadOptimizerConfig("grid_points must be at least 2".into()));
        }
        if !(self.tolerance > 0.0) || !(self.x_tolerance > 0.0) {
            return Err(Error::BadOptimizerConfig("tolerances must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::BadOptimizerConfig("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// `n` polar angles spanning `[0, π]` inclusive.
pub fn polar_axis(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect()
}

/// `n` azimuthal angles spanning `[0, 2π)`.
pub fn azimuth_axis(n: usize) -> Vec<f64> {
    assert!(n >= 1);
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

/// Best grid cell found by [`grid_argmax`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridBest {
    pub index: Vec<usize>,
    pub value: f64,
    pub evaluations: usize,
}

/// Exhaustive search over the product grid of the given shape. The
/// objective receives grid indices so callers can use precomputed tables.
pub fn grid_argmax<F>(shape: &[usize], f: F) -> Result<GridBest>
where
    F: Fn(&[usize]) -> f64,
{
    if shape.is_empty() || shape.iter().any(|&n| n == 0) {
        return Err(Error::EmptyGrid);
    }
    let mut idx = vec![0usize; shape.len()];
    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut evaluations = 0usize;
    loop {
        let v = f(&idx);
        evaluations += 1;
        // strict comparison keeps the first maximizer; NaN never wins
        if best.as_ref().map_or(!v.is_nan(), |(_, b)| v > *b) {
            best = Some((idx.clone(), v));
        }
        let mut axis = shape.len();
        loop {
            if axis == 0 {
                let (index, value) = best.ok_or(Error::EmptyGrid)?;
                return Ok(GridBest {
                    index,
                    value,
                    evaluations,
                });
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < shape[axis] {
                break;
            }
            idx[axis] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NelderMeadOutcome {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Nelder-Mead maximization from `start` with an axis-aligned initial
/// simplex of edge lengths `steps`.
///
/// Converges when the value spread is within `ftol` and either the simplex
/// fits within `xtol` or the best value has not moved by more than `ftol`
/// for [`STALL_ITERATIONS_PER_DIM`] iterations per dimension. The second
/// case covers maxima that are flat along some coordinate, such as the
/// azimuth at a pole of a spherical parametrization.
pub fn nelder_mead_maximize<F>(
    f: F,
    start: &[f64],
    steps: &[f64],
    ftol: f64,
    xtol: f64,
    max_iterations: usize,
) -> NelderMeadOutcome
where
    F: Fn(&[f64]) -> f64,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = start.len();
    assert_eq!(steps.len(), n);
    // internally minimize the negated objective
    let g = |x: &[f64]| {
        let v = -f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), g(start)));
    for k in 0..n {
        let mut x = start.to_vec();
        x[k] += steps[k];
        let v = g(&x);
        simplex.push((x, v));
    }
    let mut evaluations = n + 1;
    let mut iterations = 0;
    let mut converged = false;
    let mut anchor = simplex.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let mut stalled = 0usize;

    while iterations < max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if simplex[0].1 < anchor - ftol {
            anchor = simplex[0].1;
            stalled = 0;
        } else {
            stalled += 1;
        }
        if spread <= ftol && (diameter <= xtol || stalled >= STALL_ITERATIONS_PER_DIM * n) {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(REFLECT);
        let fr = g(&xr);
        evaluations += 1;
        if fr < simplex[0].1 {
            let xe = along(EXPAND);
            let fe = g(&xe);
            evaluations += 1;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[n].1 {
            let xc = along(CONTRACT);
            let fc = g(&xc);
            (xc, fc)
        } else {
            let xc = along(-CONTRACT);
            let fc = g(&xc);
            (xc, fc)
        };
        evaluations += 1;
        if fc <= fr.min(simplex[n].1) {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for (x, v) in simplex.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&best) {
                *xi = bi + SHRINK * (*xi - bi);
            }
            *v = g(x);
            evaluations += 1;
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (point, v) = simplex.swap_remove(0);
    NelderMeadOutcome {
        point,
        value: -v,
        iterations,
        evaluations,
        converged,
    }
}

pub const STALL_ITERATIONS_PER_DIM: usize = 100;

/// Result of [`maximize`].
#[derive(Clone, Debug, PartialEq)]
pub struct Maximum {
    pub point: Vec<f64>,
    pub value: f64,
    /// Best value on the coarse grid.
    pub grid_value: f64,
    /// Whether the refinement met both tolerances. When false the returned
    /// point is still the best seen (grid or refined).
    pub converged: bool,
    pub evaluations: usize,
}

impl Maximum {
    /// True when refinement failed to converge.
    pub fn warning(&self) -> bool {
        !self.converged
    }
}

/// Grid search over `axes` followed by Nelder-Mead from the best grid point.
///
/// `on_grid` evaluates the objective at grid indices and must agree with
/// `objective` at the corresponding coordinates.
pub fn maximize<G, F>(axes: &[Vec<f64>], on_grid: G, objective: F, cfg: &OptimizerConfig) -> Result<Maximum>
where
    G: Fn(&[usize]) -> f64,
    F: Fn(&[f64]) -> f64,
{
    cfg.validate()?;
    let shape: Vec<usize> = axes.iter().map(Vec::len).collect();
    let grid = grid_argmax(&shape, on_grid)?;
    let start: Vec<f64> = grid.index.iter().zip(axes).map(|(&i, ax)| ax[i]).collect();
    let steps: Vec<f64> = axes
        .iter()
        .map(|ax| if ax.len() > 1 { 0.5 * (ax[1] - ax[0]).abs() } else { 0.1 })
        .collect();
    let nm = nelder_mead_maximize(
        &objective,
        &start,
        &steps,
        cfg.tolerance,
        cfg.x_tolerance,
        cfg.max_iterations,
    );
    let evaluations = grid.evaluations + nm.evaluations;
    if nm.value >= grid.value {
        Ok(Maximum {
            point: nm.point,
            value: nm.value,
            grid_value: grid.value,
            converged: nm.converged,
            evaluations,
        })
    } else {
        Ok(Maximum {
            point: start,
            value: grid.value,
            grid_value: grid.value,
            converged: nm.converged,
            evaluations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_keeps_first_maximizer() {
        let best = grid_argmax(&[3, 3], |i| if i[0] + i[1] >= 2 { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(best.index, vec![0, 2]);
        assert_eq!(best.evaluations, 9);
    }

    #[test]
    fn nelder_mead_accepts_flat_direction() {
        // peak along a whole line in x[1]
        let f = |x: &[f64]| -(x[0] - 0.2).powi(2);
        let out = nelder_mead_maximize(f, &[0.0, 0.0], &[0.1, 0.1], 1e-12, 1e-8, 10_000);
        assert!(out.converged);
        assert!((out.point[0] - 0.2).abs() < 1e-5);
    }

    #[test]
    fn grid_rejects_empty() {
        assert_eq!(grid_argmax(&[0], |_| 0.0), Err(Error::EmptyGrid));
        assert_eq!(grid_argmax(&[], |_| 0.0), Err(Error::EmptyGrid));
    }

    #[test]
    fn nelder_mead_finds_quadratic_peak() {
        let f = |x: &[f64]| -(x[0] - 0.3).powi(2) - 2.0 * (x[1] + 0.7).powi(2) + 1.5;
        let out = nelder_mead_maximize(f, &[0.0, 0.0], &[0.1, 0.1], 1e-14, 1e-8, 10_000);
        assert!(out.converged);
        assert!((out.point[0] - 0.3).abs() < 1e-6);
        assert!((out.point[1] + 0.7).abs() < 1e-6);
        assert!((out.value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn maximize_escapes_local_peak_via_grid() {
        // local max near 0.5, global max near 2.5
        let f = |x: f64| (-(x - 0.5).powi(2) * 20.0).exp() + 2.0 * (-(x - 2.5).powi(2) * 20.0).exp();
        let axis: Vec<f64> = (0..31).map(|k| k as f64 * 0.1).collect();
        let axes = vec![axis.clone()];
        let m = maximize(&axes, |i| f(axis[i[0]]), |x| f(x[0]), &OptimizerConfig::default()).unwrap();
        assert!((m.point[0] - 2.5).abs() < 1e-4);
        assert!(m.value >= m.grid_value);
        assert!(m.converged);
    }

    #[test]
    fn config_validation() {
        let bad = OptimizerConfig {
            grid_points: 1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert!(OptimizerConfig::default().validate().is_ok());
    }

    #[test]
    fn axes() {
        let p = polar_axis(3);
        assert_eq!(p, vec![0.0, PI / 2.0, PI]);
        let a = azimuth_axis(4);
        assert_eq!(a, vec![0.0, PI / 2.0, PI, 1.5 * PI]);
    }
}
