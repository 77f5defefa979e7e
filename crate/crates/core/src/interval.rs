//! Middle fixpoints of monotone maps on the real interval `[0, 1]`.
//!
//! Exact iteration "to a sufficiently large ordinal" is replaced by
//! ω-iteration stopped once successive iterates differ by less than a
//! tolerance. Monotonicity and range are only checked on a sample grid.

use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_GRID: usize = 1024;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("sample grid needs at least two points, got {0}")]
    GridTooSmall(usize),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("max_iterations must be positive")]
    BadIterationBound,
    #[error("f({x}) = {fx} leaves [0, 1]")]
    OutOfRange { x: f64, fx: f64 },
    #[error("not monotone on the grid: f({x}) = {fx} > f({y}) = {fy} with {x} < {y}")]
    NotMonotone { x: f64, y: f64, fx: f64, fy: f64 },
    #[error("start point {0} is outside [0, 1]")]
    StartOutOfRange(f64),
    #[error("{x} is not pre-fixed: f(x) = {fx}")]
    NotPreFixedNumeric { x: f64, fx: f64 },
    #[error("{y} is not post-fixed: f(y) = {fy}")]
    NotPostFixedNumeric { y: f64, fy: f64 },
    #[error("no convergence after {iterations} iterations; best iterate {best} has residual {residual}")]
    NoConvergence { best: f64, residual: f64, iterations: usize },
}

/// A real function on `[0, 1]` together with the numeric settings used to
/// validate it and iterate it.
#[derive(Clone)]
pub struct IntervalMap {
    func: fn(f64) -> f64,
    sample_grid: usize,
    tolerance: f64,
    max_iterations: usize,
}

impl std::fmt::Debug for IntervalMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IntervalMap")
            .field("sample_grid", &self.sample_grid)
            .field("tolerance", &self.tolerance)
            .field("max_iterations", &self.max_iterations)
            .finish_non_exhaustive()
    }
}

/// Outcome of a converged iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Convergence {
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl IntervalMap {
    pub fn new(func: fn(f64) -> f64) -> Result<Self, IntervalError> {
        Self::with_settings(func, DEFAULT_GRID, DEFAULT_TOLERANCE, DEFAULT_MAX_ITERATIONS)
    }

    /// Validates range and monotonicity on `sample_grid` evenly spaced points
    /// including both endpoints.
    pub fn with_settings(
        func: fn(f64) -> f64,
        sample_grid: usize,
        tolerance: f64,
        max_iterations: usize,
    ) -> Result<Self, IntervalError> {
        if sample_grid < 2 {
            return Err(IntervalError::GridTooSmall(sample_grid));
        }
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(IntervalError::BadTolerance(tolerance));
        }
        if max_iterations == 0 {
            return Err(IntervalError::BadIterationBound);
        }
        let im = IntervalMap { func, sample_grid, tolerance, max_iterations };
        let mut prev: Option<(f64, f64)> = None;
        for x in im.grid() {
            let fx = func(x);
            if !(0.0..=1.0).contains(&fx) {
                return Err(IntervalError::OutOfRange { x, fx });
            }
            if let Some((px, pfx)) = prev {
                if pfx > fx {
                    return Err(IntervalError::NotMonotone { x: px, y: x, fx: pfx, fy: fx });
                }
            }
            prev = Some((x, fx));
        }
        Ok(im)
    }

    pub fn apply(&self, x: f64) -> f64 {
        (self.func)(x)
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn sample_grid(&self) -> usize {
        self.sample_grid
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> {
        let last = (self.sample_grid - 1) as f64;
        (0..self.sample_grid).map(move |i| i as f64 / last)
    }

    pub fn is_pre_fixed(&self, x: f64) -> bool {
        self.apply(x) >= x - self.tolerance
    }

    pub fn is_post_fixed(&self, y: f64) -> bool {
        self.apply(y) <= y + self.tolerance
    }

    /// Ascending iteration from a (numerically) pre-fixed point.
    pub fn mu(&self, x: f64) -> Result<Convergence, IntervalError> {
        self.check_start(x)?;
        if !self.is_pre_fixed(x) {
            return Err(IntervalError::NotPreFixedNumeric { x, fx: self.apply(x) });
        }
        self.iterate(x)
    }

    /// Descending iteration from a (numerically) post-fixed point.
    pub fn nu(&self, y: f64) -> Result<Convergence, IntervalError> {
        self.check_start(y)?;
        if !self.is_post_fixed(y) {
            return Err(IntervalError::NotPostFixedNumeric { y, fy: self.apply(y) });
        }
        self.iterate(y)
    }

    fn check_start(&self, x: f64) -> Result<(), IntervalError> {
        if (0.0..=1.0).contains(&x) {
            Ok(())
        } else {
            Err(IntervalError::StartOutOfRange(x))
        }
    }

    fn iterate(&self, start: f64) -> Result<Convergence, IntervalError> {
        let mut cur = start;
        for i in 1..=self.max_iterations {
            let next = self.apply(cur);
            if (next - cur).abs() < self.tolerance {
                return Ok(Convergence {
                    value: next,
                    residual: (self.apply(next) - next).abs(),
                    iterations: i,
                });
            }
            cur = next;
        }
        Err(IntervalError::NoConvergence {
            best: cur,
            residual: (self.apply(cur) - cur).abs(),
            iterations: self.max_iterations,
        })
    }

    /// Locates the fixpoints of `f` by scanning `g(x) = f(x) - x` on the grid
    /// for exact zeros and sign changes, refining each change by bisection.
    pub fn locate_fixpoints(&self) -> Vec<f64> {
        let g = |x: f64| self.apply(x) - x;
        let pts: Vec<f64> = self.grid().collect();
        let mut roots = Vec::new();
        for (i, &x) in pts.iter().enumerate() {
            let gx = g(x);
            if gx == 0.0 {
                roots.push(x);
                continue;
            }
            if let Some(&next) = pts.get(i + 1) {
                let gn = g(next);
                if gn != 0.0 && gx.signum() != gn.signum() {
                    roots.push(self.bisect(x, next));
                }
            }
        }
        roots
    }

    fn bisect(&self, mut lo: f64, mut hi: f64) -> f64 {
        let g = |x: f64| self.apply(x) - x;
        let lo_sign = g(lo).signum();
        while hi - lo > self.tolerance * 1e-3 {
            let mid = 0.5 * (lo + hi);
            let gm = g(mid);
            if gm == 0.0 {
                return mid;
            }
            if gm.signum() == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Roots of the shipped figure map: five fixpoints, three of them strictly
/// inside the interval.
pub const FIGURE_FIXPOINTS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

const FIGURE_GAIN: f64 = 8.0;

/// `f(x) = x + 8·x(x - 1/4)(x - 1/2)(x - 3/4)(x - 1)`.
///
/// Monotone on `[0, 1]` (the quintic's slope stays above `-1/8`), maps the
/// interval into itself, and fixes exactly `0, 1/4, 1/2, 3/4, 1`. The
/// points `1/4` and `3/4` attract; `0`, `1/2` and `1` repel.
pub fn figure_map(x: f64) -> f64 {
    let p = x * (x - 0.25) * (x - 0.5) * (x - 0.75) * (x - 1.0);
    x + FIGURE_GAIN * p
}

pub fn figure() -> IntervalMap {
    IntervalMap::new(figure_map).expect("figure map is monotone on the default grid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(x: f64) -> f64 {
        x
    }

    fn half(x: f64) -> f64 {
        x / 2.0
    }

    fn swap(x: f64) -> f64 {
        1.0 - x
    }

    fn too_big(x: f64) -> f64 {
        x + 0.5
    }

    #[test]
    fn identity_is_fixed_everywhere() {
        let im = IntervalMap::new(identity).unwrap();
        let c = im.mu(0.3).unwrap();
        assert_eq!(c.value, 0.3);
        assert_eq!(c.residual, 0.0);
    }

    #[test]
    fn halving_map() {
        let im = IntervalMap::new(half).unwrap();
        assert!(matches!(im.mu(0.4), Err(IntervalError::NotPreFixedNumeric { .. })));
        assert_eq!(im.mu(0.0).unwrap().value, 0.0);
        let c = im.nu(1.0).unwrap();
        assert!(c.value.abs() < 1e-8);
    }

    #[test]
    fn rejects_decreasing_and_out_of_range() {
        assert!(matches!(IntervalMap::new(swap), Err(IntervalError::NotMonotone { .. })));
        assert!(matches!(IntervalMap::new(too_big), Err(IntervalError::OutOfRange { .. })));
        assert!(matches!(
            IntervalMap::with_settings(identity, 1, 1e-9, 10),
            Err(IntervalError::GridTooSmall(1))
        ));
    }

    #[test]
    fn iteration_cap_reports_best_iterate() {
        let im = IntervalMap::with_settings(half, 16, 1e-12, 3).unwrap();
        match im.nu(1.0) {
            Err(IntervalError::NoConvergence { best, iterations, .. }) => {
                assert_eq!(iterations, 3);
                assert_eq!(best, 0.125);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn figure_endpoints() {
        let im = figure();
        assert_eq!(im.mu(0.0).unwrap().value, 0.0);
        assert_eq!(im.nu(1.0).unwrap().value, 1.0);
    }

    #[test]
    fn figure_basins() {
        let im = figure();
        assert!((im.mu(0.1).unwrap().value - 0.25).abs() < 1e-6);
        assert!((im.nu(0.4).unwrap().value - 0.25).abs() < 1e-6);
        assert!((im.mu(0.6).unwrap().value - 0.75).abs() < 1e-6);
        assert!((im.nu(0.9).unwrap().value - 0.75).abs() < 1e-6);
        assert!(im.mu(0.4).is_err());
    }
}
