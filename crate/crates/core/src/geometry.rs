//! Quasi-concave function geometry over knot grids: least concave majorants,
//! the `g(t)` regularisation that turns a concave fundamental function into
//! one that never attains its limit, and reconstruction of an Orlicz function
//! from a regularised fundamental function.

use serde::{Deserialize, Serialize};

use crate::numeric::{bisect_sup, log_grid};
use crate::orlicz::OrliczFunction;

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("profile needs at least two knots with strictly increasing positive abscissae")]
    BadKnots,
    #[error("profile is not nondecreasing at knot {index}")]
    NotMonotone { index: usize },
    #[error("profile violates quasi-concavity (phi(t)/t increasing) at knot {index}")]
    NotQuasiConcave { index: usize },
    #[error("profile is not concave at knot {index}")]
    NotConcave { index: usize },
    #[error("epsilon must lie strictly inside (0, c) (got eps={eps}, c={c})")]
    BadEpsilon { eps: f64, c: f64 },
}

/// A quasi-concave function stored as knots `(t_i, φ_i)` on a grid over
/// `(0, ∞)`: nonnegative, nondecreasing, with `φ(t)/t` nonincreasing.
///
/// Evaluation is piecewise linear between knots, linear from `(0, φ(0+))`
/// below the first knot, and extended by the final slope above the last.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasiConcaveProfile {
    knots: Vec<(f64, f64)>,
}

/// Relative plateau threshold for detecting a finite limit at `∞` (and a
/// nonzero value at `0+`) from the outermost decade of knots.
const PLATEAU_REL: f64 = 1e-10;

impl QuasiConcaveProfile {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self, GeometryError> {
        if knots.len() < 2 || knots[0].0 <= 0.0 {
            return Err(GeometryError::BadKnots);
        }
        for i in 1..knots.len() {
            let (t0, y0) = knots[i - 1];
            let (t1, y1) = knots[i];
            if t1 <= t0 || y1 < 0.0 {
                return Err(GeometryError::BadKnots);
            }
            let scale = 1.0 + y0.abs().max(y1.abs());
            if y1 < y0 - 1e-9 * scale {
                return Err(GeometryError::NotMonotone { index: i });
            }
            let r0 = y0 / t0;
            let r1 = y1 / t1;
            if r1 > r0 + 1e-9 * (1.0 + r0.abs()) {
                return Err(GeometryError::NotQuasiConcave { index: i });
            }
        }
        Ok(QuasiConcaveProfile { knots })
    }

    /// Sample a function on the default log grid (600 knots on `[1e-9, 1e9]`).
    pub fn from_fn(f: impl Fn(f64) -> f64) -> Result<Self, GeometryError> {
        Self::from_fn_on(f, 1e-9, 1e9, 600)
    }

    pub fn from_fn_on(
        f: impl Fn(f64) -> f64,
        lo: f64,
        hi: f64,
        n: usize,
    ) -> Result<Self, GeometryError> {
        let knots = log_grid(lo, hi, n).into_iter().map(|t| (t, f(t))).collect();
        Self::new(knots)
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn eval(&self, t: f64) -> f64 {
        let first = self.knots[0];
        let last = *self.knots.last().unwrap();
        if t <= first.0 {
            let y0 = self.value_at_zero();
            return y0 + (first.1 - y0) * (t / first.0);
        }
        if t >= last.0 {
            let n = self.knots.len();
            let (t0, y0) = self.knots[n - 2];
            let slope = (last.1 - y0) / (last.0 - t0);
            return last.1 + slope.max(0.0) * (t - last.0);
        }
        let mut lo = 0usize;
        let mut hi = self.knots.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.knots[mid].0 <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (t0, y0) = self.knots[lo];
        let (t1, y1) = self.knots[hi];
        y0 + (y1 - y0) * (t - t0) / (t1 - t0)
    }

    /// `φ(0+)`: the first-knot value when the first decade is flat, zero
    /// otherwise (a decaying left tail).
    pub fn value_at_zero(&self) -> f64 {
        let t0 = self.knots[0].0;
        let y0 = self.knots[0].1;
        let within: Vec<f64> = self
            .knots
            .iter()
            .take_while(|(t, _)| *t <= t0 * 10.0)
            .map(|(_, y)| *y)
            .collect();
        let ymax = within.iter().cloned().fold(0.0, f64::max);
        if (ymax - y0).abs() <= PLATEAU_REL * (1.0 + ymax) {
            y0
        } else {
            0.0
        }
    }

    /// `d = lim_{t→∞} φ(t)`: the last-knot value when the final decade is a
    /// plateau, `∞` otherwise.
    pub fn limit_at_infinity(&self) -> f64 {
        let (tn, yn) = *self.knots.last().unwrap();
        let within: Vec<f64> = self
            .knots
            .iter()
            .skip_while(|(t, _)| *t < tn / 10.0)
            .map(|(_, y)| *y)
            .collect();
        let ymin = within.iter().cloned().fold(f64::INFINITY, f64::min);
        if (yn - ymin).abs() <= PLATEAU_REL * (1.0 + yn) {
            yn
        } else {
            f64::INFINITY
        }
    }

    /// `c = sup{t : φ(t) < d}` (`∞` when `d = ∞`).
    pub fn plateau_start(&self) -> f64 {
        let d = self.limit_at_infinity();
        if d.is_infinite() {
            return f64::INFINITY;
        }
        for (t, y) in &self.knots {
            if *y >= d * (1.0 - PLATEAU_REL) {
                return *t;
            }
        }
        self.knots.last().unwrap().0
    }

    /// Generalized inverse `inf{t : φ(t) ≥ y}` by bisection over the knot
    /// range. Returns `0` below `φ(0+)` and `∞` above the limit.
    pub fn inverse(&self, y: f64) -> f64 {
        if y <= self.value_at_zero() {
            return 0.0;
        }
        let last = *self.knots.last().unwrap();
        let mut hi = last.0;
        if self.eval(hi) < y {
            // Extend along the final slope.
            let mut guard = 0;
            while self.eval(hi) < y && guard < 4200 {
                hi *= 2.0;
                guard += 1;
            }
            if self.eval(hi) < y {
                return f64::INFINITY;
            }
        }
        // sup{t : φ(t) < y} equals inf{t : φ(t) >= y} for continuous φ.
        bisect_sup(|t| self.eval(t) < y, 0.0, hi, 200)
    }

    pub fn is_concave(&self, tol: f64) -> bool {
        self.first_concavity_defect(tol).is_none()
    }

    fn first_concavity_defect(&self, tol: f64) -> Option<usize> {
        let mut prev_slope = f64::INFINITY;
        let mut prev_noise = 0.0f64;
        for i in 1..self.knots.len() {
            let (t0, y0) = self.knots[i - 1];
            let (t1, y1) = self.knots[i];
            let slope = (y1 - y0) / (t1 - t0);
            // Differencing nearly equal ordinates over a narrow cell loses
            // digits; allow for the induced slope noise on both segments.
            let noise = 64.0 * f64::EPSILON * y0.abs().max(y1.abs()) / (t1 - t0);
            if slope > prev_slope + tol * (1.0 + prev_slope.abs()) + noise + prev_noise {
                return Some(i);
            }
            prev_slope = slope;
            prev_noise = noise;
        }
        None
    }

    /// Upper concave envelope over the knot set (monotone-chain hull), the
    /// final hull slope extending past the last knot. The output dominates
    /// the input and stays below twice the input.
    pub fn concave_majorant(&self) -> Result<QuasiConcaveProfile, GeometryError> {
        // A profile failing quasi-concavity beyond 1e-9 was rejected at
        // construction; re-check defensively.
        Self::new(self.knots.clone())?;
        let mut hull: Vec<(f64, f64)> = Vec::with_capacity(self.knots.len());
        for &(t, y) in &self.knots {
            while hull.len() >= 2 {
                let (ta, ya) = hull[hull.len() - 2];
                let (tb, yb) = hull[hull.len() - 1];
                let s_ab = (yb - ya) / (tb - ta);
                let s_bt = (y - yb) / (t - tb);
                if s_bt >= s_ab {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((t, y));
        }
        let eval_hull = |t: f64| -> f64 {
            if t <= hull[0].0 {
                return hull[0].1;
            }
            for w in hull.windows(2) {
                let (t0, y0) = w[0];
                let (t1, y1) = w[1];
                if t <= t1 {
                    return y0 + (y1 - y0) * (t - t0) / (t1 - t0);
                }
            }
            let n = hull.len();
            if n >= 2 {
                let (t0, y0) = hull[n - 2];
                let (t1, y1) = hull[n - 1];
                y1 + (y1 - y0) / (t1 - t0) * (t - t1)
            } else {
                hull[0].1
            }
        };
        let knots = self.knots.iter().map(|&(t, _)| (t, eval_hull(t))).collect();
        Self::new(knots)
    }

    /// Compose a concave profile with the pinching map
    ///
    /// ```text
    /// g(t) = t                                   on [0, ε]
    ///      = ε + (t−ε)(c−ε) / ((t−ε)+(c−ε))      beyond,
    /// ```
    ///
    /// which produces `φ₀ = φ∘g`: concave, increasing, never attaining its
    /// limit. When the limit `d` is already infinite there is nothing to do.
    /// Returns `(φ₀, k)` with the equivalence certificate
    /// `φ/k ≤ φ₀ ≤ k·φ` over the knots.
    pub fn regularize(&self, eps: Option<f64>) -> Result<(QuasiConcaveProfile, f64), GeometryError> {
        if let Some(i) = self.first_concavity_defect(1e-9) {
            return Err(GeometryError::NotConcave { index: i });
        }
        let d = self.limit_at_infinity();
        if d.is_infinite() {
            return Ok((self.clone(), 1.0));
        }
        let c = self.plateau_start();
        let eps = eps.unwrap_or(c / 2.0);
        if !(eps > 0.0 && eps < c) {
            return Err(GeometryError::BadEpsilon { eps, c });
        }
        let g = |t: f64| {
            if t <= eps {
                t
            } else {
                let a = t - eps;
                let b = c - eps;
                eps + a * b / (a + b)
            }
        };
        let knots: Vec<(f64, f64)> = self.knots.iter().map(|&(t, _)| (t, self.eval(g(t)))).collect();
        let phi0 = Self::new(knots)?;
        let mut k: f64 = 1.0;
        for (i, &(_, y0)) in phi0.knots.iter().enumerate() {
            let y = self.knots[i].1;
            if y > 0.0 && y0 > 0.0 {
                k = k.max(y / y0).max(y0 / y);
            }
        }
        Ok((phi0, k))
    }
}

/// Build the Orlicz function `ψ₀` whose Luxemburg fundamental function is the
/// given (concave, increasing) profile: zero on `[0, 1/d]`, `1/φ₀^{-1}(1/t)`
/// in between, `∞` from `1/φ₀(0+)` on.
pub fn orlicz_from_fundamental(
    phi0: &QuasiConcaveProfile,
) -> Result<OrliczFunction, GeometryError> {
    if let Some(i) = phi0.first_concavity_defect(1e-9) {
        return Err(GeometryError::NotConcave { index: i });
    }
    for i in 1..phi0.knots().len() {
        if phi0.knots()[i].1 < phi0.knots()[i - 1].1 {
            return Err(GeometryError::NotMonotone { index: i });
        }
    }
    Ok(OrliczFunction::FromFundamental(phi0.clone()))
}
