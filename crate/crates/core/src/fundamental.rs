//! Fundamental functions of Orlicz spaces and their dilation calculus.
//!
//! For an Orlicz function ψ the Luxemburg-normed space has fundamental
//! function `φ_ψ(t) = 1/ψ^{-1}(1/t)`; the Orlicz-normed space has
//! `φ̃_ψ(t) = t·(ψ*)^{-1}(1/t)`. The two are equivalent:
//! `φ_ψ ≤ φ̃_ψ ≤ 2 φ_ψ`, and `φ_ψ(t)·φ̃_{ψ*}(t) = t`.
//!
//! The dilation function `k_φ(t) = sup_s φ(st)/φ(s)` drives the normability
//! diagnostic: the measure topology is provably normable when
//! `C = ∫₀¹ k_{ψ*}(t)/t dt` converges, and then
//! `μ₁(a) ≤ ∫₀¹ μ_t(a) dt ≤ C·μ₁(a)`.

use crate::geometry::QuasiConcaveProfile;
use crate::numeric::{adaptive_simpson, log_grid, ls_slope};
use crate::orlicz::OrliczFunction;

/// A fundamental function on `(0, ∞)`.
#[derive(Clone, Debug)]
pub enum FundamentalFunction {
    /// `φ_ψ(t) = 1/ψ^{-1}(1/t)` — Luxemburg-norm fundamental.
    Luxemburg { psi: OrliczFunction },
    /// `φ̃_ψ(t) = t·(ψ*)^{-1}(1/t)` — Orlicz-norm fundamental. The conjugate
    /// is fixed at construction.
    OrliczNorm { psi: OrliczFunction, conj: OrliczFunction },
    /// User-supplied quasi-concave profile.
    User(QuasiConcaveProfile),
}

impl FundamentalFunction {
    pub fn luxemburg(psi: OrliczFunction) -> Self {
        FundamentalFunction::Luxemburg { psi }
    }

    pub fn orlicz(psi: OrliczFunction) -> Self {
        let conj = psi.conjugate();
        FundamentalFunction::OrliczNorm { psi, conj }
    }

    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t > 0.0);
        match self {
            FundamentalFunction::Luxemburg { psi } => match psi {
                OrliczFunction::ScaledPower { coef, p } => (coef * t).powf(1.0 / p),
                OrliczFunction::Linear { slope } => slope * t,
                OrliczFunction::CapInf { cap } => 1.0 / cap,
                OrliczFunction::OneCapInf => t.max(1.0),
                OrliczFunction::OnePlusInf => t / (1.0 + t),
                other => {
                    let inv = other.inverse(1.0 / t);
                    if inv == 0.0 {
                        f64::INFINITY
                    } else {
                        1.0 / inv
                    }
                }
            },
            FundamentalFunction::OrliczNorm { conj, .. } => {
                let inv = conj.inverse(1.0 / t);
                if inv.is_infinite() {
                    f64::INFINITY
                } else {
                    t * inv
                }
            }
            FundamentalFunction::User(profile) => profile.eval(t),
        }
    }

    /// `(coef, alpha)` when the function is exactly `coef·t^alpha`.
    pub fn power_form(&self) -> Option<(f64, f64)> {
        match self {
            FundamentalFunction::Luxemburg { psi } => match psi {
                OrliczFunction::ScaledPower { coef, p } => Some((coef.powf(1.0 / p), 1.0 / p)),
                OrliczFunction::Linear { slope } => Some((*slope, 1.0)),
                OrliczFunction::CapInf { cap } => Some((1.0 / cap, 0.0)),
                _ => None,
            },
            FundamentalFunction::OrliczNorm { conj, .. } => {
                // t·(ψ*)^{-1}(1/t) is a power exactly when (ψ*)^{-1} is.
                match conj {
                    OrliczFunction::ScaledPower { coef, p } => {
                        // (ψ*)^{-1}(y) = (y/c)^{1/p}: φ̃ = c^{-1/p} t^{1-1/p}
                        Some((coef.powf(-1.0 / p), 1.0 - 1.0 / p))
                    }
                    OrliczFunction::Linear { slope } => Some((1.0 / slope, 0.0)),
                    OrliczFunction::CapInf { cap } => Some((*cap, 1.0)),
                    _ => None,
                }
            }
            FundamentalFunction::User(_) => None,
        }
    }

    /// Quasi-concavity spot check on a log grid.
    pub fn is_quasi_concave(&self) -> bool {
        let grid = log_grid(1e-8, 1e8, 161);
        let vals: Vec<f64> = grid.iter().map(|&t| self.eval(t)).collect();
        for i in 1..grid.len() {
            let (y0, y1) = (vals[i - 1], vals[i]);
            if !y0.is_finite() || !y1.is_finite() {
                continue;
            }
            if y1 < y0 - 1e-9 * (1.0 + y0) {
                return false;
            }
            let (r0, r1) = (y0 / grid[i - 1], y1 / grid[i]);
            if r1 > r0 + 1e-9 * (1.0 + r0) {
                return false;
            }
        }
        vals.iter().any(|v| *v > 0.0)
    }
}

/// Dilation function of an arbitrary positive function: the supremum of
/// `φ(st)/φ(s)` over log-spaced `s ∈ [1e-8, 1e8]`.
pub fn dilation_of(phi: &impl Fn(f64) -> f64, t: f64) -> f64 {
    debug_assert!(t > 0.0);
    let mut sup = 0.0f64;
    for s in log_grid(1e-8, 1e8, 2001) {
        let den = phi(s);
        if den > 0.0 && den.is_finite() {
            let num = phi(s * t);
            if num.is_finite() {
                sup = sup.max(num / den);
            }
        }
    }
    sup
}

/// Dilation function of a fundamental function (exact for powers).
pub fn dilation_fundamental(phi: &FundamentalFunction, t: f64) -> f64 {
    if let Some((_, alpha)) = phi.power_form() {
        return t.powf(alpha);
    }
    dilation_of(&|s| phi.eval(s), t)
}

/// Dilation function of `φ_ψ` for the given ψ.
pub fn dilation(psi: &OrliczFunction, t: f64) -> f64 {
    dilation_fundamental(&FundamentalFunction::luxemburg(psi.clone()), t)
}

/// `k_ψ = φ_ψ(1)`, together with a grid verification of
/// `φ_ψ(t) ≤ k_ψ(1+t)`.
pub fn growth_constant(psi: &OrliczFunction) -> f64 {
    let phi = FundamentalFunction::luxemburg(psi.clone());
    let k = phi.eval(1.0);
    for t in log_grid(1e-8, 1e8, 201) {
        let v = phi.eval(t);
        debug_assert!(
            !v.is_finite() || v <= k * (1.0 + t) * (1.0 + 1e-12),
            "growth bound violated at t={t}"
        );
    }
    k
}

/// Normability diagnostic for the quasinorm topology of the ψ-space.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BoydReport {
    /// Whether the sufficient criterion (finite `C`) holds.
    pub normable: bool,
    /// `C = ∫₀¹ k_{ψ*}(t)/t dt`, `∞` when divergent.
    pub constant: f64,
    /// Slope of `log k_{ψ*}` over the decade `t ∈ [1e-6, 1e-5]` — the lower
    /// Boyd index estimate of the conjugate-index space.
    pub alpha_lower: f64,
    /// Estimator provenance.
    pub note: &'static str,
}

/// Estimate the lower Boyd index of the conjugate space and the normability
/// constant `C = ∫₀¹ k_{ψ*}(t)/t dt`.
///
/// The slope is a least-squares fit over the decade `[1e-6, 1e-5]` of a log
/// grid; below `t = 1e-8` the integral uses an analytic power-law tail. A
/// tail exponent ≤ 0 (within tolerance) reports `C = ∞`.
pub fn boyd_normability(psi: &OrliczFunction) -> BoydReport {
    let conj = psi.conjugate();
    let phi_star = FundamentalFunction::luxemburg(conj.clone());
    let k: Box<dyn Fn(f64) -> f64> = if let Some((_, alpha)) = phi_star.power_form() {
        Box::new(move |t: f64| t.powf(alpha))
    } else if matches!(conj, OrliczFunction::NumericConjugate(_)) {
        // Cache the numeric conjugate on a log grid so the dilation sup and
        // the quadrature below stay tractable.
        let grid = log_grid(1e-12, 1e12, 1601);
        let vals: Vec<f64> = grid.iter().map(|&u| conj.eval(u)).collect();
        let cache_inverse = move |y: f64| -> f64 {
            // sup{s : cached ψ*(s) <= y} by scan + linear solve.
            let mut prev = (grid[0], vals[0]);
            if vals[0] > y {
                return grid[0];
            }
            for i in 1..grid.len() {
                let cur = (grid[i], vals[i]);
                if cur.1 > y {
                    let (t0, y0) = prev;
                    let (t1, y1) = cur;
                    if y1 > y0 && y1.is_finite() {
                        return t0 + (t1 - t0) * (y - y0) / (y1 - y0);
                    }
                    return t0;
                }
                prev = cur;
            }
            *grid.last().unwrap()
        };
        let phi = move |t: f64| {
            let inv = cache_inverse(1.0 / t);
            if inv == 0.0 {
                f64::INFINITY
            } else {
                1.0 / inv
            }
        };
        Box::new(move |t: f64| dilation_of(&phi, t))
    } else {
        Box::new(move |t: f64| dilation_fundamental(&phi_star, t))
    };

    let decade = log_grid(1e-6, 1e-5, 20);
    let xs: Vec<f64> = decade.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = decade.iter().map(|&t| k(t).max(1e-300).ln()).collect();
    let alpha = ls_slope(&xs, &ys);

    if alpha <= 1e-6 {
        return BoydReport {
            normable: false,
            constant: f64::INFINITY,
            alpha_lower: alpha,
            note: "heuristic slope estimator",
        };
    }
    // Tail below 1e-8 as A·t^alpha with A matched at t = 1e-8; the
    // contribution of ∫_0^eps A t^{alpha-1} dt is k(eps)/alpha.
    let eps = 1e-8;
    let tail = k(eps) / alpha;
    let body = adaptive_simpson(&|y: f64| k(y.exp()), eps.ln(), 0.0, 1e-10);
    BoydReport {
        normable: true,
        constant: tail + body,
        alpha_lower: alpha,
        note: "heuristic slope estimator",
    }
}
