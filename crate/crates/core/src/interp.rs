//! The K-method of interpolation on the model: the classical K-functional
//! for the couple `(L¹, L∞)` (whose density is exactly the singular value
//! function), the modified K̃-functional built on four-way decompositions in
//! `X_{1+∞}`, and monotone Riesz–Fischer norms applied to extracted
//! k-densities.

use crate::algebra::AlgebraElement;
use crate::crossed::extreme::{decomposition_family, IotaSum};
use crate::norms::luxemburg_norm_of_profile;
use crate::numeric::log_grid;
use crate::orlicz::OrliczFunction;
use crate::svf::SingularValueFunction;

#[derive(Debug, thiserror::Error)]
pub enum InterpError {
    #[error("K curve is not {what} at grid index {index} (defect {defect})")]
    BadCurve {
        what: &'static str,
        index: usize,
        defect: f64,
    },
    #[error("Riesz-Fischer spec failed its registration property check: {what}")]
    BadNormSpec { what: &'static str },
    #[error("exponent out of range for an Lq Riesz-Fischer norm: {q}")]
    BadExponent { q: f64 },
}

/// A sampled `(t, K(t))` curve with its extracted right-difference density.
#[derive(Clone, Debug)]
pub struct KProfile {
    ts: Vec<f64>,
    values: Vec<f64>,
    k0: f64,
    density: Vec<f64>,
}

/// Isotonic cleanup threshold: density deviations below this are projected,
/// larger ones are reported as errors.
const ISOTONIC_TOL: f64 = 1e-9;

impl KProfile {
    /// Build from curve samples; validates nonnegativity, monotonicity, and
    /// concavity (divided-difference slopes nonincreasing within
    /// `1e-10·scale`), then extracts the density.
    pub fn from_curve(ts: Vec<f64>, values: Vec<f64>, k0: f64) -> Result<Self, InterpError> {
        assert_eq!(ts.len(), values.len());
        let scale = values.iter().cloned().fold(1.0, f64::max);
        for (i, v) in values.iter().enumerate() {
            if *v < -1e-12 * scale {
                return Err(InterpError::BadCurve {
                    what: "nonnegative",
                    index: i,
                    defect: -v,
                });
            }
        }
        let mut slopes: Vec<f64> = values
            .windows(2)
            .zip(ts.windows(2))
            .map(|(v, t)| (v[1] - v[0]) / (t[1] - t[0]))
            .collect();
        for (i, s) in slopes.iter().enumerate() {
            if *s < -1e-10 * scale {
                return Err(InterpError::BadCurve {
                    what: "nondecreasing",
                    index: i,
                    defect: -s,
                });
            }
        }
        for i in 1..slopes.len() {
            let defect = slopes[i] - slopes[i - 1];
            if defect > 1e-10 * scale {
                return Err(InterpError::BadCurve {
                    what: "concave",
                    index: i,
                    defect,
                });
            }
        }
        // Isotonic cleanup of the density: tiny inversions are projected.
        for i in 1..slopes.len() {
            if slopes[i] > slopes[i - 1] {
                let defect = slopes[i] - slopes[i - 1];
                if defect <= ISOTONIC_TOL * scale {
                    slopes[i] = slopes[i - 1];
                } else {
                    return Err(InterpError::BadCurve {
                        what: "isotonic",
                        index: i,
                        defect,
                    });
                }
            }
            slopes[i] = slopes[i].max(0.0);
        }
        Ok(KProfile {
            ts,
            values,
            k0: k0.max(0.0),
            density: slopes,
        })
    }

    pub fn ts(&self) -> &[f64] {
        &self.ts
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn k_zero_plus(&self) -> f64 {
        self.k0
    }

    /// Density on the cells `[t_i, t_{i+1})`.
    pub fn density(&self) -> &[f64] {
        &self.density
    }

    /// Density as `(value, width)` steps.
    pub fn density_steps(&self) -> Vec<(f64, f64)> {
        self.density
            .iter()
            .zip(self.ts.windows(2))
            .map(|(&v, t)| (v, t[1] - t[0]))
            .collect()
    }

    /// Max deviation of `K(t_0) + ∫ k̃` from the curve across the grid.
    pub fn reconstruction_error(&self) -> f64 {
        let mut acc = self.values[0];
        let mut worst = 0.0f64;
        let scale = self.values.iter().cloned().fold(1.0, f64::max);
        for i in 1..self.ts.len() {
            acc += self.density[i - 1] * (self.ts[i] - self.ts[i - 1]);
            worst = worst.max((acc - self.values[i]).abs() / scale);
        }
        worst
    }
}

/// The default interpolation grid: 64 log-spaced points on `[1e-6, 1e6]`.
pub fn default_grid() -> Vec<f64> {
    log_grid(1e-6, 1e6, 64)
}

/// `K(f, t; L¹, L∞) = ∫₀ᵗ μ_s(f) ds`, exactly from the step profile.
pub fn k_functional(f: &AlgebraElement, t: f64) -> f64 {
    debug_assert!(t > 0.0);
    SingularValueFunction::of(f).integral_to(t)
}

/// Both routes to the K-functional: the exact integral of `μ` and the
/// infimum over spectral clippings of `‖f₀‖₁ + t‖f₁‖∞`. The infimum is
/// attained at a kink of the clipping objective, so scanning the singular
/// values is exact.
pub fn k_functional_both(f: &AlgebraElement, t: f64) -> (f64, f64) {
    let mu = SingularValueFunction::of(f);
    let integral = mu.integral_to(t);
    let sup = mu.sup();
    let mut candidates: Vec<f64> = mu.atoms().iter().map(|&(v, _)| v).collect();
    candidates.push(0.0);
    let mut best = f64::INFINITY;
    for c in candidates {
        let l1: f64 = mu.atoms().iter().map(|&(v, w)| w * (v - c).max(0.0)).sum();
        best = best.min(l1 + t * c.min(sup));
    }
    (integral, best)
}

/// The classical K-profile of an algebra element on a t-grid. Its density is
/// the singular value function.
pub fn k_profile(f: &AlgebraElement, grid: &[f64]) -> Result<KProfile, InterpError> {
    let values: Vec<f64> = grid.iter().map(|&t| k_functional(f, t)).collect();
    let k0 = richardson_zero(|t| k_functional(f, t));
    KProfile::from_curve(grid.to_vec(), values, k0)
}

/// `K(0+)` by evaluation at `t = 1e-8` with one Richardson step in `√t`
/// (the modified curve carries a `√t` component).
fn richardson_zero(k: impl Fn(f64) -> f64) -> f64 {
    let t1 = 1e-8;
    let t2 = t1 / 4.0;
    (2.0 * k(t2) - k(t1)).max(0.0)
}

/// The modified K̃-functional of an `X_{1+∞}` element over a frozen
/// decomposition family:
///
/// ```text
/// K̃(x, t) = min over family of ‖·‖₁ + √t(‖·‖₂ + ‖·‖₂) + t‖·‖∞.
/// ```
///
/// Each member's objective is concave in `t`, so the pointwise minimum over
/// the frozen family is concave, nonnegative, and nondecreasing by
/// construction.
pub fn modified_k_profile(
    x: &IotaSum,
    grid: &[f64],
    candidates: usize,
) -> Result<KProfile, InterpError> {
    let family = decomposition_family(x, candidates);
    let eval = |t: f64| {
        family
            .iter()
            .map(|q| q.weighted(t))
            .fold(f64::INFINITY, f64::min)
    };
    let values: Vec<f64> = grid.iter().map(|&t| eval(t)).collect();
    let k0 = richardson_zero(eval);
    KProfile::from_curve(grid.to_vec(), values, k0)
}

/// A monotone Riesz–Fischer norm on the cone of nonnegative decreasing step
/// functions on `(0, ∞)`.
#[derive(Clone, Debug)]
pub enum RieszFischerNormSpec {
    Lq(f64),
    LInf,
    Orlicz(OrliczFunction),
}

impl RieszFischerNormSpec {
    pub fn lq(q: f64) -> Result<Self, InterpError> {
        if !(1.0..f64::INFINITY).contains(&q) {
            return Err(InterpError::BadExponent { q });
        }
        Ok(RieszFischerNormSpec::Lq(q))
    }

    /// Apply the norm to a `(value, width)` step function, exactly
    /// (piecewise integration for `L^q`, Luxemburg bisection for Orlicz).
    pub fn apply_steps(&self, steps: &[(f64, f64)]) -> f64 {
        match self {
            RieszFischerNormSpec::Lq(q) => steps
                .iter()
                .map(|&(v, w)| v.powf(*q) * w)
                .sum::<f64>()
                .powf(1.0 / q),
            RieszFischerNormSpec::LInf => steps.iter().map(|&(v, _)| v).fold(0.0, f64::max),
            RieszFischerNormSpec::Orlicz(psi) => luxemburg_norm_of_profile(
                &SingularValueFunction::from_weighted(steps.to_vec()),
                psi,
            ),
        }
    }

    /// Registration property check: the three monotone Riesz–Fischer bullets
    /// (Hardy-domination closure, indicator finiteness with an explicit
    /// pairing constant, countable subadditivity) over a fixed family of
    /// decreasing step functions.
    pub fn validate(&self) -> Result<(), InterpError> {
        let samples: Vec<Vec<(f64, f64)>> = vec![
            vec![(3.0, 1.0), (1.0, 1.0)],
            vec![(2.0, 0.5), (1.5, 2.0), (0.25, 4.0)],
            vec![(1.0, 0.1)],
            vec![(5.0, 0.2), (4.0, 0.2), (0.5, 8.0)],
        ];
        let integral_to = |steps: &[(f64, f64)], t: f64| {
            let mut left = t;
            let mut acc = 0.0;
            for &(v, w) in steps {
                let d = left.min(w);
                acc += v * d;
                left -= d;
                if left <= 0.0 {
                    break;
                }
            }
            acc
        };
        // Hardy-type domination: averaging a decreasing step spreads mass
        // rightward, giving ∫₀ᵗ g ≤ ∫₀ᵗ f for all t; the norm must not grow.
        for f in &samples {
            let total: f64 = f.iter().map(|&(v, w)| v * w).sum();
            let width: f64 = f.iter().map(|&(_, w)| w).sum();
            let g = vec![(total / width, width)];
            for t in [width * 0.25, width * 0.5, width] {
                if integral_to(&g, t) > integral_to(f, t) * (1.0 + 1e-12) {
                    return Err(InterpError::BadNormSpec {
                        what: "averaging produced a non-dominated test pair",
                    });
                }
            }
            let rf = self.apply_steps(f);
            let rg = self.apply_steps(&g);
            if rf.is_finite() && rg > rf * (1.0 + 1e-9) {
                return Err(InterpError::BadNormSpec {
                    what: "hardy-domination closure",
                });
            }
        }
        // Indicator finiteness plus the pairing constant: ∫_E f ≤ C_E ρ(f).
        for m in [0.5, 1.0, 8.0] {
            let chi = vec![(1.0, m)];
            let r = self.apply_steps(&chi);
            if !r.is_finite() || r <= 0.0 {
                return Err(InterpError::BadNormSpec {
                    what: "indicator norm must be positive and finite",
                });
            }
            let c_e = match self {
                RieszFischerNormSpec::Lq(q) => m.powf(1.0 - 1.0 / q),
                RieszFischerNormSpec::LInf => m,
                RieszFischerNormSpec::Orlicz(psi) => {
                    crate::fundamental::FundamentalFunction::orlicz(psi.conjugate()).eval(m)
                }
            };
            for f in &samples {
                let int_e = integral_to(f, m);
                let rf = self.apply_steps(f);
                if int_e > c_e * rf * (1.0 + 1e-9) {
                    return Err(InterpError::BadNormSpec {
                        what: "indicator pairing constant",
                    });
                }
            }
        }
        // Countable subadditivity on the sampled sequence (pointwise sum on
        // merged breakpoints).
        let mut cuts: Vec<f64> = vec![0.0];
        for g in &samples {
            let mut acc = 0.0;
            for &(_, w) in g {
                acc += w;
                cuts.push(acc);
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let value_at = |steps: &[(f64, f64)], t: f64| {
            let mut acc = 0.0;
            for &(v, w) in steps {
                acc += w;
                if t < acc {
                    return v;
                }
            }
            0.0
        };
        let mut sum_steps = Vec::new();
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let v: f64 = samples.iter().map(|g| value_at(g, mid)).sum();
            sum_steps.push((v, w[1] - w[0]));
        }
        let lhs = self.apply_steps(&sum_steps);
        let rhs: f64 = samples.iter().map(|g| self.apply_steps(g)).sum();
        if lhs > rhs * (1.0 + 1e-9) {
            return Err(InterpError::BadNormSpec {
                what: "countable subadditivity",
            });
        }
        Ok(())
    }
}

/// `ρ(k̃(f, ·))` — the proposed Riesz–Fischer space quantity for a profile.
pub fn riesz_fischer_norm(spec: &RieszFischerNormSpec, profile: &KProfile) -> f64 {
    if matches!(spec, RieszFischerNormSpec::LInf) {
        // The sup of the density is its value at 0+.
        return profile
            .density()
            .iter()
            .cloned()
            .fold(0.0, f64::max);
    }
    spec.apply_steps(&profile.density_steps())
}
