//! Monotone scalar profiles `[0,∞) → [0,∞]` used as functional-calculus
//! arguments on the dual-weight density `h(t) = ρ e^t`.
//!
//! The workhorse is `threshold(c) = inf{u > 0 : g(u) > c}`: the `e^{-t} dt`
//! measure of `{t : g(e^t) > c}` is exactly `1/threshold(c)`, which is what
//! makes distribution functions in the model crossed product exact. For
//! Luxemburg-derived fundamental functions the threshold has the closed form
//! `1/ψ(1/c)`.

use crate::fundamental::FundamentalFunction;
use crate::numeric::{bisect_sup_log, ediv};

/// Monotone nondecreasing profile in the extended reals.
#[derive(Clone, Debug)]
pub enum ScalarProfile {
    Constant(f64),
    /// `coef · u^alpha` with `alpha ≥ 0`.
    Power { coef: f64, alpha: f64 },
    /// `ff(u)^pow` with `pow > 0`.
    Fundamental { ff: FundamentalFunction, pow: f64 },
    /// `val · inner(arg · u)`.
    Scaled { val: f64, arg: f64, inner: Box<ScalarProfile> },
    Sum(Vec<ScalarProfile>),
    Product(Vec<ScalarProfile>),
}

impl ScalarProfile {
    pub fn fundamental(ff: FundamentalFunction) -> Self {
        ScalarProfile::Fundamental { ff, pow: 1.0 }
    }

    pub fn fundamental_sqrt(ff: FundamentalFunction) -> Self {
        ScalarProfile::Fundamental { ff, pow: 0.5 }
    }

    pub fn power(alpha: f64) -> Self {
        ScalarProfile::Power { coef: 1.0, alpha }
    }

    pub fn scaled(self, val: f64, arg: f64) -> Self {
        ScalarProfile::Scaled {
            val,
            arg,
            inner: Box::new(self),
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        debug_assert!(u >= 0.0);
        match self {
            ScalarProfile::Constant(c) => *c,
            ScalarProfile::Power { coef, alpha } => {
                if *alpha == 0.0 {
                    *coef
                } else {
                    coef * u.powf(*alpha)
                }
            }
            ScalarProfile::Fundamental { ff, pow } => {
                if u == 0.0 {
                    return self.limit_at_zero();
                }
                let v = ff.eval(u);
                if *pow == 1.0 {
                    v
                } else {
                    v.powf(*pow)
                }
            }
            ScalarProfile::Scaled { val, arg, inner } => {
                let v = inner.eval(arg * u);
                if *val == 0.0 { 0.0 } else { val * v }
            }
            ScalarProfile::Sum(parts) => parts.iter().map(|p| p.eval(u)).sum(),
            ScalarProfile::Product(parts) => {
                let mut acc = 1.0;
                for p in parts {
                    let v = p.eval(u);
                    if v == 0.0 {
                        return 0.0;
                    }
                    acc *= v;
                }
                acc
            }
        }
    }

    /// `lim_{u→0+} g(u)`, analytically where it matters: fundamental
    /// functions tend to `1/b_ψ` at zero (for both norm variants).
    pub fn limit_at_zero(&self) -> f64 {
        match self {
            ScalarProfile::Constant(c) => *c,
            ScalarProfile::Power { coef, alpha } => {
                if *alpha == 0.0 {
                    *coef
                } else {
                    0.0
                }
            }
            ScalarProfile::Fundamental { ff, pow } => {
                let base = match ff {
                    FundamentalFunction::Luxemburg { psi }
                    | FundamentalFunction::OrliczNorm { psi, .. } => ediv(1.0, psi.cap()),
                    FundamentalFunction::User(p) => p.value_at_zero(),
                };
                base.powf(*pow)
            }
            ScalarProfile::Scaled { val, inner, .. } => {
                let v = inner.limit_at_zero();
                if *val == 0.0 { 0.0 } else { val * v }
            }
            ScalarProfile::Sum(parts) => parts.iter().map(|p| p.limit_at_zero()).sum(),
            ScalarProfile::Product(parts) => {
                let mut acc = 1.0;
                for p in parts {
                    let v = p.limit_at_zero();
                    if v == 0.0 {
                        return 0.0;
                    }
                    acc *= v;
                }
                acc
            }
        }
    }

    /// `inf{u > 0 : g(u) > c}` in `[0, ∞]`; the measure of the level set
    /// `{t : g(e^t) > c}` under `e^{-t}dt` is `1/threshold(c)`.
    pub fn threshold(&self, c: f64) -> f64 {
        debug_assert!(c >= 0.0);
        match self {
            ScalarProfile::Constant(v) => {
                if *v > c {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            ScalarProfile::Power { coef, alpha } => {
                if *alpha == 0.0 || *coef == 0.0 {
                    return if *coef > c { 0.0 } else { f64::INFINITY };
                }
                (c / coef).powf(1.0 / alpha)
            }
            ScalarProfile::Fundamental { ff, pow } => {
                let cc = if *pow == 1.0 { c } else { c.powf(1.0 / pow) };
                match ff {
                    FundamentalFunction::Luxemburg { psi } => {
                        // {u : φ_ψ(u) > c} = (1/ψ(1/c), ∞) — exact, including
                        // the extended-real edge cases.
                        ediv(1.0, psi.eval(ediv(1.0, cc)))
                    }
                    _ => self.threshold_generic(c),
                }
            }
            ScalarProfile::Scaled { val, arg, inner } => {
                if *val == 0.0 {
                    return f64::INFINITY;
                }
                inner.threshold(c / val) / arg
            }
            _ => self.threshold_generic(c),
        }
    }

    fn threshold_generic(&self, c: f64) -> f64 {
        if self.limit_at_zero() > c {
            return 0.0;
        }
        // Bracket the crossing in log-u space.
        let mut hi = 1.0;
        let mut guard = 0;
        while self.eval(hi) <= c && hi < 1e280 && guard < 2000 {
            hi *= 4.0;
            guard += 1;
        }
        if self.eval(hi) <= c {
            return f64::INFINITY;
        }
        let mut lo = hi;
        guard = 0;
        while self.eval(lo) > c && lo > 1e-280 && guard < 2000 {
            lo *= 0.25;
            guard += 1;
        }
        if self.eval(lo) > c {
            return 0.0;
        }
        bisect_sup_log(|u| self.eval(u) <= c, lo, hi, 200)
    }

    /// Log-slope near zero (tail exponent for grid truncation).
    pub fn decay_exponent_zero(&self) -> f64 {
        let u = 1e-60;
        let a = self.eval(u);
        let b = self.eval(u * 2.0);
        if a <= 0.0 || b <= 0.0 || !a.is_finite() || !b.is_finite() {
            // Either exactly zero near the origin (treat as steep decay) or a
            // flat positive limit.
            let l0 = self.limit_at_zero();
            if l0 > 0.0 {
                return 0.0;
            }
            return f64::INFINITY;
        }
        let e = (b / a).ln() / 2f64.ln();
        snap(e)
    }

    /// Log-slope near infinity.
    pub fn growth_exponent_infinity(&self) -> f64 {
        let u = 1e60;
        let a = self.eval(u);
        let b = self.eval(u * 2.0);
        if !a.is_finite() || !b.is_finite() || a <= 0.0 || b <= 0.0 {
            return 0.0;
        }
        let e = (b / a).ln() / 2f64.ln();
        snap(e)
    }
}

/// Snap near-rational slopes so exponent arithmetic stays exact for the
/// builtin power-law tails.
fn snap(e: f64) -> f64 {
    for denom in 1..=12u32 {
        let scaled = e * denom as f64;
        if (scaled - scaled.round()).abs() < 1e-9 {
            return scaled.round() / denom as f64;
        }
    }
    e
}
