//! Orlicz functions and their calculus: evaluation in the extended reals,
//! the right-continuous inverse, and convex conjugation.
//!
//! An Orlicz function is a convex `ψ : [0,∞) → [0,∞]` with `ψ(0) = 0`,
//! nondecreasing, tending to `∞`, neither identically zero nor identically
//! infinite on `(0,∞)`, and left-continuous at
//! `b_ψ = sup{u : ψ(u) < ∞}`.
//!
//! Builtins close under conjugation:
//!
//! * `c·t^p` (p > 1)  ↔  `c'·t^{p'}` with `1/p + 1/p' = 1`
//! * `c·t`            ↔  cap-at-`c` (zero on `[0,c]`, `∞` beyond)
//! * `t` on `[0,1]`, `∞` beyond  ↔  `0` on `[0,1]`, `t−1` beyond
//!
//! User functions come in as convex knot tables and conjugate numerically
//! (log-grid supremum with golden-section refinement).

use serde::{Deserialize, Serialize};

use crate::geometry::QuasiConcaveProfile;
use crate::numeric::{bisect_sup, golden_max, log_grid};

/// Validation failures for user-supplied Orlicz data.
#[derive(Debug, thiserror::Error)]
pub enum OrliczError {
    #[error("knot table needs at least two knots starting at (0, 0)")]
    BadKnots,
    #[error("knot table is not convex at knot {index}")]
    NotConvex { index: usize },
    #[error("knot table is not nondecreasing at knot {index}")]
    NotMonotone { index: usize },
    #[error("b_psi must not cut the knot range (b_psi = {b_psi})")]
    BadCap { b_psi: f64 },
    #[error("function never reaches infinity: final slope and cap both trivial")]
    Bounded,
    #[error("power exponent must satisfy 1 <= p < infinity (got {p})")]
    BadExponent { p: f64 },
}

/// A convex knot table `(t_i, ψ(t_i))` with optional finite `b_ψ`.
///
/// Evaluation is piecewise linear; past the last knot the final segment is
/// extended by its slope, or the value jumps to `∞` beyond a declared cap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotTable {
    pub knots: Vec<(f64, f64)>,
    /// `None` means `b_ψ = ∞`.
    pub cap: Option<f64>,
}

/// An Orlicz function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum OrliczFunction {
    /// `coef · t^p`, `p > 1`.
    ScaledPower { coef: f64, p: f64 },
    /// `slope · t` (the `p = 1` case, kept separate: its conjugate is a cap).
    Linear { slope: f64 },
    /// `0` on `[0, cap]`, `∞` beyond (`cap = 1` is the L∞ function).
    CapInf { cap: f64 },
    /// `t` on `[0,1]`, `∞` beyond — the `L¹ ∩ L∞` function.
    OneCapInf,
    /// `0` on `[0,1]`, `t−1` beyond — the `L¹ + L∞` function.
    OnePlusInf,
    /// User table.
    Table(KnotTable),
    /// Numeric conjugate of an arbitrary Orlicz function.
    NumericConjugate(Box<OrliczFunction>),
    /// `ψ₀` reconstructed from a concave fundamental-function profile:
    /// zero on `[0, 1/d]`, `1/φ₀^{-1}(1/t)` in between, `∞` from
    /// `1/φ₀(0+)` on.
    FromFundamental(QuasiConcaveProfile),
}

impl OrliczFunction {
    pub fn power(p: f64) -> Result<Self, OrliczError> {
        if !(1.0..f64::INFINITY).contains(&p) {
            return Err(OrliczError::BadExponent { p });
        }
        if p == 1.0 {
            Ok(OrliczFunction::Linear { slope: 1.0 })
        } else {
            Ok(OrliczFunction::ScaledPower { coef: 1.0, p })
        }
    }

    /// The L∞ function `ψ_∞`: zero on `[0,1]`, `∞` beyond.
    pub fn linf() -> Self {
        OrliczFunction::CapInf { cap: 1.0 }
    }

    pub fn table(knots: Vec<(f64, f64)>, cap: Option<f64>) -> Result<Self, OrliczError> {
        let t = KnotTable { knots, cap };
        t.validate()?;
        Ok(OrliczFunction::Table(t))
    }

    /// `ψ(t)` in `[0, ∞]`.
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        match self {
            OrliczFunction::ScaledPower { coef, p } => coef * t.powf(*p),
            OrliczFunction::Linear { slope } => slope * t,
            OrliczFunction::CapInf { cap } => {
                if t <= *cap {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            OrliczFunction::OneCapInf => {
                if t <= 1.0 {
                    t
                } else {
                    f64::INFINITY
                }
            }
            OrliczFunction::OnePlusInf => (t - 1.0).max(0.0),
            OrliczFunction::Table(tab) => tab.eval(t),
            OrliczFunction::NumericConjugate(inner) => inner.conjugate_eval(t),
            OrliczFunction::FromFundamental(profile) => psi0_eval(profile, t),
        }
    }

    /// `b_ψ = sup{u : ψ(u) < ∞}` (possibly `∞`).
    pub fn cap(&self) -> f64 {
        match self {
            OrliczFunction::ScaledPower { .. }
            | OrliczFunction::Linear { .. }
            | OrliczFunction::OnePlusInf => f64::INFINITY,
            OrliczFunction::CapInf { cap } => *cap,
            OrliczFunction::OneCapInf => 1.0,
            OrliczFunction::Table(tab) => tab.cap.unwrap_or(f64::INFINITY),
            OrliczFunction::NumericConjugate(inner) => {
                // ψ* is finite wherever u stays below the asymptotic slope of ψ.
                match inner.asymptotic_slope() {
                    s if s.is_infinite() => f64::INFINITY,
                    s => s,
                }
            }
            OrliczFunction::FromFundamental(profile) => {
                let phi0plus = profile.value_at_zero();
                if phi0plus > 0.0 {
                    1.0 / phi0plus
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Slope of `ψ` at `+∞` (`∞` for superlinear growth); only meaningful for
    /// functions finite on all of `[0,∞)`.
    fn asymptotic_slope(&self) -> f64 {
        match self {
            OrliczFunction::ScaledPower { .. } => f64::INFINITY,
            OrliczFunction::Linear { slope } => *slope,
            OrliczFunction::OnePlusInf => 1.0,
            OrliczFunction::CapInf { .. } | OrliczFunction::OneCapInf => f64::INFINITY,
            OrliczFunction::Table(tab) => {
                if tab.cap.is_some() {
                    f64::INFINITY
                } else {
                    tab.final_slope()
                }
            }
            _ => {
                // Generic numeric estimate.
                let a = self.eval(1e12);
                let b = self.eval(2e12);
                if !a.is_finite() || !b.is_finite() {
                    f64::INFINITY
                } else {
                    (b - a) / 1e12
                }
            }
        }
    }

    /// Right-continuous inverse `ψ^{-1}(y) = sup{s : ψ(s) ≤ y}`.
    ///
    /// Closed forms for builtins; bisection on `[0, b_ψ]` otherwise, with
    /// ties at flat segments resolving to the supremum.
    pub fn inverse(&self, y: f64) -> f64 {
        debug_assert!(y >= 0.0);
        if y.is_infinite() {
            return self.cap();
        }
        match self {
            OrliczFunction::ScaledPower { coef, p } => (y / coef).powf(1.0 / p),
            OrliczFunction::Linear { slope } => y / slope,
            OrliczFunction::CapInf { cap } => *cap,
            OrliczFunction::OneCapInf => y.min(1.0),
            OrliczFunction::OnePlusInf => 1.0 + y,
            _ => {
                // Bracket: ψ(hi) > y (if b_ψ = ∞ grow geometrically).
                let cap = self.cap();
                let mut hi = if cap.is_finite() { cap } else { 1.0 };
                if !cap.is_finite() {
                    let mut guard = 0;
                    while self.eval(hi) <= y && guard < 4200 {
                        hi *= 2.0;
                        guard += 1;
                    }
                    if self.eval(hi) <= y {
                        return f64::INFINITY;
                    }
                }
                bisect_sup(|s| self.eval(s) <= y, 0.0, hi, 200)
            }
        }
    }

    /// The complementary function `ψ*(u) = sup_{v>0}(uv − ψ(v))`.
    pub fn conjugate(&self) -> OrliczFunction {
        match self {
            OrliczFunction::ScaledPower { coef, p } => {
                // sup_v (uv - c v^p) = c' u^q, q = p/(p-1),
                // c' = (p-1) p^{-q} c^{1-q}.
                let q = p / (p - 1.0);
                let cq = (p - 1.0) * p.powf(-q) * coef.powf(1.0 - q);
                OrliczFunction::ScaledPower { coef: cq, p: q }
            }
            OrliczFunction::Linear { slope } => OrliczFunction::CapInf { cap: *slope },
            OrliczFunction::CapInf { cap } => OrliczFunction::Linear { slope: *cap },
            OrliczFunction::OneCapInf => OrliczFunction::OnePlusInf,
            OrliczFunction::OnePlusInf => OrliczFunction::OneCapInf,
            other => OrliczFunction::NumericConjugate(Box::new(other.clone())),
        }
    }

    /// Evaluate `(self)*(u)` numerically: supremum of `uv − ψ(v)` over a log
    /// grid `v ∈ [1e-10, 1e10]` (clipped to `[0, b_ψ]`, knots included), then
    /// golden-section refinement around the grid argmax.
    fn conjugate_eval(&self, u: f64) -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        let cap = self.cap();
        if !cap.is_finite() {
            let slope = self.asymptotic_slope();
            if slope.is_finite() && u > slope {
                return f64::INFINITY;
            }
        }
        let hi = if cap.is_finite() { cap } else { 1e10 };
        let mut vs = log_grid(1e-10, hi, 2000);
        if let OrliczFunction::Table(tab) = self {
            vs.extend(tab.knots.iter().map(|k| k.0).filter(|&t| t > 0.0 && t <= hi));
        }
        vs.push(hi);
        let objective = |v: f64| {
            let pv = self.eval(v);
            if pv.is_finite() {
                u * v - pv
            } else {
                f64::NEG_INFINITY
            }
        };
        let mut best_v = vs[0];
        let mut best = objective(best_v);
        for &v in &vs[1..] {
            let o = objective(v);
            if o > best {
                best = o;
                best_v = v;
            }
        }
        let (lo, hi2) = ((best_v / 4.0).max(1e-12), (best_v * 4.0).min(hi.max(1e-12)));
        let (_, refined) = golden_max(objective, lo, hi2, 120);
        best.max(refined).max(0.0)
    }

    /// Spot validation of the Orlicz axioms on a log grid: nonnegative,
    /// `ψ(0)=0`, nondecreasing, convex within `1e-12·scale`, nontrivial.
    pub fn validate_axioms(&self) -> Result<(), OrliczError> {
        let grid = log_grid(1e-6, 1e6, 241);
        let vals: Vec<f64> = grid.iter().map(|&t| self.eval(t)).collect();
        let scale = vals
            .iter()
            .cloned()
            .filter(|v| v.is_finite())
            .fold(1.0, f64::max);
        let mut some_positive_finite = false;
        let mut some_finite = false;
        for (i, w) in vals.windows(2).enumerate() {
            if w[1] < w[0] - 1e-12 * scale {
                return Err(OrliczError::NotMonotone { index: i });
            }
            if w[0].is_finite() {
                some_finite = true;
                if w[0] > 0.0 {
                    some_positive_finite = true;
                }
            }
        }
        // Convexity via slopes on consecutive triples (finite region only).
        for i in 0..grid.len().saturating_sub(2) {
            let (t0, t1, t2) = (grid[i], grid[i + 1], grid[i + 2]);
            let (y0, y1, y2) = (vals[i], vals[i + 1], vals[i + 2]);
            if y0.is_finite() && y1.is_finite() && y2.is_finite() {
                let s01 = (y1 - y0) / (t1 - t0);
                let s12 = (y2 - y1) / (t2 - t1);
                if s12 < s01 - 1e-9 * (1.0 + s01.abs()) {
                    return Err(OrliczError::NotConvex { index: i });
                }
            }
        }
        if !(some_positive_finite || vals.iter().any(|v| v.is_infinite())) || !some_finite {
            return Err(OrliczError::Bounded);
        }
        Ok(())
    }
}

impl KnotTable {
    pub fn validate(&self) -> Result<(), OrliczError> {
        if self.knots.len() < 2 || self.knots[0] != (0.0, 0.0) {
            return Err(OrliczError::BadKnots);
        }
        let mut prev_slope = f64::NEG_INFINITY;
        for i in 1..self.knots.len() {
            let (t0, y0) = self.knots[i - 1];
            let (t1, y1) = self.knots[i];
            if t1 <= t0 {
                return Err(OrliczError::BadKnots);
            }
            if y1 < y0 {
                return Err(OrliczError::NotMonotone { index: i });
            }
            let slope = (y1 - y0) / (t1 - t0);
            let scale = 1.0 + slope.abs().max(prev_slope.abs());
            if slope < prev_slope - 1e-12 * scale {
                return Err(OrliczError::NotConvex { index: i });
            }
            prev_slope = slope;
        }
        if let Some(b) = self.cap {
            if b < self.knots.last().unwrap().0 {
                return Err(OrliczError::BadCap { b_psi: b });
            }
        } else if self.final_slope() <= 0.0 {
            return Err(OrliczError::Bounded);
        }
        Ok(())
    }

    fn final_slope(&self) -> f64 {
        let n = self.knots.len();
        let (t0, y0) = self.knots[n - 2];
        let (t1, y1) = self.knots[n - 1];
        (y1 - y0) / (t1 - t0)
    }

    fn eval(&self, t: f64) -> f64 {
        if let Some(b) = self.cap {
            if t > b {
                return f64::INFINITY;
            }
        }
        let last = self.knots.len() - 1;
        if t >= self.knots[last].0 {
            let (tl, yl) = self.knots[last];
            return yl + self.final_slope() * (t - tl);
        }
        // Binary search for the segment containing t.
        let mut lo = 0usize;
        let mut hi = last;
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
}

/// `ψ₀` evaluation from a concave profile `φ₀` (see the construction of an
/// Orlicz function from a fundamental function): zero on `[0, 1/d]`,
/// `1/φ₀^{-1}(1/t)` strictly between the cutoffs, `∞` past `1/φ₀(0+)`.
/// Values at the cutoffs follow left-continuity at `b_ψ`.
fn psi0_eval(profile: &QuasiConcaveProfile, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let d = profile.limit_at_infinity();
    let phi0plus = profile.value_at_zero();
    let lower = if d.is_infinite() { 0.0 } else { 1.0 / d };
    let upper = if phi0plus > 0.0 {
        1.0 / phi0plus
    } else {
        f64::INFINITY
    };
    if t <= lower {
        return 0.0;
    }
    if t > upper {
        return f64::INFINITY;
    }
    let inv = profile.inverse(1.0 / t);
    if inv <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rel_gap;

    fn psi_p(p: f64) -> OrliczFunction {
        OrliczFunction::power(p).unwrap()
    }

    #[test]
    fn inverse_of_square_is_square_root() {
        assert!((psi_p(2.0).inverse(4.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_one_cap_inf_is_min_with_one() {
        // sup over {v : ψ(v) ≤ s} picks min(s, 1).
        for s in [0.5, 3.0] {
            let inv = OrliczFunction::OneCapInf.inverse(s);
            assert!((inv - s.min(1.0)).abs() < 1e-12, "s={s} inv={inv}");
        }
    }

    #[test]
    fn inverse_linf_at_zero_is_one() {
        assert!((OrliczFunction::linf().inverse(0.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conjugate_of_square() {
        // sup_v (uv - v^2) = u^2/4.
        let conj = psi_p(2.0).conjugate();
        for u in [0.1, 1.0, 7.5] {
            assert!(rel_gap(conj.eval(u), u * u / 4.0) < 1e-14);
        }
    }

    #[test]
    fn conjugate_pairs_one_cap_one_plus() {
        // sup_{v<=1}(uv - v) = max(0, u-1).
        let conj = OrliczFunction::OneCapInf.conjugate();
        assert_eq!(conj, OrliczFunction::OnePlusInf);
        let back = conj.conjugate();
        assert_eq!(back, OrliczFunction::OneCapInf);
    }

    #[test]
    fn conjugate_of_l1_is_linf() {
        assert_eq!(psi_p(1.0).conjugate(), OrliczFunction::linf());
    }

    #[test]
    fn biconjugate_of_powers_closed_form() {
        for p in [1.5, 2.0, 3.0, 4.0] {
            let psi = psi_p(p);
            let bi = psi.conjugate().conjugate();
            for t in log_grid(1e-2, 1e2, 41) {
                assert!(
                    rel_gap(bi.eval(t), psi.eval(t)) < 1e-12,
                    "p={p} t={t}: {} vs {}",
                    bi.eval(t),
                    psi.eval(t)
                );
            }
        }
    }

    #[test]
    fn numeric_biconjugate_of_table_tracks_original() {
        // ψ(t) = t^2 sampled as a fine table; ψ** should reproduce it to 1e-6
        // relative on [0.01, 100].
        let knots: Vec<(f64, f64)> = std::iter::once((0.0, 0.0))
            .chain(log_grid(1e-4, 2e3, 400).into_iter().map(|t| (t, t * t)))
            .collect();
        let tab = OrliczFunction::table(knots, None).unwrap();
        let bi = tab.conjugate().conjugate();
        for t in [0.01, 0.1, 1.0, 10.0, 100.0] {
            let got = bi.eval(t);
            // The biconjugate reproduces the table itself (already convex
            // lsc); the table in turn tracks t^2 to its chord error.
            let want = tab.eval(t);
            assert!(
                (got - want).abs() <= 1e-6 * want.max(1e-4),
                "t={t}: {got} vs {want}"
            );
            assert!((got - t * t).abs() <= 1e-3 * (t * t).max(1e-4));
        }
    }

    #[test]
    fn young_inequality_gap_nonnegative() {
        let functions = vec![
            psi_p(1.0),
            psi_p(2.0),
            psi_p(3.0),
            OrliczFunction::OneCapInf,
            OrliczFunction::OnePlusInf,
            OrliczFunction::linf(),
        ];
        for psi in &functions {
            let conj = psi.conjugate();
            for s in log_grid(1e-3, 10.0, 25) {
                for t in log_grid(1e-3, 10.0, 25) {
                    let lhs = psi.eval(s) + conj.eval(t);
                    if lhs.is_infinite() {
                        continue;
                    }
                    assert!(
                        lhs - s * t >= -1e-10 * (1.0 + s * t),
                        "young violated for s={s} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_composition_bounds() {
        let functions = vec![
            psi_p(2.0),
            psi_p(3.0),
            OrliczFunction::OneCapInf,
            OrliczFunction::OnePlusInf,
            OrliczFunction::table(vec![(0.0, 0.0), (1.0, 0.5), (2.0, 2.0), (3.0, 5.0)], None)
                .unwrap(),
        ];
        for psi in &functions {
            for t in log_grid(1e-3, 1e3, 61) {
                let y = psi.eval(t);
                if y.is_finite() {
                    assert!(psi.inverse(y) >= t * (1.0 - 1e-12), "psi^-1(psi(t)) >= t");
                }
                let s = psi.inverse(t);
                if s.is_finite() {
                    let back = psi.eval(s);
                    assert!(
                        back <= t * (1.0 + 1e-12) + 1e-300,
                        "psi(psi^-1(t)) <= t: {back} vs {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn table_rejects_nonconvex() {
        let err = OrliczFunction::table(vec![(0.0, 0.0), (1.0, 2.0), (2.0, 3.0)], None);
        assert!(matches!(err, Err(OrliczError::NotConvex { index: 2 })));
    }

    #[test]
    fn table_cap_jumps_to_infinity() {
        let tab =
            OrliczFunction::table(vec![(0.0, 0.0), (1.0, 1.0)], Some(2.0)).unwrap();
        assert_eq!(tab.eval(3.0), f64::INFINITY);
        assert!((tab.eval(2.0) - 2.0).abs() < 1e-15); // left-continuous at cap
        assert_eq!(tab.cap(), 2.0);
    }
}
