//! Step-element representation on a uniform t-grid with exact `e^{-t}dt`
//! cell masses and analytic exponential tails.
//!
//! Cells are sampled at midpoints; the left tail (whose measure is infinite)
//! and right tail extend the boundary samples with the declared exponents,
//! so distributions of profile-built elements stay correct for every level.

use std::sync::{Arc, OnceLock};

use crate::algebra::AlgebraElement;

use super::profile::ScalarProfile;
use super::{CrossedElement, CrossedError, CrossedModel};

#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub cells: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            t_min: -30.0,
            t_max: 30.0,
            cells: 4096,
        }
    }
}

impl GridSpec {
    /// Coarser grid for batch suites.
    pub fn coarse() -> Self {
        GridSpec {
            t_min: -30.0,
            t_max: 30.0,
            cells: 1024,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GridElement {
    model: Arc<CrossedModel>,
    t0: f64,
    step: f64,
    cells: Vec<AlgebraElement>,
    decay_left: f64,
    decay_right: f64,
    singvals: OnceLock<Vec<Vec<(f64, f64)>>>,
}

impl GridElement {
    pub fn sample(x: &CrossedElement, spec: GridSpec) -> GridElement {
        let step = (spec.t_max - spec.t_min) / spec.cells as f64;
        let cells = (0..spec.cells)
            .map(|i| x.value_at(spec.t_min + (i as f64 + 0.5) * step))
            .collect();
        let (decay_left, decay_right) = x.tail_exponents();
        GridElement {
            model: x.model().clone(),
            t0: spec.t_min,
            step,
            cells,
            decay_left,
            decay_right,
            singvals: OnceLock::new(),
        }
    }

    pub fn from_cells(
        model: Arc<CrossedModel>,
        t0: f64,
        step: f64,
        cells: Vec<AlgebraElement>,
        decay_left: f64,
        decay_right: f64,
    ) -> GridElement {
        GridElement {
            model,
            t0,
            step,
            cells,
            decay_left,
            decay_right,
            singvals: OnceLock::new(),
        }
    }

    pub fn model(&self) -> &Arc<CrossedModel> {
        &self.model
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn midpoint(&self, i: usize) -> f64 {
        self.t0 + (i as f64 + 0.5) * self.step
    }

    pub fn cell(&self, i: usize) -> &AlgebraElement {
        &self.cells[i]
    }

    fn t_right(&self) -> f64 {
        self.t0 + self.step * self.cells.len() as f64
    }

    fn cell_mass(&self, i: usize) -> f64 {
        let tl = self.t0 + self.step * i as f64;
        (-tl).exp() - (-(tl + self.step)).exp()
    }

    fn cell_singvals(&self) -> &Vec<Vec<(f64, f64)>> {
        self.singvals
            .get_or_init(|| self.cells.iter().map(|c| c.weighted_singular_values()).collect())
    }

    /// Relative quadrature bound for comparisons against closed forms: a
    /// level crossing is resolved to one cell, `|λ_grid − λ| ≲ (e^step − 1)·λ`
    /// per crossing.
    pub fn lambda_rel_bound(&self) -> f64 {
        (self.step.exp() - 1.0) * 2.0
    }

    /// `λ_s`: cell masses over the level set plus analytic tail terms.
    pub fn lambda(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for (i, sv) in self.cell_singvals().iter().enumerate() {
            let hit: f64 = sv.iter().filter(|&&(v, _)| v > s).map(|&(_, w)| w).sum();
            if hit > 0.0 {
                acc += hit * self.cell_mass(i);
            }
        }
        // Left tail: x(t) = X_0 · e^{αL (t − m_0)} for t < t0.
        let first = self.cell_singvals().first();
        if let Some(sv) = first {
            let al = self.decay_left;
            let m0 = self.midpoint(0);
            for &(v, w) in sv {
                if v <= 0.0 {
                    continue;
                }
                if al <= 0.0 {
                    // Constant or growing toward −∞: infinite measure as soon
                    // as the line can exceed s.
                    if (al == 0.0 && v > s) || al < 0.0 {
                        return f64::INFINITY;
                    }
                } else if al.is_finite() && s < v * ((self.t0 - m0) * al).exp() {
                    // Crossing strictly left of the grid.
                    let ell = m0 + (s / v).ln() / al;
                    acc += w * ((-ell).exp() - (-self.t0).exp());
                } else if al.is_finite() && s < v {
                    // Crossing inside [ell, t0) region collapsed: nothing to
                    // add (the grid cells already cover it).
                }
            }
        }
        // Right tail: x(t) = X_{n−1} · e^{αR (t − m_{n−1})} for t ≥ t1.
        if let Some(sv) = self.cell_singvals().last() {
            let ar = self.decay_right;
            let t1 = self.t_right();
            let m = self.midpoint(self.cells.len() - 1);
            for &(v, w) in sv {
                if v <= 0.0 {
                    continue;
                }
                if ar == 0.0 {
                    if v > s {
                        acc += w * (-t1).exp();
                    }
                } else if ar > 0.0 {
                    let ell = if s <= 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        m + (s / v).ln() / ar
                    };
                    acc += w * (-ell.max(t1)).exp();
                } else {
                    // Decaying to the right: finite window (t1, ell).
                    if s < v * ((t1 - m) * ar).exp() {
                        let ell = m + (s / v).ln() / ar;
                        acc += w * ((-t1).exp() - (-ell).exp());
                    }
                }
            }
        }
        acc
    }

    /// `μ_t` by bracketed bisection on the grid distribution.
    pub fn mu(&self, t: f64) -> Result<f64, CrossedError> {
        debug_assert!(t > 0.0);
        let mut hi = 1.0;
        let mut guard = 0;
        while self.lambda(hi) > t && hi < 1e290 && guard < 2000 {
            hi *= 2.0;
            guard += 1;
        }
        if self.lambda(hi) > t {
            return Err(CrossedError::Unbounded);
        }
        let mut lo = hi;
        guard = 0;
        while self.lambda(lo) <= t && lo > 1e-300 && guard < 2000 {
            lo *= 0.5;
            guard += 1;
        }
        if self.lambda(lo) <= t {
            return Ok(0.0);
        }
        Ok(crate::numeric::bisect_sup_log(
            |s| self.lambda(s) > t,
            lo,
            hi,
            220,
        ))
    }

    /// `τ_A(x)` for positive elements: cell masses times block traces, plus
    /// analytic tails (`∞` when a tail exponent makes `e^{(α−1)t}`
    /// non-integrable on its side).
    pub fn trace_tau_a(&self) -> f64 {
        let mut acc = 0.0;
        for (i, c) in self.cells.iter().enumerate() {
            acc += self.cell_mass(i) * c.trace().re;
        }
        let al = self.decay_left;
        let tr0 = self.cells.first().map(|c| c.trace().re).unwrap_or(0.0);
        if tr0.abs() > 0.0 {
            if al > 1.0 {
                // ∫_{-∞}^{t0} e^{-t} e^{α(t−m0)} dt = e^{-t0} e^{α(t0−m0)}/(α−1)
                acc += tr0 * (-self.t0).exp() * ((self.t0 - self.midpoint(0)) * al).exp()
                    / (al - 1.0);
            } else {
                return f64::INFINITY;
            }
        }
        let ar = self.decay_right;
        let trn = self.cells.last().map(|c| c.trace().re).unwrap_or(0.0);
        if trn.abs() > 0.0 {
            let t1 = self.t_right();
            let m = self.midpoint(self.cells.len() - 1);
            if ar < 1.0 {
                acc += trn * (-t1).exp() * ((t1 - m) * ar).exp() / (1.0 - ar);
            } else {
                return f64::INFINITY;
            }
        }
        acc
    }

    /// Value at an arbitrary time, using the step cells inside the window and
    /// the exponential tails outside.
    pub fn value_at(&self, t: f64) -> AlgebraElement {
        let n = self.cells.len();
        if t < self.t0 {
            let m0 = self.midpoint(0);
            return self.cells[0].scale_re(((t - m0) * self.decay_left).exp());
        }
        if t >= self.t_right() {
            let m = self.midpoint(n - 1);
            return self.cells[n - 1].scale_re(((t - m) * self.decay_right).exp());
        }
        let i = (((t - self.t0) / self.step).floor() as usize).min(n - 1);
        self.cells[i].clone()
    }

    /// Translation by an on-grid shift `s = k·step`.
    pub fn theta(&self, s: f64) -> Result<GridElement, CrossedError> {
        let kf = s / self.step;
        if (kf - kf.round()).abs() > 1e-9 {
            return Err(CrossedError::OffGrid { s, step: self.step });
        }
        let k = kf.round() as i64;
        let n = self.cells.len() as i64;
        let cells = (0..n)
            .map(|i| {
                let j = i - k;
                if (0..n).contains(&j) {
                    self.cells[j as usize].clone()
                } else {
                    self.value_at(self.midpoint(i as usize) - s)
                }
            })
            .collect();
        Ok(GridElement {
            model: self.model.clone(),
            t0: self.t0,
            step: self.step,
            cells,
            decay_left: self.decay_left,
            decay_right: self.decay_right,
            singvals: OnceLock::new(),
        })
    }

    /// Max relative deviation of `x(t−s)` from `e^{-ηs}·x(t)` over the
    /// overlap window, for each `s = k·step` in `shifts`.
    pub fn homogeneity_defect(&self, eta: f64, shifts: &[i64]) -> Result<f64, CrossedError> {
        let n = self.cells.len() as i64;
        let scale = self
            .cells
            .iter()
            .map(|c| c.frobenius())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        let mut worst = 0.0f64;
        for &k in shifts {
            if 2 * k.unsigned_abs() as i64 > n {
                return Err(CrossedError::Inconclusive);
            }
            let s = k as f64 * self.step;
            let damp = (-eta * s).exp();
            for i in 0..n {
                let j = i - k;
                if !(0..n).contains(&j) {
                    continue;
                }
                let lhs = &self.cells[j as usize];
                let rhs = self.cells[i as usize].scale_re(damp);
                let local = lhs.frobenius().max(rhs.frobenius());
                if local <= 1e-12 * scale {
                    continue;
                }
                worst = worst.max(lhs.distance(&rhs) / local);
            }
        }
        Ok(worst)
    }

    /// Multiply by `g(h)` on the chosen side, cellwise functional calculus.
    pub fn multiply_of_h(&self, g: &ScalarProfile, left: bool) -> GridElement {
        let cells = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let f = self.model.h_apply(self.midpoint(i), &|u| g.eval(u));
                if left {
                    f.mul(c)
                } else {
                    c.mul(&f)
                }
            })
            .collect();
        GridElement {
            model: self.model.clone(),
            t0: self.t0,
            step: self.step,
            cells,
            decay_left: self.decay_left + g.decay_exponent_zero(),
            decay_right: self.decay_right + g.growth_exponent_infinity(),
            singvals: OnceLock::new(),
        }
    }

    /// Right-multiply by the spectral cutoff `χ_{[0,δ]}(h)` with
    /// `log δ = ldelta`. The cutoff is computed through integer cell
    /// thresholds so that translated copies align exactly.
    pub fn cutoff_right(&self, ldelta: f64) -> GridElement {
        let cells = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let m = self.midpoint(i);
                let proj = AlgebraElement::new(
                    self.model.alg.clone(),
                    self.model
                        .rho_eigs()
                        .iter()
                        .map(|e| {
                            e.apply(|r| {
                                // r e^m ≤ δ ⟺ m ≤ ldelta − ln r, resolved on
                                // the shared cell index scale.
                                let limit = ldelta - r.ln();
                                let idx = ((limit - self.t0) / self.step - 0.5).floor();
                                let my = ((m - self.t0) / self.step - 0.5).round();
                                if my <= idx {
                                    1.0
                                } else {
                                    0.0
                                }
                            })
                        })
                        .collect(),
                )
                .unwrap();
                c.mul(&proj)
            })
            .collect();
        GridElement {
            model: self.model.clone(),
            t0: self.t0,
            step: self.step,
            cells,
            decay_left: self.decay_left,
            // Beyond the cutoff the cells vanish; the boundary sample used by
            // the right tail is zero, so the declared exponent is inert.
            decay_right: self.decay_right,
            singvals: OnceLock::new(),
        }
    }

    pub fn scale_re(&self, c: f64) -> GridElement {
        GridElement {
            model: self.model.clone(),
            t0: self.t0,
            step: self.step,
            cells: self.cells.iter().map(|x| x.scale_re(c)).collect(),
            decay_left: self.decay_left,
            decay_right: self.decay_right,
            singvals: OnceLock::new(),
        }
    }

    /// Max relative cellwise distance to another grid on the same layout.
    pub fn max_rel_distance(&self, other: &GridElement) -> f64 {
        assert_eq!(self.cells.len(), other.cells.len());
        let scale = self
            .cells
            .iter()
            .chain(&other.cells)
            .map(|c| c.frobenius())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        let mut worst = 0.0f64;
        for (a, b) in self.cells.iter().zip(&other.cells) {
            let local = a.frobenius().max(b.frobenius());
            if local <= 1e-12 * scale {
                continue;
            }
            worst = worst.max(a.distance(b) / local);
        }
        worst
    }
}
