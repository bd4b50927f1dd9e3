//! Exact closed-form evaluation of distributions in the model crossed
//! product, for elements whose matrix data commutes with the density.
//!
//! Each spectral line contributes `w / u₀(s)` to `λ_s`, where `u₀` is the
//! profile threshold — the `e^{-t}dt` measure of `{t : g(e^t) > s}` is
//! `1/u₀(s)` exactly.

use crate::algebra::AlgebraElement;
use crate::numeric::{bisect_sup_log, ediv};

use super::profile::ScalarProfile;
use super::{CrossedElement, CrossedError, Factor};

/// One spectral line: a trace weight and a monotone value profile in
/// `u = e^t`.
#[derive(Clone, Debug)]
pub struct Line {
    pub weight: f64,
    pub profile: ScalarProfile,
}

/// A crossed element reduced to spectral lines.
#[derive(Clone, Debug)]
pub struct LineElement {
    lines: Vec<Line>,
}

impl LineElement {
    pub fn new(lines: Vec<Line>) -> Self {
        LineElement { lines }
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// `λ_s = Σ_j w_j / u₀_j(s)` in the extended reals.
    pub fn lambda(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for line in &self.lines {
            let u0 = line.profile.threshold(s);
            let m = ediv(1.0, u0);
            if m.is_infinite() {
                return f64::INFINITY;
            }
            acc += line.weight * m;
        }
        acc
    }

    /// `μ_t = inf{s ≥ 0 : λ_s ≤ t}` by bracketed bisection on `s`.
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
        Ok(bisect_sup_log(|s| self.lambda(s) > t, lo, hi, 220))
    }
}

/// Distribution of `x(t) = e^{γt}·C`: the level set of the line `σ e^{γt}`
/// has measure `(σ/s)^{1/γ}` for `γ > 0`, is all of ℝ for `γ ≤ 0` whenever
/// the line is alive.
pub fn power_lambda(c: &AlgebraElement, gamma: f64, s: f64) -> f64 {
    let sw = c.weighted_singular_values();
    if gamma > 0.0 {
        if s <= 0.0 {
            return if sw.iter().any(|&(v, _)| v > 0.0) {
                f64::INFINITY
            } else {
                0.0
            };
        }
        sw.iter().map(|&(v, w)| w * (v / s).powf(1.0 / gamma)).sum()
    } else {
        let top = sw.iter().map(|&(v, _)| v).fold(0.0, f64::max);
        if gamma == 0.0 {
            if top > s {
                f64::INFINITY
            } else {
                0.0
            }
        } else if top > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }
}

/// `μ_t` of `x(t) = e^{γt}·C` in closed form: `(Σ w σ^{1/γ} / t)^{γ}` for
/// `γ > 0`, the operator norm for `γ = 0`.
pub fn power_mu(c: &AlgebraElement, gamma: f64, t: f64) -> Result<f64, CrossedError> {
    debug_assert!(t > 0.0);
    let sw = c.weighted_singular_values();
    if gamma > 0.0 {
        let p = 1.0 / gamma;
        let total: f64 = sw.iter().map(|&(v, w)| w * v.powf(p)).sum();
        Ok((total / t).powf(gamma))
    } else if gamma == 0.0 {
        Ok(sw.iter().map(|&(v, _)| v).fold(0.0, f64::max))
    } else if sw.iter().any(|&(v, _)| v > 0.0) {
        Err(CrossedError::Unbounded)
    } else {
        Ok(0.0)
    }
}

/// Attempt the spectral-line reduction of a crossed element.
pub fn lines_of(x: &CrossedElement) -> Option<LineElement> {
    let model = x.model();

    // Single product over blockwise-scalar ρ: matrices may be arbitrary,
    // since the profile factors act as scalars per block.
    if x.terms().len() == 1 && model.scalar_rho.iter().all(|s| s.is_some()) {
        let mut mats = AlgebraElement::identity(model.alg.clone());
        let mut profs: Vec<ScalarProfile> = Vec::new();
        for f in &x.terms()[0] {
            match f {
                Factor::Matrix(m) => mats = mats.mul(m),
                Factor::OfH(g) => profs.push(g.clone()),
            }
        }
        let mut lines = Vec::new();
        for (k, blk) in mats.blocks().iter().enumerate() {
            let r = model.scalar_rho[k].unwrap();
            let w = model.alg.blocks()[k].1;
            let scaled: Vec<ScalarProfile> =
                profs.iter().map(|g| g.clone().scaled(1.0, r)).collect();
            for s in crate::linalg::singular_values(blk) {
                lines.push(Line {
                    weight: w,
                    profile: ScalarProfile::Product(scaled.clone()).scaled(s, 1.0),
                });
            }
        }
        return Some(LineElement::new(lines));
    }

    // General route: every matrix factor diagonal in ρ's eigenbasis. Sums
    // need nonnegative real coefficients so that each line stays monotone.
    type TermData = Vec<(f64, Vec<ScalarProfile>)>;
    let nblocks = model.alg.blocks().len();
    let dims: Vec<usize> = model.alg.blocks().iter().map(|&(n, _)| n).collect();
    // per (block, index): list over terms of (coef, profile product)
    let mut per_line: Vec<Vec<TermData>> = dims.iter().map(|&n| vec![Vec::new(); n]).collect();
    let multi = x.terms().len() > 1;
    for fs in x.terms() {
        let mut coefs: Vec<Vec<num_complex::Complex64>> = dims
            .iter()
            .map(|&n| vec![num_complex::Complex64::new(1.0, 0.0); n])
            .collect();
        let mut profs: Vec<ScalarProfile> = Vec::new();
        for f in fs {
            match f {
                Factor::Matrix(m) => {
                    let diag = super::diagonal_in_rho_basis(model, m)?;
                    for (k, d) in diag.iter().enumerate() {
                        for (i, z) in d.iter().enumerate() {
                            coefs[k][i] *= z;
                        }
                    }
                }
                Factor::OfH(g) => profs.push(g.clone()),
            }
        }
        for k in 0..nblocks {
            for (i, line) in per_line[k].iter_mut().enumerate() {
                let z = coefs[k][i];
                let coef = if multi {
                    if z.im.abs() > 1e-12 * (1.0 + z.norm()) || z.re < -1e-12 {
                        return None;
                    }
                    z.re.max(0.0)
                } else {
                    z.norm()
                };
                let r = model.rho_eigs[k].values[i];
                let scaled: Vec<ScalarProfile> =
                    profs.iter().map(|g| g.clone().scaled(1.0, r)).collect();
                line.push((coef, scaled));
            }
        }
    }
    let mut lines = Vec::new();
    for k in 0..nblocks {
        let w = model.alg.blocks()[k].1;
        for terms in &per_line[k] {
            let parts: Vec<ScalarProfile> = terms
                .iter()
                .map(|(coef, profs)| {
                    ScalarProfile::Product(profs.clone()).scaled(*coef, 1.0)
                })
                .collect();
            let profile = if parts.len() == 1 {
                parts.into_iter().next().unwrap()
            } else {
                ScalarProfile::Sum(parts)
            };
            lines.push(Line { weight: w, profile });
        }
    }
    Some(LineElement::new(lines))
}
