//! The model crossed product `A = M ⊗ L∞(ℝ)` with trace
//! `τ_A = τ_M ⊗ ∫·e^{-t}dt`, dual action `θ_s` acting by translation
//! `t ↦ t−s`, and dual-weight density `h(t) = ρ e^t`.
//!
//! Elements are finite sums of ordered products of constant matrices and
//! functional-calculus profiles of `h`. Three evaluation strategies exist,
//! tried in order:
//!
//! 1. **power form** — every profile factor is a pure power, so
//!    `x(t) = e^{γt}·C` for a constant matrix `C` (the Haagerup elements);
//!    distributions are exact closed forms for arbitrary matrices.
//! 2. **lines** — the matrix data commutes with ρ (blockwise-scalar ρ, or
//!    everything diagonal in ρ's eigenbasis), so `|x(t)|` decomposes into
//!    monotone scalar profiles along spectral lines; distributions are exact
//!    via profile thresholds.
//! 3. **grid** — midpoint-sampled step elements on a uniform t-grid with
//!    exact cell masses `e^{-t_l} − e^{-t_r}` and declared tail exponents.

pub mod extreme;
pub mod grid;
pub mod lines;
pub mod ops;
pub mod profile;

pub use extreme::{norm_one_cap_inf, norm_one_plus_inf, pairing_duality, probe_triple_norm, IotaSum};
pub use grid::{GridElement, GridSpec};
pub use lines::LineElement;
pub use ops::{
    amemiya_via_lambda, embed_luxemburg, lux_via_mu1, membership, normability_norm, quasinorm_mu1,
    verify_dt_identity, verify_mainthm, MembershipVerdict, SpaceTag,
};
pub use profile::ScalarProfile;

use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, StateDensity, WeightedBlockAlgebra};
use crate::linalg::{CMatrix, HermEig};

#[derive(Debug, thiserror::Error)]
pub enum CrossedError {
    #[error("dual-weight density must be positive definite")]
    BadDensity,
    #[error("translation step {s} is not a multiple of the grid step {step}")]
    OffGrid { s: f64, step: f64 },
    #[error("element is unbounded: no finite level has finite distribution")]
    Unbounded,
    #[error("translated overlap window is shorter than half the grid")]
    Inconclusive,
    #[error("operation requires the tracial model (rho = identity)")]
    NotTracial,
    #[error("element failed the {space} membership test (max relative error {max_rel_err})")]
    NotMember { space: String, max_rel_err: f64 },
    #[error("normability requires a finite dilation integral for the conjugate index")]
    NotNormable,
}

/// The ambient model: algebra, dual-weight density `ρ`, and its cached
/// spectral data.
#[derive(Debug)]
pub struct CrossedModel {
    alg: Arc<WeightedBlockAlgebra>,
    rho: AlgebraElement,
    rho_eigs: Vec<HermEig>,
    /// `Some(r_k)` for blocks where `ρ_k = r_k·I`.
    scalar_rho: Vec<Option<f64>>,
    tracial: bool,
}

impl CrossedModel {
    /// Tracial model: `ρ = 1`, `h = 1 ⊗ e^t` (the semifinite picture).
    pub fn tracial(alg: Arc<WeightedBlockAlgebra>) -> Arc<Self> {
        let rho = AlgebraElement::identity(alg.clone());
        Self::with_density(rho).unwrap()
    }

    /// σ-finite model driven by a faithful normal state.
    pub fn with_state(state: &StateDensity) -> Arc<Self> {
        Self::with_density(state.element().clone()).unwrap()
    }

    /// General positive definite density.
    pub fn with_density(rho: AlgebraElement) -> Result<Arc<Self>, CrossedError> {
        let rho_eigs = rho.herm_eigs();
        if rho_eigs
            .iter()
            .any(|e| e.values.iter().any(|&v| v <= 0.0 || v.is_nan()))
        {
            return Err(CrossedError::BadDensity);
        }
        let scalar_rho = rho
            .blocks()
            .iter()
            .zip(&rho_eigs)
            .map(|(m, e)| {
                let r = e.values[0];
                let spread = e.values.iter().all(|&v| (v - r).abs() <= 1e-14 * r);
                if spread && m.is_diagonal(1e-14 * r) {
                    Some(r)
                } else {
                    None
                }
            })
            .collect::<Vec<_>>();
        let tracial = scalar_rho.iter().all(|s| matches!(s, Some(r) if (*r - 1.0).abs() < 1e-14));
        Ok(Arc::new(CrossedModel {
            alg: rho.algebra().clone(),
            rho,
            rho_eigs,
            scalar_rho,
            tracial,
        }))
    }

    pub fn algebra(&self) -> &Arc<WeightedBlockAlgebra> {
        &self.alg
    }

    pub fn rho(&self) -> &AlgebraElement {
        &self.rho
    }

    pub fn is_tracial(&self) -> bool {
        self.tracial
    }

    pub fn rho_eigs(&self) -> &[HermEig] {
        &self.rho_eigs
    }

    /// `f(ρ e^t)` at a fixed `t`, blockwise.
    pub fn h_apply(&self, t: f64, f: &dyn Fn(f64) -> f64) -> AlgebraElement {
        let et = t.exp();
        let blocks = self
            .rho_eigs
            .iter()
            .map(|e| e.apply(|r| f(r * et)))
            .collect();
        AlgebraElement::new(self.alg.clone(), blocks).unwrap()
    }

    /// `f(ρ)` blockwise.
    pub fn rho_apply(&self, f: &dyn Fn(f64) -> f64) -> AlgebraElement {
        let blocks = self.rho_eigs.iter().map(|e| e.apply(f)).collect();
        AlgebraElement::new(self.alg.clone(), blocks).unwrap()
    }
}

/// One factor of an ordered product.
#[derive(Clone, Debug)]
pub enum Factor {
    Matrix(AlgebraElement),
    /// Functional calculus `g(h)` on the density `h(t) = ρ e^t`.
    OfH(ScalarProfile),
}

/// An element of the model crossed product: a sum of ordered products.
#[derive(Clone, Debug)]
pub struct CrossedElement {
    model: Arc<CrossedModel>,
    terms: Vec<Vec<Factor>>,
}

impl CrossedElement {
    pub fn product(model: Arc<CrossedModel>, factors: Vec<Factor>) -> Self {
        CrossedElement {
            model,
            terms: vec![factors],
        }
    }

    /// The canonical embedding `π(b)`: the constant function `t ↦ b`.
    pub fn pi(model: Arc<CrossedModel>, b: AlgebraElement) -> Self {
        Self::product(model, vec![Factor::Matrix(b)])
    }

    /// `g(h)` itself.
    pub fn of_h(model: Arc<CrossedModel>, g: ScalarProfile) -> Self {
        Self::product(model, vec![Factor::OfH(g)])
    }

    /// Haagerup-type element `b·h^{1/p}`, i.e. `t ↦ b ρ^{1/p} e^{t/p}`.
    pub fn haagerup(model: Arc<CrossedModel>, b: AlgebraElement, p: f64) -> Self {
        debug_assert!(p >= 1.0);
        Self::product(
            model,
            vec![Factor::Matrix(b), Factor::OfH(ScalarProfile::power(1.0 / p))],
        )
    }

    /// Separable element `b · g(h)`.
    pub fn separable(model: Arc<CrossedModel>, b: AlgebraElement, g: ScalarProfile) -> Self {
        Self::product(model, vec![Factor::Matrix(b), Factor::OfH(g)])
    }

    pub fn model(&self) -> &Arc<CrossedModel> {
        &self.model
    }

    pub fn terms(&self) -> &[Vec<Factor>] {
        &self.terms
    }

    pub fn add(&self, other: &CrossedElement) -> CrossedElement {
        assert!(Arc::ptr_eq(&self.model, &other.model), "different models");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.clone());
        CrossedElement {
            model: self.model.clone(),
            terms,
        }
    }

    pub fn scale_re(&self, c: f64) -> CrossedElement {
        let scalar = AlgebraElement::identity(self.model.alg.clone()).scale_re(c);
        let terms = self
            .terms
            .iter()
            .map(|fs| {
                let mut v = vec![Factor::Matrix(scalar.clone())];
                v.extend(fs.iter().cloned());
                v
            })
            .collect();
        CrossedElement {
            model: self.model.clone(),
            terms,
        }
    }

    /// Noncommutative product: concatenated factor lists, distributed over
    /// sums.
    pub fn mul(&self, other: &CrossedElement) -> CrossedElement {
        assert!(Arc::ptr_eq(&self.model, &other.model), "different models");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut t = a.clone();
                t.extend(b.iter().cloned());
                terms.push(t);
            }
        }
        CrossedElement {
            model: self.model.clone(),
            terms,
        }
    }

    pub fn adjoint(&self) -> CrossedElement {
        let terms = self
            .terms
            .iter()
            .map(|fs| {
                fs.iter()
                    .rev()
                    .map(|f| match f {
                        Factor::Matrix(m) => Factor::Matrix(m.adjoint()),
                        Factor::OfH(g) => Factor::OfH(g.clone()),
                    })
                    .collect()
            })
            .collect();
        CrossedElement {
            model: self.model.clone(),
            terms,
        }
    }

    /// Dual action `θ_s`: translation `x(t) ↦ x(t−s)`; profiles precompose
    /// with the scaling `u ↦ e^{-s}u`.
    pub fn theta(&self, s: f64) -> CrossedElement {
        let factor = (-s).exp();
        let terms = self
            .terms
            .iter()
            .map(|fs| {
                fs.iter()
                    .map(|f| match f {
                        Factor::Matrix(m) => Factor::Matrix(m.clone()),
                        Factor::OfH(g) => Factor::OfH(g.clone().scaled(1.0, factor)),
                    })
                    .collect()
            })
            .collect();
        CrossedElement {
            model: self.model.clone(),
            terms,
        }
    }

    /// Evaluate the element at time `t`.
    pub fn value_at(&self, t: f64) -> AlgebraElement {
        let mut acc = AlgebraElement::zero(self.model.alg.clone());
        for fs in &self.terms {
            let mut prod = AlgebraElement::identity(self.model.alg.clone());
            for f in fs {
                let m = match f {
                    Factor::Matrix(m) => m.clone(),
                    Factor::OfH(g) => self.model.h_apply(t, &|u| g.eval(u)),
                };
                prod = prod.mul(&m);
            }
            acc = acc.add(&prod);
        }
        acc
    }

    /// `e^{γt}·C` form: succeeds when the element is a single product whose
    /// profile factors are all pure powers.
    pub fn power_form(&self) -> Option<(f64, AlgebraElement)> {
        if self.terms.len() != 1 {
            return None;
        }
        let mut gamma = 0.0;
        let mut c = AlgebraElement::identity(self.model.alg.clone());
        for f in &self.terms[0] {
            match f {
                Factor::Matrix(m) => c = c.mul(m),
                Factor::OfH(g) => match flatten_power(g) {
                    Some((coef, alpha)) => {
                        gamma += alpha;
                        let pw = self.model.rho_apply(&|r| coef * r.powf(alpha));
                        c = c.mul(&pw);
                    }
                    None => return None,
                },
            }
        }
        Some((gamma, c))
    }

    /// Spectral-line decomposition: exact closed-form distributions when the
    /// matrix data commutes with ρ.
    pub fn lines(&self) -> Option<LineElement> {
        lines::lines_of(self)
    }

    /// Distribution function `λ_s(x) = τ_A(χ_{(s,∞)}(|x|))`, via the best
    /// available exact strategy or the default grid.
    pub fn distribution(&self, s: f64) -> f64 {
        if let Some((gamma, c)) = self.power_form() {
            return lines::power_lambda(&c, gamma, s);
        }
        if let Some(l) = self.lines() {
            return l.lambda(s);
        }
        self.to_grid(GridSpec::default()).lambda(s)
    }

    /// Generalised singular value `μ_t(x) = inf{s : λ_s(x) ≤ t}`.
    pub fn mu(&self, t: f64) -> Result<f64, CrossedError> {
        if let Some((gamma, c)) = self.power_form() {
            return lines::power_mu(&c, gamma, t);
        }
        if let Some(l) = self.lines() {
            return l.mu(t);
        }
        self.to_grid(GridSpec::default()).mu(t)
    }

    /// Sample onto a uniform grid with tail exponents inferred from the
    /// profile structure.
    pub fn to_grid(&self, spec: GridSpec) -> GridElement {
        GridElement::sample(self, spec)
    }

    /// Tail exponents `(left as t→−∞, right as t→+∞)` of the value profile.
    pub fn tail_exponents(&self) -> (f64, f64) {
        let mut left = f64::INFINITY;
        let mut right = f64::NEG_INFINITY;
        for fs in &self.terms {
            let mut l = 0.0;
            let mut r = 0.0;
            for f in fs {
                if let Factor::OfH(g) = f {
                    l += g.decay_exponent_zero();
                    r += g.growth_exponent_infinity();
                }
            }
            left = left.min(l);
            right = right.max(r);
        }
        if !left.is_finite() {
            // A term that vanishes identically near −∞ decays faster than
            // any exponential; clamp to a steep slope.
            left = 1e6;
        }
        if right == f64::NEG_INFINITY {
            right = 0.0;
        }
        (left, right)
    }
}

fn flatten_power(g: &ScalarProfile) -> Option<(f64, f64)> {
    match g {
        ScalarProfile::Constant(c) => Some((*c, 0.0)),
        ScalarProfile::Power { coef, alpha } => Some((*coef, *alpha)),
        ScalarProfile::Scaled { val, arg, inner } => {
            let (c, a) = flatten_power(inner)?;
            Some((val * c * arg.powf(a), a))
        }
        ScalarProfile::Product(parts) => {
            let mut coef = 1.0;
            let mut alpha = 0.0;
            for p in parts {
                let (c, a) = flatten_power(p)?;
                coef *= c;
                alpha += a;
            }
            Some((coef, alpha))
        }
        ScalarProfile::Fundamental { ff, pow } => {
            let (c, a) = ff.power_form()?;
            Some((c.powf(*pow), a * pow))
        }
        ScalarProfile::Sum(_) => None,
    }
}

/// Extract the constant matrix `Z` of an exponent-1 homogeneous element
/// `x(t) = Z e^t`, verifying homogeneity across sample times. This is the
/// coefficient that the Haagerup trace functional sees: `tr(x) = τ_M(Z)`.
pub fn l1_coefficient(x: &CrossedElement, tol: f64) -> Result<AlgebraElement, CrossedError> {
    let ts = [-3.0, -1.0, 0.0, 1.0, 3.0];
    let base = x.value_at(0.0);
    let scale = base.frobenius().max(1e-300);
    for &t in &ts {
        let z = x.value_at(t).scale_re((-t).exp());
        let dev = z.distance(&base) / scale;
        if dev > tol {
            return Err(CrossedError::NotMember {
                space: "L1".into(),
                max_rel_err: dev,
            });
        }
    }
    Ok(base)
}

/// Haagerup trace of an exponent-1 homogeneous element: `tr(Z e^t) = τ_M(Z)`.
pub fn haagerup_trace(x: &CrossedElement, tol: f64) -> Result<Complex64, CrossedError> {
    Ok(l1_coefficient(x, tol)?.trace())
}

/// Convenience: the density `h` itself as a crossed element.
pub fn density_element(model: &Arc<CrossedModel>) -> CrossedElement {
    CrossedElement::of_h(model.clone(), ScalarProfile::power(1.0))
}

/// Blockwise check that a matrix is diagonal in ρ's eigenbasis; returns the
/// per-index diagonal entries (ρ-basis order) when it is.
pub(crate) fn diagonal_in_rho_basis(
    model: &CrossedModel,
    m: &AlgebraElement,
) -> Option<Vec<Vec<Complex64>>> {
    let mut out = Vec::with_capacity(m.blocks().len());
    for (k, blk) in m.blocks().iter().enumerate() {
        let transformed: CMatrix = if model.scalar_rho[k].is_some() {
            blk.clone()
        } else {
            let v = &model.rho_eigs[k].v;
            v.adjoint().mul(blk).mul(v)
        };
        let tol = 1e-12 * transformed.frobenius().max(1e-300);
        if !transformed.is_diagonal(tol) {
            return None;
        }
        out.push((0..transformed.dim()).map(|i| transformed[(i, i)]).collect());
    }
    Some(out)
}
