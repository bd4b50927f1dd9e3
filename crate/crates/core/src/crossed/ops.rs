//! Operations on the model crossed product: the distribution identity
//! `λ_ε(a ⊗ φ_ψ(e^t)) = τ(ψ(|a|/ε))`, the Luxemburg and Amemiya norm
//! bridges, θ-homogeneity membership tests, the `d_t` sandwich identity
//! behind the quasinorm estimate, and the dilation-integral norm for spaces
//! with good Boyd behaviour.

use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::fundamental::{boyd_normability, dilation_fundamental, FundamentalFunction};
use crate::numeric::{adaptive_simpson, log_grid};
use crate::orlicz::OrliczFunction;
use crate::svf::SingularValueFunction;

use super::grid::{GridElement, GridSpec};
use super::profile::ScalarProfile;
use super::{CrossedElement, CrossedError, CrossedModel, Factor};

/// Homogeneity tolerance for membership verdicts: above quadrature noise,
/// below any genuine scaling mismatch in the test families.
pub const MEMBERSHIP_TOL: f64 = 1e-6;

/// Translation shifts (in cells) used by the homogeneity tests.
pub const MEMBERSHIP_SHIFTS: [i64; 4] = [64, 128, -64, -128];

/// `φ_ψ(h)^{1/2} · b · φ_ψ(h)^{1/2}` — the Luxemburg-space embedding. For
/// data commuting with ρ this reduces to the separable element with profile
/// `φ_ψ`.
pub fn embed_luxemburg(
    model: &Arc<CrossedModel>,
    b: &AlgebraElement,
    psi: &OrliczFunction,
) -> CrossedElement {
    let half = ScalarProfile::fundamental_sqrt(FundamentalFunction::luxemburg(psi.clone()));
    CrossedElement::product(
        model.clone(),
        vec![
            Factor::OfH(half.clone()),
            Factor::Matrix(b.clone()),
            Factor::OfH(half),
        ],
    )
}

/// Both sides of the crossed-product distribution identity
/// `λ_ε(a ⊗ φ_ψ(e^t)) = τ(ψ(|a|/ε))` (tracial model).
pub fn verify_mainthm(
    model: &Arc<CrossedModel>,
    a: &AlgebraElement,
    psi: &OrliczFunction,
    eps: f64,
) -> Result<(f64, f64), CrossedError> {
    if !model.is_tracial() {
        return Err(CrossedError::NotTracial);
    }
    let x = CrossedElement::separable(
        model.clone(),
        a.clone(),
        ScalarProfile::fundamental(FundamentalFunction::luxemburg(psi.clone())),
    );
    let lhs = x.distribution(eps);
    let rhs = SingularValueFunction::of(a).integral_of(|v| psi.eval(v / eps));
    Ok((lhs, rhs))
}

/// `‖a‖_ψ = μ₁(a ⊗ φ_ψ(e^t))` — the Luxemburg norm read off inside the
/// crossed product (tracial model).
pub fn lux_via_mu1(
    model: &Arc<CrossedModel>,
    a: &AlgebraElement,
    psi: &OrliczFunction,
) -> Result<f64, CrossedError> {
    if !model.is_tracial() {
        return Err(CrossedError::NotTracial);
    }
    CrossedElement::separable(
        model.clone(),
        a.clone(),
        ScalarProfile::fundamental(FundamentalFunction::luxemburg(psi.clone())),
    )
    .mu(1.0)
}

/// `inf_{k>0} k(1 + λ_k(a ⊗ φ_ψ(e^t)))` — the Orlicz norm in Amemiya form
/// read off the crossed-product distribution (tracial model).
pub fn amemiya_via_lambda(
    model: &Arc<CrossedModel>,
    a: &AlgebraElement,
    psi: &OrliczFunction,
) -> Result<f64, CrossedError> {
    if !model.is_tracial() {
        return Err(CrossedError::NotTracial);
    }
    let x = CrossedElement::separable(
        model.clone(),
        a.clone(),
        ScalarProfile::fundamental(FundamentalFunction::luxemburg(psi.clone())),
    );
    if a.op_norm() == 0.0 {
        return Ok(0.0);
    }
    let objective = |k: f64| {
        let l = x.distribution(k);
        if l.is_infinite() {
            f64::INFINITY
        } else {
            k * (1.0 + l)
        }
    };
    let (_, val) = crate::numeric::golden_min_log(objective, 1e-18, 1e18, 220);
    Ok(val)
}

/// `μ₁(x)` — the type III quasinorm.
pub fn quasinorm_mu1(x: &CrossedElement) -> Result<f64, CrossedError> {
    x.mu(1.0)
}

/// Membership spaces testable through θ-homogeneity of sandwiched data.
#[derive(Clone, Debug)]
pub enum SpaceTag {
    /// `θ_s(x) = e^{-s}x`.
    L1,
    /// `θ_s(x) = e^{-s/p}x`.
    Lp(f64),
    /// `L^ψ(M)`: `φ̃_{ψ*}(h)^{1/2} x φ̃_{ψ*}(h)^{1/2} ∈ L¹(M)`.
    LuxOrlicz(OrliczFunction),
    /// `L_ψ(M)`: `φ_{ψ*}(h)^{1/2} x φ_{ψ*}(h)^{1/2} ∈ L¹(M)`.
    OrlOrlicz(OrliczFunction),
    /// `S^ψ`: cutoff-translated square-root homogeneity with `φ̃_{ψ*}`.
    UpperFactor(OrliczFunction),
    /// `S_ψ`: same with `φ_{ψ*}`.
    LowerFactor(OrliczFunction),
    /// `L^ψ(M;l)`: `φ̃_{ψ*}(h)·x ∈ L¹(M)` (one-sided, full power).
    LeftLux(OrliczFunction),
    /// `L_ψ(M;r)`: `x·φ_{ψ*}(h) ∈ L¹(M)`.
    RightOrl(OrliczFunction),
}

impl SpaceTag {
    pub fn name(&self) -> String {
        match self {
            SpaceTag::L1 => "L1".into(),
            SpaceTag::Lp(p) => format!("Lp({p})"),
            SpaceTag::LuxOrlicz(_) => "L^psi".into(),
            SpaceTag::OrlOrlicz(_) => "L_psi".into(),
            SpaceTag::UpperFactor(_) => "S^psi".into(),
            SpaceTag::LowerFactor(_) => "S_psi".into(),
            SpaceTag::LeftLux(_) => "L^psi(l)".into(),
            SpaceTag::RightOrl(_) => "L_psi(r)".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MembershipVerdict {
    pub member: bool,
    pub max_rel_err: f64,
}

/// Run the θ-homogeneity membership test for `x` against the given space on
/// the supplied grid resolution.
pub fn membership(
    x: &CrossedElement,
    tag: &SpaceTag,
    spec: GridSpec,
) -> Result<MembershipVerdict, CrossedError> {
    let grid = x.to_grid(spec);
    membership_of_grid(&grid, tag)
}

pub fn membership_of_grid(
    grid: &GridElement,
    tag: &SpaceTag,
) -> Result<MembershipVerdict, CrossedError> {
    let verdict = |err: f64| MembershipVerdict {
        member: err <= MEMBERSHIP_TOL,
        max_rel_err: err,
    };
    match tag {
        SpaceTag::L1 => Ok(verdict(grid.homogeneity_defect(1.0, &MEMBERSHIP_SHIFTS)?)),
        SpaceTag::Lp(p) => Ok(verdict(
            grid.homogeneity_defect(1.0 / p, &MEMBERSHIP_SHIFTS)?,
        )),
        SpaceTag::LuxOrlicz(psi) => {
            let g = ScalarProfile::fundamental_sqrt(FundamentalFunction::orlicz(psi.conjugate()));
            let y = grid.multiply_of_h(&g, true).multiply_of_h(&g, false);
            Ok(verdict(y.homogeneity_defect(1.0, &MEMBERSHIP_SHIFTS)?))
        }
        SpaceTag::OrlOrlicz(psi) => {
            let g =
                ScalarProfile::fundamental_sqrt(FundamentalFunction::luxemburg(psi.conjugate()));
            let y = grid.multiply_of_h(&g, true).multiply_of_h(&g, false);
            Ok(verdict(y.homogeneity_defect(1.0, &MEMBERSHIP_SHIFTS)?))
        }
        SpaceTag::UpperFactor(psi) => {
            let g = ScalarProfile::fundamental_sqrt(FundamentalFunction::orlicz(psi.conjugate()));
            Ok(verdict(cutoff_defect(&grid.multiply_of_h(&g, false), grid)?))
        }
        SpaceTag::LowerFactor(psi) => {
            let g =
                ScalarProfile::fundamental_sqrt(FundamentalFunction::luxemburg(psi.conjugate()));
            Ok(verdict(cutoff_defect(&grid.multiply_of_h(&g, false), grid)?))
        }
        SpaceTag::LeftLux(psi) => {
            let g = ScalarProfile::fundamental(FundamentalFunction::orlicz(psi.conjugate()));
            let y = grid.multiply_of_h(&g, true);
            Ok(verdict(y.homogeneity_defect(1.0, &MEMBERSHIP_SHIFTS)?))
        }
        SpaceTag::RightOrl(psi) => {
            let g = ScalarProfile::fundamental(FundamentalFunction::luxemburg(psi.conjugate()));
            let y = grid.multiply_of_h(&g, false);
            Ok(verdict(y.homogeneity_defect(1.0, &MEMBERSHIP_SHIFTS)?))
        }
    }
}

/// Factor-space test: `θ_s(y·χ_{[0,δ]}(h)) = e^{-s/2}·y·χ_{[0,e^sδ]}(h)` over
/// a δ-grid, with the cutoffs resolved on the shared integer cell scale.
fn cutoff_defect(base: &GridElement, raw: &GridElement) -> Result<f64, CrossedError> {
    let n = base.len() as i64;
    let step = base.step();
    // δ values well inside the grid, offset away from cell boundaries.
    let ldeltas: Vec<f64> = [0.31, 0.5, 0.68]
        .iter()
        .map(|f| raw.midpoint((f * n as f64) as usize) + 0.37 * step)
        .collect();
    let mut worst = 0.0f64;
    for &ld in &ldeltas {
        let z1 = base.cutoff_right(ld);
        for &k in &MEMBERSHIP_SHIFTS {
            if 2 * k.unsigned_abs() as i64 > n {
                return Err(CrossedError::Inconclusive);
            }
            let s = k as f64 * step;
            let z2 = base.cutoff_right(ld + s);
            let damp = (-0.5 * s).exp();
            let scale = (0..base.len())
                .map(|i| z1.cell(i).frobenius())
                .fold(0.0f64, f64::max)
                .max(1e-300);
            for i in 0..n {
                let j = i - k;
                if !(0..n).contains(&j) {
                    continue;
                }
                let lhs = z1.cell(j as usize);
                let rhs = z2.cell(i as usize).scale_re(damp);
                let local = lhs.frobenius().max(rhs.frobenius());
                if local <= 1e-12 * scale {
                    continue;
                }
                worst = worst.max(lhs.distance(&rhs) / local);
            }
        }
    }
    Ok(worst)
}

/// Report for the sandwich identity `θ_s(a) = (1/t)[d_t^{1/2} a d_t^{1/2}]`
/// with `d_t = φ̃_{ψ*}(h/t)^{-1} φ̃_{ψ*}(h)`.
#[derive(Clone, Copy, Debug)]
pub struct DtReport {
    pub max_rel_err: f64,
    pub d_op_norm: f64,
}

/// Verify the `d_t` identity cellwise on a grid element for `t = e^s` with
/// on-grid `s = ln t ≤ 0`.
pub fn verify_dt_identity(
    x: &GridElement,
    psi: &OrliczFunction,
    t: f64,
) -> Result<DtReport, CrossedError> {
    debug_assert!((0.0..=1.0).contains(&t) && t > 0.0);
    let s = t.ln();
    let step = x.step();
    let kf = s / step;
    if (kf - kf.round()).abs() > 1e-9 {
        return Err(CrossedError::OffGrid { s, step });
    }
    let k = kf.round() as i64; // k <= 0
    let phi = FundamentalFunction::orlicz(psi.conjugate());
    let n = x.len() as i64;
    let model = x.model().clone();
    let mut worst = 0.0f64;
    let mut d_norm = 0.0f64;
    let scale = (0..x.len())
        .map(|i| x.cell(i).frobenius())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    for i in 0..n {
        let j = i - k; // i + |k|
        if !(0..n).contains(&j) {
            continue;
        }
        let m = x.midpoint(i as usize);
        let d_half = model.h_apply(m, &|u| {
            let num = phi.eval(u);
            let den = phi.eval(u / t);
            (num / den).sqrt()
        });
        d_norm = d_norm.max(d_half.op_norm().powi(2));
        let rhs = d_half.mul(x.cell(i as usize)).mul(&d_half).scale_re(1.0 / t);
        let lhs = x.cell(j as usize);
        let local = lhs.frobenius().max(rhs.frobenius());
        if local <= 1e-12 * scale {
            continue;
        }
        worst = worst.max(lhs.distance(&rhs) / local);
    }
    Ok(DtReport {
        max_rel_err: worst,
        d_op_norm: d_norm,
    })
}

#[derive(Clone, Debug)]
pub struct NormabilityReport {
    /// `∫₀¹ μ_t(x) dt`, evaluated as `μ₁ + ∫_{μ₁}^∞ λ_s ds` (layer cake).
    pub value: f64,
    pub mu1: f64,
    /// Dilation-integral constant from the Boyd diagnostic.
    pub constant: f64,
    /// Max violation of `t·μ_t ≤ k_{ψ*}(t)·μ₁` over a t-grid.
    pub intermediate_violation: f64,
}

/// `∫₀¹ μ_t(x) dt` with the two-sided sanity bounds
/// `μ₁ ≤ ∫₀¹ μ_t dt ≤ C·μ₁` for normable ψ.
pub fn normability_norm(
    x: &CrossedElement,
    psi: &OrliczFunction,
) -> Result<NormabilityReport, CrossedError> {
    let boyd = boyd_normability(psi);
    if !boyd.normable {
        return Err(CrossedError::NotNormable);
    }
    let mu1 = x.mu(1.0)?;
    if mu1 == 0.0 {
        return Ok(NormabilityReport {
            value: 0.0,
            mu1,
            constant: boyd.constant,
            intermediate_violation: 0.0,
        });
    }
    // Layer cake: ∫₀¹ μ_t dt = μ₁ + ∫_{μ₁}^∞ min(λ_s, 1) ds and λ ≤ 1 there.
    let s_hi = mu1 * 1e8;
    let body = adaptive_simpson(
        &|y: f64| {
            let s = y.exp();
            x.distribution(s).min(1.0) * s
        },
        mu1.ln(),
        s_hi.ln(),
        1e-12 * mu1,
    );
    let l_hi = x.distribution(s_hi);
    let tail = if l_hi <= 0.0 {
        0.0
    } else {
        let l_mid = x.distribution(s_hi / 4.0);
        let p_hat = (l_mid / l_hi).ln() / 4f64.ln();
        if p_hat > 1.0 + 1e-6 {
            l_hi * s_hi / (p_hat - 1.0)
        } else {
            f64::INFINITY
        }
    };
    let value = mu1 + body + tail;

    // Intermediate inequality t μ_t ≤ k_{ψ*}(t) μ₁ on (0, 1].
    let phi_star = FundamentalFunction::luxemburg(psi.conjugate());
    let mut violation = 0.0f64;
    for t in log_grid(1e-4, 1.0, 17) {
        let mu_t = x.mu(t)?;
        let k = dilation_fundamental(&phi_star, t);
        let bound = k * mu1;
        if bound.is_finite() && t * mu_t > bound {
            violation = violation.max((t * mu_t - bound) / (1.0 + bound));
        }
    }
    Ok(NormabilityReport {
        value,
        mu1,
        constant: boyd.constant,
        intermediate_violation: violation,
    })
}
