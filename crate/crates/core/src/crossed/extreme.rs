//! The largest and smallest Orlicz spaces of the model: the intersection
//! space with norm `max(‖h^{1/2}ah^{1/2}‖₁, ‖h^{1/2}a‖₂, ‖ah^{1/2}‖₂, ‖a‖∞)`
//! and the sum space `X_{1+∞}` with norm
//! `inf(‖c‖₁ + ‖d‖₂ + ‖e‖₂ + ‖f‖∞)` over the four ι-embeddings, plus the
//! σ-finite left/right pairing and the candidate-norm probe
//! `sup |tr(b₀ a b₁*)| / μ₁(b₀)μ₁(b₁)`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::AlgebraElement;
use crate::fundamental::FundamentalFunction;
use crate::numeric::{golden_min_lin, log_grid};
use crate::orlicz::OrliczFunction;
use crate::svf::SingularValueFunction;

use super::grid::GridSpec;
use super::ops::{membership, SpaceTag};
use super::profile::ScalarProfile;
use super::{haagerup_trace, CrossedElement, CrossedError, CrossedModel, Factor};

fn phi_one_plus_inf() -> FundamentalFunction {
    // min(1, t): the fundamental function of the sum space under its
    // canonical (Orlicz) norm.
    FundamentalFunction::orlicz(OrliczFunction::OnePlusInf)
}

fn phi_one_cap_inf() -> FundamentalFunction {
    // max(1, t).
    FundamentalFunction::luxemburg(OrliczFunction::OneCapInf)
}

/// Haagerup L¹ norm of the piece `h^{1/2} w h^{1/2}`: `τ(|ρ^{1/2} w ρ^{1/2}|)`.
pub fn piece_l1_norm(model: &CrossedModel, w: &AlgebraElement) -> f64 {
    let rh = model.rho_apply(&|r| r.sqrt());
    SingularValueFunction::of(&rh.mul(w).mul(&rh)).integral()
}

/// L²-norm of the right piece `h^{1/2} w`: `τ(w* ρ w)^{1/2}`.
pub fn piece_l2r_norm(model: &CrossedModel, w: &AlgebraElement) -> f64 {
    w.adjoint().mul(model.rho()).mul(w).trace().re.max(0.0).sqrt()
}

/// L²-norm of the left piece `w h^{1/2}`: `τ(w ρ w*)^{1/2}`.
pub fn piece_l2l_norm(model: &CrossedModel, w: &AlgebraElement) -> f64 {
    w.mul(model.rho()).mul(&w.adjoint()).trace().re.max(0.0).sqrt()
}

/// Report for the intersection-space norm.
#[derive(Clone, Debug)]
pub struct OneCapInfReport {
    pub value: f64,
    pub mu1: f64,
    pub parts: [f64; 4],
}

/// `‖φ_{1∩∞}(h)^{1/2} b φ_{1∩∞}(h)^{1/2}‖_{1∩∞}` together with `μ₁` of the
/// embedded element; the two satisfy `(1/16)·μ₁ ≤ value ≤ μ₁`.
pub fn norm_one_cap_inf(
    model: &Arc<CrossedModel>,
    b: &AlgebraElement,
) -> Result<OneCapInfReport, CrossedError> {
    let parts = [
        piece_l1_norm(model, b),
        piece_l2r_norm(model, b),
        piece_l2l_norm(model, b),
        b.op_norm(),
    ];
    let value = parts.iter().cloned().fold(0.0, f64::max);
    let half = ScalarProfile::fundamental_sqrt(phi_one_cap_inf());
    let x = CrossedElement::product(
        model.clone(),
        vec![
            Factor::OfH(half.clone()),
            Factor::Matrix(b.clone()),
            Factor::OfH(half),
        ],
    );
    let mu1 = x.mu(1.0)?;
    Ok(OneCapInfReport { value, mu1, parts })
}

/// An element of `X_{1+∞}` carried with its base:
/// `x = φ_{1+∞}(h)^{1/2} · w · φ_{1+∞}(h)^{1/2}`. All four ι-embeddings land
/// in this form, so sums simply add bases.
#[derive(Clone, Debug)]
pub struct IotaSum {
    model: Arc<CrossedModel>,
    w: AlgebraElement,
}

impl IotaSum {
    /// `ι_∞(f) = φ_{1+∞}(h)^{1/2} f φ_{1+∞}(h)^{1/2}`.
    pub fn iota_inf(model: Arc<CrossedModel>, f: AlgebraElement) -> Self {
        IotaSum { model, w: f }
    }

    /// `ι_1(h^{1/2} w h^{1/2}) = ζ₁(h)^{1/2}·h^{1/2} w h^{1/2}·ζ₁(h)^{1/2}`,
    /// the L¹ piece described by its matrix coefficient `w`.
    pub fn iota_1(model: Arc<CrossedModel>, w: AlgebraElement) -> Self {
        IotaSum { model, w }
    }

    /// `ι_{2,r}(h^{1/2} w)`.
    pub fn iota_2r(model: Arc<CrossedModel>, w: AlgebraElement) -> Self {
        IotaSum { model, w }
    }

    /// `ι_{2,l}(w h^{1/2})`.
    pub fn iota_2l(model: Arc<CrossedModel>, w: AlgebraElement) -> Self {
        IotaSum { model, w }
    }

    pub fn add(&self, other: &IotaSum) -> IotaSum {
        assert!(Arc::ptr_eq(&self.model, &other.model));
        IotaSum {
            model: self.model.clone(),
            w: self.w.add(&other.w),
        }
    }

    pub fn base(&self) -> &AlgebraElement {
        &self.w
    }

    pub fn model(&self) -> &Arc<CrossedModel> {
        &self.model
    }

    pub fn element(&self) -> CrossedElement {
        let half = ScalarProfile::fundamental_sqrt(phi_one_plus_inf());
        CrossedElement::product(
            self.model.clone(),
            vec![
                Factor::OfH(half.clone()),
                Factor::Matrix(self.w.clone()),
                Factor::OfH(half),
            ],
        )
    }
}

/// Norms of one four-way decomposition of an `X_{1+∞}` element.
#[derive(Clone, Copy, Debug)]
pub struct QuadNorms {
    pub n1: f64,
    pub n2r: f64,
    pub n2l: f64,
    pub ninf: f64,
}

impl QuadNorms {
    pub fn weighted(&self, t: f64) -> f64 {
        self.n1 + t.sqrt() * (self.n2r + self.n2l) + t * self.ninf
    }

    pub fn plain(&self) -> f64 {
        self.weighted(1.0)
    }
}

/// Norms of the two-threshold spectral decomposition of the base at levels
/// `c ≤ big`: the part of `|w|` below `c` goes to the `L∞` slot, the band
/// `(c, big]` splits evenly between the two `L²` slots, the excess above
/// `big` goes to `L¹`.
fn split_norms(x: &IotaSum, c: f64, big: f64) -> QuadNorms {
    let (v, eigs) = x.w.polar();
    let alg = x.w.algebra().clone();
    let apply = |f: &dyn Fn(f64) -> f64| {
        AlgebraElement::new(alg.clone(), eigs.iter().map(|e| e.apply(f)).collect()).unwrap()
    };
    let w_inf = v.mul(&apply(&|s: f64| s.min(c)));
    let mid = v.mul(&apply(&|s: f64| (s.min(big) - s.min(c)).max(0.0)));
    let w_1 = v.mul(&apply(&|s: f64| (s - big).max(0.0)));
    let half_mid = mid.scale_re(0.5);
    QuadNorms {
        n1: piece_l1_norm(&x.model, &w_1),
        n2r: piece_l2r_norm(&x.model, &half_mid),
        n2l: piece_l2l_norm(&x.model, &half_mid),
        ninf: w_inf.op_norm(),
    }
}

/// The frozen two-threshold decomposition family: candidate level pairs from
/// the spectrum of `|w|` plus coordinate-descent refinements at a handful of
/// probe weightings. A frozen family keeps `t ↦ min_m(weighted)` an exact
/// minimum of concave functions.
pub fn decomposition_family(x: &IotaSum, candidates: usize) -> Vec<QuadNorms> {
    let mut levels: Vec<f64> = vec![0.0];
    let mut sv: Vec<f64> = x
        .w
        .weighted_singular_values()
        .iter()
        .map(|&(s, _)| s)
        .collect();
    sv.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sv.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * (1.0 + b.abs()));
    let top = sv.last().cloned().unwrap_or(0.0);
    levels.extend(sv.iter().cloned());
    for w in sv.windows(2) {
        if w[0] > 0.0 {
            levels.push((w[0] * w[1]).sqrt());
        }
    }
    levels.push(top * 1.0000001);
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let side = ((2.0 * candidates as f64).sqrt().ceil() as usize).max(2);
    if levels.len() > side {
        // Thin evenly, keeping the end points.
        levels = (0..side)
            .map(|i| levels[i * (levels.len() - 1) / (side - 1)])
            .collect();
    }

    let mut family = Vec::new();
    for (i, &c) in levels.iter().enumerate() {
        for &big in &levels[i..] {
            family.push(split_norms(x, c, big));
        }
    }
    // Coordinate-descent refinements, frozen into the family.
    for t in [1e-6, 1e-3, 1.0, 1e3, 1e6] {
        let objective = |c: f64, big: f64| split_norms(x, c, big.max(c)).weighted(t);
        let mut c_best = 0.0;
        let mut b_best = top;
        let mut val = objective(c_best, b_best);
        for &(c0, b0) in &[(0.0, top), (0.0, 0.0), (top, top)] {
            let v = objective(c0, b0);
            if v < val {
                val = v;
                c_best = c0;
                b_best = b0;
            }
        }
        for _round in 0..3 {
            let (c_new, _) = golden_min_lin(|c| objective(c, b_best.max(c)), 0.0, top, 60);
            c_best = c_new;
            let (b_new, _) = golden_min_lin(|b| objective(c_best.min(b), b), 0.0, top, 60);
            b_best = b_new.max(c_best);
        }
        family.push(split_norms(x, c_best, b_best));
    }
    family
}

#[derive(Clone, Copy, Debug)]
pub struct OnePlusInfBounds {
    pub upper: f64,
    pub lower: f64,
}

/// Upper bound: minimum of `‖·‖₁ + ‖·‖₂ + ‖·‖₂ + ‖·‖∞` over the decomposition
/// family. Lower bound: `max_{0<ε≤4} (ε/4)·μ_ε(x)` (certified). The reported
/// pair always satisfies `lower ≤ upper`.
pub fn norm_one_plus_inf(x: &IotaSum, candidates: usize) -> Result<OnePlusInfBounds, CrossedError> {
    let family = decomposition_family(x, candidates);
    let upper = family
        .iter()
        .map(|q| q.plain())
        .fold(f64::INFINITY, f64::min);
    let element = x.element();
    let mut lower = 0.0f64;
    for eps in log_grid(1e-3, 4.0, 40) {
        let mu = element.mu(eps)?;
        lower = lower.max(0.25 * eps * mu);
    }
    Ok(OnePlusInfBounds { upper, lower })
}

#[derive(Clone, Debug)]
pub struct PairingReport {
    pub value: Complex64,
    pub bound: f64,
    pub mu1_left: f64,
    pub mu1_right: f64,
}

/// σ-finite duality pairing `⟨a, b⟩ = tr(ba)` for `a ∈ L^ψ(M;l)` and
/// `b ∈ L_{ψ*}(M;r)`, with the Hölder-type bound `|tr(ba)| ≤ 2 μ₁(b) μ₁(a)`.
pub fn pairing_duality(
    a: &CrossedElement,
    b: &CrossedElement,
    psi: &OrliczFunction,
) -> Result<PairingReport, CrossedError> {
    let spec = GridSpec::coarse();
    let va = membership(a, &SpaceTag::LeftLux(psi.clone()), spec)?;
    if !va.member {
        return Err(CrossedError::NotMember {
            space: "L^psi(l)".into(),
            max_rel_err: va.max_rel_err,
        });
    }
    let vb = membership(b, &SpaceTag::RightOrl(psi.conjugate()), spec)?;
    if !vb.member {
        return Err(CrossedError::NotMember {
            space: "L_psi*(r)".into(),
            max_rel_err: vb.max_rel_err,
        });
    }
    let product = b.mul(a);
    let value = haagerup_trace(&product, 1e-6)?;
    let mu1_left = a.mu(1.0)?;
    let mu1_right = b.mu(1.0)?;
    Ok(PairingReport {
        value,
        bound: 2.0 * mu1_left * mu1_right,
        mu1_left,
        mu1_right,
    })
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub sup_ratio: f64,
    pub mu1: f64,
    pub bound_3mu1_ok: bool,
    pub bound_mu1_ok: bool,
    pub samples: usize,
}

/// Monte-Carlo probe of the candidate norm
/// `sup{|tr(b₀ a b₁*)| / (μ₁(b₀)μ₁(b₁)) : b_i ∈ S_{ψ*}}` against both the
/// `μ₁(a)` and `3μ₁(a)` ceilings. Test factors are `m·φ̃_{ψ*}(h)^{1/2}` with
/// `m` diagonal in ρ's eigenbasis.
pub fn probe_triple_norm(
    a: &CrossedElement,
    psi: &OrliczFunction,
    samples: usize,
    seed: u64,
) -> Result<ProbeReport, CrossedError> {
    let model = a.model().clone();
    let mu1 = a.mu(1.0)?;
    let mut r = crate::rng::rng(seed);
    let half = ScalarProfile::fundamental_sqrt(FundamentalFunction::orlicz(psi.conjugate()));
    let mut sup_ratio = 0.0f64;
    let dims: Vec<usize> = model.algebra().blocks().iter().map(|&(n, _)| n).collect();
    for _ in 0..samples {
        let mut draw = || {
            let blocks = dims
                .iter()
                .zip(model.rho_eigs())
                .map(|(&n, e)| {
                    let d: Vec<f64> = (0..n)
                        .map(|_| rand::Rng::gen_range(&mut r, 0.05..2.0))
                        .collect();
                    let dm = crate::linalg::CMatrix::from_diag(&d);
                    e.v.mul(&dm).mul(&e.v.adjoint())
                })
                .collect();
            AlgebraElement::new(model.algebra().clone(), blocks).unwrap()
        };
        let m0 = draw();
        let m1 = draw();
        let b0 = CrossedElement::product(
            model.clone(),
            vec![Factor::Matrix(m0), Factor::OfH(half.clone())],
        );
        let b1 = CrossedElement::product(
            model.clone(),
            vec![Factor::Matrix(m1), Factor::OfH(half.clone())],
        );
        let z = b0.mul(a).mul(&b1.adjoint());
        let tr = haagerup_trace(&z, 1e-6)?;
        let denom = b0.mu(1.0)? * b1.mu(1.0)?;
        if denom > 0.0 {
            sup_ratio = sup_ratio.max(tr.norm() / denom);
        }
    }
    Ok(ProbeReport {
        sup_ratio,
        mu1,
        bound_3mu1_ok: sup_ratio <= 3.0 * mu1 * (1.0 + 1e-9),
        bound_mu1_ok: sup_ratio <= mu1 * (1.0 + 1e-9),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::WeightedBlockAlgebra;
    use crate::numeric::rel_gap;
    use crate::rng;

    fn psi_p(p: f64) -> OrliczFunction {
        OrliczFunction::power(p).unwrap()
    }

    #[test]
    fn one_cap_inf_identity_under_state() {
        // b = 1, ρ = I/n on a factor: all four norms are 1.
        let alg = WeightedBlockAlgebra::factor(3, 1.0);
        let rho = crate::algebra::StateDensity::new(
            AlgebraElement::identity(alg.clone()).scale_re(1.0 / 3.0),
        )
        .unwrap();
        let model = CrossedModel::with_state(&rho);
        let one = AlgebraElement::identity(alg);
        let rep = norm_one_cap_inf(&model, &one).unwrap();
        for p in rep.parts {
            assert!(rel_gap(p, 1.0) < 1e-12, "parts = {:?}", rep.parts);
        }
        assert!(rel_gap(rep.value, 1.0) < 1e-12);
        // Two-sided bound against μ₁.
        assert!(rep.value <= rep.mu1 * (1.0 + 1e-9));
        assert!(rep.value >= rep.mu1 / 16.0 * (1.0 - 1e-9));
        // b = 0.
        let zrep = norm_one_cap_inf(&model, &AlgebraElement::zero(rho.element().algebra().clone()))
            .unwrap();
        assert_eq!(zrep.value, 0.0);
    }

    #[test]
    fn one_cap_inf_two_sided_random() {
        let mut r = rng::rng(41);
        for _ in 0..40 {
            let alg = rng::rand_atom_algebra(&mut r, 5);
            let rho = rng::rand_state_density(&mut r, &alg);
            let model = CrossedModel::with_state(&rho);
            let b = rng::rand_diagonal(&mut r, &alg, 0.05, 3.0);
            let rep = norm_one_cap_inf(&model, &b).unwrap();
            assert!(rep.value <= rep.mu1 * (1.0 + 1e-9), "{rep:?}");
            assert!(16.0 * rep.value >= rep.mu1 * (1.0 - 1e-9), "{rep:?}");
        }
    }

    #[test]
    fn one_plus_inf_trivial_decompositions() {
        let alg = WeightedBlockAlgebra::factor(2, 0.5);
        let rho = crate::algebra::StateDensity::new(
            AlgebraElement::identity(alg.clone()).scale_re(1.0),
        );
        // weight 0.5, dim 2: trace of I is 1; valid state.
        let model = CrossedModel::with_state(&rho.unwrap());
        // x = ι_∞(1): the all-L∞ decomposition costs exactly 1.
        let x = IotaSum::iota_inf(model.clone(), AlgebraElement::identity(alg.clone()));
        let b = norm_one_plus_inf(&x, 64).unwrap();
        assert!(b.upper <= 1.0 + 1e-9, "upper = {}", b.upper);
        assert!(b.lower <= b.upper + 1e-12);
        // x = ι_1(w): the all-L¹ decomposition costs the trace norm of the
        // piece.
        let mut r = rng::rng(5);
        let w = rng::rand_hermitian(&mut r, &alg, 1.0);
        let y = IotaSum::iota_1(model.clone(), w.clone());
        let by = norm_one_plus_inf(&y, 64).unwrap();
        assert!(by.upper <= piece_l1_norm(&model, &w) + 1e-9);
        assert!(by.lower <= by.upper + 1e-12);
    }

    #[test]
    fn iota_images_pass_sum_space_membership() {
        // Every ι-image lands in the Orlicz-norm space of the sum function:
        // the test sandwich by max(1,h)^{1/2} turns min(1,h)^{1/2}·w·… into
        // h^{1/2} w h^{1/2}, exactly homogeneous of degree 1.
        use crate::crossed::grid::GridSpec;
        use crate::crossed::ops::{membership, SpaceTag};
        let alg = WeightedBlockAlgebra::atoms(&[1.0, 0.5]).unwrap();
        let mut r = rng::rng(46);
        let rho = rng::rand_state_density(&mut r, &alg);
        let model = CrossedModel::with_state(&rho);
        let w = rng::rand_diagonal(&mut r, &alg, 0.2, 2.0);
        let images = [
            IotaSum::iota_inf(model.clone(), w.clone()),
            IotaSum::iota_1(model.clone(), w.clone()),
            IotaSum::iota_2r(model.clone(), w.clone()),
            IotaSum::iota_2l(model.clone(), w),
        ];
        for x in &images {
            let v = membership(
                &x.element(),
                &SpaceTag::OrlOrlicz(OrliczFunction::OnePlusInf),
                GridSpec::coarse(),
            )
            .unwrap();
            assert!(v.member, "iota image failed: err {}", v.max_rel_err);
        }
    }

    #[test]
    fn one_plus_inf_bounds_random() {
        let mut r = rng::rng(42);
        for _ in 0..25 {
            let alg = rng::rand_atom_algebra(&mut r, 4);
            let rho = rng::rand_state_density(&mut r, &alg);
            let model = CrossedModel::with_state(&rho);
            let w = rng::rand_diagonal(&mut r, &alg, 0.1, 3.0);
            let x = IotaSum::iota_inf(model, w);
            let b = norm_one_plus_inf(&x, 32).unwrap();
            assert!(
                b.lower <= b.upper * (1.0 + 1e-9),
                "lower {} vs upper {}",
                b.lower,
                b.upper
            );
        }
    }

    #[test]
    fn pairing_state_normalisation() {
        // a = b = h^{1/2} with ψ_2: tr(ba) = tr(h) = 1, and μ₁ = 1 each.
        let alg = WeightedBlockAlgebra::atoms(&[1.0, 1.0]).unwrap();
        let mut r = rng::rng(43);
        let rho = rng::rand_state_density(&mut r, &alg);
        let model = CrossedModel::with_state(&rho);
        let h_half = CrossedElement::of_h(model.clone(), ScalarProfile::power(0.5));
        let rep = pairing_duality(&h_half, &h_half, &psi_p(2.0)).unwrap();
        assert!(rel_gap(rep.value.re, 1.0) < 1e-9, "value = {}", rep.value);
        assert!(rep.value.im.abs() < 1e-12);
        assert!(rep.value.norm() <= rep.bound * (1.0 + 1e-9));
    }

    #[test]
    fn pairing_random_members() {
        let mut r = rng::rng(44);
        for _ in 0..10 {
            let alg = rng::rand_atom_algebra(&mut r, 3);
            let rho = rng::rand_state_density(&mut r, &alg);
            let model = CrossedModel::with_state(&rho);
            let psi = psi_p(2.0);
            // a = φ_ψ(h)·w ∈ L^ψ(M;l); b = w'·φ̃_{ψ*}(h) ∈ L_{ψ*}(M;r).
            let w = rng::rand_diagonal(&mut r, &alg, 0.1, 2.0);
            let wp = rng::rand_diagonal(&mut r, &alg, 0.1, 2.0);
            let a = CrossedElement::product(
                model.clone(),
                vec![
                    Factor::OfH(ScalarProfile::fundamental(FundamentalFunction::luxemburg(
                        psi.clone(),
                    ))),
                    Factor::Matrix(w),
                ],
            );
            let b = CrossedElement::product(
                model.clone(),
                vec![
                    Factor::Matrix(wp),
                    Factor::OfH(ScalarProfile::fundamental(FundamentalFunction::orlicz(
                        psi.conjugate(),
                    ))),
                ],
            );
            let rep = pairing_duality(&a, &b, &psi).unwrap();
            assert!(
                rep.value.norm() <= rep.bound * (1.0 + 1e-9),
                "value {} bound {}",
                rep.value.norm(),
                rep.bound
            );
        }
        // a = 0 pairs to zero.
        let alg = WeightedBlockAlgebra::atoms(&[1.0]).unwrap();
        let rho = rng::rand_state_density(&mut r, &alg);
        let model = CrossedModel::with_state(&rho);
        let zero = CrossedElement::pi(model.clone(), AlgebraElement::zero(alg.clone()));
        let b = CrossedElement::of_h(model.clone(), ScalarProfile::power(0.5));
        // 0 trivially passes the left membership and pairs to 0.
        let rep = pairing_duality(&zero, &b, &psi_p(2.0)).unwrap();
        assert_eq!(rep.value, Complex64::new(0.0, 0.0));
        // Non-members are reported before any pairing happens.
        let constant = CrossedElement::pi(model, AlgebraElement::identity(alg));
        assert!(matches!(
            pairing_duality(&constant, &b, &psi_p(2.0)),
            Err(crate::crossed::CrossedError::NotMember { .. })
        ));
    }

    #[test]
    fn probe_scalar_l1_closed_form() {
        // Scalar algebra with ψ_1: the test factors reduce to constants
        // (φ̃_{ψ_∞} ≡ 1), the numerator to m₀ m̄₁ tr(a), and every sampled
        // ratio collapses to μ₁(a) = ‖a‖₁ exactly.
        let alg = WeightedBlockAlgebra::atoms(&[1.3]).unwrap();
        let rho = crate::algebra::StateDensity::new(
            AlgebraElement::diagonal(alg.clone(), &[1.0 / 1.3]).unwrap(),
        )
        .unwrap();
        let model = CrossedModel::with_state(&rho);
        let w = AlgebraElement::diagonal(alg, &[2.0]).unwrap();
        let a = crate::crossed::ops::embed_luxemburg(&model, &w, &psi_p(1.0));
        let rep = probe_triple_norm(&a, &psi_p(1.0), 50, 9).unwrap();
        assert!(
            rel_gap(rep.sup_ratio, rep.mu1) < 1e-9,
            "ratio {} vs mu1 {}",
            rep.sup_ratio,
            rep.mu1
        );
        assert!(rep.bound_mu1_ok && rep.bound_3mu1_ok);
    }

    #[test]
    fn probe_examples() {
        let alg = WeightedBlockAlgebra::atoms(&[1.0, 0.7]).unwrap();
        let mut r = rng::rng(45);
        let rho = rng::rand_state_density(&mut r, &alg);
        let model = CrossedModel::with_state(&rho);
        // a = 0: ratio 0.
        let zero = crate::crossed::ops::embed_luxemburg(
            &model,
            &AlgebraElement::zero(alg.clone()),
            &psi_p(2.0),
        );
        let rep0 = probe_triple_norm(&zero, &psi_p(2.0), 20, 7).unwrap();
        assert_eq!(rep0.sup_ratio, 0.0);
        // Haagerup element with ψ_p: the displayed estimate gives the 3μ₁
        // ceiling.
        let b = rng::rand_diagonal(&mut r, &alg, 0.2, 2.0);
        let a = crate::crossed::ops::embed_luxemburg(&model, &b, &psi_p(2.0));
        let rep = probe_triple_norm(&a, &psi_p(2.0), 200, 11).unwrap();
        assert!(rep.bound_3mu1_ok, "sup {} vs 3μ₁ {}", rep.sup_ratio, 3.0 * rep.mu1);
        assert!(rep.sup_ratio > 0.0);
    }
}
