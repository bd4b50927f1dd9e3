//! Named verification suites. Each suite draws a deterministic instance
//! stream from its seed (trial `i` uses `seed + i`), runs its checks at the
//! pinned tolerances, and assembles an ordered report; trials run on a
//! worker pool capped by `ORLICZ_LAB_THREADS`.

use rayon::prelude::*;
use std::sync::Arc;

use crate::algebra::WeightedBlockAlgebra;
use crate::crossed::extreme::{norm_one_cap_inf, norm_one_plus_inf, IotaSum};
use crate::crossed::grid::GridSpec;
use crate::crossed::ops::{
    amemiya_via_lambda, embed_luxemburg, lux_via_mu1, membership_of_grid, normability_norm,
    verify_dt_identity, verify_mainthm, SpaceTag,
};
use crate::crossed::profile::ScalarProfile;
use crate::crossed::{CrossedElement, CrossedModel, Factor};
use crate::fundamental::FundamentalFunction;
use crate::interp::{default_grid, k_functional_both, modified_k_profile};
use crate::norms::{amemiya_norm, luxemburg_norm, orlicz_norm_dual_oracle};
use crate::numeric::{log_grid, rel_gap};
use crate::orlicz::OrliczFunction;
use crate::report::{CheckReport, SuiteReport, Worst};
use crate::rng;
use crate::svf::SingularValueFunction;

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}' (expected mainthm|mu1|genminnorm|haagerup|k3gen|normtop)")]
    Unknown(String),
}

/// Thread pool capped by `ORLICZ_LAB_THREADS` (all cores otherwise).
fn pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ORLICZ_LAB_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            builder = builder.num_threads(n.max(1));
        }
    }
    builder.build().expect("thread pool")
}

fn builtin_psis() -> Vec<OrliczFunction> {
    vec![
        OrliczFunction::power(1.0).unwrap(),
        OrliczFunction::power(2.0).unwrap(),
        OrliczFunction::power(4.0).unwrap(),
        OrliczFunction::OneCapInf,
        OrliczFunction::OnePlusInf,
    ]
}

/// Dispatch by suite name (the CLI surface).
pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    match name {
        "mainthm" => Ok(mainthm_suite(trials, seed)),
        "mu1" => Ok(mu1_suite(trials, seed)),
        "genminnorm" => Ok(genminnorm_suite(trials, seed)),
        "haagerup" => Ok(haagerup_suite(trials, seed)),
        "k3gen" => Ok(k3gen_suite(trials, seed)),
        "normtop" => Ok(normtop_suite(trials, seed)),
        other => Err(SuiteError::Unknown(other.to_string())),
    }
}

/// Distribution identity `λ_ε(a ⊗ φ_ψ(e^t)) = τ(ψ(|a|/ε))` on random
/// diagonal instances, all builtin ψ, log-spaced ε; the grid evaluator is
/// cross-checked against the closed form within its quadrature bound.
pub fn mainthm_suite(trials: usize, seed: u64) -> SuiteReport {
    let psis = builtin_psis();
    let results: Vec<(Worst, Worst)> = pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut r = rng::rng(seed + i as u64);
                let alg = rng::rand_atom_algebra(&mut r, 8);
                let model = CrossedModel::tracial(alg.clone());
                let a = rng::rand_diagonal(&mut r, &alg, 0.05, 5.0);
                let mut closed = Worst::default();
                let mut grid = Worst::default();
                for psi in &psis {
                    for eps in log_grid(1e-2, 1e2, 12) {
                        let (lhs, rhs) = verify_mainthm(&model, &a, psi, eps).unwrap();
                        if lhs.is_infinite() || rhs.is_infinite() {
                            if lhs.is_infinite() != rhs.is_infinite() {
                                closed.absorb(1e300);
                            }
                            continue;
                        }
                        closed.absorb((lhs - rhs).abs() / (1.0 + rhs));
                    }
                }
                // Grid evaluator on one ψ and a few ε per instance; the
                // coarse grid keeps the batch fast and its quadrature bound
                // scales with the cell width.
                if i % 10 == 0 {
                    let psi = &psis[i % psis.len()];
                    let x = CrossedElement::separable(
                        model,
                        a.clone(),
                        ScalarProfile::fundamental(FundamentalFunction::luxemburg(psi.clone())),
                    );
                    let g = x.to_grid(GridSpec::coarse());
                    for eps in [0.5, 1.0, 3.0] {
                        let exact = x.distribution(eps);
                        if !exact.is_finite() {
                            continue;
                        }
                        let approx = g.lambda(eps);
                        let budget = g.lambda_rel_bound() * exact + 1e-10;
                        grid.absorb((approx - exact).abs() / budget);
                    }
                }
                (closed, grid)
            })
            .collect()
    });
    let closed = results.iter().fold(Worst::default(), |w, r| w.merge(r.0));
    let grid = results.iter().fold(Worst::default(), |w, r| w.merge(r.1));
    SuiteReport::new(
        "mainthm",
        trials,
        seed,
        vec![
            CheckReport::new("distribution-identity", "mainthm", closed.0, 1e-9),
            CheckReport::new("grid-vs-closed-form", "mainthm/quadrature", grid.0, 1.0),
        ],
    )
}

/// Type III quasinorm laws: `t·μ_t ≤ μ₁` on `(0,1]` with the sup attained,
/// the generalised triangle inequality, and the `d_t` sandwich identity on
/// grid instances.
pub fn mu1_suite(trials: usize, seed: u64) -> SuiteReport {
    let results: Vec<(Worst, Worst, Worst, Worst, Worst)> = pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut r = rng::rng(seed + i as u64);
                let alg = rng::rand_atom_algebra(&mut r, 6);
                let rho = rng::rand_state_density(&mut r, &alg);
                let model = CrossedModel::with_state(&rho);
                let b = rng::rand_diagonal(&mut r, &alg, 0.1, 3.0);
                let psi = rng::rand_builtin_psi(&mut r);
                let x = if i % 3 == 0 {
                    let p = [1.0, 1.5, 2.0, 3.0][i % 4];
                    CrossedElement::haagerup(model.clone(), b.clone(), p)
                } else {
                    embed_luxemburg(&model, &b, &psi)
                };
                let mu1 = x.mu(1.0).unwrap();
                let mut tmu = Worst::default();
                let mut suplaw = Worst::default();
                let mut sup_t = 0.0f64;
                for t in log_grid(1e-3, 1.0, 24) {
                    let m = x.mu(t).unwrap();
                    tmu.absorb_excess(t * m, mu1 * (1.0 + 1e-12));
                    sup_t = sup_t.max(t * m);
                }
                suplaw.absorb_excess(mu1, sup_t * (1.0 + 1e-12));
                // Quasi-triangle on diagonal pairs.
                let mut tri = Worst::default();
                let by = rng::rand_diagonal(&mut r, &alg, 0.1, 3.0);
                let py = rng::rand_builtin_psi(&mut r);
                let y = embed_luxemburg(&model, &by, &py);
                if let (Ok(ms), Ok(mx), Ok(my)) =
                    (x.add(&y).mu(1.0), x.mu(1.0), y.mu(1.0))
                {
                    tri.absorb_excess(ms, 2.0 * (mx + my) * (1.0 + 1e-12));
                }
                // d_t identity on a coarse grid instance every few trials.
                let mut dt = Worst::default();
                let mut dnorm = Worst::default();
                if i % 10 == 0 {
                    let g = embed_luxemburg(&model, &b, &psi).to_grid(GridSpec::coarse());
                    for k in [16i64, 64, 256] {
                        let t = (-(k as f64) * g.step()).exp();
                        let rep = verify_dt_identity(&g, &psi, t).unwrap();
                        dt.absorb(rep.max_rel_err);
                        dnorm.absorb_excess(rep.d_op_norm, 1.0 + 1e-9);
                    }
                }
                (tmu, suplaw, tri, dt, dnorm)
            })
            .collect()
    });
    let fold = |f: fn(&(Worst, Worst, Worst, Worst, Worst)) -> Worst| {
        results.iter().fold(Worst::default(), |w, r| w.merge(f(r)))
    };
    SuiteReport::new(
        "mu1",
        trials,
        seed,
        vec![
            CheckReport::new("t-mu-t-below-mu1", "mu1", fold(|r| r.0).0, 1e-12),
            CheckReport::new("sup-law", "mu1/sup", fold(|r| r.1).0, 1e-12),
            CheckReport::new("quasi-triangle", "qntop", fold(|r| r.2).0, 1e-12),
            CheckReport::new("dt-identity", "mu1/dt", fold(|r| r.3).0, 1e-6),
            CheckReport::new("dt-contraction", "mu1/dt-norm", fold(|r| r.4).0, 1e-9),
        ],
    )
}

/// Extreme-space bounds: `(1/16)μ₁ ≤ ‖·‖_{1∩∞} ≤ μ₁` and, on the sum side,
/// the certified lower bound never exceeding the decomposition upper bound.
pub fn genminnorm_suite(trials: usize, seed: u64) -> SuiteReport {
    let results: Vec<(Worst, Worst, Worst)> = pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut r = rng::rng(seed + i as u64);
                let alg = rng::rand_atom_algebra(&mut r, 5);
                let rho = rng::rand_state_density(&mut r, &alg);
                let model = CrossedModel::with_state(&rho);
                let b = if i % 7 == 0 {
                    // Noncommuting instance on a genuine matrix block.
                    let alg2 = rng::rand_block_algebra(&mut r, 1, 3);
                    let rho2 = rng::rand_state_density(&mut r, &alg2);
                    let model2 = CrossedModel::with_state(&rho2);
                    let b2 = rng::rand_hermitian(&mut r, &alg2, 1.0);
                    let rep = norm_one_cap_inf(&model2, &b2).unwrap();
                    let mut upper = Worst::default();
                    let mut lower = Worst::default();
                    upper.absorb_excess(rep.value, rep.mu1 * (1.0 + 1e-9));
                    lower.absorb_excess(rep.mu1, 16.0 * rep.value * (1.0 + 1e-9));
                    return (upper, lower, Worst::default());
                } else {
                    rng::rand_diagonal(&mut r, &alg, 0.05, 3.0)
                };
                let rep = norm_one_cap_inf(&model, &b).unwrap();
                let mut upper = Worst::default();
                let mut lower = Worst::default();
                upper.absorb_excess(rep.value, rep.mu1 * (1.0 + 1e-9));
                lower.absorb_excess(rep.mu1, 16.0 * rep.value * (1.0 + 1e-9));
                // Sum-space bounds on an ι-sum built from the same data.
                let mut plus = Worst::default();
                let x = IotaSum::iota_inf(model.clone(), b.clone())
                    .add(&IotaSum::iota_1(model, rng::rand_diagonal(&mut r, &alg, 0.05, 2.0)));
                let bounds = norm_one_plus_inf(&x, 48).unwrap();
                plus.absorb_excess(bounds.lower, bounds.upper * (1.0 + 1e-9));
                (upper, lower, plus)
            })
            .collect()
    });
    let fold = |f: fn(&(Worst, Worst, Worst)) -> Worst| {
        results.iter().fold(Worst::default(), |w, r| w.merge(f(r)))
    };
    SuiteReport::new(
        "genminnorm",
        trials,
        seed,
        vec![
            CheckReport::new("one-cap-upper", "genminnorm/upper", fold(|r| r.0).0, 1e-9),
            CheckReport::new("one-cap-lower", "genminnorm/lower", fold(|r| r.1).0, 1e-9),
            CheckReport::new(
                "one-plus-lower-le-upper",
                "genmaxnorm",
                fold(|r| r.2).0,
                1e-9,
            ),
        ],
    )
}

/// Haagerup L^p law: `t^{1/p} μ_t` is t-independent and equals the weighted
/// Schatten norm of `b ρ^{1/p}`.
pub fn haagerup_suite(trials: usize, seed: u64) -> SuiteReport {
    let ps = [1.0, 1.5, 2.0, 3.0];
    let worst: Worst = pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut r = rng::rng(seed + i as u64);
                let alg = rng::rand_block_algebra(&mut r, 2, 3);
                let rho = rng::rand_state_density(&mut r, &alg);
                let model = CrossedModel::with_state(&rho);
                let b = rng::rand_element(&mut r, &alg, 1.5);
                let p = ps[i % ps.len()];
                let x = CrossedElement::haagerup(model.clone(), b.clone(), p);
                let rho_p = model.rho_apply(&|v| v.powf(1.0 / p));
                let want: f64 = b
                    .mul(&rho_p)
                    .weighted_singular_values()
                    .iter()
                    .map(|&(v, w)| w * v.powf(p))
                    .sum::<f64>()
                    .powf(1.0 / p);
                let mut w = Worst::default();
                for t in log_grid(1e-3, 1e3, 20) {
                    let m = x.mu(t).unwrap();
                    w.absorb(rel_gap(t.powf(1.0 / p) * m, want));
                }
                w
            })
            .reduce(Worst::default, Worst::merge)
    });
    SuiteReport::new(
        "haagerup",
        trials,
        seed,
        vec![CheckReport::new(
            "lp-norm-law",
            "haagerup/lp",
            worst.0,
            1e-9,
        )],
    )
}

/// Factor-space chain: constructed members of `S^ψ` pass the cutoff test,
/// their products with `S_{ψ*}` members are homogeneous of L² degree, and
/// the one-sided sandwich lands in L² as well.
pub fn k3gen_suite(trials: usize, seed: u64) -> SuiteReport {
    let results: Vec<(Worst, Worst, Worst)> = pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut r = rng::rng(seed + i as u64);
                let alg = rng::rand_atom_algebra(&mut r, 4);
                let rho = rng::rand_state_density(&mut r, &alg);
                let model = CrossedModel::with_state(&rho);
                let psi = rng::rand_builtin_psi(&mut r);
                let m0 = rng::rand_diagonal(&mut r, &alg, 0.1, 2.0);
                let m1 = rng::rand_diagonal(&mut r, &alg, 0.1, 2.0);
                let a = CrossedElement::product(
                    model.clone(),
                    vec![
                        Factor::Matrix(m0),
                        Factor::OfH(ScalarProfile::fundamental_sqrt(
                            FundamentalFunction::luxemburg(psi.clone()),
                        )),
                    ],
                );
                let b = CrossedElement::product(
                    model.clone(),
                    vec![
                        Factor::Matrix(m1),
                        Factor::OfH(ScalarProfile::fundamental_sqrt(FundamentalFunction::orlicz(
                            psi.conjugate(),
                        ))),
                    ],
                );
                let spec = GridSpec::coarse();
                let mut member = Worst::default();
                let grid_a = a.to_grid(spec);
                let v = membership_of_grid(&grid_a, &SpaceTag::UpperFactor(psi.clone())).unwrap();
                member.absorb(v.max_rel_err);
                // (1) ⇒ (2): a·b* is e^{-s/2}-homogeneous.
                let mut product = Worst::default();
                let ab = a.mul(&b.adjoint()).to_grid(spec);
                product.absorb(
                    ab.homogeneity_defect(0.5, &crate::crossed::ops::MEMBERSHIP_SHIFTS)
                        .unwrap(),
                );
                // (2) ⇒ (3): one-sided sandwich a·φ̃_{ψ*}(h)^{1/2} ∈ L².
                let mut oneside = Worst::default();
                let g = ScalarProfile::fundamental_sqrt(FundamentalFunction::orlicz(
                    psi.conjugate(),
                ));
                let side = grid_a.multiply_of_h(&g, false);
                oneside.absorb(
                    side.homogeneity_defect(0.5, &crate::crossed::ops::MEMBERSHIP_SHIFTS)
                        .unwrap(),
                );
                (member, product, oneside)
            })
            .collect()
    });
    let fold = |f: fn(&(Worst, Worst, Worst)) -> Worst| {
        results.iter().fold(Worst::default(), |w, r| w.merge(f(r)))
    };
    SuiteReport::new(
        "k3gen",
        trials,
        seed,
        vec![
            CheckReport::new("factor-membership", "K3gen/1", fold(|r| r.0).0, 1e-6),
            CheckReport::new("product-in-l2", "K3gen/2", fold(|r| r.1).0, 1e-6),
            CheckReport::new("one-sided-in-l2", "K3gen/3", fold(|r| r.2).0, 1e-6),
        ],
    )
}

/// Norm-topology implications and the dilation-integral norm bounds, plus
/// the bounded-multiplier facts connecting the two fundamental functions.
pub fn normtop_suite(trials: usize, seed: u64) -> SuiteReport {
    let results: Vec<(Worst, Worst, Worst)> = pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut r = rng::rng(seed + i as u64);
                let alg = rng::rand_atom_algebra(&mut r, 6);
                let model = CrossedModel::tracial(alg.clone());
                let a = rng::rand_diagonal(&mut r, &alg, 0.02, 2.0);
                let psi = rng::rand_builtin_psi(&mut r);
                // If ‖a‖_ψ < ε² ≤ 1 then λ_{√ε}(a⊗φ_ψ(e^t)) ≤ √ε.
                let mut implication = Worst::default();
                let lux = lux_via_mu1(&model, &a, &psi).unwrap();
                let x = CrossedElement::separable(
                    model.clone(),
                    a.clone(),
                    ScalarProfile::fundamental(FundamentalFunction::luxemburg(psi.clone())),
                );
                for eps in log_grid(1e-2, 1.0, 12) {
                    if lux < eps * eps {
                        let lam = x.distribution(eps.sqrt());
                        implication.absorb_excess(lam, eps.sqrt() * (1.0 + 1e-9));
                    }
                }
                // Normability bounds on Haagerup elements with good indices.
                let mut bounds = Worst::default();
                if i % 4 == 0 {
                    let p = [2.0, 3.0, 4.0][i % 3];
                    let xh = CrossedElement::haagerup(
                        model.clone(),
                        rng::rand_diagonal(&mut r, &alg, 0.1, 2.0),
                        p,
                    );
                    let rep = normability_norm(&xh, &OrliczFunction::power(p).unwrap()).unwrap();
                    bounds.absorb_excess(rep.mu1, rep.value * (1.0 + 1e-9));
                    bounds.absorb_excess(rep.value, rep.constant * rep.mu1 * (1.0 + 1e-6));
                    bounds.absorb(rep.intermediate_violation);
                }
                // Measured (not asserted): the gap between μ₁ of the
                // Orlicz-profile embedding and the Amemiya norm. The two-sided
                // sandwich caps the relative gap at 1.
                let mut gap = Worst::default();
                let x_orl = CrossedElement::separable(
                    model,
                    a.clone(),
                    ScalarProfile::fundamental(FundamentalFunction::orlicz(psi.clone())),
                );
                if let Ok(m) = x_orl.mu(1.0) {
                    let ame = crate::norms::amemiya_norm(&a, &psi);
                    if ame > 0.0 {
                        gap.absorb((m - ame).abs() / ame);
                    }
                }
                (implication, bounds, gap)
            })
            .collect()
    });
    // Multiplier norms are instance-independent: sup φ̃_ψ/φ_ψ ≤ 2 with the
    // reciprocal bounded by 1.
    let mut mult = Worst::default();
    for psi in builtin_psis() {
        let lux = FundamentalFunction::luxemburg(psi.clone());
        let orl = FundamentalFunction::orlicz(psi);
        for u in log_grid(1e-8, 1e8, 200) {
            let (a, b) = (lux.eval(u), orl.eval(u));
            if a.is_finite() && b.is_finite() && a > 0.0 {
                mult.absorb_excess(b / a, 2.0 * (1.0 + 1e-9));
                mult.absorb_excess(a / b, 1.0 + 1e-9);
            }
        }
    }
    let fold = |f: fn(&(Worst, Worst, Worst)) -> Worst| {
        results.iter().fold(Worst::default(), |w, r| w.merge(f(r)))
    };
    SuiteReport::new(
        "normtop",
        trials,
        seed,
        vec![
            CheckReport::new("measure-ball-implication", "normtop", fold(|r| r.0).0, 1e-9),
            CheckReport::new("dilation-integral-bounds", "ntop", fold(|r| r.1).0, 1e-6),
            CheckReport::new("multiplier-norms", "norm-multipliers", mult.0, 1e-9),
            // Open question: whether μ₁ of the Orlicz-profile embedding
            // recovers the Orlicz norm exactly. Reported at the proven
            // factor-2 ceiling, never asserted tighter.
            CheckReport::new("orlicz-mu1-gap-measured", "orl-mu1-gap", fold(|r| r.2).0, 1.0),
        ],
    )
}

/// Luxemburg and Amemiya bridges between the algebra-side norms and the
/// crossed-product quantities, plus the commutative dual-supremum oracle.
pub fn bridges_suite(trials: usize, seed: u64) -> SuiteReport {
    let results: Vec<(Worst, Worst, Worst, Worst)> = pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut r = rng::rng(seed + i as u64);
                let alg = rng::rand_atom_algebra(&mut r, 6);
                let model = CrossedModel::tracial(alg.clone());
                let a = rng::rand_diagonal(&mut r, &alg, 0.05, 5.0);
                let psi = rng::rand_builtin_psi(&mut r);
                let mut lux_bridge = Worst::default();
                let mut ame_bridge = Worst::default();
                let mut oracle_w = Worst::default();
                let mut sandwich = Worst::default();
                let lux = luxemburg_norm(&a, &psi);
                lux_bridge.absorb(rel_gap(lux_via_mu1(&model, &a, &psi).unwrap(), lux));
                let ame = amemiya_norm(&a, &psi);
                ame_bridge.absorb(rel_gap(amemiya_via_lambda(&model, &a, &psi).unwrap(), ame));
                sandwich.absorb_excess(lux, ame * (1.0 + 1e-10));
                sandwich.absorb_excess(ame, 2.0 * lux * (1.0 + 1e-10));
                if alg.blocks().len() <= 4 {
                    let oracle = orlicz_norm_dual_oracle(&a, &psi).unwrap();
                    oracle_w.absorb(rel_gap(oracle, ame));
                }
                (lux_bridge, ame_bridge, oracle_w, sandwich)
            })
            .collect()
    });
    let fold = |f: fn(&(Worst, Worst, Worst, Worst)) -> Worst| {
        results.iter().fold(Worst::default(), |w, r| w.merge(f(r)))
    };
    SuiteReport::new(
        "bridges",
        trials,
        seed,
        vec![
            CheckReport::new("luxemburg-bridge", "Lux", fold(|r| r.0).0, 1e-8),
            CheckReport::new("amemiya-bridge", "amemiya", fold(|r| r.1).0, 1e-8),
            CheckReport::new("dual-sup-oracle", "kothe", fold(|r| r.2).0, 1e-5),
            CheckReport::new("lux-orlicz-sandwich", "norm-sandwich", fold(|r| r.3).0, 1e-10),
        ],
    )
}

/// The Fack–Kosaki property list on random instances, exact step-function
/// arithmetic.
pub fn fk_suite(trials: usize, seed: u64) -> SuiteReport {
    let worst: Worst = pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut r = rng::rng(seed + i as u64);
                let alg = rng::rand_block_algebra(&mut r, 2, 4);
                let a = rng::rand_element(&mut r, &alg, 1.5);
                let b = rng::rand_element(&mut r, &alg, 1.5);
                let mua = SingularValueFunction::of(&a);
                let mub = SingularValueFunction::of(&b);
                let mut w = Worst::default();
                let tol_scale = 1.0 + mua.sup().max(mub.sup());
                // μ(a) = μ(|a|) = μ(a*) and homogeneity μ(αa) = |α|μ(a).
                let mu_star = SingularValueFunction::of(&a.adjoint());
                let mu_scaled = SingularValueFunction::of(&a.scale_re(-2.5));
                for (x, y) in mua.atoms().iter().zip(mu_star.atoms()) {
                    w.absorb((x.0 - y.0).abs() / tol_scale);
                }
                for (x, y) in mua.atoms().iter().zip(mu_scaled.atoms()) {
                    w.absorb((2.5 * x.0 - y.0).abs() / tol_scale);
                }
                // lim_{t→0} μ_t = ‖a‖∞.
                w.absorb((mua.eval(0.0) - a.op_norm()).abs() / tol_scale);
                // Subadditivity and submultiplicativity at cell corners. The
                // corner probes are nudged into the half-open cells so that
                // breakpoints accumulated in different summation orders
                // cannot land an ulp apart across elements.
                let nudge = |t: f64| t * (1.0 + 1e-13);
                let musum = SingularValueFunction::of(&a.add(&b));
                let muprod = SingularValueFunction::of(&a.mul(&b));
                let grid_a: Vec<f64> = std::iter::once(0.0).chain(mua.breakpoints()).collect();
                let grid_b: Vec<f64> = std::iter::once(0.0).chain(mub.breakpoints()).collect();
                for &t in &grid_a {
                    for &s in &grid_b {
                        let (te, se) = (nudge(t), nudge(s));
                        w.absorb_excess(
                            musum.eval(te + se),
                            mua.eval(te) + mub.eval(se) + 1e-10 * tol_scale,
                        );
                        w.absorb_excess(
                            muprod.eval(te + se),
                            mua.eval(te) * mub.eval(se) + 1e-10 * tol_scale,
                        );
                    }
                    w.absorb_excess(
                        muprod.eval(nudge(t)),
                        a.op_norm() * mub.eval(nudge(t)) + 1e-10 * tol_scale,
                    );
                }
                // Order: 0 ≤ x ≤ y ⇒ μ(x) ≤ μ(y).
                let x = rng::rand_psd(&mut r, &alg, 1.0);
                let y = x.add(&rng::rand_psd(&mut r, &alg, 0.7));
                let mux = SingularValueFunction::of(&x);
                let muy = SingularValueFunction::of(&y);
                for &t in std::iter::once(&0.0).chain(mux.breakpoints().iter()) {
                    w.absorb_excess(mux.eval(nudge(t)), muy.eval(nudge(t)) + 1e-10);
                }
                // f(μ_t(|a|)) = μ_t(f(|a|)) for increasing continuous f.
                let f = |v: f64| (1.0 + v).ln() + 0.5 * v;
                let lhs = mua.map_values(f);
                let rhs = SingularValueFunction::of(&a.abs_apply(f));
                for (p, q) in lhs.atoms().iter().zip(rhs.atoms()) {
                    w.absorb((p.0 - q.0).abs() / tol_scale);
                }
                // Trace formula.
                let (l, rr) = crate::norms::trace_formula_check(&a);
                w.absorb((l - rr).abs() / (1.0 + l.abs()));
                w
            })
            .reduce(Worst::default, Worst::merge)
    });
    SuiteReport::new(
        "fk",
        trials,
        seed,
        vec![CheckReport::new("fk-property-list", "FK", worst.0, 1e-10)],
    )
}

/// K-method suite: the `(L¹, L∞)` K-functional against the clipping oracle,
/// K̃ concavity over the frozen family, and density reconstruction.
pub fn kmethod_suite(trials: usize, seed: u64) -> SuiteReport {
    let results: Vec<(Worst, Worst, Worst, Worst)> = pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut r = rng::rng(seed + i as u64);
                let alg = rng::rand_block_algebra(&mut r, 2, 4);
                let f = rng::rand_element(&mut r, &alg, 2.0);
                let mut korcl = Worst::default();
                for t in log_grid(1e-2, 1e2, 9) {
                    let (integral, oracle) = k_functional_both(&f, t);
                    korcl.absorb((integral - oracle).abs() / (1.0 + integral));
                }
                let mut conc = Worst::default();
                let mut recon = Worst::default();
                let mut rf_tri = Worst::default();
                if i % 5 == 0 {
                    let alg2 = rng::rand_atom_algebra(&mut r, 5);
                    let rho = rng::rand_state_density(&mut r, &alg2);
                    let model = CrossedModel::with_state(&rho);
                    let w = rng::rand_diagonal(&mut r, &alg2, 0.1, 3.0);
                    let x = IotaSum::iota_inf(model.clone(), w)
                        .add(&IotaSum::iota_2r(
                            model.clone(),
                            rng::rand_diagonal(&mut r, &alg2, 0.1, 1.5),
                        ));
                    match modified_k_profile(&x, &default_grid(), 48) {
                        Ok(profile) => {
                            recon.absorb(profile.reconstruction_error());
                            // Measured (not asserted): triangle behaviour of
                            // the proposed ρ(k̃(·)) quantity.
                            let y = IotaSum::iota_1(
                                model,
                                rng::rand_diagonal(&mut r, &alg2, 0.1, 1.5),
                            );
                            if let (Ok(py), Ok(pxy)) = (
                                modified_k_profile(&y, &default_grid(), 48),
                                modified_k_profile(&x.add(&y), &default_grid(), 48),
                            ) {
                                let spec = crate::interp::RieszFischerNormSpec::lq(2.0).unwrap();
                                let nx = crate::interp::riesz_fischer_norm(&spec, &profile);
                                let ny = crate::interp::riesz_fischer_norm(&spec, &py);
                                let nxy = crate::interp::riesz_fischer_norm(&spec, &pxy);
                                if nx + ny > 0.0 {
                                    rf_tri.absorb(((nxy - nx - ny) / (nx + ny)).max(0.0));
                                }
                            }
                        }
                        Err(e) => {
                            // Concavity failures surface through the error.
                            let _ = e;
                            conc.absorb(1e300);
                        }
                    }
                }
                (korcl, conc, recon, rf_tri)
            })
            .collect()
    });
    let fold = |f: fn(&(Worst, Worst, Worst, Worst)) -> Worst| {
        results.iter().fold(Worst::default(), |w, r| w.merge(f(r)))
    };
    SuiteReport::new(
        "kmethod",
        trials,
        seed,
        vec![
            CheckReport::new("k-equals-mu-integral", "kfunc", fold(|r| r.0).0, 1e-8),
            CheckReport::new("ktilde-concavity", "ktilde/concave", fold(|r| r.1).0, 1e-10),
            CheckReport::new("ktilde-reconstruction", "ktilde/density", fold(|r| r.2).0, 1e-6),
            // The proposed quantity is only a candidate norm: violations are
            // measured against a unit ceiling, not asserted to vanish.
            CheckReport::new("rf-triangle-measured", "rf-norm-probe", fold(|r| r.3).0, 1.0),
        ],
    )
}

/// Function-machinery suite (biconjugates, fundamental-function identities,
/// dilation constants, reconstruction round trip).
pub fn function_machinery_suite(_trials: usize, seed: u64) -> SuiteReport {
    let mut bicon = Worst::default();
    let mut product = Worst::default();
    let mut sandwich = Worst::default();
    let mut roundtrip = Worst::default();
    let mut boyd_w = Worst::default();
    for psi in builtin_psis() {
        let bi = psi.conjugate().conjugate();
        for t in log_grid(1e-2, 1e2, 33) {
            let (x, y) = (bi.eval(t), psi.eval(t));
            if x.is_finite() != y.is_finite() {
                bicon.absorb(1e300);
            } else if x.is_finite() {
                bicon.absorb((x - y).abs() / (1.0 + y.max(x)));
            }
        }
        let lux = FundamentalFunction::luxemburg(psi.clone());
        let orl = FundamentalFunction::orlicz(psi.clone());
        let orl_conj = FundamentalFunction::orlicz(psi.conjugate());
        for t in log_grid(1e-6, 1e6, 61) {
            product.absorb(rel_gap(lux.eval(t) * orl_conj.eval(t), t));
            let (a, b) = (lux.eval(t), orl.eval(t));
            if a.is_finite() && b.is_finite() {
                sandwich.absorb_excess(a, b * (1.0 + 1e-12));
                sandwich.absorb_excess(b, 2.0 * a * (1.0 + 1e-12));
            }
        }
    }
    // ψ₀ reconstruction round trip at profile knots.
    let psi3 = OrliczFunction::power(3.0).unwrap();
    let phi = FundamentalFunction::luxemburg(psi3);
    let profile = crate::geometry::QuasiConcaveProfile::from_fn(|t| phi.eval(t)).unwrap();
    let psi0 = crate::geometry::orlicz_from_fundamental(&profile).unwrap();
    let back = FundamentalFunction::luxemburg(psi0);
    for &(t, y) in profile
        .knots()
        .iter()
        .filter(|(t, _)| (1e-6..1e6).contains(t))
    {
        roundtrip.absorb((back.eval(t) - y).abs() / y.max(1e-12));
    }
    // Boyd constant for ψ₂ pinned at 2 within 1e-3.
    let boyd = crate::fundamental::boyd_normability(&OrliczFunction::power(2.0).unwrap());
    boyd_w.absorb((boyd.constant - 2.0).abs() / 1.0);
    SuiteReport::new(
        "function-machinery",
        0,
        seed,
        vec![
            CheckReport::new("biconjugate", "biconj", bicon.0, 1e-6),
            CheckReport::new("fundamental-product", "phi-product", product.0, 1e-9),
            CheckReport::new("lux-orl-sandwich", "phi-sandwich", sandwich.0, 1e-12),
            CheckReport::new("psi0-round-trip", "construct-psi0", roundtrip.0, 1e-8),
            CheckReport::new("boyd-constant-psi2", "boyd", boyd_w.0, 1e-3),
        ],
    )
}

/// Construct the tracial model once for external callers.
pub fn tracial_model(alg: Arc<WeightedBlockAlgebra>) -> Arc<CrossedModel> {
    CrossedModel::tracial(alg)
}

/// Format helper for the CLI: all suites runnable by name.
pub const SUITE_NAMES: [&str; 6] = ["mainthm", "mu1", "genminnorm", "haagerup", "k3gen", "normtop"];

#[allow(unused_imports)]
use crate::algebra::StateDensity;
#[allow(unused_imports)]
pub use crate::report::SCHEMA;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_named_suites_pass_smoke() {
        for name in SUITE_NAMES {
            let trials = match name {
                "mainthm" => 20,
                "mu1" => 20,
                "genminnorm" => 10,
                "haagerup" => 15,
                "k3gen" => 6,
                "normtop" => 12,
            _ => 5,
            };
            let rep = run_suite(name, trials, 7).unwrap();
            assert!(rep.pass, "suite {name} failed: {}", rep.to_json());
        }
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite("nope", 1, 1).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = mainthm_suite(10, 99).to_json();
        let b = mainthm_suite(10, 99).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn auxiliary_suites_pass_smoke() {
        assert!(bridges_suite(20, 3).pass);
        assert!(fk_suite(30, 4).pass);
        assert!(kmethod_suite(15, 5).pass);
        assert!(function_machinery_suite(0, 6).pass);
    }
}
