//! Property-based invariants over randomly generated Orlicz functions, step
//! profiles, and quasi-concave profiles.

use proptest::prelude::*;

use orlicz_lab::algebra::{AlgebraElement, WeightedBlockAlgebra};
use orlicz_lab::geometry::QuasiConcaveProfile;
use orlicz_lab::norms::{amemiya_norm, luxemburg_norm};
use orlicz_lab::numeric::log_grid;
use orlicz_lab::orlicz::OrliczFunction;
use orlicz_lab::svf::SingularValueFunction;

/// Convex knot tables: positive abscissa steps with nondecreasing slopes.
fn table_psi() -> impl Strategy<Value = OrliczFunction> {
    (
        prop::collection::vec((0.2f64..1.0, 0.05f64..1.2), 2..6),
        0.0f64..0.4,
    )
        .prop_map(|(increments, slope0)| {
            let mut knots = vec![(0.0, 0.0)];
            let mut t = 0.0;
            let mut y = 0.0;
            let mut slope = slope0;
            for (dt, dslope) in increments {
                slope += dslope;
                t += dt;
                y += slope * dt;
                knots.push((t, y));
            }
            OrliczFunction::table(knots, None).expect("constructed convex")
        })
}

/// Diagonal elements over a shared atom algebra.
fn diagonal_pair() -> impl Strategy<Value = (AlgebraElement, AlgebraElement)> {
    prop::collection::vec((0.1f64..4.0, 0.01f64..5.0, 0.01f64..5.0), 1..7).prop_map(|rows| {
        let weights: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let alg = WeightedBlockAlgebra::atoms(&weights).unwrap();
        let xs: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.2).collect();
        (
            AlgebraElement::diagonal(alg.clone(), &xs).unwrap(),
            AlgebraElement::diagonal(alg, &ys).unwrap(),
        )
    })
}

/// Quasi-concave profiles: pointwise minima of increasing affine functions.
fn quasi_concave() -> impl Strategy<Value = QuasiConcaveProfile> {
    prop::collection::vec((0.0f64..3.0, 0.01f64..2.0), 1..4).prop_map(|affines| {
        let f = move |t: f64| {
            affines
                .iter()
                .map(|&(a, b)| a + b * t)
                .fold(f64::INFINITY, f64::min)
        };
        QuasiConcaveProfile::from_fn_on(f, 1e-4, 1e4, 120).expect("valid profile")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn young_inequality_for_table_functions(
        psi in table_psi(),
        s in 0.0f64..10.0,
        t in 0.0f64..10.0,
    ) {
        let conj = psi.conjugate();
        let lhs = psi.eval(s) + conj.eval(t);
        if lhs.is_finite() {
            prop_assert!(lhs - s * t >= -1e-10 * (1.0 + s * t));
        }
    }

    #[test]
    fn inverse_composition_for_table_functions(
        psi in table_psi(),
        t in 1e-3f64..1e3,
    ) {
        let y = psi.eval(t);
        if y.is_finite() {
            prop_assert!(psi.inverse(y) >= t * (1.0 - 1e-12));
        }
        let s = psi.inverse(t);
        if s.is_finite() {
            prop_assert!(psi.eval(s) <= t * (1.0 + 1e-12) + 1e-300);
        }
    }

    #[test]
    fn luxemburg_is_a_norm_on_diagonal_elements(
        (a, b) in diagonal_pair(),
        psi in table_psi(),
        scale in 0.1f64..8.0,
    ) {
        let na = luxemburg_norm(&a, &psi);
        let nb = luxemburg_norm(&b, &psi);
        let nsum = luxemburg_norm(&a.add(&b), &psi);
        prop_assert!(nsum <= (na + nb) * (1.0 + 1e-10) + 1e-12);
        let nscaled = luxemburg_norm(&a.scale_re(scale), &psi);
        prop_assert!((nscaled - scale * na).abs() <= 1e-9 * (1.0 + scale * na));
        // Amemiya sandwich.
        let ame = amemiya_norm(&a, &psi);
        prop_assert!(ame >= na * (1.0 - 1e-10));
        prop_assert!(ame <= 2.0 * na * (1.0 + 1e-10));
    }

    #[test]
    fn distribution_is_a_weak_inverse_of_mu(
        (a, _) in diagonal_pair(),
        t in 0.0f64..12.0,
    ) {
        // λ_{μ_t(a)}(a) ≤ t.
        let mu = SingularValueFunction::of(&a);
        let m = mu.eval(t);
        prop_assert!(mu.distribution(m) <= t + 1e-12);
    }

    #[test]
    fn hull_sandwich_and_idempotence(profile in quasi_concave()) {
        let hull = profile.concave_majorant().unwrap();
        for (raw, hulled) in profile.knots().iter().zip(hull.knots()) {
            prop_assert!(hulled.1 >= raw.1 - 1e-12 * (1.0 + raw.1));
            prop_assert!(hulled.1 <= 2.0 * raw.1 + 1e-12 * (1.0 + raw.1));
        }
        let again = hull.concave_majorant().unwrap();
        for (x, y) in hull.knots().iter().zip(again.knots()) {
            prop_assert!((x.1 - y.1).abs() <= 1e-12 * (1.0 + x.1));
        }
    }

    #[test]
    fn fundamental_identities_for_table_functions(
        psi in table_psi(),
    ) {
        // φ_ψ quasi-concave and dominated by the growth bound.
        let phi = orlicz_lab::FundamentalFunction::luxemburg(psi.clone());
        let k = orlicz_lab::growth_constant(&psi);
        for t in log_grid(1e-4, 1e4, 33) {
            let v = phi.eval(t);
            if v.is_finite() {
                prop_assert!(v <= k * (1.0 + t) * (1.0 + 1e-9));
            }
        }
    }

    #[test]
    fn psi_json_round_trip(psi in table_psi()) {
        let json = serde_json::to_string(&psi).unwrap();
        let back: OrliczFunction = serde_json::from_str(&json).unwrap();
        for t in log_grid(1e-2, 1e2, 17) {
            prop_assert!((psi.eval(t) - back.eval(t)).abs() <= 1e-15 * (1.0 + psi.eval(t)));
        }
    }
}
