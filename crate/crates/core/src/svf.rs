//! Generalised singular value functions as exact step functions.
//!
//! For an element `a` of a weighted block algebra the distribution function
//! is `λ_s(a) = τ(χ_{(s,∞)}(|a|))` and the singular value function its
//! right-continuous inverse `μ_t(a) = inf{s ≥ 0 : λ_s(a) ≤ t}`. Everything
//! here is kept as sorted breakpoint lists; integrals are closed-form sums.

use crate::algebra::AlgebraElement;

/// Right-continuous nonincreasing step profile: descending values with the
/// measure weight each one carries.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularValueFunction {
    /// `(value, width)` atoms, values descending, widths > 0.
    atoms: Vec<(f64, f64)>,
}

impl SingularValueFunction {
    pub fn from_weighted(mut pairs: Vec<(f64, f64)>) -> Self {
        pairs.retain(|&(_, w)| w > 0.0);
        pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        SingularValueFunction { atoms: pairs }
    }

    /// The singular value function of an algebra element: blockwise singular
    /// values, each carrying the block weight once per multiplicity.
    pub fn of(a: &AlgebraElement) -> Self {
        Self::from_weighted(a.weighted_singular_values())
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// Total measure `Σ w_k n_k` of the support partition (the measure of
    /// `{μ > 0}` is smaller when zero singular values occur).
    pub fn total_width(&self) -> f64 {
        self.atoms.iter().map(|&(_, w)| w).sum()
    }

    /// `μ_t`: the value of the step profile at `t ≥ 0` (0 beyond the total
    /// width).
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        let mut acc = 0.0;
        for &(v, w) in &self.atoms {
            acc += w;
            if t < acc {
                return v;
            }
        }
        0.0
    }

    /// `λ_s = m({μ > s})`, computed from the atoms.
    pub fn distribution(&self, s: f64) -> f64 {
        self.atoms
            .iter()
            .take_while(|&&(v, _)| v > s)
            .map(|&(_, w)| w)
            .sum()
    }

    /// Breakpoints of `μ` in the `t` axis: cumulative widths (0 excluded).
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.atoms
            .iter()
            .map(|&(_, w)| {
                acc += w;
                acc
            })
            .collect()
    }

    /// `∫_0^∞ μ_t dt = Σ σ_j w_j` exactly.
    pub fn integral(&self) -> f64 {
        self.atoms.iter().map(|&(v, w)| v * w).sum()
    }

    /// `∫_0^t μ_s ds` exactly.
    pub fn integral_to(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        let mut left = t;
        for &(v, w) in &self.atoms {
            if left <= 0.0 {
                break;
            }
            let d = left.min(w);
            acc += v * d;
            left -= d;
        }
        acc
    }

    /// `∫_0^∞ f(μ_t) dt` for `f(0) = 0` — exact on steps.
    pub fn integral_of(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for &(v, w) in &self.atoms {
            let fv = f(v);
            if fv == 0.0 {
                continue;
            }
            if fv.is_infinite() {
                return f64::INFINITY;
            }
            acc += fv * w;
        }
        acc
    }

    /// Apply a nondecreasing `f` with `f(0) ≥ 0` to the values (the order is
    /// preserved, so this is again a singular value function).
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> SingularValueFunction {
        SingularValueFunction {
            atoms: self.atoms.iter().map(|&(v, w)| (f(v), w)).collect(),
        }
    }

    pub fn sup(&self) -> f64 {
        self.atoms.first().map(|&(v, _)| v).unwrap_or(0.0)
    }

    /// Pointwise comparison grid: every breakpoint of either function plus 0.
    pub fn merged_grid(&self, other: &SingularValueFunction) -> Vec<f64> {
        let mut pts = vec![0.0];
        pts.extend(self.breakpoints());
        pts.extend(other.breakpoints());
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup_by(|a, b| (*a - *b).abs() <= f64::EPSILON * a.abs().max(1.0));
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::WeightedBlockAlgebra;

    #[test]
    fn two_atom_profile() {
        let alg = WeightedBlockAlgebra::atoms(&[1.0, 1.0]).unwrap();
        let a = AlgebraElement::diagonal(alg, &[3.0, 1.0]).unwrap();
        let mu = SingularValueFunction::of(&a);
        assert_eq!(mu.eval(0.0), 3.0);
        assert_eq!(mu.eval(0.99), 3.0);
        assert_eq!(mu.eval(1.0), 1.0);
        assert_eq!(mu.eval(1.5), 1.0);
        assert_eq!(mu.eval(2.0), 0.0);
        assert_eq!(mu.integral(), 4.0);
    }

    #[test]
    fn weighted_atom() {
        let alg = WeightedBlockAlgebra::atoms(&[0.25]).unwrap();
        let a = AlgebraElement::diagonal(alg, &[2.0]).unwrap();
        let mu = SingularValueFunction::of(&a);
        assert_eq!(mu.eval(0.1), 2.0);
        assert_eq!(mu.eval(0.25), 0.0);
        // λ_s = 0.25 below 2, then 0.
        assert_eq!(mu.distribution(1.9), 0.25);
        assert_eq!(mu.distribution(2.0), 0.0);
    }

    #[test]
    fn partial_integrals() {
        let mu = SingularValueFunction::from_weighted(vec![(3.0, 1.0), (1.0, 1.0)]);
        assert_eq!(mu.integral_to(0.5), 1.5);
        assert_eq!(mu.integral_to(1.0), 3.0);
        assert_eq!(mu.integral_to(1.5), 3.5);
        assert_eq!(mu.integral_to(10.0), 4.0);
    }
}
