//! Seeded random instance generators for the verification suites. A fixed
//! seed pins the entire instance stream, which keeps the reports
//! byte-identical across runs.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, StateDensity, WeightedBlockAlgebra};
use crate::linalg::CMatrix;
use crate::orlicz::OrliczFunction;

pub type Seeded = ChaCha8Rng;

pub fn rng(seed: u64) -> Seeded {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Commutative algebra with `atoms` one-dimensional blocks, weights in
/// `[0.1, 4]`.
pub fn rand_atom_algebra(r: &mut Seeded, max_atoms: usize) -> Arc<WeightedBlockAlgebra> {
    let n = r.gen_range(1..=max_atoms);
    let weights: Vec<f64> = (0..n).map(|_| r.gen_range(0.1..4.0)).collect();
    WeightedBlockAlgebra::atoms(&weights).unwrap()
}

/// Block algebra with a couple of genuine matrix blocks.
pub fn rand_block_algebra(r: &mut Seeded, max_blocks: usize, max_dim: usize) -> Arc<WeightedBlockAlgebra> {
    let b = r.gen_range(1..=max_blocks);
    let blocks: Vec<(usize, f64)> = (0..b)
        .map(|_| (r.gen_range(1..=max_dim), r.gen_range(0.1..4.0)))
        .collect();
    WeightedBlockAlgebra::new(blocks).unwrap()
}

/// Diagonal element with entries in `[lo, hi]`.
pub fn rand_diagonal(
    r: &mut Seeded,
    alg: &Arc<WeightedBlockAlgebra>,
    lo: f64,
    hi: f64,
) -> AlgebraElement {
    let entries: Vec<f64> = alg.blocks().iter().map(|_| r.gen_range(lo..hi)).collect();
    AlgebraElement::diagonal(alg.clone(), &entries).unwrap()
}

/// General complex element, entries with real and imaginary parts in
/// `[-scale, scale]`.
pub fn rand_element(r: &mut Seeded, alg: &Arc<WeightedBlockAlgebra>, scale: f64) -> AlgebraElement {
    let blocks = alg
        .blocks()
        .iter()
        .map(|&(n, _)| {
            CMatrix::from_fn(n, |_, _| {
                Complex64::new(r.gen_range(-scale..scale), r.gen_range(-scale..scale))
            })
        })
        .collect();
    AlgebraElement::new(alg.clone(), blocks).unwrap()
}

/// Random Hermitian element.
pub fn rand_hermitian(r: &mut Seeded, alg: &Arc<WeightedBlockAlgebra>, scale: f64) -> AlgebraElement {
    let g = rand_element(r, alg, scale);
    g.add(&g.adjoint()).scale_re(0.5)
}

/// Random positive semidefinite element `g*g`, rescaled to unit operator norm
/// times `scale`.
pub fn rand_psd(r: &mut Seeded, alg: &Arc<WeightedBlockAlgebra>, scale: f64) -> AlgebraElement {
    let g = rand_element(r, alg, 1.0);
    let p = g.adjoint().mul(&g);
    let top = p.op_norm();
    if top > 0.0 {
        p.scale_re(scale / top)
    } else {
        p
    }
}

/// Faithful state density: positive definite with unit trace, eigenvalues
/// floored away from zero.
pub fn rand_state_density(r: &mut Seeded, alg: &Arc<WeightedBlockAlgebra>) -> StateDensity {
    let p = rand_psd(r, alg, 1.0);
    let floored = p.add(&AlgebraElement::identity(alg.clone()).scale_re(0.05));
    let tr = floored.trace().re;
    StateDensity::new(floored.scale_re(1.0 / tr)).unwrap()
}

/// One of the builtin Orlicz functions used throughout the suites.
pub fn rand_builtin_psi(r: &mut Seeded) -> OrliczFunction {
    match r.gen_range(0..5) {
        0 => OrliczFunction::power(1.0).unwrap(),
        1 => OrliczFunction::power(2.0).unwrap(),
        2 => OrliczFunction::power(4.0).unwrap(),
        3 => OrliczFunction::OneCapInf,
        _ => OrliczFunction::OnePlusInf,
    }
}

/// Random convex knot table on `[0, 4]` with increasing slopes.
pub fn rand_table_psi(r: &mut Seeded) -> OrliczFunction {
    let mut knots = vec![(0.0, 0.0)];
    let mut t = 0.0;
    let mut y = 0.0;
    let mut slope = r.gen_range(0.0..0.5);
    for _ in 0..5 {
        let dt = r.gen_range(0.3..1.0);
        slope += r.gen_range(0.1..1.5);
        t += dt;
        y += slope * dt;
        knots.push((t, y));
    }
    OrliczFunction::table(knots, None).unwrap()
}
