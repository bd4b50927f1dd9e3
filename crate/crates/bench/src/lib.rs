//! Shared fixtures for the criterion benchmarks: deterministic instances at
//! the scales the verification suites run at.

use std::sync::Arc;

use orlicz_lab::algebra::AlgebraElement;
use orlicz_lab::crossed::{CrossedElement, CrossedModel};
use orlicz_lab::rng;

pub fn hermitian_block(dim: usize) -> AlgebraElement {
    let alg = orlicz_lab::WeightedBlockAlgebra::factor(dim, 0.5);
    let mut r = rng::rng(2024);
    rng::rand_hermitian(&mut r, &alg, 1.5)
}

pub fn diagonal_instance(atoms: usize) -> AlgebraElement {
    let mut r = rng::rng(2025);
    let alg = rng::rand_atom_algebra(&mut r, atoms);
    rng::rand_diagonal(&mut r, &alg, 0.05, 5.0)
}

pub fn tracial_model_of(a: &AlgebraElement) -> Arc<CrossedModel> {
    CrossedModel::tracial(a.algebra().clone())
}

pub fn embedded(a: &AlgebraElement) -> CrossedElement {
    let model = tracial_model_of(a);
    orlicz_lab::crossed::ops::embed_luxemburg(
        &model,
        a,
        &orlicz_lab::OrliczFunction::power(2.0).unwrap(),
    )
}
