//! Finite von Neumann algebra models: direct sums of matrix blocks
//! `⊕_k M_{n_k}` with strictly positive trace weights,
//! `τ(a) = Σ_k w_k · Tr(a_k)`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::linalg::{herm_eig, polar, singular_values, CMatrix, HermEig};

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("algebra needs at least one block with dim >= 1 and weight > 0")]
    BadBlocks,
    #[error("element blocks do not match the algebra shape")]
    ShapeMismatch,
    #[error("density must be positive definite (min eigenvalue {min_eig})")]
    NotPositive { min_eig: f64 },
    #[error("density must have unit trace (got {trace})")]
    NotUnitTrace { trace: f64 },
}

/// Block structure `⊕_k M_{n_k}` with trace weights.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct WeightedBlockAlgebra {
    blocks: Vec<(usize, f64)>,
}

impl WeightedBlockAlgebra {
    pub fn new(blocks: Vec<(usize, f64)>) -> Result<Arc<Self>, AlgebraError> {
        if blocks.is_empty() || blocks.iter().any(|&(n, w)| n == 0 || w <= 0.0 || w.is_nan()) {
            return Err(AlgebraError::BadBlocks);
        }
        Ok(Arc::new(WeightedBlockAlgebra { blocks }))
    }

    /// Single block of dimension `n` with weight `w`.
    pub fn factor(n: usize, w: f64) -> Arc<Self> {
        Self::new(vec![(n, w)]).unwrap()
    }

    /// Commutative algebra: `atoms.len()` one-dimensional blocks.
    pub fn atoms(weights: &[f64]) -> Result<Arc<Self>, AlgebraError> {
        Self::new(weights.iter().map(|&w| (1, w)).collect())
    }

    pub fn blocks(&self) -> &[(usize, f64)] {
        &self.blocks
    }

    pub fn is_commutative(&self) -> bool {
        self.blocks.iter().all(|&(n, _)| n == 1)
    }

    /// `τ(1) = Σ_k w_k n_k`.
    pub fn total_measure(&self) -> f64 {
        self.blocks.iter().map(|&(n, w)| w * n as f64).sum()
    }
}

/// An element of a weighted block algebra: one complex matrix per block.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    alg: Arc<WeightedBlockAlgebra>,
    blocks: Vec<CMatrix>,
}

impl AlgebraElement {
    pub fn new(alg: Arc<WeightedBlockAlgebra>, blocks: Vec<CMatrix>) -> Result<Self, AlgebraError> {
        if blocks.len() != alg.blocks().len()
            || blocks
                .iter()
                .zip(alg.blocks())
                .any(|(m, &(n, _))| m.dim() != n)
        {
            return Err(AlgebraError::ShapeMismatch);
        }
        Ok(AlgebraElement { alg, blocks })
    }

    pub fn zero(alg: Arc<WeightedBlockAlgebra>) -> Self {
        let blocks = alg.blocks().iter().map(|&(n, _)| CMatrix::zeros(n)).collect();
        AlgebraElement { alg, blocks }
    }

    pub fn identity(alg: Arc<WeightedBlockAlgebra>) -> Self {
        let blocks = alg
            .blocks()
            .iter()
            .map(|&(n, _)| CMatrix::identity(n))
            .collect();
        AlgebraElement { alg, blocks }
    }

    /// Diagonal element of a commutative algebra (or blockwise scalar where
    /// dims are 1).
    pub fn diagonal(alg: Arc<WeightedBlockAlgebra>, entries: &[f64]) -> Result<Self, AlgebraError> {
        if entries.len() != alg.blocks().len() || !alg.is_commutative() {
            return Err(AlgebraError::ShapeMismatch);
        }
        let blocks = entries.iter().map(|&x| CMatrix::from_diag(&[x])).collect();
        Ok(AlgebraElement {
            alg,
            blocks,
        })
    }

    pub fn algebra(&self) -> &Arc<WeightedBlockAlgebra> {
        &self.alg
    }

    pub fn block(&self, k: usize) -> &CMatrix {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn map_blocks(&self, f: impl Fn(usize, &CMatrix) -> CMatrix) -> AlgebraElement {
        AlgebraElement {
            alg: self.alg.clone(),
            blocks: self
                .blocks
                .iter()
                .enumerate()
                .map(|(k, m)| f(k, m))
                .collect(),
        }
    }

    pub fn adjoint(&self) -> AlgebraElement {
        self.map_blocks(|_, m| m.adjoint())
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        self.zip(other, |a, b| a.mul(b))
    }

    pub fn scale(&self, c: Complex64) -> AlgebraElement {
        self.map_blocks(|_, m| m.scale(c))
    }

    pub fn scale_re(&self, c: f64) -> AlgebraElement {
        self.map_blocks(|_, m| m.scale_re(c))
    }

    fn zip(&self, other: &AlgebraElement, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> AlgebraElement {
        assert_eq!(self.alg, other.alg, "elements live in different algebras");
        AlgebraElement {
            alg: self.alg.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// `τ(a) = Σ_k w_k Tr(a_k)`.
    pub fn trace(&self) -> Complex64 {
        self.blocks
            .iter()
            .zip(self.alg.blocks())
            .map(|(m, &(_, w))| m.trace() * w)
            .sum()
    }

    /// Eigendecompositions of each (Hermitian) block.
    pub fn herm_eigs(&self) -> Vec<HermEig> {
        self.blocks.iter().map(herm_eig).collect()
    }

    /// Weighted singular values `(σ, w)` over all blocks, unsorted.
    pub fn weighted_singular_values(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for (m, &(_, w)) in self.blocks.iter().zip(self.alg.blocks()) {
            if m.is_diagonal(0.0) {
                for i in 0..m.dim() {
                    out.push((m[(i, i)].norm(), w));
                }
            } else {
                for s in singular_values(m) {
                    out.push((s, w));
                }
            }
        }
        out
    }

    /// Operator norm.
    pub fn op_norm(&self) -> f64 {
        self.weighted_singular_values()
            .iter()
            .map(|&(s, _)| s)
            .fold(0.0, f64::max)
    }

    /// Frobenius distance (shape-checked).
    pub fn distance(&self, other: &AlgebraElement) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.sub(b).frobenius().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn frobenius(&self) -> f64 {
        self.blocks
            .iter()
            .map(|m| m.frobenius().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.blocks.iter().all(|m| m.is_hermitian(tol))
    }

    /// Whether all blocks are diagonal to the given tolerance.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.blocks.iter().all(|m| m.is_diagonal(tol))
    }

    /// Polar decomposition data per block: `a = v|a|`.
    pub fn polar(&self) -> (AlgebraElement, Vec<HermEig>) {
        let mut vs = Vec::with_capacity(self.blocks.len());
        let mut eigs = Vec::with_capacity(self.blocks.len());
        for m in &self.blocks {
            let (v, e) = polar(m);
            vs.push(v);
            eigs.push(e);
        }
        (
            AlgebraElement {
                alg: self.alg.clone(),
                blocks: vs,
            },
            eigs,
        )
    }

    /// `f(|a|)` through the blockwise functional calculus.
    pub fn abs_apply(&self, f: impl Fn(f64) -> f64) -> AlgebraElement {
        let (_, eigs) = self.polar();
        AlgebraElement {
            alg: self.alg.clone(),
            blocks: eigs.iter().map(|e| e.apply(&f)).collect(),
        }
    }

    /// Commutator norm `‖ab − ba‖_F`.
    pub fn commutator_norm(&self, other: &AlgebraElement) -> f64 {
        self.mul(other).sub(&other.mul(self)).frobenius()
    }
}

/// A faithful normal state density: positive definite with unit trace.
#[derive(Clone, Debug)]
pub struct StateDensity {
    rho: AlgebraElement,
}

impl StateDensity {
    pub fn new(rho: AlgebraElement) -> Result<Self, AlgebraError> {
        let min_eig = rho
            .herm_eigs()
            .iter()
            .flat_map(|e| e.values.iter().cloned())
            .fold(f64::INFINITY, f64::min);
        if min_eig <= 0.0 || min_eig.is_nan() {
            return Err(AlgebraError::NotPositive { min_eig });
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(AlgebraError::NotUnitTrace { trace: tr.re });
        }
        Ok(StateDensity { rho })
    }

    pub fn element(&self) -> &AlgebraElement {
        &self.rho
    }
}
