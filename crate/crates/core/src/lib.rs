//! orlicz-lab: a numerical laboratory for noncommutative Orlicz spaces on
//! finite-dimensional von Neumann algebra models.
//!
//! The crate builds weighted block-matrix algebras `⊕_k M_{n_k}` with traces
//! `τ = Σ_k w_k Tr`, computes generalised singular values and Orlicz norms on
//! them, embeds everything into the model crossed product `M ⊗ L∞(ℝ)` with
//! trace `τ ⊗ ∫ e^{-t} dt` and dual action by translation, and exercises the
//! resulting quasinorm, extreme-space, and interpolation machinery as
//! verification suites with pinned tolerances.

pub mod algebra;
pub mod crossed;
pub mod fundamental;
pub mod geometry;
pub mod interp;
pub mod jsonio;
pub mod linalg;
pub mod norms;
pub mod numeric;
pub mod orlicz;
pub mod report;
pub mod rng;
pub mod suites;
pub mod svf;

pub use algebra::{AlgebraElement, StateDensity, WeightedBlockAlgebra};
pub use fundamental::{boyd_normability, dilation, growth_constant, BoydReport, FundamentalFunction};
pub use geometry::{orlicz_from_fundamental, QuasiConcaveProfile};
pub use orlicz::OrliczFunction;
pub use svf::SingularValueFunction;
