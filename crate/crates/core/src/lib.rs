//! Formal presentations ("diagrams") of the results of algebraic-effectful
//! computations.
//!
//! A monadic value `μ ∈ T(X)` is presented as a pair `(Γ, ⟨x_i⟩)` of a
//! generic effect `Γ ∈ T([n])` and a row of `n` carrier elements, interpreted
//! as `T(i ↦ x_i)(Γ)`. The crate provides six concrete monads, the
//! presentation calculus (interpretation, decomposition, sequential
//! composition, order), a call-by-value λ-calculus with a fuel-indexed
//! monadic semantics, and a seeded law checker.

pub mod algebra;
pub mod carrier;
pub mod error;
pub mod gen;
pub mod lambda;
pub mod lawcheck;
pub mod monads;
mod par;
pub mod presentations;

pub use carrier::Carrier;
pub use error::{Error, Result};
pub use monads::{KindTag, MonadKind, MonadValue, Op, OpDescriptor, Payload, Prob};
pub use par::Execution;
pub use presentations::{GenericEffect, Presentation};
