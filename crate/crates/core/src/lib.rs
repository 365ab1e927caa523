//! Local-unitary invariants of systems of identical particles.
//!
//! The crate computes stable dimensions of the graded algebra of
//! polynomial invariants under local unitary groups acting on
//! `S_{λ_1}(C^{n_1}) ⊗ ... ⊗ S_{λ_k}(C^{n_k})`, labels a free generating
//! set by coloured regular bipartite multigraphs, decides which graph
//! invariants vanish, and evaluates them numerically on pure and mixed
//! states.
//!
//! Module map:
//! - [`combinatorics`]: partitions, permutations, `S_n` characters, Euler transform.
//! - [`symfunc`]: exact symmetric functions in the power-sum basis, plethysm.
//! - [`dimensions`]: particle types, stable dimensions, generator counts.
//! - [`graphs`]: coloured regular bipartite multigraphs and their canonical forms.
//! - [`cosets`]: wreath-product embeddings, stabilizer sign test, Mackey count.
//! - [`invariants`]: state tensors and numerical evaluation of graph invariants.
//! - [`verify`]: the self-check report behind `luinv verify`.

pub mod combinatorics;
pub mod cosets;
pub mod dimensions;
mod error;
pub mod graphs;
pub mod invariants;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
