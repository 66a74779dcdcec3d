//! A proof kernel and desk-scale semantics workbench for first-order
//! arithmetic with finitely iterated inductive definitions.
//!
//! The crate has three layers:
//!
//! - **Syntax and calculus** ([`syntax`], [`calculus`]): terms and formulas in
//!   De Morgan normal form, inductive predicate symbols carrying their defining
//!   body, sequents, and a local rule checker for the finitary system (with
//!   explicit induction) and the cyclic system (with unfolding rules and a
//!   naturals axiom).
//! - **Proof objects** ([`proofs`], [`trace`], [`translate`]): finite proof
//!   trees and regular cyclic proof graphs with a text file format, the
//!   progressing-trace condition decided by composition closure, and
//!   proof-to-proof compilers (induction to cycles, functoriality generators,
//!   derived rules).
//! - **Bounded semantics** ([`semantics`]): evaluation over a finite universe
//!   `{0..B}`, inflationary fixpoint approximants with stage profiles,
//!   fixpoint-law checking, and a countermodel branch walk that exercises the
//!   soundness argument at desk scale.
//!
//! The [`cli`] module backs the `cyclid` binary; each major capability also
//! has a runnable example under `examples/`.

pub mod calculus;
pub mod cli;
pub mod corpus;
pub mod proofs;
pub mod semantics;
pub mod syntax;
pub mod trace;
pub mod translate;
