//! Exact classification invariants for C*-algebras of weighted directed graphs.
//!
//! A *weighted directed graph* carries two integer weights on every edge: a
//! covering degree `n(e) >= 1` and a winding number `m(e)`. Each such graph
//! determines a C*-algebra generated by partial isometries indexed by the
//! edges, and the isomorphism class of that algebra is governed by a small
//! amount of computable data: a pair of finitely generated abelian groups
//! (the K-groups), the class of the unit inside the first of them, and a
//! minimality property of an underlying dynamical system.
//!
//! This crate computes all of that exactly — no floating point anywhere —
//! and also solves the inverse problem of *synthesizing* a graph whose
//! invariants match a prescribed target.
//!
//! Module map:
//!
//! * [`intlin`] — integer linear algebra: Smith normal form with unimodular
//!   witnesses, cokernels, kernels, coset classes, divisibility solving.
//! * [`graph`] — graphs, composable paths, fiber periods `p(μ)` and exact
//!   circle-fiber images on the rational circle.
//! * [`ktheory`] — the defining integer matrices, the K-group pair and the
//!   unit class.
//! * [`classify`] — certificate-based minimality and the dichotomy between
//!   purely infinite and approximately-circle simple algebras.
//! * [`realize`] — graph synthesis for prescribed K-theory with
//!   machine-checkable correctness witnesses.
//! * [`present`] — generator/relation presentations and matrix-block
//!   profiles of Toeplitz-type subalgebras.
//! * [`cli`] — the `okgraph` command-line interface.

#![forbid(unsafe_code)]

pub mod classify;
pub mod cli;
pub mod graph;
pub mod intlin;
pub mod jsonint;
pub mod ktheory;
pub mod present;
pub mod realize;
