//! Moment computation for probability-measure-valued polynomial diffusions.
//!
//! A measure-valued polynomial diffusion is a continuous Markov process `X`
//! on the probability measures over a space `E` whose generator maps each
//! degree-`k` polynomial of the measure to a polynomial of degree at most
//! `k`. Conditional moments of such processes satisfy
//!
//! ```text
//! E[<g, X_T^k> | F_t] = <u(T - t, .), X_t^k>,
//! ```
//!
//! where `u` solves the `k`-dimensional backward equation `du/dt = L_k u`
//! with `u(0) = g`, and `L_k` is the dual operator acting on coefficient
//! functions over `E^k`. This crate provides:
//!
//! * exact polynomial algebra on measures ([`poly`], [`tensor`], [`measure`]),
//! * generator specifications and dual-operator assembly ([`generator`], [`dual`]),
//! * an exact moment engine for finite spaces via uniformization ([`moments_finite`]),
//! * a PIDE moment engine for grid-truncated real spaces ([`moments_grid`]),
//! * independently coded stochastic oracles: a simplex SDE, a Moran-type
//!   particle system, and a common-noise particle system ([`simulate`]),
//! * optimality-condition checks and a cross-engine validation harness
//!   ([`validate`]).
//!
//! With the default `parallel` feature, Monte Carlo ensembles and stencil
//! sweeps fan out over a rayon thread pool; disabling it yields a fully
//! sequential build with identical results.

pub mod dual;
pub mod error;
pub mod generator;
pub mod io;
pub mod measure;
pub mod moments_finite;
pub mod moments_grid;
pub(crate) mod par;
pub mod poly;
pub mod rng;
pub mod space;
pub mod stats;
pub mod tensor;
pub mod tol;
pub mod validate;

pub mod simulate;

pub use dual::{build_dual, DualOperator, RateMatrix, StencilApplier};
pub use error::{Error, Result};
pub use generator::{GeneratorSpec, Mutation, ValidationReport};
pub use measure::DiscreteMeasure;
pub use moments_finite::{moment_finite, propagate, MomentSolution};
pub use moments_grid::{discretize_dual_grid, moment_grid, solve_moment_pide, PideConfig, Scheme};
pub use poly::MeasurePolynomial;
pub use space::SpaceDescriptor;
pub use stats::McEstimate;
pub use tensor::CoefficientTensor;
