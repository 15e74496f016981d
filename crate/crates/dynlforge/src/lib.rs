//! dynlforge: canonical dynamical ℓ-matrices for bidynamical Lie
//! quasi-bialgebras, evaluated and verified at the level of finite-dimensional
//! structure-constant data.
//!
//! The crate is organized around five layers:
//!
//! * [`algebra`] — Lie quasi-bialgebras, Drinfel'd doubles, twists, splittings;
//! * [`kernel`] — generic small-matrix analysis (exp, φ-functions, duals, jets);
//! * [`lmatrix`] — the canonical ℓ-matrix: closed form, formal recursion,
//!   defining-equation residuals, gauge action;
//! * [`duality`] — vertex algebras, trivialization, the dual quasi-bialgebra
//!   and the link identity on the double;
//! * [`catalog`] — built-in setups and the exact scalar series backing them.
//!
//! See the `examples/` directory for one runnable walkthrough per capability,
//! and the `dynlforge` binary for `validate` / `suite` / `export` commands.

pub mod algebra;
pub mod catalog;
pub mod duality;
pub mod error;
pub mod kernel;
pub mod lmatrix;
pub mod report;
pub mod rng;
pub mod suites;

pub use error::{AlgebraError, EngineError, KernelError};
