//! Moment vanishing and universal centers for closed piecewise-linear paths.
//!
//! A closed path `G = (g_1, .., g_n)` living on a finite curve complex `Γ`
//! has moments `∫ g_1^{d_1} ⋯ g_n^{d_n} g_i' dt`. This crate computes them two
//! ways (direct per-segment quadrature, and a homology + Green's theorem
//! route for planar complexes), derives the geometric degree bounds after
//! which vanishing of finitely many moments forces vanishing of all of them,
//! and uses those bounds to decide whether the Abel-type equation
//! `dv/dt = Σ f_j' v^{j+1}` has a universal center.
//!
//! Module map:
//!
//! * [`curve_model`]: sampled paths, curve complexes, edge words.
//! * [`topology`]: Betti number, cycle bases, homology coefficients, free
//!   reduction, Eulerian trails and covering.
//! * [`planar_geometry`]: faces, inscribed squares, the degree bounds,
//!   winding numbers and integer-relation search.
//! * [`moments`]: quadrature and homology pipelines, iterated integrals,
//!   vanishing scans.
//! * [`projection`]: reduction of `n`-dimensional problems to planar ones.
//! * [`approx`]: tensor Chebyshev approximation with a positive kernel.
//! * [`center`]: first-return map and the center decision procedure.
//! * [`cli`], [`fixtures`], [`report`], [`selftest`]: the command-line front
//!   end and its documents.

pub mod approx;
pub mod center;
pub mod cli;
pub mod curve_model;
pub mod error;
pub mod fixtures;
pub mod moments;
pub mod planar_geometry;
pub mod projection;
pub mod quadrature;
pub mod report;
pub mod selftest;
pub mod topology;

pub use error::{Error, Result};

/// Tag written into every JSON document this crate emits.
pub const FORMAT_TAG: &str = "moment-atlas/1";
