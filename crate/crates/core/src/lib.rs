//! Equivariant bifurcation analysis for symmetric elliptic systems with Neumann
//! boundary conditions: exact arithmetic in U(SO(2)), Neumann spectra of the disk
//! and ball, bifurcation indices and the verdicts they license.

pub mod bifurcation;
pub mod cli;
pub mod config;
pub mod error;
pub mod euler;
pub mod morse;
pub mod report;
pub mod spectral;
pub mod system;

pub use error::{Error, Result};
pub use euler::{deg_minus_id, rep_equiv_mod_even_trivial, EulerSO2, SO2Rep};
