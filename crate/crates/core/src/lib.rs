//! Dynamic input-output (Leontief) models with power-law memory.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`specfun`]: Gamma and the one/two-parameter Mittag-Leffler functions
//!   over complex arguments, with asymptotic expansions and sector
//!   classification.
//! - [`matrixcore`]: small dense real matrices, complex eigenpairs,
//!   characteristic polynomials and Frobenius-Perron data.
//! - [`iomodel`]: the economy itself (cost matrix `A`, capital intensity
//!   `B`, memory orders, initial data) and the derived system matrices.
//! - [`memsolver`]: analytic Mittag-Leffler modal solutions for closed and
//!   open models with uniform or sectoral memory, plus growth-rate,
//!   dominance and admissibility analysis.
//! - [`fracoracle`]: an independent numerical check: L1/L2 Caputo
//!   differences, Riemann-Liouville integrals and a fractional
//!   Adams-Bashforth-Moulton integrator.
//!
//! File formats, reports and the command line live in the `fracio` crate.
#![no_std]
// NaN-rejecting comparisons and index loops over coupled arrays are intended.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

mod error;
pub mod fracoracle;
pub mod iomodel;
pub mod matrixcore;
pub mod memsolver;
pub mod specfun;

pub use error::{Error, Result};
pub use iomodel::{DerivedMatrices, Finding, IoModel, Severity};
pub use matrixcore::{EigenPair, RealMatrix, SpectralData};
pub use memsolver::{AnalysisReport, ModalSolution, Mode, SectoralForm, Trajectory, Variable};
pub use num_complex::Complex64;
