//! Variational Hartree-Fock for the atoms He through Ne using one Slater-type
//! exponent per subshell and a single determinant.
//!
//! The crate is layered bottom-up:
//!
//! - [`basis`]: the 1s, 2s and real 2p orbitals and their radial factors
//! - [`integrals`]: closed-form core, Coulomb and exchange integrals
//! - [`oracle`]: independent adaptive-quadrature evaluation of the same integrals
//! - [`atom`]: configurations, pair multiplicities and the energy functional
//! - [`optimize`]: Nelder–Mead minimization over the exponents
//! - [`report`]: run/verify/compare drivers behind the command-line tool

pub mod atom;
pub mod basis;
pub mod error;
pub mod integrals;
mod nelder_mead;
pub mod optimize;
pub mod oracle;
pub mod reference;
pub mod report;

pub use atom::{
    configuration, energy, energy_split, energy_split_with, energy_with, pair_counts, EnergySplit, Occupation,
    PairCounts,
};
pub use basis::{Exponents, OrbitalKind, Shell};
pub use error::{Error, Result};
pub use integrals::{
    core, coulomb, exchange, integral_set, CoulombPair, ExchangePair, IntegralSet, PShellModel, Term,
};
pub use optimize::{initial_guess, minimize, scan, AtomResult, OptimizerOptions};

pub use reference::{reference_row, reference_table, ReferenceRow};
