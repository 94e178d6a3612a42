//! Parity-deformed Glauber-Fock photonic lattices.
//!
//! The lattice Hamiltonian `H = g (A^dagger + A)` with `A = (-1)^n a` couples
//! neighbouring waveguides with alternating-sign strengths
//! `g (-1)^m sqrt(m+1)`. Its propagator is a parity-deformed displacement, so
//! coherent and displaced-number-state inputs split into generalized cat
//! states. The crate provides the Fock-space primitives, closed-form and
//! numerical propagation, Wigner functions and the `gfl` command-line tool.

pub mod cats;
pub mod cli;
pub mod error;
pub mod fock;
pub mod lattice;
pub mod linalg;
pub mod specialfn;
pub mod table;
pub mod truncation;
pub mod wigner;

pub use cats::{
    cat_from_displaced, cat_from_fock, coherent_state, deformed_displacement, displaced_fock,
    glauber_displacement, CatComponent, CatDecomposition, GlauberKernel,
};
pub use error::{Error, Result};
pub use fock::{OperatorMatrix, StateVector};
pub use lattice::{EvolutionRecord, LatticeSpec, LeakageStatus, Propagator};

pub use num_complex::Complex64 as C64;
pub use truncation::TruncationGuard;
pub use wigner::WignerGrid;
