//! Finite-lattice Fourier analysis on two levels.
//!
//! Level one acts on complex functions over a centered lattice `L` with `H²`
//! points and spacing `1/H`. Level two acts on functionals over the path space
//! `X = {a : L → L′}`, where `L′` is a second centered lattice of spacing
//! `1/H′`. Both transforms carry their own normalization so that the usual
//! Fourier identities (unitarity, inversion, convolution theorems, delta
//! calculus) hold exactly on the lattice, up to floating-point rounding.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: lattice construction, periodic wrap and grid functions.
//! * [`dft`]: exact phase evaluation and the centered DFT kernel.
//! * [`level1`]: the transform on lattice functions.
//! * [`gauss`]: quadratic Gauss sums.
//! * [`pathspace`]: the path space, ranking and the bilinear pairing.
//! * [`level2`]: functionals, their transforms, and the identity suites.
//! * [`examples`]: the chirp and Gaussian functionals and convergence sweeps.

pub mod dft;
pub mod error;
pub mod examples;
pub mod gauss;
pub mod io;
pub mod lattice;
pub mod level1;
pub mod level2;
pub mod pathspace;
pub mod random;
pub mod report;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use lattice::{make_lattice, wrap, GridFunction, LatticeKind, LatticeSpec};
pub use pathspace::{IntegerPath, PathFunction, PathSpace, Variant, DEFAULT_GUARD};
pub use report::{Deviation, IdentityRecord, VerificationReport};
