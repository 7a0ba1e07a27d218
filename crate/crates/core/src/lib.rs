//! Overlap-variable toolkit for Weyl-Heisenberg equiangular line systems
//! (SICs).
//!
//! A unit vector `v` in `C^d` generates the orbit `(S^j Ω^k v)` under the
//! discrete displacement operators; the orbit is a SIC when all pairwise
//! overlap moduli equal `1/sqrt(d+1)`. This crate works in the overlap
//! variables `c_{jk} = <v v*, S^j Ω^k>_F` themselves:
//!
//! * [`heisenberg`]: the operator zoo (`S`, `Ω`, displacements, `F`, `R`,
//!   the order-3 `Z`) and the scalar root constants;
//! * [`overlaps`]: overlap tables, the tight-frame reconstruction
//!   `c -> Tc`, the four-condition certificate (conjugate symmetry, unit
//!   origin, torus moduli, quartic trace), fiducial extraction, frame
//!   potential and quartic row sums;
//! * [`clifford`]: the induced generator actions on tables and the
//!   `Z`-symmetry residual;
//! * [`transform`]: the `d^2 x d^2` representations of the transform pair
//!   and their finite-order identities;
//! * [`symbols`]: row symbols on the root-of-unity grid, the rank-one
//!   criterion, Riesz factorization and product invariant;
//! * [`family`]: the explicit `d = 3` solution continuum on the deltoid
//!   boundary;
//! * [`search`]: frame-potential descent with deterministic seeded
//!   restarts;
//! * [`json`]: the file schemas used by the command-line tool.
//!
//! Everything is plain double precision on small dense matrices. With the
//! default `parallel` feature, batch sampling and search restarts fan out
//! over rayon; disabling it leaves a dependency-light sequential build.

pub mod clifford;
pub mod cmatrix;
pub mod error;
pub mod family;
pub mod heisenberg;
pub mod json;
pub mod overlaps;
mod par;
pub mod search;
pub mod symbols;
pub mod transform;

pub use cmatrix::CMatrix;
pub use error::{Result, SicError};
pub use overlaps::{Fiducial, OverlapTable, VerificationReport};
