//! Exact calculator for Hodge-theoretic invariants of an isolated
//! quasi-homogeneous (or Newton non-degenerate) hypersurface singularity.
//!
//! Everything is computed over Q with arbitrary-precision rationals; there is
//! no floating point anywhere.  The main objects are:
//!
//! * [`poly`] — sparse multivariate polynomials with a canonical grevlex
//!   term order, partial derivatives, and the twisted derivation
//!   `T_{i,c}(a) = f*da/dx_i - c*a*df/dx_i`.
//! * [`parse`] — a small expression grammar for entering polynomials and
//!   rationals from text.
//! * [`groebner`] — Buchberger's algorithm with the sugar strategy, reduced
//!   bases, normal forms, and a torus-solvability test used by the Newton
//!   non-degeneracy certificate.
//! * [`localring`] — ideals of the local ring `C{x_1..x_n}` represented by
//!   exact truncated linear algebra, plus Milnor algebra data.
//! * [`weights`] — weight vectors `w` with `f(λ^{w_1}x_1, ...) = λ f(x)`,
//!   the weight function `ρ`, and generators of the filtration `O^{≥c}`.
//! * [`newton`] — Newton polyhedra, compact facets and their normals, the
//!   Newton weight `ρ~`, and the filtration generators used in place of the
//!   weighted ones when `f` is only Newton non-degenerate.
//! * [`hodge`] — Hodge ideals `I_k(αZ)` of the Q-divisor `D = αZ`, computed
//!   two independent ways, and the generating level of the associated
//!   filtered module.
//! * [`microlocal`] — microlocal ideals `Ĩ_k(αZ)` and the comparison
//!   machinery between the two towers.
//! * [`bernstein`] — the reduced Bernstein–Sato polynomial and the jumping
//!   data that reassembles it.
//!
//! All public types are immutable once constructed and safe to share across
//! threads; independent computations (for example a sweep over many values
//! of α) can run concurrently without coordination.

pub mod bernstein;
mod error;
pub mod groebner;
pub mod hodge;
mod linalg;
pub mod localring;
pub mod microlocal;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod weights;

pub use error::Error;
pub use poly::{Exponent, Polynomial, Rational};
pub use weights::WeightData;
