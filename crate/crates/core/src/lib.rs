//! Shellings of the skeleta of `Λ(l; p₁, …, p_m)`, the join of an `(l−1)`-simplex
//! with the boundaries of simplices on `p₁, …, p_m` vertices, together with a
//! bijection `σ` from facets to capped monomials.
//!
//! The pieces:
//!
//! - [`monomial`]: capped monomial sets `S(a₁, …, a_k)`, reverse-lex order
//!   within a degree, multicomplexes and Clements–Lindström compression.
//! - [`complex`]: vertex layouts, faces as bit sets, facets of the
//!   `(d−1)`-skeleton of `Λ`, f- and h-vectors.
//! - [`shelling`]: restriction sets `R_O(τ)`, the reverse-lex baseline
//!   shelling, and the recursive shelling/bijection construction.
//! - [`realization`]: shellable subcomplexes of `Λ` whose h-vector equals a
//!   given multicomplex F-vector.
//! - [`verify`]: brute-force oracles for every structural claim above.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod complex;
mod error;
pub mod monomial;
pub mod realization;
pub mod shelling;
pub mod verify;

pub use complex::{f_from_h, f_vector, h_from_f, lambda_facets, Face, FhVector, VertexLayout};
pub use error::Error;
pub use monomial::{Cap, CapVector, FVector, Monomial, Multicomplex};
pub use realization::{extract, realize_h_vector, witness_check, RealizationResult};
pub use shelling::{
    build_shelling_sigma, naive_sigma, restriction, revlex_shelling, RestrictionData, ShellingRow,
    ShellingTable,
};
pub use verify::{CheckResult, Counterexample, VerificationReport};

pub type Result<T> = core::result::Result<T, Error>;
