//! Exact computer algebra for the contact Lie superalgebra E(1,6).
//!
//! The crate builds, over the exact field ℚ(i):
//!
//! * the superalgebra Λ(1,6)₊ with its contact bracket, Hodge duality and the
//!   CK₆ generator family spanning E(1,6) ([`contact`]);
//! * the λ-bracket of the conformal superalgebra K₆ ([`lambda`]);
//! * polynomial realizations of the sl(4) weight modules attached to the
//!   A/B/C families ([`poly`], [`weights`]);
//! * finite Verma modules U(g₋)⊗F with PBW normal ordering, the action of
//!   arbitrary E(1,6) elements, and a singular-vector solver ([`verma`]);
//! * the inter-module morphisms ∇_A, ∇₃, ∇_B, ∇_C, ∇₅, ∇̃₃ ([`morphism`]);
//! * homology of the quadrant complexes, the finite complexes G_A, G_A(a,b),
//!   G_{A°}, and bicomplex spectral sequences ([`homology`], [`ga`],
//!   [`spectral`]).
//!
//! Everything is computed with arbitrary-precision Gaussian rationals; there
//! is no floating point anywhere.

pub mod scalar;
pub mod linalg;
pub mod contact;
pub mod lambda;
pub mod morphism;
pub mod poly;
pub mod verma;
pub mod weights;
pub mod ga;
pub mod homology;
pub mod spectral;
pub mod suite;
pub mod tables;

pub use scalar::Scalar;

/// Configure the global rayon pool from the `CK6_THREADS` environment
/// variable. Call once at process start; later calls are no-ops.
pub fn init_threads() {
    if let Ok(v) = std::env::var("CK6_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}
