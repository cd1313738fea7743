//! Exact computation with crystallographic (Bieberbach) groups and affine
//! self-maps of the flat manifolds they define.
//!
//! Everything runs over arbitrary-precision rationals: linear algebra, Smith
//! normal form, polynomial root location, group membership, spectral
//! classification of affine maps, realization of abstract endomorphisms as
//! affine conjugations, and conjugacy obstructions on finite quotients.

pub mod affine;
pub mod endo;
pub mod error;
pub mod group;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod quotient;
pub mod rat;
pub mod roots;
pub mod search;
pub mod snf;
pub mod solve;

pub use affine::AffineMap;
pub use error::{Error, Result};
pub use group::{build_group, BuildOptions, CrystGroup, GroupElement, HolonomyElement};
pub use matrix::{IntMatrix, RatMatrix};
pub use poly::RatPoly;
pub use rat::Rat;

#[cfg(test)]
mod concurrency_contract {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_cross_threads() {
        assert_send_sync::<crate::Rat>();
        assert_send_sync::<crate::RatMatrix>();
        assert_send_sync::<crate::IntMatrix>();
        assert_send_sync::<crate::RatPoly>();
        assert_send_sync::<crate::AffineMap>();
        assert_send_sync::<crate::CrystGroup>();
        assert_send_sync::<crate::GroupElement>();
        assert_send_sync::<crate::quotient::FinAbGroup>();
    }
}
