//! Exact combinatorics of primitive ideals of `U(gl_N)`: Robinson–Schensted
//! labels, Kazhdan–Lusztig data, Goldie rank polynomials, tableau predicates
//! on pyramids and the one-dimensional module solver.

pub mod error;
pub mod goldie;
pub mod kl;
pub mod onedim;
pub mod polynomials;
pub mod rational;
pub mod rs;
pub mod symgroup;
pub mod tableaux;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/cells.md")]
    struct Cells;
    #[doc = include_str!("../../../book/src/kl.md")]
    struct Kl;
    #[doc = include_str!("../../../book/src/tableaux.md")]
    struct Tableaux;
    #[doc = include_str!("../../../book/src/goldie.md")]
    struct GoldieRanks;
    #[doc = include_str!("../../../book/src/dimension.md")]
    struct Dimension;
    #[doc = include_str!("../../../book/src/onedim.md")]
    struct Onedim;
    #[doc = include_str!("../../../book/src/verify.md")]
    struct Verify;
}
