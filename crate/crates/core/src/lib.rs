//! Sequential Cauchy-Schwarz complexity of systems of linear forms over
//! prime fields.

mod bitset;
pub mod covering;
pub mod analysis;
pub mod complexity;
mod error;
pub mod field;
pub mod phi;
pub mod reduction;
mod setcover;
pub mod system;

pub use error::{Error, Result};
pub use field::{FpMatrix, FpVector, Prime};
pub use system::LinearSystem;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/systems.md")]
    mod systems {}
    #[doc = include_str!("../../../book/src/complexity.md")]
    mod complexity {}
    #[doc = include_str!("../../../book/src/covering.md")]
    mod covering {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/phi.md")]
    mod phi {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
