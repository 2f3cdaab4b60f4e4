pub mod acceptance;
pub mod algebra;
pub mod catalog;
pub mod error;
pub mod exactlin;
pub mod extending;
pub mod flag;
pub mod json;
pub mod products;
pub mod report;
pub mod sample;

pub use algebra::{Algebra, SubspaceMode};
pub use error::Error;
pub use exactlin::{Matrix, MultiPoly, Rational, Tensor3, Vector};
pub use report::{CheckReport, ConditionResult, Witness};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/extending.md")]
    mod extending {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    mod equivalence {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
    #[doc = include_str!("../../../book/src/deformations.md")]
    mod deformations {}
    #[doc = include_str!("../../../book/src/flags.md")]
    mod flags {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
