//! Special cases of the unified product: semidirect, crossed and bicrossed
//! products, and the deformation maps that describe complements in a
//! bicrossed product.

mod bimodule;
mod crossed;
mod deformation;
mod matched;

pub use bimodule::{is_bimodule, semidirect, Bimodule};
pub use crossed::{crossed, CrossedSystem};
pub use deformation::{
    deformation_report, deformations_equivalent, is_deformation_map, r_deform, search_deformation_maps,
    DEFAULT_SEARCH_BUDGET,
};
pub use matched::{bicrossed, factorization_extract, MatchedPair};

use crate::error::Error;
use crate::exactlin::Tensor3;

fn expect_dims(name: &str, t: &Tensor3, dims: (usize, usize, usize)) -> Result<(), Error> {
    if t.dims() != dims {
        return Err(Error::Shape(format!(
            "{name} has dims {:?}, expected {dims:?}",
            t.dims()
        )));
    }
    Ok(())
}
