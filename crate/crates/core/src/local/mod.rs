//! Places, discrete valuations, truncated completions, Hensel witnesses.

pub mod hensel;
pub mod padic;
pub mod place;
pub mod series;
pub mod valuation;

pub use hensel::hensel_witness;
pub use place::{GlobalField, Place};
pub use series::{LaurentTower, TowerElem};
pub use valuation::{compose_vals, gauss_extend, Center, Val, Valuation};
