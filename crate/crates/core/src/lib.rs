//! Exact q-series arithmetic for dilated Ramanujan–Serre derivatives and
//! the divisor-function convolution sums they evaluate.

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod convolution;
pub mod error;
pub mod eta;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod series;

pub use arith::Rational;
pub use catalog::{Catalog, FormExpr, FormRef, SpaceDescriptor};
pub use error::{Error, Result};
pub use eta::EtaProduct;
pub use linalg::{express_in_basis, LinearCombination};
pub use series::QSeries;
