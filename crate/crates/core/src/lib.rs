pub mod classes;
pub mod complex;
pub mod cut;
pub mod domains;
pub mod enumerate;
pub mod error;
pub mod harness;
pub mod intersection;
pub mod maps;
pub(crate) mod normal;
pub mod path;
pub mod surface;

pub use error::{Error, Result};
