pub mod bmo;
pub mod catalogue;
pub mod error;
pub mod estimate;
pub mod field;
pub mod hms;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod schatten;
pub mod sweep;
pub mod symbol;
pub mod twist;

pub use error::{Error, Result};
