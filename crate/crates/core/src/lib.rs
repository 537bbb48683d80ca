pub mod error;
pub mod exactmath;

pub use error::{ForgeError, Result};
pub mod projgeom;
pub mod grassmann;
pub mod niklattice;
pub mod pipeline;
