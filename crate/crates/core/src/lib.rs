pub mod error;
pub mod amod;
pub mod dcomplex;
pub mod dga;
pub mod doc;
pub mod groebner;
pub mod model;
pub mod random;
pub mod linalg;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
