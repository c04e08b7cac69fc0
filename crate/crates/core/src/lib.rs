pub mod automorphisms;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod group;
pub mod crossed;
pub mod holomorph;
pub mod regular;
pub mod verify;

pub use error::{HgError, Result};
