pub mod catalog;
pub mod cli;
pub mod error;
pub mod group_ring;
pub mod honda;
pub mod howell;
pub mod ideal;
pub mod order;
pub mod quotient;
pub mod resolution;
pub mod stabilizer;
pub mod witt;

pub use error::{Error, Result};
