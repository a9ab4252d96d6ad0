pub mod battery;
pub mod cocycle;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod io;
pub mod metric;
pub mod modules;
pub mod zmod;

pub use error::{Error, ErrorKind, Result};
