pub mod conditions;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod exact;
pub mod exec;
pub mod extremal;
pub mod minkowski;
pub mod rotation;
pub mod topology;

pub use error::{Error, Result};
