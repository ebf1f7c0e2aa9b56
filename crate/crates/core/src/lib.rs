//! Exact leaf-to-leaf path lengths in ordered (Catalan) binary trees.

pub mod catalan;
pub mod depth;
pub mod error;
pub mod exact;
pub mod exec;
pub mod figure;
pub mod paths;
pub mod series;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
