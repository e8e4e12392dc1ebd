//! Modules for finite soluble groups over finite fields.

pub mod blocks;
pub mod cli;
pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod field;
pub mod formation;
pub mod groups;
pub mod hyperdec;
pub mod io;
pub mod linalg;
pub mod meataxe;
pub mod module;
pub mod par;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
