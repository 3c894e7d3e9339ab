//! Degrees of finite partial groupoids, by Segal-condition checking and by Helly numbers
//! of characteristic actions.

pub mod action;
pub mod closure;
pub mod corpus;
pub mod degree;
pub mod error;
pub mod io;
pub mod registry;
pub mod roots;
pub mod segal;
pub mod symcore;

pub use error::{Error, Result};
