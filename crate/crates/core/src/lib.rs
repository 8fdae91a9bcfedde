//! Exact arithmetic for the double-affine Bruhat order on `W_T = T ⋊ W`.
#![no_std]

extern crate alloc;

pub mod affine;
pub mod bruhat;
pub mod daweyl;
pub mod error;
pub mod ground;
pub mod length;
pub mod linalg;
pub mod oracle;
pub mod rootsys;

pub use error::{Error, Result};
