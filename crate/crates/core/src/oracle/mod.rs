//! Independent ground truth: the Coxeter presentation of the single-affine
//! case, and definition-level grid scans.

pub mod brute;
pub mod coxeter;

pub use brute::{brute_interval, brute_inv_pp, certified_box, Interval};
pub use coxeter::{identify, CoxeterElt, CoxeterGroup};
