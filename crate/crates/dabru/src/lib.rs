//! Text formats, seeded campaigns and reports on top of `dabru-core`.

pub mod campaigns;
pub mod commands;
pub mod grammar;
pub mod report;
pub mod sample;

pub use dabru_core as core;
