//! Corpus handling, cached analyses, verification reports and the `gds` tool.

pub mod cache;
pub mod cli;
pub mod corpus;
pub mod verify;

pub use cli::run;
