//! Command-line companion: verification suites, oracles, reports and caching.

pub mod cache;
pub mod oracles;
pub mod render;
pub mod report;
pub mod suites;
