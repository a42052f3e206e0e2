pub mod cli;
pub mod dirac;
pub mod element;
pub mod error;
pub mod fusion;
pub mod length;
pub mod linalg;
pub mod metrics;
pub mod multiplier;
pub mod report;
