//! Problem files, reports and command pipelines for the `nlie` tool.

pub mod commands;
pub mod problem;
pub mod report;
