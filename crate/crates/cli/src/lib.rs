//! Command-line front end: JSON ring and hom files, canned examples and
//! verification reports.

pub mod commands;
pub mod input;
pub mod report;
