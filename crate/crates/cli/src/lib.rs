//! Command-line front end for the hyperct library: a term-expression
//! parser, a shared report shape, and the subcommand dispatcher.

pub mod app;
pub mod parse;
pub mod report;
