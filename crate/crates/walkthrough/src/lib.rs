//! File formats, fixture corpus, experiment harness and command line for
//! the `walkthrough-core` guidance engine.

pub mod cli;
pub mod corpus;
pub mod fixtures;
pub mod formats;
pub mod harness;
pub mod script;
