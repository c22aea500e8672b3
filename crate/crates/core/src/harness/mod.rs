//! Corpus generation, the law registry, counterexample search and reports.

pub mod corpus;
pub mod laws;
pub mod search;
pub mod report;
