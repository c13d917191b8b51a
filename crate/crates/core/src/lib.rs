//! Predicting the runtime complexity class of Java programs from their syntax
//! trees, with two pipelines: hand-engineered AST features and graph
//! embeddings learned from Weisfeiler-Lehman rooted subgraphs.

pub mod ablation;
pub mod ast;
pub mod class;
pub mod cli;
pub mod config;
pub mod corpus;
pub mod embed;
pub mod features;
pub mod learn;
pub mod pipeline;
pub mod report;
pub mod synth;

pub use class::ComplexityClass;
