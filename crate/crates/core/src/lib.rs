//! Semantic relatedness between words, built from three knowledge sources:
//!
//! * explicit semantic analysis (ESA): cosine of tfidf concept vectors over
//!   encyclopedia pages ([`esa`], fed by [`corpus`] and [`text`]);
//! * WordNet hypernym-graph measures, chiefly the path measure ([`wordnet`]);
//! * bigram collocation statistics ([`collocation`]).
//!
//! [`combine`] gates the WordNet and collocation signals with logistic
//! sigmoids and multiplies them into ESA (the EW and EWC measures), and tunes
//! the gate parameters against Spearman's rho. [`eval`] holds the rank
//! evaluation tooling and [`svr`] a polynomial-kernel support vector
//! regressor. [`harness`] wires everything behind the `relmix` binary.

pub mod collocation;
pub mod combine;
pub mod corpus;
pub mod error;
pub mod esa;
pub mod eval;
pub mod harness;
pub mod svr;
pub mod text;
pub mod wordnet;

pub use error::{Error, Result};
