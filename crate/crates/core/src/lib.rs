//! Finite models of level theories over hereditarily finite sets, plain
//! and complemented: set universes, a formula evaluator, axiom checking,
//! the interpretations between the two kinds of set, and Conway games.

pub mod chfset;
pub mod error;
pub mod games;
pub mod hfset;
pub mod interp;
pub mod logic;
pub mod models;
mod parse;

pub use chfset::{CHFSet, Polarity};
pub use error::{Caps, Error, Result};
pub use hfset::HFSet;
pub use logic::{DefPred, Formula, Kripke, OneSorted, Structure, Term, TwoSorted};
pub use models::{AxiomSuite, CheckOptions, CheckReport, Kind};
