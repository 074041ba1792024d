//! Totality checking for a first-order language with inductive and
//! coinductive types.
//!
//! Definitions are translated into terms of a small operator algebra, their
//! recursive calls are collected into a call-graph, calls are composed and
//! collapsed into a finite space until the graph is closed, and every coherent
//! loop must then either produce output or consume input at the right parity.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod call;
pub mod callgraph;
pub mod nf;
pub mod notation;
pub mod ops;
pub mod order;
pub mod pipeline;
pub mod scp;
pub mod surface;
pub mod term;
pub mod typing;
pub mod weight;

pub use call::{branch_weight, branches, Branch, Call, CallError, Item, Mode};
pub use nf::{is_normal, nf, Reducer};
pub use notation::{parse_term, NotationError};
pub use ops::{ccomp, collapse_depth, collapse_depth_with, collapse_weights, compose, substitute, Bounds};
pub use order::{sleq, sqcoh};
pub use pipeline::{check_source, CheckError, Options, Report};
pub use scp::{Outcome, Verdict};
pub use term::{name, Name, Term};
pub use weight::{Priority, Weight, ZInf};
