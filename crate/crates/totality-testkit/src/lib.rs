//! Test support for the totality checker: random terms and calls, a
//! brute-force decision procedure for the term order, the property suite and
//! the example corpus.

pub mod corpus;
pub mod gen;
pub mod oracle;
pub mod suite;

pub use corpus::CORPUS;
pub use gen::{call_strategy, gen_term, term_strategy, Alphabet, TermGen};
pub use oracle::{leq_oracle, OracleError, TermUniverse, UniverseParams};

pub use suite::{run_property, run_property_suite, PropertyOutcome, SuiteConfig, SuiteReport, PROPERTIES};
