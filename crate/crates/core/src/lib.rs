//! Interval predicates over discrete streams, interval relations, and
//! exhaustive refinement checking.

pub mod error;
pub mod expr;
pub mod pred;
pub mod laws;
pub mod refine;
pub mod rel;
mod search;
pub mod state;
pub mod time;
pub mod verdict;

pub use error::{Error, Result};
pub use expr::{BoolExpr, CmpOp, Operand, RelVar, Side, StatePred, StateRel};
pub use pred::IntvPred;
pub use refine::{Init, ObsPair, SystemSpec};
pub use rel::IntvRel;
pub use state::{
    enumerate_streams, Domain, State, Stream, StreamSpace, Value, ValueKind, VarDecl, VarUniverse,
};
pub use time::{adjoins, Carrier, Interval, IntervalClass, IntervalTable, Time};
pub use verdict::{Verdict, Witness};
