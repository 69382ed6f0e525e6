//! Trivial source character tables of SL2(q) and PSL2(q).

pub mod blocks;
pub mod chartables;
pub mod cyclotomic;
pub mod groups;
pub mod linalg;
pub mod numtheory;
pub mod oracle;
pub mod trivsource;

pub use cyclotomic::{CycError, CycNum};
pub use groups::{GroupKind, Sign};
pub use trivsource::{assemble, TrivSourceTable};
