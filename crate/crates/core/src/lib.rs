//! Shortest covers of indeterminate strings and partial words.

pub mod cover;
pub mod error;
pub mod fpt;
pub mod generate;
pub mod istring;
pub mod lcp;
pub mod oracle;
pub mod reduction;
pub mod symbols;

pub use cover::{
    long_cover_search, maxgap, odot_prefix_solve, shortest_cover_batch, shortest_cover_restricted,
    simple_solve, Algorithm, BatchInstance, CoverResult, GapList, Limits,
};
pub use error::{Error, Result};
pub use fpt::{ambiguous_positions, fpt_solve_general, fpt_solve_partial, SolidColumnTable, TestCover};
pub use istring::{IString, ParseOptions};
pub use lcp::LcpIndex;
pub use symbols::{Alphabet, SymbolSet};
