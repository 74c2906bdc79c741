//! Rank-one subshifts and their cutting-and-stacking towers.
//!
//! * [`construction`]: spacer rows, stage rules, the words `B_n` and big-integer heights.
//! * [`complexity`]: exact word complexity, right-special census, counting checks.
//! * [`family`]: closed-form profiles and parameter recipes for the
//!   `B_{n+1} = ((B_n 1)^{gamma_n} B_n)^{L_n}` family.
//! * [`rewrite`]: language-preserving rewrites between presentations.
//! * [`tower`]: exact measure dynamics on columns and levels.
//! * [`verify`]: named check suites used by the command line tool.

pub mod complexity;
pub mod construction;
pub mod error;
pub mod factor_index;
pub mod family;
pub mod growth;
pub mod rewrite;
pub mod specfile;
pub mod tower;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use word::Word;
