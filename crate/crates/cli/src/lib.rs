//! Front end for `pinlef`: the `.pinlef` document format and the
//! `decide`, `enumerate`, `oracle` and `surface-info` commands.

pub mod document;
pub mod report;

pub use document::{parse, serialize, InputDocument, ParseError, ThreefoldBlock};
pub use report::{execute, run, Command, Format, KindSelection, Report, EXIT_INPUT, EXIT_NO, EXIT_YES};
