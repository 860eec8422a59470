//! LZ-End compression with local decoding and local editing.
//!
//! ```
//! use lzend::{modify, parse, EditRequest};
//!
//! let archive = parse(b"abcabcabcabd");
//! assert_eq!(archive.extract(3, 4).unwrap(), b"abca");
//! let edited = modify(&archive, &EditRequest::replace(3, 6, "xyz")).unwrap();
//! assert_eq!(edited.decompress(), b"abcxyzabcabd");
//! ```

pub mod archive;
pub mod boundary;
pub mod calibrated;
pub mod edit;
pub mod eval;
pub mod error;
pub mod exec;
pub mod format;
pub mod parse;
pub mod phrase;
mod suffix;
pub mod varint;

pub use archive::Archive;
pub use boundary::BoundaryIndex;
pub use edit::{modify, modify_with_stats, EditRequest, EditStats};
pub use error::{Error, Result};
pub use exec::Execution;
pub use format::{compressed_size, deserialize, serialize};
pub use parse::{parse, parse_reference};
pub use phrase::Phrase;
