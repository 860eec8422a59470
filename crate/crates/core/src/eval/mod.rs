//! Modification-ratio experiments.
//!
//! The modification ratio (MR) of an edited archive is its compressed size
//! divided by the compressed size of a fresh parse of the edited plaintext.
//! [`run_incremental`], [`run_sizes`] and [`run_positions`] sweep edits over a
//! corpus and record one [`MrRecord`] per measurement; [`emit_report`] renders
//! them as CSV.

pub mod corpus;
mod payload;
mod report;
mod runs;

use std::fmt;

use crate::archive::Archive;
use crate::error::{Error, Result};
use crate::format::compressed_size;
use crate::parse::parse;

pub use corpus::CorpusFile;
pub use payload::{compression_ratio, make_payload, PayloadClass, MEDIUM_MIN_LEN, MEDIUM_TARGET_RATIO, MEDIUM_TOLERANCE};
pub use report::emit_report;
pub use runs::{run_incremental, run_positions, run_sizes, sweep_fractions, EvalConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operation {
    Insert,
    Delete,
    Replace,
}

impl Operation {
    pub const ALL: [Operation; 3] = [Operation::Insert, Operation::Delete, Operation::Replace];

    pub fn name(self) -> &'static str {
        match self {
            Operation::Insert => "insert",
            Operation::Delete => "delete",
            Operation::Replace => "replace",
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MrRecord {
    pub file: String,
    pub operation: Operation,
    pub payload: PayloadClass,
    /// Size fraction, position fraction, or 1-based edit index.
    pub parameter: f64,
    pub mr: f64,
}

/// `compressed_size(after) / compressed_size(parse(edited))`, after checking
/// that `after` really decodes to `edited`.
pub fn modification_ratio(after: &Archive, edited: &[u8]) -> Result<f64> {
    if after.len() != edited.len() {
        return Err(Error::Consistency(format!(
            "edited archive holds {} symbols, plaintext has {}",
            after.len(),
            edited.len()
        )));
    }
    let decoded = after.decompress();
    if let Some(p) = decoded.iter().zip(edited).position(|(a, b)| a != b) {
        return Err(Error::Consistency(format!(
            "edited archive differs from plaintext at symbol {p}"
        )));
    }
    let fresh = compressed_size(&parse(edited));
    Ok(compressed_size(after) as f64 / fresh as f64)
}

/// Folds seed components through splitmix64 so that every experiment task
/// gets an independent, reproducible stream.
pub(crate) fn derive_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0x9E37_79B9_7F4A_7C15, |acc, &p| splitmix(acc ^ splitmix(p)))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a, used to key per-file streams by name.
pub(crate) fn name_key(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}
