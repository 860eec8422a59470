use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::format::compressed_size;
use crate::parse::parse;

/// Compressed-to-raw size ratio aimed for by medium payloads.
pub const MEDIUM_TARGET_RATIO: f64 = 0.5;
/// Accepted deviation from [`MEDIUM_TARGET_RATIO`].
pub const MEDIUM_TOLERANCE: f64 = 0.05;

/// Shortest medium payload that can reach the target ratio; below this the
/// fixed container header dominates the compressed size.
pub const MEDIUM_MIN_LEN: usize = 64;

const MEDIUM_SEED_ATTEMPTS: u64 = 8;
const MEDIUM_BISECTION_STEPS: usize = 24;

/// Entropy class of an inserted payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PayloadClass {
    /// A single repeated byte.
    Low,
    /// Compresses to about half its raw size.
    Medium,
    /// Uniform random bytes; does not compress.
    High,
}

impl PayloadClass {
    pub const ALL: [PayloadClass; 3] = [PayloadClass::Low, PayloadClass::Medium, PayloadClass::High];

    pub fn name(self) -> &'static str {
        match self {
            PayloadClass::Low => "low",
            PayloadClass::Medium => "medium",
            PayloadClass::High => "high",
        }
    }

    /// Whether payloads of this class exist at `size` bytes.
    pub fn supports(self, size: usize) -> bool {
        self != PayloadClass::Medium || size == 0 || size >= MEDIUM_MIN_LEN
    }

    pub fn target_ratio(self) -> Option<f64> {
        (self == PayloadClass::Medium).then_some(MEDIUM_TARGET_RATIO)
    }
}

impl fmt::Display for PayloadClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `compressed_size(parse(bytes)) / bytes.len()`.
pub fn compression_ratio(bytes: &[u8]) -> f64 {
    compressed_size(&parse(bytes)) as f64 / bytes.len() as f64
}

pub fn make_payload(class: PayloadClass, size: usize, seed: u64) -> Result<Vec<u8>> {
    match class {
        PayloadClass::Low => Ok(vec![b'a'; size]),
        PayloadClass::High => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = vec![0u8; size];
            rng.fill(out.as_mut_slice());
            Ok(out)
        }
        PayloadClass::Medium => medium(size, seed),
    }
}

/// Bisects the fresh-byte probability of [`block_mix`] until the compression
/// ratio lands in the target window, retrying with a few derived seeds.
fn medium(size: usize, seed: u64) -> Result<Vec<u8>> {
    if size == 0 {
        return Ok(Vec::new());
    }
    if size < MEDIUM_MIN_LEN {
        return Err(Error::Configuration(format!(
            "medium payloads need at least {MEDIUM_MIN_LEN} bytes, got {size}"
        )));
    }
    let (lo_ok, hi_ok) = (
        MEDIUM_TARGET_RATIO - MEDIUM_TOLERANCE,
        MEDIUM_TARGET_RATIO + MEDIUM_TOLERANCE,
    );
    for attempt in 0..MEDIUM_SEED_ATTEMPTS {
        let s = super::derive_seed(&[seed, attempt]);
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..MEDIUM_BISECTION_STEPS {
            let fresh = (lo + hi) / 2.0;
            let candidate = block_mix(size, fresh, s);
            let ratio = compression_ratio(&candidate);
            if (lo_ok..=hi_ok).contains(&ratio) {
                return Ok(candidate);
            }
            if ratio < MEDIUM_TARGET_RATIO {
                lo = fresh;
            } else {
                hi = fresh;
            }
        }
    }
    Err(Error::Configuration(format!(
        "no medium payload of {size} bytes compresses to {MEDIUM_TARGET_RATIO} ± {MEDIUM_TOLERANCE}"
    )))
}

/// Random bytes interleaved with short copies of earlier output. `fresh` is
/// the probability of emitting a new random byte rather than a copy.
fn block_mix(size: usize, fresh: f64, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        if out.len() < 2 || rng.random_bool(fresh) {
            out.push(rng.random());
            continue;
        }
        let len = rng.random_range(4..=24).min(size - out.len());
        let from = rng.random_range(0..out.len());
        for t in 0..len {
            let b = out[from + t];
            out.push(b);
        }
    }
    out
}
