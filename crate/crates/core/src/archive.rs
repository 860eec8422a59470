use crate::boundary::BoundaryIndex;
use crate::error::{Error, Result};
use crate::phrase::Phrase;

/// A parsed text: the phrase list plus its boundary index.
///
/// Construction validates every structural invariant, so any `Archive` value
/// decodes to exactly `len()` symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Archive {
    phrases: Vec<Phrase>,
    boundaries: BoundaryIndex,
}

impl Archive {
    pub fn empty() -> Self {
        Archive::default()
    }

    /// Validates and wraps a phrase list. Phrases are canonicalized first
    /// (see [`Phrase::new`]).
    pub fn new(phrases: Vec<Phrase>) -> Result<Self> {
        let phrases: Vec<Phrase> = phrases
            .into_iter()
            .map(|p| Phrase::new(p.source, p.len, p.last))
            .collect();
        validate_phrases(&phrases).map_err(|(k, msg)| {
            Error::corrupt(format!("phrase {k}: {msg}"))
        })?;
        Ok(Self::from_valid(phrases))
    }

    pub(crate) fn from_valid(phrases: Vec<Phrase>) -> Self {
        let boundaries = BoundaryIndex::from_lengths(phrases.iter().map(|p| p.len));
        Archive {
            phrases,
            boundaries,
        }
    }

    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    pub fn boundaries(&self) -> &BoundaryIndex {
        &self.boundaries
    }

    /// Total symbol count `n`.
    pub fn len(&self) -> usize {
        self.boundaries.symbol_count()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn phrase_count(&self) -> usize {
        self.phrases.len()
    }

    pub fn rank(&self, pos: usize) -> Result<usize> {
        self.boundaries.rank(pos)
    }

    pub fn select(&self, k: usize) -> Result<usize> {
        self.boundaries.select(k)
    }

    /// Inclusive symbol range `[start, end]` copied by phrase `k`, or `None`
    /// for a literal.
    pub fn source_window(&self, k: usize) -> Option<(usize, usize)> {
        let p = &self.phrases[k];
        let q = p.source?;
        let b = self.boundaries.end_of(q);
        Some((b + 1 - p.copy_len(), b))
    }

    /// Inclusive symbol extent `[start, end]` of phrase `k`.
    pub fn extent(&self, k: usize) -> (usize, usize) {
        (self.boundaries.start_of(k), self.boundaries.end_of(k))
    }

    pub fn decompress(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len());
        for (k, p) in self.phrases.iter().enumerate() {
            if let Some(q) = p.source {
                let b = self.boundaries.end_of(q);
                let c = p.copy_len();
                // validated: b + 1 >= c and b < start of k
                debug_assert!(b < out.len() && b + 1 >= c, "phrase {k}");
                out.extend_from_within(b + 1 - c..=b);
            }
            if let Some(s) = p.last {
                out.push(s);
            }
        }
        out
    }

    /// Decodes `[start, start + len)` by following source windows, without
    /// materializing anything outside the resolution chain.
    pub fn extract(&self, start: usize, len: usize) -> Result<Vec<u8>> {
        let end = start
            .checked_add(len)
            .filter(|&e| e <= self.len())
            .ok_or_else(|| Error::range("extract end", start.saturating_add(len), self.len()))?;
        let mut out = Vec::with_capacity(len);
        if start < end {
            self.extract_into(start, end - 1, &mut out);
        }
        Ok(out)
    }

    /// Single symbol at `pos`; `pos` must be `< len()`.
    pub fn symbol_at(&self, mut pos: usize) -> u8 {
        loop {
            let k = self.boundaries.rank_unchecked(pos);
            let p = &self.phrases[k];
            let start = self.boundaries.start_of(k);
            let off = pos - start;
            if off < p.copy_len() {
                let b = self.boundaries.end_of(p.source.expect("copy part implies source"));
                pos = b + 1 - p.copy_len() + off;
            } else {
                return p.last.expect("position past copy part is the innovation");
            }
        }
    }

    /// Appends decoded symbols of the inclusive range `[lo, hi]`.
    pub(crate) fn extract_into(&self, lo: usize, hi: usize, out: &mut Vec<u8>) {
        enum Work {
            Range(usize, usize),
            Symbol(u8),
        }
        let mut stack = vec![Work::Range(lo, hi)];
        while let Some(w) = stack.pop() {
            let (lo, hi) = match w {
                Work::Symbol(s) => {
                    out.push(s);
                    continue;
                }
                Work::Range(lo, hi) => (lo, hi),
            };
            let k = self.boundaries.rank_unchecked(lo);
            let (start, end) = self.extent(k);
            if hi > end {
                stack.push(Work::Range(end + 1, hi));
            }
            let part_hi = hi.min(end);
            let p = &self.phrases[k];
            let copy_end = start + p.copy_len(); // exclusive
            if part_hi == end {
                if let Some(s) = p.last {
                    stack.push(Work::Symbol(s));
                }
            }
            if lo < copy_end {
                let base = self.boundaries.end_of(p.source.expect("copy part implies source")) + 1
                    - p.copy_len();
                let chi = part_hi.min(copy_end - 1);
                stack.push(Work::Range(base + (lo - start), base + (chi - start)));
            }
        }
    }
}

/// Checks the archive invariants; returns the offending ordinal and reason.
pub(crate) fn validate_phrases(phrases: &[Phrase]) -> std::result::Result<(), (usize, String)> {
    let mut ends: Vec<usize> = Vec::with_capacity(phrases.len());
    let mut pos = 0usize;
    let last_idx = phrases.len().saturating_sub(1);
    for (k, p) in phrases.iter().enumerate() {
        if p.len == 0 {
            return Err((k, "zero length".into()));
        }
        if p.last.is_none() && k != last_idx {
            return Err((k, "missing innovation on a non-final phrase".into()));
        }
        match p.source {
            None => {
                if p.last.is_none() || p.len != 1 {
                    return Err((k, "literal phrase must be exactly one innovation symbol".into()));
                }
            }
            Some(q) => {
                if q >= k {
                    return Err((k, format!("source {q} does not precede the phrase")));
                }
                if p.len == 1 && p.last.is_some() {
                    return Err((k, "non-canonical single-symbol phrase with a source".into()));
                }
                if p.copy_len() > ends[q] + 1 {
                    return Err((k, format!("copy of {} symbols underruns the text", p.copy_len())));
                }
            }
        }
        pos = pos
            .checked_add(p.len)
            .ok_or_else(|| (k, "symbol count overflow".to_string()))?;
        ends.push(pos - 1);
    }
    Ok(())
}
