use crate::error::{Error, Result};

/// Sorted phrase-end positions with rank/select by binary search.
///
/// `ends[k]` is the position of the last symbol of phrase `k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundaryIndex {
    ends: Vec<usize>,
}

impl BoundaryIndex {
    /// Builds the index from phrase lengths. Every length must be at least 1.
    pub fn from_lengths<I: IntoIterator<Item = usize>>(lengths: I) -> Self {
        let mut pos = 0usize;
        let ends = lengths
            .into_iter()
            .map(|len| {
                debug_assert!(len >= 1);
                pos += len;
                pos - 1
            })
            .collect();
        BoundaryIndex { ends }
    }

    /// Wraps an explicit end list; it must be strictly increasing.
    pub fn from_ends(ends: Vec<usize>) -> Result<Self> {
        if ends.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument("phrase ends must be strictly increasing".into()));
        }
        Ok(BoundaryIndex { ends })
    }

    pub fn ends(&self) -> &[usize] {
        &self.ends
    }

    pub fn phrase_count(&self) -> usize {
        self.ends.len()
    }

    /// Total symbol count covered by the phrases.
    pub fn symbol_count(&self) -> usize {
        self.ends.last().map_or(0, |&e| e + 1)
    }

    /// Number of phrase ends strictly before `pos`; for `pos < n` this is the
    /// ordinal of the phrase containing `pos`.
    pub fn rank(&self, pos: usize) -> Result<usize> {
        let n = self.symbol_count();
        if pos > n {
            return Err(Error::range("symbol position", pos, n));
        }
        Ok(self.rank_unchecked(pos))
    }

    /// End position of phrase `k`.
    pub fn select(&self, k: usize) -> Result<usize> {
        self.ends
            .get(k)
            .copied()
            .ok_or_else(|| Error::range("phrase ordinal", k, self.ends.len()))
    }

    #[inline]
    pub(crate) fn rank_unchecked(&self, pos: usize) -> usize {
        self.ends.partition_point(|&e| e < pos)
    }

    /// First symbol position of phrase `k`.
    #[inline]
    pub(crate) fn start_of(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.ends[k - 1] + 1
        }
    }

    #[inline]
    pub(crate) fn end_of(&self, k: usize) -> usize {
        self.ends[k]
    }
}
