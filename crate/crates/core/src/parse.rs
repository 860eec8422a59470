//! Greedy LZ-End factorization.
//!
//! At position `i` the parser takes the longest prefix of `text[i..]` that is
//! also a suffix of the already parsed text ending exactly at a phrase end
//! (ties go to the smallest phrase ordinal), then appends the next symbol as
//! the innovation. A match that consumes the rest of the text yields a final
//! phrase without innovation.
//!
//! [`parse`] answers the "which lengths end at a boundary" question with a
//! suffix array over the reversed text: `T[i..i+L)` ends at boundary `e` iff
//! the reversed suffixes starting at `n-i-L` and `n-1-e` share `L` symbols.
//! [`parse_reference`] is the direct quadratic scan it is checked against.

use std::collections::BTreeSet;

use crate::archive::Archive;
use crate::phrase::Phrase;
use crate::suffix::{inverse, lcp_array, suffix_array, RangeMin};

/// Whether the final phrase may omit its innovation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    /// Standard parse: a match reaching end of text ends the archive.
    Open,
    /// Every phrase carries an innovation; used for fragments spliced into the
    /// interior of an archive.
    Innovation,
}

pub fn parse(text: &[u8]) -> Archive {
    Archive::from_valid(parse_phrases(text, Terminal::Open))
}

pub fn parse_reference(text: &[u8]) -> Archive {
    Archive::from_valid(parse_reference_phrases(text, Terminal::Open))
}

struct ReversedIndex {
    sa: Vec<u32>,
    isa: Vec<u32>,
    lcp: RangeMin,
}

impl ReversedIndex {
    fn new(text: &[u8]) -> Self {
        let rev: Vec<u8> = text.iter().rev().copied().collect();
        let sa = suffix_array(&rev);
        let isa = inverse(&sa);
        let lcp = RangeMin::new(lcp_array(&rev, &sa, &isa));
        ReversedIndex { sa, isa, lcp }
    }

    /// Common prefix length of the reversed suffixes at ranks `a != b`.
    #[inline]
    fn lcp(&self, a: u32, b: u32) -> u32 {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.lcp.min(lo as usize + 1, hi as usize)
    }

    /// Does some rank in `set` share at least `len` symbols with rank `r`?
    /// The nearest neighbours in rank order have the longest common prefix.
    #[inline]
    fn any_within(&self, set: &BTreeSet<u32>, r: u32, len: u32) -> bool {
        if let Some(&p) = set.range(..r).next_back() {
            if self.lcp(p, r) >= len {
                return true;
            }
        }
        if let Some(&s) = set.range(r + 1..).next() {
            if self.lcp(r, s) >= len {
                return true;
            }
        }
        false
    }

    /// Largest reversed-text position (i.e. smallest text position) among
    /// ranks in `set` sharing at least `len` symbols with rank `r`.
    fn max_position_within(&self, set: &BTreeSet<u32>, r: u32, len: u32) -> Option<u32> {
        let mut best: Option<u32> = None;
        let mut consider = |q: u32| {
            let pos = self.sa[q as usize];
            best = Some(best.map_or(pos, |b: u32| b.max(pos)));
        };
        for &q in set.range(..r).rev() {
            if self.lcp(q, r) < len {
                break;
            }
            consider(q);
        }
        for &q in set.range(r + 1..) {
            if self.lcp(r, q) < len {
                break;
            }
            consider(q);
        }
        best
    }
}

pub(crate) fn parse_phrases(text: &[u8], terminal: Terminal) -> Vec<Phrase> {
    let n = text.len();
    let mut phrases = Vec::new();
    if n == 0 {
        return phrases;
    }
    let index = ReversedIndex::new(text);
    // ranks (in the reversed text) of every parsed position / of phrase ends
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut marked: BTreeSet<u32> = BTreeSet::new();
    let mut ends: Vec<usize> = Vec::new();
    let rank_of = |t: usize| index.isa[n - 1 - t];

    let mut i = 0usize;
    while i < n {
        let max_len = match terminal {
            Terminal::Open => n - i,
            Terminal::Innovation => n - i - 1,
        };
        let mut best = 0usize;
        for len in 1..=max_len {
            let r = index.isa[n - i - len];
            if index.any_within(&marked, r, len as u32) {
                best = len;
                continue;
            }
            // no occurrence of text[i..i+len) inside text[..i]: longer fails too
            if !index.any_within(&seen, r, len as u32) {
                break;
            }
        }

        let phrase = if best == 0 {
            Phrase::literal(text[i])
        } else {
            let r = index.isa[n - i - best];
            let rev_pos = index
                .max_position_within(&marked, r, best as u32)
                .expect("a boundary matched at this length");
            let end = n - 1 - rev_pos as usize;
            let source = ends.partition_point(|&e| e < end);
            debug_assert_eq!(ends[source], end);
            if i + best == n {
                Phrase::new(Some(source), best, None)
            } else {
                Phrase::new(Some(source), best + 1, Some(text[i + best]))
            }
        };

        let next = i + phrase.len;
        for t in i..next {
            seen.insert(rank_of(t));
        }
        marked.insert(rank_of(next - 1));
        ends.push(next - 1);
        phrases.push(phrase);
        i = next;
    }
    phrases
}

pub(crate) fn parse_reference_phrases(text: &[u8], terminal: Terminal) -> Vec<Phrase> {
    let n = text.len();
    let mut phrases = Vec::new();
    let mut ends: Vec<usize> = Vec::new();
    let mut i = 0usize;
    while i < n {
        let max_len = match terminal {
            Terminal::Open => n - i,
            Terminal::Innovation => n - i - 1,
        };
        let mut best = (0usize, 0usize);
        for (k, &e) in ends.iter().enumerate() {
            for len in (best.0 + 1)..=max_len.min(e + 1) {
                if text[i..i + len] == text[e + 1 - len..=e] {
                    best = (len, k);
                }
            }
        }
        let (len, source) = best;
        let phrase = if len == 0 {
            Phrase::literal(text[i])
        } else if i + len == n {
            Phrase::new(Some(source), len, None)
        } else {
            Phrase::new(Some(source), len + 1, Some(text[i + len]))
        };
        i += phrase.len;
        ends.push(i - 1);
        phrases.push(phrase);
    }
    phrases
}
