//! Local editing of LZ-End archives.
//!
//! [`modify`] replaces the symbols `[start, end)` with a payload without
//! decompressing the archive. The phrases covering the edited symbols (the
//! *target*) are re-encoded together with the payload as a standalone
//! fragment; every later phrase whose source window touches the target (a
//! *dependent*) is re-expressed by phrases that avoid the target; finally
//! back-references are renumbered.
//!
//! Phases run in this order: dependents, replacements, payload encoding,
//! splice, pointer adjustment. Only the target fringe and the dependents'
//! windows are ever decoded.

mod adjust;
mod dependents;
mod encode;
mod replace;

use std::ops::Range;

use crate::archive::Archive;
use crate::error::{Error, Result};
use crate::phrase::Phrase;

pub use adjust::{adjust_pointers, AdjustStats};
pub use dependents::{find_dependent_phrases, DependentSet};
pub use encode::encode_str;
pub use replace::{find_replacement_phrases, ReplacementTable};

/// Remove `[start, end)` and insert `payload` in its place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditRequest {
    pub start: usize,
    pub end: usize,
    pub payload: Vec<u8>,
}

impl EditRequest {
    pub fn new(start: usize, end: usize, payload: impl Into<Vec<u8>>) -> Self {
        EditRequest {
            start,
            end,
            payload: payload.into(),
        }
    }

    pub fn insert(at: usize, payload: impl Into<Vec<u8>>) -> Self {
        Self::new(at, at, payload)
    }

    pub fn delete(start: usize, end: usize) -> Self {
        Self::new(start, end, Vec::new())
    }

    pub fn replace(start: usize, end: usize, payload: impl Into<Vec<u8>>) -> Self {
        Self::new(start, end, payload)
    }

    pub fn is_noop(&self) -> bool {
        self.start == self.end && self.payload.is_empty()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.start > self.end {
            return Err(Error::Argument(format!(
                "edit start {} after end {}",
                self.start, self.end
            )));
        }
        if self.end > n {
            return Err(Error::Argument(format!(
                "edit end {} past text length {n}",
                self.end
            )));
        }
        Ok(())
    }

    /// The plaintext splice this edit stands for.
    pub fn apply_to(&self, text: &[u8]) -> Result<Vec<u8>> {
        self.validate(text.len())?;
        let mut out = Vec::with_capacity(text.len() - (self.end - self.start) + self.payload.len());
        out.extend_from_slice(&text[..self.start]);
        out.extend_from_slice(&self.payload);
        out.extend_from_slice(&text[self.end..]);
        Ok(out)
    }

    /// Signed change in text length.
    pub fn length_delta(&self) -> isize {
        self.payload.len() as isize - (self.end - self.start) as isize
    }
}

/// The target phrases of an edit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSpan {
    /// First target ordinal.
    pub first: usize,
    /// One past the last target ordinal.
    pub end: usize,
    /// Symbols covered by the target phrases.
    pub extent: Range<usize>,
    /// First ordinal visited by the dependent scan: the phrase containing the
    /// first kept symbol (this is a target when that symbol sits mid-phrase).
    pub scan_from: usize,
}

impl TargetSpan {
    pub fn for_edit(archive: &Archive, req: &EditRequest) -> Result<Self> {
        req.validate(archive.len())?;
        let b = archive.boundaries();
        let count = archive.phrase_count();
        let (i, j) = (req.start, req.end);
        let (first, end) = if j > i {
            (b.rank_unchecked(i), b.rank_unchecked(j - 1) + 1)
        } else if i < archive.len() {
            let x = b.rank_unchecked(i);
            (x, x + 1)
        } else {
            // appending after a final phrase that has no innovation means that
            // phrase can no longer be final, so it joins the re-encoding
            match archive.phrases().last() {
                Some(p) if p.last.is_none() => (count - 1, count),
                _ => (count, count),
            }
        };
        let scan_from = b.rank_unchecked(j).min(end);
        Ok(Self::build(archive, first, end, scan_from))
    }

    /// Target span for an explicit ordinal range `[first, end)`.
    pub fn from_ordinals(archive: &Archive, first: usize, end: usize) -> Result<Self> {
        if first > end || end > archive.phrase_count() {
            return Err(Error::Argument(format!(
                "target ordinals {first}..{end} invalid for {} phrases",
                archive.phrase_count()
            )));
        }
        Ok(Self::build(archive, first, end, end))
    }

    fn build(archive: &Archive, first: usize, end: usize, scan_from: usize) -> Self {
        let b = archive.boundaries();
        let extent = if first == end {
            archive.len()..archive.len()
        } else {
            b.start_of(first)..b.end_of(end - 1) + 1
        };
        TargetSpan {
            first,
            end,
            extent,
            scan_from,
        }
    }

    pub fn removed(&self) -> usize {
        self.end - self.first
    }

    pub fn contains_ordinal(&self, k: usize) -> bool {
        (self.first..self.end).contains(&k)
    }
}

/// Counters recorded while editing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditStats {
    /// Phrases visited by the dependent scan.
    pub scan_visits: usize,
    pub dependents: usize,
    /// Work items processed while building replacements.
    pub replacement_reads: usize,
    /// Target phrases copied into a replacement whose own source was a target.
    pub chained_expansions: usize,
    pub replacement_phrases: usize,
    pub payload_phrases: usize,
    pub removed_phrases: usize,
    pub pointer_lookups: usize,
    pub max_lookup_comparisons: usize,
}

pub fn modify(archive: &Archive, req: &EditRequest) -> Result<Archive> {
    modify_with_stats(archive, req).map(|(a, _)| a)
}

pub fn modify_with_stats(archive: &Archive, req: &EditRequest) -> Result<(Archive, EditStats)> {
    req.validate(archive.len())?;
    if req.is_noop() {
        return Ok((archive.clone(), EditStats::default()));
    }
    let span = TargetSpan::for_edit(archive, req)?;

    let dep = find_dependent_phrases(archive, &span);
    let rep = find_replacement_phrases(archive, &span, &dep);
    let fragment = encode_str(archive, &span, req)?;

    let phrases = archive.phrases();
    let replacement_total: usize = rep.rows().iter().map(Vec::len).sum();
    let mut spliced: Vec<Phrase> = Vec::with_capacity(
        phrases.len() - span.removed() - dep.len() + fragment.len() + replacement_total,
    );
    spliced.extend_from_slice(&phrases[..span.first]);
    spliced.extend(fragment.iter().map(|p| Phrase {
        source: p.source.map(|q| q + span.first),
        ..*p
    }));
    let mut next_dep = dep.ordinals().iter().zip(rep.rows()).peekable();
    for (o, p) in phrases.iter().enumerate().skip(span.end) {
        match next_dep.peek() {
            Some(&(&d, row)) if d == o => {
                spliced.extend_from_slice(row);
                next_dep.next();
            }
            _ => spliced.push(*p),
        }
    }

    let adjust = adjust_pointers(&mut spliced, &span, fragment.len(), &dep, &rep)?;
    let result = Archive::new(spliced)?;

    let stats = EditStats {
        scan_visits: dep.visited(),
        dependents: dep.len(),
        replacement_reads: rep.reads(),
        chained_expansions: rep.chained(),
        replacement_phrases: replacement_total,
        payload_phrases: fragment.len(),
        removed_phrases: span.removed(),
        pointer_lookups: adjust.lookups,
        max_lookup_comparisons: adjust.max_comparisons,
    };
    Ok((result, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use proptest::prelude::*;

    fn check(text: &[u8], req: EditRequest) -> Archive {
        let a = parse(text);
        let edited = modify(&a, &req).unwrap();
        assert_eq!(edited.decompress(), req.apply_to(text).unwrap(), "{req:?}");
        edited
    }

    #[test]
    fn worked_examples() {
        check(b"abcabd", EditRequest::replace(2, 3, "x"));
        assert!(check(b"abab", EditRequest::delete(0, 4)).is_empty());
        let a = check(b"abcabd", EditRequest::delete(4, 5));
        assert_eq!(a.decompress(), b"abcad");
        assert_eq!(&a.phrases()[3..], &[Phrase::literal(b'a'), Phrase::literal(b'd')]);
    }

    #[test]
    fn noop_returns_identical_archive() {
        let a = parse(b"hello hello hello");
        assert_eq!(modify(&a, &EditRequest::insert(5, "")).unwrap(), a);
    }

    #[test]
    fn argument_errors() {
        let a = parse(b"abc");
        assert!(matches!(modify(&a, &EditRequest::new(2, 1, "")), Err(Error::Argument(_))));
        assert!(matches!(modify(&a, &EditRequest::new(1, 4, "")), Err(Error::Argument(_))));
    }

    #[test]
    fn append_to_open_final_phrase() {
        // final phrase of "abab" has no innovation
        let a = check(b"abab", EditRequest::insert(4, "q"));
        assert_eq!(a.decompress(), b"ababq");
        check(b"abcabd", EditRequest::insert(6, "q"));
        check(b"", EditRequest::insert(0, "xyz"));
    }

    #[test]
    fn insertion_at_start_and_inside() {
        check(b"abcabcabcabc", EditRequest::insert(0, "zz"));
        check(b"abcabcabcabc", EditRequest::insert(7, "zz"));
        check(b"aaaaaaaaaaaaaaa", EditRequest::insert(3, "b"));
    }

    #[test]
    fn fragment_in_the_interior_keeps_innovations() {
        // the fragment "abab" would end without an innovation if parsed openly
        let text = b"xyabab!abab";
        let a = check(text, EditRequest::replace(2, 6, "abab"));
        assert!(a.phrases()[..a.phrase_count() - 1].iter().all(|p| p.last.is_some()));
    }

    #[test]
    fn chained_target_references_expand() {
        // unary text: every phrase points at its predecessor
        let text = vec![b'a'; 200];
        for (i, j) in [(0, 1), (1, 2), (2, 10), (5, 100), (50, 51), (100, 200), (0, 199)] {
            check(&text, EditRequest::replace(i, j, "b"));
            check(&text, EditRequest::delete(i, j));
        }
    }

    #[test]
    fn stats_scan_count() {
        let text = b"the cat sat on the mat with the hat and the bat";
        let a = parse(text);
        let req = EditRequest::delete(5, 9);
        let (_, stats) = modify_with_stats(&a, &req).unwrap();
        let rank_j = a.rank(req.end).unwrap();
        assert_eq!(stats.scan_visits, a.phrase_count() - rank_j);
    }

    fn arb_text() -> impl Strategy<Value = Vec<u8>> {
        prop_oneof![
            proptest::collection::vec(0u8..2, 0..300),
            proptest::collection::vec(0u8..4, 0..300),
            proptest::collection::vec(any::<u8>(), 0..300),
        ]
    }

    proptest! {
        #[test]
        fn edit_matches_splice(
            text in arb_text(),
            a in any::<usize>(),
            b in any::<usize>(),
            payload in proptest::collection::vec(0u8..3, 0..20),
        ) {
            let n = text.len();
            let (i, j) = {
                let (x, y) = (a % (n + 1), b % (n + 1));
                (x.min(y), x.max(y))
            };
            let req = EditRequest::new(i, j, payload);
            let arch = parse(&text);
            let edited = modify(&arch, &req).unwrap();
            prop_assert_eq!(edited.decompress(), req.apply_to(&text).unwrap());
        }

        #[test]
        fn sequential_edits_compose(
            text in proptest::collection::vec(0u8..3, 1..200),
            edits in proptest::collection::vec((any::<usize>(), 0usize..8, proptest::collection::vec(0u8..3, 0..6)), 1..25),
        ) {
            let mut plain = text.clone();
            let mut arch = parse(&text);
            for (pos, del, payload) in edits {
                let i = pos % (plain.len() + 1);
                let j = (i + del).min(plain.len());
                let req = EditRequest::new(i, j, payload);
                arch = modify(&arch, &req).unwrap();
                plain = req.apply_to(&plain).unwrap();
                prop_assert_eq!(arch.decompress(), plain.clone());
            }
        }
    }
}
