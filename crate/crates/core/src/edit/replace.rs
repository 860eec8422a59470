//! Re-expressing dependents without the target.
//!
//! Each dependent's content (its source window plus innovation) is resolved
//! into *segments*: copies that end at a surviving phrase boundary, and
//! literal symbols. The part of the window before the target becomes one copy
//! ending at the phrase just before the target; the part after the target
//! becomes one copy ending at the dependent's own source; the part inside the
//! target becomes the overlapped target phrases themselves (the first one
//! trimmed to its overlapping suffix), each expanded recursively while its
//! own source is a target phrase. Segments are then packed into phrases, each
//! copy taking the next symbol as its innovation.

use crate::archive::Archive;
use crate::phrase::Phrase;

use super::{DependentSet, TargetSpan};

/// Replacement phrases for each dependent, aligned with
/// [`DependentSet::ordinals`]. Sources are ordinals of the pre-edit archive;
/// [`super::adjust_pointers`] renumbers them after the splice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReplacementTable {
    rows: Vec<Vec<Phrase>>,
    reads: usize,
    chained: usize,
}

impl ReplacementTable {
    #[cfg(test)]
    pub(crate) fn from_rows(rows: Vec<Vec<Phrase>>) -> Self {
        Self {
            rows,
            ..Self::default()
        }
    }

    pub fn rows(&self) -> &[Vec<Phrase>] {
        &self.rows
    }

    pub fn reads(&self) -> usize {
        self.reads
    }

    pub fn chained(&self) -> usize {
        self.chained
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Segment {
    /// `len` symbols ending at the last symbol of phrase `source`; `start` is
    /// the position of the first copied symbol.
    Copy {
        source: usize,
        len: usize,
        start: usize,
    },
    Literal(u8),
}

pub fn find_replacement_phrases(
    archive: &Archive,
    span: &TargetSpan,
    dep: &DependentSet,
) -> ReplacementTable {
    let mut resolver = Resolver {
        archive,
        span,
        reads: 0,
        chained: 0,
    };
    let mut segments = Vec::new();
    let rows = dep
        .ordinals()
        .iter()
        .map(|&d| {
            segments.clear();
            let p = archive.phrases()[d];
            if let Some((lo, hi)) = archive.source_window(d) {
                resolver.resolve(lo, hi, &mut segments);
            }
            if let Some(s) = p.last {
                segments.push(Segment::Literal(s));
            }
            assemble(archive, &segments)
        })
        .collect();
    ReplacementTable {
        rows,
        reads: resolver.reads,
        chained: resolver.chained,
    }
}

struct Resolver<'a> {
    archive: &'a Archive,
    span: &'a TargetSpan,
    reads: usize,
    chained: usize,
}

impl Resolver<'_> {
    /// Appends segments decoding to the pre-edit symbols `[lo, hi]`, none of
    /// which copies from inside the target extent.
    fn resolve(&mut self, lo: usize, hi: usize, out: &mut Vec<Segment>) {
        enum Work {
            Range(usize, usize),
            Literal(u8),
        }
        let bounds = self.archive.boundaries();
        let phrases = self.archive.phrases();
        let (es, ee) = (self.span.extent.start, self.span.extent.end);

        let mut stack = vec![Work::Range(lo, hi)];
        while let Some(work) = stack.pop() {
            let (lo, hi) = match work {
                Work::Literal(s) => {
                    out.push(Segment::Literal(s));
                    continue;
                }
                Work::Range(lo, hi) => (lo, hi),
            };
            // split at the target extent so each range lies on one side
            if lo < es && hi >= es {
                stack.push(Work::Range(es, hi));
                stack.push(Work::Range(lo, es - 1));
                continue;
            }
            if lo < ee && hi >= ee {
                stack.push(Work::Range(ee, hi));
                stack.push(Work::Range(lo, ee - 1));
                continue;
            }
            self.reads += 1;

            if hi < es || lo >= ee {
                let k = bounds.rank_unchecked(hi);
                if hi == bounds.end_of(k) {
                    out.push(Segment::Copy {
                        source: k,
                        len: hi - lo + 1,
                        start: lo,
                    });
                    continue;
                }
                let start = bounds.start_of(k);
                if lo < start {
                    stack.push(Work::Range(start, hi));
                    stack.push(Work::Range(lo, start - 1));
                    continue;
                }
                // strictly inside phrase k and before its last symbol: the
                // copy part, so follow the source window
                let (base, _) = self.archive.source_window(k).expect("copy part implies source");
                stack.push(Work::Range(base + (lo - start), base + (hi - start)));
                continue;
            }

            // inside the target: walk the overlapped target phrases
            let k = bounds.rank_unchecked(lo);
            let (start, end) = self.archive.extent(k);
            if hi > end {
                stack.push(Work::Range(end + 1, hi));
            }
            let part_hi = hi.min(end);
            let p = &phrases[k];
            if part_hi == end {
                if let Some(s) = p.last {
                    stack.push(Work::Literal(s));
                }
            }
            let copy_end = start + p.copy_len();
            if lo < copy_end {
                let q = p.source.expect("copy part implies source");
                if self.span.contains_ordinal(q) {
                    self.chained += 1;
                }
                let (base, _) = self.archive.source_window(k).expect("copy part implies source");
                let chi = part_hi.min(copy_end - 1);
                stack.push(Work::Range(base + (lo - start), base + (chi - start)));
            }
        }
    }
}

/// Packs segments into phrases. A pending copy takes the next segment's first
/// symbol as its innovation; the copy it borrowed from still ends at the same
/// boundary, only one symbol shorter.
fn assemble(archive: &Archive, segments: &[Segment]) -> Vec<Phrase> {
    let mut out = Vec::with_capacity(segments.len());
    let mut pending: Option<(usize, usize)> = None;
    for seg in segments {
        match *seg {
            Segment::Copy { source, len, start } => match pending.take() {
                Some((ps, pl)) => {
                    out.push(Phrase::new(Some(ps), pl + 1, Some(archive.symbol_at(start))));
                    if len > 1 {
                        pending = Some((source, len - 1));
                    }
                }
                None => pending = Some((source, len)),
            },
            Segment::Literal(s) => match pending.take() {
                Some((ps, pl)) => out.push(Phrase::new(Some(ps), pl + 1, Some(s))),
                None => out.push(Phrase::literal(s)),
            },
        }
    }
    if let Some((ps, pl)) = pending {
        out.push(Phrase::new(Some(ps), pl, None));
    }
    out
}
