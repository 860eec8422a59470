use crate::error::{Error, Result};
use crate::phrase::Phrase;

use super::{DependentSet, ReplacementTable, TargetSpan};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AdjustStats {
    pub lookups: usize,
    pub max_comparisons: usize,
}

/// Net phrases added by each dependent's replacement, cumulated, for binary
/// search by old ordinal.
struct ShiftTable<'a> {
    deps: &'a [usize],
    cumulative: Vec<isize>,
}

impl ShiftTable<'_> {
    /// Extra shift for an old ordinal: the growth of every dependent at or
    /// before it. Returns the shift and the number of comparisons made.
    fn lookup(&self, old: usize) -> (isize, usize) {
        let (mut lo, mut hi) = (0, self.deps.len());
        let mut comparisons = 0;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            comparisons += 1;
            if self.deps[mid] <= old {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let shift = if lo == 0 { 0 } else { self.cumulative[lo - 1] };
        (shift, comparisons)
    }
}

/// Renumbers sources after the splice.
///
/// `phrases` is the spliced list: untouched phrases before the target, the
/// `inserted` fragment phrases (already in final numbering), then survivors
/// and replacement rows whose sources are still pre-edit ordinals. A pre-edit
/// source `q` past the target moves by `inserted - removed` plus the growth of
/// every dependent at or before `q`; a source naming a dependent therefore
/// lands on that dependent's final replacement phrase, which ends at the same
/// symbol.
pub fn adjust_pointers(
    phrases: &mut [Phrase],
    span: &TargetSpan,
    inserted: usize,
    dep: &DependentSet,
    rep: &ReplacementTable,
) -> Result<AdjustStats> {
    let table = ShiftTable {
        deps: dep.ordinals(),
        cumulative: rep
            .rows()
            .iter()
            .scan(0isize, |acc, row| {
                *acc += row.len() as isize - 1;
                Some(*acc)
            })
            .collect(),
    };
    let net = inserted as isize - span.removed() as isize;
    let mut stats = AdjustStats::default();
    let from = span.first + inserted;
    for (idx, p) in phrases.iter_mut().enumerate().skip(from) {
        let Some(q) = p.source else { continue };
        if q < span.first {
            continue;
        }
        if q < span.end {
            return Err(Error::corrupt(format!(
                "phrase {idx} still references removed target phrase {q}"
            )));
        }
        let shift = if table.deps.is_empty() {
            0
        } else {
            let (shift, comparisons) = table.lookup(q);
            stats.lookups += 1;
            stats.max_comparisons = stats.max_comparisons.max(comparisons);
            shift
        };
        let moved = q as isize + net + shift;
        if moved < 0 || moved as usize >= idx {
            return Err(Error::corrupt(format!(
                "adjusted source {moved} of phrase {idx} is out of range"
            )));
        }
        p.source = Some(moved as usize);
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::{find_dependent_phrases, find_replacement_phrases, modify, EditRequest};
    use crate::parse::parse;

    #[test]
    fn zero_net_shift_leaves_sources() {
        let a = parse(b"abcdefabcdef");
        // one target replaced by one phrase, nothing to shift
        let span = TargetSpan::from_ordinals(&a, 3, 4).unwrap();
        let dep = DependentSet::default();
        let rep = ReplacementTable::default();
        let mut phrases = a.phrases().to_vec();
        let before = phrases.clone();
        let stats = adjust_pointers(&mut phrases, &span, 1, &dep, &rep).unwrap();
        assert_eq!(phrases, before);
        assert_eq!(stats.lookups, 0);
    }

    #[test]
    fn prefix_reference_keeps_its_source() {
        let a = parse(b"abcabd");
        let edited = modify(&a, &EditRequest::replace(1, 2, "x")).unwrap();
        // replacement of phrase 3 begins with a copy ending at phrase 0
        assert_eq!(edited.phrases()[3].source, Some(0));
        assert_eq!(edited.decompress(), b"axcabd");
    }

    #[test]
    fn shift_includes_growth_of_earlier_dependents() {
        // targets removed = 1, fragment = 3 phrases => net +2 ; one dependent
        // before q grew by 2 => +4 in total
        let span = TargetSpan {
            first: 1,
            end: 2,
            extent: 1..2,
            scan_from: 2,
        };
        let dep = DependentSet::from_parts(vec![3], 0);
        let rep = ReplacementTable::from_rows(vec![vec![Phrase::literal(b'z'); 3]]);
        // old layout [p0 t1 p2 d3 p4 p5]; spliced [p0 f f f p2 r r r p4 p5]
        let mut phrases = vec![Phrase::literal(b'a'); 9];
        phrases.push(Phrase::new(Some(4), 2, Some(b'a')));
        phrases.push(Phrase::new(Some(3), 2, Some(b'a')));
        phrases.push(Phrase::new(Some(2), 2, Some(b'a')));
        phrases.push(Phrase::new(Some(0), 2, Some(b'a')));
        adjust_pointers(&mut phrases, &span, 3, &dep, &rep).unwrap();
        let sources: Vec<_> = phrases[9..].iter().map(|p| p.source.unwrap()).collect();
        // old 4 -> 8 (p4), old 3 -> 7 (last replacement phrase), old 2 -> 4
        assert_eq!(sources, vec![8, 7, 4, 0]);
    }

    #[test]
    fn source_into_removed_target_is_corruption() {
        let span = TargetSpan {
            first: 1,
            end: 2,
            extent: 1..2,
            scan_from: 2,
        };
        let mut phrases = vec![Phrase::literal(b'a'); 3];
        phrases.push(Phrase::new(Some(1), 2, Some(b'a')));
        let err = adjust_pointers(&mut phrases, &span, 1, &DependentSet::default(), &ReplacementTable::default());
        assert!(matches!(err, Err(Error::Corruption { .. })));
    }

    #[test]
    fn lookup_comparisons_are_logarithmic() {
        let text: Vec<u8> = (0..4000u32).map(|i| (i * 7 % 13) as u8 + b'a').collect();
        let a = parse(&text);
        let req = EditRequest::delete(10, 40);
        let span = TargetSpan::for_edit(&a, &req).unwrap();
        let dep = find_dependent_phrases(&a, &span);
        let rep = find_replacement_phrases(&a, &span, &dep);
        assert!(!dep.is_empty());
        let (_, stats) = crate::edit::modify_with_stats(&a, &req).unwrap();
        let bound = dep.len().ilog2() as usize + 1;
        assert!(stats.max_lookup_comparisons <= bound, "{} > {bound}", stats.max_lookup_comparisons);
        assert_eq!(rep.rows().len(), dep.len());
    }
}
