use crate::archive::Archive;

use super::TargetSpan;

/// Ascending ordinals of phrases whose source touches the target.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DependentSet {
    ordinals: Vec<usize>,
    visited: usize,
}

impl DependentSet {
    #[cfg(test)]
    pub(crate) fn from_parts(ordinals: Vec<usize>, visited: usize) -> Self {
        Self { ordinals, visited }
    }

    pub fn ordinals(&self) -> &[usize] {
        &self.ordinals
    }

    pub fn len(&self) -> usize {
        self.ordinals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinals.is_empty()
    }

    /// Number of phrases the scan looked at.
    pub fn visited(&self) -> usize {
        self.visited
    }
}

/// Single left-to-right scan over `[span.scan_from, n')`.
///
/// A phrase after the target is a dependent when its source is a target
/// phrase or its source window intersects the target's symbol extent.
pub fn find_dependent_phrases(archive: &Archive, span: &TargetSpan) -> DependentSet {
    let phrases = archive.phrases();
    let ends = archive.boundaries().ends();
    let (lo, hi) = (span.extent.start, span.extent.end);
    let mut ordinals = Vec::new();
    let mut visited = 0;
    for (k, p) in phrases.iter().enumerate().skip(span.scan_from) {
        visited += 1;
        if k < span.end {
            continue;
        }
        let Some(q) = p.source else { continue };
        if span.contains_ordinal(q) {
            ordinals.push(k);
            continue;
        }
        // window [b + 1 - c, b]; sources before the target end before it
        let b = ends[q];
        if q >= span.end && b + 1 - p.copy_len() < hi && b >= lo {
            ordinals.push(k);
        }
    }
    DependentSet { ordinals, visited }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::EditRequest;
    use crate::parse::parse;
    use proptest::prelude::*;

    #[test]
    fn worked_examples() {
        let a = parse(b"abcabd");
        let span = TargetSpan::from_ordinals(&a, 1, 2).unwrap();
        assert_eq!(find_dependent_phrases(&a, &span).ordinals(), &[3]);

        let span = TargetSpan::from_ordinals(&a, 2, 3).unwrap();
        assert!(find_dependent_phrases(&a, &span).is_empty());

        let span = TargetSpan::from_ordinals(&a, 3, 4).unwrap();
        let dep = find_dependent_phrases(&a, &span);
        assert!(dep.is_empty());
        assert_eq!(dep.visited(), 0);
    }

    /// Dependency by direct comparison of every later phrase's window with
    /// the target extent.
    fn brute_force(a: &Archive, span: &TargetSpan) -> Vec<usize> {
        (span.end..a.phrase_count())
            .filter(|&k| {
                let src_in_target = a.phrases()[k].source.is_some_and(|q| span.contains_ordinal(q));
                let window_hits = a
                    .source_window(k)
                    .is_some_and(|(s, e)| (s..=e).any(|t| span.extent.contains(&t)));
                src_in_target || window_hits
            })
            .collect()
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            text in proptest::collection::vec(0u8..3, 1..300),
            x in any::<usize>(),
            y in any::<usize>(),
        ) {
            let a = parse(&text);
            let n = text.len();
            let (i, j) = ((x % n).min(y % n), (x % n).max(y % n) + 1);
            let span = TargetSpan::for_edit(&a, &EditRequest::delete(i, j)).unwrap();
            let dep = find_dependent_phrases(&a, &span);
            let expected = brute_force(&a, &span);
            prop_assert_eq!(dep.ordinals(), expected.as_slice());
            prop_assert_eq!(dep.visited(), a.phrase_count() - a.rank(j).unwrap());
        }
    }
}
