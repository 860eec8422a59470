use crate::archive::Archive;
use crate::error::Result;
use crate::parse::{parse_phrases, Terminal};
use crate::phrase::Phrase;

use super::{EditRequest, TargetSpan};

/// Parses `prefix ∥ payload ∥ suffix` as a standalone string, where prefix
/// and suffix are the unedited symbols of the first and last target phrases.
///
/// The returned phrases reference only each other (ordinal 0 is the first
/// fragment phrase). Unless the fragment ends the archive, its final phrase
/// carries an innovation.
pub fn encode_str(archive: &Archive, span: &TargetSpan, req: &EditRequest) -> Result<Vec<Phrase>> {
    req.validate(archive.len())?;
    let first = span.extent.start;
    let prefix = archive.extract(first, req.start - first)?;
    let suffix = archive.extract(req.end, span.extent.end - req.end)?;
    let mut s = Vec::with_capacity(prefix.len() + req.payload.len() + suffix.len());
    s.extend_from_slice(&prefix);
    s.extend_from_slice(&req.payload);
    s.extend_from_slice(&suffix);
    let terminal = if span.end == archive.phrase_count() {
        Terminal::Open
    } else {
        Terminal::Innovation
    };
    Ok(parse_phrases(&s, terminal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn encode(text: &[u8], req: EditRequest) -> Vec<Phrase> {
        let a = parse(text);
        let span = TargetSpan::for_edit(&a, &req).unwrap();
        encode_str(&a, &span, &req).unwrap()
    }

    #[test]
    fn fringe_arithmetic() {
        assert_eq!(encode(b"abcabd", EditRequest::replace(2, 3, "x")), vec![Phrase::literal(b'x')]);
        assert_eq!(
            encode(b"abcabd", EditRequest::delete(4, 5)),
            vec![Phrase::literal(b'a'), Phrase::literal(b'd')]
        );
    }

    #[test]
    fn pure_append_parses_payload_alone() {
        assert_eq!(encode(b"abcabd", EditRequest::insert(6, "q")), parse(b"q").phrases());
        assert_eq!(encode(b"", EditRequest::insert(0, "qq")), parse(b"qq").phrases());
    }

    #[test]
    fn interior_fragment_ends_with_innovation() {
        // target: phrase 1 ('b'); fragment "abab" is followed by more phrases
        let frag = encode(b"abcabd", EditRequest::replace(1, 2, "abab"));
        assert!(frag.iter().all(|p| p.last.is_some()));
        assert_eq!(Archive::new(frag).unwrap().decompress(), b"abab");
    }
}
