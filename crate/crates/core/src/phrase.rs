use std::fmt;

/// One LZ-End factor.
///
/// A phrase copies `copy_len()` symbols of already decoded text ending exactly
/// at the last symbol of phrase `source`, then appends `last` if present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phrase {
    pub source: Option<usize>,
    pub len: usize,
    pub last: Option<u8>,
}

impl Phrase {
    /// Builds a phrase in canonical form: a one-symbol phrase with an
    /// innovation never carries a source.
    pub fn new(source: Option<usize>, len: usize, last: Option<u8>) -> Self {
        let source = if len == 1 && last.is_some() {
            None
        } else {
            source
        };
        Phrase { source, len, last }
    }

    pub fn literal(symbol: u8) -> Self {
        Phrase {
            source: None,
            len: 1,
            last: Some(symbol),
        }
    }

    /// Number of symbols taken from the source window.
    #[inline]
    pub fn copy_len(&self) -> usize {
        self.len - usize::from(self.last.is_some())
    }

    pub fn is_literal(&self) -> bool {
        self.source.is_none()
    }
}

impl fmt::Display for Phrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src = self.source.map_or_else(|| "⊥".to_string(), |q| q.to_string());
        match self.last {
            Some(b) if b.is_ascii_graphic() => write!(f, "<{src},{},'{}'>", self.len, b as char),
            Some(b) => write!(f, "<{src},{},0x{b:02x}>", self.len),
            None => write!(f, "<{src},{},⊥>", self.len),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_symbol_phrases_drop_their_source() {
        let p = Phrase::new(Some(3), 1, Some(b'x'));
        assert_eq!(p, Phrase::literal(b'x'));
        // without an innovation the source is meaningful
        let q = Phrase::new(Some(3), 1, None);
        assert_eq!(q.source, Some(3));
        assert_eq!(q.copy_len(), 1);
    }

    #[test]
    fn display_matches_tuple_notation() {
        assert_eq!(Phrase::new(Some(1), 3, Some(b'd')).to_string(), "<1,3,'d'>");
        assert_eq!(Phrase::new(Some(1), 2, None).to_string(), "<1,2,⊥>");
        assert_eq!(Phrase::literal(0).to_string(), "<⊥,1,0x00>");
    }
}
