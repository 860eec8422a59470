//! Unsigned LEB128.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarintError {
    Truncated,
    Overflow,
    /// A continuation byte followed by a zero final byte.
    Overlong,
}

pub fn encode(mut value: u64, out: &mut Vec<u8>) {
    while value >= 0x80 {
        out.push((value as u8 & 0x7f) | 0x80);
        value >>= 7;
    }
    out.push(value as u8);
}

pub fn encoded_len(value: u64) -> usize {
    let bits = 64 - value.leading_zeros() as usize;
    bits.div_ceil(7).max(1)
}

/// Decodes one varint from the front of `data`, returning the value and the
/// number of bytes consumed. Only minimal encodings are accepted.
pub fn decode(data: &[u8]) -> Result<(u64, usize), VarintError> {
    let mut value = 0u64;
    for (k, &byte) in data.iter().enumerate() {
        let shift = 7 * k as u32;
        let chunk = u64::from(byte & 0x7f);
        if shift >= 64 || (shift > 0 && chunk >> (64 - shift) != 0) {
            return Err(VarintError::Overflow);
        }
        value |= chunk << shift;
        if byte & 0x80 == 0 {
            if k > 0 && byte == 0 {
                return Err(VarintError::Overlong);
            }
            return Ok((value, k + 1));
        }
    }
    Err(VarintError::Truncated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        let mut out = Vec::new();
        encode(0, &mut out);
        encode(127, &mut out);
        encode(128, &mut out);
        encode(300, &mut out);
        assert_eq!(out, vec![0x00, 0x7f, 0x80, 0x01, 0xac, 0x02]);
    }

    #[test]
    fn errors() {
        assert_eq!(decode(&[0x80]), Err(VarintError::Truncated));
        assert_eq!(decode(&[]), Err(VarintError::Truncated));
        assert_eq!(decode(&[0x81, 0x00]), Err(VarintError::Overlong));
        assert_eq!(decode(&[0xff; 11]), Err(VarintError::Overflow));
        let mut max = Vec::new();
        encode(u64::MAX, &mut max);
        assert_eq!(decode(&max), Ok((u64::MAX, 10)));
        // eleventh group or excess high bits in the tenth byte
        let mut bad = max.clone();
        bad[9] = 0x02;
        assert_eq!(decode(&bad), Err(VarintError::Overflow));
    }

    proptest! {
        #[test]
        fn roundtrip(v in any::<u64>()) {
            let mut out = Vec::new();
            encode(v, &mut out);
            prop_assert_eq!(out.len(), encoded_len(v));
            prop_assert_eq!(decode(&out), Ok((v, out.len())));
        }
    }
}
