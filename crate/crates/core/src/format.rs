//! Container format.
//!
//! ```text
//! "LZE1" | version 0x01 | flags | varint n | varint n' | records...
//! record = varint (source + 1, 0 = none) | varint len | innovation byte
//! ```
//!
//! Flags bit 0 is set iff the final phrase carries an innovation; when clear
//! the final record has no innovation byte. Phrase ends are not stored.

use crate::archive::{validate_phrases, Archive};
use crate::error::{Error, Result};
use crate::phrase::Phrase;
use crate::varint::{self, VarintError};

pub const MAGIC: [u8; 4] = *b"LZE1";
pub const VERSION: u8 = 0x01;
pub const FLAG_FINAL_INNOVATION: u8 = 0x01;

const HEADER_LEN: usize = MAGIC.len() + 2;

pub fn serialize(archive: &Archive) -> Vec<u8> {
    let phrases = archive.phrases();
    let mut out = Vec::with_capacity(HEADER_LEN + 4 + phrases.len() * 4);
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.push(flags(archive));
    varint::encode(archive.len() as u64, &mut out);
    varint::encode(phrases.len() as u64, &mut out);
    for p in phrases {
        varint::encode(p.source.map_or(0, |q| q as u64 + 1), &mut out);
        varint::encode(p.len as u64, &mut out);
        if let Some(s) = p.last {
            out.push(s);
        }
    }
    out
}

fn flags(archive: &Archive) -> u8 {
    match archive.phrases().last() {
        Some(p) if p.last.is_some() => FLAG_FINAL_INNOVATION,
        _ => 0,
    }
}

/// Byte length of [`serialize`], computed without building the buffer.
pub fn compressed_size(archive: &Archive) -> usize {
    let header = HEADER_LEN
        + varint::encoded_len(archive.len() as u64)
        + varint::encoded_len(archive.phrase_count() as u64);
    archive
        .phrases()
        .iter()
        .map(|p| {
            varint::encoded_len(p.source.map_or(0, |q| q as u64 + 1))
                + varint::encoded_len(p.len as u64)
                + usize::from(p.last.is_some())
        })
        .sum::<usize>()
        + header
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn varint(&mut self, what: &str) -> Result<u64> {
        match varint::decode(&self.data[self.pos..]) {
            Ok((v, used)) => {
                self.pos += used;
                Ok(v)
            }
            Err(e) => {
                let why = match e {
                    VarintError::Truncated => "truncated",
                    VarintError::Overflow => "overflowing",
                    VarintError::Overlong => "overlong",
                };
                Err(Error::corrupt_at(self.pos, format!("{why} varint for {what}")))
            }
        }
    }

    fn byte(&mut self, what: &str) -> Result<u8> {
        let b = *self
            .data
            .get(self.pos)
            .ok_or_else(|| Error::corrupt_at(self.pos, format!("truncated {what}")))?;
        self.pos += 1;
        Ok(b)
    }
}

pub fn deserialize(data: &[u8]) -> Result<Archive> {
    if data.len() < MAGIC.len() || data[..MAGIC.len()] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let mut r = Reader {
        data,
        pos: MAGIC.len(),
    };
    let version = r.byte("version").map_err(|_| Error::Format("missing version".into()))?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version:#04x}")));
    }
    let flags_at = r.pos;
    let flags = r.byte("flags")?;
    if flags & !FLAG_FINAL_INNOVATION != 0 {
        return Err(Error::corrupt_at(flags_at, format!("unknown flag bits {flags:#04x}")));
    }
    let n = r.varint("symbol count")?;
    let count_at = r.pos;
    let count = r.varint("phrase count")?;
    // every record takes at least two bytes
    if count > (data.len() - r.pos) as u64 / 2 + 1 {
        return Err(Error::corrupt_at(count_at, format!("phrase count {count} exceeds input")));
    }
    if count == 0 && flags != 0 {
        return Err(Error::corrupt_at(flags_at, "innovation flag on an empty archive"));
    }
    let count = count as usize;

    let mut phrases = Vec::with_capacity(count);
    let mut offsets = Vec::with_capacity(count);
    let mut total: u64 = 0;
    for k in 0..count {
        offsets.push(r.pos);
        let src = r.varint("source")?;
        let len_at = r.pos;
        let len = r.varint("length")?;
        let is_final = k + 1 == count;
        let last = if !is_final || flags & FLAG_FINAL_INNOVATION != 0 {
            Some(r.byte("innovation")?)
        } else {
            None
        };
        let source = match src {
            0 => None,
            s => Some(usize::try_from(s - 1).map_err(|_| Error::corrupt_at(offsets[k], "source too large"))?),
        };
        let len = usize::try_from(len).map_err(|_| Error::corrupt_at(len_at, "length too large"))?;
        total = total
            .checked_add(len as u64)
            .ok_or_else(|| Error::corrupt_at(len_at, "symbol count overflow"))?;
        phrases.push(Phrase { source, len, last });
    }
    if r.pos != data.len() {
        return Err(Error::Format(format!("{} trailing bytes after archive", data.len() - r.pos)));
    }
    if total != n {
        return Err(Error::corrupt_at(
            HEADER_LEN,
            format!("header declares {n} symbols but phrases cover {total}"),
        ));
    }
    validate_phrases(&phrases).map_err(|(k, msg)| Error::corrupt_at(offsets[k], msg))?;
    Ok(Archive::from_valid(phrases))
}
