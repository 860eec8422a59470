//! Corpus sources: a directory of files, built-in synthetic files, or the
//! calibrated-entropy grid.

use std::fs;
use std::path::Path;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calibrated::{corpus_file_name, gen_corpus, CalibratedSpec};
use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFile {
    pub name: String,
    pub data: Vec<u8>,
}

impl CorpusFile {
    pub fn new(name: impl Into<String>, data: Vec<u8>) -> Self {
        CorpusFile {
            name: name.into(),
            data,
        }
    }
}

/// Every regular file directly inside `dir`, sorted by name.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusFile>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let data = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        files.push(CorpusFile::new(entry.file_name().to_string_lossy(), data));
    }
    files.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(files)
}

/// Four synthetic files of `n` bytes spanning the entropy range: a constant
/// byte, a repeated alphabet, english-like prose and uniform random bytes.
pub fn synthetic(n: usize, seed: u64) -> Vec<CorpusFile> {
    let alphabet = b"abcdefghijklmnopqrstuvwxyz".iter().copied().cycle().take(n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = vec![0u8; n];
    rng.fill(random.as_mut_slice());
    vec![
        CorpusFile::new("constant", vec![b'a'; n]),
        CorpusFile::new("alphabet", alphabet),
        CorpusFile::new("english", english_like(n, seed)),
        CorpusFile::new("random", random),
    ]
}

const WORDS: &[&str] = &[
    "the", "of", "and", "to", "a", "in", "that", "it", "was", "she", "he", "you", "said", "for",
    "on", "with", "as", "at", "her", "had", "his", "be", "but", "not", "all", "they", "so",
    "this", "little", "what", "out", "one", "up", "down", "there", "very", "would", "could",
    "about", "then", "like", "know", "went", "thought", "way", "time", "again", "when", "into",
    "herself", "queen", "king", "head", "off", "looked", "began", "quite", "turtle", "hatter",
    "rabbit", "mock", "gryphon", "voice", "only", "round", "door", "garden", "tea", "table",
    "large", "first", "never", "tone", "moment", "right", "over", "well", "nothing", "curious",
    "dormouse", "rather", "anything", "course", "great", "long", "other", "just", "than", "some",
    "here", "who", "must", "came", "minute", "replied", "another", "eyes", "hand", "house",
    "suddenly", "question", "remember", "wonder", "morning", "beautiful", "soup", "jury", "court",
    "caterpillar", "mushroom", "duchess", "baby", "pepper", "cat", "grin", "tree", "key", "bottle",
];

/// Seeded word salad with a Zipf-like word distribution, sentences and
/// paragraphs, truncated to exactly `n` bytes.
pub fn english_like(n: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (1..=WORDS.len()).map(|r| 1.0 / r as f64).collect();
    let pick = WeightedIndex::new(&weights).expect("positive weights");
    let mut out = Vec::with_capacity(n + 64);
    while out.len() < n {
        let words = rng.random_range(4..=18);
        for w in 0..words {
            let word = WORDS[pick.sample(&mut rng)].as_bytes();
            if w == 0 {
                out.push(word[0].to_ascii_uppercase());
                out.extend_from_slice(&word[1..]);
            } else {
                out.push(b' ');
                out.extend_from_slice(word);
                if w + 1 < words && rng.random_bool(0.08) {
                    out.push(b',');
                }
            }
        }
        out.push(if rng.random_bool(0.8) { b'.' } else { b'!' });
        out.extend_from_slice(if rng.random_bool(0.15) { b"\n\n" } else { b" " });
    }
    out.truncate(n);
    out
}

/// `count` strings of `n_bytes` for each noise amplitude in `xis`, named like
/// the files written by the generator.
pub fn calibrated(
    xis: &[f64],
    n_bytes: usize,
    count: usize,
    seed: u64,
    fir: bool,
    exec: Execution,
) -> Result<Vec<CorpusFile>> {
    let mut files = Vec::with_capacity(xis.len() * count);
    for &xi in xis {
        let spec = CalibratedSpec::new(n_bytes, xi, seed).with_fir(fir);
        for (i, data) in gen_corpus(&spec, count, exec)?.into_iter().enumerate() {
            files.push(CorpusFile::new(corpus_file_name(xi, i), data));
        }
    }
    Ok(files)
}
