use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::archive::Archive;
use crate::edit::{modify, EditRequest};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::parse::parse;

use super::{derive_seed, make_payload, modification_ratio, name_key, CorpusFile, MrRecord, Operation, PayloadClass};

const TAG_INCREMENTAL: u64 = 1;
const TAG_SIZES: u64 = 2;
const TAG_PAYLOAD: u64 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    /// Sequential edits per incremental run.
    pub edits: usize,
    /// Edit size for incremental and position runs, as a fraction of the
    /// original file length.
    pub edit_fraction: f64,
    /// Size fractions for [`run_sizes`] and position fractions for
    /// [`run_positions`].
    pub fractions: Vec<f64>,
    /// Random start positions averaged per size fraction.
    pub trials: usize,
    pub execution: Execution,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            edits: 100,
            edit_fraction: 0.005,
            fractions: sweep_fractions(),
            trials: 10,
            execution: Execution::default(),
        }
    }
}

/// `0.05, 0.10, …, 0.95`.
pub fn sweep_fractions() -> Vec<f64> {
    (1..=19).map(|k| k as f64 / 20.0).collect()
}

/// Per file, operation and payload class: `cfg.edits` sequential edits of
/// `cfg.edit_fraction` of the original length at seeded random positions,
/// with the MR recorded after each (parameter = 1-based edit index).
///
/// Deletions carry no payload, so one deletion run per file is recorded under
/// every payload class. Payload classes that do not exist at the edit size
/// (see [`PayloadClass::supports`]) are skipped.
pub fn run_incremental(corpus: &[CorpusFile], seed: u64, cfg: &EvalConfig) -> Result<Vec<MrRecord>> {
    check_corpus(corpus)?;
    let mut tasks = Vec::new();
    for file in corpus {
        for op in Operation::ALL {
            if op == Operation::Delete {
                tasks.push((file, op, PayloadClass::Low));
            } else {
                let size = edit_len(file.data.len(), cfg.edit_fraction);
                tasks.extend(
                    PayloadClass::ALL
                        .iter()
                        .filter(|c| c.supports(size))
                        .map(|&c| (file, op, c)),
                );
            }
        }
    }
    let runs = cfg
        .execution
        .map(tasks, |(file, op, class)| incremental_run(file, op, class, seed, cfg));
    let mut records = Vec::new();
    for run in runs {
        records.extend(run?);
    }
    canonical_sort(&mut records);
    Ok(records)
}

fn incremental_run(
    file: &CorpusFile,
    op: Operation,
    class: PayloadClass,
    seed: u64,
    cfg: &EvalConfig,
) -> Result<Vec<MrRecord>> {
    let size = edit_len(file.data.len(), cfg.edit_fraction);
    // the position stream is shared by every operation and payload class
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(&[seed, TAG_INCREMENTAL, name_key(&file.name)]));
    let mut plain = file.data.clone();
    let mut archive = parse(&plain);
    let mut mrs = Vec::with_capacity(cfg.edits);
    for k in 0..cfg.edits {
        let u: f64 = rng.random();
        let payload = match op {
            Operation::Delete => Vec::new(),
            _ => make_payload(class, size, derive_seed(&[seed, TAG_PAYLOAD, size as u64, k as u64]))?,
        };
        let req = request(op, plain.len(), size, Placement::Uniform(u), payload);
        archive = modify(&archive, &req)?;
        plain = req.apply_to(&plain)?;
        mrs.push(((k + 1) as f64, modification_ratio(&archive, &plain)?));
    }
    Ok(records(&file.name, op, class, size, &mrs))
}

/// One edit per measurement with size swept over `cfg.fractions` of the file
/// length, MR averaged over `cfg.trials` seeded start positions. Replacement
/// payloads are as long as the deleted range.
pub fn run_sizes(corpus: &[CorpusFile], seed: u64, cfg: &EvalConfig) -> Result<Vec<MrRecord>> {
    check_corpus(corpus)?;
    if cfg.trials == 0 {
        return Err(Error::Argument("size sweep needs at least one trial".into()));
    }
    let sizes = corpus
        .iter()
        .flat_map(|f| cfg.fractions.iter().map(|&p| edit_len(f.data.len(), p)))
        .collect();
    let payloads = payload_table(sizes, seed, cfg.execution)?;
    let archives = cfg.execution.map(corpus.iter().collect(), |f| parse(&f.data));

    let mut tasks = Vec::new();
    for fi in 0..corpus.len() {
        for pi in 0..cfg.fractions.len() {
            tasks.extend((0..cfg.trials).map(|t| (fi, pi, t)));
        }
    }
    let measured = cfg.execution.map(tasks, |(fi, pi, trial)| {
        let file = &corpus[fi];
        let size = edit_len(file.data.len(), cfg.fractions[pi]);
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(&[
            seed,
            TAG_SIZES,
            name_key(&file.name),
            pi as u64,
            trial as u64,
        ]));
        let placement = Placement::Uniform(rng.random());
        measure_all(&archives[fi], &file.data, size, placement, &payloads).map(|m| (fi, pi, m))
    });

    let mut sums: BTreeMap<(usize, Operation, PayloadClass, usize), f64> = BTreeMap::new();
    for m in measured {
        let (fi, pi, values) = m?;
        for (op, class, mr) in values {
            *sums.entry((fi, op, class, pi)).or_default() += mr;
        }
    }
    let mut records: Vec<MrRecord> = sums
        .into_iter()
        .map(|((fi, op, class, pi), sum)| MrRecord {
            file: corpus[fi].name.clone(),
            operation: op,
            payload: class,
            parameter: cfg.fractions[pi],
            mr: sum / cfg.trials as f64,
        })
        .collect();
    canonical_sort(&mut records);
    Ok(records)
}

/// One edit of `cfg.edit_fraction` of the file length starting at
/// `floor(p * len)` for each position fraction `p` in `cfg.fractions`.
pub fn run_positions(corpus: &[CorpusFile], seed: u64, cfg: &EvalConfig) -> Result<Vec<MrRecord>> {
    check_corpus(corpus)?;
    let sizes = corpus.iter().map(|f| edit_len(f.data.len(), cfg.edit_fraction)).collect();
    let payloads = payload_table(sizes, seed, cfg.execution)?;
    let archives = cfg.execution.map(corpus.iter().collect(), |f| parse(&f.data));

    let tasks: Vec<(usize, usize)> = (0..corpus.len())
        .flat_map(|fi| (0..cfg.fractions.len()).map(move |pi| (fi, pi)))
        .collect();
    let measured = cfg.execution.map(tasks, |(fi, pi)| {
        let file = &corpus[fi];
        let size = edit_len(file.data.len(), cfg.edit_fraction);
        let placement = Placement::Fraction(cfg.fractions[pi]);
        measure_all(&archives[fi], &file.data, size, placement, &payloads).map(|m| (fi, pi, m))
    });

    let mut records = Vec::new();
    for m in measured {
        let (fi, pi, values) = m?;
        records.extend(values.into_iter().map(|(op, class, mr)| MrRecord {
            file: corpus[fi].name.clone(),
            operation: op,
            payload: class,
            parameter: cfg.fractions[pi],
            mr,
        }));
    }
    canonical_sort(&mut records);
    Ok(records)
}

fn check_corpus(corpus: &[CorpusFile]) -> Result<()> {
    match corpus.iter().find(|f| f.data.is_empty()) {
        Some(f) => Err(Error::Argument(format!("corpus file {} is empty", f.name))),
        None => Ok(()),
    }
}

/// `round(fraction * n)`, at least one symbol.
fn edit_len(n: usize, fraction: f64) -> usize {
    ((n as f64 * fraction).round() as usize).clamp(1, n.max(1))
}

#[derive(Debug, Clone, Copy)]
enum Placement {
    /// Uniform over the valid start positions, driven by `u ∈ [0, 1)`.
    Uniform(f64),
    /// `floor(p * len)`, pulled back so the edit fits.
    Fraction(f64),
}

fn request(op: Operation, len: usize, size: usize, placement: Placement, payload: Vec<u8>) -> EditRequest {
    let removed = if op == Operation::Insert { 0 } else { size.min(len) };
    let last_start = len - removed;
    let start = match placement {
        Placement::Uniform(u) => (u * (last_start + 1) as f64) as usize,
        Placement::Fraction(p) => (p * len as f64) as usize,
    }
    .min(last_start);
    EditRequest::new(start, start + removed, payload)
}

type PayloadTable = HashMap<(usize, PayloadClass), Vec<u8>>;

/// Payloads shared by every file, trial and operation using the same size.
fn payload_table(sizes: BTreeSet<usize>, seed: u64, exec: Execution) -> Result<PayloadTable> {
    let keys: Vec<(usize, PayloadClass)> = sizes
        .into_iter()
        .flat_map(|s| PayloadClass::ALL.map(|c| (s, c)))
        .filter(|(s, c)| c.supports(*s))
        .collect();
    let built = exec.map(keys, |(size, class)| {
        make_payload(class, size, derive_seed(&[seed, TAG_PAYLOAD, size as u64])).map(|p| ((size, class), p))
    });
    built.into_iter().collect()
}

/// MR of every operation and payload class for one placement. Deletion is
/// measured once and reported under each class.
fn measure_all(
    archive: &Archive,
    text: &[u8],
    size: usize,
    placement: Placement,
    payloads: &PayloadTable,
) -> Result<Vec<(Operation, PayloadClass, f64)>> {
    let mut out = Vec::with_capacity(9);
    for op in Operation::ALL {
        if op == Operation::Delete {
            let mr = measure(archive, text, &request(op, text.len(), size, placement, Vec::new()))?;
            out.extend(PayloadClass::ALL.iter().filter(|c| c.supports(size)).map(|&c| (op, c, mr)));
            continue;
        }
        for class in PayloadClass::ALL {
            let Some(payload) = payloads.get(&(size, class)).cloned() else {
                continue;
            };
            let mr = measure(archive, text, &request(op, text.len(), size, placement, payload))?;
            out.push((op, class, mr));
        }
    }
    Ok(out)
}

fn measure(archive: &Archive, text: &[u8], req: &EditRequest) -> Result<f64> {
    let after = modify(archive, req)?;
    modification_ratio(&after, &req.apply_to(text)?)
}

fn records(file: &str, op: Operation, class: PayloadClass, size: usize, mrs: &[(f64, f64)]) -> Vec<MrRecord> {
    let classes: &[PayloadClass] = if op == Operation::Delete {
        &PayloadClass::ALL
    } else {
        std::slice::from_ref(&class)
    };
    classes
        .iter()
        .filter(|c| c.supports(size))
        .flat_map(|&c| {
            mrs.iter().map(move |&(parameter, mr)| MrRecord {
                file: file.to_string(),
                operation: op,
                payload: c,
                parameter,
                mr,
            })
        })
        .collect()
}

fn canonical_sort(records: &mut [MrRecord]) {
    records.sort_by(|a, b| {
        a.file
            .cmp(&b.file)
            .then(a.operation.cmp(&b.operation))
            .then(a.payload.cmp(&b.payload))
            .then(a.parameter.total_cmp(&b.parameter))
    });
}
