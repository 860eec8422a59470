//! Calibrated-entropy test strings.
//!
//! A noisy logistic map at the Feigenbaum accumulation point is bipartitioned
//! at `c` to produce bits. Without noise the orbit's symbol sequence has zero
//! entropy; the noise amplitude `xi` raises the entropy rate monotonically.
//! An optional five-tap FIR filter then correlates neighbouring bits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;

/// Feigenbaum accumulation point of the logistic map's period-doubling cascade.
pub const FEIGENBAUM_R: f64 = 3.569_945_671_869_544_5;

pub const DEFAULT_BURN_IN: usize = 1000;

/// Noise amplitudes of the standard calibration grid.
pub const XI_GRID: [f64; 10] = [
    0.0001, 0.00025, 0.0005, 0.00075, 0.001, 0.0025, 0.005, 0.0075, 0.01, 0.025,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibratedSpec {
    pub n_bytes: usize,
    pub xi: f64,
    pub c: f64,
    pub fir: bool,
    pub seed: u64,
    pub burn_in: usize,
}

impl CalibratedSpec {
    /// `c = 0.5`, no FIR, standard burn-in.
    pub fn new(n_bytes: usize, xi: f64, seed: u64) -> Self {
        CalibratedSpec {
            n_bytes,
            xi,
            c: 0.5,
            fir: false,
            seed,
            burn_in: DEFAULT_BURN_IN,
        }
    }

    pub fn with_fir(mut self, fir: bool) -> Self {
        self.fir = fir;
        self
    }

    pub fn with_threshold(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.c) {
            return Err(Error::Argument(format!("threshold c = {} outside [0, 1]", self.c)));
        }
        if !(self.xi >= 0.0 && self.xi.is_finite()) {
            return Err(Error::Argument(format!("noise amplitude xi = {} must be >= 0", self.xi)));
        }
        Ok(())
    }
}

/// `8 * n_bytes` bits from the noisy logistic map, `1` iff `x >= c`.
pub fn logistic_bits(spec: &CalibratedSpec) -> Result<Vec<bool>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut x: f64 = rng.random_range(0.05..0.95);
    let step = |x: f64, rng: &mut ChaCha8Rng| {
        let u: f64 = rng.random_range(-1.0..=1.0);
        reflect(FEIGENBAUM_R * x * (1.0 - x) + spec.xi * u)
    };
    for _ in 0..spec.burn_in {
        x = step(x, &mut rng);
    }
    let n_bits = spec.n_bytes * 8;
    let mut bits = Vec::with_capacity(n_bits);
    for _ in 0..n_bits {
        x = step(x, &mut rng);
        bits.push(x >= spec.c);
    }
    Ok(bits)
}

/// Folds a value back into the open unit interval.
fn reflect(mut x: f64) -> f64 {
    if x < 0.0 {
        x = -x;
    }
    if x > 1.0 {
        x = 2.0 - x;
    }
    x.clamp(f64::EPSILON, 1.0 - f64::EPSILON)
}

/// `F_n = 0.5 S_n + 0.1 (S_{n-1} + ... + S_{n-5})` with `S_{-1..-5} = 1`,
/// output bit `F_n >= 0.4`.
pub fn fir_filter(bits: &[bool]) -> Vec<bool> {
    // Integer form: 5 S_n + sum of the previous five >= 4.
    let mut history = [true; 5];
    let mut out = Vec::with_capacity(bits.len());
    for (n, &s) in bits.iter().enumerate() {
        let prev = history.iter().filter(|&&b| b).count();
        out.push(5 * usize::from(s) + prev >= 4);
        history[n % 5] = s;
    }
    out
}

/// Packs bits most-significant first; a trailing partial byte is zero-padded.
pub fn pack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (k, &b)| acc | (u8::from(b) << (7 - k)))
        })
        .collect()
}

pub fn unpack_bits(bytes: &[u8]) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&byte| (0..8).map(move |k| byte & (0x80 >> k) != 0))
        .collect()
}

/// One calibrated string of `spec.n_bytes` bytes.
pub fn generate(spec: &CalibratedSpec) -> Result<Vec<u8>> {
    let bits = logistic_bits(spec)?;
    let bits = if spec.fir { fir_filter(&bits) } else { bits };
    Ok(pack_bits(&bits))
}

/// `count` independent strings; string `i` uses seed `spec.seed + i`.
pub fn gen_corpus(spec: &CalibratedSpec, count: usize, exec: Execution) -> Result<Vec<Vec<u8>>> {
    if count == 0 {
        return Err(Error::Argument("corpus count must be at least 1".into()));
    }
    spec.validate()?;
    let specs: Vec<CalibratedSpec> = (0..count as u64)
        .map(|i| CalibratedSpec {
            seed: spec.seed.wrapping_add(i),
            ..*spec
        })
        .collect();
    exec.map(specs, |s| generate(&s)).into_iter().collect()
}

/// File name used for string `index` of noise level `xi`.
pub fn corpus_file_name(xi: f64, index: usize) -> String {
    format!("cal_xi{xi}_{index}.bin")
}
