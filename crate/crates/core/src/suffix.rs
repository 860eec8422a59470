//! Suffix array, LCP array and a range-minimum structure used by the parser.

/// Prefix-doubling suffix array with counting sorts, `O(n log n)`.
pub(crate) fn suffix_array(text: &[u8]) -> Vec<u32> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    assert!(n < u32::MAX as usize, "text too large for 32-bit suffix array");

    // rank 0 is reserved for "past the end"
    let mut rank: Vec<u32> = text.iter().map(|&c| u32::from(c) + 1).collect();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    counting_sort(&mut sa, &rank, 257);

    let mut next_rank = vec![0u32; n];
    let mut order = vec![0u32; n];
    let mut classes = reclassify(&sa, &rank, 0, &mut next_rank);
    std::mem::swap(&mut rank, &mut next_rank);

    let mut k = 1usize;
    while (classes as usize) < n {
        // sort by the second key: suffixes without a second half come first
        let mut w = 0;
        for i in n.saturating_sub(k)..n {
            order[w] = i as u32;
            w += 1;
        }
        for &p in &sa {
            if p as usize >= k {
                order[w] = p - k as u32;
                w += 1;
            }
        }
        debug_assert_eq!(w, n);
        sa.copy_from_slice(&order);
        counting_sort(&mut sa, &rank, classes as usize + 1);
        classes = reclassify(&sa, &rank, k, &mut next_rank);
        std::mem::swap(&mut rank, &mut next_rank);
        k *= 2;
    }
    sa
}

fn counting_sort(sa: &mut [u32], rank: &[u32], buckets: usize) {
    let mut count = vec![0usize; buckets + 1];
    for &p in sa.iter() {
        count[rank[p as usize] as usize + 1] += 1;
    }
    for b in 1..count.len() {
        count[b] += count[b - 1];
    }
    let mut out = vec![0u32; sa.len()];
    for &p in sa.iter() {
        let r = rank[p as usize] as usize;
        out[count[r]] = p;
        count[r] += 1;
    }
    sa.copy_from_slice(&out);
}

/// Assigns new class ids (starting at 1) to the sorted suffixes by
/// `(rank[i], rank[i + k])`. Returns the number of classes.
fn reclassify(sa: &[u32], rank: &[u32], k: usize, out: &mut [u32]) -> u32 {
    let n = sa.len();
    let key = |p: usize| {
        let second = if k > 0 && p + k < n { rank[p + k] } else { 0 };
        (rank[p], second)
    };
    let mut class = 1u32;
    out[sa[0] as usize] = class;
    for w in 1..n {
        if key(sa[w] as usize) != key(sa[w - 1] as usize) {
            class += 1;
        }
        out[sa[w] as usize] = class;
    }
    class
}

/// Kasai's algorithm. `lcp[r]` is the common prefix length of the suffixes
/// at ranks `r - 1` and `r`; `lcp[0] = 0`.
pub(crate) fn lcp_array(text: &[u8], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = isa[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

pub(crate) fn inverse(sa: &[u32]) -> Vec<u32> {
    let mut isa = vec![0u32; sa.len()];
    for (r, &p) in sa.iter().enumerate() {
        isa[p as usize] = r as u32;
    }
    isa
}

const BLOCK: usize = 32;

/// Range minimum over a fixed array: a sparse table over block minima plus a
/// linear scan inside the (at most two) partial blocks. Linear memory.
pub(crate) struct RangeMin {
    values: Vec<u32>,
    table: Vec<Vec<u32>>,
}

impl RangeMin {
    pub(crate) fn new(values: Vec<u32>) -> Self {
        let blocks: Vec<u32> = values
            .chunks(BLOCK)
            .map(|c| c.iter().copied().min().unwrap_or(u32::MAX))
            .collect();
        let mut table = vec![blocks];
        let mut span = 1;
        while span * 2 <= table[0].len() {
            let prev = table.last().unwrap();
            let next: Vec<u32> = (0..prev.len() - span)
                .map(|b| prev[b].min(prev[b + span]))
                .collect();
            table.push(next);
            span *= 2;
        }
        RangeMin { values, table }
    }

    /// Minimum of `values[lo..=hi]`.
    pub(crate) fn min(&self, lo: usize, hi: usize) -> u32 {
        debug_assert!(lo <= hi);
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh || bh == bl + 1 {
            return self.values[lo..=hi].iter().copied().min().unwrap();
        }
        let left = self.values[lo..(bl + 1) * BLOCK].iter().copied().min().unwrap();
        let right = self.values[bh * BLOCK..=hi].iter().copied().min().unwrap();
        let (a, b) = (bl + 1, bh - 1);
        let level = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
        let mid = self.table[level][a].min(self.table[level][b + 1 - (1 << level)]);
        left.min(right).min(mid)
    }
}
