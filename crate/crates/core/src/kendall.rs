//! Pairwise concordance kernel behind the Kendall matrices.
//!
//! For two rows `a`, `b` of length `n` the kernel returns
//! `S = sum_{s<t} sign(a_s - a_t) sign(b_s - b_t)`, the number of concordant
//! minus discordant pairs, as an exact integer. Two routes:
//!
//! * a contingency-table route, `O(n + k_a k_b)` for rows with `k_a`, `k_b`
//!   distinct values, used for small alphabets such as Bernoulli data;
//! * Knight's merge-sort route, `O(n log n)`, with tie corrections.

use rayon::prelude::*;

/// Dense value codes of one row, plus its sort order and tie counts.
#[derive(Debug, Clone)]
pub struct RowCodes {
    /// `codes[t]` in `0..levels`, order-preserving.
    codes: Vec<u32>,
    levels: u32,
    /// Positions sorted by code.
    order: Vec<u32>,
    /// Number of pairs tied in this row.
    tied_pairs: u64,
}

impl RowCodes {
    pub fn new(row: &[f64]) -> Self {
        let n = row.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by(|&a, &b| row[a as usize].total_cmp(&row[b as usize]));
        let mut codes = vec![0u32; n];
        let mut level = 0u32;
        let mut tied_pairs = 0u64;
        let mut run = 0u64;
        for k in 0..n {
            if k > 0 && row[order[k] as usize] != row[order[k - 1] as usize] {
                level += 1;
                tied_pairs += run * (run - 1) / 2;
                run = 0;
            }
            run += 1;
            codes[order[k] as usize] = level;
        }
        tied_pairs += run * run.saturating_sub(1) / 2;
        let levels = if n == 0 { 0 } else { level + 1 };
        Self {
            codes,
            levels,
            order,
            tied_pairs,
        }
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }
}

/// Reusable buffers for one worker.
#[derive(Debug, Default)]
pub struct Scratch {
    seq: Vec<u32>,
    buf: Vec<u32>,
    idx: Vec<u32>,
    table: Vec<u64>,
    colcum: Vec<u64>,
}

/// Concordant minus discordant pairs, choosing the cheaper route.
pub fn concordance(a: &RowCodes, b: &RowCodes, scratch: &mut Scratch) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    let cells = a.levels as u64 * b.levels as u64;
    if cells <= 4 * a.len() as u64 {
        concordance_table(a, b, scratch)
    } else {
        concordance_merge(a, b, scratch)
    }
}

/// Contingency-table route.
pub fn concordance_table(a: &RowCodes, b: &RowCodes, scratch: &mut Scratch) -> i64 {
    let (ka, kb) = (a.levels as usize, b.levels as usize);
    if ka == 0 || kb == 0 {
        return 0;
    }
    let table = &mut scratch.table;
    table.clear();
    table.resize(ka * kb, 0);
    for (&u, &v) in a.codes.iter().zip(&b.codes) {
        table[u as usize * kb + v as usize] += 1;
    }
    // colcum[v] = number of observations with a-code below the current u and b-code v
    let colcum = &mut scratch.colcum;
    colcum.clear();
    colcum.resize(kb, 0);
    let mut total = 0i128;
    let mut seen = 0u64;
    for u in 0..ka {
        let row = &table[u * kb..(u + 1) * kb];
        let mut below = 0u64;
        for v in 0..kb {
            let c = row[v];
            if c > 0 {
                let above = seen - below - colcum[v];
                total += c as i128 * (below as i128 - above as i128);
            }
            below += colcum[v];
        }
        for v in 0..kb {
            colcum[v] += row[v];
            seen += row[v];
        }
    }
    total as i64
}

/// Knight's merge-sort route.
pub fn concordance_merge(a: &RowCodes, b: &RowCodes, scratch: &mut Scratch) -> i64 {
    let n = a.len();
    if n < 2 {
        return 0;
    }
    // order by (a, b): walk a's sort order and sort each a-tie block by b
    let idx = &mut scratch.idx;
    idx.clear();
    idx.extend_from_slice(&a.order);
    let mut start = 0;
    while start < n {
        let code = a.codes[idx[start] as usize];
        let mut end = start + 1;
        while end < n && a.codes[idx[end] as usize] == code {
            end += 1;
        }
        if end - start > 1 {
            idx[start..end].sort_unstable_by_key(|&t| b.codes[t as usize]);
        }
        start = end;
    }

    let seq = &mut scratch.seq;
    seq.clear();
    seq.extend(idx.iter().map(|&t| b.codes[t as usize]));

    let mut joint_ties = 0u64;
    let mut run = 1u64;
    for k in 1..n {
        let same = a.codes[idx[k] as usize] == a.codes[idx[k - 1] as usize] && seq[k] == seq[k - 1];
        if same {
            run += 1;
        } else {
            joint_ties += run * (run - 1) / 2;
            run = 1;
        }
    }
    joint_ties += run * (run - 1) / 2;

    let discordant = count_inversions(seq, &mut scratch.buf);
    let total = (n as u64 * (n as u64 - 1) / 2) as i64;
    total - a.tied_pairs as i64 - b.tied_pairs as i64 + joint_ties as i64 - 2 * discordant as i64
}

/// Sorts `seq` in place and returns the number of pairs `s < t` with
/// `seq[s] > seq[t]`.
fn count_inversions(seq: &mut [u32], buf: &mut Vec<u32>) -> u64 {
    let n = seq.len();
    buf.clear();
    buf.resize(n, 0);
    let mut swaps = 0u64;
    let mut width = 1;
    let (mut src, mut dst): (&mut [u32], &mut [u32]) = (seq, buf.as_mut_slice());
    let mut in_seq = true;
    while width < n {
        let mut lo = 0;
        while lo < n {
            let mid = (lo + width).min(n);
            let hi = (lo + 2 * width).min(n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if src[i] <= src[j] {
                    dst[k] = src[i];
                    i += 1;
                } else {
                    dst[k] = src[j];
                    swaps += (mid - i) as u64;
                    j += 1;
                }
                k += 1;
            }
            dst[k..k + (mid - i)].copy_from_slice(&src[i..mid]);
            k += mid - i;
            dst[k..k + (hi - j)].copy_from_slice(&src[j..hi]);
            lo = hi;
        }
        std::mem::swap(&mut src, &mut dst);
        in_seq = !in_seq;
        width *= 2;
    }
    if !in_seq {
        dst.copy_from_slice(src);
    }
    swaps
}

/// Full `p x p` matrix of pairwise concordance counts, row-major.
pub fn concordance_matrix(rows: &[RowCodes]) -> Vec<i64> {
    let p = rows.len();
    let mut out = vec![0i64; p * p];
    out.par_chunks_mut(p)
        .enumerate()
        .for_each_init(Scratch::default, |scratch, (i, line)| {
            for j in i..p {
                line[j] = concordance(&rows[i], &rows[j], scratch);
            }
        });
    for i in 0..p {
        for j in 0..i {
            out[i * p + j] = out[j * p + i];
        }
    }
    out
}
