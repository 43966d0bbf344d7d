//! Truncated Minkowski-sum kernels.
//!
//! `sumset` computes (X + Y) ∩ [0, N] exactly: elements above N cannot
//! contribute to a sum ≤ N when everything is nonnegative, so truncation
//! loses nothing. The kernel iterates the set bits of the sparser operand
//! and ORs a word-level left shift of the denser operand into an
//! accumulator. Polygonal bases have ~√N elements below N, so an h-fold
//! sumset costs on the order of √N · N/64 word operations.
//!
//! Large accumulators are split into disjoint chunks processed in parallel.
//! Every output word is owned by exactly one chunk and OR is commutative,
//! so the result is bit-identical to the sequential computation whatever
//! the thread count.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bitmap::IntervalBitmap;
use crate::error::{Error, Result};

const PAR_CHUNK_WORDS: usize = 2048;
const PAR_MIN_WORDS: usize = 2 * PAR_CHUNK_WORDS;
const PAR_MIN_WORK: u64 = 1 << 22;

/// Truncated sumset of two bitmaps with equal bounds: bit s is set iff
/// s = a + b ≤ N for some members a of x and b of y.
pub fn sumset(x: &IntervalBitmap, y: &IntervalBitmap) -> Result<IntervalBitmap> {
    if x.bound() != y.bound() {
        return Err(Error::BoundMismatch { left: x.bound(), right: y.bound() });
    }
    let (sparse, dense) = if x.popcount() <= y.popcount() { (x, y) } else { (y, x) };
    let shifts: Vec<u64> = sparse.members().collect();
    let mut out = IntervalBitmap::empty(x.bound())?;
    let src = dense.words();
    let dst = out.words_mut();
    let work = shifts.len() as u64 * dst.len() as u64;
    if dst.len() < PAR_MIN_WORDS || work < PAR_MIN_WORK {
        for &s in &shifts {
            or_shifted(dst, 0, src, s);
        }
    } else {
        dst.par_chunks_mut(PAR_CHUNK_WORDS).enumerate().for_each(|(i, chunk)| {
            let base = i * PAR_CHUNK_WORDS;
            for &s in &shifts {
                or_shifted(chunk, base, src, s);
            }
        });
    }
    out.mask_tail();
    Ok(out)
}

// dst is the window of the accumulator starting at word index dst_base;
// ORs (src << shift) into it. src and the whole accumulator have the same
// word count, so source indices never run past the end; the zips below let
// the compiler drop per-word bounds checks.
fn or_shifted(dst: &mut [u64], dst_base: usize, src: &[u64], shift: u64) {
    let word_shift = (shift / 64) as usize;
    let bit_shift = shift % 64;
    let mut j = word_shift.saturating_sub(dst_base);
    if j >= dst.len() {
        return;
    }
    if bit_shift == 0 {
        let first_src = dst_base + j - word_shift;
        for (d, &s) in dst[j..].iter_mut().zip(&src[first_src..]) {
            *d |= s;
        }
        return;
    }
    // The first destination word may lack a lower source neighbor.
    let si = dst_base + j - word_shift;
    let mut v = src[si] << bit_shift;
    if si > 0 {
        v |= src[si - 1] >> (64 - bit_shift);
    }
    dst[j] |= v;
    j += 1;
    if j < dst.len() {
        let lower = dst_base + j - word_shift - 1;
        for (d, w) in dst[j..].iter_mut().zip(src[lower..].windows(2)) {
            *d |= (w[1] << bit_shift) | (w[0] >> (64 - bit_shift));
        }
    }
}

/// Truncated h-fold sumset, by binary splitting of the fold count:
/// hA = ⌊h/2⌋A + ⌈h/2⌉A. Equals h−1 successive `sumset` applications.
pub fn hfold(a: &IntervalBitmap, h: u32) -> Result<IntervalBitmap> {
    if h == 0 {
        return Err(Error::ZeroFold);
    }
    let mut cache = HashMap::new();
    fold(a, h, &mut cache)
}

fn fold(a: &IntervalBitmap, h: u32, cache: &mut HashMap<u32, IntervalBitmap>) -> Result<IntervalBitmap> {
    if h == 1 {
        return Ok(a.clone());
    }
    if let Some(hit) = cache.get(&h) {
        return Ok(hit.clone());
    }
    let lo = fold(a, h / 2, cache)?;
    let hi = fold(a, h - h / 2, cache)?;
    let combined = sumset(&lo, &hi)?;
    cache.insert(h, combined.clone());
    Ok(combined)
}
