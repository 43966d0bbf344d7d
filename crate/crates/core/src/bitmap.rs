//! Fixed-bound membership bitmaps over [0, N].

use std::fmt;
use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Largest supported inclusive bound (2³²).
pub const MAX_BOUND: u64 = 1 << 32;

const WORD_BITS: u64 = 64;
const MAGIC: [u8; 4] = *b"SSL1";

/// Membership bitmap of a set intersected with [0, bound].
///
/// Bit i of word j represents the integer 64j + i. Bits above the bound are
/// always zero, so popcount equals the cardinality of the represented set.
/// Values are immutable in all engine operations and safe to share across
/// threads.
#[derive(Clone, PartialEq, Eq)]
pub struct IntervalBitmap {
    bound: u64,
    words: Vec<u64>,
}

fn words_for(bound: u64) -> usize {
    ((bound / WORD_BITS) + 1) as usize
}

impl IntervalBitmap {
    pub fn empty(bound: u64) -> Result<Self> {
        if bound > MAX_BOUND {
            return Err(Error::BoundTooLarge { bound, max: MAX_BOUND });
        }
        Ok(IntervalBitmap { bound, words: vec![0; words_for(bound)] })
    }

    pub fn full(bound: u64) -> Result<Self> {
        let mut bm = IntervalBitmap::empty(bound)?;
        bm.words.fill(u64::MAX);
        bm.mask_tail();
        Ok(bm)
    }

    /// Bitmap with exactly the given members set; order and duplicates are
    /// irrelevant.
    pub fn from_members(bound: u64, members: &[u64]) -> Result<Self> {
        let mut bm = IntervalBitmap::empty(bound)?;
        for &m in members {
            bm.insert(m)?;
        }
        Ok(bm)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn contains(&self, i: u64) -> bool {
        i <= self.bound && self.words[(i / WORD_BITS) as usize] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn insert(&mut self, i: u64) -> Result<()> {
        if i > self.bound {
            return Err(Error::MemberOutOfBounds { member: i, bound: self.bound });
        }
        self.words[(i / WORD_BITS) as usize] |= 1 << (i % WORD_BITS);
        Ok(())
    }

    /// Number of set bits on the whole interval, 0 included.
    pub fn popcount(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Number of set bits in [1, n] — zero is excluded by definition.
    pub fn counting(&self, n: u64) -> Result<u64> {
        if n > self.bound {
            return Err(Error::QueryOutOfBounds { n, bound: self.bound });
        }
        if n == 0 {
            return Ok(0);
        }
        Ok(self.popcount_range(1, n))
    }

    // lo <= hi <= bound must already hold.
    fn popcount_range(&self, lo: u64, hi: u64) -> u64 {
        let (wl, wh) = ((lo / WORD_BITS) as usize, (hi / WORD_BITS) as usize);
        let mut total = 0;
        for j in wl..=wh {
            total += (self.words[j] & range_mask(j, lo, hi)).count_ones() as u64;
        }
        total
    }

    /// Increasing list of the integers in [lo, hi] whose bit is clear.
    pub fn complement_members(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        self.check_range(lo, hi)?;
        let mut out = Vec::new();
        for j in (lo / WORD_BITS) as usize..=(hi / WORD_BITS) as usize {
            let mut inv = !self.words[j] & range_mask(j, lo, hi);
            while inv != 0 {
                out.push(j as u64 * WORD_BITS + inv.trailing_zeros() as u64);
                inv &= inv - 1;
            }
        }
        Ok(out)
    }

    /// Smallest integer in [lo, hi] whose bit is clear.
    pub fn first_clear_in(&self, lo: u64, hi: u64) -> Result<Option<u64>> {
        self.check_range(lo, hi)?;
        for j in (lo / WORD_BITS) as usize..=(hi / WORD_BITS) as usize {
            let inv = !self.words[j] & range_mask(j, lo, hi);
            if inv != 0 {
                return Ok(Some(j as u64 * WORD_BITS + inv.trailing_zeros() as u64));
            }
        }
        Ok(None)
    }

    /// Largest integer in [lo, hi] whose bit is clear.
    pub fn last_clear_in(&self, lo: u64, hi: u64) -> Result<Option<u64>> {
        self.check_range(lo, hi)?;
        for j in ((lo / WORD_BITS) as usize..=(hi / WORD_BITS) as usize).rev() {
            let inv = !self.words[j] & range_mask(j, lo, hi);
            if inv != 0 {
                return Ok(Some(j as u64 * WORD_BITS + 63 - inv.leading_zeros() as u64));
            }
        }
        Ok(None)
    }

    /// Whether every bit of [0, bound] is set.
    pub fn covers_interval(&self) -> bool {
        self.first_clear_in(0, self.bound).expect("full range is valid").is_none()
    }

    pub fn is_subset_of(&self, other: &IntervalBitmap) -> Result<bool> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch { left: self.bound, right: other.bound });
        }
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0))
    }

    /// Iterates the set bits in increasing order.
    pub fn members(&self) -> Members<'_> {
        Members { words: &self.words, next_word: 0, current: 0, base: 0 }
    }

    fn check_range(&self, lo: u64, hi: u64) -> Result<()> {
        if lo > hi || hi > self.bound {
            return Err(Error::RangeOutOfBounds { lo, hi, bound: self.bound });
        }
        Ok(())
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub(crate) fn mask_tail(&mut self) {
        let used = self.bound % WORD_BITS + 1;
        if used < WORD_BITS {
            *self.words.last_mut().expect("at least one word") &= u64::MAX >> (WORD_BITS - used);
        }
    }

    fn tail_is_clear(&self) -> bool {
        let used = self.bound % WORD_BITS + 1;
        used == WORD_BITS || self.words.last().expect("at least one word") >> used == 0
    }

    /// Serializes as magic `SSL1`, the bound as u64 LE, then the words as
    /// u64 LE. The on-disk layout is fixed regardless of platform.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(&MAGIC)?;
        w.write_all(&self.bound.to_le_bytes())?;
        for &word in &self.words {
            w.write_all(&word.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if magic != MAGIC {
            return Err(Error::BadMagic(magic));
        }
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        let bound = u64::from_le_bytes(buf);
        if bound > MAX_BOUND {
            return Err(Error::BoundTooLarge { bound, max: MAX_BOUND });
        }
        let mut words = vec![0u64; words_for(bound)];
        for word in &mut words {
            r.read_exact(&mut buf)?;
            *word = u64::from_le_bytes(buf);
        }
        let bm = IntervalBitmap { bound, words };
        if !bm.tail_is_clear() {
            return Err(Error::TrailingBitsSet);
        }
        Ok(bm)
    }
}

// Mask of the bits of word j that fall inside [lo, hi].
fn range_mask(j: usize, lo: u64, hi: u64) -> u64 {
    let base = j as u64 * WORD_BITS;
    let mut mask = u64::MAX;
    if lo > base {
        mask &= u64::MAX << (lo - base);
    }
    if hi < base + WORD_BITS - 1 {
        mask &= u64::MAX >> (base + WORD_BITS - 1 - hi);
    }
    mask
}

pub struct Members<'a> {
    words: &'a [u64],
    next_word: usize,
    current: u64,
    base: u64,
}

impl Iterator for Members<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.current == 0 {
            if self.next_word == self.words.len() {
                return None;
            }
            self.current = self.words[self.next_word];
            self.base = self.next_word as u64 * WORD_BITS;
            self.next_word += 1;
        }
        let bit = self.current.trailing_zeros() as u64;
        self.current &= self.current - 1;
        Some(self.base + bit)
    }
}

impl fmt::Debug for IntervalBitmap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntervalBitmap(bound={}, popcount={})", self.bound, self.popcount())
    }
}
