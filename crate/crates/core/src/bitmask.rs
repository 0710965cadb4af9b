//! Fixed-width membership bitmask with cyclic shift-OR.

/// Bits `0..width`; no bit at or above `width` is ever set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMask {
    width: usize,
    words: Vec<u64>,
}

impl BitMask {
    pub fn new(width: usize) -> Self {
        BitMask {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut m = BitMask {
            width,
            words: vec![u64::MAX; width.div_ceil(64)],
        };
        m.trim();
        m
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn test(&self, i: usize) -> bool {
        i < self.width && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn or_assign(&mut self, other: &BitMask) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitMask) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &BitMask) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Population count of `self & other` without allocating.
    pub fn and_count(&self, other: &BitMask) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `self |= rotate(src, shift)`, where the rotation sends bit `i` to `(i + shift) mod width`.
    pub fn or_rotated(&mut self, src: &BitMask, shift: usize) {
        debug_assert_eq!(self.width, src.width);
        let w = self.width;
        if w == 0 {
            return;
        }
        let s = shift % w;
        if s == 0 {
            self.or_assign(src);
            return;
        }
        // bits [0, w-s) move up by s, bits [w-s, w) move down by w-s
        shl_or(&mut self.words, &src.words, s);
        self.trim();
        shr_or(&mut self.words, &src.words, w - s);
    }

    fn trim(&mut self) {
        let r = self.width & 63;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

fn shl_or(dst: &mut [u64], src: &[u64], s: usize) {
    let (q, r) = (s >> 6, s & 63);
    let n = dst.len();
    for k in (q..n).rev() {
        let hi = src[k - q];
        let mut v = hi << r;
        if r != 0 && k > q {
            v |= src[k - q - 1] >> (64 - r);
        }
        dst[k] |= v;
    }
}

fn shr_or(dst: &mut [u64], src: &[u64], s: usize) {
    let (q, r) = (s >> 6, s & 63);
    let n = dst.len();
    for k in 0..n.saturating_sub(q) {
        let mut v = src[k + q] >> r;
        if r != 0 && k + q + 1 < n {
            v |= src[k + q + 1] << (64 - r);
        }
        dst[k] |= v;
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
