/// Fixed-width set of vertex ids backed by 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; word_count(len)],
            len,
        }
    }

    /// Set containing every id in `lo..hi`.
    pub fn range(len: usize, lo: usize, hi: usize) -> Self {
        let mut set = BitSet::new(len);
        set.insert_range(lo, hi);
        set
    }

    pub fn full(len: usize) -> Self {
        BitSet::range(len, 0, len)
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn insert_range(&mut self, lo: usize, hi: usize) {
        for i in lo..hi {
            self.insert(i);
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of members in `lo..hi`.
    pub fn count_range(&self, lo: usize, hi: usize) -> usize {
        if lo >= hi {
            return 0;
        }
        let (first, last) = (lo >> 6, (hi - 1) >> 6);
        let low_mask = !0u64 << (lo & 63);
        let high_mask = !0u64 >> (63 - ((hi - 1) & 63));
        if first == last {
            return (self.words[first] & low_mask & high_mask).count_ones() as usize;
        }
        let mut total = (self.words[first] & low_mask).count_ones() as usize;
        for w in &self.words[first + 1..last] {
            total += w.count_ones() as usize;
        }
        total + (self.words[last] & high_mask).count_ones() as usize
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `self ← a ∩ b`, reusing this set's storage.
    #[inline]
    pub fn assign_and(&mut self, a: &BitSet, b: &BitSet) {
        for ((out, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *out = x & y;
        }
    }

    /// `self ← a ∖ b`.
    #[inline]
    pub fn assign_and_not(&mut self, a: &BitSet, b: &BitSet) {
        for ((out, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *out = x & !y;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (x, y) in self.words.iter_mut().zip(&other.words) {
            *x &= y;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (x, y) in self.words.iter_mut().zip(&other.words) {
            *x &= !y;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (x, y) in self.words.iter_mut().zip(&other.words) {
            *x |= y;
        }
    }

    /// Removes every member below `lo`.
    pub fn clear_below(&mut self, lo: usize) {
        let full = lo >> 6;
        let words = self.words.len();
        for w in &mut self.words[..full.min(words)] {
            *w = 0;
        }
        if full < self.words.len() {
            self.words[full] &= !0u64 << (lo & 63);
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| (i << 6) + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some((self.index << 6) + bit)
    }
}

impl FromIterator<usize> for BitSet {
    /// Collects ids into a set sized to the largest id seen.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let ids: Vec<usize> = iter.into_iter().collect();
        let len = ids.iter().max().map_or(0, |m| m + 1);
        let mut set = BitSet::new(len);
        for i in ids {
            set.insert(i);
        }
        set
    }
}
