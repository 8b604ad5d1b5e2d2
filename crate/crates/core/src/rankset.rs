//! Ordered set over `0..n` as a 64-ary tree of bit words: insert, remove,
//! successor and predecessor in O(log₆₄ n).

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSet {
    /// `levels[0]` holds one bit per element; bit `i` of `levels[k + 1]` is
    /// set when word `i` of `levels[k]` is nonzero. The last level is one word.
    levels: Vec<Vec<u64>>,
    len: usize,
}

impl RankSet {
    pub fn empty(n: usize) -> Self {
        let mut levels = Vec::new();
        let mut size = n.max(1);
        loop {
            let words = size.div_ceil(64);
            levels.push(vec![0u64; words]);
            if words == 1 {
                break;
            }
            size = words;
        }
        RankSet { levels, len: 0 }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        self.levels[0]
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    /// Returns false if `i` was already present.
    pub fn insert(&mut self, i: usize) -> bool {
        if self.contains(i) {
            return false;
        }
        self.len += 1;
        let mut i = i;
        for level in &mut self.levels {
            let w = &mut level[i / 64];
            let was_empty = *w == 0;
            *w |= 1 << (i % 64);
            if !was_empty {
                break;
            }
            i /= 64;
        }
        true
    }

    /// Returns false if `i` was absent.
    pub fn remove(&mut self, i: usize) -> bool {
        if !self.contains(i) {
            return false;
        }
        self.len -= 1;
        let mut i = i;
        for level in &mut self.levels {
            let w = &mut level[i / 64];
            *w &= !(1 << (i % 64));
            if *w != 0 {
                break;
            }
            i /= 64;
        }
        true
    }

    fn first_at_or_after(&self, level: usize, i: usize) -> Option<usize> {
        let words = &self.levels[level];
        let w = i / 64;
        if w >= words.len() {
            return None;
        }
        let word = words[w] & (!0u64 << (i % 64));
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
        if level + 1 == self.levels.len() {
            return None;
        }
        let nw = self.first_at_or_after(level + 1, w + 1)?;
        Some(nw * 64 + words[nw].trailing_zeros() as usize)
    }

    fn last_at_or_before(&self, level: usize, i: usize) -> Option<usize> {
        let words = &self.levels[level];
        let w = (i / 64).min(words.len() - 1);
        let b = if w < i / 64 { 63 } else { i % 64 };
        let mask = if b == 63 { !0u64 } else { (1u64 << (b + 1)) - 1 };
        let word = words[w] & mask;
        if word != 0 {
            return Some(w * 64 + 63 - word.leading_zeros() as usize);
        }
        if w == 0 || level + 1 == self.levels.len() {
            return None;
        }
        let nw = self.last_at_or_before(level + 1, w - 1)?;
        Some(nw * 64 + 63 - words[nw].leading_zeros() as usize)
    }

    /// Smallest element greater than `i`.
    pub fn succ(&self, i: usize) -> Option<usize> {
        self.first_at_or_after(0, i + 1)
    }

    /// Largest element less than `i`.
    pub fn pred(&self, i: usize) -> Option<usize> {
        if i == 0 {
            return None;
        }
        self.last_at_or_before(0, i - 1)
    }

    pub fn first(&self) -> Option<usize> {
        self.first_at_or_after(0, 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.first(), move |&i| self.succ(i))
    }
}
