//! Growable membership set over the non-negative integers with O(1) amortised
//! `mex` (minimum excludant).
//!
//! Bits live in a sliding window of 64-bit words. Words below the current mex
//! are completely full, so they are dropped as the mex advances and memory
//! tracks only the live frontier.

use std::collections::VecDeque;

#[derive(Clone, Debug, Default)]
pub struct MexState {
    /// Index of the first word kept in `words`; everything below is full.
    base_word: u64,
    words: VecDeque<u64>,
    len: u64,
}

impl MexState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of distinct values inserted.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: u64) -> bool {
        let w = v / 64;
        if w < self.base_word {
            return true;
        }
        match self.words.get((w - self.base_word) as usize) {
            Some(word) => word & (1 << (v % 64)) != 0,
            None => false,
        }
    }

    /// Inserts `v`; returns false when it was already present.
    pub fn insert(&mut self, v: u64) -> bool {
        let w = v / 64;
        if w < self.base_word {
            return false;
        }
        let idx = (w - self.base_word) as usize;
        if idx >= self.words.len() {
            self.words.resize(idx + 1, 0);
        }
        let bit = 1 << (v % 64);
        if self.words[idx] & bit != 0 {
            return false;
        }
        self.words[idx] |= bit;
        self.len += 1;
        while self.words.front() == Some(&u64::MAX) {
            self.words.pop_front();
            self.base_word += 1;
        }
        true
    }

    /// Smallest value not in the set.
    pub fn mex(&self) -> u64 {
        let front = self.words.front().copied().unwrap_or(0);
        self.base_word * 64 + u64::from(front.trailing_ones())
    }

    /// Smallest value `>= from` not in the set.
    pub fn next_absent(&self, from: u64) -> u64 {
        let mut v = from.max(self.mex());
        loop {
            let w = v / 64;
            let idx = (w - self.base_word) as usize;
            let Some(&word) = self.words.get(idx) else {
                return v;
            };
            let free = !word & (u64::MAX << (v % 64));
            if free != 0 {
                return w * 64 + u64::from(free.trailing_zeros());
            }
            v = (w + 1) * 64;
        }
    }
}
