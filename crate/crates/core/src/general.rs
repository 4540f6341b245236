//! Greedy construction of the P-positions of the `(b,b)` game for any `b`.
//!
//! Starting from `(0,0)`, each step takes `a_n` = mex of every coordinate
//! used so far, then the least unused `b_n >= a_n` whose key
//! `(b_n - a_n, a_n mod b)` has not been taken. Two pairs sharing a key lie
//! on the same stride-`b` diagonal and one could move to the other, so the
//! key set is exactly the diagonal exclusion.

use rayon::prelude::*;

use crate::cyclic::PPair;
use crate::error::{Error, Result};
use crate::game::{GameSpec, Position};
use crate::mex::MexState;
use crate::oracle::{self, PPositionList};

/// Keys `(difference, residue)` already claimed by generated pairs.
///
/// Stored as one mex set of differences per residue class, so the least
/// free difference for a residue is found without scanning history.
#[derive(Clone, Debug)]
pub struct ExclusionIndex {
    stride: u64,
    by_residue: Vec<MexState>,
    pairs: u64,
}

impl ExclusionIndex {
    pub fn new(stride: u64) -> Result<Self> {
        if stride == 0 {
            return Err(Error::ZeroStride);
        }
        Ok(ExclusionIndex {
            stride,
            by_residue: vec![MexState::new(); stride as usize],
            pairs: 0,
        })
    }

    pub fn contains(&self, diff: u64, x: u64) -> bool {
        self.by_residue[(x % self.stride) as usize].contains(diff)
    }

    pub fn insert(&mut self, diff: u64, x: u64) {
        let fresh = self.by_residue[(x % self.stride) as usize].insert(diff);
        debug_assert!(fresh, "key inserted twice");
        self.pairs += 1;
    }

    /// Number of pairs recorded.
    pub fn len(&self) -> u64 {
        self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs == 0
    }

    fn next_free_diff(&self, x: u64, from: u64) -> u64 {
        self.by_residue[(x % self.stride) as usize].next_absent(from)
    }
}

/// Sequential `(b,b)` generator; yields canonical pairs `a_n <= b_n`.
#[derive(Clone, Debug)]
pub struct BbGenerator {
    used: MexState,
    keys: ExclusionIndex,
    n: u64,
}

impl BbGenerator {
    pub fn new(b: u64) -> Result<Self> {
        Ok(BbGenerator {
            used: MexState::new(),
            keys: ExclusionIndex::new(b)?,
            n: 0,
        })
    }

    pub fn stride(&self) -> u64 {
        self.keys.stride
    }
}

impl Iterator for BbGenerator {
    type Item = PPair;

    fn next(&mut self) -> Option<PPair> {
        let x = self.used.mex();
        let mut diff = self.keys.next_free_diff(x, 0);
        while self.used.contains(x + diff) {
            diff = self.keys.next_free_diff(x, diff + 1);
        }
        let y = x + diff;
        self.used.insert(x);
        self.used.insert(y);
        self.keys.insert(diff, x);
        let pair = PPair { n: self.n, p: x, q: y };
        self.n += 1;
        Some(pair)
    }
}

/// First `count` canonical P-positions of the `(b,b)` game.
pub fn generate_bb(b: u64, count: usize) -> Result<PPositionList> {
    Ok(PPositionList {
        pairs: BbGenerator::new(b)?.take(count).map(|p| (p.p, p.q)).collect(),
    })
}

/// Canonical pairs with `a_n < bound`, whatever `b_n` is.
pub fn generate_bb_below(b: u64, bound: u64) -> Result<Vec<(u64, u64)>> {
    Ok(BbGenerator::new(b)?
        .take_while(|p| p.p < bound)
        .map(|p| (p.p, p.q))
        .collect())
}

/// Differences between a constructive P-position set and the oracle on
/// `[0, bound)²`. Both lists hold cells in both orientations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub stride: u64,
    pub bound: u64,
    /// Oracle P cells the construction did not produce.
    pub missing: Vec<(u64, u64)>,
    /// Constructed cells the oracle labels N.
    pub extra: Vec<(u64, u64)>,
    pub checked_cells: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Compares a set of pairs (either orientation, mirrors added here) with the
/// oracle's P cells in `[0, bound)²`.
pub fn compare_with_oracle<I>(b: u64, bound: u64, pairs: I) -> Result<VerifyReport>
where
    I: IntoIterator<Item = (u64, u64)>,
{
    let grid = oracle::classify_box(&GameSpec::wythoff(b)?, &Position::pair(bound, bound))?;
    let mut built: Vec<(u64, u64)> = pairs
        .into_iter()
        .flat_map(|(x, y)| [(x, y), (y, x)])
        .filter(|&(x, y)| x < bound && y < bound)
        .collect();
    built.sort_unstable();
    built.dedup();
    let mut truth: Vec<(u64, u64)> = grid
        .cells()
        .iter_ones()
        .map(|i| ((i as u64 % bound), (i as u64 / bound)))
        .collect();
    truth.sort_unstable();

    let missing = truth
        .par_iter()
        .filter(|c| built.binary_search(c).is_err())
        .copied()
        .collect();
    let extra = built
        .par_iter()
        .filter(|c| truth.binary_search(c).is_err())
        .copied()
        .collect();
    Ok(VerifyReport {
        stride: b,
        bound,
        missing,
        extra,
        checked_cells: bound * bound,
    })
}

/// Checks `generate_bb` against the oracle on `[0, bound)²`.
pub fn verify_against_oracle(b: u64, bound: u64) -> Result<VerifyReport> {
    compare_with_oracle(b, bound, generate_bb_below(b, bound)?)
}
