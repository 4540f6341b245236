//! Constructive P-positions for the `(a,a)` game when `a` is a power of two.
//!
//! The first `a²` P-positions of such a game are summarised by a difference
//! table `d_0 .. d_{a²-1}` (`d_i = y_i - x_i`). The table for `2a` is built
//! from the table for `a` by [`double_table`], starting from `[0]` at `a = 1`.
//! Given the table, [`PPositionStream`] produces every P-position in order:
//!
//! - `P_n` is the mex of all earlier `P_i, Q_i`, and `Q_n = P_n + a·⌊n/a²⌋`;
//! - the emitted pair is `(P_n, Q_{n + d_{n mod a²}})`.
//!
//! The `P_n` come in runs of `a` consecutive integers and `n + d_{n mod a²}`
//! stays inside the run, so `q_n - p_n = a·⌊n/a²⌋ + d_{n mod a²}`.

use std::collections::VecDeque;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::mex::MexState;

/// The `a²` signed differences of an `(a,a)` game's first P-positions.
///
/// Only the length is enforced on construction; the structural properties are
/// checked by the `check_property_*` predicates so that damaged tables can be
/// represented and rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSequence {
    stride: u64,
    values: Vec<i64>,
}

impl DifferenceSequence {
    pub fn new(stride: u64, values: Vec<i64>) -> Result<Self> {
        if stride == 0 {
            return Err(Error::ZeroStride);
        }
        let expected = (stride * stride) as usize;
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: values.len(),
            });
        }
        Ok(DifferenceSequence { stride, values })
    }

    pub fn stride(&self) -> u64 {
        self.stride
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    fn block_len(&self) -> i64 {
        self.values.len() as i64
    }

    /// `d_i` for any `i >= 0`, extended by `d_{i + a²} = d_i + a`.
    pub fn extended(&self, i: i64) -> Option<i64> {
        if i < 0 {
            return None;
        }
        let n = self.block_len();
        Some(self.values[(i % n) as usize] + self.stride as i64 * (i / n))
    }

    /// `index,d` rows with a header line.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "index,d")?;
        for (i, d) in self.values.iter().enumerate() {
            writeln!(w, "{i},{d}")?;
        }
        Ok(())
    }
}

fn require_power_of_two(a: u64) -> Result<()> {
    if a == 0 {
        return Err(Error::ZeroStride);
    }
    if !a.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(a));
    }
    Ok(())
}

/// Difference table for stride `a`, by repeated doubling from `[0]`.
pub fn base_difference_table(a: u64) -> Result<DifferenceSequence> {
    require_power_of_two(a)?;
    let mut table = DifferenceSequence {
        stride: 1,
        values: vec![0],
    };
    while table.stride < a {
        table = double_table(&table)?;
    }
    Ok(table)
}

/// Builds the stride-`2a` table from the stride-`a` table.
///
/// With blocks `A_i = d_{ia} .. d_{ia+a-1}`, the output is
/// `A_0 A_0 A_1 A_1 ... A_{a-1} A_{a-1}` followed by
/// `(A_0 + a)(A_0 - a) ... (A_{a-1} + a)(A_{a-1} - a)`.
pub fn double_table(d: &DifferenceSequence) -> Result<DifferenceSequence> {
    let a = d.stride as usize;
    if d.values.len() != a * a {
        return Err(Error::LengthMismatch {
            expected: a * a,
            actual: d.values.len(),
        });
    }
    let shift = d.stride as i64;
    let mut out = Vec::with_capacity(4 * a * a);
    for block in d.values.chunks(a) {
        out.extend_from_slice(block);
        out.extend_from_slice(block);
    }
    for block in d.values.chunks(a) {
        out.extend(block.iter().map(|v| v + shift));
        out.extend(block.iter().map(|v| v - shift));
    }
    Ok(DifferenceSequence {
        stride: d.stride * 2,
        values: out,
    })
}

/// Every integer in `(-a, a)` occurs and nothing else does.
pub fn check_property_1(d: &DifferenceSequence) -> bool {
    let a = d.stride as i64;
    let mut seen = vec![false; (2 * a - 1) as usize];
    for &v in &d.values {
        if v <= -a || v >= a {
            return false;
        }
        seen[(v + a - 1) as usize] = true;
    }
    seen.into_iter().all(|s| s)
}

/// Within each index class mod `a`, the values are pairwise distinct mod `a`.
pub fn check_property_2(d: &DifferenceSequence) -> bool {
    let a = d.stride as usize;
    (0..a).all(|class| {
        let mut residues = vec![false; a];
        d.values.iter().skip(class).step_by(a).all(|&v| {
            let r = v.rem_euclid(a as i64) as usize;
            !std::mem::replace(&mut residues[r], true)
        })
    })
}

/// The final block pairs to zero from both ends:
/// `d_{a²-a+i} + d_{a²-1-i} = 0` for `0 <= i < a`.
pub fn check_property_3(d: &DifferenceSequence) -> bool {
    let a = d.stride as usize;
    let last = &d.values[d.values.len() - a..];
    (0..a).all(|i| last[i] + last[a - 1 - i] == 0)
}

/// `d_i + d_{i + d_i} < a` for every `i < horizon` (periodic extension).
pub fn check_property_4(d: &DifferenceSequence, horizon: usize) -> bool {
    let a = d.stride as i64;
    (0..horizon as i64).all(|i| {
        let di = d.extended(i).unwrap();
        match d.extended(i + di) {
            Some(dj) => di + dj < a,
            None => true,
        }
    })
}

/// `d_j + d_{j - a + d_j} < a` for every `j < horizon` whose partner index
/// is non-negative.
pub fn check_property_5(d: &DifferenceSequence, horizon: usize) -> bool {
    let a = d.stride as i64;
    (0..horizon as i64).all(|j| {
        let dj = d.extended(j).unwrap();
        match d.extended(j - a + dj) {
            Some(dk) => dj + dk < a,
            None => true,
        }
    })
}

/// All five structural predicates at horizon `a²`.
pub fn check_all_properties(d: &DifferenceSequence) -> [bool; 5] {
    let h = d.values.len();
    [
        check_property_1(d),
        check_property_2(d),
        check_property_3(d),
        check_property_4(d, h),
        check_property_5(d, h),
    ]
}

/// One emitted P-position with its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PPair {
    pub n: u64,
    pub p: u64,
    pub q: u64,
}

impl PPair {
    pub fn diff(&self) -> i64 {
        self.q as i64 - self.p as i64
    }
}

/// Writes `n,p,q,diff` rows with a header line.
pub fn write_pairs_csv<W: Write, I: IntoIterator<Item = PPair>>(mut w: W, pairs: I) -> io::Result<()> {
    writeln!(w, "n,p,q,diff")?;
    for pp in pairs {
        writeln!(w, "{},{},{},{}", pp.n, pp.p, pp.q, pp.diff())?;
    }
    Ok(())
}

/// Sequential generator of `(p_n, q_n)` for a power-of-two stride.
/// Not for concurrent advancement; collect a prefix to share it.
#[derive(Clone, Debug)]
pub struct PPositionStream {
    diffs: DifferenceSequence,
    used: MexState,
    /// `(P_m, Q_m)` for `m = window_start .. next_base`.
    window: VecDeque<(u64, u64)>,
    window_start: u64,
    next_base: u64,
    n: u64,
    limit: Option<u64>,
}

impl PPositionStream {
    pub fn new(a: u64) -> Result<Self> {
        Ok(Self::with_table(base_difference_table(a)?))
    }

    pub fn with_table(diffs: DifferenceSequence) -> Self {
        PPositionStream {
            diffs,
            used: MexState::new(),
            window: VecDeque::new(),
            window_start: 0,
            next_base: 0,
            n: 0,
            limit: None,
        }
    }

    pub fn stride(&self) -> u64 {
        self.diffs.stride
    }

    pub fn table(&self) -> &DifferenceSequence {
        &self.diffs
    }

    /// Number of pairs emitted so far.
    pub fn emitted(&self) -> u64 {
        self.n
    }

    fn push_base(&mut self) {
        let a = self.diffs.stride;
        let m = self.next_base;
        let p = self.used.mex();
        let q = p + a * (m / (a * a));
        self.used.insert(p);
        self.used.insert(q);
        self.window.push_back((p, q));
        self.next_base += 1;
    }

    fn base(&mut self, m: u64) -> (u64, u64) {
        while self.next_base <= m {
            self.push_base();
        }
        self.window[(m - self.window_start) as usize]
    }
}

impl Iterator for PPositionStream {
    type Item = PPair;

    fn next(&mut self) -> Option<PPair> {
        if self.limit.is_some_and(|l| self.n >= l) {
            return None;
        }
        let n = self.n;
        let block = self.diffs.values.len() as u64;
        let d = self.diffs.values[(n % block) as usize];
        let (p, _) = self.base(n);
        let (_, q) = self.base(n.checked_add_signed(d).expect("partner index below zero"));
        self.n += 1;
        // partners lie within a - 1 of their index
        while self.window_start + self.diffs.stride < self.n + 1 {
            self.window.pop_front();
            self.window_start += 1;
        }
        Some(PPair { n, p, q })
    }
}

/// Stream of the first `limit` P-positions of the `(a,a)` game.
pub fn stream_p_positions(a: u64, limit: u64) -> Result<PPositionStream> {
    let mut s = PPositionStream::new(a)?;
    s.limit = Some(limit);
    Ok(s)
}

/// Which notion of "cyclic" to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CyclicReading {
    /// `d_{i + a²} = d_i + a` exactly, the pattern the difference tables show.
    Shift,
    /// `i ≡ j (mod a²)` implies `d_i ≡ d_j (mod modulus)`.
    Congruence { modulus: u64 },
}

/// First index pair `(i, i + a²)` breaking the reading, or `None`.
/// Sequences shorter than `2a²` cannot be judged and yield `Some((0, 0))`.
pub fn cyclic_violation(d: &[i64], a: u64, reading: CyclicReading) -> Option<(usize, usize)> {
    let period = (a * a) as usize;
    if d.len() < 2 * period {
        return Some((0, 0));
    }
    (0..d.len() - period)
        .find(|&i| {
            let (x, y) = (d[i], d[i + period]);
            match reading {
                CyclicReading::Shift => y != x + a as i64,
                CyclicReading::Congruence { modulus } => (y - x).rem_euclid(modulus as i64) != 0,
            }
        })
        .map(|i| (i, i + period))
}

/// True when `d` satisfies `d_{i+a²} = d_i + a` over all checkable indices.
pub fn is_cyclic_sequence(d: &[i64], a: u64) -> bool {
    cyclic_violation(d, a, CyclicReading::Shift).is_none()
}
