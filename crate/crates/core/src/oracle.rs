//! Brute-force P/N classification of every position in a bounded box.
//!
//! Memory model: a [`PNGrid`] stores one bit per lattice point, so a box of
//! volume `V` costs `V / 8` bytes (a 10^4 x 10^4 grid is 12.5 MB). The 2-pile
//! `(a,a)` sweep keeps only `O((w + h) * a)` booleans of working state on top
//! of its output; [`column_p_cells`] exposes that sweep without the dense
//! grid for bounds that would not fit as bits.
//!
//! Every move strictly decreases at least one coordinate, so a position's
//! label depends only on positions that are componentwise no larger. Labels
//! computed inside the box are therefore exact; there is no edge truncation.

use std::io::{self, Read, Write};

use crate::error::{Error, Result};
use crate::game::{GameSpec, Position};

const MAX_CELLS: u128 = 1 << 36;
const PNGRID_MAGIC: &[u8; 8] = b"PNGRID01";

/// Dense bit array, least significant bit first within each word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGrid {
    words: Vec<u64>,
    len: usize,
}

impl BitGrid {
    pub fn zeros(len: usize) -> Self {
        BitGrid {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Exact P/N labels for every position in `[0, bound)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PNGrid {
    spec: GameSpec,
    bound: Position,
    cells: BitGrid,
}

impl PNGrid {
    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    /// Exclusive upper corner.
    pub fn bound(&self) -> &Position {
        &self.bound
    }

    pub fn dimension(&self) -> usize {
        self.bound.dimension()
    }

    pub fn volume(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &BitGrid {
        &self.cells
    }

    /// Row-major linear index, first coordinate fastest.
    pub fn index_of(&self, coords: &[u64]) -> Option<usize> {
        if coords.len() != self.dimension() {
            return None;
        }
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (&c, &b) in coords.iter().zip(self.bound.coords()) {
            if c >= b {
                return None;
            }
            idx += c as usize * stride;
            stride *= b as usize;
        }
        Some(idx)
    }

    pub fn coords_of(&self, mut idx: usize) -> Vec<u64> {
        self.bound
            .coords()
            .iter()
            .map(|&b| {
                let c = idx as u64 % b;
                idx /= b as usize;
                c
            })
            .collect()
    }

    /// `Some(true)` for a P-position, `None` outside the box.
    pub fn is_p(&self, coords: &[u64]) -> Option<bool> {
        self.index_of(coords).map(|i| self.cells.get(i))
    }

    pub fn count_p(&self) -> u64 {
        self.cells.count_ones()
    }

    /// All P-positions in linear-index order.
    pub fn p_cells(&self) -> Vec<Position> {
        self.cells
            .iter_ones()
            .map(|i| Position::new(self.coords_of(i)))
            .collect()
    }

    fn basis_offsets(&self) -> Vec<(usize, &[u64])> {
        let strides = strides(self.bound.coords());
        self.spec
            .basis()
            .iter()
            .map(|v| {
                let off = v
                    .deltas()
                    .iter()
                    .zip(&strides)
                    .map(|(&d, &s)| d as usize * s)
                    .sum();
                (off, v.deltas())
            })
            .collect()
    }

    /// Cells whose label disagrees with the fixed-point rule
    /// (P iff no legal move reaches a P cell). Empty for a correct grid.
    pub fn rescan_violations(&self) -> Vec<Position> {
        let offsets = self.basis_offsets();
        let mut bad = Vec::new();
        let mut coords = vec![0u64; self.dimension()];
        for idx in 0..self.volume() {
            let reaches_p = reaches_p_cell(&self.cells, idx, &coords, &offsets);
            if reaches_p == self.cells.get(idx) {
                bad.push(Position::new(coords.clone()));
            }
            advance(&mut coords, self.bound.coords());
        }
        bad
    }

    /// Number of P cells reachable from `coords` in one legal move.
    pub fn p_reach_count(&self, coords: &[u64]) -> usize {
        let Some(idx) = self.index_of(coords) else {
            return 0;
        };
        self.basis_offsets()
            .iter()
            .map(|&(off, v)| {
                let kmax = max_multiple(coords, v);
                (1..=kmax)
                    .filter(|&k| self.cells.get(idx - k as usize * off))
                    .count()
            })
            .sum()
    }

    /// Binary dump: `PNGRID01`, dimension, one bound per axis (all u64
    /// little-endian), then one bit per cell, least significant bit first,
    /// first coordinate fastest.
    pub fn write_pngrid<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(PNGRID_MAGIC)?;
        w.write_all(&(self.dimension() as u64).to_le_bytes())?;
        for &b in self.bound.coords() {
            w.write_all(&b.to_le_bytes())?;
        }
        let nbytes = self.volume().div_ceil(8);
        let bytes: Vec<u8> = self
            .cells
            .words
            .iter()
            .flat_map(|word| word.to_le_bytes())
            .take(nbytes)
            .collect();
        w.write_all(&bytes)
    }

    pub fn to_pngrid_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_pngrid(&mut out).expect("writing to a Vec cannot fail");
        out
    }

    /// Parses a PNGRID dump. The file carries no move basis, so the caller
    /// supplies the spec it was produced from.
    pub fn read_pngrid<R: Read>(mut r: R, spec: GameSpec) -> Result<PNGrid> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf)
            .map_err(|e| Error::MalformedGrid(e.to_string()))?;
        let word = |i: usize| -> Result<u64> {
            buf.get(i..i + 8)
                .map(|s| u64::from_le_bytes(s.try_into().unwrap()))
                .ok_or_else(|| Error::MalformedGrid("truncated header".into()))
        };
        if buf.get(..8) != Some(PNGRID_MAGIC.as_slice()) {
            return Err(Error::MalformedGrid("bad magic".into()));
        }
        let dim = word(8)? as usize;
        if dim != spec.dimension() {
            return Err(Error::MalformedGrid(format!(
                "dimension {dim} does not match spec dimension {}",
                spec.dimension()
            )));
        }
        let bound: Vec<u64> = (0..dim).map(|i| word(16 + 8 * i)).collect::<Result<_>>()?;
        let volume = checked_volume(&bound)?;
        let payload = &buf[16 + 8 * dim..];
        if payload.len() != volume.div_ceil(8) {
            return Err(Error::MalformedGrid(format!(
                "payload has {} bytes, expected {}",
                payload.len(),
                volume.div_ceil(8)
            )));
        }
        let mut cells = BitGrid::zeros(volume);
        for (i, chunk) in payload.chunks(8).enumerate() {
            let mut w = [0u8; 8];
            w[..chunk.len()].copy_from_slice(chunk);
            cells.words[i] = u64::from_le_bytes(w);
        }
        Ok(PNGrid {
            spec,
            bound: Position::new(bound),
            cells,
        })
    }
}

fn strides(bound: &[u64]) -> Vec<usize> {
    let mut s = Vec::with_capacity(bound.len());
    let mut acc = 1usize;
    for &b in bound {
        s.push(acc);
        acc *= b as usize;
    }
    s
}

fn max_multiple(coords: &[u64], v: &[u64]) -> u64 {
    coords
        .iter()
        .zip(v)
        .filter(|(_, &d)| d > 0)
        .map(|(&c, &d)| c / d)
        .min()
        .unwrap_or(0)
}

fn reaches_p_cell(cells: &BitGrid, idx: usize, coords: &[u64], offsets: &[(usize, &[u64])]) -> bool {
    offsets.iter().any(|&(off, v)| {
        let kmax = max_multiple(coords, v) as usize;
        (1..=kmax).any(|k| cells.get(idx - k * off))
    })
}

fn advance(coords: &mut [u64], bound: &[u64]) {
    for (c, &b) in coords.iter_mut().zip(bound) {
        *c += 1;
        if *c < b {
            return;
        }
        *c = 0;
    }
}

fn checked_volume(bound: &[u64]) -> Result<usize> {
    let mut v: u128 = 1;
    for &b in bound {
        v = v.saturating_mul(u128::from(b));
    }
    if v == 0 {
        return Err(Error::EmptyBox);
    }
    if v > MAX_CELLS {
        return Err(Error::BoxTooLarge(v));
    }
    Ok(v as usize)
}

fn check_bound(spec: &GameSpec, bound: &Position) -> Result<usize> {
    spec.check_position(bound)?;
    checked_volume(bound.coords())
}

/// Classifies every position in `[0, bound)`.
///
/// 2-pile `(a,a)` specs take the row/column/diagonal sweep; everything else
/// goes through [`classify_box_generic`].
pub fn classify_box(spec: &GameSpec, bound: &Position) -> Result<PNGrid> {
    let volume = check_bound(spec, bound)?;
    let Some(a) = spec.wythoff_stride() else {
        return classify_box_generic(spec, bound);
    };
    let (w, h) = (bound.coords()[0], bound.coords()[1]);
    let mut cells = BitGrid::zeros(volume);
    for (x, y) in column_p_cells(a, w, h).into_iter().enumerate() {
        if let Some(y) = y {
            cells.set(x + y as usize * w as usize);
        }
    }
    Ok(PNGrid {
        spec: spec.clone(),
        bound: bound.clone(),
        cells,
    })
}

/// Retrograde sweep in linear-index order over any spec. Each cell scans
/// every multiple of every basis vector, `O(volume * moves per cell)`.
pub fn classify_box_generic(spec: &GameSpec, bound: &Position) -> Result<PNGrid> {
    let volume = check_bound(spec, bound)?;
    let mut grid = PNGrid {
        spec: spec.clone(),
        bound: bound.clone(),
        cells: BitGrid::zeros(volume),
    };
    let offsets: Vec<(usize, Vec<u64>)> = grid
        .basis_offsets()
        .into_iter()
        .map(|(o, v)| (o, v.to_vec()))
        .collect();
    let offsets: Vec<(usize, &[u64])> = offsets.iter().map(|(o, v)| (*o, v.as_slice())).collect();
    let mut coords = vec![0u64; spec.dimension()];
    for idx in 0..volume {
        if !reaches_p_cell(&grid.cells, idx, &coords, &offsets) {
            grid.cells.set(idx);
        }
        advance(&mut coords, bound.coords());
    }
    Ok(grid)
}

/// For the `(a,a)` game on `[0,w) x [0,h)`, the row of the unique P cell in
/// each column, or `None` when that cell lies at or above `h`.
///
/// Columns are swept in increasing `x`. A cell `(x, y)` is P exactly when no
/// earlier P cell shares its row, and none shares its diagonal `y - x` with
/// `x` in the same residue class mod `a`. Rows below the first free row are
/// skipped wholesale.
pub fn column_p_cells(a: u64, w: u64, h: u64) -> Vec<Option<u64>> {
    assert!(a >= 1, "stride must be positive");
    let a = a as usize;
    let (w, h) = (w as usize, h as usize);
    let mut row_used = vec![false; h];
    let mut first_free_row = 0usize;
    // diagonal y - x lies in (-w, h); shifted by w - 1 to index from zero
    let mut diag_used = vec![false; (w + h) * a];
    let mut out = Vec::with_capacity(w);
    for x in 0..w {
        let r = x % a;
        let mut found = None;
        for (y, used) in row_used.iter_mut().enumerate().skip(first_free_row) {
            if *used {
                continue;
            }
            let d = (y + w - 1 - x) * a + r;
            if diag_used[d] {
                continue;
            }
            *used = true;
            diag_used[d] = true;
            found = Some(y as u64);
            break;
        }
        while first_free_row < h && row_used[first_free_row] {
            first_free_row += 1;
        }
        out.push(found);
    }
    out
}

/// Canonical P-positions `(x, y)`, `x <= y`, sorted by `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PPositionList {
    pub pairs: Vec<(u64, u64)>,
}

impl PPositionList {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Collapses mirror images and lists the canonical P pairs of a 2D grid.
pub fn p_positions(grid: &PNGrid) -> Result<PPositionList> {
    if grid.dimension() != 2 {
        return Err(Error::NotTwoDimensional(grid.dimension()));
    }
    let w = grid.bound().coords()[0] as usize;
    let mut pairs: Vec<(u64, u64)> = grid
        .cells
        .iter_ones()
        .map(|i| ((i % w) as u64, (i / w) as u64))
        .filter(|(x, y)| x <= y)
        .collect();
    pairs.sort_unstable();
    Ok(PPositionList { pairs })
}

/// P-positions in difference-table order for stride `a`.
///
/// Columns are visited in increasing `x`. Inside the square `[0, a^2)^2`
/// both orientations of a pair get their own index; outside it only the
/// canonical orientation (`x <= y`) is listed and its mirror column is
/// skipped. For `a = 2` this yields `(0,0),(1,1),(2,3),(3,2),(4,6),...`.
pub fn indexed_pairs(list: &PPositionList, a: u64, count: usize) -> Result<Vec<(u64, u64)>> {
    if a == 0 {
        return Err(Error::ZeroStride);
    }
    let block = a.saturating_mul(a);
    let mut partner = std::collections::HashMap::with_capacity(list.len() * 2);
    for &(x, y) in &list.pairs {
        partner.insert(x, y);
        partner.insert(y, x);
    }
    let mut out = Vec::with_capacity(count);
    let mut column = 0u64;
    while out.len() < count {
        let Some(&y) = partner.get(&column) else {
            return Err(Error::InsufficientData {
                needed: count,
                available: out.len(),
            });
        };
        if y >= column || column < block {
            out.push((column, y));
        }
        column += 1;
    }
    Ok(out)
}

/// First `count` signed differences `y - x` in difference-table order.
pub fn difference_sequence(list: &PPositionList, a: u64, count: usize) -> Result<Vec<i64>> {
    Ok(indexed_pairs(list, a, count)?
        .into_iter()
        .map(|(x, y)| y as i64 - x as i64)
        .collect())
}

/// First `count` oracle P-positions of the `(a,a)` game in difference-table
/// order, growing the box until every needed column is determined.
pub fn oracle_indexed_pairs(a: u64, count: usize) -> Result<Vec<(u64, u64)>> {
    let spec = GameSpec::wythoff(a)?;
    let mut n = (2 * count as u64 + a * a).max(8);
    loop {
        let grid = classify_box(&spec, &Position::pair(n, n))?;
        match indexed_pairs(&p_positions(&grid)?, a, count) {
            Err(Error::InsufficientData { .. }) => n *= 2,
            other => return other,
        }
    }
}

/// Oracle difference sequence for the `(a,a)` game.
pub fn oracle_differences(a: u64, count: usize) -> Result<Vec<i64>> {
    Ok(oracle_indexed_pairs(a, count)?
        .into_iter()
        .map(|(x, y)| y as i64 - x as i64)
        .collect())
}
