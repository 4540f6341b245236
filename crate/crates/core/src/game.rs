//! Positions, move vectors and legal-move mechanics.
//!
//! A game is described by a [`GameSpec`]: a dimension (number of piles) and a
//! basis of non-negative move vectors. A move subtracts any positive integer
//! multiple of one basis vector, and is legal when no pile goes negative.
//! Play is normal: the player who cannot move loses.

use std::fmt;

use crate::error::{Error, Result};

/// Pile sizes, one coordinate per pile.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(Vec<u64>);

impl Position {
    pub fn new(coords: Vec<u64>) -> Self {
        Position(coords)
    }

    pub fn pair(x: u64, y: u64) -> Self {
        Position(vec![x, y])
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// Coordinate-swapped copy of a 2-pile position.
    pub fn swapped(&self) -> Self {
        let mut c = self.0.clone();
        c.reverse();
        Position(c)
    }

    /// True when every coordinate is strictly below the matching bound.
    pub fn within(&self, bound: &Position) -> bool {
        self.0.len() == bound.0.len() && self.0.iter().zip(&bound.0).all(|(c, b)| c < b)
    }

    /// True when every coordinate is at most the matching bound.
    pub fn within_inclusive(&self, corner: &Position) -> bool {
        self.0.len() == corner.0.len() && self.0.iter().zip(&corner.0).all(|(c, b)| c <= b)
    }
}

impl From<Vec<u64>> for Position {
    fn from(v: Vec<u64>) -> Self {
        Position(v)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A direction that may be subtracted at any positive multiple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveVector(Vec<u64>);

impl MoveVector {
    pub fn new(deltas: Vec<u64>) -> Result<Self> {
        if deltas.iter().all(|&d| d == 0) {
            return Err(Error::InvalidSpec("move vector is all zero".into()));
        }
        Ok(MoveVector(deltas))
    }

    pub fn deltas(&self) -> &[u64] {
        &self.0
    }

    /// Largest multiple `k` with `p - k*self` still non-negative.
    pub fn max_multiple(&self, p: &Position) -> u64 {
        self.0
            .iter()
            .zip(p.coords())
            .filter(|(&d, _)| d > 0)
            .map(|(&d, &c)| c / d)
            .min()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    dimension: usize,
    basis: Vec<MoveVector>,
}

impl GameSpec {
    pub fn new(dimension: usize, basis: Vec<MoveVector>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        if basis.is_empty() {
            return Err(Error::InvalidSpec("basis is empty".into()));
        }
        for (i, v) in basis.iter().enumerate() {
            if v.0.len() != dimension {
                return Err(Error::InvalidSpec(format!(
                    "basis vector {i} has length {}, expected {dimension}",
                    v.0.len()
                )));
            }
            if basis[..i].contains(v) {
                return Err(Error::InvalidSpec(format!("duplicate basis vector {i}")));
            }
        }
        Ok(GameSpec { dimension, basis })
    }

    /// The 2-pile `(a,a)` game: basis `(1,0), (0,1), (a,a)`.
    pub fn wythoff(a: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::ZeroStride);
        }
        GameSpec::new(
            2,
            vec![
                MoveVector(vec![1, 0]),
                MoveVector(vec![0, 1]),
                MoveVector(vec![a, a]),
            ],
        )
    }

    /// 3-pile Wythoff: each single pile, or the same amount from all three.
    pub fn wythoff_3d() -> Self {
        GameSpec {
            dimension: 3,
            basis: vec![
                MoveVector(vec![1, 0, 0]),
                MoveVector(vec![0, 1, 0]),
                MoveVector(vec![0, 0, 1]),
                MoveVector(vec![1, 1, 1]),
            ],
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn basis(&self) -> &[MoveVector] {
        &self.basis
    }

    /// `Some(a)` when this is exactly the 2-pile `(a,a)` game (basis in any order).
    pub fn wythoff_stride(&self) -> Option<u64> {
        if self.dimension != 2 || self.basis.len() != 3 {
            return None;
        }
        let has = |v: &[u64]| self.basis.iter().any(|b| b.0 == v);
        if !has(&[1, 0]) || !has(&[0, 1]) {
            return None;
        }
        self.basis
            .iter()
            .find(|b| b.0[0] == b.0[1])
            .map(|b| b.0[0])
    }

    /// True for 2-pile specs whose basis is closed under swapping coordinates.
    pub fn is_swap_symmetric(&self) -> bool {
        self.dimension == 2
            && self.basis.iter().all(|v| {
                let swapped = [v.0[1], v.0[0]];
                self.basis.iter().any(|w| w.0 == swapped)
            })
    }

    pub(crate) fn check_position(&self, p: &Position) -> Result<()> {
        if p.dimension() != self.dimension {
            return Err(Error::InvalidPosition(format!(
                "position {p} has dimension {}, expected {}",
                p.dimension(),
                self.dimension
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub basis_index: usize,
    pub multiple: u64,
}

impl Move {
    pub fn new(basis_index: usize, multiple: u64) -> Result<Self> {
        if multiple == 0 {
            return Err(Error::IllegalMove);
        }
        Ok(Move {
            basis_index,
            multiple,
        })
    }
}

/// Subtracts `m.multiple` copies of the chosen basis vector from `p`.
pub fn apply_move(p: &Position, m: Move, spec: &GameSpec) -> Result<Position> {
    spec.check_position(p)?;
    let v = spec.basis.get(m.basis_index).ok_or(Error::IllegalMove)?;
    if m.multiple == 0 {
        return Err(Error::IllegalMove);
    }
    let coords = p
        .coords()
        .iter()
        .zip(v.deltas())
        .map(|(&c, &d)| {
            d.checked_mul(m.multiple)
                .and_then(|step| c.checked_sub(step))
                .ok_or(Error::IllegalMove)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Position(coords))
}

/// Every legal move available from `p`, in basis order then by multiple.
pub fn legal_moves(p: &Position, spec: &GameSpec) -> Vec<Move> {
    spec.basis
        .iter()
        .enumerate()
        .flat_map(|(i, v)| {
            (1..=v.max_multiple(p)).map(move |k| Move {
                basis_index: i,
                multiple: k,
            })
        })
        .collect()
}

/// All positions `q` with `q <= corner` componentwise from which one legal
/// move reaches `p`. Unlike grid bounds, `corner` is inclusive.
///
/// The result is sorted and free of duplicates.
pub fn predecessors_reached(p: &Position, spec: &GameSpec, corner: &Position) -> Vec<Position> {
    let mut out = Vec::new();
    if spec.check_position(p).is_err() || !p.within_inclusive(corner) {
        return out;
    }
    for v in &spec.basis {
        let mut q = p.coords().to_vec();
        loop {
            let mut inside = true;
            for ((c, &d), &b) in q.iter_mut().zip(v.deltas()).zip(corner.coords()) {
                *c += d;
                if *c > b {
                    inside = false;
                }
            }
            if !inside {
                break;
            }
            out.push(Position(q.clone()));
        }
    }
    out.sort();
    out.dedup();
    out
}
