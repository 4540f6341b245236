//! Solvers for Wythoff-type take-away games.
//!
//! - [`game`]: positions, move vectors, legal moves.
//! - [`oracle`]: brute-force retrograde P/N classification of a bounded box.
//! - [`classical`]: closed form for the `(1,1)` game in exact integer arithmetic.
//! - [`cyclic`]: constructive P-positions for `(a,a)` games with `a` a power of two.
//! - [`general`]: greedy mex construction for the `(b,b)` game, any `b`.
//! - [`nim`]: linearly independent move bases reduce to Nim.
//! - [`conjectures`]: empirical checkers with machine-readable reports.
//! - [`export`]: CSV, PGM and SVG writers.

pub mod classical;
pub mod conjectures;
pub mod cyclic;
pub mod error;
pub mod export;
pub mod general;
pub mod game;
pub mod mex;
pub mod nim;
pub mod oracle;

pub use error::{Error, Result};
pub use game::{apply_move, predecessors_reached, GameSpec, Move, MoveVector, Position};
pub use oracle::{classify_box, PNGrid, PPositionList};
