//! Raster and vector renderings of 2-pile grids.
//!
//! Both formats draw `y = 0` on the bottom row so the picture reads like a
//! plot with the origin in the lower-left corner.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::oracle::PNGrid;

pub const SHADE_P: u8 = 0;
pub const SHADE_MULTI_REACH: u8 = 128;
pub const SHADE_N: u8 = 255;

/// Per-cell count of P cells reachable in one move, row-major with `x`
/// fastest. Uses the one-per-line structure of `(a,a)` games when it
/// applies and falls back to scanning every move otherwise.
pub fn p_reach_counts(grid: &PNGrid) -> Result<Vec<u8>> {
    if grid.dimension() != 2 {
        return Err(Error::NotTwoDimensional(grid.dimension()));
    }
    let (w, h) = (grid.bound().coords()[0] as usize, grid.bound().coords()[1] as usize);
    let Some(a) = grid.spec().wythoff_stride() else {
        let mut out = Vec::with_capacity(w * h);
        for y in 0..h as u64 {
            for x in 0..w as u64 {
                out.push(grid.p_reach_count(&[x, y]).min(255) as u8);
            }
        }
        return Ok(out);
    };
    let a = a as usize;
    let mut row_p = vec![usize::MAX; h];
    let mut col_p = vec![usize::MAX; w];
    // P cell's x on each (diagonal, residue) line; diagonal y - x shifted by w - 1
    let mut line_p = vec![usize::MAX; (w + h) * a];
    for i in grid.cells().iter_ones() {
        let (x, y) = (i % w, i / w);
        row_p[y] = x;
        col_p[x] = y;
        line_p[(y + w - 1 - x) * a + x % a] = x;
    }
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let mut n = 0u8;
            n += u8::from(row_p[y] < x);
            n += u8::from(col_p[x] < y);
            n += u8::from(line_p[(y + w - 1 - x) * a + x % a] < x);
            out.push(n);
        }
    }
    Ok(out)
}

/// Grey levels: P cells black, N cells with two or more winning replies
/// mid-grey, other N cells white.
pub fn plot_shades(grid: &PNGrid) -> Result<Vec<u8>> {
    let reach = p_reach_counts(grid)?;
    Ok(reach
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            if grid.cells().get(i) {
                SHADE_P
            } else if r >= 2 {
                SHADE_MULTI_REACH
            } else {
                SHADE_N
            }
        })
        .collect())
}

/// Binary PGM (P5), 8-bit.
pub fn write_pgm<W: Write>(grid: &PNGrid, mut out: W) -> Result<()> {
    let shades = plot_shades(grid)?;
    let w = grid.bound().coords()[0] as usize;
    let h = shades.len() / w;
    let io = |e: io::Error| Error::InvalidSpec(format!("write failed: {e}"));
    write!(out, "P5\n{w} {h}\n255\n").map_err(io)?;
    for row in shades.chunks(w).rev() {
        out.write_all(row).map_err(io)?;
    }
    debug_assert_eq!(h * w, shades.len());
    Ok(())
}

/// SVG scatter of the P cells, one unit square each.
pub fn write_svg<W: Write>(grid: &PNGrid, mut out: W) -> Result<()> {
    if grid.dimension() != 2 {
        return Err(Error::NotTwoDimensional(grid.dimension()));
    }
    let (w, h) = (grid.bound().coords()[0], grid.bound().coords()[1]);
    let io = |e: io::Error| Error::InvalidSpec(format!("write failed: {e}"));
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    )
    .map_err(io)?;
    writeln!(out, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>").map_err(io)?;
    writeln!(out, "<g fill=\"#08306b\">").map_err(io)?;
    for i in grid.cells().iter_ones() {
        let (x, y) = (i as u64 % w, i as u64 / w);
        writeln!(out, "<rect x=\"{x}\" y=\"{}\" width=\"1\" height=\"1\"/>", h - 1 - y).map_err(io)?;
    }
    writeln!(out, "</g>\n</svg>").map_err(io)?;
    Ok(())
}
