use proptest::prelude::*;

use wythoff::classical;
use wythoff::cyclic::{self, base_difference_table, double_table};
use wythoff::game::{apply_move, legal_moves, predecessors_reached, GameSpec, Move, MoveVector, Position};
use wythoff::general;
use wythoff::nim::{decompose, BasisMatrix};
use wythoff::oracle::{self, classify_box, classify_box_generic};

fn grid2(a: u64, n: u64) -> oracle::PNGrid {
    classify_box(&GameSpec::wythoff(a).unwrap(), &Position::pair(n, n)).unwrap()
}

#[test]
fn predecessors_invert_apply_move_exhaustively() {
    let v = |d: &[u64]| MoveVector::new(d.to_vec()).unwrap();
    let specs = [
        GameSpec::wythoff(1).unwrap(),
        GameSpec::wythoff(3).unwrap(),
        GameSpec::new(2, vec![v(&[1, 0]), v(&[1, 2])]).unwrap(),
    ];
    let corner = Position::pair(20, 20);
    for spec in &specs {
        // brute force: every q in the box, every legal move
        let mut reached: std::collections::HashMap<Position, Vec<Position>> = Default::default();
        for qx in 0..=20 {
            for qy in 0..=20 {
                let q = Position::pair(qx, qy);
                for m in legal_moves(&q, spec) {
                    let p = apply_move(&q, m, spec).unwrap();
                    reached.entry(p).or_default().push(q.clone());
                }
            }
        }
        for px in 0..=20 {
            for py in 0..=20 {
                let p = Position::pair(px, py);
                let mut expected = reached.remove(&p).unwrap_or_default();
                expected.sort();
                expected.dedup();
                assert_eq!(predecessors_reached(&p, spec, &corner), expected, "{p}");
            }
        }
    }
}

proptest! {
    #[test]
    fn apply_move_never_increases(x in 0u64..200, y in 0u64..200, a in 1u64..9, idx in 0usize..3, k in 1u64..50) {
        let spec = GameSpec::wythoff(a).unwrap();
        let p = Position::pair(x, y);
        if let Ok(q) = apply_move(&p, Move::new(idx, k).unwrap(), &spec) {
            prop_assert!(q.coords().iter().zip(p.coords()).all(|(a, b)| a <= b));
            prop_assert!(q != p);
        }
    }

    #[test]
    fn apply_move_commutes_with_swap(x in 0u64..100, y in 0u64..100, a in 1u64..6, idx in 0usize..3, k in 1u64..20) {
        let spec = GameSpec::wythoff(a).unwrap();
        let p = Position::pair(x, y);
        let mirrored_idx = [1, 0, 2][idx];
        let direct = apply_move(&p, Move::new(idx, k).unwrap(), &spec).map(|q| q.swapped());
        let mirrored = apply_move(&p.swapped(), Move::new(mirrored_idx, k).unwrap(), &spec);
        prop_assert_eq!(direct, mirrored);
    }

    #[test]
    fn decompose_tracks_moves(c0 in 0u64..20, c1 in 0u64..20, c2 in 0u64..20, which in 0usize..3, k in 1u64..5) {
        let cols = vec![vec![0, 2, 0], vec![3, 0, 0], vec![1, 1, 1]];
        let basis = BasisMatrix::new(cols.clone()).unwrap();
        let spec = basis.game_spec().unwrap();
        let coeffs = [c0, c1, c2];
        let p = Position::new((0..3).map(|r| (0..3).map(|c| cols[c][r] as u64 * coeffs[c]).sum()).collect());
        prop_assert_eq!(decompose(&p, &basis).unwrap(), coeffs.to_vec());
        if let Ok(q) = apply_move(&p, Move::new(which, k).unwrap(), &spec) {
            let mut expected = coeffs.to_vec();
            if expected[which] >= k {
                expected[which] -= k;
                prop_assert_eq!(decompose(&q, &basis).unwrap(), expected);
            }
        }
    }
}

#[test]
fn oracle_fixed_point_rescan() {
    for a in [1, 2, 3, 4, 5, 8] {
        assert!(grid2(a, 64).rescan_violations().is_empty(), "a={a}");
    }
    let g3 = classify_box(&GameSpec::wythoff_3d(), &Position::new(vec![16, 16, 16])).unwrap();
    assert!(g3.rescan_violations().is_empty());
}

#[test]
fn oracle_fast_path_equals_generic() {
    for a in [1, 2, 3, 4, 5, 8] {
        let spec = GameSpec::wythoff(a).unwrap();
        let bound = Position::pair(128, 128);
        assert_eq!(
            classify_box(&spec, &bound).unwrap(),
            classify_box_generic(&spec, &bound).unwrap(),
            "a={a}"
        );
    }
}

#[test]
fn oracle_line_structure() {
    for a in [1, 2, 3, 6] {
        let g = grid2(a, 200);
        let cells: Vec<(u64, u64)> = g.p_cells().iter().map(|p| (p.coords()[0], p.coords()[1])).collect();
        let mut rows = std::collections::HashSet::new();
        let mut cols = std::collections::HashSet::new();
        let mut lines = std::collections::HashSet::new();
        for &(x, y) in &cells {
            assert!(rows.insert(y) && cols.insert(x), "a={a} ({x},{y})");
            assert!(lines.insert((y as i64 - x as i64, x % a)), "a={a} ({x},{y})");
            assert_eq!(g.is_p(&[y, x]), Some(true));
        }
    }
}

#[test]
fn classical_closed_form_equals_oracle() {
    let g = grid2(1, 500);
    let mut expected: Vec<(u64, u64)> = classical::cold_pairs()
        .take_while(|c| c.lower < 500)
        .flat_map(|c| [(c.lower, c.upper), (c.upper, c.lower)])
        .filter(|&(x, y)| x < 500 && y < 500)
        .collect();
    expected.sort_unstable();
    expected.dedup();
    let mut got: Vec<(u64, u64)> = g.p_cells().iter().map(|p| (p.coords()[0], p.coords()[1])).collect();
    got.sort_unstable();
    assert_eq!(got, expected);
    for x in 0..500 {
        for y in 0..500 {
            assert_eq!(classical::is_cold(x, y), g.is_p(&[x, y]).unwrap());
        }
    }
}

#[test]
fn doubling_agrees_with_oracle_tables() {
    for a in [1u64, 2, 4] {
        let doubled = double_table(&base_difference_table(a).unwrap()).unwrap();
        assert_eq!(doubled, base_difference_table(2 * a).unwrap());
        let n = (4 * a * a) as usize;
        assert_eq!(doubled.values(), &oracle::oracle_differences(2 * a, n).unwrap()[..], "a={a}");
    }
}

#[test]
fn stream_matches_oracle_at_512() {
    for a in [1u64, 2, 4] {
        let pairs = cyclic::PPositionStream::new(a).unwrap().take_while(|p| p.p < 512).map(|p| (p.p, p.q));
        let r = general::compare_with_oracle(a, 512, pairs).unwrap();
        assert!(r.passed(), "a={a}: {r:?}");
    }
}

#[test]
fn stream_uses_every_integer_once() {
    for a in [2u64, 4, 8] {
        let pairs: Vec<_> = cyclic::stream_p_positions(a, 20_000).unwrap().collect();
        let max = pairs.iter().map(|p| p.p.max(p.q)).max().unwrap() as usize;
        let mut seen = vec![0u8; max + 1];
        for p in &pairs {
            seen[p.p as usize] += 1;
            if p.q != p.p {
                seen[p.q as usize] += 1;
            }
        }
        // mirrors inside the first block list each value twice (once per orientation)
        let block = (a * a) as usize;
        let horizon = pairs.last().unwrap().p as usize;
        for (v, &c) in seen.iter().enumerate().take(horizon).skip(block) {
            assert_eq!(c, 1, "a={a} value {v}");
        }
        assert!(seen[..block].iter().all(|&c| c == 2 || c == 1));
    }
}

#[test]
fn stream_pairs_are_mutually_unreachable() {
    for a in [2u64, 4, 8] {
        let pairs: Vec<_> = cyclic::stream_p_positions(a, 4000).unwrap().collect();
        let mut keys = std::collections::HashSet::new();
        for p in &pairs {
            if p.q >= p.p {
                assert!(keys.insert((p.q - p.p, p.p % a)), "a={a} {p:?}");
            }
        }
    }
}

#[test]
fn general_matches_cyclic_for_powers_of_two() {
    for b in [2u64, 4] {
        let g = general::generate_bb(b, 5000).unwrap().pairs;
        let s: Vec<(u64, u64)> = cyclic::stream_p_positions(b, 6000)
            .unwrap()
            .filter(|p| p.p <= p.q)
            .map(|p| (p.p, p.q))
            .take(5000)
            .collect();
        assert_eq!(g, s, "b={b}");
    }
}
