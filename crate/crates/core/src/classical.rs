//! Classical `(1,1)` Wythoff: the cold positions are `(⌊kφ⌋, ⌊kφ²⌋)` and
//! their mirrors.
//!
//! φ is never touched as a float. `⌊kφ⌋ = ⌊(k + √(5k²)) / 2⌋`, and since `k`
//! is an integer the inner root may be floored first, so an exact integer
//! square root gives the exact answer for every `k < 2^62`.

/// `(⌊kφ⌋, ⌊kφ²⌋)`; note `upper = lower + k` because φ² = φ + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GoldenPair {
    pub k: u64,
    pub lower: u64,
    pub upper: u64,
}

/// Exact `⌊k·φ⌋`.
pub fn floor_k_phi(k: u64) -> u64 {
    assert!(k < 1 << 62, "k too large for exact evaluation");
    let k = u128::from(k);
    ((k + (5 * k * k).isqrt()) / 2) as u64
}

/// The `k`-th cold pair of the classical game.
pub fn cold_pair(k: u64) -> GoldenPair {
    let lower = floor_k_phi(k);
    GoldenPair {
        k,
        lower,
        upper: lower + k,
    }
}

/// Membership test for classical cold positions, either orientation.
pub fn is_cold(x: u64, y: u64) -> bool {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    cold_pair(hi - lo).lower == lo
}

/// Cold pairs `k = 0, 1, 2, ...`.
pub fn cold_pairs() -> impl Iterator<Item = GoldenPair> {
    (0..).map(cold_pair)
}

/// First `n` in `1..=n_max` that is not covered by exactly one of the lower
/// sequence `⌊kφ⌋` and the upper sequence `⌊kφ²⌋` (`k >= 1`), or `None` when
/// the two sequences partition the range.
pub fn beatty_partition_witness(n_max: u64) -> Option<u64> {
    let mut k_lo = 1u64;
    let mut k_hi = 1u64;
    let mut lo = floor_k_phi(k_lo);
    let mut hi = cold_pair(k_hi).upper;
    for n in 1..=n_max {
        let in_lo = lo == n;
        let in_hi = hi == n;
        if in_lo == in_hi {
            return Some(n);
        }
        if in_lo {
            k_lo += 1;
            lo = floor_k_phi(k_lo);
        } else {
            k_hi += 1;
            hi = cold_pair(k_hi).upper;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `n = ⌊kφ⌋` iff `(2n - k)² <= 5k² < (2n + 2 - k)²`; squares only, no roots.
    fn brackets_k_phi(k: u64, n: u64) -> bool {
        let (k, n) = (i128::from(k), i128::from(n));
        let lo = 2 * n - k;
        let hi = 2 * n + 2 - k;
        lo >= 0 && lo * lo <= 5 * k * k && 5 * k * k < hi * hi
    }

    #[test]
    fn floor_examples() {
        assert_eq!(floor_k_phi(0), 0);
        assert_eq!(floor_k_phi(1), 1);
        assert_eq!(floor_k_phi(4), 6);
    }

    #[test]
    fn cold_pair_examples() {
        let p = cold_pair(1);
        assert_eq!((p.lower, p.upper), (1, 2));
        let p = cold_pair(0);
        assert_eq!((p.lower, p.upper), (0, 0));
        let p = cold_pair(3);
        assert_eq!((p.lower, p.upper), (4, 7));
    }

    #[test]
    fn is_cold_examples() {
        assert!(is_cold(2, 1));
        assert!(is_cold(3, 5));
        assert!(!is_cold(4, 6));
        assert!(is_cold(0, 0));
        assert!(!is_cold(1, 1));
    }

    #[test]
    fn exact_against_bracket_and_float() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for k in 0..=1_000_000u64 {
            let n = floor_k_phi(k);
            assert!(brackets_k_phi(k, n), "k={k}");
            assert_eq!(n, (k as f64 * phi).floor() as u64, "k={k}");
        }
    }

    #[test]
    fn exact_at_large_k() {
        for k in [1u64 << 40, (1 << 61) + 12345, (1 << 62) - 1] {
            assert!(brackets_k_phi(k, floor_k_phi(k)), "k={k}");
        }
    }

    #[test]
    fn beatty_partition_small() {
        assert_eq!(beatty_partition_witness(100_000), None);
    }

    #[test]
    fn differences_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for p in cold_pairs().take(10_000) {
            assert!(p.lower <= p.upper);
            assert!(seen.insert(p.upper - p.lower));
        }
    }
}
