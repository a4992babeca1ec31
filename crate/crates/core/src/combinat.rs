//! Small combinatorial helpers.

use num_bigint::BigInt;
use num_traits::One;

/// All perfect matchings of `items`; each pairs the first remaining item with
/// a later one, so pairs are ordered as in the input.
pub fn perfect_matchings<T: Copy>(items: &[T]) -> Vec<Vec<(T, T)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    if items.len() % 2 == 1 {
        return Vec::new();
    }
    let first = items[0];
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<T> = items[1..].iter().enumerate().filter(|&(i, _)| i + 1 != k).map(|(_, &x)| x).collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, (first, items[k]));
            out.push(m);
        }
    }
    out
}

/// `(n-1)!!` for even `n`: the number of perfect matchings of `n` items.
pub fn matching_count(n: usize) -> BigInt {
    (1..n).step_by(2).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `2^{L/2} (L/2)!`: ordered permutations of `L` items per perfect matching.
pub fn matching_multiplicity(l: usize) -> BigInt {
    let half = l / 2;
    (BigInt::one() << half) * factorial(half)
}

/// True if the permutation (a list of distinct comparable values) is odd.
pub fn is_odd_permutation<T: Ord>(perm: &[T]) -> bool {
    let mut odd = false;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                odd = !odd;
            }
        }
    }
    odd
}
