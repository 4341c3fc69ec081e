//! Small combinatorial helpers: permutations with signs, binomials, compositions.

use alloc::vec;
use alloc::vec::Vec;

/// All permutations of `0..k` in lexicographic order, paired with their sign.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        out.push((perm.clone(), permutation_sign(&perm)));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Advances `perm` to the next lexicographic permutation; `false` when it wraps.
pub fn next_permutation<T: Ord>(perm: &mut [T]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `n! / prod(parts_i!)`.
pub fn multinomial(parts: &[usize]) -> u128 {
    let n: usize = parts.iter().sum();
    parts.iter().fold(factorial(n), |acc, &p| acc / factorial(p))
}

/// All exponent vectors of length `vars` with total degree exactly `deg`,
/// in descending lexicographic order.
pub fn compositions(vars: usize, deg: usize) -> Vec<Vec<u32>> {
    fn rec(vars: usize, deg: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(deg as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=deg).rev() {
            prefix.push(first as u32);
            rec(vars - 1, deg - first, prefix, out);
            prefix.pop();
        }
    }
    if vars == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(vars, deg, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with at most `parts` parts, padded with zeros, in
/// reverse lexicographic order.
pub fn partitions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rem == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for p in (0..=rem.min(max)).rev() {
            prefix.push(p);
            rec(rem - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, parts, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts_and_signs() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|p| p.1).sum::<i64>(), 0);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        assert_eq!(perms[1], (vec![0, 2, 1], -1));
        assert_eq!(signed_permutations(0).len(), 1);
    }

    #[test]
    fn binomials_and_multinomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(multinomial(&[2, 1]), 3);
        assert_eq!(multinomial(&[2, 2]), 6);
    }

    #[test]
    fn compositions_and_partitions() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(partitions(4, 2), vec![vec![4, 0], vec![3, 1], vec![2, 2]]);
        assert_eq!(partitions(4, 3).len(), 4);
    }
}
