//! Oracles that do not use the library's Macaulay code.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

/// Pascal's triangle, saturating at `u64::MAX`.
pub fn pascal(max_n: usize) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![1u64]];
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let mut row = vec![1u64; n + 1];
        for k in 1..n {
            row[k] = prev[k - 1].saturating_add(prev[k]);
        }
        rows.push(row);
    }
    rows
}

/// Every `d`-binomial expansion with value at most `limit`, grouped by
/// value: tuples `(k_d, ..., k_j)` with `k_d > ... > k_j >= j >= 1`.
pub fn all_expansions(d: usize, limit: u64) -> HashMap<u64, Vec<Vec<u64>>> {
    let table = pascal(limit as usize + d + 1);
    let c = |n: u64, k: usize| -> u64 {
        let n = n as usize;
        if k > n { 0 } else { table[n][k] }
    };
    let mut out: HashMap<u64, Vec<Vec<u64>>> = HashMap::new();
    fn walk(
        i: usize,
        ceiling: u64,
        sum: u64,
        limit: u64,
        prefix: &mut Vec<u64>,
        c: &dyn Fn(u64, usize) -> u64,
        out: &mut HashMap<u64, Vec<Vec<u64>>>,
    ) {
        // choose k_i with i <= k_i < ceiling
        for k in (i as u64)..ceiling {
            let s = sum + c(k, i);
            if s > limit {
                break;
            }
            prefix.push(k);
            out.entry(s).or_default().push(prefix.clone());
            if i > 1 {
                walk(i - 1, k, s, limit, prefix, c, out);
            }
            prefix.pop();
        }
    }
    let mut prefix = Vec::new();
    walk(d, u64::MAX, 0, limit, &mut prefix, &c, &mut out);
    out
}

/// Every Hilbert function `(1, h_1, ..., h_4)` of an artinian monomial
/// quotient in at most 3 variables, by enumerating order ideals degree
/// by degree.
pub fn monomial_hilbert_functions() -> HashSet<Vec<u64>> {
    const MAX_DEG: usize = 4;
    let by_degree: Vec<Vec<[u8; 3]>> = (0..=MAX_DEG)
        .map(|d| {
            let mut v = Vec::new();
            for a in 0..=d {
                for b in 0..=d - a {
                    v.push([a as u8, b as u8, (d - a - b) as u8]);
                }
            }
            v
        })
        .collect();
    let allowed = |d: usize, set: u32| -> u32 {
        let mut mask = 0u32;
        for (j, m) in by_degree[d + 1].iter().enumerate() {
            let ok = (0..3).filter(|&v| m[v] > 0).all(|v| {
                let mut div = *m;
                div[v] -= 1;
                let idx = by_degree[d].iter().position(|x| *x == div).unwrap();
                set & (1 << idx) != 0
            });
            if ok {
                mask |= 1 << j;
            }
        }
        mask
    };
    fn submasks(mask: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut sub = mask;
        loop {
            out.push(sub);
            if sub == 0 {
                return out;
            }
            sub = (sub - 1) & mask;
        }
    }
    let mut out = HashSet::new();
    for s1 in submasks(0b111) {
        for s2 in submasks(allowed(1, s1)) {
            for s3 in submasks(allowed(2, s2)) {
                let top = allowed(3, s3).count_ones();
                for h4 in 0..=top {
                    out.insert(vec![
                        1,
                        u64::from(s1.count_ones()),
                        u64::from(s2.count_ones()),
                        u64::from(s3.count_ones()),
                        u64::from(h4),
                    ]);
                }
            }
        }
    }
    out
}

/// Drops trailing zeros, the way h-vectors are stored.
pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// The Gorenstein cells `(r, h2)` of the known classifications.
pub fn expected_gorenstein(e: usize, max_r: u64) -> HashSet<(u64, u64)> {
    let mut out = HashSet::new();
    for r in 1..=max_r {
        for h2 in r..=r * (r + 1) / 2 {
            out.insert((r, h2));
        }
    }
    match e {
        4 => out.extend((13..=max_r.min(17)).map(|r| (r, r - 1))),
        5 => {
            out.extend((17..=max_r.min(25)).map(|r| (r, r - 1)));
            out.extend((18..=max_r.min(25)).map(|r| (r, r - 2)));
        }
        _ => unreachable!(),
    }
    out
}
