//! Brute-force reference enumerators. None of them touches the solver: they
//! work on plain integers so that agreement with the search is meaningful.

#![allow(dead_code)]

use num_rational::Ratio;

/// Number of `n`-queens placements, checking every one of the `n^n`
/// row assignments.
pub fn queens_count(n: usize) -> u64 {
    let mut rows = vec![0usize; n];
    let mut count = 0;
    loop {
        let ok = (0..n).all(|i| {
            (i + 1..n).all(|j| rows[i] != rows[j] && rows[i] + j != rows[j] + i && rows[i] + i != rows[j] + j)
        });
        count += ok as u64;
        // odometer increment
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            rows[k] += 1;
            if rows[k] < n {
                break;
            }
            rows[k] = 0;
            k += 1;
        }
    }
}

/// Lexicographic next permutation; `false` after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All 3x3 magic squares (row-major) with the top-left corner smaller than
/// the top-right and bottom-left corners, from all 9! permutations.
pub fn magic3_solutions() -> Vec<Vec<i64>> {
    let mut p: Vec<i64> = (1..=9).collect();
    let mut out = Vec::new();
    loop {
        let s = |a: usize, b: usize, c: usize| p[a] + p[b] + p[c] == 15;
        if s(0, 1, 2) && s(3, 4, 5) && s(6, 7, 8) && s(0, 3, 6) && s(1, 4, 7) && s(2, 5, 8) && s(0, 4, 8) && s(2, 4, 6)
            && p[0] < p[2]
            && p[0] < p[6]
        {
            out.push(p.clone());
        }
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

/// Langford sequences L(k, n) by enumerating every word over 1..=n of
/// length `k*n`.
pub fn langford_sequences(k: usize, n: usize) -> Vec<Vec<usize>> {
    let len = k * n;
    let mut w = vec![1usize; len];
    let mut out = Vec::new();
    loop {
        let ok = (1..=n).all(|v| {
            let pos: Vec<usize> = (0..len).filter(|&i| w[i] == v).collect();
            pos.len() == k && pos.windows(2).all(|p| p[1] - p[0] == v + 1)
        });
        if ok {
            out.push(w.clone());
        }
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            w[i] += 1;
            if w[i] <= n {
                break;
            }
            w[i] = 1;
            i += 1;
        }
    }
}

/// Length of the shortest Golomb ruler with `m` marks: for growing length
/// `l`, tries every set of `m - 2` inner marks from `1..l`.
pub fn golomb_optimum(m: usize) -> i64 {
    fn subsets(from: i64, l: i64, left: usize, marks: &mut Vec<i64>) -> bool {
        if left == 0 {
            marks.push(l);
            let ok = is_golomb(marks);
            marks.pop();
            return ok;
        }
        for v in from..l {
            marks.push(v);
            let ok = subsets(v + 1, l, left - 1, marks);
            marks.pop();
            if ok {
                return true;
            }
        }
        false
    }
    if m < 2 {
        return 0;
    }
    (1..).find(|&l| subsets(1, l, m - 2, &mut vec![0])).unwrap()
}

pub fn is_golomb(marks: &[i64]) -> bool {
    let mut diffs = Vec::new();
    for i in 0..marks.len() {
        for j in i + 1..marks.len() {
            diffs.push(marks[j] - marks[i]);
        }
    }
    diffs.sort_unstable();
    diffs.windows(2).all(|w| w[0] != w[1]) && diffs.iter().all(|&d| d > 0)
}

type Q = Ratio<i64>;

/// All assignments of `n` pairwise distinct values from `lo..=hi` that
/// satisfy every equation `sum(coeffs[i] * x_i) = rhs`.
///
/// Gaussian elimination expresses the pivot variables as affine functions
/// of the free ones; the free variables are then enumerated, checking each
/// pivot variable as soon as everything it depends on is assigned.
pub fn linear_alldiff_solutions(n: usize, lo: i64, hi: i64, equations: &[(Vec<i64>, i64)]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<Q>> = equations
        .iter()
        .map(|(c, r)| c.iter().map(|&a| Q::from_integer(a)).chain([Q::from_integer(*r)]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != Q::from_integer(0)) else { continue };
        rows.swap(r, p);
        let inv = Q::from_integer(1) / rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != Q::from_integer(0) {
                let f = rows[i][col];
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n] != Q::from_integer(0)) {
        return Vec::new();
    }
    let is_pivot: Vec<bool> = (0..n).map(|c| pivots.iter().any(|&(_, pc)| pc == c)).collect();
    let mut free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    // most widely used free variables first, so pivots are fixed early
    let uses = |f: usize| pivots.iter().filter(|&&(row, _)| rows[row][f] != Q::from_integer(0)).count();
    free.sort_by_key(|&f| std::cmp::Reverse(uses(f)));

    // dependents ready after assigning free[..=k]
    let mut ready: Vec<Vec<(usize, usize)>> = vec![Vec::new(); free.len().max(1)];
    for &(row, col) in &pivots {
        let last = free.iter().rposition(|&f| rows[row][f] != Q::from_integer(0)).unwrap_or(0);
        ready[last].push((row, col));
    }

    let mut values = vec![0i64; n];
    let mut used = vec![false; (hi - lo + 1) as usize];
    let mut out = Vec::new();
    enumerate(0, &free, &ready, &rows, n, lo, hi, &mut values, &mut used, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    k: usize,
    free: &[usize],
    ready: &[Vec<(usize, usize)>],
    rows: &[Vec<Q>],
    n: usize,
    lo: i64,
    hi: i64,
    values: &mut [i64],
    used: &mut [bool],
    out: &mut Vec<Vec<i64>>,
) {
    if k == free.len() {
        if free.is_empty() {
            // fully determined system
            let mut placed = Vec::new();
            if place(&ready[0], free, rows, n, lo, hi, values, used, &mut placed) {
                out.push(values.to_vec());
            }
            for v in placed {
                used[(v - lo) as usize] = false;
            }
        } else {
            out.push(values.to_vec());
        }
        return;
    }
    for v in lo..=hi {
        if used[(v - lo) as usize] {
            continue;
        }
        used[(v - lo) as usize] = true;
        values[free[k]] = v;
        let mut placed = Vec::new();
        if place(&ready[k], free, rows, n, lo, hi, values, used, &mut placed)
            && ready[k + 1..].iter().flatten().all(|&(row, _)| reachable(&rows[row], free, k, n, lo, hi, values))
        {
            enumerate(k + 1, free, ready, rows, n, lo, hi, values, used, out);
        }
        for p in placed {
            used[(p - lo) as usize] = false;
        }
        used[(v - lo) as usize] = false;
    }
}

/// Whether a pivot row can still land in `lo..=hi` once `free[k+1..]` are
/// assigned, by interval arithmetic.
fn reachable(row: &[Q], free: &[usize], k: usize, n: usize, lo: i64, hi: i64, values: &[i64]) -> bool {
    let (mut min, mut max) = (row[n], row[n]);
    for (i, &f) in free.iter().enumerate() {
        let a = row[f];
        if i <= k {
            min -= a * Q::from_integer(values[f]);
            max -= a * Q::from_integer(values[f]);
        } else {
            let (x, y) = (a * Q::from_integer(lo), a * Q::from_integer(hi));
            min -= if x > y { x } else { y };
            max -= if x > y { y } else { x };
        }
    }
    min <= Q::from_integer(hi) && max >= Q::from_integer(lo)
}

/// Computes the dependents in `deps`; on success they are marked used and
/// listed in `placed`.
#[allow(clippy::too_many_arguments)]
fn place(
    deps: &[(usize, usize)],
    free: &[usize],
    rows: &[Vec<Q>],
    n: usize,
    lo: i64,
    hi: i64,
    values: &mut [i64],
    used: &mut [bool],
    placed: &mut Vec<i64>,
) -> bool {
    for &(row, col) in deps {
        let mut x = rows[row][n];
        for &f in free {
            x -= rows[row][f] * Q::from_integer(values[f]);
        }
        if !x.is_integer() {
            return false;
        }
        let x = x.to_integer();
        if x < lo || x > hi || used[(x - lo) as usize] {
            return false;
        }
        used[(x - lo) as usize] = true;
        placed.push(x);
        values[col] = x;
    }
    true
}

/// The Alpha word equations as coefficient rows over the 26 letters.
pub fn alpha_equations(words: &[(&str, i64)]) -> Vec<(Vec<i64>, i64)> {
    words
        .iter()
        .map(|(w, total)| {
            let mut c = vec![0i64; 26];
            for b in w.bytes() {
                c[(b - b'a') as usize] += 1;
            }
            (c, *total)
        })
        .collect()
}
