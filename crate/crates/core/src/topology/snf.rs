//! Rank and invariant factors of integer matrices.
//!
//! Unit pivots are eliminated first on a sparse `i64` representation; each
//! elimination keeps the Schur complement, which has the same invariant
//! factors apart from one `1`. Whatever remains (no `±1` entry left, or an
//! update that would overflow) goes to a dense big-integer Smith normal form.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank plus the invariant factors greater than one, in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Snf {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

type Row = Vec<(usize, i64)>;

/// `a - f * b` on sorted sparse rows; `None` on overflow.
fn axpy(a: &Row, f: i64, b: &Row) -> Option<Row> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = b[j].1.checked_mul(f)?.checked_neg()?;
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(b[j].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Smith normal form data of the `rows x cols` matrix given by `(row, col, value)`
/// triples. Repeated positions are summed.
pub fn smith(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Snf {
    let mut m: Vec<Row> = vec![Vec::new(); rows];
    for &(r, c, v) in entries {
        m[r].push((c, v));
    }
    for row in &mut m {
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Row = Vec::with_capacity(row.len());
        for &(c, v) in row.iter() {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        *row = merged;
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (r, row) in m.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c].insert(r);
        }
    }
    let mut alive = vec![true; rows];
    let mut rank = 0;

    'outer: loop {
        let mut progressed = false;
        for r in 0..rows {
            if !alive[r] || m[r].is_empty() {
                continue;
            }
            let Some(&(c, p)) = m[r]
                .iter()
                .filter(|e| e.1 == 1 || e.1 == -1)
                .min_by_key(|e| col_rows[e.0].len())
            else {
                continue;
            };
            let pivot_row = m[r].clone();
            let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
            let mut updates = Vec::with_capacity(targets.len());
            for &i in &targets {
                let a = m[i].iter().find(|e| e.0 == c).map(|e| e.1).unwrap_or(0);
                match axpy(&m[i], a * p, &pivot_row) {
                    Some(row) => updates.push((i, row)),
                    None => break 'outer,
                }
            }
            for (i, row) in updates {
                for &(cc, _) in &m[i] {
                    col_rows[cc].remove(&i);
                }
                for &(cc, _) in &row {
                    col_rows[cc].insert(i);
                }
                m[i] = row;
            }
            for &(cc, _) in &pivot_row {
                col_rows[cc].remove(&r);
            }
            // drop row r and column c
            m[r].clear();
            alive[r] = false;
            debug_assert!(col_rows[c].is_empty());
            rank += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    let rest_rows: Vec<usize> = (0..rows).filter(|&r| alive[r] && !m[r].is_empty()).collect();
    if rest_rows.is_empty() {
        return Snf {
            rank,
            torsion: Vec::new(),
        };
    }
    let mut rest_cols: Vec<usize> = rest_rows
        .iter()
        .flat_map(|&r| m[r].iter().map(|e| e.0))
        .collect();
    rest_cols.sort_unstable();
    rest_cols.dedup();
    let mut dense = vec![vec![BigInt::zero(); rest_cols.len()]; rest_rows.len()];
    for (i, &r) in rest_rows.iter().enumerate() {
        for &(c, v) in &m[r] {
            let j = rest_cols.binary_search(&c).unwrap();
            dense[i][j] = BigInt::from(v);
        }
    }
    let diag = dense_diagonal(dense);
    let factors = divisibility_chain(diag);
    Snf {
        rank: rank + factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Diagonalizes by unimodular row and column operations; returns the nonzero
/// diagonal entries (absolute values), not yet in divisibility order.
fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Replaces a diagonal by the equivalent chain `d_1 | d_2 | ...`.
fn divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}
