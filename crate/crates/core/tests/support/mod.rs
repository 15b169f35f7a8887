//! Independent oracles shared by integration tests: a direct evaluation of
//! the bimodule axioms, the hand-derived equations for `[x_i,x_j]` over the
//! simple symmetric module, and an integer brute-force checker for the
//! two-dimensional case.

#![allow(dead_code)]

use std::collections::BTreeMap;

use superalg::algebra::{BimoduleSpec, Element};
use superalg::linalg::{RowSpace, Scalar, SparseVec};

/// Evaluates all three axioms directly from the action matrices and the
/// sl2 table, returning (instances checked, instances failing).
pub fn direct_axiom_count(spec: &BimoduleSpec) -> (usize, usize) {
    let even = spec.even();
    let g = even.dim();
    let m = spec.dim();
    let right = |v: &Element, a: &Element| spec.act_right_by(v, a);
    let left = |a: &Element, v: &Element| spec.act_left_by(a, v);
    let mut checked = 0;
    let mut failing = 0;
    for i in 0..m {
        let v = Element::basis(m, i);
        for x in 0..g {
            for y in 0..g {
                let (bx, by) = (Element::basis(g, x), Element::basis(g, y));
                let xy = even.product(x, y);
                let one = right(&v, xy)
                    .minus(&right(&right(&v, &bx), &by))
                    .plus(&right(&right(&v, &by), &bx));
                let two = left(&bx, &right(&v, &by))
                    .minus(&right(&left(&bx, &v), &by))
                    .plus(&left(xy, &v));
                let three = left(&bx, &left(&by, &v))
                    .minus(&left(xy, &v))
                    .plus(&right(&left(&bx, &v), &by));
                for r in [one, two, three] {
                    checked += 1;
                    if !r.is_zero() {
                        failing += 1;
                    }
                }
            }
        }
    }
    (checked, failing)
}

/// Rows of the equations obtained from `[g,[x_i,x_j]]` for `g = h, f, e`
/// over the simple symmetric module of highest weight `n`, written against
/// an external unknown index. `index(kind, i, j)` receives `i <= j`.
pub fn hand_system(n: usize, index: impl Fn(char, usize, usize) -> usize, cols: usize) -> RowSpace {
    let n = n as i64;
    // out-of-range symbols vanish
    let var = |kind: char, i: i64, j: i64| -> Option<usize> {
        if i < 0 || j < 0 || i > n || j > n {
            return None;
        }
        let (lo, hi) = (i.min(j) as usize, i.max(j) as usize);
        Some(index(kind, lo, hi))
    };
    let mut space = RowSpace::new(cols);
    let mut push = |terms: Vec<(i64, Option<usize>)>| {
        let mut row = SparseVec::new();
        for (c, v) in terms {
            if let (Some(v), true) = (v, c != 0) {
                let slot = row.entry(v).or_insert_with(Scalar::zero);
                *slot += Scalar::from_int(c);
                if slot.is_zero() {
                    row.remove(&v);
                }
            }
        }
        space.insert(row);
    };
    for i in 0..=n {
        for j in i..=n {
            // from [h,[x_i,x_j]]
            push(vec![(i + j + 1 - n, var('a', i, j))]);
            push(vec![(i + j - 1 - n, var('b', i, j))]);
            push(vec![(i + j - n, var('c', i, j))]);
            // from [f,[x_i,x_j]]
            push(vec![(1, var('a', i + 1, j)), (1, var('a', i, j + 1))]);
            push(vec![
                (1, var('b', i + 1, j)),
                (1, var('b', i, j + 1)),
                (-2, var('c', i, j)),
            ]);
            push(vec![
                (1, var('c', i + 1, j)),
                (1, var('c', i, j + 1)),
                (-1, var('a', i, j)),
            ]);
            // from [e,[x_i,x_j]]
            let wi = i * (n + 1 - i);
            let wj = j * (n + 1 - j);
            push(vec![
                (wi, var('a', i - 1, j)),
                (wj, var('a', i, j - 1)),
                (-2, var('c', i, j)),
            ]);
            push(vec![(wi, var('b', i - 1, j)), (wj, var('b', i, j - 1))]);
            push(vec![
                (wi, var('c', i - 1, j)),
                (wj, var('c', i, j - 1)),
                (-1, var('b', i, j)),
            ]);
        }
    }
    space
}

const D: usize = 5;

/// Structure constants of `sl2 ⊕ V(1)` with the symmetric action, basis
/// `e, f, h, x_0, x_1`, written out from the printed table.
fn base_table() -> [[[i64; D]; D]; D] {
    let mut t = [[[0i64; D]; D]; D];
    let (e, f, h, x0, x1) = (0, 1, 2, 3, 4);
    let mut set = |a: usize, b: usize, c: usize, v: i64| t[a][b][c] = v;
    set(e, h, e, 2);
    set(h, f, f, 2);
    set(e, f, h, 1);
    set(h, e, e, -2);
    set(f, h, f, -2);
    set(f, e, h, -1);
    set(x0, h, x0, 1);
    set(x1, h, x1, -1);
    set(x0, f, x1, 1);
    set(x1, e, x0, -1);
    set(h, x0, x0, -1);
    set(h, x1, x1, 1);
    set(f, x0, x1, -1);
    set(e, x1, x0, 1);
    t
}

/// Parameters in the order `a00 b00 c00 a01 b01 c01 a11 b11 c11`.
fn with_odd(base: &[[[i64; D]; D]; D], p: &[i64; 9]) -> [[[i64; D]; D]; D] {
    let mut t = *base;
    for (pair, (i, j)) in [(3, 3), (3, 4), (4, 4)].into_iter().enumerate() {
        for c in 0..3 {
            t[i][j][c] = p[3 * pair + c];
            t[j][i][c] = p[3 * pair + c];
        }
    }
    t
}

fn mul(t: &[[[i64; D]; D]; D], x: &[i64; D], y: &[i64; D]) -> [i64; D] {
    let mut out = [0i64; D];
    for a in 0..D {
        if x[a] == 0 {
            continue;
        }
        for b in 0..D {
            if y[b] == 0 {
                continue;
            }
            for c in 0..D {
                out[c] += x[a] * y[b] * t[a][b][c];
            }
        }
    }
    out
}

/// Checks the superidentity on triples with at least `min_odd` odd members.
fn satisfies(t: &[[[i64; D]; D]; D], min_odd: usize) -> bool {
    let parity = |i: usize| i64::from(i >= 3);
    let unit = |i: usize| {
        let mut v = [0i64; D];
        v[i] = 1;
        v
    };
    for x in 0..D {
        for y in 0..D {
            for z in 0..D {
                if [x, y, z].iter().filter(|&&i| i >= 3).count() < min_odd {
                    continue;
                }
                let (bx, by, bz) = (unit(x), unit(y), unit(z));
                let lhs = mul(t, &bx, &t[y][z]);
                let first = mul(t, &t[x][y], &bz);
                let second = mul(t, &t[x][z], &by);
                let sign = if parity(y) * parity(z) == 1 { -1 } else { 1 };
                if (0..D).any(|c| lhs[c] != first[c] - sign * second[c]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every odd·odd table with coefficients in `lo..=hi` that makes
/// `sl2 ⊕ V(1)` a Leibniz superalgebra.
pub fn brute_force_n1_1(lo: i64, hi: i64) -> Vec<BTreeMap<String, i64>> {
    let base = base_table();
    let names = [
        "a_0_0", "b_0_0", "c_0_0", "a_0_1", "b_0_1", "c_0_1", "a_1_1", "b_1_1", "c_1_1",
    ];
    let width = (hi - lo + 1) as u64;
    // triples with fewer than two odd members never meet the odd·odd table
    assert!(satisfies(&base, 0));
    let mut found = Vec::new();
    for code in 0..width.pow(9) {
        let mut p = [0i64; 9];
        let mut rest = code;
        for slot in p.iter_mut() {
            *slot = lo + (rest % width) as i64;
            rest /= width;
        }
        if satisfies(&with_odd(&base, &p), 2) {
            found.push(
                names
                    .iter()
                    .zip(p)
                    .filter(|(_, v)| *v != 0)
                    .map(|(n, v)| (n.to_string(), v))
                    .collect(),
            );
        }
    }
    found
}
