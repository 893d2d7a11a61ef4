//! Brute-force reference implementations, written without the library's
//! algorithms, used to check it.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use unimod_core::oracle::CircuitWitness;
use unimod_core::IntegerMatrix;

/// Number of antichains in the subset lattice of an `n`-set, by testing every
/// family of subsets.
pub fn count_antichains(n: usize) -> usize {
    let subsets = 1usize << n;
    assert!(subsets <= 16, "brute force is only meant for n <= 4");
    (0u64..1 << subsets)
        .filter(|&family| {
            let members: Vec<usize> = (0..subsets).filter(|&s| family >> s & 1 == 1).collect();
            members
                .iter()
                .all(|&a| members.iter().all(|&b| a == b || (a & b != a && a & b != b)))
        })
        .count()
}

fn rational_rows(a: &IntegerMatrix, cols: &[usize]) -> Vec<Vec<BigRational>> {
    (0..a.rows())
        .map(|i| cols.iter().map(|&j| BigRational::from_integer(a.get(i, j).clone())).collect())
        .collect()
}

/// Row echelon form over the rationals; returns the pivot columns.
fn echelon(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_of_columns(a: &IntegerMatrix, cols: &[usize]) -> usize {
    echelon(&mut rational_rows(a, cols)).len()
}

/// The primitive integer kernel vector of a set of columns of corank one.
fn circuit_vector(a: &IntegerMatrix, cols: &[usize]) -> Vec<BigInt> {
    let mut rows = rational_rows(a, cols);
    let pivots = echelon(&mut rows);
    let free = (0..cols.len()).find(|c| !pivots.contains(c)).expect("corank one");
    let mut v = vec![BigRational::zero(); cols.len()];
    v[free] = BigRational::one();
    for (r, &p) in pivots.iter().enumerate() {
        v[p] = -rows[r][free].clone();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    ints.into_iter().map(|x| x / &g).collect()
}

/// Every circuit of the column matroid, as primitive integer vectors on their
/// supports, by testing all column subsets. Only for small matrices.
pub fn all_circuits(a: &IntegerMatrix) -> Vec<(Vec<usize>, Vec<BigInt>)> {
    let n = a.cols();
    assert!(n <= 20, "brute force circuit enumeration on {n} columns");
    let mut dependent_minimal = Vec::new();
    for mask in 1u32..1 << n {
        let cols: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        let r = rank_of_columns(a, &cols);
        if r + 1 != cols.len() {
            continue;
        }
        // minimal: dropping any column leaves an independent set
        if cols.iter().all(|&drop| {
            let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != drop).collect();
            rank_of_columns(a, &rest) == rest.len()
        }) {
            let v = circuit_vector(a, &cols);
            dependent_minimal.push((cols, v));
        }
    }
    dependent_minimal
}

/// Unimodular iff every circuit has entries in `{0, ±1}` (brute force).
pub fn brute_force_unimodular(a: &IntegerMatrix) -> bool {
    all_circuits(a).iter().all(|(_, v)| v.iter().all(|x| x.abs() <= BigInt::one()))
}

/// A witness is a genuine circuit: in the kernel, support minimally dependent,
/// and (if `bad`) with an entry of absolute value at least 2.
pub fn check_witness(a: &IntegerMatrix, w: &CircuitWitness) -> Result<(), String> {
    let v = w.full_vector(a.cols());
    if a.apply(&v).iter().any(|x| !x.is_zero()) {
        return Err(format!("witness {:?} is not in the kernel", w.support));
    }
    let r = rank_of_columns(a, &w.support);
    if r + 1 != w.support.len() {
        return Err(format!("support {:?} has rank {r}", w.support));
    }
    let g = w.vector.iter().fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    if !g.is_one() {
        return Err(format!("witness is not primitive (gcd {g})"));
    }
    if !w.is_bad() {
        return Err("witness has no entry of absolute value 2 or more".into());
    }
    Ok(())
}

/// Flips the sign of every row of `k` whose binary cell has an odd number of
/// second levels, then makes every column nonnegative.
pub fn sign_flip(k: &IntegerMatrix) -> IntegerMatrix {
    let labels = k.row_labels().expect("rows are labeled by cells");
    let mut rows: Vec<Vec<BigInt>> = (0..k.rows())
        .map(|i| {
            let unimod_core::Label::Cell(cell) = &labels[i] else { panic!("row label is not a cell") };
            let odd = cell.iter().filter(|&&x| x == 2).count() % 2 == 1;
            k.row(i).iter().map(|x| if odd { -x } else { x.clone() }).collect()
        })
        .collect();
    for j in 0..k.cols() {
        if rows.iter().any(|r| r[j].is_negative()) {
            for r in rows.iter_mut() {
                r[j] = -&r[j];
            }
        }
    }
    let m = IntegerMatrix::new(k.rows(), k.cols(), rows.into_iter().flatten().collect()).unwrap();
    m.with_labels(k.row_labels().unwrap().to_vec(), k.col_labels().unwrap().to_vec()).unwrap()
}

/// All vectors in `[2, max]^n`.
pub fn level_vectors(n: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (2..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
