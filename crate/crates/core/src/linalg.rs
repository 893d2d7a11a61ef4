//! Exact integer linear algebra shared by the matrix and oracle modules.
//!
//! Everything is fraction-free. Routines are generic over [`Num`] so the hot
//! paths can run on checked `i128` and restart on `BigInt` after an overflow.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type Checked<T> = Result<T, Overflow>;

pub(crate) trait Num: Clone + Eq + Ord + Hash + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(b: &BigInt) -> Checked<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Checked<Self>;
    fn sub(&self, o: &Self) -> Checked<Self>;
    fn mul(&self, o: &Self) -> Checked<Self>;
    /// Exact division; the caller guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Checked<Self>;
    fn neg(&self) -> Checked<Self>;
    /// Non-negative gcd.
    fn gcd(&self, o: &Self) -> Checked<Self>;

    fn abs(&self) -> Checked<Self> {
        if self.is_negative() {
            self.neg()
        } else {
            Ok(self.clone())
        }
    }

    fn abs_eq(&self, o: &Self) -> bool {
        self == o || self.neg().is_ok_and(|n| &n == o)
    }
}

impl Num for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(b: &BigInt) -> Checked<Self> {
        b.to_i128().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn div_exact(&self, o: &Self) -> Checked<Self> {
        self.checked_div(*o).ok_or(Overflow)
    }
    fn neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn gcd(&self, o: &Self) -> Checked<Self> {
        let (mut a, mut b) = (self.checked_abs().ok_or(Overflow)?, o.checked_abs().ok_or(Overflow)?);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Ok(a)
    }
}

impl Num for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_big(b: &BigInt) -> Checked<Self> {
        Ok(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        Ok(self * o)
    }
    fn div_exact(&self, o: &Self) -> Checked<Self> {
        Ok(self / o)
    }
    fn neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn gcd(&self, o: &Self) -> Checked<Self> {
        Ok(Integer::gcd(self, o))
    }
}

/// Dense row-major matrix over a [`Num`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Num> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_big(rows: usize, cols: usize, data: &[BigInt]) -> Checked<Self> {
        Ok(Mat {
            rows,
            cols,
            data: data.iter().map(T::from_big).collect::<Checked<_>>()?,
        })
    }

    #[cfg(test)]
    pub fn to_big(&self) -> Vec<BigInt> {
        self.data.iter().map(Num::to_big).collect()
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.at(i, j).clone());
            }
        }
        Mat {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Mat {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }
}

/// Result of fraction-free Gauss-Jordan elimination.
///
/// With `B` the chosen basis columns, `t = d · A_B⁻¹ · A` restricted to the
/// independent rows, so `t` restricted to `B` is `d · I` and every other entry
/// is a signed maximal minor of `A` (one basis column swapped for another).
#[derive(Clone, Debug)]
pub(crate) struct Tableau<T> {
    /// Basis column pivoted in each row of `t`.
    pub basis: Vec<usize>,
    /// Original rows kept (independent), in order.
    pub rows: Vec<usize>,
    pub t: Mat<T>,
    pub d: T,
}

impl<T: Num> Tableau<T> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer-preserving pivot on entry `(i, j)`, which must be nonzero.
    pub fn pivot(&mut self, i: usize, j: usize) -> Checked<()> {
        pivot_in_place(&mut self.t, &mut self.d, i, j)?;
        self.basis[i] = j;
        Ok(())
    }

    /// Fundamental circuit of the non-basic column `j`, as full-length vector
    /// (not yet normalized).
    pub fn fundamental_circuit(&self, j: usize) -> Checked<Vec<T>> {
        let mut u = vec![T::zero(); self.t.cols];
        u[j] = self.d.clone();
        for (l, &b) in self.basis.iter().enumerate() {
            u[b] = self.t.at(l, j).neg()?;
        }
        Ok(u)
    }

    pub fn is_basic(&self, j: usize) -> bool {
        self.basis.contains(&j)
    }
}

fn pivot_in_place<T: Num>(t: &mut Mat<T>, d: &mut T, i: usize, j: usize) -> Checked<()> {
    let p = t.at(i, j).clone();
    debug_assert!(!p.is_zero());
    let cols = t.cols;
    let pivot_row: Vec<T> = t.row(i).to_vec();
    for l in 0..t.rows {
        if l == i {
            continue;
        }
        let f = t.at(l, j).clone();
        let row = &mut t.data[l * cols..(l + 1) * cols];
        if f.is_zero() {
            if p != *d {
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x = x.mul(&p)?.div_exact(d)?;
                    }
                }
            }
            continue;
        }
        for (x, pr) in row.iter_mut().zip(&pivot_row) {
            let v = x.mul(&p)?.sub(&f.mul(pr)?)?;
            *x = v.div_exact(d)?;
        }
    }
    *d = p;
    Ok(())
}

/// Fraction-free Gauss-Jordan elimination. Rows are processed in order; each
/// independent row pivots on its first nonzero column, dependent rows are
/// dropped. `d` is 1 for a zero matrix.
pub(crate) fn gauss_jordan<T: Num>(a: &Mat<T>) -> Checked<Tableau<T>> {
    let mut t = a.clone();
    let mut d = T::one();
    let mut basis = Vec::new();
    let mut kept = Vec::new();
    for i in 0..t.rows {
        if let Some(j) = (0..t.cols).find(|&j| !t.at(i, j).is_zero()) {
            pivot_in_place(&mut t, &mut d, i, j)?;
            basis.push(j);
            kept.push(i);
        }
    }
    let t = t.select_rows(&kept);
    Ok(Tableau {
        basis,
        rows: kept,
        t,
        d,
    })
}

pub(crate) fn rank<T: Num>(a: &Mat<T>) -> Checked<usize> {
    Ok(gauss_jordan(a)?.rank())
}

/// Determinant of a square matrix.
pub(crate) fn determinant<T: Num>(a: &Mat<T>) -> Checked<T> {
    assert_eq!(a.rows, a.cols, "determinant of a non-square matrix");
    if a.rows == 0 {
        return Ok(T::one());
    }
    let tab = gauss_jordan(a)?;
    if tab.rank() < a.rows {
        return Ok(T::zero());
    }
    // d is the determinant of A with columns reordered as `basis`.
    if permutation_is_odd(&tab.basis) {
        tab.d.neg()
    } else {
        Ok(tab.d)
    }
}

pub(crate) fn permutation_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Divides by the gcd of the entries and makes the first nonzero entry positive.
pub(crate) fn primitive<T: Num>(v: &mut [T]) -> Checked<()> {
    let mut g = T::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x)?;
        }
    }
    if g.is_zero() {
        return Ok(());
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if negate { g.neg()? } else { g };
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = x.div_exact(&g)?;
        }
    }
    Ok(())
}

/// Kernel vector of an `r × (r + 1)` matrix of rank `r` via the tableau.
pub(crate) fn kernel_vector<T: Num>(a: &Mat<T>) -> Checked<Vec<T>> {
    let tab = gauss_jordan(a)?;
    let free = (0..a.cols)
        .find(|j| !tab.is_basic(*j))
        .expect("one column is non-basic");
    let mut u = tab.fundamental_circuit(free)?;
    primitive(&mut u)?;
    Ok(u)
}

/// Runs `f` on `i128` and falls back to `BigInt` on overflow.
pub(crate) fn with_fallback<R>(
    f128: impl FnOnce() -> Checked<R>,
    fbig: impl FnOnce() -> Checked<R>,
) -> R {
    match f128() {
        Ok(r) => r,
        Err(Overflow) => fbig().expect("BigInt arithmetic cannot overflow"),
    }
}

pub(crate) use hermite::kernel_lattice_basis;

mod hermite {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};

    /// Saturated lattice basis of `{x ∈ ℤⁿ : A x = 0}` in reduced row echelon
    /// (Hermite) form, one vector per row.
    ///
    /// Row-reduces `[Aᵀ | I]` with unimodular integer row operations; the rows whose
    /// `Aᵀ` part vanishes are a lattice basis of the kernel. The basis is then put
    /// into Hermite normal form, which is unique for the lattice.
    pub(crate) fn kernel_lattice_basis(rows: usize, cols: usize, a: &[BigInt]) -> Vec<Vec<BigInt>> {
        let n = cols;
        let width = rows + n;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut r = vec![BigInt::zero(); width];
                for i in 0..rows {
                    r[i] = a[i * cols + j].clone();
                }
                r[rows + j] = BigInt::one();
                r
            })
            .collect();
        let top = echelon_hermite(&mut m, 0..rows);
        let mut kernel: Vec<Vec<BigInt>> = m.drain(top..).map(|r| r[rows..].to_vec()).collect();
        let k = echelon_hermite(&mut kernel, 0..n);
        kernel.truncate(k);
        kernel
    }

    /// Integer row echelon form over the given column range using Euclidean
    /// row operations, with entries above each pivot reduced into `[0, pivot)`.
    /// Returns the number of nonzero rows (restricted to the range), which come first.
    fn echelon_hermite(m: &mut [Vec<BigInt>], cols: std::ops::Range<usize>) -> usize {
        let mut top = 0;
        let mut pivots = Vec::new();
        for c in cols {
            if top == m.len() {
                break;
            }
            loop {
                // Smallest nonzero |entry| in column c at or below `top` becomes the pivot.
                let best = (top..m.len())
                    .filter(|&i| !m[i][c].is_zero())
                    .min_by(|&x, &y| m[x][c].abs().cmp(&m[y][c].abs()));
                let Some(p) = best else { break };
                m.swap(top, p);
                let mut done = true;
                for i in top + 1..m.len() {
                    if m[i][c].is_zero() {
                        continue;
                    }
                    let q = m[i][c].div_floor(&m[top][c]);
                    let (head, tail) = m.split_at_mut(i);
                    sub_multiple(&mut tail[0], &head[top], &q);
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if top < m.len() && !m[top][c].is_zero() {
                if m[top][c].is_negative() {
                    for x in m[top].iter_mut() {
                        *x = -&*x;
                    }
                }
                pivots.push((top, c));
                top += 1;
            }
        }
        for &(r, c) in &pivots {
            for i in 0..r {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let (head, tail) = m.split_at_mut(r);
                sub_multiple(&mut head[i], &tail[0], &q);
            }
        }
        top
    }

    fn sub_multiple(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for (t, s) in target.iter_mut().zip(source) {
            if !s.is_zero() {
                *t -= q * s;
            }
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Mat<i128> {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().map(|&x| x as i128)).collect(),
        }
    }

    fn cofactor_det(m: &[Vec<i128>]) -> i128 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![2, 3, 1], vec![0, 1, 4], vec![5, 6, 0]],
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]],
            vec![vec![1, 2], vec![2, 4]],
            vec![vec![0, 2, 0, 1], vec![1, 0, 3, 0], vec![0, 1, 1, 1], vec![2, 0, 0, 1]],
        ];
        for c in cases {
            let rows: Vec<&[i64]> = c.iter().map(|r| r.as_slice()).collect();
            let m = mat(&rows);
            let expected = cofactor_det(
                &c.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>(),
            );
            assert_eq!(determinant(&m).unwrap(), expected, "{c:?}");
            let big: Mat<BigInt> = Mat::from_big(m.rows, m.cols, &m.to_big()).unwrap();
            assert_eq!(determinant(&big).unwrap(), BigInt::from(expected));
        }
    }

    #[test]
    fn tableau_gives_kernel_vectors() {
        let m = mat(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(kernel_vector(&m).unwrap(), vec![1, 1, -1]);
        let m = mat(&[&[2, 1, 0], &[0, 1, 3]]);
        let u = kernel_vector(&m).unwrap();
        assert_eq!(u, vec![3, -6, 2]);
    }

    #[test]
    fn rank_and_dependent_rows() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let tab = gauss_jordan(&m).unwrap();
        assert_eq!(tab.rank(), 2);
        assert_eq!(tab.rows, vec![0, 2]);
    }

    #[test]
    fn pivoting_keeps_minors() {
        let m = mat(&[&[1, 1, 2, 0], &[0, 1, 3, 1]]);
        let mut tab = gauss_jordan(&m).unwrap();
        tab.pivot(1, 2).unwrap();
        // basis now {0, 2}: det [[1,2],[0,3]] = 3
        assert_eq!(tab.d.abs(), 3);
        assert_eq!(*tab.t.at(0, 0), tab.d);
        assert_eq!(*tab.t.at(1, 2), tab.d);
        assert_eq!(*tab.t.at(0, 2), 0);
    }

    #[test]
    fn lattice_kernel_is_saturated() {
        // x1 + 2 x2 = 0 over Z: basis (2, -1) (or its negative)
        let a = vec![BigInt::from(1), BigInt::from(2)];
        let k = kernel_lattice_basis(1, 2, &a);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![BigInt::from(2), BigInt::from(-1)]);
        // 2 x1 + 2 x2 = 0: (1, -1), not (2, -2)
        let a = vec![BigInt::from(2), BigInt::from(2)];
        let k = kernel_lattice_basis(1, 2, &a);
        assert_eq!(k[0], vec![BigInt::from(1), BigInt::from(-1)]);
        let id = vec![BigInt::from(1), BigInt::from(0), BigInt::from(0), BigInt::from(1)];
        assert!(kernel_lattice_basis(2, 2, &id).is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(64, 32), 1832624140942590534);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn i128_overflow_is_reported() {
        let big = i128::MAX;
        assert!(big.mul(&2).is_err());
        assert!(i128::MIN.neg().is_err());
    }
}
