use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::IntegerMatrix;
use crate::error::{Error, Result};
use crate::linalg::{self, binomial, Mat};

/// Largest number of column subsets [`complementary_minor_ratio`] will visit.
pub const MINOR_RATIO_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorRatioReport {
    /// Common ratio `|det A_S| / |det B_{S^c}|`, if any nonzero pair exists.
    pub lambda: Option<BigRational>,
    /// Column subsets `S` where the ratio fails (including one side vanishing
    /// without the other).
    pub violations: Vec<Vec<usize>>,
    pub subsets_checked: u64,
}

impl MinorRatioReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn det_of_columns(m: &Mat<BigInt>, cols: &[usize]) -> BigInt {
    linalg::determinant(&m.select_columns(cols)).expect("BigInt arithmetic cannot overflow")
}

/// For `A` (`r × n`, rank `r`) and `B` (`(n−r) × n`, rank `n−r`) with
/// `A·Bᵀ = 0`, checks `det(A_S) = ±λ·det(B_{[n]∖S})` over all `r`-subsets `S`
/// with a single `λ`.
pub fn complementary_minor_ratio(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<MinorRatioReport> {
    let n = a.cols();
    let r = a.rows();
    if b.cols() != n || b.rows() + r != n {
        return Err(Error::domain(format!(
            "shapes {}x{} and {}x{} are not complementary",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.rank() != r || b.rank() != b.rows() {
        return Err(Error::domain("both matrices must have full row rank"));
    }
    if !a.mul(&b.transpose())?.is_zero() {
        return Err(Error::domain("A·Bᵀ is not zero"));
    }
    let total = binomial(n, r);
    if total > MINOR_RATIO_CAP {
        return Err(Error::Size {
            what: "complementary minor check".into(),
            required: total,
            cap: MINOR_RATIO_CAP,
            hint: "use a smaller matrix".into(),
        });
    }
    let am: Mat<BigInt> = a.to_mat().expect("BigInt conversion is exact");
    let bm: Mat<BigInt> = b.to_mat().expect("BigInt conversion is exact");
    let mut lambda: Option<BigRational> = None;
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for_each_subset(n, r, |s| {
        checked += 1;
        let rest: Vec<usize> = (0..n).filter(|j| !s.contains(j)).collect();
        let da = det_of_columns(&am, s);
        let db = det_of_columns(&bm, &rest);
        match (da.is_zero(), db.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let ratio = BigRational::new(da.abs(), db.abs());
                match &lambda {
                    None => lambda = Some(ratio),
                    Some(l) if *l == ratio => {}
                    Some(_) => violations.push(s.to_vec()),
                }
            }
            _ => violations.push(s.to_vec()),
        }
    });
    Ok(MinorRatioReport {
        lambda,
        violations,
        subsets_checked: checked,
    })
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
