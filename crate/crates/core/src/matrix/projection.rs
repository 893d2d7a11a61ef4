use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntegerMatrix;
use crate::error::{Error, Result};

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    /// Scales each row by the lcm of its denominators. The kernel, and so the
    /// set of circuits, is unchanged.
    pub fn clear_denominators(&self) -> IntegerMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            entries.extend(row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()));
        }
        IntegerMatrix::new(self.rows, self.cols, entries).expect("shape is preserved")
    }
}

impl From<&IntegerMatrix> for RationalMatrix {
    fn from(a: &IntegerMatrix) -> Self {
        RationalMatrix {
            rows: a.rows(),
            cols: a.cols(),
            entries: a
                .entries()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }
}

/// Projects the other columns onto the hyperplane orthogonal to column `col`:
/// `a_i − (⟨a_i, a_col⟩ / ‖a_col‖²) a_col`, and drops column `col`.
pub fn project_orthogonal(a: &IntegerMatrix, col: usize) -> Result<RationalMatrix> {
    if col >= a.cols() {
        return Err(Error::input(format!("column {col} out of range")));
    }
    let c = a.column(col);
    let norm: BigInt = c.iter().map(|x| x * x).sum();
    if norm.is_zero() {
        return Err(Error::domain(format!("column {col} is zero")));
    }
    let keep: Vec<usize> = (0..a.cols()).filter(|&j| j != col).collect();
    let mut entries = vec![BigRational::zero(); a.rows() * keep.len()];
    for (k, &j) in keep.iter().enumerate() {
        let aj = a.column(j);
        let dot: BigInt = aj.iter().zip(&c).map(|(x, y)| x * y).sum();
        let coef = BigRational::new(dot, norm.clone());
        for i in 0..a.rows() {
            entries[i * keep.len() + k] =
                BigRational::from_integer(aj[i].clone()) - &coef * BigRational::from_integer(c[i].clone());
        }
    }
    Ok(RationalMatrix {
        rows: a.rows(),
        cols: keep.len(),
        entries,
    })
}
