//! Exact integer matrices and the constructions built on them: design
//! matrices, Lawrence liftings, the dual matrix `M` and kernel spanning set
//! `K`, lattice kernel bases, and orthogonal projection.

mod design;
mod lattice;
mod projection;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Checked, Mat};

pub use design::{design_matrix, dual_matrix_m, kernel_spanning_set, lawrence_lift_matrix};
pub use lattice::{complementary_minor_ratio, MinorRatioReport};
pub(crate) use lattice::for_each_subset;
pub use projection::{project_orthogonal, RationalMatrix};

/// Row or column label.
///
/// Design matrices label rows by `Marginal` (facet and a cell of the facet's
/// table) and columns by `Cell` (a cell of the full table). Levels are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Marginal { facet: Vec<usize>, cell: Vec<u64> },
    Cell(Vec<u64>),
    Tag(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join("");
        match self {
            Label::Marginal { facet, cell } => {
                let facet: Vec<String> = facet.iter().map(usize::to_string).collect();
                write!(f, "{{{}}}:{}", facet.join(","), join(cell))
            }
            Label::Cell(cell) => f.write_str(&join(cell)),
            Label::Tag(t) => f.write_str(t),
        }
    }
}

/// Per-vertex level counts, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct DVector {
    levels: Vec<u64>,
}

impl DVector {
    pub fn new(levels: Vec<u64>) -> Result<Self> {
        if let Some((i, &d)) = levels.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::input(format!(
                "level of vertex {} is {d}; every level must be at least 2",
                i + 1
            )));
        }
        Ok(DVector { levels })
    }

    /// All 2s.
    pub fn binary(n: usize) -> Self {
        DVector { levels: vec![2; n] }
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.levels.iter().all(|&d| d == 2)
    }

    /// Level of vertex `v` (1-based).
    pub fn level(&self, v: usize) -> u64 {
        self.levels[v - 1]
    }

    /// Levels of the listed vertices, in order; used after relabeling.
    pub fn restrict(&self, labels: &[usize]) -> DVector {
        DVector {
            levels: labels.iter().map(|&v| self.levels[v - 1]).collect(),
        }
    }

    pub fn extended(&self, extra: &[u64]) -> Result<DVector> {
        let mut levels = self.levels.clone();
        levels.extend_from_slice(extra);
        DVector::new(levels)
    }
}

impl TryFrom<Vec<u64>> for DVector {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        DVector::new(v)
    }
}

impl From<DVector> for Vec<u64> {
    fn from(d: DVector) -> Self {
        d.levels
    }
}

impl fmt::Display for DVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.levels.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dense arbitrary-precision integer matrix with optional row/column labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    row_labels: Option<Vec<Label>>,
    col_labels: Option<Vec<Label>>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols]).unwrap()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds from rows of machine integers; all rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::input("rows have different lengths"));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)))
            .collect();
        IntegerMatrix::new(rows.len(), cols, entries)
    }

    /// Attaches labels; lengths must match and labels must be unique.
    pub fn with_labels(mut self, row_labels: Vec<Label>, col_labels: Vec<Label>) -> Result<Self> {
        if row_labels.len() != self.rows || col_labels.len() != self.cols {
            return Err(Error::input("label count does not match the matrix shape"));
        }
        for labels in [&row_labels, &col_labels] {
            let mut sorted: Vec<&Label> = labels.iter().collect();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input("matrix labels must be unique"));
            }
        }
        self.row_labels = Some(row_labels);
        self.col_labels = Some(col_labels);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row_labels(&self) -> Option<&[Label]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[Label]> {
        self.col_labels.as_deref()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        IntegerMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// The submatrix on the listed columns (in the given order).
    pub fn select_columns(&self, cols: &[usize]) -> IntegerMatrix {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        IntegerMatrix {
            rows: self.rows,
            cols: cols.len(),
            entries,
            row_labels: self.row_labels.clone(),
            col_labels: self
                .col_labels
                .as_ref()
                .map(|l| cols.iter().map(|&j| l[j].clone()).collect()),
        }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        IntegerMatrix::new(self.rows, other.cols, entries)
    }

    /// `A · v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        linalg::with_fallback(
            || linalg::rank(&self.to_mat::<i128>()?),
            || linalg::rank(&self.to_mat::<BigInt>()?),
        )
    }

    /// Saturated lattice basis of the integer kernel, one basis vector per row
    /// (`cols - rank` rows), in Hermite normal form.
    pub fn kernel_lattice_basis(&self) -> IntegerMatrix {
        let basis = linalg::kernel_lattice_basis(self.rows, self.cols, &self.entries);
        let rows = basis.len();
        IntegerMatrix::new(rows, self.cols, basis.into_iter().flatten().collect())
            .expect("kernel rows have the matrix width")
    }

    pub(crate) fn to_mat<T: linalg::Num>(&self) -> Checked<Mat<T>> {
        Mat::from_big(self.rows, self.cols, &self.entries)
    }

    /// Rows and columns sorted by label; `None` unless both label lists exist.
    pub fn sorted_by_labels(&self) -> Option<IntegerMatrix> {
        let rl = self.row_labels.as_ref()?;
        let cl = self.col_labels.as_ref()?;
        let mut ri: Vec<usize> = (0..self.rows).collect();
        ri.sort_by(|&a, &b| rl[a].cmp(&rl[b]));
        let mut ci: Vec<usize> = (0..self.cols).collect();
        ci.sort_by(|&a, &b| cl[a].cmp(&cl[b]));
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in &ri {
            for &j in &ci {
                entries.push(self.get(i, j).clone());
            }
        }
        Some(IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            row_labels: Some(ri.iter().map(|&i| rl[i].clone()).collect()),
            col_labels: Some(ci.iter().map(|&j| cl[j].clone()).collect()),
        })
    }

    /// Equality up to simultaneous row and column permutation, matched by labels.
    pub fn equal_up_to_labels(&self, other: &IntegerMatrix) -> bool {
        match (self.sorted_by_labels(), other.sorted_by_labels()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// Space-separated rows, one per line.
    pub fn to_dense_string(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// CSV with a header of column labels and a leading row-label column.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let col_name = |j: usize| {
            self.col_labels
                .as_ref()
                .map_or_else(|| format!("c{}", j + 1), |l| l[j].to_string())
        };
        let row_name = |i: usize| {
            self.row_labels
                .as_ref()
                .map_or_else(|| format!("r{}", i + 1), |l| l[i].to_string())
        };
        let mut header = vec![String::new()];
        header.extend((0..self.cols).map(col_name));
        w.write_record(&header)?;
        for i in 0..self.rows {
            let mut record = vec![row_name(i)];
            record.extend(self.row(i).iter().map(BigInt::to_string));
            w.write_record(&record)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dense_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dvector_validation() {
        assert!(DVector::new(vec![2, 3]).is_ok());
        let err = DVector::new(vec![2, 1]).unwrap_err();
        assert!(err.to_string().contains("vertex 2"));
        let d: DVector = serde_json::from_str("[2,4]").unwrap();
        assert_eq!(d.levels(), &[2, 4]);
        assert!(serde_json::from_str::<DVector>("[0]").is_err());
    }

    #[test]
    fn rank_and_kernel() {
        let id = IntegerMatrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.kernel_lattice_basis().rows(), 0);
        let a = IntegerMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]).unwrap();
        let k = a.kernel_lattice_basis();
        assert_eq!(k.rows(), 1);
        assert!(a.mul(&k.transpose()).unwrap().is_zero());
    }

    #[test]
    fn labeled_equality_ignores_order() {
        let a = IntegerMatrix::from_rows(&[[1, 0], [0, 2]])
            .unwrap()
            .with_labels(
                vec![Label::Tag("x".into()), Label::Tag("y".into())],
                vec![Label::Tag("p".into()), Label::Tag("q".into())],
            )
            .unwrap();
        let b = IntegerMatrix::from_rows(&[[2, 0], [0, 1]])
            .unwrap()
            .with_labels(
                vec![Label::Tag("y".into()), Label::Tag("x".into())],
                vec![Label::Tag("q".into()), Label::Tag("p".into())],
            )
            .unwrap();
        assert!(a.equal_up_to_labels(&b));
        assert!(!a.equal_up_to_labels(&IntegerMatrix::identity(2)));
        let dup = IntegerMatrix::identity(2).with_labels(
            vec![Label::Tag("x".into()), Label::Tag("x".into())],
            vec![Label::Tag("p".into()), Label::Tag("q".into())],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn csv_export() {
        let m = IntegerMatrix::from_rows(&[[1, -2]]).unwrap();
        assert_eq!(m.to_csv().unwrap(), ",c1,c2\nr1,1,-2\n");
        assert_eq!(m.to_dense_string(), "1 -2\n");
    }
}
