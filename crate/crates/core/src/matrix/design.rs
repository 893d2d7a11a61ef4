use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DVector, IntegerMatrix, Label};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Largest number of entries a constructed matrix may have.
const MAX_ENTRIES: u128 = 50_000_000;

/// All cells of `∏ [d_v]` over the listed vertices, lexicographic with the
/// first vertex most significant; levels are 1-based.
fn cells(levels: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &d in levels {
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for prefix in &out {
            for x in 1..=d {
                let mut c = prefix.clone();
                c.push(x);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

fn check_entries(rows: u128, cols: u128) -> Result<()> {
    let total = rows.saturating_mul(cols);
    if total > MAX_ENTRIES {
        return Err(Error::Size {
            what: "design matrix construction".into(),
            required: total,
            cap: MAX_ENTRIES,
            hint: "use smaller levels or fewer vertices".into(),
        });
    }
    Ok(())
}

/// The design matrix `A_{C,d}` of the hierarchical model of `c`.
///
/// Columns are the cells of `∏_j [d_j]` in lexicographic order with vertex 1
/// most significant. Rows come in one block per facet (facets in sorted order),
/// each block listing the facet's marginal cells lexicographically. An entry
/// is 1 when the column cell restricted to the facet equals the row cell.
/// The irrelevant complex gives a single all-ones row; the void complex gives
/// no rows.
pub fn design_matrix(c: &SimplicialComplex, d: &DVector) -> Result<IntegerMatrix> {
    if d.len() != c.n() {
        return Err(Error::input(format!(
            "d has {} entries but the complex has {} vertices",
            d.len(),
            c.n()
        )));
    }
    let levels = d.levels();
    let ncols: u128 = levels.iter().map(|&x| x as u128).product();
    let nrows: u128 = c
        .facets()
        .iter()
        .map(|f| f.iter().map(|v| levels[v - 1] as u128).product::<u128>())
        .sum();
    check_entries(nrows, ncols)?;
    let (nrows, ncols) = (nrows as usize, ncols as usize);

    let columns = cells(levels);
    let mut entries = vec![BigInt::zero(); nrows * ncols];
    let mut row_labels = Vec::with_capacity(nrows);
    let mut offset = 0;
    for facet in c.facets() {
        let verts = facet.to_vec();
        let facet_levels: Vec<u64> = verts.iter().map(|&v| levels[v - 1]).collect();
        for cell in cells(&facet_levels) {
            row_labels.push(Label::Marginal {
                facet: verts.clone(),
                cell,
            });
        }
        for (j, col) in columns.iter().enumerate() {
            // mixed-radix position of the restricted cell within the block
            let pos = verts
                .iter()
                .fold(0usize, |acc, &v| acc * levels[v - 1] as usize + (col[v - 1] - 1) as usize);
            entries[(offset + pos) * ncols + j] = BigInt::one();
        }
        offset += facet_levels.iter().product::<u64>() as usize;
    }
    let col_labels = columns.into_iter().map(Label::Cell).collect();
    IntegerMatrix::new(nrows, ncols, entries)?.with_labels(row_labels, col_labels)
}

/// The Lawrence lifting `[[A, 0], [0, A], [I, I]]`.
///
/// When `a` carries design-matrix labels the lift is labeled as the design
/// matrix of the lifted complex with the new vertex at level 2, so the two can
/// be compared with [`IntegerMatrix::equal_up_to_labels`].
pub fn lawrence_lift_matrix(a: &IntegerMatrix) -> IntegerMatrix {
    let (s, t) = (a.rows(), a.cols());
    let mut entries = vec![BigInt::zero(); (2 * s + t) * 2 * t];
    let w = 2 * t;
    for i in 0..s {
        for j in 0..t {
            let x = a.get(i, j);
            if !x.is_zero() {
                entries[i * w + j] = x.clone();
                entries[(s + i) * w + t + j] = x.clone();
            }
        }
    }
    for j in 0..t {
        entries[(2 * s + j) * w + j] = BigInt::one();
        entries[(2 * s + j) * w + t + j] = BigInt::one();
    }
    let m = IntegerMatrix::new(2 * s + t, w, entries).expect("shape is consistent");
    match lift_labels(a) {
        Some((rows, cols)) => m.with_labels(rows, cols).expect("lifted labels stay unique"),
        None => m,
    }
}

fn lift_labels(a: &IntegerMatrix) -> Option<(Vec<Label>, Vec<Label>)> {
    let rl = a.row_labels()?;
    let cl = a.col_labels()?;
    let col_cells: Vec<&Vec<u64>> = cl
        .iter()
        .map(|l| match l {
            Label::Cell(c) => Some(c),
            _ => None,
        })
        .collect::<Option<_>>()?;
    let n = col_cells.first().map_or(0, |c| c.len());
    let mut rows = Vec::with_capacity(2 * rl.len() + cl.len());
    for copy in [1u64, 2] {
        for l in rl {
            let Label::Marginal { facet, cell } = l else {
                return None;
            };
            let mut facet = facet.clone();
            facet.push(n + 1);
            let mut cell = cell.clone();
            cell.push(copy);
            rows.push(Label::Marginal { facet, cell });
        }
    }
    for c in &col_cells {
        rows.push(Label::Marginal {
            facet: (1..=n).collect(),
            cell: (*c).clone(),
        });
    }
    let mut cols = Vec::with_capacity(2 * cl.len());
    for copy in [1u64, 2] {
        for c in &col_cells {
            let mut c = (*c).clone();
            c.push(copy);
            cols.push(Label::Cell(c));
        }
    }
    Some((rows, cols))
}

/// Columns indexed by `(S, i)` with `S` a minimal non-face of `c` and `i` a
/// binary cell of `[n] \ S`; rows are the binary cells of `[n]`. `sign` gives
/// the entry for a row whose restriction to `S` is `j`.
fn nonface_matrix(c: &SimplicialComplex, sign: impl Fn(&[u64]) -> i64) -> IntegerMatrix {
    let n = c.n();
    let full = c.ground_set();
    let rows = cells(&vec![2; n]);
    let nonfaces = c.minimal_nonfaces();
    let mut col_labels = Vec::new();
    let mut columns: Vec<Vec<i64>> = Vec::new();
    for s in &nonfaces {
        let rest = full.minus(*s).to_vec();
        for i in cells(&vec![2; rest.len()]) {
            let column = rows
                .iter()
                .map(|row| {
                    if rest.iter().zip(&i).all(|(&v, &x)| row[v - 1] == x) {
                        let j: Vec<u64> = s.iter().map(|v| row[v - 1]).collect();
                        sign(&j)
                    } else {
                        0
                    }
                })
                .collect();
            columns.push(column);
            col_labels.push(Label::Marginal {
                facet: rest.clone(),
                cell: i,
            });
        }
    }
    let ncols = columns.len();
    let mut entries = vec![BigInt::zero(); rows.len() * ncols];
    for (j, col) in columns.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            if x != 0 {
                entries[r * ncols + j] = BigInt::from(x);
            }
        }
    }
    let row_labels = rows.into_iter().map(Label::Cell).collect();
    IntegerMatrix::new(1 << n, ncols, entries)
        .and_then(|m| m.with_labels(row_labels, col_labels))
        .expect("shape and labels are consistent")
}

/// The 0/1 matrix `M` whose transpose is the binary design matrix of the
/// Alexander dual.
///
/// Column `(S, i)` is the sum of the unit vectors of all binary cells that
/// agree with `i` off `S`. It is labeled as the marginal `([n] \ S, i)`, so
/// `M.transpose()` matches `design_matrix(c.alexander_dual(), 2)` by labels.
pub fn dual_matrix_m(c: &SimplicialComplex) -> IntegerMatrix {
    nonface_matrix(c, |_| 1)
}

/// The kernel spanning set `K` of the binary design matrix: as [`dual_matrix_m`]
/// but each entry carries the sign `(-1)^{|j|}`, where `|j|` counts coordinates
/// of the row cell inside `S` at level 2.
pub fn kernel_spanning_set(c: &SimplicialComplex) -> IntegerMatrix {
    nonface_matrix(c, |j| {
        if j.iter().filter(|&&x| x == 2).count() % 2 == 0 {
            1
        } else {
            -1
        }
    })
}
