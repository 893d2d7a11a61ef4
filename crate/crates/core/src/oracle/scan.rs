//! The exact circuit scan.
//!
//! A matrix is unimodular iff every circuit is 0/±1, iff every cocircuit is
//! 0/±1 (circuits of a kernel basis are cocircuits of the matrix). The scan:
//!
//! 1. drops zero columns and merges parallel columns (a pair with scale ratio
//!    other than ±1 is already a bad circuit);
//! 2. splits the rest into connected blocks, whose circuits are independent;
//! 3. on each block walks randomly over bases with integer-preserving pivots,
//!    checking every tableau entry: a basis exchange that changes |det| exposes
//!    a bad fundamental circuit;
//! 4. if the walk finds nothing, enumerates cocircuits exhaustively, either on
//!    the block itself or on its kernel basis (recursively reduced the same
//!    way), whichever is estimated cheaper. Each hyperplane is visited once,
//!    through its lexicographically greedy basis.
//!
//! A bad cocircuit is turned into a bad circuit through a fundamental circuit
//! with respect to a basis built from the cocircuit's hyperplane.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{binomial, gauss_jordan, kernel_vector, primitive, Checked, Mat, Num, Overflow, Tableau};

const MAX_DUAL_DEPTH: usize = 4;
const PROBE_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Halt {
    Overflow,
    /// Work cap exceeded; carries the estimated cost of the blocking step.
    Cap { estimate: u128 },
}

impl From<Overflow> for Halt {
    fn from(_: Overflow) -> Self {
        Halt::Overflow
    }
}

type Step<T> = Result<T, Halt>;

pub(crate) struct Scan {
    pub cap: u128,
    pub work: u128,
    pub examined: u64,
    rng: ChaCha8Rng,
}

impl Scan {
    pub fn new(cap: u128) -> Self {
        Scan {
            cap,
            work: 0,
            examined: 0,
            rng: ChaCha8Rng::seed_from_u64(PROBE_SEED),
        }
    }

    fn spend(&mut self, units: u128, estimate: u128) -> Step<()> {
        self.work = self.work.saturating_add(units);
        if self.work > self.cap {
            return Err(Halt::Cap { estimate });
        }
        Ok(())
    }
}

/// True when the primitive form of `v` has an entry of absolute value ≥ 2.
pub(crate) fn is_bad<T: Num>(v: &[T]) -> Checked<bool> {
    let mut w = v.to_vec();
    primitive(&mut w)?;
    let one = T::one();
    Ok(w.iter().any(|x| !x.is_zero() && !x.abs_eq(&one)))
}

/// A bad circuit of `m` (full length, primitive) or `None` if `m` is unimodular.
pub(crate) fn find_bad_circuit<T: Num>(m: &Mat<T>, scan: &mut Scan) -> Step<Option<Vec<T>>> {
    find_bad(m, 0, scan)
}

fn find_bad<T: Num>(m: &Mat<T>, depth: usize, scan: &mut Scan) -> Step<Option<Vec<T>>> {
    let reduced = match reduce_parallel(m)? {
        Reduction::Witness(w) => return Ok(Some(w)),
        Reduction::Reps(reps) => reps,
    };
    let r = m.select_columns(&reduced);
    for (rows, cols) in blocks(&r) {
        let block = r.select_rows(&rows).select_columns(&cols);
        if let Some(w) = solve_block(&block, depth, scan)? {
            let mut full = vec![T::zero(); m.cols];
            for (k, x) in w.into_iter().enumerate() {
                full[reduced[cols[k]]] = x;
            }
            return Ok(Some(full));
        }
    }
    Ok(None)
}

enum Reduction<T> {
    Witness(Vec<T>),
    /// One representative column per parallel class, ascending.
    Reps(Vec<usize>),
}

/// Groups nonzero columns by their primitive direction.
fn reduce_parallel<T: Num>(m: &Mat<T>) -> Step<Reduction<T>> {
    let mut classes: HashMap<Vec<T>, (usize, T)> = HashMap::new();
    let mut reps = Vec::new();
    for j in 0..m.cols {
        let col = m.column(j);
        if col.iter().all(Num::is_zero) {
            continue;
        }
        let mut dir = col.clone();
        primitive(&mut dir)?;
        let k = dir.iter().position(|x| !x.is_zero()).unwrap();
        let scale = col[k].div_exact(&dir[k])?;
        match classes.get(&dir) {
            None => {
                classes.insert(dir, (j, scale));
                reps.push(j);
            }
            Some((i, s)) => {
                if !scale.abs_eq(s) {
                    // scale·a_i − s·a_j = 0
                    let mut w = vec![T::zero(); m.cols];
                    w[*i] = scale;
                    w[j] = s.neg()?;
                    primitive(&mut w)?;
                    return Ok(Reduction::Witness(w));
                }
            }
        }
    }
    Ok(Reduction::Reps(reps))
}

/// Connected blocks of the row/column incidence graph of nonzero entries,
/// each as (rows, cols) in ascending order. Zero rows are dropped.
fn blocks<T: Num>(m: &Mat<T>) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = m.rows + m.cols;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..m.rows {
        for j in 0..m.cols {
            if !m.at(i, j).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, m.rows + j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for j in 0..m.cols {
        let root = find(&mut parent, m.rows + j);
        match groups.iter_mut().find(|g| g.0 == root) {
            Some(g) => g.2.push(j),
            None => groups.push((root, Vec::new(), vec![j])),
        }
    }
    for i in 0..m.rows {
        let root = find(&mut parent, i);
        if let Some(g) = groups.iter_mut().find(|g| g.0 == root) {
            g.1.push(i);
        }
    }
    groups.into_iter().map(|(_, r, c)| (r, c)).collect()
}

fn solve_block<T: Num>(block: &Mat<T>, depth: usize, scan: &mut Scan) -> Step<Option<Vec<T>>> {
    let mut tab = gauss_jordan(block)?;
    let a = block.select_rows(&tab.rows);
    let (r, n) = (tab.rank(), a.cols);
    if r == n {
        return Ok(None);
    }
    if let Some(w) = probe(&mut tab, scan)? {
        return Ok(Some(w));
    }
    if n - r == 1 {
        // the only circuit was checked by the probe
        return Ok(None);
    }

    let direct = binomial(n, r - 1);
    if depth < MAX_DUAL_DEPTH {
        let k = kernel_rows(&tab)?;
        let dual = match reduce_parallel(&k)? {
            Reduction::Witness(w) => return Ok(Some(cocircuit_to_circuit(&a, &w)?)),
            Reduction::Reps(reps) => estimate(&k.select_columns(&reps))?,
        };
        if dual < direct {
            return match find_bad(&k, depth + 1, scan)? {
                Some(w) => Ok(Some(cocircuit_to_circuit(&a, &w)?)),
                None => Ok(None),
            };
        }
    }
    match hyperplane_scan(&a, direct, scan, &mut |x| is_bad(x))? {
        Some(x) => Ok(Some(cocircuit_to_circuit(&a, &x)?)),
        None => Ok(None),
    }
}

/// Cost estimate of the direct cocircuit scan over the blocks of `m`.
fn estimate<T: Num>(m: &Mat<T>) -> Step<u128> {
    let mut total: u128 = 0;
    for (rows, cols) in blocks(m) {
        let b = m.select_rows(&rows).select_columns(&cols);
        let r = gauss_jordan(&b)?.rank();
        if r < cols.len() && cols.len() - r > 1 {
            total = total.saturating_add(binomial(cols.len(), r.saturating_sub(1)));
        }
    }
    Ok(total)
}

/// Walks over bases by random pivots, checking each tableau for an entry
/// whose absolute value differs from the current determinant.
fn probe<T: Num>(tab: &mut Tableau<T>, scan: &mut Scan) -> Step<Option<Vec<T>>> {
    let (r, n) = (tab.rank(), tab.t.cols);
    let steps = 2 * n + 20;
    for _ in 0..steps {
        let mut nonzero = Vec::new();
        for j in 0..n {
            if tab.is_basic(j) {
                continue;
            }
            scan.examined += 1;
            for l in 0..r {
                let x = tab.t.at(l, j);
                if x.is_zero() {
                    continue;
                }
                if !x.abs_eq(&tab.d) {
                    let mut u = tab.fundamental_circuit(j)?;
                    primitive(&mut u)?;
                    return Ok(Some(u));
                }
                nonzero.push((l, j));
            }
        }
        scan.spend((r * n) as u128, 0)?;
        if nonzero.is_empty() {
            return Ok(None);
        }
        let (l, j) = nonzero[scan.rng.gen_range(0..nonzero.len())];
        tab.pivot(l, j)?;
    }
    Ok(None)
}

/// Kernel basis from a tableau: the fundamental circuit of each non-basic column.
fn kernel_rows<T: Num>(tab: &Tableau<T>) -> Checked<Mat<T>> {
    let n = tab.t.cols;
    let free: Vec<usize> = (0..n).filter(|&j| !tab.is_basic(j)).collect();
    let mut k = Mat::zeros(free.len(), n);
    for (row, &j) in free.iter().enumerate() {
        let mut u = tab.fundamental_circuit(j)?;
        primitive(&mut u)?;
        for (c, x) in u.into_iter().enumerate() {
            k.set(row, c, x);
        }
    }
    Ok(k)
}

/// Kernel basis of a matrix (rows), via its tableau.
pub(crate) fn kernel_basis<T: Num>(m: &Mat<T>) -> Checked<Mat<T>> {
    kernel_rows(&gauss_jordan(m)?)
}

/// Visits every hyperplane spanned by columns of the full-row-rank matrix `a`
/// once, computes its cocircuit (primitive, first nonzero positive) and stops
/// at the first one `stop` accepts.
///
/// The walk eliminates on `a` itself: after choosing columns `S`, the rows not
/// yet used as pivots are functionals vanishing on `S`, evaluated at every
/// column. One row left means `S` spans a hyperplane and the row is its
/// cocircuit.
pub(crate) fn hyperplane_scan<T: Num>(
    a: &Mat<T>,
    estimate: u128,
    scan: &mut Scan,
    stop: &mut dyn FnMut(&[T]) -> Checked<bool>,
) -> Step<Option<Vec<T>>> {
    let r = a.rows;
    if r == 0 {
        return Ok(None);
    }
    let rows: Vec<Vec<T>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    let mut walk = HyperplaneWalk {
        n: a.cols,
        estimate,
        scan,
        stop,
        avoid: Vec::new(),
    };
    walk.descend(0, &rows, &T::one())
}

enum Completion<T> {
    None,
    Unique(Vec<T>),
    Many,
}

struct HyperplaneWalk<'a, T> {
    n: usize,
    estimate: u128,
    scan: &'a mut Scan,
    stop: &'a mut dyn FnMut(&[T]) -> Checked<bool>,
    /// Skipped columns that were independent of the chosen ones at the time;
    /// they must stay outside the final hyperplane.
    avoid: Vec<usize>,
}

impl<T: Num> HyperplaneWalk<'_, T> {
    fn descend(&mut self, start: usize, rows: &[Vec<T>], d: &T) -> Step<Option<Vec<T>>> {
        if rows.len() == 1 {
            return self.leaf(&rows[0]);
        }
        let need = rows.len() - 1;
        let n = self.n;
        match self.completion(start, rows)? {
            Completion::None => return Ok(None),
            Completion::Unique(x) => {
                if self.avoid.iter().any(|&j| x[j].is_zero()) {
                    return Ok(None);
                }
                return self.leaf(&x);
            }
            Completion::Many => {}
        }
        let saved = self.avoid.len();
        let mut result = None;
        for idx in start..n {
            if n - idx < need {
                break;
            }
            let Some(p) = rows.iter().position(|row| !row[idx].is_zero()) else {
                continue;
            };
            self.scan.spend((need * n) as u128, self.estimate)?;
            let pv = &rows[p][idx];
            let mut next = Vec::with_capacity(need);
            for (i, row) in rows.iter().enumerate() {
                if i == p {
                    continue;
                }
                let f = &row[idx];
                let mut w = Vec::with_capacity(n);
                for (x, y) in row.iter().zip(&rows[p]) {
                    let v = if f.is_zero() {
                        if x.is_zero() {
                            T::zero()
                        } else {
                            x.mul(pv)?
                        }
                    } else {
                        x.mul(pv)?.sub(&f.mul(y)?)?
                    };
                    w.push(if v.is_zero() { v } else { v.div_exact(d)? });
                }
                next.push(w);
            }
            let blocked = self.avoid.iter().any(|&j| next.iter().all(|row| row[j].is_zero()));
            if !blocked {
                if let Some(found) = self.descend(idx + 1, &next, pv)? {
                    result = Some(found);
                    break;
                }
            }
            self.avoid.push(idx);
        }
        self.avoid.truncate(saved);
        Ok(result)
    }

    /// How the chosen columns can be completed to a hyperplane using columns
    /// from `start` on: the remaining columns may span too little, exactly a
    /// hyperplane (whose functional is returned), or the whole quotient.
    fn completion(&mut self, start: usize, rows: &[Vec<T>]) -> Step<Completion<T>> {
        let m = rows.len();
        let free: Vec<usize> = (start..self.n)
            .filter(|&c| rows.iter().any(|row| !row[c].is_zero()))
            .collect();
        if free.len() < m - 1 {
            return Ok(Completion::None);
        }
        self.scan.spend((m * m * free.len()) as u128, self.estimate)?;
        let mut q = Mat::zeros(free.len(), m);
        for (k, &c) in free.iter().enumerate() {
            for (i, row) in rows.iter().enumerate() {
                q.set(k, i, row[c].clone());
            }
        }
        let tab = gauss_jordan(&q)?;
        let rank = tab.rank();
        if rank < m - 1 {
            return Ok(Completion::None);
        }
        if rank == m {
            return Ok(Completion::Many);
        }
        let z = kernel_rows(&tab)?;
        let mut x = vec![T::zero(); self.n];
        for (c, xc) in x.iter_mut().enumerate() {
            let mut acc = T::zero();
            for (i, row) in rows.iter().enumerate() {
                let (a, b) = (z.at(0, i), &row[c]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b)?)?;
                }
            }
            *xc = acc;
        }
        Ok(Completion::Unique(x))
    }

    fn leaf(&mut self, row: &[T]) -> Step<Option<Vec<T>>> {
        self.scan.examined += 1;
        let mut x = row.to_vec();
        primitive(&mut x)?;
        if (self.stop)(&x)? {
            return Ok(Some(x));
        }
        Ok(None)
    }
}

/// Turns a bad cocircuit `x` of the full-row-rank matrix `a` into a bad
/// circuit: with `e` of smallest nonzero |x_e| and `j` with |x_j| > |x_e|,
/// the fundamental circuit of `j` over (a basis of x's hyperplane) + `e` has
/// entries in ratio x_j / x_e at `j` and `e`.
pub(crate) fn cocircuit_to_circuit<T: Num>(a: &Mat<T>, x: &[T]) -> Checked<Vec<T>> {
    let n = a.cols;
    let abs: Vec<T> = x.iter().map(Num::abs).collect::<Checked<_>>()?;
    let e = (0..n)
        .filter(|&i| !x[i].is_zero())
        .min_by(|&p, &q| abs[p].cmp(&abs[q]))
        .expect("cocircuit is nonzero");
    let j = (0..n)
        .find(|&i| !x[i].is_zero() && abs[i] > abs[e])
        .expect("bad cocircuit has two distinct absolute values");
    // greedy basis of the hyperplane
    let mut basis: Vec<usize> = Vec::new();
    for c in (0..n).filter(|&c| x[c].is_zero()) {
        let mut trial = basis.clone();
        trial.push(c);
        if gauss_jordan(&a.select_columns(&trial))?.rank() == trial.len() {
            basis = trial;
        }
        if basis.len() + 1 == a.rows {
            break;
        }
    }
    basis.push(e);
    basis.sort_unstable();
    let mut cols = basis.clone();
    cols.push(j);
    let u = kernel_vector(&a.select_columns(&cols))?;
    let mut full = vec![T::zero(); n];
    for (k, &c) in cols.iter().enumerate() {
        full[c] = u[k].clone();
    }
    Ok(full)
}
