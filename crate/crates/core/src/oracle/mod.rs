//! Unimodularity testing of integer matrices through circuits: an exact scan,
//! a maximal-minor cross-check for small matrices, and a seeded randomized mode
//! that runs the exact scan on random column subsets.

mod scan;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, binomial, with_fallback, Checked, Mat, Tableau};
use crate::matrix::{for_each_subset, IntegerMatrix};
use scan::{Halt, Scan};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Default number of random column subsets tried by the randomized mode.
pub const DEFAULT_TRIALS: u64 = 10_000;

/// Caps and sampling parameters. Exceeding a cap is an error, never a silent
/// switch to randomized mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    /// Arithmetic work units the exact scan may spend (about 10⁸ per second).
    pub scan_cap: u128,
    /// Number of maximal minors the minor test may evaluate.
    pub minors_cap: u128,
    /// Random subsets have between `rank + 1` and `rank + window` columns.
    pub window: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            scan_cap: 1_000_000_000,
            minors_cap: 1_000_000,
            window: 12,
        }
    }
}

/// A circuit, stored on its support: `vector[k]` is the entry at column
/// `support[k]`. Entries are coprime and the first is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CircuitWitness {
    pub support: Vec<usize>,
    pub vector: Vec<BigInt>,
    /// Entry of largest absolute value (the offending one when ≥ 2).
    pub entry: BigInt,
}

impl CircuitWitness {
    pub(crate) fn from_full(v: &[BigInt]) -> Self {
        let mut support = Vec::new();
        let mut vector = Vec::new();
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                support.push(j);
                vector.push(x.clone());
            }
        }
        let entry = vector
            .iter()
            .max_by(|a, b| a.abs().cmp(&b.abs()))
            .cloned()
            .unwrap_or_else(BigInt::zero);
        CircuitWitness {
            support,
            vector,
            entry,
        }
    }

    fn from_num<T: linalg::Num>(v: &[T]) -> Self {
        Self::from_full(&v.iter().map(linalg::Num::to_big).collect::<Vec<_>>())
    }

    /// The circuit as a vector of length `n`.
    pub fn full_vector(&self, n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        for (j, x) in self.support.iter().zip(&self.vector) {
            v[*j] = x.clone();
        }
        v
    }

    /// True when some entry has absolute value at least 2.
    pub fn is_bad(&self) -> bool {
        self.entry.abs() > BigInt::one()
    }

    /// Re-indexes the support through `map` (`map[j]` = new index of column `j`).
    pub fn map_support(&self, map: &[usize]) -> Self {
        let mut pairs: Vec<(usize, BigInt)> = self
            .support
            .iter()
            .zip(&self.vector)
            .map(|(&j, x)| (map[j], x.clone()))
            .collect();
        pairs.sort_by_key(|p| p.0);
        let negate = pairs.first().is_some_and(|p| p.1.is_negative());
        CircuitWitness {
            support: pairs.iter().map(|p| p.0).collect(),
            vector: pairs
                .into_iter()
                .map(|p| if negate { -p.1 } else { p.1 })
                .collect(),
            entry: if negate { -&self.entry } else { self.entry.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleMethod {
    Exhaustive,
    Randomized { seed: u64, trials: u64 },
    Minors,
}

impl OracleMethod {
    pub fn name(&self) -> &'static str {
        match self {
            OracleMethod::Exhaustive => "exhaustive",
            OracleMethod::Randomized { .. } => "randomized",
            OracleMethod::Minors => "minors",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum OracleVerdict {
    Unimodular,
    NonUnimodular(CircuitWitness),
    NoWitnessFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub verdict: OracleVerdict,
    pub method: OracleMethod,
    /// Circuits, cocircuits or minors inspected.
    pub circuits_examined: u64,
    /// Common absolute value of the nonzero maximal minors (minor test only).
    pub lambda: Option<BigInt>,
}

impl OracleReport {
    pub fn is_unimodular(&self) -> bool {
        matches!(self.verdict, OracleVerdict::Unimodular)
    }

    pub fn witness(&self) -> Option<&CircuitWitness> {
        match &self.verdict {
            OracleVerdict::NonUnimodular(w) => Some(w),
            _ => None,
        }
    }

    /// The witness in the documented JSON shape, if any.
    pub fn witness_record(&self) -> Option<WitnessRecord> {
        let w = self.witness()?;
        let seed = match self.method {
            OracleMethod::Randomized { seed, .. } => Some(seed),
            _ => None,
        };
        Some(WitnessRecord {
            support: w.support.clone(),
            vector: w.vector.iter().map(ToString::to_string).collect(),
            entry: w.entry.to_string(),
            method: self.method.name().to_string(),
            seed,
        })
    }
}

/// `{"support": [...], "vector": [...], "entry": k, "method": "...", "seed": n?}`.
/// Integers are written as JSON numbers when they fit in 64 bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRecord {
    pub support: Vec<usize>,
    pub vector: Vec<String>,
    pub entry: String,
    pub method: String,
    pub seed: Option<u64>,
}

impl Serialize for WitnessRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let num = |x: &String| -> serde_json::Value {
            x.parse::<i64>()
                .map(serde_json::Value::from)
                .unwrap_or_else(|_| serde_json::Value::String(x.clone()))
        };
        let mut obj = serde_json::Map::new();
        obj.insert("support".into(), self.support.clone().into());
        obj.insert(
            "vector".into(),
            serde_json::Value::Array(self.vector.iter().map(num).collect()),
        );
        obj.insert("entry".into(), num(&self.entry));
        obj.insert("method".into(), self.method.clone().into());
        if let Some(seed) = self.seed {
            obj.insert("seed".into(), seed.into());
        }
        serde_json::Value::Object(obj).serialize(s)
    }
}

fn size_error(what: &str, estimate: u128, cap: u128) -> Error {
    Error::Size {
        what: what.to_string(),
        required: estimate,
        cap,
        hint: "use the randomized mode with an explicit seed, or raise the cap".into(),
    }
}

/// Runs a scan closure on `i128`, restarting on `BigInt` after an overflow.
fn run_scan<R>(
    cap: u128,
    f128: impl FnOnce(&mut Scan) -> std::result::Result<R, Halt>,
    fbig: impl FnOnce(&mut Scan) -> std::result::Result<R, Halt>,
) -> std::result::Result<(R, Scan), Halt> {
    let mut scan = Scan::new(cap);
    match f128(&mut scan) {
        Ok(r) => Ok((r, scan)),
        Err(Halt::Overflow) => {
            let mut scan = Scan::new(cap);
            let r = fbig(&mut scan)?;
            Ok((r, scan))
        }
        Err(e) => Err(e),
    }
}

fn exact_scan(a: &IntegerMatrix, cap: u128) -> Result<(Option<CircuitWitness>, u64)> {
    fn go<T: linalg::Num>(a: &IntegerMatrix, scan: &mut Scan) -> std::result::Result<Option<CircuitWitness>, Halt> {
        let m: Mat<T> = a.to_mat()?;
        Ok(scan::find_bad_circuit(&m, scan)?.map(|w| CircuitWitness::from_num(&w)))
    }
    match run_scan(cap, |s| go::<i128>(a, s), |s| go::<BigInt>(a, s)) {
        Ok((w, scan)) => Ok((w, scan.examined)),
        Err(Halt::Cap { estimate }) => Err(size_error("exhaustive circuit scan", estimate, cap)),
        Err(Halt::Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
    }
}

/// Exact test: unimodular iff every circuit has entries in {0, ±1}.
///
/// Returns the first bad circuit found. Witness order is deterministic: a
/// fixed-seed walk over bases first, then an exhaustive cocircuit scan in
/// lexicographic column order.
pub fn is_unimodular_exact(a: &IntegerMatrix, cfg: &OracleConfig) -> Result<OracleReport> {
    let (w, examined) = exact_scan(a, cfg.scan_cap)?;
    Ok(OracleReport {
        verdict: match w {
            Some(w) => OracleVerdict::NonUnimodular(w),
            None => OracleVerdict::Unimodular,
        },
        method: OracleMethod::Exhaustive,
        circuits_examined: examined,
        lambda: None,
    })
}

/// Every circuit of `a`, each once (coprime, first nonzero entry positive), in
/// the order the cocircuit scan of a kernel basis meets them. Stops after
/// `limit` circuits if given.
pub fn circuits(a: &IntegerMatrix, limit: Option<usize>, cfg: &OracleConfig) -> Result<Vec<CircuitWitness>> {
    fn go<T: linalg::Num>(
        a: &IntegerMatrix,
        limit: Option<usize>,
        scan: &mut Scan,
    ) -> std::result::Result<Vec<CircuitWitness>, Halt> {
        let m: Mat<T> = a.to_mat()?;
        let k = scan::kernel_basis(&m)?;
        let mut out = Vec::new();
        let estimate = binomial(k.cols, k.rows.saturating_sub(1));
        scan::hyperplane_scan(&k, estimate, scan, &mut |x| {
            out.push(CircuitWitness::from_num(x));
            Ok(limit.is_some_and(|l| out.len() >= l))
        })?;
        Ok(out)
    }
    if limit == Some(0) {
        return Ok(Vec::new());
    }
    match run_scan(cfg.scan_cap, |s| go::<i128>(a, limit, s), |s| go::<BigInt>(a, limit, s)) {
        Ok((v, _)) => Ok(v),
        Err(Halt::Cap { estimate }) => Err(size_error("circuit enumeration", estimate, cfg.scan_cap)),
        Err(Halt::Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
    }
}

/// Randomized search: exact scans of random column subsets. Can only prove
/// non-unimodularity; otherwise reports `NoWitnessFound`. Deterministic in `seed`.
pub fn is_unimodular_randomized(
    a: &IntegerMatrix,
    seed: u64,
    trials: u64,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    if trials == 0 {
        return Err(Error::input("randomized mode needs at least one trial"));
    }
    let n = a.cols();
    let r = a.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut examined = 0;
    let lo = (r + 1).min(n);
    let hi = (r + cfg.window.max(1)).min(n);
    for t in 1..=trials {
        let size = if lo >= hi { lo } else { rng.gen_range(lo..=hi) };
        let mut cols: Vec<usize> = sample(&mut rng, n, size).into_vec();
        cols.sort_unstable();
        let sub = a.select_columns(&cols);
        match exact_scan(&sub, cfg.scan_cap) {
            Ok((Some(w), e)) => {
                examined += e;
                let mapped = CircuitWitness {
                    support: w.support.iter().map(|&j| cols[j]).collect(),
                    ..w
                };
                return Ok(OracleReport {
                    verdict: OracleVerdict::NonUnimodular(mapped),
                    method: OracleMethod::Randomized { seed, trials: t },
                    circuits_examined: examined,
                    lambda: None,
                });
            }
            Ok((None, e)) => examined += e,
            Err(Error::Size { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(OracleReport {
        verdict: OracleVerdict::NoWitnessFound,
        method: OracleMethod::Randomized { seed, trials },
        circuits_examined: examined,
        lambda: None,
    })
}

/// Minor test: unimodular iff all nonzero maximal minors (of a row basis)
/// share one absolute value `λ`. A violation yields a circuit witness found by
/// walking between two bases of different |det|.
pub fn unimodular_via_minors(a: &IntegerMatrix, cfg: &OracleConfig) -> Result<OracleReport> {
    let r = a.rank();
    let total = binomial(a.cols(), r);
    if total > cfg.minors_cap {
        return Err(Error::Size {
            what: format!("maximal minors of a rank-{r} matrix with {} columns", a.cols()),
            required: total,
            cap: cfg.minors_cap,
            hint: "use the exhaustive circuit scan instead".into(),
        });
    }
    let (lambda, witness, count) = with_fallback(|| minors_test::<i128>(a), || minors_test::<BigInt>(a));
    Ok(OracleReport {
        verdict: match witness {
            Some(w) => OracleVerdict::NonUnimodular(w),
            None => OracleVerdict::Unimodular,
        },
        method: OracleMethod::Minors,
        circuits_examined: count,
        lambda,
    })
}

type MinorsOutcome = (Option<BigInt>, Option<CircuitWitness>, u64);

fn minors_test<T: linalg::Num>(a: &IntegerMatrix) -> Checked<MinorsOutcome> {
    let m: Mat<T> = a.to_mat()?;
    let tab = linalg::gauss_jordan(&m)?;
    let rb = m.select_rows(&tab.rows);
    let r = tab.rank();
    if r == 0 {
        return Ok((Some(BigInt::one()), None, 0));
    }
    let mut lambda: Option<(T, Vec<usize>)> = None;
    let mut clash: Option<Vec<usize>> = None;
    let mut count = 0u64;
    let mut failed: Checked<()> = Ok(());
    for_each_subset(rb.cols, r, |s| {
        if clash.is_some() || failed.is_err() {
            return;
        }
        count += 1;
        let det = match linalg::determinant(&rb.select_columns(s)).and_then(|d| d.abs()) {
            Ok(d) => d,
            Err(e) => {
                failed = Err(e);
                return;
            }
        };
        if det.is_zero() {
            return;
        }
        match &lambda {
            None => lambda = Some((det, s.to_vec())),
            Some((l, _)) if *l == det => {}
            Some(_) => clash = Some(s.to_vec()),
        }
    });
    failed?;
    let (lam, first) = lambda.expect("a row basis has a nonzero maximal minor");
    let Some(other) = clash else {
        return Ok((Some(lam.to_big()), None, count));
    };
    let d0 = tab.d.abs()?;
    let target = if d0 == lam { other } else { first };
    let w = walk_to_bad_entry(tab, &target)?;
    Ok((None, Some(CircuitWitness::from_num(&w)), count))
}

/// Pivots from the tableau's basis toward `target`, a basis whose |det| differs
/// from the current one. Before each pivot the whole tableau is checked; an
/// entry outside {0, ±D} gives a bad fundamental circuit, and one must appear
/// before the target is reached.
fn walk_to_bad_entry<T: linalg::Num>(mut tab: Tableau<T>, target: &[usize]) -> Checked<Vec<T>> {
    let (r, n) = (tab.rank(), tab.t.cols);
    loop {
        for j in 0..n {
            if tab.is_basic(j) {
                continue;
            }
            if (0..r).any(|l| {
                let x = tab.t.at(l, j);
                !x.is_zero() && !x.abs_eq(&tab.d)
            }) {
                let mut u = tab.fundamental_circuit(j)?;
                linalg::primitive(&mut u)?;
                return Ok(u);
            }
        }
        let step = target.iter().filter(|&&j| !tab.is_basic(j)).find_map(|&j| {
            (0..r)
                .find(|&l| !target.contains(&tab.basis[l]) && !tab.t.at(l, j).is_zero())
                .map(|l| (l, j))
        });
        let (l, j) = step.expect("target basis has a different determinant");
        tab.pivot(l, j)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        IntegerMatrix::new(r, c, rows.iter().flat_map(|x| x.iter().map(|&v| BigInt::from(v))).collect()).unwrap()
    }

    fn in_kernel(a: &IntegerMatrix, w: &CircuitWitness) -> bool {
        a.apply(&w.full_vector(a.cols())).iter().all(Zero::is_zero)
    }

    #[test]
    fn triangle_incidence() {
        // vertex-edge incidence of a triangle: c1 - c2 + c3 = (2,0,0)·…, not unimodular
        let a = m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let cfg = OracleConfig::default();
        let with_unit = m(&[&[1, 1, 0, 1], &[0, 1, 1, 0], &[1, 0, 1, 0]]);
        assert!(is_unimodular_exact(&a, &cfg).unwrap().is_unimodular());
        let rep = is_unimodular_exact(&with_unit, &cfg).unwrap();
        let w = rep.witness().unwrap();
        assert!(w.is_bad() && in_kernel(&with_unit, w));
        let rep = unimodular_via_minors(&with_unit, &cfg).unwrap();
        let w = rep.witness().unwrap();
        assert!(w.is_bad() && in_kernel(&with_unit, w));
        assert_eq!(unimodular_via_minors(&a, &cfg).unwrap().lambda, Some(BigInt::from(2)));
    }

    #[test]
    fn circuits_of_small_matrices() {
        let cfg = OracleConfig::default();
        let a = m(&[&[1, 1, 1]]);
        let mut cs: Vec<Vec<usize>> = circuits(&a, None, &cfg).unwrap().into_iter().map(|c| c.support).collect();
        cs.sort();
        assert_eq!(cs, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(circuits(&a, Some(2), &cfg).unwrap().len(), 2);
        let id = m(&[&[1, 0], &[0, 1]]);
        assert!(circuits(&id, None, &cfg).unwrap().is_empty());
    }

    #[test]
    fn randomized_is_seeded() {
        let a = m(&[&[1, 1, 0, 1, 0], &[0, 1, 1, 0, 1], &[1, 0, 1, 0, 0]]);
        let cfg = OracleConfig { window: 2, ..OracleConfig::default() };
        let r1 = is_unimodular_randomized(&a, 7, 50, &cfg).unwrap();
        let r2 = is_unimodular_randomized(&a, 7, 50, &cfg).unwrap();
        assert_eq!(r1, r2);
        let w = r1.witness().unwrap();
        assert!(in_kernel(&a, w));
        let rec = serde_json::to_value(r1.witness_record().unwrap()).unwrap();
        assert_eq!(rec["method"], "randomized");
        assert_eq!(rec["seed"], 7);
    }

    #[test]
    fn caps_raise_size_errors() {
        let a = m(&[&[1, 1, 1, 1, 1, 1]]);
        let cfg = OracleConfig { minors_cap: 3, ..OracleConfig::default() };
        assert!(matches!(unimodular_via_minors(&a, &cfg), Err(Error::Size { .. })));
    }
}
