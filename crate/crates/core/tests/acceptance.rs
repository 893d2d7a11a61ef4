//! The twelve acceptance criteria. Each prints one PASS/FAIL line; the test
//! fails if any criterion does.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

use unimod_core::census::{enumerate_complexes, verify_theorem, CENSUS_SEED};
use unimod_core::classify::{classify_binary, Method};
use unimod_core::matrix::{design_matrix, dual_matrix_m, kernel_spanning_set};
use unimod_core::nonbinary::{bad_pairs_catalog, classify_d, classify_d_with, NonbinaryConfig, Rule, Verdict};
use unimod_core::oracle::{
    is_unimodular_exact, is_unimodular_randomized, OracleConfig, OracleVerdict, DEFAULT_SEED, DEFAULT_TRIALS,
};
use unimod_core::{DVector, IntegerMatrix, NamedComplex, SimplicialComplex, VertexSet};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lists(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::from_facet_lists(n, facets).unwrap()
}

fn dv(levels: &[u64]) -> DVector {
    DVector::new(levels.to_vec()).unwrap()
}

fn golden_matrix() -> Outcome {
    let a = design_matrix(&lists(3, &[&[1], &[2, 3]]), &DVector::binary(3)).map_err(|e| e.to_string())?;
    let expected = IntegerMatrix::from_rows(&[
        [1, 1, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 1, 1],
        [1, 0, 0, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 0, 0, 1],
    ])
    .unwrap();
    ensure(a.entries() == expected.entries() && (a.rows(), a.cols()) == (6, 8), || {
        format!("got\n{a}")
    })?;
    Ok("6x8 matrix matches entry for entry".into())
}

fn exhaustive_catalog() -> Outcome {
    let cfg = OracleConfig::default();
    let mut notes = Vec::new();
    for kind in [
        NamedComplex::P4,
        NamedComplex::J1,
        NamedComplex::J1star,
        NamedComplex::J2,
        NamedComplex::BoundarySimplexPlusVertex(2),
        NamedComplex::BoundarySimplexPlusVertex(3),
    ] {
        let c = kind.complex().unwrap();
        let a = design_matrix(&c, &DVector::binary(c.n())).unwrap();
        let t = Instant::now();
        let report = is_unimodular_exact(&a, &cfg).map_err(|e| format!("{kind}: {e}"))?;
        let elapsed = t.elapsed();
        let OracleVerdict::NonUnimodular(w) = &report.verdict else {
            return Err(format!("{kind}: exhaustive oracle found no bad circuit"));
        };
        common::check_witness(&a, w).map_err(|e| format!("{kind}: {e}"))?;
        ensure(elapsed.as_secs() < 10, || format!("{kind} took {elapsed:?}"))?;
        notes.push(format!("{kind} |entry| {}", w.entry.magnitude()));
    }
    Ok(notes.join(", "))
}

fn randomized_catalog() -> Outcome {
    let cfg = OracleConfig::default();
    let mut notes = Vec::new();
    for kind in [NamedComplex::O6, NamedComplex::O6star] {
        let c = kind.complex().unwrap();
        let a = design_matrix(&c, &DVector::binary(c.n())).unwrap();
        let report = is_unimodular_randomized(&a, DEFAULT_SEED, DEFAULT_TRIALS, &cfg).map_err(|e| e.to_string())?;
        let OracleVerdict::NonUnimodular(w) = &report.verdict else {
            return Err(format!("{kind}: no witness in {DEFAULT_TRIALS} trials"));
        };
        common::check_witness(&a, w).map_err(|e| format!("{kind}: {e}"))?;
        notes.push(format!("{kind} after {} circuits", report.circuits_examined));
    }
    Ok(format!("seed {DEFAULT_SEED:#x}: {}", notes.join(", ")))
}

fn census() -> Outcome {
    let mut notes = Vec::new();
    for n in 0..=5 {
        let r = verify_theorem(n, &[Method::All], CENSUS_SEED).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("n = {n}: {:?}", r.disagreements))?;
        if n <= 4 {
            ensure(r.matrix_checked == r.labeled, || format!("n = {n}: matrix ran on {}", r.matrix_checked))?;
        } else {
            ensure(r.matrix_checked == 100, || format!("n = 5: matrix sample {}", r.matrix_checked))?;
        }
        notes.push(format!("n={n}: {}/{}", r.unimodular, r.labeled));
    }
    Ok(format!("unimodular/labeled {}", notes.join(", ")))
}

fn catalog_minimality() -> Outcome {
    let mut kinds: Vec<NamedComplex> = NamedComplex::FORBIDDEN.to_vec();
    kinds.extend((1..=4).map(NamedComplex::BoundarySimplexPlusVertex));
    let mut checked = 0;
    for kind in kinds {
        let c = kind.complex().unwrap();
        for v in 1..=c.n() {
            let one = VertexSet::singleton(v);
            let mut minors = vec![("deletion", c.delete(one).unwrap())];
            if c.contains_face(one) {
                minors.push(("link", c.link(one).unwrap()));
            }
            for (what, m) in minors {
                let method = if m.complex.n() <= 5 { Method::All } else { Method::Minors };
                let verdict = classify_binary(&m.complex, method).map_err(|e| e.to_string())?;
                ensure(verdict.unimodular, || format!("{what} of {v} in {kind} is not unimodular"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} single-vertex minors unimodular"))
}

fn duality() -> Outcome {
    let mut checked = 0;
    for n in 0..=4 {
        for c in enumerate_complexes(n, false).unwrap() {
            let dual = c.alexander_dual();
            let u = classify_binary(&c, Method::All).map_err(|e| e.to_string())?.unimodular;
            let ud = classify_binary(&dual, Method::All).map_err(|e| e.to_string())?.unimodular;
            ensure(u == ud, || format!("{c}: {u}, dual {dual}: {ud}"))?;
            let m = dual_matrix_m(&c);
            let a_dual = design_matrix(&dual, &DVector::binary(n)).unwrap();
            ensure(a_dual.equal_up_to_labels(&m.transpose()), || format!("{c}: A of the dual is not M^T"))?;
            let k = kernel_spanning_set(&c);
            ensure(common::sign_flip(&k) == m, || format!("{c}: sign flips of K do not give M"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} complexes"))
}

fn rank_formula() -> Outcome {
    let mut checked = 0;
    for n in 0..=4 {
        for c in enumerate_complexes(n, false).unwrap() {
            let a = design_matrix(&c, &DVector::binary(n)).unwrap();
            let cols: Vec<usize> = (0..a.cols()).collect();
            let r = common::rank_of_columns(&a, &cols);
            ensure(r == c.face_count(), || format!("{c}: rank {r}, {} faces", c.face_count()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} complexes"))
}

fn bad_pairs() -> Outcome {
    let cfg = OracleConfig::default();
    let mut names = Vec::new();
    for p in bad_pairs_catalog() {
        let (c, d) = (p.complex(), p.levels());
        let rule = classify_d(&c, &d).map_err(|e| e.to_string())?;
        ensure(rule.verdict == Verdict::NonUnimodular, || format!("{}: rules say {:?}", p.name, rule.verdict))?;
        let a = design_matrix(&c, &d).unwrap();
        let report = is_unimodular_exact(&a, &cfg).map_err(|e| e.to_string())?;
        let OracleVerdict::NonUnimodular(w) = &report.verdict else {
            return Err(format!("{}: oracle says unimodular", p.name));
        };
        common::check_witness(&a, w).map_err(|e| format!("{}: {e}", p.name))?;
        names.push(p.name);
    }
    Ok(names.join(", "))
}

fn disjoint_edges() -> Outcome {
    let c = NamedComplex::DisjointSimplices(1, 1).complex().unwrap();
    let d = dv(&[2, 2, 2, 3]);
    let rule = classify_d(&c, &d).map_err(|e| e.to_string())?;
    ensure(rule.verdict == Verdict::Unimodular, || format!("rules say {:?}", rule.verdict))?;
    let a = design_matrix(&c, &d).unwrap();
    let exact = is_unimodular_exact(&a, &OracleConfig::default()).map_err(|e| e.to_string())?;
    ensure(exact.is_unimodular(), || "oracle found a bad circuit".into())?;
    Ok("rules and oracle agree".into())
}

/// The 4-cycle under every order of at most one Lawrence lifting, at most one
/// ghost and at most two cones.
fn dmn_family() -> Vec<(String, SimplicialComplex)> {
    fn grow(name: &str, c: &SimplicialComplex, left: (u8, u8, u8), out: &mut Vec<(String, SimplicialComplex)>) {
        out.push((name.to_string(), c.clone()));
        let (l, g, k) = left;
        if l > 0 {
            grow(&format!("L({name})"), &c.lawrence().unwrap(), (l - 1, g, k), out);
        }
        if g > 0 {
            grow(&format!("G({name})"), &c.add_ghosts(1).unwrap(), (l, g - 1, k), out);
        }
        if k > 0 {
            grow(&format!("C({name})"), &c.cone(1).unwrap(), (l, g, k - 1), out);
        }
    }
    let mut out = Vec::new();
    grow("C4", &NamedComplex::Cycle4.complex().unwrap(), (1, 1, 2), &mut out);
    out
}

/// Largest design matrix compared against the oracle in the D(1,1) sweep.
const SWEEP_MAX_COLUMNS: u64 = 1000;

fn dmn_rule() -> Outcome {
    let cfg = OracleConfig::default();
    let pairs: Vec<(String, SimplicialComplex, Vec<u64>)> = dmn_family()
        .into_iter()
        .flat_map(|(name, c)| {
            common::level_vectors(c.n(), 3).into_iter().map(move |l| (name.clone(), c.clone(), l))
        })
        .collect();
    let compared: Vec<bool> = pairs
        .par_iter()
        .map(|(name, c, levels)| {
            let d = DVector::new(levels.clone()).unwrap();
            let rule = classify_d(c, &d).map_err(|e| format!("{name} {d}: {e}"))?;
            ensure(rule.verdict != Verdict::Unknown, || format!("{name} {d}: unknown"))?;
            if levels.iter().product::<u64>() > SWEEP_MAX_COLUMNS {
                return Ok(false);
            }
            let a = design_matrix(c, &d).unwrap();
            let Ok(r) = is_unimodular_exact(&a, &cfg) else {
                return Ok(false);
            };
            ensure(r.is_unimodular() == (rule.verdict == Verdict::Unimodular), || {
                format!("{name} {d}: rules {:?}, oracle {}", rule.verdict, r.is_unimodular())
            })?;
            Ok(true)
        })
        .collect::<Result<_, String>>()?;
    let n = compared.iter().filter(|&&b| b).count();
    Ok(format!(
        "{n} of {} pairs compared with the oracle, the rest above {SWEEP_MAX_COLUMNS} columns",
        pairs.len()
    ))
}

fn boundary_rule() -> Outcome {
    let cfg = OracleConfig::default();
    let mut checked = 0;
    for n in [3, 4] {
        let facets: Vec<Vec<usize>> = (1..=n).map(|v| (1..=n).filter(|&u| u != v).collect()).collect();
        let c = SimplicialComplex::from_facet_lists(n, &facets).unwrap();
        for levels in common::level_vectors(n, 4) {
            let d = DVector::new(levels.clone()).unwrap();
            let a = design_matrix(&c, &d).unwrap();
            let oracle = is_unimodular_exact(&a, &cfg).map_err(|e| format!("{d}: {e}"))?.is_unimodular();
            let expected = levels.iter().filter(|&&l| l > 2).count() <= 2;
            ensure(oracle == expected, || format!("boundary on {n} vertices, {d}: oracle {oracle}"))?;
            let rule = classify_d(&c, &d).map_err(|e| e.to_string())?;
            ensure((rule.verdict == Verdict::Unimodular) == expected, || format!("{d}: rules {:?}", rule.verdict))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} level vectors"))
}

fn partiality() -> Outcome {
    let c = lists(4, &[&[1, 2], &[1, 3], &[2, 3, 4]]);
    // lifting of two points plus a ghost; relabeled so the lifting vertex is 1 and the ghost 4
    let lifted = lists(2, &[&[1], &[2]]).add_ghosts(1).unwrap().lawrence().unwrap();
    ensure(lifted.relabel(&[2, 3, 4, 1]).unwrap() == c, || "labeling of the open case".into())?;
    let d = dv(&[3, 2, 5, 5]);
    let cfg = NonbinaryConfig { max_oracle_columns: 100, ..NonbinaryConfig::default() };
    let v = classify_d_with(&c, &d, &cfg).map_err(|e| e.to_string())?;
    ensure(v.verdict == Verdict::Unknown, || format!("got {:?}", v.verdict))?;
    ensure(v.certificate.is_none(), || "unknown verdict carries a certificate".into())?;
    let last = v.justification.last().ok_or("empty justification")?;
    ensure(last.rule == Rule::NoRule && last.detail.contains("open question"), || {
        format!("justification: {:?}", v.justification)
    })?;
    Ok("unknown, citing the open question".into())
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 12] = [
        ("golden design matrix", golden_matrix),
        ("forbidden complexes, exhaustive oracle", exhaustive_catalog),
        ("O6 and O6*, randomized oracle", randomized_catalog),
        ("binary classification census", census),
        ("catalog minimality", catalog_minimality),
        ("duality", duality),
        ("rank formula", rank_formula),
        ("non-binary bad pairs", bad_pairs),
        ("two disjoint edges with levels (2,2,2,3)", disjoint_edges),
        ("D(1,1) nucleus rule against the oracle", dmn_rule),
        ("simplex boundary rule", boundary_rule),
        ("unknown for the open case", partiality),
    ];
    // written straight to stdout so the lines show without --nocapture
    let mut out = std::io::stdout();
    writeln!(out).unwrap();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => writeln!(out, "PASS criterion {:>2} {name} ({secs:.1}s): {detail}", i + 1).unwrap(),
            Err(why) => {
                writeln!(out, "FAIL criterion {:>2} {name} ({secs:.1}s): {why}", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
