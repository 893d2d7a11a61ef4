//! Exhaustive enumeration of small complexes and cross-validation of the
//! binary classifiers over all of them.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify_binary_with, ClassifyConfig, Method};
use crate::complex::{canonical_form, SimplicialComplex};
use crate::error::{Error, Result};
use crate::matrix::{design_matrix, DVector};
use crate::oracle::DEFAULT_SEED;
use crate::vertex_set::VertexSet;

/// Largest ground set [`enumerate_complexes`] accepts.
pub const MAX_CENSUS_VERTICES: usize = 6;
/// Largest ground set on which the matrix method runs on every complex.
pub const MATRIX_EXHAUSTIVE_MAX_N: usize = 4;
pub const MATRIX_SAMPLE_SIZE: usize = 100;
/// Default seed of the matrix sample.
pub const CENSUS_SEED: u64 = DEFAULT_SEED;

/// Every simplicial complex on `{1..n}` (ghost vertices, void and irrelevant
/// included), or one representative per isomorphism class.
pub fn enumerate_complexes(n: usize, up_to_iso: bool) -> Result<Vec<SimplicialComplex>> {
    if n > MAX_CENSUS_VERTICES {
        return Err(Error::Size {
            what: format!("census on {n} vertices"),
            required: n as u128,
            cap: MAX_CENSUS_VERTICES as u128,
            hint: "censuses stop at 6 vertices".into(),
        });
    }
    let subsets: Vec<VertexSet> = (0..1u64 << n).map(VertexSet::from_bits).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    antichains(&subsets, 0, &mut chosen, &mut |facets| {
        out.push(SimplicialComplex::from_facets(n, facets.iter().copied()).expect("subsets of the ground set"));
    });
    if up_to_iso {
        let mut seen = HashSet::new();
        out.retain(|c| seen.insert(canonical_form(c)));
    }
    Ok(out)
}

fn antichains(subsets: &[VertexSet], i: usize, chosen: &mut Vec<VertexSet>, emit: &mut impl FnMut(&[VertexSet])) {
    if i == subsets.len() {
        emit(chosen);
        return;
    }
    antichains(subsets, i + 1, chosen, emit);
    let s = subsets[i];
    if chosen.iter().all(|&f| !f.is_subset(s) && !s.is_subset(f)) {
        chosen.push(s);
        antichains(subsets, i + 1, chosen, emit);
        chosen.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Disagreement {
    pub check: String,
    pub facets: Vec<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodTiming {
    pub method: Method,
    pub runs: usize,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub labeled: usize,
    pub isomorphism_classes: usize,
    pub unimodular: usize,
    pub methods: Vec<Method>,
    /// Complexes the matrix method ran on (all, or a seeded sample).
    pub matrix_checked: usize,
    pub duality_checked: usize,
    pub minor_closure_checked: usize,
    pub rank_checked: usize,
    pub disagreements: Vec<Disagreement>,
    pub seed: u64,
    /// Wall-clock per method, summed over threads; not reproducible.
    pub timings: Vec<MethodTiming>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// The report with timings cleared, for comparing runs.
    pub fn without_timings(&self) -> CensusReport {
        CensusReport {
            timings: Vec::new(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    pub classify: ClassifyConfig,
    pub matrix_sample: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            classify: ClassifyConfig::default(),
            matrix_sample: MATRIX_SAMPLE_SIZE,
        }
    }
}

pub fn verify_theorem(n: usize, methods: &[Method], seed: u64) -> Result<CensusReport> {
    verify_theorem_with(n, methods, seed, &CensusConfig::default())
}

/// Runs `methods` (`All` expands to the three) on every labeled complex on
/// `{1..n}` and compares them. The matrix method covers every complex up to
/// [`MATRIX_EXHAUSTIVE_MAX_N`] vertices and a seeded sample beyond. Also
/// checks that duality and taking minors preserve unimodularity, and that
/// `rank A_{C,2}` is the number of faces.
pub fn verify_theorem_with(n: usize, methods: &[Method], seed: u64, cfg: &CensusConfig) -> Result<CensusReport> {
    let mut ms: Vec<Method> = Vec::new();
    for &m in methods {
        let expanded: &[Method] = match m {
            Method::All => &[Method::Structural, Method::Minors, Method::Matrix],
            _ => std::slice::from_ref(&m),
        };
        for &e in expanded {
            if !ms.contains(&e) {
                ms.push(e);
            }
        }
    }
    if !ms.contains(&Method::Structural) {
        ms.insert(0, Method::Structural);
    }
    if n > 5 && ms != [Method::Structural] {
        return Err(Error::Size {
            what: format!("census with {ms:?} on {n} vertices"),
            required: n as u128,
            cap: 5,
            hint: "only the structural method runs on 6 vertices".into(),
        });
    }
    let complexes = enumerate_complexes(n, false)?;
    let classes: HashSet<_> = complexes.par_iter().map(canonical_form).collect();

    let matrix_on: Vec<bool> = if n <= MATRIX_EXHAUSTIVE_MAX_N || !ms.contains(&Method::Matrix) {
        vec![ms.contains(&Method::Matrix); complexes.len()]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = cfg.matrix_sample.min(complexes.len());
        let mut on = vec![false; complexes.len()];
        for i in sample(&mut rng, complexes.len(), k) {
            on[i] = true;
        }
        on
    };
    let rank_on = n <= 5;
    let cc = ClassifyConfig { seed, ..cfg.classify.clone() };

    let outcomes: Vec<Outcome> = complexes
        .par_iter()
        .zip(&matrix_on)
        .map(|(c, &matrix)| check_one(c, &ms, matrix, rank_on, &cc))
        .collect::<Result<_>>()?;

    let mut report = CensusReport {
        n,
        labeled: complexes.len(),
        isomorphism_classes: classes.len(),
        unimodular: 0,
        methods: ms.clone(),
        matrix_checked: matrix_on.iter().filter(|&&b| b).count(),
        duality_checked: 0,
        minor_closure_checked: 0,
        rank_checked: 0,
        disagreements: Vec::new(),
        seed,
        timings: Vec::new(),
    };
    let mut time = vec![(0usize, Duration::ZERO); ms.len()];
    for o in outcomes {
        report.unimodular += o.unimodular as usize;
        report.duality_checked += 1;
        report.minor_closure_checked += o.minors_checked;
        report.rank_checked += o.rank_checked as usize;
        report.disagreements.extend(o.disagreements);
        for (i, t) in o.times.into_iter().enumerate() {
            if let Some(t) = t {
                time[i].0 += 1;
                time[i].1 += t;
            }
        }
    }
    report.disagreements.sort();
    report.timings = ms
        .iter()
        .zip(time)
        .map(|(&method, (runs, t))| MethodTiming { method, runs, millis: t.as_millis() })
        .collect();
    Ok(report)
}

struct Outcome {
    unimodular: bool,
    minors_checked: usize,
    rank_checked: bool,
    disagreements: Vec<Disagreement>,
    times: Vec<Option<Duration>>,
}

fn check_one(c: &SimplicialComplex, ms: &[Method], matrix: bool, rank: bool, cfg: &ClassifyConfig) -> Result<Outcome> {
    let mut out = Outcome {
        unimodular: false,
        minors_checked: 0,
        rank_checked: false,
        disagreements: Vec::new(),
        times: vec![None; ms.len()],
    };
    let mut flag = |check: &str, detail: String| {
        out.disagreements.push(Disagreement { check: check.into(), facets: c.facet_lists(), detail });
    };
    let structural = |k: &SimplicialComplex| classify_binary_with(k, Method::Structural, cfg).map(|v| v.unimodular);

    let mut verdicts = Vec::new();
    for (i, &m) in ms.iter().enumerate() {
        if m == Method::Matrix && !matrix {
            continue;
        }
        let t = Instant::now();
        let v = classify_binary_with(c, m, cfg)?;
        out.times[i] = Some(t.elapsed());
        verdicts.push((m, v.unimodular));
    }
    let u = verdicts[0].1;
    if verdicts.iter().any(|&(_, v)| v != u) {
        flag("methods", format!("{verdicts:?}"));
    }

    let dual = structural(&c.alexander_dual())?;
    if dual != u {
        flag("duality", format!("complex {u}, dual {dual}"));
    }

    let mut minors_checked = 0;
    if u {
        for v in c.ground_set().iter() {
            let one = VertexSet::singleton(v);
            let mut minors = vec![("deletion", c.delete(one)?)];
            if c.contains_face(one) {
                minors.push(("link", c.link(one)?));
            }
            for (kind, m) in minors {
                minors_checked += 1;
                if !structural(&m.complex)? {
                    flag("minor closure", format!("{kind} of vertex {v} is not unimodular"));
                }
            }
        }
    }

    if rank {
        let a = design_matrix(c, &DVector::binary(c.n()))?;
        let r = a.rank();
        if r != c.face_count() {
            flag("rank", format!("rank {r}, {} faces", c.face_count()));
        }
    }
    out.unimodular = u;
    out.minors_checked = minors_checked;
    out.rank_checked = rank;
    Ok(out)
}
