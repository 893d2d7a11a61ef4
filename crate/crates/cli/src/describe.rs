//! Plain-text rendering of verdicts and reports.

use std::fmt::Write;

use unimod_core::census::CensusReport;
use unimod_core::classify::{Certificate, Nucleus, PeelStep};
use unimod_core::nonbinary::{BadPairKind, BadPairWitness, DCertificate, DVerdict, Verdict};
use unimod_core::oracle::CircuitWitness;
use unimod_core::{BinaryVerdict, DVector, SimplicialComplex, VertexSet};

pub fn facets(fs: &[Vec<usize>]) -> String {
    let parts: Vec<String> = fs
        .iter()
        .map(|f| {
            let vs: Vec<String> = f.iter().map(usize::to_string).collect();
            format!("{{{}}}", vs.join(","))
        })
        .collect();
    if parts.is_empty() {
        "(none)".into()
    } else {
        parts.join(" ")
    }
}

fn list(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(usize::to_string).collect();
    parts.join(",")
}

fn minor(r: VertexSet, s: VertexSet) -> String {
    format!("link_{r}(C \\ {s})")
}

fn circuit(w: &CircuitWitness) -> String {
    let cols: Vec<String> = w.support.iter().map(|j| (j + 1).to_string()).collect();
    let vals: Vec<String> = w.vector.iter().map(ToString::to_string).collect();
    format!("circuit on columns {} with entries ({}), max |entry| {}", cols.join(","), vals.join(","), w.entry.magnitude())
}

fn nucleus(n: &Nucleus) -> String {
    match n {
        Nucleus::DisjointSimplices { left, right, .. } => {
            format!("two disjoint simplices on {{{}}} and {{{}}}", list(left), list(right))
        }
        Nucleus::Dmn { m, n, left, right } => {
            format!("D({m},{n}) on {{{}}} and {{{}}}", list(left), list(right))
        }
        Nucleus::Simplex { k, vertices } => format!("simplex of dimension {k} on {{{}}}", list(vertices)),
    }
}

pub fn binary(c: &SimplicialComplex, v: &BinaryVerdict) -> String {
    let mut out = String::new();
    let head = if v.unimodular { "unimodular" } else { "not unimodular" };
    let _ = writeln!(out, "{c}: {head} ({:?})", v.method);
    match &v.certificate {
        Certificate::Decomposition(d) => {
            let steps: Vec<String> = d
                .steps
                .iter()
                .map(|s| match s {
                    PeelStep::StripGhost(x) => format!("ghost {x}"),
                    PeelStep::StripCone(x) => format!("cone {x}"),
                    PeelStep::PeelLawrence(x) => format!("Lawrence {x}"),
                })
                .collect();
            if !steps.is_empty() {
                let _ = writeln!(out, "peeled: {}", steps.join(", "));
            }
            let _ = write!(out, "nucleus: {}", nucleus(&d.nucleus));
        }
        Certificate::ForbiddenMinor(w) => {
            let _ = write!(
                out,
                "witness: {} is {} on vertices {} (sent to {})",
                minor(w.r, w.s),
                w.kind,
                list(&w.vertices),
                list(&w.map)
            );
        }
        Certificate::Circuit(w) => {
            let _ = write!(out, "witness: {}", circuit(w));
        }
        Certificate::NotNuclear { vertices, facets: fs, skeleton } => {
            let _ = write!(
                out,
                "peeling stalls on vertices {} with facets {} (1-skeleton {skeleton:?})",
                list(vertices),
                facets(fs)
            );
        }
        Certificate::NoForbiddenMinor { minors_checked } => {
            let _ = write!(out, "no forbidden minor among {minors_checked} minors");
        }
        Certificate::ExhaustiveScan { circuits_examined } => {
            let _ = write!(out, "all {circuits_examined} circuits are 0/±1");
        }
    }
    if let Some(seed) = v.seed {
        let _ = write!(out, "\nseed: {seed}");
    }
    out
}

fn bad_pair(w: &BadPairWitness) -> String {
    let name = match &w.kind {
        BadPairKind::Catalog { name, .. } => name.to_string(),
        BadPairKind::Forbidden { kind } => kind.to_string(),
    };
    format!(
        "{} is {name} on vertices {} (sent to {})",
        minor(w.r, w.s),
        list(&w.vertices),
        list(&w.map)
    )
}

fn dcertificate(c: &DCertificate) -> String {
    match c {
        DCertificate::Binary(v) => format!("binary verdict by {:?}", v.method),
        DCertificate::CompleteBipartite { levels: (a, b) } => format!("reduces to two points with levels {a} and {b}"),
        DCertificate::TrivialComplex => "reduces to a trivial complex".into(),
        DCertificate::DmnNucleus { nucleus, lawrence, offending } => format!(
            "nucleus {{{}}}, Lawrence vertices {{{}}}, above level 2: {{{}}}",
            list(nucleus),
            list(lawrence),
            list(offending)
        ),
        DCertificate::SimplexBoundary { above_two } => {
            format!("simplex boundary, above level 2: {{{}}}", list(above_two))
        }
        DCertificate::BadPair(w) => bad_pair(w),
        DCertificate::Circuit { r, s, vertices, levels, witness } => format!(
            "{} on vertices {} with levels ({}) has a {}",
            minor(*r, *s),
            list(vertices),
            levels.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            circuit(witness)
        ),
        DCertificate::ExhaustiveScan { r, s, circuits_examined, .. } => {
            format!("all {circuits_examined} circuits of {} are 0/±1", minor(*r, *s))
        }
    }
}

pub fn nonbinary(c: &SimplicialComplex, d: &DVector, v: &DVerdict) -> String {
    let mut out = String::new();
    let head = match v.verdict {
        Verdict::Unimodular => "unimodular",
        Verdict::NonUnimodular => "not unimodular",
        Verdict::Unknown => "unknown",
    };
    let _ = write!(out, "{c} d={d}: {head}");
    for step in &v.justification {
        if v.reason.as_deref() == Some(step.detail.as_str()) {
            continue;
        }
        let _ = write!(out, "\n  {:?}: {}", step.rule, step.detail);
    }
    if let Some(cert) = &v.certificate {
        let _ = write!(out, "\ncertificate: {}", dcertificate(cert));
    }
    if let Some(w) = &v.witness {
        let _ = write!(out, "\nwitness: {}", dcertificate(w));
    }
    if let Some(r) = &v.reason {
        let _ = write!(out, "\nreason: {r}");
    }
    out
}

pub fn census(r: &CensusReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {}: {} labeled complexes, {} up to isomorphism, {} unimodular",
        r.n, r.labeled, r.isomorphism_classes, r.unimodular
    );
    let methods: Vec<String> = r.methods.iter().map(|m| format!("{m:?}").to_lowercase()).collect();
    let _ = writeln!(out, "methods: {} (matrix on {}, seed {})", methods.join(", "), r.matrix_checked, r.seed);
    let _ = writeln!(
        out,
        "checked: duality {}, minor closure {}, rank {}",
        r.duality_checked, r.minor_closure_checked, r.rank_checked
    );
    for t in &r.timings {
        let _ = writeln!(out, "  {:?}: {} runs, {} ms", t.method, t.runs, t.millis);
    }
    if r.passed() {
        let _ = writeln!(out, "no disagreements");
    } else {
        let _ = writeln!(out, "{} disagreements:", r.disagreements.len());
        for x in &r.disagreements {
            let _ = writeln!(out, "  {} on {}: {}", x.check, facets(&x.facets), x.detail);
        }
    }
    out
}
