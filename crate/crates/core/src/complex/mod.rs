//! Simplicial complexes stored by their facets, and the complex-level operations
//! used throughout the crate: duals, links, deletions, cones, ghost vertices,
//! Lawrence liftings, minors and isomorphism.

mod io;
mod iso;
mod named;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

pub use io::ComplexFile;
pub use iso::{canonical_form, find_isomorphism, is_isomorphic, isomorphisms, CanonicalForm};
pub use named::{standard_complex, NamedComplex};

/// A simplicial complex on the ground set `{1, ..., n}`, stored by its facets.
///
/// Facets are pairwise incomparable and kept sorted lexicographically by their
/// ascending label lists. Vertices that lie in no facet are ghost vertices.
/// The irrelevant complex has the single facet `∅`; the void complex has none.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

/// A complex produced on a shrunken ground set, with the map back to the
/// labels of the complex it came from: new vertex `i` was `labels[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub complex: SimplicialComplex,
    pub labels: Vec<usize>,
}

impl Relabeled {
    /// Maps a set of new labels back to the original ones.
    pub fn pull_back(&self, set: VertexSet) -> VertexSet {
        set.map_through(&self.labels)
    }

    pub fn original(&self, v: usize) -> usize {
        self.labels[v - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub ghost_vertices: VertexSet,
    pub cone_vertices: VertexSet,
    pub big_facets: Vec<VertexSet>,
    pub minimal_nonfaces: Vec<VertexSet>,
}

/// One entry of [`SimplicialComplex::enumerate_minors`]: `minor = link_r(C \ s)`.
#[derive(Clone, Debug)]
pub struct Minor {
    pub r: VertexSet,
    pub s: VertexSet,
    pub minor: Relabeled,
}

/// Keeps the inclusion-maximal sets, drops duplicates, sorts lexicographically.
fn normalize(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.bits().cmp(&b.bits())));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_by(|a, b| a.lex_cmp(*b));
    kept
}

/// Position map for a kept vertex set: `old label -> new label` (0 if dropped).
fn compress_map(n: usize, keep: VertexSet) -> Vec<usize> {
    let mut map = vec![0; n];
    for (i, v) in keep.iter().enumerate() {
        map[v - 1] = i + 1;
    }
    map
}

impl SimplicialComplex {
    /// The complex generated by `generators` on `{1..n}`: dominated and repeated
    /// sets are dropped.
    pub fn from_facets<I>(n: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        if n > MAX_VERTICES {
            return Err(Error::input(format!(
                "ground set of size {n} exceeds the supported maximum {MAX_VERTICES}"
            )));
        }
        let full = VertexSet::full(n);
        let gens: Vec<VertexSet> = generators.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| !g.is_subset(full)) {
            return Err(Error::input(format!(
                "facet {bad} has a vertex outside 1..={n}"
            )));
        }
        Ok(SimplicialComplex {
            n,
            facets: normalize(gens),
        })
    }

    /// Same as [`from_facets`](Self::from_facets) but from label lists, so that
    /// out-of-range labels (including 0) are reported with the offending facet.
    pub fn from_facet_lists<L: AsRef<[usize]>>(n: usize, lists: &[L]) -> Result<Self> {
        let mut gens = Vec::with_capacity(lists.len());
        for list in lists {
            let list = list.as_ref();
            if let Some(&bad) = list.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::input(format!(
                    "facet {list:?} has vertex {bad} outside 1..={n}"
                )));
            }
            gens.push(VertexSet::from_labels(list.iter().copied()));
        }
        Self::from_facets(n, gens)
    }

    pub(crate) fn from_normalized(n: usize, facets: Vec<VertexSet>) -> Self {
        SimplicialComplex {
            n,
            facets: normalize(facets),
        }
    }

    /// The void complex `{}` on `n` vertices: no faces at all.
    pub fn void(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: Vec::new(),
        }
    }

    /// The irrelevant complex `{∅}` on `n` vertices.
    pub fn irrelevant(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::EMPTY],
        }
    }

    /// The full simplex on `{1..n}`.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::full(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn ground_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [VertexSet::EMPTY]
    }

    /// True when the single facet is the whole ground set.
    pub fn is_full_simplex(&self) -> bool {
        self.facets == [self.ground_set()]
    }

    pub fn contains_face(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    /// Vertices lying in at least one facet.
    pub fn support(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    /// Every face, sorted by size and then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut seen = std::collections::HashSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                seen.insert(s);
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_by(|a, b| a.graded_cmp(*b));
        out
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    pub fn ghost_vertices(&self) -> VertexSet {
        self.ground_set().minus(self.support())
    }

    /// Vertices contained in every facet. The void complex has none.
    pub fn cone_vertices(&self) -> VertexSet {
        if self.facets.is_empty() {
            return VertexSet::EMPTY;
        }
        self.facets
            .iter()
            .fold(self.ground_set(), |acc, f| acc.intersection(*f))
    }

    /// Facets of size `n - 1`.
    pub fn big_facets(&self) -> Vec<VertexSet> {
        if self.n == 0 {
            return Vec::new();
        }
        self.facets
            .iter()
            .copied()
            .filter(|f| f.len() == self.n - 1)
            .collect()
    }

    /// Inclusion-minimal non-faces, sorted by size then lexicographically.
    ///
    /// A set is a non-face exactly when it meets the complement of every facet,
    /// so these are the minimal transversals of the facet complements.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let full = self.ground_set();
        let mut transversals = vec![VertexSet::EMPTY];
        for f in &self.facets {
            let edge = full.minus(*f);
            let mut next = Vec::new();
            for t in &transversals {
                if !t.is_disjoint(edge) {
                    next.push(*t);
                } else {
                    for v in edge.iter() {
                        next.push(t.with(v));
                    }
                }
            }
            transversals = minimal_sets(next);
        }
        transversals.sort_by(|a, b| a.graded_cmp(*b));
        transversals
    }

    pub fn structure_queries(&self) -> StructureReport {
        StructureReport {
            ghost_vertices: self.ghost_vertices(),
            cone_vertices: self.cone_vertices(),
            big_facets: self.big_facets(),
            minimal_nonfaces: self.minimal_nonfaces(),
        }
    }

    /// The Alexander dual: faces are the sets whose complement is not a face.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let full = self.ground_set();
        let facets = self
            .minimal_nonfaces()
            .into_iter()
            .map(|s| full.minus(s))
            .collect();
        SimplicialComplex::from_normalized(self.n, facets)
    }

    /// Induced complex on `keep`, relabeled to `1..|keep|`.
    pub fn induced(&self, keep: VertexSet) -> Result<Relabeled> {
        if !keep.is_subset(self.ground_set()) {
            return Err(Error::domain(format!(
                "vertex set {keep} is not inside the ground set 1..={}",
                self.n
            )));
        }
        let map = compress_map(self.n, keep);
        let facets = self
            .facets
            .iter()
            .map(|f| f.intersection(keep).map_through(&map))
            .collect();
        Ok(Relabeled {
            complex: SimplicialComplex::from_normalized(keep.len(), facets),
            labels: keep.to_vec(),
        })
    }

    /// Deletes the vertices in `s` (the induced complex on the rest).
    pub fn delete(&self, s: VertexSet) -> Result<Relabeled> {
        if !s.is_subset(self.ground_set()) {
            return Err(Error::domain(format!(
                "cannot delete {s}: not inside the ground set 1..={}",
                self.n
            )));
        }
        self.induced(self.ground_set().minus(s))
    }

    /// `link_s(C) = {F \ s : s ⊆ F ∈ C}` on the ground set with `s` removed.
    pub fn link(&self, s: VertexSet) -> Result<Relabeled> {
        if !s.is_subset(self.ground_set()) || !self.contains_face(s) {
            return Err(Error::domain(format!("{s} is not a face of the complex")));
        }
        let keep = self.ground_set().minus(s);
        let map = compress_map(self.n, keep);
        let facets = self
            .facets
            .iter()
            .filter(|f| s.is_subset(**f))
            .map(|f| f.minus(s).map_through(&map))
            .collect();
        Ok(Relabeled {
            complex: SimplicialComplex::from_normalized(keep.len(), facets),
            labels: keep.to_vec(),
        })
    }

    /// Adds `p` new vertices `n+1..n+p` to every facet.
    pub fn cone(&self, p: usize) -> Result<SimplicialComplex> {
        let n = self.checked_grow(p)?;
        let apex = VertexSet::full(n).minus(self.ground_set());
        Ok(SimplicialComplex {
            n,
            facets: self.facets.iter().map(|f| f.union(apex)).collect(),
        })
    }

    /// Enlarges the ground set by `p` vertices that lie in no face.
    pub fn add_ghosts(&self, p: usize) -> Result<SimplicialComplex> {
        let n = self.checked_grow(p)?;
        Ok(SimplicialComplex {
            n,
            facets: self.facets.clone(),
        })
    }

    /// The Lawrence lifting on `n + 1` vertices: the big facet `{1..n}` plus
    /// every facet extended by the new vertex `n + 1`.
    pub fn lawrence(&self) -> Result<SimplicialComplex> {
        let n = self.checked_grow(1)?;
        let mut facets: Vec<VertexSet> = self.facets.iter().map(|f| f.with(n)).collect();
        facets.push(self.ground_set());
        Ok(SimplicialComplex::from_normalized(n, facets))
    }

    fn checked_grow(&self, p: usize) -> Result<usize> {
        let n = self.n + p;
        if n > MAX_VERTICES {
            return Err(Error::input(format!(
                "ground set would grow to {n}, above the supported maximum {MAX_VERTICES}"
            )));
        }
        Ok(n)
    }

    /// `link_r(C \ s)`, relabeled; the labels point back into this complex.
    pub fn minor(&self, r: VertexSet, s: VertexSet) -> Result<Relabeled> {
        if !r.is_disjoint(s) {
            return Err(Error::domain(format!(
                "link set {r} and deletion set {s} overlap"
            )));
        }
        let deleted = self.delete(s)?;
        let map = compress_map(self.n, self.ground_set().minus(s));
        let r_local = r.map_through(&map);
        let linked = deleted.complex.link(r_local).map_err(|_| {
            Error::domain(format!("{r} is not a face of the deletion by {s}"))
        })?;
        let labels = linked.labels.iter().map(|&v| deleted.labels[v - 1]).collect();
        Ok(Relabeled {
            complex: linked.complex,
            labels,
        })
    }

    /// Every valid `(r, s)` pair once, ordered by `|s|`, then `|r|`, then
    /// lexicographically on `s` and `r`. Includes `(∅, ∅)` unless the complex is
    /// void (which has no faces, so no valid link set).
    pub fn enumerate_minors(&self) -> Vec<Minor> {
        let mut pairs = Vec::new();
        for s in self.ground_set().subsets() {
            for r in self.ground_set().minus(s).subsets() {
                if self.contains_face(r) {
                    pairs.push((r, s));
                }
            }
        }
        pairs.sort_by(|(r1, s1), (r2, s2)| {
            s1.len()
                .cmp(&s2.len())
                .then(r1.len().cmp(&r2.len()))
                .then_with(|| s1.lex_cmp(*s2))
                .then_with(|| r1.lex_cmp(*r2))
        });
        pairs
            .into_iter()
            .map(|(r, s)| Minor {
                r,
                s,
                minor: self.minor(r, s).expect("pair validated above"),
            })
            .collect()
    }

    /// Applies a bijection of `{1..n}`: vertex `v` becomes `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex> {
        if perm.len() != self.n {
            return Err(Error::input(format!(
                "relabeling has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = VertexSet::EMPTY;
        for &v in perm {
            if v == 0 || v > self.n || seen.contains(v) {
                return Err(Error::input(format!("{perm:?} is not a permutation of 1..={}", self.n)));
            }
            seen = seen.with(v);
        }
        let facets = self.facets.iter().map(|f| f.map_through(perm)).collect();
        Ok(SimplicialComplex::from_normalized(self.n, facets))
    }

    /// Adjacency of the 1-skeleton as bitmasks (`adj[v - 1]`), over all vertices.
    pub fn one_skeleton(&self) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for f in &self.facets {
            for v in f.iter() {
                adj[v - 1] = adj[v - 1].union(f.without(v));
            }
        }
        adj
    }

    /// Facet label lists, for display and serialization.
    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }
}

fn minimal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.bits().cmp(&b.bits())));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, facets={:?})", self.n, self.facets)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "void on [{}]", self.n);
        }
        write!(f, "[{}] ", self.n)?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{facet}")?;
        }
        Ok(())
    }
}

impl PartialOrd for SimplicialComplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimplicialComplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            self.facets
                .iter()
                .map(|f| f.to_vec())
                .cmp(other.facets.iter().map(|f| f.to_vec()))
        })
    }
}
