use std::sync::OnceLock;

use serde::Serialize;

use crate::complex::{find_isomorphism, NamedComplex, Relabeled, SimplicialComplex};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Ground sets above this size make the minor search (3^n pairs) impractical.
pub const MAX_MINOR_SEARCH_VERTICES: usize = 16;

/// A minor `link_r(C \ s)` isomorphic to a forbidden complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbiddenMinorWitness {
    pub r: VertexSet,
    pub s: VertexSet,
    pub kind: NamedComplex,
    /// Vertices of the minor, in the labels of the searched complex.
    pub vertices: Vec<usize>,
    /// `map[i]` is the vertex of `kind` that `vertices[i]` is sent to.
    pub map: Vec<usize>,
}

impl ForbiddenMinorWitness {
    /// Checks the witness against `c`.
    pub fn verify(&self, c: &SimplicialComplex) -> bool {
        let Ok(m) = c.minor(self.r, self.s) else {
            return false;
        };
        let Ok(target) = self.kind.complex() else {
            return false;
        };
        m.labels == self.vertices && m.complex.relabel(&self.map).is_ok_and(|img| img == target)
    }
}

fn catalog() -> &'static [(NamedComplex, SimplicialComplex)] {
    static CATALOG: OnceLock<Vec<(NamedComplex, SimplicialComplex)>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        NamedComplex::FORBIDDEN
            .iter()
            .map(|&k| (k, k.complex().expect("catalog complexes are valid")))
            .collect()
    })
}

/// Matches `c` against the catalog and the `∂Δk ⊔ {v}` family.
pub(crate) fn match_forbidden(c: &SimplicialComplex) -> Option<(NamedComplex, Vec<usize>)> {
    if let Some(m) = match_boundary_plus_vertex(c) {
        return Some(m);
    }
    for (kind, target) in catalog() {
        if target.n() != c.n() || target.facets().len() != c.facets().len() {
            continue;
        }
        if let Some(map) = find_isomorphism(c, target) {
            return Some((*kind, map));
        }
    }
    None
}

/// `∂Δk ⊔ {v}`, `k ≥ 1`: `k + 2` vertices, no ghosts, `k + 2` facets, one of
/// them the point `{v}` and the rest of size `k` (hence every `k`-subset of the
/// other vertices). For `k = 1` all three facets are points.
fn match_boundary_plus_vertex(c: &SimplicialComplex) -> Option<(NamedComplex, Vec<usize>)> {
    let n = c.n();
    if n < 3 || c.facets().len() != n || !c.ghost_vertices().is_empty() {
        return None;
    }
    let k = n - 2;
    let points: Vec<VertexSet> = c.facets().iter().filter(|f| f.len() == 1).copied().collect();
    let v = match (k, points.len()) {
        (1, 3) => n,
        (_, 1) if k > 1 => points[0].min()?,
        _ => return None,
    };
    if c.facets().iter().any(|f| f.len() != 1 && f.len() != k) {
        return None;
    }
    // catalog labels: boundary on 1..=k+1, extra vertex k+2
    let mut map = vec![0; n];
    for (i, u) in c.ground_set().without(v).iter().enumerate() {
        map[u - 1] = i + 1;
    }
    map[v - 1] = n;
    Some((NamedComplex::BoundarySimplexPlusVertex(k), map))
}

/// Every `(r, s)` pair with `r` a face of `C \ s`, ordered by `|s|`, `|r|`,
/// then lexicographically on `s` and `r`.
pub(crate) fn minor_pairs(c: &SimplicialComplex) -> Vec<(VertexSet, VertexSet)> {
    let mut pairs = Vec::new();
    for s in c.ground_set().subsets() {
        for r in c.ground_set().minus(s).subsets() {
            if c.contains_face(r) {
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
}

/// The first forbidden minor in scan order, with the number of minors checked.
pub(crate) fn search(c: &SimplicialComplex) -> Result<(Option<ForbiddenMinorWitness>, usize)> {
    if c.n() > MAX_MINOR_SEARCH_VERTICES {
        return Err(Error::Size {
            what: format!("forbidden-minor search on {} vertices", c.n()),
            required: 3u128.pow(c.n() as u32),
            cap: 3u128.pow(MAX_MINOR_SEARCH_VERTICES as u32),
            hint: "use the structural method".into(),
        });
    }
    let mut checked = 0;
    for (r, s) in minor_pairs(c) {
        if c.n() - r.len() - s.len() < 3 {
            continue;
        }
        let m: Relabeled = c.minor(r, s)?;
        checked += 1;
        if let Some((kind, map)) = match_forbidden(&m.complex) {
            return Ok((
                Some(ForbiddenMinorWitness {
                    r,
                    s,
                    kind,
                    vertices: m.labels,
                    map,
                }),
                checked,
            ));
        }
    }
    Ok((None, checked))
}

/// A minor isomorphic to P4, O6, O6*, J1, J1*, J2 or some `∂Δk ⊔ {v}`, first
/// in scan order (smallest deletion, then smallest link set).
pub fn find_forbidden_minor(c: &SimplicialComplex) -> Result<Option<ForbiddenMinorWitness>> {
    Ok(search(c)?.0)
}
