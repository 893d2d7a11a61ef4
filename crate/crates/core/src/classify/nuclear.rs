use serde::Serialize;

use crate::complex::{Relabeled, SimplicialComplex};
use crate::vertex_set::VertexSet;

/// One peeling move, with the vertex in the labels of the input complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", content = "vertex", rename_all = "snake_case")]
pub enum PeelStep {
    StripGhost(usize),
    StripCone(usize),
    PeelLawrence(usize),
}

impl PeelStep {
    pub fn vertex(self) -> usize {
        match self {
            PeelStep::StripGhost(v) | PeelStep::StripCone(v) | PeelStep::PeelLawrence(v) => v,
        }
    }
}

/// What is left after peeling, on vertices named in input labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Nucleus {
    /// Two disjoint simplices on `m + 1` and `n + 1` vertices.
    DisjointSimplices { m: usize, n: usize, left: Vec<usize>, right: Vec<usize> },
    /// Facets omit exactly one vertex of each part; `m, n ≥ 1`.
    Dmn { m: usize, n: usize, left: Vec<usize>, right: Vec<usize> },
    /// `Δk` on `k + 1` vertices, `k ≥ -2` (`-1` irrelevant, `-2` void).
    Simplex { k: i32, vertices: Vec<usize> },
}

impl Nucleus {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = match self {
            Nucleus::DisjointSimplices { left, right, .. } | Nucleus::Dmn { left, right, .. } => {
                left.iter().chain(right).copied().collect()
            }
            Nucleus::Simplex { vertices, .. } => vertices.clone(),
        };
        v.sort_unstable();
        v
    }

    pub(crate) fn facets(&self) -> Vec<VertexSet> {
        match self {
            Nucleus::DisjointSimplices { left, right, .. } => vec![
                VertexSet::from_labels(left.iter().copied()),
                VertexSet::from_labels(right.iter().copied()),
            ],
            Nucleus::Dmn { left, right, .. } => {
                let all = VertexSet::from_labels(left.iter().chain(right).copied());
                let mut out = Vec::new();
                for &a in left {
                    for &b in right {
                        out.push(all.without(a).without(b));
                    }
                }
                out
            }
            Nucleus::Simplex { k: -2, .. } => Vec::new(),
            Nucleus::Simplex { vertices, .. } => vec![VertexSet::from_labels(vertices.iter().copied())],
        }
    }
}

/// A certificate that a complex is nuclear: applying `steps` in order peels
/// the input down to `nucleus`; rebuilding in reverse reproduces the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuclearDecomposition {
    pub steps: Vec<PeelStep>,
    pub nucleus: Nucleus,
}

impl NuclearDecomposition {
    /// Rebuilds the complex on `{1..n}` by undoing the steps from the nucleus.
    pub fn replay(&self, n: usize) -> crate::Result<SimplicialComplex> {
        let mut ground = VertexSet::from_labels(self.nucleus.vertices());
        let mut facets = self.nucleus.facets();
        for step in self.steps.iter().rev() {
            match *step {
                PeelStep::StripGhost(v) => ground = ground.with(v),
                PeelStep::StripCone(v) => {
                    ground = ground.with(v);
                    for f in &mut facets {
                        *f = f.with(v);
                    }
                }
                PeelStep::PeelLawrence(v) => {
                    for f in &mut facets {
                        *f = f.with(v);
                    }
                    facets.push(ground);
                    ground = ground.with(v);
                }
            }
        }
        if ground != VertexSet::full(n) {
            return Err(crate::Error::Consistency(format!(
                "decomposition covers {ground}, not the ground set 1..={n}"
            )));
        }
        SimplicialComplex::from_facets(n, facets)
    }

    /// Vertices introduced by a Lawrence lifting.
    pub fn lawrence_vertices(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                PeelStep::PeelLawrence(v) => Some(*v),
                _ => None,
            })
            .collect()
    }
}

/// Peels ghosts, then cones, then tests the nuclei, then peels a Lawrence
/// vertex; `Err` carries the complex the loop stalled on.
pub(crate) fn peel(c: &SimplicialComplex) -> Result<NuclearDecomposition, Relabeled> {
    let mut steps = Vec::new();
    let mut cur = Relabeled {
        complex: c.clone(),
        labels: (1..=c.n()).collect(),
    };
    let compose = |outer: &Relabeled, inner: Relabeled| Relabeled {
        labels: inner.labels.iter().map(|&v| outer.labels[v - 1]).collect(),
        complex: inner.complex,
    };
    loop {
        let ghosts = cur.complex.ghost_vertices();
        if !ghosts.is_empty() {
            steps.extend(ghosts.iter().map(|v| PeelStep::StripGhost(cur.original(v))));
            let next = cur.complex.delete(ghosts).expect("ghosts are in the ground set");
            cur = compose(&cur, next);
        }
        let k = &cur.complex;
        if k.is_void() || k.is_full_simplex() {
            let kdim = if k.is_void() { -2 } else { k.n() as i32 - 1 };
            let nucleus = Nucleus::Simplex {
                k: kdim,
                vertices: cur.labels.clone(),
            };
            return Ok(NuclearDecomposition { steps, nucleus });
        }
        let cones = k.cone_vertices();
        if !cones.is_empty() {
            steps.extend(cones.iter().map(|v| PeelStep::StripCone(cur.original(v))));
            let next = cur.complex.link(cones).expect("cone vertices form a face");
            cur = compose(&cur, next);
            continue;
        }
        if let Some((a, b)) = two_disjoint_parts(k.facets(), k.ground_set()) {
            let nucleus = Nucleus::DisjointSimplices {
                m: a.len() - 1,
                n: b.len() - 1,
                left: cur.pull_back(a).to_vec(),
                right: cur.pull_back(b).to_vec(),
            };
            return Ok(NuclearDecomposition { steps, nucleus });
        }
        let dual = k.alexander_dual();
        if let Some((a, b)) = two_disjoint_parts(dual.facets(), k.ground_set()) {
            if a.len() >= 2 && b.len() >= 2 {
                let nucleus = Nucleus::Dmn {
                    m: a.len() - 1,
                    n: b.len() - 1,
                    left: cur.pull_back(a).to_vec(),
                    right: cur.pull_back(b).to_vec(),
                };
                return Ok(NuclearDecomposition { steps, nucleus });
            }
        }
        let Some(big) = k.big_facets().into_iter().min_by(|x, y| x.lex_cmp(*y)) else {
            return Err(cur);
        };
        let v = k.ground_set().minus(big).min().expect("a big facet misses one vertex");
        steps.push(PeelStep::PeelLawrence(cur.original(v)));
        let next = k.link(VertexSet::singleton(v)).expect("every non-ghost vertex is a face");
        cur = compose(&cur, next);
    }
}

/// The two facets when there are exactly two, disjoint, covering `ground`;
/// the part holding the smallest vertex comes first.
fn two_disjoint_parts(facets: &[VertexSet], ground: VertexSet) -> Option<(VertexSet, VertexSet)> {
    match facets {
        [a, b] if a.is_disjoint(*b) && a.union(*b) == ground && !a.is_empty() && !b.is_empty() => {
            if a.min() < b.min() {
                Some((*a, *b))
            } else {
                Some((*b, *a))
            }
        }
        _ => None,
    }
}

/// A nuclear decomposition, if the greedy peeling reaches a nucleus.
pub fn recognize_nuclear(c: &SimplicialComplex) -> Option<NuclearDecomposition> {
    peel(c).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::NamedComplex;

    fn named(s: &str) -> SimplicialComplex {
        s.parse::<NamedComplex>().unwrap().complex().unwrap()
    }

    fn lists(n: usize, f: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facet_lists(n, f).unwrap()
    }

    #[test]
    fn triangle_boundary_peels_to_two_points() {
        let c = lists(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let d = recognize_nuclear(&c).unwrap();
        assert_eq!(d.steps, vec![PeelStep::PeelLawrence(3)]);
        assert_eq!(
            d.nucleus,
            Nucleus::DisjointSimplices { m: 0, n: 0, left: vec![1], right: vec![2] }
        );
        assert_eq!(d.replay(3).unwrap(), c);
    }

    #[test]
    fn cycle_is_dmn() {
        let d = recognize_nuclear(&named("c4")).unwrap();
        assert!(d.steps.is_empty());
        assert!(matches!(d.nucleus, Nucleus::Dmn { m: 1, n: 1, .. }));
    }

    #[test]
    fn forbidden_complexes_stall() {
        for k in NamedComplex::FORBIDDEN {
            assert!(recognize_nuclear(&k.complex().unwrap()).is_none(), "{k}");
        }
        assert!(recognize_nuclear(&named("boundary-plus-vertex:2")).is_none());
    }

    #[test]
    fn coned_disjoint_simplices() {
        let c = named("disjoint:2,3").cone(2).unwrap();
        let d = recognize_nuclear(&c).unwrap();
        assert_eq!(d.steps, vec![PeelStep::StripCone(8), PeelStep::StripCone(9)]);
        assert_eq!(
            d.nucleus,
            Nucleus::DisjointSimplices { m: 2, n: 3, left: vec![1, 2, 3], right: vec![4, 5, 6, 7] }
        );
        assert_eq!(d.replay(9).unwrap(), c);
    }

    #[test]
    fn simplices_void_and_irrelevant() {
        let d = recognize_nuclear(&SimplicialComplex::simplex(4)).unwrap();
        assert_eq!(d.nucleus, Nucleus::Simplex { k: 3, vertices: vec![1, 2, 3, 4] });
        let d = recognize_nuclear(&SimplicialComplex::void(2)).unwrap();
        assert_eq!(d.nucleus, Nucleus::Simplex { k: -2, vertices: vec![] });
        assert_eq!(d.replay(2).unwrap(), SimplicialComplex::void(2));
        let d = recognize_nuclear(&SimplicialComplex::irrelevant(2)).unwrap();
        assert_eq!(d.nucleus, Nucleus::Simplex { k: -1, vertices: vec![] });
        assert_eq!(d.replay(2).unwrap(), SimplicialComplex::irrelevant(2));
    }

    #[test]
    fn lawrence_of_cycle_replays() {
        let c = named("c4").lawrence().unwrap();
        let d = recognize_nuclear(&c).unwrap();
        assert_eq!(d.lawrence_vertices(), vec![5]);
        assert_eq!(d.replay(5).unwrap(), c);
    }
}
