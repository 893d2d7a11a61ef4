use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::vertex_set::VertexSet;

/// Shape of the 1-skeleton (on the non-ghost vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkeletonClass {
    CompleteGraph,
    /// Two complete graphs sharing a (possibly empty) clique.
    TwoCliquesGlued,
    /// A 4-cycle joined with a complete graph.
    IteratedConeOverC4,
    Other,
}

/// Classifies the 1-skeleton through its complement graph: with isolated
/// vertices removed, the complement must be empty, complete bipartite, or two
/// disjoint edges.
pub fn skeleton_class(c: &SimplicialComplex) -> SkeletonClass {
    let vertices = c.support();
    let adj = c.one_skeleton();
    let co = |v: usize| vertices.minus(adj[v - 1]).without(v);
    let h: VertexSet = vertices.iter().filter(|&v| !co(v).is_empty()).collect();
    if h.is_empty() {
        return SkeletonClass::CompleteGraph;
    }

    let mut components = Vec::new();
    let mut seen = VertexSet::EMPTY;
    for v in h.iter() {
        if seen.contains(v) {
            continue;
        }
        let mut comp = VertexSet::singleton(v);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(co(u));
            }
            frontier = next.minus(comp);
            comp = comp.union(next);
        }
        seen = seen.union(comp);
        components.push(comp);
    }

    if components.len() == 1 && is_complete_bipartite(components[0], &co) {
        return SkeletonClass::TwoCliquesGlued;
    }
    if components.len() == 2 && components.iter().all(|c| c.len() == 2) {
        return SkeletonClass::IteratedConeOverC4;
    }
    SkeletonClass::Other
}

fn is_complete_bipartite(comp: VertexSet, co: &impl Fn(usize) -> VertexSet) -> bool {
    let u = comp.min().expect("component is nonempty");
    let right = co(u);
    let left = comp.minus(right);
    left.iter().all(|v| co(v) == right) && right.iter().all(|v| co(v) == left)
}
