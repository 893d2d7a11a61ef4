//! Isomorphism testing and canonical forms for small complexes.
//!
//! Vertices are colored by iterated refinement (a vertex's new color records its
//! old color and the colors of the facets it lies in). Canonical labelings come
//! from individualizing one vertex at a time; vertices lying in exactly the same
//! facets are interchangeable, so only one of each such twin class is tried.

use std::collections::BTreeMap;

use super::SimplicialComplex;
use crate::vertex_set::VertexSet;

/// Label-independent encoding: equal exactly for isomorphic complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub facets: Vec<u64>,
}

type Signature = (u32, Vec<(usize, Vec<u32>)>);

fn signature(c: &SimplicialComplex, colors: &[u32], v: usize) -> Signature {
    let mut around: Vec<(usize, Vec<u32>)> = c
        .facets
        .iter()
        .filter(|f| f.contains(v))
        .map(|f| {
            let mut cols: Vec<u32> = f.iter().map(|u| colors[u - 1]).collect();
            cols.sort_unstable();
            (f.len(), cols)
        })
        .collect();
    around.sort();
    (colors[v - 1], around)
}

/// Refines the colorings of several complexes together so that color values
/// mean the same thing across all of them. Returns false if the color
/// histograms diverge (the complexes cannot be isomorphic).
fn refine_jointly(cs: &[&SimplicialComplex], colors: &mut [Vec<u32>]) -> bool {
    loop {
        let sigs: Vec<Vec<Signature>> = cs
            .iter()
            .zip(colors.iter())
            .map(|(c, col)| (1..=c.n).map(|v| signature(c, col, v)).collect())
            .collect();
        let mut ranks: BTreeMap<&Signature, u32> = BTreeMap::new();
        for s in sigs.iter().flatten() {
            ranks.insert(s, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i as u32;
        }
        let before = count_classes(&colors[0]);
        for (col, sig) in colors.iter_mut().zip(&sigs) {
            for (c, s) in col.iter_mut().zip(sig) {
                *c = ranks[s];
            }
        }
        let first = histogram(&colors[0]);
        if colors.iter().skip(1).any(|c| histogram(c) != first) {
            return false;
        }
        if count_classes(&colors[0]) == before {
            return true;
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn histogram(colors: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

fn refine(c: &SimplicialComplex, colors: &mut Vec<u32>) {
    let mut one = [std::mem::take(colors)];
    refine_jointly(&[c], &mut one);
    *colors = std::mem::take(&mut one[0]);
}

/// Twin class id per vertex: vertices contained in exactly the same facets.
fn twin_classes(c: &SimplicialComplex) -> Vec<usize> {
    let membership: Vec<Vec<usize>> = (1..=c.n)
        .map(|v| {
            c.facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.contains(v))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut ids: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    membership
        .iter()
        .map(|m| {
            let next = ids.len();
            *ids.entry(m).or_insert(next)
        })
        .collect()
}

fn relabeled_masks(c: &SimplicialComplex, labeling: &[usize]) -> Vec<u64> {
    let mut masks: Vec<u64> = c
        .facets
        .iter()
        .map(|f| f.map_through(labeling).bits())
        .collect();
    masks.sort_unstable();
    masks
}

struct CanonSearch<'a> {
    c: &'a SimplicialComplex,
    twins: Vec<usize>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn search(&mut self, colors: Vec<u32>) {
        let n = self.c.n;
        let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for v in 1..=n {
            by_color.entry(colors[v - 1]).or_default().push(v);
        }
        let Some(cell) = by_color.values().find(|cell| cell.len() > 1) else {
            // discrete: vertex v gets label (rank of its color) + 1
            let labeling: Vec<usize> = colors.iter().map(|&c| c as usize + 1).collect();
            let masks = relabeled_masks(self.c, &labeling);
            if self.best.as_ref().is_none_or(|(b, _)| masks < *b) {
                self.best = Some((masks, labeling));
            }
            return;
        };
        let cell = cell.clone();
        let mut tried = Vec::new();
        for &v in &cell {
            if tried.contains(&self.twins[v - 1]) {
                continue;
            }
            tried.push(self.twins[v - 1]);
            let mut keys: Vec<(u32, bool)> = colors
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, i + 1 != v))
                .collect();
            let mut sorted = keys.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let mut next: Vec<u32> = keys
                .drain(..)
                .map(|k| sorted.binary_search(&k).unwrap() as u32)
                .collect();
            refine(self.c, &mut next);
            self.search(next);
        }
    }
}

/// Canonical form together with the canonical labeling (`labeling[v - 1]` is
/// the canonical label of vertex `v`).
fn canonical_labeling(c: &SimplicialComplex) -> (CanonicalForm, Vec<usize>) {
    let mut colors = vec![0u32; c.n];
    refine(c, &mut colors);
    let mut s = CanonSearch {
        c,
        twins: twin_classes(c),
        best: None,
    };
    s.search(colors);
    let (facets, labeling) = s.best.unwrap_or_default();
    (CanonicalForm { n: c.n, facets }, labeling)
}

pub fn canonical_form(c: &SimplicialComplex) -> CanonicalForm {
    canonical_labeling(c).0
}

/// A vertex bijection `map` (`map[v - 1]` is the image of `v`) carrying the
/// facets of `a` onto those of `b`, if one exists.
pub fn find_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Vec<usize>> {
    if a.n != b.n || a.facets.len() != b.facets.len() {
        return None;
    }
    let (fa, la) = canonical_labeling(a);
    let (fb, lb) = canonical_labeling(b);
    if fa != fb {
        return None;
    }
    let mut inverse_b = vec![0; b.n];
    for (v, &l) in lb.iter().enumerate() {
        inverse_b[l - 1] = v + 1;
    }
    Some(la.iter().map(|&l| inverse_b[l - 1]).collect())
}

pub fn is_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Every isomorphism from `a` onto `b`, in lexicographic order of the maps.
pub fn isomorphisms(a: &SimplicialComplex, b: &SimplicialComplex) -> Vec<Vec<usize>> {
    if a.n != b.n || a.facets.len() != b.facets.len() {
        return Vec::new();
    }
    let mut colors = vec![vec![0u32; a.n], vec![0u32; b.n]];
    if !refine_jointly(&[a, b], &mut colors) {
        return Vec::new();
    }
    let target: std::collections::HashSet<u64> = b.facets.iter().map(|f| f.bits()).collect();
    let mut out = Vec::new();
    let mut map = vec![0usize; a.n];
    extend(a, &target, &colors, 1, VertexSet::EMPTY, &mut map, &mut out);
    out
}

fn extend(
    a: &SimplicialComplex,
    target: &std::collections::HashSet<u64>,
    colors: &[Vec<u32>],
    v: usize,
    used: VertexSet,
    map: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if v > a.n {
        out.push(map.clone());
        return;
    }
    for w in 1..=a.n {
        if used.contains(w) || colors[0][v - 1] != colors[1][w - 1] {
            continue;
        }
        map[v - 1] = w;
        let done = VertexSet::full(v);
        let consistent = a
            .facets
            .iter()
            .filter(|f| f.is_subset(done))
            .all(|f| target.contains(&f.map_through(map).bits()));
        if consistent {
            extend(a, target, colors, v + 1, used.with(w), map, out);
        }
    }
    map[v - 1] = 0;
}
