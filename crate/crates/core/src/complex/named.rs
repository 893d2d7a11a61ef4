use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Named complexes with fixed labelings.
///
/// `DisjointSimplices(m, n)` and `Dmn(m, n)` put the part `M` on `1..=m+1` and
/// `N` on the following `n + 1` vertices. `O6` is the octahedron boundary with
/// antipodal pairs `(1,4)`, `(2,5)`, `(3,6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedComplex {
    /// `Δk` on `k + 1` vertices; `k = -1` is the irrelevant complex and
    /// `k = -2` the void complex, both on an empty ground set.
    Simplex(i32),
    DisjointSimplices(usize, usize),
    Dmn(usize, usize),
    P4,
    O6,
    O6star,
    J1,
    J1star,
    J2,
    /// Boundary of `Δk` on `1..=k+1` plus the isolated vertex `k + 2`.
    BoundarySimplexPlusVertex(usize),
    Cycle4,
}

impl NamedComplex {
    /// The fixed members of the forbidden-minor catalog (the infinite
    /// boundary-plus-vertex family is matched separately).
    pub const FORBIDDEN: [NamedComplex; 6] = [
        NamedComplex::P4,
        NamedComplex::O6,
        NamedComplex::O6star,
        NamedComplex::J1,
        NamedComplex::J1star,
        NamedComplex::J2,
    ];

    pub fn complex(self) -> Result<SimplicialComplex> {
        standard_complex(self)
    }
}

fn lists(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::from_facet_lists(n, facets).expect("catalog facets are in range")
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::input(format!(
            "named complex needs {n} vertices, above the supported maximum {MAX_VERTICES}"
        )));
    }
    Ok(())
}

pub fn standard_complex(kind: NamedComplex) -> Result<SimplicialComplex> {
    use NamedComplex::*;
    Ok(match kind {
        Simplex(k) if k < -2 => {
            return Err(Error::input(format!("simplex dimension {k} is below -2")))
        }
        Simplex(-2) => SimplicialComplex::void(0),
        Simplex(-1) => SimplicialComplex::irrelevant(0),
        Simplex(k) => {
            check_size(k as usize + 1)?;
            SimplicialComplex::simplex(k as usize + 1)
        }
        DisjointSimplices(m, n) => {
            let total = m + n + 2;
            check_size(total)?;
            let left = VertexSet::full(m + 1);
            SimplicialComplex::from_normalized(total, vec![left, VertexSet::full(total).minus(left)])
        }
        Dmn(m, n) => {
            let total = m + n + 2;
            check_size(total)?;
            let full = VertexSet::full(total);
            let mut facets = Vec::new();
            for a in 1..=m + 1 {
                for b in m + 2..=total {
                    facets.push(full.without(a).without(b));
                }
            }
            SimplicialComplex::from_normalized(total, facets)
        }
        P4 => lists(4, &[&[1, 2], &[2, 3], &[3, 4]]),
        O6 => {
            let mut facets = Vec::new();
            for a in [1, 4] {
                for b in [2, 5] {
                    for c in [3, 6] {
                        facets.push(VertexSet::from_labels([a, b, c]));
                    }
                }
            }
            SimplicialComplex::from_normalized(6, facets)
        }
        O6star => lists(6, &[&[2, 3, 5, 6], &[1, 3, 4, 6], &[1, 2, 4, 5]]),
        J1 => lists(5, &[&[1, 2], &[1, 5], &[2, 3, 4], &[3, 4, 5]]),
        J1star => lists(5, &[&[1, 3, 4], &[2, 3, 5], &[2, 4, 5]]),
        J2 => lists(5, &[&[1, 2], &[2, 3, 5], &[3, 4], &[1, 4, 5]]),
        BoundarySimplexPlusVertex(k) => {
            if k == 0 {
                return Err(Error::input(
                    "boundary-plus-vertex family starts at k = 1".to_string(),
                ));
            }
            check_size(k + 2)?;
            let base = VertexSet::full(k + 1);
            let mut facets: Vec<VertexSet> = base.iter().map(|v| base.without(v)).collect();
            facets.push(VertexSet::singleton(k + 2));
            SimplicialComplex::from_normalized(k + 2, facets)
        }
        Cycle4 => lists(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]),
    })
}

impl fmt::Display for NamedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NamedComplex::*;
        match self {
            Simplex(k) => write!(f, "simplex:{k}"),
            DisjointSimplices(m, n) => write!(f, "disjoint:{m},{n}"),
            Dmn(m, n) => write!(f, "dmn:{m},{n}"),
            P4 => f.write_str("p4"),
            O6 => f.write_str("o6"),
            O6star => f.write_str("o6*"),
            J1 => f.write_str("j1"),
            J1star => f.write_str("j1*"),
            J2 => f.write_str("j2"),
            BoundarySimplexPlusVertex(k) => write!(f, "boundary-plus-vertex:{k}"),
            Cycle4 => f.write_str("c4"),
        }
    }
}

impl FromStr for NamedComplex {
    type Err = Error;

    /// Parses the names produced by `Display`, e.g. `j1*`, `dmn:1,2`, `simplex:-1`.
    fn from_str(s: &str) -> Result<Self> {
        use NamedComplex::*;
        let s = s.trim().to_ascii_lowercase();
        let (head, args) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s.as_str(), None),
        };
        let bad = || Error::input(format!("unknown named complex `{s}`"));
        let ints = |a: Option<&str>| -> Result<Vec<i64>> {
            a.ok_or_else(bad)?
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
                .collect()
        };
        let pair = |a: Option<&str>| -> Result<(usize, usize)> {
            match ints(a)?[..] {
                [m, n] if m >= 0 && n >= 0 => Ok((m as usize, n as usize)),
                _ => Err(bad()),
            }
        };
        Ok(match head {
            "p4" => P4,
            "o6" => O6,
            "o6*" | "o6star" => O6star,
            "j1" => J1,
            "j1*" | "j1star" => J1star,
            "j2" => J2,
            "c4" | "cycle4" => Cycle4,
            "simplex" => match ints(args)?[..] {
                [k] => Simplex(k.try_into().map_err(|_| bad())?),
                _ => return Err(bad()),
            },
            "disjoint" => {
                let (m, n) = pair(args)?;
                DisjointSimplices(m, n)
            }
            "dmn" => {
                let (m, n) = pair(args)?;
                Dmn(m, n)
            }
            "boundary-plus-vertex" => match ints(args)?[..] {
                [k] if k >= 1 => BoundarySimplexPlusVertex(k as usize),
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        })
    }
}
