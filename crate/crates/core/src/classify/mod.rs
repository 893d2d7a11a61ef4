//! Binary unimodularity: the nuclear recognizer, the forbidden-minor search,
//! the 1-skeleton pre-filter, and the matrix oracle, behind one entry point.

mod forbidden;
mod nuclear;
mod skeleton;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::matrix::{design_matrix, DVector};
use crate::oracle::{self, CircuitWitness, OracleConfig, OracleVerdict, DEFAULT_SEED, DEFAULT_TRIALS};

pub use forbidden::{find_forbidden_minor, ForbiddenMinorWitness, MAX_MINOR_SEARCH_VERTICES};
pub(crate) use forbidden::minor_pairs;
pub use nuclear::{recognize_nuclear, Nucleus, NuclearDecomposition, PeelStep};
pub use skeleton::{skeleton_class, SkeletonClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Nuclear recognition (with the 1-skeleton pre-filter).
    Structural,
    /// Forbidden-minor search.
    Minors,
    /// Circuit oracle on the binary design matrix.
    Matrix,
    /// All three; disagreement is an error.
    All,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structural" => Ok(Method::Structural),
            "minors" => Ok(Method::Minors),
            "matrix" => Ok(Method::Matrix),
            "all" => Ok(Method::All),
            _ => Err(Error::input(format!(
                "unknown method '{s}' (expected structural, minors, matrix or all)"
            ))),
        }
    }
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodTag {
    Structural,
    Minors,
    MatrixExhaustive,
    /// Randomized circuit search found a witness.
    MatrixRandomized,
    /// Randomized search found nothing and the structural verdict was used.
    MatrixRandomizedWithStructural,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Decomposition(NuclearDecomposition),
    ForbiddenMinor(ForbiddenMinorWitness),
    Circuit(CircuitWitness),
    /// Peeling stalled on this complex (facets in input labels).
    NotNuclear {
        vertices: Vec<usize>,
        facets: Vec<Vec<usize>>,
        skeleton: SkeletonClass,
    },
    /// No forbidden minor among the minors checked.
    NoForbiddenMinor { minors_checked: usize },
    /// Every circuit (or cocircuit) was scanned.
    ExhaustiveScan { circuits_examined: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryVerdict {
    pub unimodular: bool,
    pub method: MethodTag,
    pub certificate: Certificate,
    /// Seed of the randomized search, when one ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub oracle: OracleConfig,
    /// Seed and trial count for the randomized fallback of the matrix method.
    pub seed: u64,
    pub trials: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            oracle: OracleConfig::default(),
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
        }
    }
}

pub fn classify_binary(c: &SimplicialComplex, method: Method) -> Result<BinaryVerdict> {
    classify_binary_with(c, method, &ClassifyConfig::default())
}

pub fn classify_binary_with(c: &SimplicialComplex, method: Method, cfg: &ClassifyConfig) -> Result<BinaryVerdict> {
    match method {
        Method::Structural => Ok(structural(c)),
        Method::Minors => minors(c),
        Method::Matrix => matrix(c, cfg),
        Method::All => all(c, cfg),
    }
}

fn structural(c: &SimplicialComplex) -> BinaryVerdict {
    let skeleton = skeleton_class(c);
    let stalled = |vertices: Vec<usize>, facets: Vec<Vec<usize>>| BinaryVerdict {
        unimodular: false,
        method: MethodTag::Structural,
        certificate: Certificate::NotNuclear { vertices, facets, skeleton },
        seed: None,
    };
    if skeleton == SkeletonClass::Other {
        return stalled((1..=c.n()).collect(), c.facet_lists());
    }
    match nuclear::peel(c) {
        Ok(d) => BinaryVerdict {
            unimodular: true,
            method: MethodTag::Structural,
            certificate: Certificate::Decomposition(d),
            seed: None,
        },
        Err(residual) => {
            let facets = residual
                .complex
                .facets()
                .iter()
                .map(|f| residual.pull_back(*f).to_vec())
                .collect();
            stalled(residual.labels, facets)
        }
    }
}

fn minors(c: &SimplicialComplex) -> Result<BinaryVerdict> {
    let (w, checked) = forbidden::search(c)?;
    Ok(match w {
        Some(w) => BinaryVerdict {
            unimodular: false,
            method: MethodTag::Minors,
            certificate: Certificate::ForbiddenMinor(w),
            seed: None,
        },
        None => BinaryVerdict {
            unimodular: true,
            method: MethodTag::Minors,
            certificate: Certificate::NoForbiddenMinor { minors_checked: checked },
            seed: None,
        },
    })
}

fn matrix(c: &SimplicialComplex, cfg: &ClassifyConfig) -> Result<BinaryVerdict> {
    let a = design_matrix(c, &DVector::binary(c.n()))?;
    let size_err = match oracle::is_unimodular_exact(&a, &cfg.oracle) {
        Ok(rep) => {
            let examined = rep.circuits_examined;
            return Ok(match rep.verdict {
                OracleVerdict::NonUnimodular(w) => BinaryVerdict {
                    unimodular: false,
                    method: MethodTag::MatrixExhaustive,
                    certificate: Certificate::Circuit(w),
                    seed: None,
                },
                _ => BinaryVerdict {
                    unimodular: true,
                    method: MethodTag::MatrixExhaustive,
                    certificate: Certificate::ExhaustiveScan { circuits_examined: examined },
                    seed: None,
                },
            });
        }
        Err(e @ Error::Size { .. }) => e,
        Err(e) => return Err(e),
    };
    let rep = oracle::is_unimodular_randomized(&a, cfg.seed, cfg.trials, &cfg.oracle)?;
    if let OracleVerdict::NonUnimodular(w) = rep.verdict {
        return Ok(BinaryVerdict {
            unimodular: false,
            method: MethodTag::MatrixRandomized,
            certificate: Certificate::Circuit(w),
            seed: Some(cfg.seed),
        });
    }
    let s = structural(c);
    if s.unimodular {
        return Ok(BinaryVerdict {
            method: MethodTag::MatrixRandomizedWithStructural,
            seed: Some(cfg.seed),
            ..s
        });
    }
    Err(size_err)
}

fn all(c: &SimplicialComplex, cfg: &ClassifyConfig) -> Result<BinaryVerdict> {
    let s = structural(c);
    let m = minors(c)?;
    let x = matrix(c, cfg)?;
    if s.unimodular != m.unimodular || s.unimodular != x.unimodular {
        let dump = |v: &BinaryVerdict| serde_json::to_string(v).unwrap_or_default();
        return Err(Error::Consistency(format!(
            "methods disagree on {c}: structural {}, minors {}, matrix {}",
            dump(&s),
            dump(&m),
            dump(&x)
        )));
    }
    let certificate = if s.unimodular { s.certificate } else { m.certificate };
    Ok(BinaryVerdict {
        unimodular: s.unimodular,
        method: MethodTag::All,
        certificate,
        seed: x.seed,
    })
}
