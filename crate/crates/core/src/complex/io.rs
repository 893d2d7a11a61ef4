use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Relabeled, SimplicialComplex};
use crate::error::{Error, Result};
use crate::matrix::DVector;

/// On-disk complex: `{"n": 5, "facets": [[1,2],[2,3,4]], "d": [2,2,3,2,2]}`.
///
/// `facets` may be any generating sets; they are normalized on load. `d` is
/// optional and defaults to all 2s. `labels`, written by `link` and `delete`,
/// records the original label of each vertex and is ignored on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
}

impl ComplexFile {
    pub fn from_complex(c: &SimplicialComplex) -> Self {
        ComplexFile {
            n: c.n(),
            facets: c.facet_lists(),
            d: None,
            labels: None,
        }
    }

    pub fn from_relabeled(r: &Relabeled) -> Self {
        ComplexFile {
            labels: Some(r.labels.clone()),
            ..Self::from_complex(&r.complex)
        }
    }

    pub fn with_levels(mut self, d: &DVector) -> Self {
        self.d = Some(d.levels().to_vec());
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facet_lists(self.n, &self.facets)
    }

    /// The level vector, defaulting to all 2s.
    pub fn levels(&self) -> Result<DVector> {
        match &self.d {
            Some(d) => {
                if d.len() != self.n {
                    return Err(Error::input(format!(
                        "d has {} entries but the complex has {} vertices",
                        d.len(),
                        self.n
                    )));
                }
                DVector::new(d.clone())
            }
            None => Ok(DVector::binary(self.n)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex files always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normalizes_generators() {
        let f = ComplexFile::parse(r#"{"n": 3, "facets": [[1], [1, 2], [3]]}"#).unwrap();
        let c = f.complex().unwrap();
        assert_eq!(c.facet_lists(), vec![vec![1, 2], vec![3]]);
        assert_eq!(f.levels().unwrap().levels(), &[2, 2, 2]);
    }

    #[test]
    fn round_trip() {
        let c = SimplicialComplex::from_facet_lists(5, &[vec![1, 2], vec![2, 3, 4]]).unwrap();
        let text = ComplexFile::from_complex(&c).to_json();
        assert_eq!(text, r#"{"n":5,"facets":[[1,2],[2,3,4]]}"#);
        assert_eq!(ComplexFile::parse(&text).unwrap().complex().unwrap(), c);
    }

    #[test]
    fn bad_files() {
        let f = ComplexFile::parse(r#"{"n": 2, "facets": [[1, 3]]}"#).unwrap();
        assert!(f.complex().unwrap_err().to_string().contains("[1, 3]"));
        let f = ComplexFile::parse(r#"{"n": 2, "facets": [[1]], "d": [2]}"#).unwrap();
        assert!(f.levels().is_err());
        let f = ComplexFile::parse(r#"{"n": 1, "facets": [[1]], "d": [1]}"#).unwrap();
        assert!(f.levels().is_err());
        assert!(ComplexFile::parse(r#"{"n": 1, "facet": []}"#).is_err());
    }
}
