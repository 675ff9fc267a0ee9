//! Input configuration files and the JSON result document.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::poly::Polynomial;
use crate::algebra::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::matroid::VectorConfig;
use crate::verify::CheckReport;

/// `matrix` holds the rows of the `d x N` matrix whose columns are the
/// vectors of `X`, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ConfigFile {
    pub fn parse_toml(text: &str) -> Result<Self> {
        let c: ConfigFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let c: ConfigFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    /// JSON for `.json` files, TOML otherwise.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::parse_json(&text)
        } else {
            Self::parse_toml(&text)
        }
    }

    /// Rows separated by `;`, entries by `,`: `"1,0,1;0,1,1"`.
    pub fn parse_inline(text: &str) -> Result<Self> {
        let matrix = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad matrix entry {e:?}")))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let c = ConfigFile { matrix, labels: None };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let cols = self.matrix.first().map_or(0, Vec::len);
        if self.matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("matrix rows have different lengths".into()));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != cols {
                return Err(Error::Parse(format!("{} labels for {cols} columns", labels.len())));
            }
        }
        Ok(())
    }

    pub fn to_config(&self) -> Result<VectorConfig> {
        VectorConfig::from_rows(&self.matrix)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

/// A polynomial as graded-lex ordered terms, plus a readable rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub nvars: usize,
    pub text: String,
    pub terms: Vec<TermDoc>,
}

impl PolyDoc {
    pub fn new(p: &Polynomial) -> Self {
        PolyDoc {
            nvars: p.nvars(),
            text: p.to_string(),
            terms: p
                .terms()
                .map(|(e, c)| TermDoc {
                    exponents: e.as_slice().to_vec(),
                    coefficient: rational::format(c),
                })
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), rational::parse(&t.coefficient)?)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(self.nvars, terms)
    }
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

pub fn parse_rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| rational::parse(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub indices: Vec<usize>,
    pub external_activity: Vec<usize>,
    pub q: PolyDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FzDoc {
    pub z: Vec<i64>,
    pub interior: bool,
    pub f: PolyDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueDoc {
    pub z: Vec<i64>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    CheckTu {
        totally_unimodular: bool,
        rank: usize,
        spanning: bool,
    },
    Bases {
        count: usize,
        bases: Vec<BasisDoc>,
    },
    Cocircuits {
        count: usize,
        cocircuits: Vec<Vec<usize>>,
    },
    Space {
        space: String,
        dimension: usize,
        dims: Vec<usize>,
        /// Basis polynomials grouped by degree.
        basis: Vec<Vec<PolyDoc>>,
    },
    Zonotope {
        w: Vec<String>,
        volume: u64,
        lattice_points: Vec<Vec<i64>>,
        interior_points: Vec<Vec<i64>>,
        shifted_points: Vec<Vec<i64>>,
    },
    Fz {
        w: Vec<String>,
        entries: Vec<FzDoc>,
    },
    Interpolate {
        values: Vec<ValueDoc>,
        polynomial: PolyDoc,
    },
    BoxEval {
        point: Vec<String>,
        /// Set when `u` lies on an affine hyperplane and the value is the
        /// limit from this direction.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        direction: Option<Vec<String>>,
        value: String,
    },
    Count {
        point: Vec<i64>,
        count: u64,
    },
    ChamberPiece {
        point: Vec<i64>,
        perturbation: Vec<String>,
        chamber: Vec<i8>,
        piece: PolyDoc,
        value: String,
    },
    Verify {
        passed: bool,
        reports: Vec<CheckReport>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<String>,
    pub result: Payload,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `z` written as `1,-2,0`.
pub fn parse_point(text: &str) -> Result<Vec<i64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|e| {
            e.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {e:?}")))
        })
        .collect()
}

/// `u` written as `1/2,3,-1/4`.
pub fn parse_rational_point(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(rational::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn config_formats_agree() {
        let a = ConfigFile::parse_toml("matrix = [[1, 0, 1], [0, 1, 1]]\nlabels = [\"a\", \"b\", \"c\"]\n").unwrap();
        let b = ConfigFile::parse_json(r#"{"matrix": [[1, 0, 1], [0, 1, 1]], "labels": ["a", "b", "c"]}"#).unwrap();
        let c = ConfigFile::parse_inline("1,0,1;0,1,1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matrix, c.matrix);
        assert_eq!(a.to_config().unwrap().fingerprint(), "d2:[1,0][0,1][1,1]");
        assert!(ConfigFile::parse_inline("1,0;1").is_err());
        assert!(ConfigFile::parse_toml("matrix = [[1, 0]]\nlabels = [\"a\"]\n").is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let p = Polynomial::from_terms(2, vec![(vec![0, 0], int(1)), (vec![1, 1], ratio(-3, 7))]).unwrap();
        let doc = PolyDoc::new(&p);
        assert_eq!(doc.terms[1].coefficient, "-3/7");
        assert_eq!(doc.to_polynomial().unwrap(), p);
    }

    #[test]
    fn document_round_trip() {
        let doc = ResultDocument {
            command: "box-eval".into(),
            config: Some(ConfigFile::parse_inline("1,1").unwrap()),
            fingerprint: Some("d1:[1][1]".into()),
            result: Payload::BoxEval {
                point: vec!["1/2".into()],
                direction: None,
                value: "1/2".into(),
            },
        };
        let text = doc.to_json();
        let back = ResultDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }
}
