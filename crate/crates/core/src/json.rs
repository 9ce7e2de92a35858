//! JSON payload shapes: model files, polynomial/matrix/chain dumps, and
//! the absolute zeta expansion report.
//!
//! Exact-mode payloads carry rationals as "num/den" strings; float-mode
//! payloads carry plain numbers. Arc-aligned arrays always follow the
//! lexicographic (origin, terminus) arc order.

use crate::abszeta::{AbsZetaExpansion, ProductTerm};
use crate::error::{Error, Result};
use crate::graph::{Graph, MarkovChain};
use crate::ips::{build_dk_local, DkParams, LocalOperator};
use crate::matrix::Mat;
use crate::poly::Polynomial;
use crate::scalar::{rat_from_str, rat_to_string, Rat, RealScalar, Scalar};
use serde::{Deserialize, Serialize};

/// A number that may arrive as a JSON number or as an exact "num/den"
/// (or decimal) string.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum JsonScalar {
    Float(f64),
    Text(String),
}

impl JsonScalar {
    pub fn from_rat(r: &Rat) -> Self {
        JsonScalar::Text(rat_to_string(r))
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self {
            JsonScalar::Float(v) => Ok(*v),
            JsonScalar::Text(s) => rat_from_str(s)
                .map(|r| r.to_f64())
                .ok_or_else(|| Error::Parse(format!("bad numeric literal {s:?}"))),
        }
    }

    /// Exact rational reading: strings parse as rationals, numbers are
    /// re-rendered to their shortest decimal first, so a literal 0.1 means
    /// one tenth.
    pub fn to_rat(&self) -> Result<Rat> {
        let text = match self {
            JsonScalar::Float(v) => v.to_string(),
            JsonScalar::Text(s) => s.clone(),
        };
        rat_from_str(&text).ok_or_else(|| Error::Parse(format!("bad rational literal {text:?}")))
    }
}

/// On-disk local operator: either Domany-Kinzel parameters or 16 explicit
/// row-major entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalOperatorFile {
    Model {
        model: String,
        p: JsonScalar,
        q: JsonScalar,
    },
    Entries {
        local: Vec<JsonScalar>,
    },
}

impl LocalOperatorFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("local operator file: {e}")))
    }

    pub fn to_local_f64(&self) -> Result<LocalOperator<f64>> {
        match self {
            LocalOperatorFile::Model { model, p, q } => {
                if model != "dk" {
                    return Err(Error::Parse(format!("unknown model {model:?}")));
                }
                let params = DkParams::new(p.to_f64()?, q.to_f64()?)?;
                Ok(build_dk_local(&params))
            }
            LocalOperatorFile::Entries { local } => {
                let entries = local.iter().map(|v| v.to_f64()).collect::<Result<Vec<_>>>()?;
                LocalOperator::from_row_major(&entries)
            }
        }
    }

    pub fn to_local_exact(&self) -> Result<LocalOperator<Rat>> {
        match self {
            LocalOperatorFile::Model { model, p, q } => {
                if model != "dk" {
                    return Err(Error::Parse(format!("unknown model {model:?}")));
                }
                let params = DkParams::new(p.to_rat()?, q.to_rat()?)?;
                Ok(build_dk_local(&params))
            }
            LocalOperatorFile::Entries { local } => {
                let entries = local.iter().map(|v| v.to_rat()).collect::<Result<Vec<_>>>()?;
                LocalOperator::from_row_major(&entries)
            }
        }
    }
}

/// Polynomial payload: ascending coefficients plus the numeric mode.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolynomialJson {
    pub mode: String,
    pub coeffs: Vec<JsonScalar>,
}

impl PolynomialJson {
    pub fn from_float(p: &Polynomial<f64>) -> Self {
        PolynomialJson {
            mode: "float".into(),
            coeffs: p.coeffs().iter().map(|&c| JsonScalar::Float(c)).collect(),
        }
    }

    pub fn from_exact(p: &Polynomial<Rat>) -> Self {
        PolynomialJson {
            mode: "exact".into(),
            coeffs: p.coeffs().iter().map(JsonScalar::from_rat).collect(),
        }
    }

    pub fn to_float(&self) -> Result<Polynomial<f64>> {
        let coeffs = self.coeffs.iter().map(|c| c.to_f64()).collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coeffs))
    }

    pub fn to_exact(&self) -> Result<Polynomial<Rat>> {
        let coeffs = self.coeffs.iter().map(|c| c.to_rat()).collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

/// Matrix dump: row-major entries plus an optional index legend (vertex
/// labels or "(u,v)" arc names) describing what rows and columns mean.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub row_major: Vec<JsonScalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_order: Option<Vec<String>>,
}

impl MatrixJson {
    pub fn from_float(m: &Mat<f64>, index_order: Option<Vec<String>>) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            row_major: m.data().iter().map(|&v| JsonScalar::Float(v)).collect(),
            index_order,
        }
    }

    pub fn from_exact(m: &Mat<Rat>, index_order: Option<Vec<String>>) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            row_major: m.data().iter().map(JsonScalar::from_rat).collect(),
            index_order,
        }
    }

    pub fn to_float(&self) -> Result<Mat<f64>> {
        if self.row_major.len() != self.rows * self.cols {
            return Err(Error::Parse("matrix entry count mismatch".into()));
        }
        let data = self
            .row_major
            .iter()
            .map(|v| v.to_f64())
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_fn(self.rows, self.cols, |r, c| data[r * self.cols + c]))
    }
}

/// Arc names "(u,v)" in lexicographic order, for matrix legends.
pub fn arc_labels(graph: &Graph) -> Vec<String> {
    crate::graph::ArcSet::from_graph(graph)
        .arcs()
        .iter()
        .map(|&(u, v)| format!("({},{})", graph.labels()[u], graph.labels()[v]))
        .collect()
}

/// Graph-plus-probabilities payload.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ChainJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    /// Aligned with the lexicographic (origin, terminus) arc order.
    pub arc_probabilities: Vec<JsonScalar>,
}

impl ChainJson {
    pub fn from_chain_f64(chain: &MarkovChain<f64>) -> Self {
        ChainJson {
            vertices: chain.graph().labels().to_vec(),
            edges: chain.graph().edges().iter().map(|&(u, v)| [u, v]).collect(),
            arc_probabilities: chain.probs().iter().map(|&p| JsonScalar::Float(p)).collect(),
        }
    }

    pub fn from_chain_exact(chain: &MarkovChain<Rat>) -> Self {
        ChainJson {
            vertices: chain.graph().labels().to_vec(),
            edges: chain.graph().edges().iter().map(|&(u, v)| [u, v]).collect(),
            arc_probabilities: chain.probs().iter().map(JsonScalar::from_rat).collect(),
        }
    }

    pub fn to_chain_f64(&self, tol: f64) -> Result<MarkovChain<f64>> {
        let graph = Graph::new(
            self.vertices.clone(),
            self.edges.iter().map(|e| (e[0], e[1])).collect(),
        )?;
        let prob = self
            .arc_probabilities
            .iter()
            .map(|v| v.to_f64())
            .collect::<Result<Vec<_>>>()?;
        MarkovChain::new(graph, prob, tol)
    }

    pub fn to_chain_exact(&self) -> Result<MarkovChain<Rat>> {
        let graph = Graph::new(
            self.vertices.clone(),
            self.edges.iter().map(|e| (e[0], e[1])).collect(),
        )?;
        let prob = self
            .arc_probabilities
            .iter()
            .map(|v| v.to_rat())
            .collect::<Result<Vec<_>>>()?;
        MarkovChain::new(graph, prob, 0.0)
    }
}

/// One Gamma/sine factor in the expansion report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub shift: JsonScalar,
    pub exponent: i8,
}

impl TermJson {
    fn from_term(t: &ProductTerm) -> Self {
        TermJson {
            shift: JsonScalar::from_rat(&t.shift),
            exponent: t.exponent,
        }
    }
}

/// Absolute zeta expansion report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExpansionJson {
    pub deg_f: JsonScalar,
    #[serde(rename = "D")]
    pub weight: i64,
    #[serde(rename = "C")]
    pub sign: i8,
    pub critical_s: Option<JsonScalar>,
    pub gamma_terms: Vec<TermJson>,
    pub sine_terms: Vec<TermJson>,
    pub omega: Vec<usize>,
}

impl ExpansionJson {
    pub fn from_expansion(e: &AbsZetaExpansion) -> Self {
        ExpansionJson {
            deg_f: JsonScalar::from_rat(&e.deg_f),
            weight: e.weight,
            sign: e.sign,
            critical_s: e.critical_s.as_ref().map(JsonScalar::from_rat),
            gamma_terms: e.gamma_terms.iter().map(TermJson::from_term).collect(),
            sine_terms: e.sine_terms.iter().map(TermJson::from_term).collect(),
            omega: e.omega.clone(),
        }
    }
}
