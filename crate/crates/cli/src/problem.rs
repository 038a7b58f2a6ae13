//! JSON problem files. Indices are 1-based and rationals are strings
//! `"p/q"`; everything is converted to 0-based exact data here.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use nlie_core::kernel::{format_scalar, parse_scalar, zero, Matrix, Scalar, Vector};
use nlie_core::lift::TraceFunctional;
use nlie_core::nlie::{NLieAlgebra, Representation, SymplecticForm};
use nlie_core::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

pub type TextMatrix = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema_version: String,
    pub n: usize,
    pub g: AlgebraSpec,
    #[serde(rename = "V")]
    pub v: ModuleSpec,
    #[serde(default)]
    pub rho: Vec<ActionEntry>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<TextMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<TextMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<Vec<TextMatrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dim: usize,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
}

/// `[e_{args}] = Σ value[i] e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub args: Vec<usize>,
    pub value: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub block: Vec<usize>,
    pub matrix: TextMatrix,
}

fn to_zero_based(indices: &[usize], dim: usize, what: &str) -> Result<Vec<usize>> {
    indices
        .iter()
        .map(|&i| {
            if i == 0 || i > dim {
                Err(Error::Range(format!("{what}: index {i} not in 1..={dim}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn check_sorted(indices: &[usize], what: &str) -> Result<()> {
    if indices.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(Error::Parse(format!("{what}: indices {indices:?} must be strictly increasing")))
    }
}

fn parse_vector(v: &[String], len: usize, what: &str) -> Result<Vector> {
    if v.len() != len {
        return Err(Error::Shape(format!("{what}: expected {len} entries, got {}", v.len())));
    }
    v.iter().map(|s| parse_scalar(s).map_err(|e| Error::Parse(format!("{what}: {e}")))).collect()
}

fn parse_matrix(m: &TextMatrix, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    if m.len() != rows {
        return Err(Error::Shape(format!("{what}: expected {rows} rows, got {}", m.len())));
    }
    let parsed: Result<Vec<Vector>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| parse_vector(row, cols, &format!("{what} row {}", r + 1)))
        .collect();
    Ok(Matrix::from_rows(parsed?, cols))
}

pub fn vector_text(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

pub fn matrix_text(m: &Matrix) -> TextMatrix {
    (0..m.rows()).map(|r| vector_text(m.row(r))).collect()
}

/// Sparse 1-based map of the nonzero entries.
pub fn sparse_text(v: &[Scalar]) -> BTreeMap<usize, String> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
        .map(|(i, x)| (i + 1, format_scalar(x)))
        .collect()
}

impl ProblemFile {
    /// Parses JSON, reporting syntax and schema errors with line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
                file.schema_version
            )));
        }
        if file.n < 2 {
            return Err(Error::Range(format!("n must be at least 2, got {}", file.n)));
        }
        Ok(file)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn algebra(&self) -> Result<NLieAlgebra> {
        let (n, dim) = (self.n, self.g.dim);
        let mut entries: Vec<(Vec<usize>, Vector)> = Vec::new();
        for e in &self.g.bracket {
            if e.args.len() != n {
                return Err(Error::Arity(format!("bracket args {:?} must have {n} entries", e.args)));
            }
            check_sorted(&e.args, "bracket args")?;
            let args = to_zero_based(&e.args, dim, "bracket args")?;
            let mut v = vec![zero(); dim];
            for (&i, x) in &e.value {
                let i = to_zero_based(&[i], dim, "bracket value")?[0];
                v[i] = parse_scalar(x)?;
            }
            if entries.iter().any(|(a, _)| *a == args) {
                return Err(Error::Parse(format!("bracket args {:?} listed twice", e.args)));
            }
            entries.push((args, v));
        }
        entries.sort();
        NLieAlgebra::from_structure_constants(n, dim, &entries)
    }

    pub fn representation(&self) -> Result<Representation> {
        let a = self.algebra()?;
        let vd = self.v.dim;
        let mut entries: Vec<(Vec<usize>, Matrix)> = Vec::new();
        for e in &self.rho {
            if e.block.len() != self.n - 1 {
                return Err(Error::Arity(format!("rho block {:?} must have {} entries", e.block, self.n - 1)));
            }
            check_sorted(&e.block, "rho block")?;
            let block = to_zero_based(&e.block, self.g.dim, "rho block")?;
            if entries.iter().any(|(b, _)| *b == block) {
                return Err(Error::Parse(format!("rho block {:?} listed twice", e.block)));
            }
            entries.push((block, parse_matrix(&e.matrix, vd, vd, "rho matrix")?));
        }
        Representation::from_blocks(a, vd, &entries)
    }

    pub fn operator(&self) -> Result<Option<Matrix>> {
        self.t.as_ref().map(|m| parse_matrix(m, self.g.dim, self.v.dim, "T")).transpose()
    }

    pub fn symplectic_form(&self) -> Result<Option<SymplecticForm>> {
        Ok(self
            .omega
            .as_ref()
            .map(|m| parse_matrix(m, self.g.dim, self.g.dim, "omega"))
            .transpose()?
            .map(SymplecticForm::new))
    }

    pub fn functional(&self) -> Result<Option<TraceFunctional>> {
        Ok(self.f.as_ref().map(|v| parse_vector(v, self.g.dim, "f")).transpose()?.map(TraceFunctional::new))
    }

    pub fn deformation_coefficients(&self) -> Result<Option<Vec<Matrix>>> {
        self.deformation
            .as_ref()
            .map(|ms| {
                ms.iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(m, self.g.dim, self.v.dim, &format!("deformation[{}]", i + 1)))
                    .collect()
            })
            .transpose()
    }

    pub fn center_element(&self) -> Result<Option<Vector>> {
        self.x0.as_ref().map(|v| parse_vector(v, self.g.dim + self.v.dim, "x0")).transpose()
    }

    /// Problem file describing `rep` (and optionally an operator and a
    /// functional), listing only nonzero data.
    pub fn from_parts(rep: &Representation, t: Option<&Matrix>, f: Option<&TraceFunctional>) -> Self {
        let a = rep.algebra();
        let bracket = a
            .structure_constants()
            .into_iter()
            .filter(|(_, v)| v.iter().any(|x| !num_traits::Zero::is_zero(x)))
            .map(|(args, v)| BracketEntry {
                args: args.iter().map(|i| i + 1).collect(),
                value: sparse_text(&v),
            })
            .collect();
        let rho = rep
            .wedge()
            .subsets()
            .iter()
            .zip(rep.action())
            .filter(|(_, m)| !m.is_zero())
            .map(|(b, m)| ActionEntry {
                block: b.iter().map(|i| i + 1).collect(),
                matrix: matrix_text(m),
            })
            .collect();
        ProblemFile {
            schema_version: SCHEMA_VERSION.to_string(),
            n: rep.n(),
            g: AlgebraSpec { dim: a.dim(), bracket },
            v: ModuleSpec { dim: rep.v_dim() },
            rho,
            t: t.map(matrix_text),
            omega: None,
            f: f.map(|f| vector_text(f.coefficients())),
            deformation: None,
            x0: None,
        }
    }
}
