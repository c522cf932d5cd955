//! Input documents and atomic report output.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use autfn::exactalg::{ExactMatrix, Field, GaussRational, Laurent, Matrix, Ring, Q};
use serde_json::Value;

/// Reads one matrix document.
pub fn read_matrix(path: &Path) -> Result<ExactMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ExactMatrix::from_json_str(&text).with_context(|| format!("{}", path.display()))
}

/// Reads a tuple: a JSON array of matrix documents, or an object whose
/// "matrices" field is one. All entries must share a ring and dimension.
pub fn read_tuple(path: &Path) -> Result<Vec<ExactMatrix>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: Value = serde_json::from_str(&text)
        .with_context(|| format!("{}: not valid JSON", path.display()))?;
    let items = match &doc {
        Value::Array(items) => items,
        Value::Object(o) => match o.get("matrices") {
            Some(Value::Array(items)) => items,
            _ => bail!("{}: expected an array of matrices or {{\"matrices\": [...]}}", path.display()),
        },
        _ => bail!("{}: expected an array of matrices", path.display()),
    };
    if items.is_empty() {
        bail!("{}: tuple is empty", path.display());
    }
    let mut out = Vec::with_capacity(items.len());
    for (k, v) in items.iter().enumerate() {
        let m = ExactMatrix::from_json(v).with_context(|| format!("{}: matrix {}", path.display(), k + 1))?;
        if let Some(first) = out.first() {
            let first: &ExactMatrix = first;
            if m.ring() != first.ring() || m.dim() != first.dim() {
                bail!(
                    "{}: matrix {} is {}x{} over {}, expected {}x{} over {}",
                    path.display(),
                    k + 1,
                    m.dim(),
                    m.dim(),
                    m.ring(),
                    first.dim(),
                    first.dim(),
                    first.ring()
                );
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Access to the matrices of one ring inside the tagged union.
pub trait Exact: Ring {
    fn unwrap(m: &ExactMatrix) -> Option<&Matrix<Self>>;
}

impl Exact for Q {
    fn unwrap(m: &ExactMatrix) -> Option<&Matrix<Q>> {
        match m {
            ExactMatrix::Rational(m) => Some(m),
            _ => None,
        }
    }
}

impl Exact for GaussRational {
    fn unwrap(m: &ExactMatrix) -> Option<&Matrix<GaussRational>> {
        match m {
            ExactMatrix::Gaussian(m) => Some(m),
            _ => None,
        }
    }
}

impl Exact for Laurent {
    fn unwrap(m: &ExactMatrix) -> Option<&Matrix<Laurent>> {
        match m {
            ExactMatrix::Laurent(m) => Some(m),
            _ => None,
        }
    }
}

pub fn unwrap_all<R: Exact>(ms: &[ExactMatrix]) -> Vec<Matrix<R>> {
    ms.iter().map(|m| R::unwrap(m).expect("tuple rings checked on read").clone()).collect()
}

/// Marker for rings the field-only commands accept.
pub trait ExactField: Exact + Field {}
impl ExactField for Q {}
impl ExactField for GaussRational {}

pub fn matrices_json(ms: &[ExactMatrix]) -> Value {
    Value::Array(ms.iter().map(ExactMatrix::to_json).collect())
}

pub fn matrix_json<R: Ring>(m: &Matrix<R>) -> Value
where
    ExactMatrix: From<Matrix<R>>,
{
    ExactMatrix::from(m.clone()).to_json()
}

/// Writes via a temporary file in the destination directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating temp file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Rational literal list such as `2,3,-1,7/2`.
pub fn parse_rationals(s: &str) -> Result<Vec<Q>> {
    s.split(',')
        .map(|t| autfn::exactalg::parse_rational(t.trim()).with_context(|| format!("rational {t:?}")))
        .collect()
}
