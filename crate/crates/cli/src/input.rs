//! JSON ring and hom documents.
//!
//! A ring is either written out,
//! `{"name", "basis", "moduli", "unit", "mult": [[i, j, [..]], ..]}` with
//! omitted products zero, or built from one of the constructors
//! `{"ground": {"modulus"}}`, `{"group_ring": {"group", "modulus"}}`,
//! `{"matrix_ring": {"n", "modulus"}}`, `{"upper_triangular": {"n", "modulus"}}`,
//! `{"product": [ring, ring, ..]}`. A group is `"cyclic:n"`, `"dihedral:n"`,
//! `"quaternion"`, `"trivial"` or `{"names": [..], "table": [[..]]}`.
//!
//! A hom is `{"source": ring, "target": ring, "matrix": [[..]]}` where a ring
//! may be inline or a path relative to the hom file. Integers are JSON numbers
//! of any size or decimal strings.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use centralizer::linalg::{IntMatrix, Moduli};
use centralizer::rings::{
    make_ground_ring, make_group_ring, make_hom, make_matrix_ring, make_product_ring,
    make_upper_triangular, validate_ring, BasedRing, CayleyTable, RingHom,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

/// Location of a problem inside a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// A JSON syntax error.
    Text { line: usize, column: usize },
    /// A JSON path such as `mult[3][2]`, with the line it starts on when known.
    Field { path: String, line: Option<usize> },
    Document,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}{location}: {message}")]
    Invalid {
        file: String,
        location: Location,
        message: String,
    },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Text { line, column } => write!(f, ":{line}:{column}"),
            Location::Field { path, line: Some(line) } => write!(f, ":{line}: field `{path}`"),
            Location::Field { path, line: None } => write!(f, ": field `{path}`"),
            Location::Document => Ok(()),
        }
    }
}

/// Error under construction: a field path and message, before the file is known.
#[derive(Debug)]
struct FieldError {
    path: String,
    message: String,
}

type Parsed<T> = Result<T, FieldError>;

fn field_error(path: &str, message: impl Into<String>) -> FieldError {
    FieldError {
        path: path.to_string(),
        message: message.into(),
    }
}

struct Document {
    file: String,
    text: String,
    dir: PathBuf,
}

impl Document {
    fn read(path: &Path) -> Result<(Self, Value), InputError> {
        let file = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
            file: file.clone(),
            source,
        })?;
        let value: Value = serde_json::from_str(&text).map_err(|e| InputError::Invalid {
            file: file.clone(),
            location: Location::Text {
                line: e.line(),
                column: e.column(),
            },
            message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
        })?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((Self { file, text, dir }, value))
    }

    /// Best-effort line of the first occurrence of the field's last key.
    fn line_of(&self, path: &str) -> Option<usize> {
        let key = path
            .rsplit('.')
            .map(|seg| seg.split('[').next().unwrap_or(seg))
            .find(|seg| !seg.is_empty())?;
        let needle = format!("\"{key}\"");
        let offset = self.text.find(&needle)?;
        Some(self.text[..offset].matches('\n').count() + 1)
    }

    fn locate(&self, e: FieldError) -> InputError {
        let location = if e.path.is_empty() {
            Location::Document
        } else {
            Location::Field {
                line: self.line_of(&e.path),
                path: e.path,
            }
        };
        InputError::Invalid {
            file: self.file.clone(),
            location,
            message: e.message,
        }
    }

    fn invalid(&self, message: impl Into<String>) -> InputError {
        InputError::Invalid {
            file: self.file.clone(),
            location: Location::Document,
            message: message.into(),
        }
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn get<'a>(v: &'a Value, path: &str, key: &str) -> Parsed<&'a Value> {
    v.get(key).ok_or_else(|| field_error(&join(path, key), "missing"))
}

fn integer(v: &Value, path: &str) -> Parsed<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(field_error(path, "expected an integer")),
    };
    text.parse::<BigInt>()
        .map_err(|_| field_error(path, format!("`{text}` is not an integer")))
}

fn small(v: &Value, path: &str) -> Parsed<usize> {
    integer(v, path)?
        .to_usize()
        .ok_or_else(|| field_error(path, "expected a small non-negative integer"))
}

fn modulus(v: &Value, path: &str) -> Parsed<u64> {
    integer(v, path)?
        .to_u64()
        .ok_or_else(|| field_error(path, "expected a non-negative modulus"))
}

fn array<'a>(v: &'a Value, path: &str) -> Parsed<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| field_error(path, "expected an array"))
}

fn int_vector(v: &Value, path: &str, len: Option<usize>) -> Parsed<Vec<BigInt>> {
    let items = array(v, path)?;
    if let Some(n) = len {
        if items.len() != n {
            return Err(field_error(path, format!("expected {n} entries, found {}", items.len())));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{path}[{i}]")))
        .collect()
}

fn parse_group(v: &Value, path: &str) -> Parsed<CayleyTable> {
    if let Some(s) = v.as_str() {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let n = || {
            arg.parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| field_error(path, format!("`{s}` needs a positive order, e.g. `{kind}:4`")))
        };
        return match kind {
            "cyclic" => Ok(CayleyTable::cyclic(n()?)),
            "dihedral" => {
                let n = n()?;
                if n % 2 == 1 {
                    return Err(field_error(path, "a dihedral group has even order"));
                }
                Ok(CayleyTable::dihedral(n))
            }
            "quaternion" => Ok(CayleyTable::quaternion()),
            "trivial" => Ok(CayleyTable::trivial()),
            _ => Err(field_error(path, format!("unknown group `{s}`"))),
        };
    }
    let names: Vec<String> = array(get(v, path, "names")?, &join(path, "names"))?
        .iter()
        .enumerate()
        .map(|(i, n)| {
            n.as_str()
                .map(str::to_string)
                .ok_or_else(|| field_error(&format!("{}[{i}]", join(path, "names")), "expected a string"))
        })
        .collect::<Parsed<_>>()?;
    let table_path = join(path, "table");
    let table = array(get(v, path, "table")?, &table_path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let row_path = format!("{table_path}[{i}]");
            array(row, &row_path)?
                .iter()
                .enumerate()
                .map(|(j, x)| small(x, &format!("{row_path}[{j}]")))
                .collect()
        })
        .collect::<Parsed<_>>()?;
    let label = v.get("label").and_then(Value::as_str).unwrap_or("G");
    CayleyTable::new(label, names, table).map_err(|e| field_error(path, e.to_string()))
}

fn sized(v: &Value, path: &str) -> Parsed<(usize, u64)> {
    let n = small(get(v, path, "n")?, &join(path, "n"))?;
    if n == 0 {
        return Err(field_error(&join(path, "n"), "matrix size must be positive"));
    }
    Ok((n, modulus(get(v, path, "modulus")?, &join(path, "modulus"))?))
}

fn parse_ring_value(v: &Value, path: &str) -> Parsed<BasedRing> {
    let Some(obj) = v.as_object() else {
        return Err(field_error(path, "expected a ring object"));
    };
    if let Some(args) = obj.get("ground") {
        let p = join(path, "ground");
        return Ok(make_ground_ring(modulus(get(args, &p, "modulus")?, &join(&p, "modulus"))?));
    }
    if let Some(args) = obj.get("group_ring") {
        let p = join(path, "group_ring");
        let group = parse_group(get(args, &p, "group")?, &join(&p, "group"))?;
        let m = modulus(get(args, &p, "modulus")?, &join(&p, "modulus"))?;
        return Ok(make_group_ring(&group, m));
    }
    if let Some(args) = obj.get("matrix_ring") {
        let (n, m) = sized(args, &join(path, "matrix_ring"))?;
        return Ok(make_matrix_ring(n, m));
    }
    if let Some(args) = obj.get("upper_triangular") {
        let (n, m) = sized(args, &join(path, "upper_triangular"))?;
        return Ok(make_upper_triangular(n, m));
    }
    if let Some(args) = obj.get("product") {
        let p = join(path, "product");
        let factors = array(args, &p)?;
        let mut rings = factors
            .iter()
            .enumerate()
            .map(|(i, f)| parse_ring_value(f, &format!("{p}[{i}]")));
        let first = rings.next().ok_or_else(|| field_error(&p, "a product needs at least one factor"))??;
        return rings.try_fold(first, |acc, r| Ok(make_product_ring(&acc, &r?)));
    }
    parse_explicit_ring(v, path)
}

fn parse_explicit_ring(v: &Value, path: &str) -> Parsed<BasedRing> {
    let name = get(v, path, "name")?
        .as_str()
        .ok_or_else(|| field_error(&join(path, "name"), "expected a string"))?
        .to_string();
    let basis_path = join(path, "basis");
    let basis: Vec<String> = array(get(v, path, "basis")?, &basis_path)?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            b.as_str()
                .map(str::to_string)
                .ok_or_else(|| field_error(&format!("{basis_path}[{i}]"), "expected a string"))
        })
        .collect::<Parsed<_>>()?;
    let n = basis.len();
    if n == 0 {
        return Err(field_error(&basis_path, "a ring needs at least one basis element"));
    }
    let moduli_path = join(path, "moduli");
    let moduli = int_vector(get(v, path, "moduli")?, &moduli_path, Some(n))?;
    if let Some(i) = moduli.iter().position(Signed::is_negative) {
        return Err(field_error(&format!("{moduli_path}[{i}]"), "moduli are non-negative"));
    }
    let unit = int_vector(get(v, path, "unit")?, &join(path, "unit"), Some(n))?;
    let mult_path = join(path, "mult");
    let mut products = vec![vec![BigInt::zero(); n]; n * n];
    let mut seen = vec![false; n * n];
    for (k, entry) in array(get(v, path, "mult")?, &mult_path)?.iter().enumerate() {
        let p = format!("{mult_path}[{k}]");
        let triple = array(entry, &p)?;
        if triple.len() != 3 {
            return Err(field_error(&p, "expected [i, j, [coefficients]]"));
        }
        let i = small(&triple[0], &format!("{p}[0]"))?;
        let j = small(&triple[1], &format!("{p}[1]"))?;
        if i >= n || j >= n {
            return Err(field_error(&p, format!("basis index out of range (basis has {n} elements)")));
        }
        if std::mem::replace(&mut seen[i * n + j], true) {
            return Err(field_error(&p, format!("product ({i}, {j}) is given twice")));
        }
        products[i * n + j] = int_vector(&triple[2], &format!("{p}[2]"), Some(n))?;
    }
    BasedRing::from_parts(name, basis, Moduli::new(moduli), products, unit).map_err(|e| field_error(path, e.to_string()))
}

/// Reads and validates a ring document.
pub fn read_ring(path: &Path) -> Result<Arc<BasedRing>, InputError> {
    let (doc, value) = Document::read(path)?;
    let ring = parse_ring_value(&value, "").map_err(|e| doc.locate(e))?;
    check_ring(&doc, ring, "")
}

fn check_ring(doc: &Document, ring: BasedRing, role: &str) -> Result<Arc<BasedRing>, InputError> {
    let report = validate_ring(&ring);
    if report.is_ok() {
        return Ok(Arc::new(ring));
    }
    let listed: Vec<String> = report.failures.iter().take(5).map(ToString::to_string).collect();
    let more = report.failures.len().saturating_sub(5);
    let mut message = format!("{role}ring `{}` is not a ring: {}", ring.name(), listed.join("; "));
    if more > 0 {
        message.push_str(&format!(" (and {more} more)"));
    }
    Err(doc.invalid(message))
}

fn ring_reference(doc: &Document, value: &Value, key: &str) -> Result<Arc<BasedRing>, InputError> {
    let v = value
        .get(key)
        .ok_or_else(|| doc.locate(field_error(key, "missing")))?;
    match v {
        Value::String(rel) => {
            let path = doc.dir.join(rel);
            read_ring(&path)
        }
        _ => {
            let ring = parse_ring_value(v, key).map_err(|e| doc.locate(e))?;
            check_ring(doc, ring, &format!("{key} "))
        }
    }
}

/// Reads a hom document, validating both rings and the map.
pub fn read_hom(path: &Path) -> Result<RingHom, InputError> {
    let (doc, value) = Document::read(path)?;
    let source = ring_reference(&doc, &value, "source")?;
    let target = ring_reference(&doc, &value, "target")?;
    let matrix_value = get(&value, "", "matrix").map_err(|e| doc.locate(e))?;
    let rows = array(matrix_value, "matrix").map_err(|e| doc.locate(e))?;
    if rows.len() != source.dim() {
        return Err(doc.locate(field_error(
            "matrix",
            format!("expected {} rows (one per source basis element), found {}", source.dim(), rows.len()),
        )));
    }
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| int_vector(r, &format!("matrix[{i}]"), Some(target.dim())))
        .collect::<Parsed<Vec<_>>>()
        .map_err(|e| doc.locate(e))?;
    let matrix = IntMatrix::from_rows(target.dim(), parsed);
    make_hom(source, target, matrix).map_err(|e| doc.invalid(e.to_string()))
}
