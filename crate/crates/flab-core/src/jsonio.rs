//! JSON interchange for groups. Permutation generators are written as cycle
//! lists, matrix generators as row-major entry codes. Malformed input is
//! reported with the JSON path of the offending field.

use serde_json::{json, Map, Value};

use crate::construct::MAX_PERM_POINTS;
use crate::element::{GroupElement, Kind};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::group::{make_group, FiniteGroup};
use crate::matrix::Mat;
use crate::perm::Perm;

pub const GROUP_SCHEMA: &str = "flab/group/v1";

fn invalid(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::InvalidInput { path: path.into(), message: message.into() }
}

fn as_object<'v>(value: &'v Value, path: &str) -> Result<&'v Map<String, Value>> {
    value.as_object().ok_or_else(|| invalid(path, "expected a JSON object"))
}

fn as_array<'v>(value: &'v Value, path: &str) -> Result<&'v Vec<Value>> {
    value.as_array().ok_or_else(|| invalid(path, "expected a JSON array"))
}

fn as_u64(value: &Value, path: &str) -> Result<u64> {
    value.as_u64().ok_or_else(|| invalid(path, "expected a nonnegative integer"))
}

fn field_of<'v>(obj: &'v Map<String, Value>, key: &str) -> Result<&'v Value> {
    obj.get(key).ok_or_else(|| invalid(key, "missing field"))
}

/// Parse a group description. The `schema` field is optional on input and
/// must equal `flab/group/v1` when present.
pub fn parse_group(text: &str, cap: u64) -> Result<FiniteGroup> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| invalid("$", format!("not valid JSON: {e}")))?;
    let obj = as_object(&root, "$")?;
    if let Some(schema) = obj.get("schema") {
        let schema = schema.as_str().ok_or_else(|| invalid("schema", "expected a string"))?;
        if schema != GROUP_SCHEMA {
            return Err(invalid("schema", format!("expected {GROUP_SCHEMA}, got {schema}")));
        }
    }
    let kind = field_of(obj, "kind")?
        .as_str()
        .ok_or_else(|| invalid("kind", "expected a string"))?;
    match kind {
        "perm" => parse_perm_group(obj, cap),
        "matrix" => parse_matrix_group(obj, cap),
        other => Err(invalid("kind", format!("expected \"perm\" or \"matrix\", got \"{other}\""))),
    }
}

fn parse_perm_group(obj: &Map<String, Value>, cap: u64) -> Result<FiniteGroup> {
    let degree = as_u64(field_of(obj, "degree")?, "degree")? as usize;
    if degree == 0 || degree > MAX_PERM_POINTS {
        return Err(invalid(
            "degree",
            format!("degree must be between 1 and {MAX_PERM_POINTS}"),
        ));
    }
    let raw_gens = as_array(field_of(obj, "generators")?, "generators")?;
    if raw_gens.is_empty() {
        return Err(invalid("generators", "at least one generator is required"));
    }
    let mut gens = Vec::with_capacity(raw_gens.len());
    for (i, raw) in raw_gens.iter().enumerate() {
        let path = format!("generators[{i}]");
        let raw_cycles = as_array(raw, &path)?;
        let mut cycles: Vec<Vec<u16>> = Vec::with_capacity(raw_cycles.len());
        for (j, raw_cycle) in raw_cycles.iter().enumerate() {
            let cycle_path = format!("{path}[{j}]");
            let points = as_array(raw_cycle, &cycle_path)?;
            let mut cycle = Vec::with_capacity(points.len());
            for (k, point) in points.iter().enumerate() {
                let point_path = format!("{cycle_path}[{k}]");
                let v = as_u64(point, &point_path)?;
                if v >= degree as u64 {
                    return Err(invalid(
                        point_path,
                        format!("point {v} outside degree {degree}"),
                    ));
                }
                cycle.push(v as u16);
            }
            cycles.push(cycle);
        }
        let perm = Perm::from_cycles(degree, &cycles, &path)?;
        gens.push(GroupElement::Perm(perm));
    }
    make_group(gens, cap)
}

fn parse_matrix_group(obj: &Map<String, Value>, cap: u64) -> Result<FiniteGroup> {
    let p = as_u64(field_of(obj, "p")?, "p")?;
    let k = obj.get("k").map(|v| as_u64(v, "k")).transpose()?.unwrap_or(1) as u32;
    let field = Field::new(p, k).map_err(|e| invalid("p", e.to_string()))?;
    let dim = as_u64(field_of(obj, "dim")?, "dim")? as usize;
    if dim == 0 || dim > 64 {
        return Err(invalid("dim", "dimension must be between 1 and 64"));
    }
    let raw_gens = as_array(field_of(obj, "generators")?, "generators")?;
    if raw_gens.is_empty() {
        return Err(invalid("generators", "at least one generator is required"));
    }
    let order = field.order();
    let mut gens = Vec::with_capacity(raw_gens.len());
    for (i, raw) in raw_gens.iter().enumerate() {
        let path = format!("generators[{i}]");
        let raw_entries = as_array(raw, &path)?;
        if raw_entries.len() != dim * dim {
            return Err(invalid(
                path,
                format!("expected {} row-major entries, got {}", dim * dim, raw_entries.len()),
            ));
        }
        let mut entries = Vec::with_capacity(raw_entries.len());
        for (j, raw_entry) in raw_entries.iter().enumerate() {
            let entry_path = format!("{path}[{j}]");
            let code = as_u64(raw_entry, &entry_path)?;
            if code >= order {
                return Err(invalid(
                    entry_path,
                    format!("entry code {code} outside field of order {order}"),
                ));
            }
            entries.push(code);
        }
        let mat = Mat::from_entries(field.clone(), dim, entries)
            .map_err(|e| invalid(&path, e.to_string()))?;
        gens.push(GroupElement::Matrix(mat));
    }
    make_group(gens, cap)
}

/// Emit a group description, always including the schema field.
pub fn emit_group(g: &FiniteGroup) -> Value {
    match g.kind() {
        Kind::Perm => {
            let degree = g.identity().as_perm().expect("perm kind").degree();
            let gens: Vec<Value> = g
                .generators()
                .iter()
                .map(|e| {
                    let cycles = e.as_perm().expect("perm kind").cycles();
                    json!(cycles)
                })
                .collect();
            json!({
                "schema": GROUP_SCHEMA,
                "kind": "perm",
                "degree": degree,
                "generators": gens,
            })
        }
        Kind::Matrix => {
            let first = g.identity().as_matrix().expect("matrix kind");
            let gens: Vec<Value> =
                g.generators().iter().map(|e| json!(e.as_matrix().unwrap().entries())).collect();
            json!({
                "schema": GROUP_SCHEMA,
                "kind": "matrix",
                "p": first.field().p(),
                "k": first.field().k(),
                "dim": first.dim(),
                "generators": gens,
            })
        }
    }
}

/// Parse a group file and return its generator matrices (for inputs that are
/// lists of matrices rather than groups of interest in their own right).
pub fn parse_matrix_generators(text: &str, cap: u64) -> Result<Vec<Mat>> {
    let group = parse_group(text, cap)?;
    if group.kind() != Kind::Matrix {
        return Err(invalid("kind", "expected a matrix group"));
    }
    Ok(group
        .generators()
        .iter()
        .map(|e| e.as_matrix().expect("matrix kind").clone())
        .collect())
}
