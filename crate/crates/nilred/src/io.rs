//! JSON input and output.
//!
//! Rationals travel as strings `"p/q"` (or `"p"` when the denominator is
//! one). Three input schemas are recognized, distinguished by their fields:
//!
//! * algebra (optionally with a metric):
//!   `{"dim": 3, "basis": ["e1","e2","e3"],
//!     "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}],
//!     "metric": [["1","0","0"],["0","1","0"],["0","0","1"]]}`
//!   with 1-based indices; the mirror bracket may be omitted (antisymmetry
//!   completes it) but a contradicting mirror entry is a schema error;
//! * data set: `{"g": {algebra}, "metric_g": [[..]], "rep": [matrix per
//!   g-basis vector], "metric_v": [[..]]}`;
//! * lattice: `{"scaling": ["1","1","1","2","1","2"]}`.
//!
//! Schema problems carry a JSON-pointer location. Domain validation failures
//! (Jacobi, nilpotency, data-set invariants) are reported separately so the
//! CLI can map them to its property-failure exit code.

use crate::construct::{ConstructError, DataSet};
use crate::form::SymmetricForm;
use crate::group::LatticeSpec;
use crate::matrix::RatMatrix;
use crate::metgeo::MetricNilLieAlgebra;
use crate::nilalg::{AlgebraError, LieAlgebra, NilLieAlgebra};
use crate::rat::{fmt_rat, parse_rat, Rat};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("schema error at {pointer}: {message}")]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InputError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    /// The file was well-formed but the object violates a domain invariant
    /// (Jacobi identity, nilpotency, metric nondegeneracy, data-set axioms).
    #[error("domain validation failed: {0}")]
    Domain(String),
}

/// A fully parsed and validated input object.
#[derive(Debug, Clone)]
pub enum ParsedInput {
    Metric(MetricNilLieAlgebra),
    Algebra(NilLieAlgebra),
    DataSet(DataSet),
    Lattice(LatticeSpec),
}

impl ParsedInput {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedInput::Metric(_) => "metric_algebra",
            ParsedInput::Algebra(_) => "algebra",
            ParsedInput::DataSet(_) => "data_set",
            ParsedInput::Lattice(_) => "lattice",
        }
    }
}

fn err(pointer: &str, message: impl Into<String>) -> SchemaError {
    SchemaError {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

fn as_object<'v>(v: &'v Value, ptr: &str) -> Result<&'v Map<String, Value>, SchemaError> {
    v.as_object().ok_or_else(|| err(ptr, "expected an object"))
}

fn as_array<'v>(v: &'v Value, ptr: &str) -> Result<&'v Vec<Value>, SchemaError> {
    v.as_array().ok_or_else(|| err(ptr, "expected an array"))
}

fn as_usize(v: &Value, ptr: &str) -> Result<usize, SchemaError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(ptr, "expected a nonnegative integer"))
}

fn as_rat(v: &Value, ptr: &str) -> Result<Rat, SchemaError> {
    let s = v
        .as_str()
        .ok_or_else(|| err(ptr, "expected a rational string like \"p/q\""))?;
    parse_rat(s).map_err(|m| err(ptr, m))
}

fn parse_matrix(v: &Value, ptr: &str) -> Result<RatMatrix, SchemaError> {
    let rows = as_array(v, ptr)?;
    let mut out: Vec<Vec<Rat>> = Vec::with_capacity(rows.len());
    let mut width = None;
    for (r, row) in rows.iter().enumerate() {
        let rptr = format!("{ptr}/{r}");
        let cells = as_array(row, &rptr)?;
        if let Some(w) = width {
            if cells.len() != w {
                return Err(err(&rptr, format!("ragged row: expected {w} entries")));
            }
        } else {
            width = Some(cells.len());
        }
        let mut parsed = Vec::with_capacity(cells.len());
        for (c, cell) in cells.iter().enumerate() {
            parsed.push(as_rat(cell, &format!("{rptr}/{c}"))?);
        }
        out.push(parsed);
    }
    Ok(RatMatrix::from_rows(out))
}

fn parse_symmetric_form(v: &Value, ptr: &str) -> Result<SymmetricForm, SchemaError> {
    let m = parse_matrix(v, ptr)?;
    SymmetricForm::new(m).map_err(|e| err(ptr, e.to_string()))
}

struct AlgebraParts {
    dim: usize,
    names: Vec<String>,
    brackets: Vec<crate::nilalg::BracketEntry>,
    metric: Option<SymmetricForm>,
}

fn parse_algebra_parts(v: &Value, ptr: &str) -> Result<AlgebraParts, SchemaError> {
    let obj = as_object(v, ptr)?;
    let dim = as_usize(
        obj.get("dim").ok_or_else(|| err(ptr, "missing field \"dim\""))?,
        &format!("{ptr}/dim"),
    )?;
    if dim == 0 {
        return Err(err(&format!("{ptr}/dim"), "dimension must be positive"));
    }
    let names = match obj.get("basis") {
        None => (1..=dim).map(|i| format!("e{i}")).collect(),
        Some(v) => {
            let bptr = format!("{ptr}/basis");
            let arr = as_array(v, &bptr)?;
            if arr.len() != dim {
                return Err(err(&bptr, format!("expected {dim} basis names")));
            }
            arr.iter()
                .enumerate()
                .map(|(i, s)| {
                    s.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| err(&format!("{bptr}/{i}"), "expected a string"))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let mut brackets = Vec::new();
    if let Some(v) = obj.get("brackets") {
        let bptr = format!("{ptr}/brackets");
        for (n, entry) in as_array(v, &bptr)?.iter().enumerate() {
            let eptr = format!("{bptr}/{n}");
            let eobj = as_object(entry, &eptr)?;
            let i = as_usize(
                eobj.get("i").ok_or_else(|| err(&eptr, "missing field \"i\""))?,
                &format!("{eptr}/i"),
            )?;
            let j = as_usize(
                eobj.get("j").ok_or_else(|| err(&eptr, "missing field \"j\""))?,
                &format!("{eptr}/j"),
            )?;
            if i == 0 || j == 0 || i > dim || j > dim {
                return Err(err(&eptr, format!("indices are 1-based and at most {dim}")));
            }
            let cptr = format!("{eptr}/coeffs");
            let coeffs = eobj
                .get("coeffs")
                .ok_or_else(|| err(&eptr, "missing field \"coeffs\""))?;
            let cmap = as_object(coeffs, &cptr)?;
            let mut parsed = Vec::new();
            for (key, val) in cmap {
                let kptr = format!("{cptr}/{key}");
                let k: usize = key
                    .parse()
                    .map_err(|_| err(&kptr, "coefficient keys are 1-based indices"))?;
                if k == 0 || k > dim {
                    return Err(err(&kptr, format!("index must be between 1 and {dim}")));
                }
                parsed.push((k - 1, as_rat(val, &kptr)?));
            }
            brackets.push((i - 1, j - 1, parsed));
        }
    }
    let metric = match obj.get("metric") {
        None => None,
        Some(v) => {
            let form = parse_symmetric_form(v, &format!("{ptr}/metric"))?;
            if form.dim() != dim {
                return Err(err(
                    &format!("{ptr}/metric"),
                    format!("metric must be {dim}x{dim}"),
                ));
            }
            Some(form)
        }
    };
    Ok(AlgebraParts {
        dim,
        names,
        brackets,
        metric,
    })
}

/// Index/shape problems in the bracket list are schema errors; Jacobi and
/// nilpotency failures are domain errors.
fn algebra_error_to_input(e: AlgebraError, ptr: &str) -> InputError {
    match e {
        AlgebraError::BadIndex { .. }
        | AlgebraError::DuplicateBracket { .. }
        | AlgebraError::AntisymmetryContradiction { .. } => {
            InputError::Schema(err(ptr, e.to_string()))
        }
        other => InputError::Domain(other.to_string()),
    }
}

fn build_algebra(parts: AlgebraParts, ptr: &str) -> Result<ParsedInput, InputError> {
    let alg =
        NilLieAlgebra::from_structure_constants_named(parts.dim, parts.names, &parts.brackets)
            .map_err(|e| algebra_error_to_input(e, &format!("{ptr}/brackets")))?;
    match parts.metric {
        None => Ok(ParsedInput::Algebra(alg)),
        Some(metric) => {
            let m = MetricNilLieAlgebra::new(alg, metric)
                .map_err(|e| InputError::Domain(e.to_string()))?;
            Ok(ParsedInput::Metric(m))
        }
    }
}

fn parse_data_set(v: &Value) -> Result<ParsedInput, InputError> {
    let obj = as_object(v, "").map_err(InputError::Schema)?;
    let g_val = obj
        .get("g")
        .ok_or_else(|| InputError::Schema(err("", "missing field \"g\"")))?;
    let parts = parse_algebra_parts(g_val, "/g").map_err(InputError::Schema)?;
    if parts.metric.is_some() {
        return Err(InputError::Schema(err(
            "/g/metric",
            "the data-set metric on g belongs in \"metric_g\"",
        )));
    }
    let g = LieAlgebra::from_structure_constants_named(parts.dim, parts.names, &parts.brackets)
        .map_err(|e| algebra_error_to_input(e, "/g/brackets"))?;
    let metric_g = parse_symmetric_form(
        obj.get("metric_g")
            .ok_or_else(|| InputError::Schema(err("", "missing field \"metric_g\"")))?,
        "/metric_g",
    )
    .map_err(InputError::Schema)?;
    let rep_val = obj
        .get("rep")
        .ok_or_else(|| InputError::Schema(err("", "missing field \"rep\"")))?;
    let rep_arr = as_array(rep_val, "/rep").map_err(InputError::Schema)?;
    let mut rep = Vec::with_capacity(rep_arr.len());
    for (i, m) in rep_arr.iter().enumerate() {
        rep.push(parse_matrix(m, &format!("/rep/{i}")).map_err(InputError::Schema)?);
    }
    let metric_v = parse_symmetric_form(
        obj.get("metric_v")
            .ok_or_else(|| InputError::Schema(err("", "missing field \"metric_v\"")))?,
        "/metric_v",
    )
    .map_err(InputError::Schema)?;
    match DataSet::new(g, metric_g, rep, metric_v) {
        Ok(ds) => Ok(ParsedInput::DataSet(ds)),
        Err(ConstructError::InvalidDataSet(violations)) => Err(InputError::Domain(format!(
            "data set violates {} invariant(s): {violations:?}",
            violations.len()
        ))),
        Err(other) => Err(InputError::Domain(other.to_string())),
    }
}

fn parse_lattice(v: &Value) -> Result<ParsedInput, InputError> {
    let obj = as_object(v, "").map_err(InputError::Schema)?;
    let arr = as_array(
        obj.get("scaling")
            .ok_or_else(|| InputError::Schema(err("", "missing field \"scaling\"")))?,
        "/scaling",
    )
    .map_err(InputError::Schema)?;
    let mut scaling = Vec::with_capacity(arr.len());
    for (i, v) in arr.iter().enumerate() {
        scaling.push(as_rat(v, &format!("/scaling/{i}")).map_err(InputError::Schema)?);
    }
    LatticeSpec::new(scaling)
        .map(ParsedInput::Lattice)
        .map_err(|e| InputError::Domain(e.to_string()))
}

/// Parses a JSON document into a validated domain object, detecting the
/// schema from its fields.
pub fn parse_input_str(text: &str) -> Result<ParsedInput, InputError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| InputError::Schema(err("", format!("invalid JSON: {e}"))))?;
    let obj = as_object(&value, "").map_err(InputError::Schema)?;
    if obj.contains_key("scaling") {
        parse_lattice(&value)
    } else if obj.contains_key("g") || obj.contains_key("rep") {
        parse_data_set(&value)
    } else if obj.contains_key("dim") {
        let parts = parse_algebra_parts(&value, "").map_err(InputError::Schema)?;
        build_algebra(parts, "")
    } else {
        Err(InputError::Schema(err(
            "",
            "unrecognized input: expected an algebra ({\"dim\", \"brackets\", ...}), \
             a data set ({\"g\", \"rep\", ...}) or a lattice ({\"scaling\"})",
        )))
    }
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| Value::String(fmt_rat(m.at(r, c))))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn brackets_json(alg: &NilLieAlgebra) -> Value {
    let mut entries = Vec::new();
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let coeffs: Map<String, Value> = alg
                .bracket_basis(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| ((k + 1).to_string(), Value::String(fmt_rat(c))))
                .collect();
            if !coeffs.is_empty() {
                entries.push(json!({"i": i + 1, "j": j + 1, "coeffs": coeffs}));
            }
        }
    }
    Value::Array(entries)
}

pub fn algebra_json(alg: &NilLieAlgebra) -> Value {
    json!({
        "dim": alg.dim(),
        "basis": alg.basis_names(),
        "brackets": brackets_json(alg),
    })
}

pub fn metric_algebra_json(m: &MetricNilLieAlgebra) -> Value {
    json!({
        "dim": m.dim(),
        "basis": m.alg().basis_names(),
        "brackets": brackets_json(m.alg()),
        "metric": matrix_json(m.metric().gram()),
    })
}

pub fn data_set_json(ds: &DataSet) -> Value {
    let g = &ds.g;
    let mut g_brackets = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let coeffs: Map<String, Value> = g
                .bracket_basis(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| ((k + 1).to_string(), Value::String(fmt_rat(c))))
                .collect();
            if !coeffs.is_empty() {
                g_brackets.push(json!({"i": i + 1, "j": j + 1, "coeffs": coeffs}));
            }
        }
    }
    json!({
        "g": {"dim": g.dim(), "basis": g.basis_names(), "brackets": g_brackets},
        "metric_g": matrix_json(ds.metric_g.gram()),
        "rep": ds.rep.iter().map(matrix_json).collect::<Vec<_>>(),
        "metric_v": matrix_json(ds.metric_v.gram()),
    })
}

pub fn lattice_json(spec: &LatticeSpec) -> Value {
    json!({
        "scaling": spec.scaling.iter().map(fmt_rat).collect::<Vec<_>>(),
    })
}

pub fn parsed_input_json(input: &ParsedInput) -> Value {
    match input {
        ParsedInput::Metric(m) => metric_algebra_json(m),
        ParsedInput::Algebra(a) => algebra_json(a),
        ParsedInput::DataSet(d) => data_set_json(d),
        ParsedInput::Lattice(l) => lattice_json(l),
    }
}

/// Rational vector as strings, for report payloads.
pub fn vector_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_rat(x))).collect())
}

pub fn matrix_json_pub(m: &RatMatrix) -> Value {
    matrix_json(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H3_JSON: &str = r#"{
        "dim": 3,
        "basis": ["e1", "e2", "e3"],
        "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}],
        "metric": [["1","0","0"],["0","1","0"],["0","0","1"]]
    }"#;

    #[test]
    fn parses_h3_with_metric() {
        let parsed = parse_input_str(H3_JSON).unwrap();
        let ParsedInput::Metric(m) = parsed else {
            panic!("expected a metric algebra");
        };
        assert_eq!(m.dim(), 3);
        assert_eq!(m.metric().signature(), (3, 0, 0));
    }

    #[test]
    fn round_trip_is_identical() {
        for text in [H3_JSON] {
            let parsed = parse_input_str(text).unwrap();
            let serialized = parsed_input_json(&parsed).to_string();
            let reparsed = parse_input_str(&serialized).unwrap();
            assert_eq!(
                parsed_input_json(&reparsed).to_string(),
                serialized,
                "round trip changed the document"
            );
        }
    }

    #[test]
    fn antisymmetric_mirror_completion_and_contradiction() {
        let ok = r#"{"dim": 3, "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": "1"}},
            {"i": 2, "j": 1, "coeffs": {"3": "-1"}}
        ]}"#;
        assert!(parse_input_str(ok).is_ok());
        let bad = r#"{"dim": 3, "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": "1"}},
            {"i": 2, "j": 1, "coeffs": {"3": "1"}}
        ]}"#;
        match parse_input_str(bad).unwrap_err() {
            InputError::Schema(e) => assert_eq!(e.pointer, "/brackets"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn bad_rational_has_precise_pointer() {
        let bad = r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"2": "1/0"}}]}"#;
        match parse_input_str(bad).unwrap_err() {
            InputError::Schema(e) => assert_eq!(e.pointer, "/brackets/0/coeffs/2"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn jacobi_violation_is_a_domain_error() {
        let bad = r#"{"dim": 3, "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": "1"}},
            {"i": 2, "j": 3, "coeffs": {"2": "1"}}
        ]}"#;
        assert!(matches!(
            parse_input_str(bad).unwrap_err(),
            InputError::Domain(_)
        ));
    }

    #[test]
    fn lattice_and_data_set_detection() {
        let lattice = r#"{"scaling": ["1", "1/2", "3"]}"#;
        assert!(matches!(
            parse_input_str(lattice).unwrap(),
            ParsedInput::Lattice(_)
        ));
        let ds = crate::catalog::example_catalog(crate::catalog::ExampleId::So3AdjointDataset);
        let text = data_set_json(ds.as_data_set().unwrap()).to_string();
        assert!(matches!(
            parse_input_str(&text).unwrap(),
            ParsedInput::DataSet(_)
        ));
    }

    #[test]
    fn degenerate_metric_is_a_domain_error() {
        let bad = r#"{"dim": 2, "brackets": [], "metric": [["1","0"],["0","0"]]}"#;
        assert!(matches!(
            parse_input_str(bad).unwrap_err(),
            InputError::Domain(_)
        ));
    }
}
