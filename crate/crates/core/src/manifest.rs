//! JSON manifests of models and factorization scripts.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "manifolds": [
//!     {
//!       "name": "CP1",
//!       "dim": 1,
//!       "hodge": [[1, 0], [0, 1]],
//!       "betti": [1, 0, 1],
//!       "flags": {"kaehler": true}
//!     }
//!   ],
//!   "scripts": [
//!     {"name": "s", "start": "CP3", "steps": [{"op": "blowup", "center": "point"}]}
//!   ]
//! }
//! ```
//!
//! `hodge` is row-major: `hodge[p][q] = h^{p,q}`. Optional model keys are
//! `connected` (default `true`), `betti`, `betti_derived`, `flags` and
//! `provenance`. A top-level `report` value is carried through untouched;
//! commands use it for their own output. Unknown keys are rejected unless
//! parsing is lenient.
//!
//! Names referenced by scripts resolve against the document's own manifolds,
//! then against previously loaded models, then against the built-in catalog.
//!
//! The canonical serialization sorts keys, indents by two spaces, ends lines
//! with LF and writes arrays of at most 16 scalar (or inline array) elements
//! on one line.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::birational::{Direction, FactorizationScript, FactorizationStep};
use crate::catalog::builtin_by_name;
use crate::diamond::{BettiVector, HodgeDiamond};
use crate::error::{Error, Result};
use crate::model::{Flags, ManifoldModel, ModelParts};

pub const FORMAT_VERSION: &str = "1";

const INLINE_ARRAY_MAX: usize = 16;

const TOP_KEYS: &[&str] = &["format_version", "manifolds", "scripts", "report"];
const MODEL_KEYS: &[&str] = &[
    "name",
    "dim",
    "connected",
    "hodge",
    "betti",
    "betti_derived",
    "flags",
    "provenance",
];
const FLAG_KEYS: &[&str] = &["kaehler", "fujiki", "ddbar", "e1_degenerate"];
const SCRIPT_KEYS: &[&str] = &["name", "start", "steps"];
const STEP_KEYS: &[&str] = &["op", "center"];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Ignore unknown keys instead of rejecting them.
    pub lenient: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestDocument {
    pub format_version: String,
    pub manifolds: Vec<ManifoldModel>,
    pub scripts: Vec<FactorizationScript>,
    pub report: Option<Value>,
}

impl ManifestDocument {
    pub fn new(manifolds: Vec<ManifoldModel>) -> Self {
        ManifestDocument {
            format_version: FORMAT_VERSION.to_string(),
            manifolds,
            scripts: Vec::new(),
            report: None,
        }
    }

    pub fn model(&self, name: &str) -> Option<&ManifoldModel> {
        self.manifolds.iter().find(|m| m.name() == name)
    }

    pub fn script(&self, name: &str) -> Option<&FactorizationScript> {
        self.scripts.iter().find(|s| s.name == name)
    }
}

#[derive(Deserialize)]
struct RawDocument {
    format_version: String,
    manifolds: Vec<Value>,
    #[serde(default)]
    scripts: Vec<RawScript>,
    #[serde(default)]
    report: Option<Value>,
}

#[derive(Deserialize)]
struct RawModel {
    name: String,
    dim: usize,
    #[serde(default = "default_true")]
    connected: bool,
    hodge: Vec<Vec<u64>>,
    #[serde(default)]
    betti: Option<Vec<u64>>,
    #[serde(default)]
    betti_derived: bool,
    #[serde(default)]
    flags: RawFlags,
    #[serde(default)]
    provenance: Vec<String>,
}

#[derive(Deserialize, Default)]
struct RawFlags {
    kaehler: Option<bool>,
    fujiki: Option<bool>,
    ddbar: Option<bool>,
    e1_degenerate: Option<bool>,
}

#[derive(Deserialize)]
struct RawScript {
    name: String,
    start: String,
    steps: Vec<RawStep>,
}

#[derive(Deserialize)]
struct RawStep {
    op: RawOp,
    center: String,
}

#[derive(Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum RawOp {
    Blowup,
    Blowdown,
}

fn default_true() -> bool {
    true
}

/// Outcome of validating one manifest entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelEntry {
    pub name: String,
    pub result: Result<ManifoldModel>,
}

/// Strict parse with no outside references.
pub fn parse_manifest(text: &str) -> Result<ManifestDocument> {
    parse_manifest_with(text, &ParseOptions::default(), &[])
}

/// Parses and validates a manifest. `known` holds models loaded earlier that
/// scripts may reference.
pub fn parse_manifest_with(
    text: &str,
    options: &ParseOptions,
    known: &[ManifoldModel],
) -> Result<ManifestDocument> {
    let (raw, entries) = parse_entries(text, options)?;
    let manifolds = entries
        .into_iter()
        .map(|e| e.result)
        .collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    if let Some(dup) = manifolds.iter().find(|m| !seen.insert(m.name())) {
        return Err(Error::Manifest(format!(
            "model name `{}` defined twice",
            dup.name()
        )));
    }

    let resolve = |name: &str| -> Result<ManifoldModel> {
        manifolds
            .iter()
            .chain(known.iter().rev())
            .find(|m| m.name() == name)
            .cloned()
            .or_else(|| builtin_by_name(name))
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    };

    let mut scripts = Vec::with_capacity(raw.scripts.len());
    for script in &raw.scripts {
        let start = resolve(&script.start)?;
        let steps = script
            .steps
            .iter()
            .map(|step| {
                Ok(FactorizationStep {
                    direction: match step.op {
                        RawOp::Blowup => Direction::BlowUp,
                        RawOp::Blowdown => Direction::BlowDown,
                    },
                    center: resolve(&step.center)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        scripts.push(FactorizationScript {
            name: script.name.clone(),
            start,
            steps,
        });
    }

    Ok(ManifestDocument {
        format_version: raw.format_version,
        manifolds,
        scripts,
        report: raw.report,
    })
}

/// Parses the manifest far enough to validate every model independently,
/// reporting each model's outcome instead of stopping at the first failure.
/// Syntax and schema errors are still fatal.
pub fn validate_entries(text: &str, options: &ParseOptions) -> Result<Vec<ModelEntry>> {
    parse_entries(text, options).map(|(_, entries)| entries)
}

fn parse_entries(text: &str, options: &ParseOptions) -> Result<(RawDocument, Vec<ModelEntry>)> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    if !options.lenient {
        check_schema_keys(&value)?;
    }
    let raw: RawDocument =
        serde_json::from_value(value).map_err(|e| Error::Manifest(e.to_string()))?;
    if raw.format_version != FORMAT_VERSION {
        return Err(Error::Manifest(format!(
            "unsupported format_version `{}` (expected `{FORMAT_VERSION}`)",
            raw.format_version
        )));
    }
    let entries = raw
        .manifolds
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let name = v
                .get("name")
                .and_then(Value::as_str)
                .map_or_else(|| format!("manifolds[{i}]"), str::to_string);
            let result = serde_json::from_value::<RawModel>(v.clone())
                .map_err(|e| Error::Manifest(format!("manifolds[{i}]: {e}")))
                .and_then(build_model);
            ModelEntry { name, result }
        })
        .collect();
    Ok((raw, entries))
}

// serde_json appends " at line X column Y" which we report separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(idx) => msg[..idx].to_string(),
        None => msg.to_string(),
    }
}

fn check_keys(value: &Value, allowed: &[&str], path: &str) -> Result<()> {
    if let Some(obj) = value.as_object() {
        if let Some(key) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Manifest(format!("unknown key `{key}` in {path}")));
        }
    }
    Ok(())
}

fn check_schema_keys(doc: &Value) -> Result<()> {
    check_keys(doc, TOP_KEYS, "document")?;
    let list = |key: &str| {
        doc.get(key)
            .and_then(Value::as_array)
            .map(Vec::as_slice)
            .unwrap_or_default()
    };
    for (i, model) in list("manifolds").iter().enumerate() {
        let path = format!("manifolds[{i}]");
        check_keys(model, MODEL_KEYS, &path)?;
        if let Some(flags) = model.get("flags") {
            check_keys(flags, FLAG_KEYS, &format!("{path}.flags"))?;
        }
    }
    for (i, script) in list("scripts").iter().enumerate() {
        let path = format!("scripts[{i}]");
        check_keys(script, SCRIPT_KEYS, &path)?;
        if let Some(steps) = script.get("steps").and_then(Value::as_array) {
            for (j, step) in steps.iter().enumerate() {
                check_keys(step, STEP_KEYS, &format!("{path}.steps[{j}]"))?;
            }
        }
    }
    Ok(())
}

fn build_model(raw: RawModel) -> Result<ManifoldModel> {
    let diamond = HodgeDiamond::from_rows(&raw.hodge).map_err(|e| Error::Validation {
        name: raw.name.clone(),
        violations: vec![e.to_string()],
    })?;
    let betti = raw
        .betti
        .map(BettiVector::new)
        .transpose()
        .map_err(|e| Error::Validation {
            name: raw.name.clone(),
            violations: vec![e.to_string()],
        })?;
    let flags = Flags {
        kaehler: raw.flags.kaehler,
        fujiki: raw.flags.fujiki,
        ddbar: raw.flags.ddbar,
        e1_degenerate: raw.flags.e1_degenerate,
    };
    let parts = ModelParts {
        name: raw.name.clone(),
        dim: raw.dim,
        connected: raw.connected,
        diamond,
        betti: if raw.betti_derived {
            None
        } else {
            betti.clone()
        },
        flags,
        provenance: raw.provenance,
    };
    let model = parts.validate()?;
    if raw.betti_derived && (!model.betti_derived() || model.betti() != betti.as_ref()) {
        return Err(Error::Validation {
            name: raw.name,
            violations: vec![
                "betti_derived is set but the Betti numbers do not follow from e1_degenerate"
                    .into(),
            ],
        });
    }
    Ok(model)
}

/// JSON object for one model, in the manifest schema.
pub fn model_to_value(m: &ManifoldModel) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), m.name().into());
    obj.insert("dim".into(), m.dim().into());
    if !m.connected() {
        obj.insert("connected".into(), false.into());
    }
    obj.insert(
        "hodge".into(),
        Value::Array(
            m.diamond()
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(Value::from).collect())
                .collect(),
        ),
    );
    if let Some(b) = m.betti() {
        obj.insert(
            "betti".into(),
            b.as_slice().iter().copied().map(Value::from).collect(),
        );
        if m.betti_derived() {
            obj.insert("betti_derived".into(), true.into());
        }
    }
    let flags: Map<String, Value> = m
        .flags()
        .named()
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k.to_string(), Value::from(v))))
        .collect();
    if !flags.is_empty() {
        obj.insert("flags".into(), Value::Object(flags));
    }
    if !m.provenance().is_empty() {
        obj.insert(
            "provenance".into(),
            m.provenance().iter().cloned().map(Value::from).collect(),
        );
    }
    Value::Object(obj)
}

fn script_to_value(s: &FactorizationScript) -> Value {
    let steps = s
        .steps
        .iter()
        .map(|step| {
            let mut obj = Map::new();
            obj.insert("op".into(), step.direction.as_str().into());
            obj.insert("center".into(), step.center.name().into());
            Value::Object(obj)
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("name".into(), s.name.clone().into());
    obj.insert("start".into(), s.start.name().into());
    obj.insert("steps".into(), Value::Array(steps));
    Value::Object(obj)
}

pub fn document_to_value(doc: &ManifestDocument) -> Value {
    let mut obj = Map::new();
    obj.insert("format_version".into(), doc.format_version.clone().into());
    obj.insert(
        "manifolds".into(),
        doc.manifolds.iter().map(model_to_value).collect(),
    );
    if !doc.scripts.is_empty() {
        obj.insert(
            "scripts".into(),
            doc.scripts.iter().map(script_to_value).collect(),
        );
    }
    if let Some(report) = &doc.report {
        obj.insert("report".into(), report.clone());
    }
    Value::Object(obj)
}

/// Canonical text of a document.
pub fn serialize(doc: &ManifestDocument) -> String {
    to_canonical_string(&document_to_value(doc))
}

/// Canonical rendering of any JSON value, newline-terminated.
pub fn to_canonical_string(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn is_inline(value: &Value) -> bool {
    match value {
        Value::Object(map) => map.is_empty(),
        Value::Array(items) => items.len() <= INLINE_ARRAY_MAX && items.iter().all(is_inline),
        _ => true,
    }
}

fn write_scalar(value: &Value, out: &mut String) {
    out.push_str(&serde_json::to_string(value).expect("scalar serializes"));
}

fn write_value(value: &Value, indent: usize, out: &mut String) {
    let pad = |level: usize| "  ".repeat(level);
    match value {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if is_inline(value) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(item, indent, out);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", pad(indent));
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, key) in keys.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_scalar(&Value::String((*key).clone()), out);
                out.push_str(": ");
                write_value(&map[*key], indent + 1, out);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", pad(indent));
        }
        scalar => write_scalar(scalar, out),
    }
}
