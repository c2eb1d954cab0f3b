use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hodge_core::manifest::{
    document_to_value, parse_manifest_with, to_canonical_string, validate_entries,
};
use hodge_core::{
    blow_up, builtin_by_name, check_defect_identity, count_delta, ddbar_necessary,
    degenerates_at_e1, exceptional_divisor, invariant_audit, run_script, serialize, BlowUpSpec,
    Error, FactorizationScript, InvariantAuditReport, ManifestDocument, ManifoldModel,
    ParseOptions,
};
use serde_json::{json, Value};

use crate::render::RenderedDiamond;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNKNOWN_NAME: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_AUDIT: i32 = 5;

/// Models checked by `check` when no manifest is loaded.
pub const DEFAULT_CHECK_SET: &[&str] = &[
    "point",
    "CP1",
    "CP2",
    "CP3",
    "CP4",
    "genus0curve",
    "genus1curve",
    "genus2curve",
    "genus3curve",
    "T1",
    "T2",
    "T3",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Syntax { .. }
        | Error::Manifest(_)
        | Error::Validation { .. }
        | Error::UnresolvedReference(_)
        | Error::InvalidBuiltin(_) => EXIT_INVALID,
        Error::CodimTooSmall { .. }
        | Error::InapplicableStep(_)
        | Error::ScriptStep { .. }
        | Error::DimensionMismatch(_)
        | Error::BettiRequired(_)
        | Error::ExactSequence(_) => EXIT_PRECONDITION,
    }
}

fn error_outcome(context: &str, err: &Error) -> Outcome {
    Outcome::fail(exit_code(err), format!("error: {context}{err}"))
}

#[derive(Debug, Clone)]
pub struct Source {
    pub path: PathBuf,
    pub text: String,
}

/// Expands a colon-separated search path. Directories contribute their
/// `*.json` files in name order.
pub fn search_path(value: &str) -> std::io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in value.split(':').filter(|s| !s.is_empty()) {
        let path = Path::new(entry);
        if path.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(path)?
                .map(|e| e.map(|e| e.path()))
                .collect::<std::io::Result<_>>()?;
            files.retain(|p| p.extension().is_some_and(|e| e == "json"));
            files.sort();
            out.extend(files);
        } else {
            out.push(path.to_path_buf());
        }
    }
    Ok(out)
}

pub fn read_sources(paths: &[PathBuf]) -> Result<Vec<Source>, Outcome> {
    paths
        .iter()
        .map(|path| {
            std::fs::read_to_string(path)
                .map(|text| Source {
                    path: path.clone(),
                    text,
                })
                .map_err(|e| Outcome::fail(EXIT_INVALID, format!("error: {}: {e}", path.display())))
        })
        .collect()
}

/// Everything loaded from the manifests, in load order.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    pub models: Vec<ManifoldModel>,
    pub scripts: Vec<FactorizationScript>,
}

impl Registry {
    pub fn load(sources: &[Source], options: &ParseOptions) -> Result<Self, Outcome> {
        let mut reg = Registry::default();
        for src in sources {
            let doc = parse_manifest_with(&src.text, options, &reg.models)
                .map_err(|e| error_outcome(&format!("{}: ", src.path.display()), &e))?;
            reg.models.extend(doc.manifolds);
            reg.scripts.extend(doc.scripts);
        }
        Ok(reg)
    }

    /// Later manifests shadow earlier ones; builtins come last.
    pub fn model(&self, name: &str) -> Result<ManifoldModel, Outcome> {
        self.models
            .iter()
            .rev()
            .find(|m| m.name() == name)
            .cloned()
            .or_else(|| builtin_by_name(name))
            .ok_or_else(|| {
                Outcome::fail(EXIT_UNKNOWN_NAME, format!("error: unknown model `{name}`"))
            })
    }

    pub fn script(&self, name: &str) -> Result<&FactorizationScript, Outcome> {
        self.scripts
            .iter()
            .rev()
            .find(|s| s.name == name)
            .ok_or_else(|| {
                Outcome::fail(EXIT_UNKNOWN_NAME, format!("error: unknown script `{name}`"))
            })
    }
}

fn tri(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn describe_model(m: &ManifoldModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", m.name());
    let _ = writeln!(out, "dim: {}", m.dim());
    if !m.connected() {
        let _ = writeln!(out, "connected: false");
    }
    out.push_str("hodge:\n");
    for line in RenderedDiamond::new(m.diamond()).lines {
        let _ = writeln!(out, "  {line}");
    }
    match m.betti() {
        Some(b) if m.betti_derived() => {
            let _ = writeln!(out, "betti: {} (derived)", join(b.as_slice()));
        }
        Some(b) => {
            let _ = writeln!(out, "betti: {}", join(b.as_slice()));
        }
        None => out.push_str("betti: unknown\n"),
    }
    let flags = m
        .flags()
        .named()
        .iter()
        .map(|(k, v)| format!("{k}={}", tri(*v)))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(out, "flags: {flags}");
    match m.defect() {
        Some(d) => {
            let _ = writeln!(out, "defect: {}", join(d.as_slice()));
        }
        None => out.push_str("defect: unknown\n"),
    }
    for note in m.provenance() {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

fn json_document(manifolds: Vec<ManifoldModel>, report: Option<Value>) -> String {
    let mut doc = ManifestDocument::new(manifolds);
    doc.report = report;
    serialize(&doc)
}

pub fn show(reg: &Registry, name: &str, as_json: bool) -> Outcome {
    let m = match reg.model(name) {
        Ok(m) => m,
        Err(o) => return o,
    };
    if as_json {
        Outcome::ok(json_document(vec![m], None))
    } else {
        Outcome::ok(describe_model(&m))
    }
}

pub fn blowup(
    reg: &Registry,
    ambient: &str,
    centers: &[String],
    out: Option<&Path>,
    as_json: bool,
) -> Outcome {
    let x = match reg.model(ambient) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let zs = match centers
        .iter()
        .map(|c| reg.model(c))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(z) => z,
        Err(o) => return o,
    };
    let spec = match BlowUpSpec::with_centers(x, zs) {
        Ok(s) => s,
        Err(e) => return error_outcome("", &e),
    };
    let (result, divisor) = match blow_up(&spec).and_then(|r| Ok((r, exceptional_divisor(&spec)?)))
    {
        Ok(pair) => pair,
        Err(e) => return error_outcome("", &e),
    };
    let identity = check_defect_identity(&spec, &result).ok();

    let report = json!({
        "ambient": spec.ambient().name(),
        "centers": spec.centers().iter().map(|c| c.name()).collect::<Vec<_>>(),
        "codim": spec.codim(),
        "exceptional_divisor": divisor.name(),
        "defect_identity": identity,
    });
    let document = json_document(vec![result.clone(), divisor], Some(report));
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, &document) {
            return Outcome::fail(EXIT_INVALID, format!("error: {}: {e}", path.display()));
        }
    }
    if as_json {
        return Outcome::ok(document);
    }
    let mut text = describe_model(&result);
    let _ = writeln!(text, "codim: {}", spec.codim());
    match identity {
        Some(true) => text.push_str("defect identity: holds\n"),
        Some(false) => text.push_str("defect identity: FAILS\n"),
        None => text.push_str("defect identity: unknown\n"),
    }
    Outcome::ok(text)
}

fn audit_lines(report: &InvariantAuditReport) -> String {
    let fmt = |v: Option<i64>| v.map_or_else(|| "?".to_string(), |v| v.to_string());
    let mut out = format!("audit: {} vs {}\n", report.left, report.right);
    for e in &report.entries {
        let _ = writeln!(
            out,
            "  {:<14} {:>4} {:>4}  {}",
            e.invariant,
            fmt(e.left),
            fmt(e.right),
            e.status
        );
    }
    out
}

pub fn factor(reg: &Registry, script: &str, audit: bool, as_json: bool) -> Outcome {
    let script = match reg.script(script) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let run = match run_script(script) {
        Ok(r) => r,
        Err(e) => return error_outcome(&format!("script `{}`: ", script.name), &e),
    };
    let delta = match count_delta(script) {
        Ok(d) => d,
        Err(e) => return error_outcome(&format!("script `{}`: ", script.name), &e),
    };
    let first = &run.trace[0];
    let last = &run.final_model;
    let h11 = |m: &ManifoldModel| m.h(1, 1) as i64;
    let h11_delta = h11(last) - h11(first);
    let b2_delta = match (first.b(2), last.b(2)) {
        (Some(a), Some(b)) => Some(b as i64 - a as i64),
        _ => None,
    };

    let mut contract = Vec::new();
    if h11_delta != delta {
        contract.push(format!("h11 delta {h11_delta} != count_delta {delta}"));
    }
    if let Some(b2) = b2_delta.filter(|&b| b != delta) {
        contract.push(format!("b2 delta {b2} != count_delta {delta}"));
    }
    let report = if audit {
        match invariant_audit(first, last) {
            Ok(r) => {
                contract.extend(
                    r.failures()
                        .map(|f| format!("audit: {} differs", f.invariant)),
                );
                Some(r)
            }
            Err(e) => return error_outcome("", &e),
        }
    } else {
        None
    };
    let code = if contract.is_empty() {
        EXIT_OK
    } else {
        EXIT_AUDIT
    };

    let stdout = if as_json {
        let steps: Vec<Value> = script
            .steps
            .iter()
            .map(|s| json!({"op": s.direction.as_str(), "center": s.center.name()}))
            .collect();
        let mut value = json!({
            "script": script.name,
            "start": first.name(),
            "steps": steps,
            "h11": run.trace.iter().map(h11).collect::<Vec<_>>(),
            "b2": run.trace.iter().map(|m| m.b(2)).collect::<Vec<_>>(),
            "count_delta": delta,
            "h11_delta": h11_delta,
            "b2_delta": b2_delta,
            "contract_failures": contract,
        });
        if let Some(r) = &report {
            value["audit"] = r
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "invariant": e.invariant,
                        "left": e.left,
                        "right": e.right,
                        "status": e.status.to_string().to_lowercase(),
                    })
                })
                .collect();
        }
        json_document(run.trace.clone(), Some(value))
    } else {
        let mut out = format!(
            "script: {} (start {}, {} steps)\n",
            script.name,
            first.name(),
            script.steps.len()
        );
        let _ = writeln!(
            out,
            "{:<4} {:<9} {:<14} {:>4} {:>4}",
            "i", "op", "center", "h11", "b2"
        );
        for (i, m) in run.trace.iter().enumerate() {
            let (op, center) = match i.checked_sub(1).map(|j| &script.steps[j]) {
                Some(s) => (s.direction.as_str(), s.center.name()),
                None => ("start", "-"),
            };
            let b2 = m.b(2).map_or_else(|| "?".to_string(), |b| b.to_string());
            let _ = writeln!(out, "{i:<4} {op:<9} {center:<14} {:>4} {b2:>4}", h11(m));
        }
        let _ = writeln!(out, "count_delta: {delta:+}");
        let _ = writeln!(out, "h11 delta: {h11_delta:+}");
        match b2_delta {
            Some(b) => {
                let _ = writeln!(out, "b2 delta: {b:+}");
            }
            None => out.push_str("b2 delta: unknown\n"),
        }
        if let Some(r) = &report {
            out.push_str(&audit_lines(r));
        }
        if contract.is_empty() {
            out.push_str("contract: ok\n");
        } else {
            for c in &contract {
                let _ = writeln!(out, "contract: FAIL {c}");
            }
        }
        out
    };
    Outcome {
        stdout,
        stderr: if code == EXIT_AUDIT {
            "error: contract audit failed\n".into()
        } else {
            String::new()
        },
        code,
    }
}

/// Per-model result of `check`.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub model: Result<ManifoldModel, Vec<String>>,
}

fn violations(err: &Error) -> Vec<String> {
    match err {
        Error::Validation { violations, .. } => violations.clone(),
        other => vec![other.to_string()],
    }
}

/// Collects every model of every source, validated independently, plus
/// document-level errors that are not tied to a single model.
pub fn collect_checks(
    sources: &[Source],
    options: &ParseOptions,
) -> (Vec<CheckReport>, Vec<String>) {
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    let mut known = Vec::new();
    for src in sources {
        match validate_entries(&src.text, options) {
            Ok(entries) => {
                for entry in entries {
                    reports.push(CheckReport {
                        name: entry.name,
                        model: entry.result.map_err(|e| violations(&e)),
                    });
                }
            }
            Err(e) => {
                errors.push(format!("{}: {e}", src.path.display()));
                continue;
            }
        }
        match parse_manifest_with(&src.text, options, &known) {
            Ok(doc) => known.extend(doc.manifolds),
            Err(Error::Validation { .. }) => {}
            Err(e) => errors.push(format!("{}: {e}", src.path.display())),
        }
    }
    (reports, errors)
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

fn check_value(report: &CheckReport) -> Value {
    match &report.model {
        Err(v) => json!({"name": report.name, "valid": false, "violations": v}),
        Ok(m) => {
            let degeneracy = degenerates_at_e1(m).ok();
            json!({
                "name": report.name,
                "valid": true,
                "serre_symmetric": m.diamond().serre_symmetric(),
                "hodge_symmetric": m.diamond().hodge_symmetric(),
                "defect": m.defect().map(|d| d.as_slice().to_vec()),
                "e1_degenerate": degeneracy.as_ref().map(|d| d.degenerate),
                "first_failing_k": degeneracy.and_then(|d| d.first_failing_k),
                "ddbar_necessary": ddbar_necessary(m).ok(),
            })
        }
    }
}

fn check_text(report: &CheckReport) -> String {
    let mut out = String::new();
    match &report.model {
        Err(v) => {
            let _ = writeln!(out, "{}: INVALID", report.name);
            for line in v {
                let _ = writeln!(out, "  - {line}");
            }
        }
        Ok(m) => {
            let _ = writeln!(out, "{}: valid", report.name);
            let d = m.diamond();
            let _ = writeln!(out, "  serre symmetric: {}", yes_no(d.serre_symmetric()));
            let _ = writeln!(out, "  hodge symmetric: {}", yes_no(d.hodge_symmetric()));
            match degenerates_at_e1(m) {
                Ok(r) => {
                    let _ = writeln!(out, "  defect: {}", join(r.defect.as_slice()));
                    match r.first_failing_k {
                        None => out.push_str("  e1 degenerate: yes\n"),
                        Some(k) => {
                            let _ = writeln!(out, "  e1 degenerate: no (first failing k = {k})");
                        }
                    }
                }
                Err(_) => {
                    out.push_str("  defect: unknown (no betti data)\n");
                    out.push_str("  e1 degenerate: unknown\n");
                }
            }
            let ddbar = match ddbar_necessary(m) {
                Ok(true) => "hold",
                Ok(false) => "fail",
                Err(_) => "unknown",
            };
            let _ = writeln!(out, "  ddbar necessary conditions: {ddbar}");
        }
    }
    out
}

pub fn check(
    sources: &[Source],
    options: &ParseOptions,
    name: Option<&str>,
    as_json: bool,
) -> Outcome {
    let (mut reports, errors) = if sources.is_empty() {
        let names: Vec<&str> = match name {
            Some(n) => vec![n],
            None => DEFAULT_CHECK_SET.to_vec(),
        };
        let mut reports = Vec::new();
        for n in names {
            match builtin_by_name(n) {
                Some(m) => reports.push(CheckReport {
                    name: n.to_string(),
                    model: Ok(m),
                }),
                None => {
                    return Outcome::fail(EXIT_UNKNOWN_NAME, format!("error: unknown model `{n}`"))
                }
            }
        }
        (reports, Vec::new())
    } else {
        collect_checks(sources, options)
    };
    if let Some(n) = name {
        reports.retain(|r| r.name == n);
        if reports.is_empty() {
            match builtin_by_name(n) {
                Some(m) => reports.push(CheckReport {
                    name: n.to_string(),
                    model: Ok(m),
                }),
                None => {
                    return Outcome::fail(EXIT_UNKNOWN_NAME, format!("error: unknown model `{n}`"))
                }
            }
        }
    }
    reports.sort_by(|a, b| a.name.cmp(&b.name));

    let invalid: Vec<&CheckReport> = reports.iter().filter(|r| r.model.is_err()).collect();
    let code = if invalid.is_empty() && errors.is_empty() {
        EXIT_OK
    } else {
        EXIT_INVALID
    };

    let stdout = if as_json {
        let valid = reports
            .iter()
            .filter_map(|r| r.model.as_ref().ok().cloned())
            .collect();
        let mut doc = ManifestDocument::new(valid);
        doc.report = Some(json!({
            "models": reports.iter().map(check_value).collect::<Vec<_>>(),
            "errors": errors,
        }));
        to_canonical_string(&document_to_value(&doc))
    } else {
        reports.iter().map(check_text).collect()
    };

    let mut stderr = String::new();
    for e in &errors {
        let _ = writeln!(stderr, "error: {e}");
    }
    for r in &invalid {
        if let Err(v) = &r.model {
            for line in v {
                let _ = writeln!(stderr, "error: {}: {line}", r.name);
            }
        }
    }
    Outcome {
        stdout,
        stderr,
        code,
    }
}
