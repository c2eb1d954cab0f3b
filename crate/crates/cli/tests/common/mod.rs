#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env_path: Option<&'static str>,
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case {
        name,
        args,
        env_path: None,
    }
}

pub const CASES: &[Case] = &[
    case("show_cp2", &["show", "CP2"]),
    case("show_cp2_json", &["--json", "show", "CP2"]),
    case("show_unknown", &["show", "unknown-name"]),
    case(
        "show_hodge_only",
        &[
            "--manifest",
            "fixtures/catalog.json",
            "show",
            "hodge-only-threefold",
        ],
    ),
    case(
        "blowup_cp3_point",
        &["blowup", "--ambient", "CP3", "--center", "point"],
    ),
    case(
        "blowup_cp3_genus2",
        &["blowup", "--ambient", "CP3", "--center", "genus2curve"],
    ),
    case(
        "blowup_cp3_genus2_json",
        &[
            "--json",
            "blowup",
            "--ambient",
            "CP3",
            "--center",
            "genus2curve",
        ],
    ),
    case(
        "blowup_codim0",
        &["blowup", "--ambient", "CP2", "--center", "CP2"],
    ),
    case(
        "blowup_two_points",
        &[
            "blowup",
            "--ambient",
            "CP2",
            "--center",
            "point",
            "--center",
            "point",
        ],
    ),
    case(
        "blowup_iwasawa_point",
        &[
            "--manifest",
            "fixtures/iwasawa.json",
            "blowup",
            "--ambient",
            "iwasawa",
            "--center",
            "point",
        ],
    ),
    case(
        "factor_up_down",
        &[
            "--manifest",
            "fixtures/scripts.json",
            "factor",
            "--script",
            "up-down",
            "--audit",
        ],
    ),
    case(
        "factor_up_up",
        &[
            "--manifest",
            "fixtures/scripts.json",
            "factor",
            "--script",
            "up-up",
        ],
    ),
    case(
        "factor_up_up_json",
        &[
            "--manifest",
            "fixtures/scripts.json",
            "--json",
            "factor",
            "--script",
            "up-up",
            "--audit",
        ],
    ),
    case(
        "factor_infeasible",
        &[
            "--manifest",
            "fixtures/scripts.json",
            "factor",
            "--script",
            "infeasible",
        ],
    ),
    case(
        "factor_unknown",
        &[
            "--manifest",
            "fixtures/scripts.json",
            "factor",
            "--script",
            "nope",
        ],
    ),
    case("check_builtins", &["check"]),
    case(
        "check_catalog",
        &["--manifest", "fixtures/catalog.json", "check"],
    ),
    case(
        "check_iwasawa",
        &["--manifest", "fixtures/iwasawa.json", "check"],
    ),
    case(
        "check_iwasawa_json",
        &["--manifest", "fixtures/iwasawa.json", "--json", "check"],
    ),
    case(
        "check_violations",
        &[
            "--manifest",
            "fixtures/invalid/frolicher_violation.json",
            "check",
        ],
    ),
    case(
        "check_strict_unknown_key",
        &[
            "--manifest",
            "crates/cli/tests/data/extra_key.json",
            "check",
        ],
    ),
    case(
        "check_lenient_unknown_key",
        &[
            "--manifest",
            "crates/cli/tests/data/extra_key.json",
            "--lenient",
            "check",
        ],
    ),
    case(
        "check_syntax_error",
        &["--manifest", "crates/cli/tests/data/broken.json", "check"],
    ),
    Case {
        name: "env_path_factor",
        args: &["factor", "--script", "k3-point", "--audit"],
        env_path: Some("fixtures"),
    },
    case(
        "layered_manifests",
        &[
            "--manifest",
            "fixtures/iwasawa.json",
            "--manifest",
            "crates/cli/tests/data/layered.json",
            "factor",
            "--script",
            "iwasawa-twice",
        ],
    ),
];

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn hodge() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hodge"));
    cmd.current_dir(workspace_root());
    cmd.env_remove("HODGE_MANIFEST_PATH");
    cmd
}

/// Exit code, stdout and stderr of one case, in golden-file form.
pub fn transcript(case: &Case) -> String {
    let mut cmd = hodge();
    cmd.args(case.args);
    if let Some(p) = case.env_path {
        cmd.env("HODGE_MANIFEST_PATH", p);
    }
    let out = cmd.output().expect("hodge binary runs");
    let mut text = String::from("$ hodge");
    if let Some(p) = case.env_path {
        text = format!("$ HODGE_MANIFEST_PATH={p} hodge");
    }
    for a in case.args {
        text.push(' ');
        text.push_str(a);
    }
    text.push_str(&format!("\nexit: {}\n", out.status.code().unwrap_or(-1)));
    text.push_str("--- stdout\n");
    text.push_str(&String::from_utf8(out.stdout).unwrap());
    text.push_str("--- stderr\n");
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    text
}

pub fn golden_path(case: &Case) -> PathBuf {
    golden_dir().join(format!("{}.txt", case.name))
}

pub fn read_golden(case: &Case) -> Option<String> {
    std::fs::read_to_string(golden_path(case)).ok()
}
