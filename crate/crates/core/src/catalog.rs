//! Built-in manifolds with well-known invariants.
//!
//! | name            | model                              |
//! |-----------------|------------------------------------|
//! | `point`         | a point                            |
//! | `CP<n>`         | complex projective space of dim n  |
//! | `genus<g>curve` | compact Riemann surface of genus g |
//! | `T<n>`          | complex torus of dimension n       |
//!
//! All of these are Kähler, so every flag is set.

use crate::diamond::{BettiVector, HodgeDiamond};
use crate::error::{Error, Result};
use crate::model::{Flags, ManifoldModel, ModelParts};

/// Largest torus dimension whose binomial Hodge numbers fit comfortably in
/// `u64`.
const MAX_TORUS_DIM: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Point,
    ProjectiveSpace(usize),
    Curve(u64),
    Torus(usize),
    /// User-supplied data, validated as is.
    Synthetic(ModelParts),
}

pub fn builtin(kind: Builtin) -> Result<ManifoldModel> {
    match kind {
        Builtin::Point => Ok(point()),
        Builtin::ProjectiveSpace(n) => projective_space(n),
        Builtin::Curve(g) => curve(g),
        Builtin::Torus(n) => torus(n),
        Builtin::Synthetic(parts) => parts.validate(),
    }
}

/// Resolves one of the catalog names from the module docs.
pub fn builtin_by_name(name: &str) -> Option<ManifoldModel> {
    let kind = if name == "point" {
        Builtin::Point
    } else if let Some(n) = name.strip_prefix("CP").and_then(parse_index) {
        Builtin::ProjectiveSpace(n as usize)
    } else if let Some(g) = name
        .strip_prefix("genus")
        .and_then(|rest| rest.strip_suffix("curve"))
        .and_then(parse_index)
    {
        Builtin::Curve(g)
    } else {
        let n = name.strip_prefix('T').and_then(parse_index)?;
        Builtin::Torus(n as usize)
    };
    builtin(kind).ok()
}

// Canonical decimal only, so that `CP03` does not alias `CP3`.
fn parse_index(s: &str) -> Option<u64> {
    let v: u64 = s.parse().ok()?;
    (v.to_string() == s).then_some(v)
}

fn kaehler(name: String, diamond: HodgeDiamond, betti: Vec<u64>) -> Result<ManifoldModel> {
    ModelParts::new(name, diamond)
        .betti(BettiVector::new(betti)?)
        .flags(Flags::KAEHLER)
        .validate()
}

pub fn point() -> ManifoldModel {
    kaehler("point".into(), HodgeDiamond::point(), vec![1]).expect("point is valid")
}

/// `CP^n`: ones on the diagonal.
pub fn projective_space(n: usize) -> Result<ManifoldModel> {
    let diamond = HodgeDiamond::from_fn(n, |p, q| u64::from(p == q));
    let betti = (0..=2 * n).map(|k| u64::from(k % 2 == 0)).collect();
    kaehler(format!("CP{n}"), diamond, betti)
}

/// Genus-`g` curve: diamond `(1, g; g, 1)`, Betti `(1, 2g, 1)`.
pub fn curve(g: u64) -> Result<ManifoldModel> {
    let twice = g
        .checked_mul(2)
        .ok_or_else(|| Error::InvalidBuiltin(format!("genus {g} too large")))?;
    kaehler(
        format!("genus{g}curve"),
        HodgeDiamond::from_rows(&[vec![1, g], vec![g, 1]])?,
        vec![1, twice, 1],
    )
}

/// Complex torus: `h[s][t] = C(n, s) C(n, t)` and `b_k = C(2n, k)`.
pub fn torus(n: usize) -> Result<ManifoldModel> {
    if n > MAX_TORUS_DIM {
        return Err(Error::InvalidBuiltin(format!(
            "torus dimension {n} exceeds {MAX_TORUS_DIM}"
        )));
    }
    let diamond = HodgeDiamond::from_fn(n, |s, t| binomial(n, s) * binomial(n, t));
    let betti = (0..=2 * n).map(|k| binomial(2 * n, k)).collect();
    kaehler(format!("T{n}"), diamond, betti)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}
