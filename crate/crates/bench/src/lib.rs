//! Inputs shared by the benchmarks.

use hodge_core::catalog::{curve, point, projective_space};
use hodge_core::{BlowUpSpec, FactorizationScript, FactorizationStep, HodgeDiamond, ManifoldModel};

/// Connected diamond of dimension `n` with a deterministic spread of entries.
pub fn dense_model(name: &str, n: usize) -> ManifoldModel {
    let d = HodgeDiamond::from_fn(n, |p, q| {
        if p == 0 && q == 0 {
            1
        } else {
            ((p * 7 + q * 3) % 10) as u64
        }
    });
    ManifoldModel::new(name, d).expect("valid model")
}

/// Blow-up of a dense `n`-fold along a dense center of codimension `r`.
pub fn dense_spec(n: usize, r: usize) -> BlowUpSpec {
    BlowUpSpec::new(dense_model("X", n), dense_model("Z", n - r)).expect("codim >= 2")
}

/// `len` point blow-ups of `CP^n` followed by the same number of
/// blow-downs, interleaved with a curve blow-up and blow-down.
pub fn round_trip_script(n: usize, len: usize) -> FactorizationScript {
    let mut steps: Vec<FactorizationStep> =
        (0..len).map(|_| FactorizationStep::up(point())).collect();
    steps.push(FactorizationStep::up(curve(2).expect("curve")));
    steps.push(FactorizationStep::down(curve(2).expect("curve")));
    steps.extend((0..len).map(|_| FactorizationStep::down(point())));
    FactorizationScript {
        name: format!("round-trip-{len}"),
        start: projective_space(n).expect("CP^n"),
        steps,
    }
}
