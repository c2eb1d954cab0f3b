//! Blow-up/blow-down scripts and bimeromorphic-invariant audits.
//!
//! A script models a weak factorization `X = X_0 - - > X_1 - - > ... X_l`,
//! each arrow a blow-up or blow-down along a smooth center. Blowing down is
//! the exact arithmetic inverse of blowing up; whether the contraction exists
//! geometrically cannot be seen from invariants and is assumed.

use std::fmt;

use crate::blowup::{blow_up, BlowUpSpec};
use crate::diamond::{BettiVector, HodgeDiamond};
use crate::error::{Error, Result};
use crate::model::{Flags, ManifoldModel, ModelParts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    BlowUp,
    BlowDown,
}

impl Direction {
    /// Manifest spelling.
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::BlowUp => "blowup",
            Direction::BlowDown => "blowdown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationStep {
    pub direction: Direction,
    pub center: ManifoldModel,
}

impl FactorizationStep {
    pub fn up(center: ManifoldModel) -> Self {
        FactorizationStep {
            direction: Direction::BlowUp,
            center,
        }
    }

    pub fn down(center: ManifoldModel) -> Self {
        FactorizationStep {
            direction: Direction::BlowDown,
            center,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationScript {
    pub name: String,
    pub start: ManifoldModel,
    pub steps: Vec<FactorizationStep>,
}

/// Final model and every intermediate `X_i`, starting with `X_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptRun {
    pub final_model: ManifoldModel,
    pub trace: Vec<ManifoldModel>,
}

pub fn apply_step(current: &ManifoldModel, step: &FactorizationStep) -> Result<ManifoldModel> {
    match step.direction {
        Direction::BlowUp => blow_up(&BlowUpSpec::new(current.clone(), step.center.clone())?),
        Direction::BlowDown => blow_down(current, &step.center),
    }
}

/// The unique `X` (at the level of invariants) whose blow-up along `center`
/// is `current`.
fn blow_down(current: &ManifoldModel, center: &ManifoldModel) -> Result<ManifoldModel> {
    let n = current.dim();
    let codim = n as i64 - center.dim() as i64;
    if codim < 2 {
        return Err(Error::CodimTooSmall { codim });
    }
    let r = codim;
    let z = center.diamond();

    let mut rows = current.diamond().rows();
    for (p, row) in rows.iter_mut().enumerate() {
        for (q, entry) in row.iter_mut().enumerate() {
            let added: u64 = (1..r).map(|i| z.get(p as i64 - i, q as i64 - i)).sum();
            *entry = entry.checked_sub(added).ok_or_else(|| {
                Error::InapplicableStep(format!(
                    "blowing down `{}` from `{}` leaves h[{p}][{q}] = {} - {added} < 0",
                    center.name(),
                    current.name(),
                    *entry
                ))
            })?;
        }
    }
    let diamond = HodgeDiamond::from_rows(&rows)?;

    let betti = match (current.betti(), center.betti()) {
        (Some(bx), Some(bz)) => {
            let mut b = Vec::with_capacity(2 * n + 1);
            for k in 0..=2 * n as i64 {
                let added: u64 = (1..r).map(|l| bz.get(k - 2 * l)).sum();
                b.push(bx.get(k).checked_sub(added).ok_or_else(|| {
                    Error::InapplicableStep(format!(
                        "blowing down `{}` from `{}` leaves b[{k}] = {} - {added} < 0",
                        center.name(),
                        current.name(),
                        bx.get(k)
                    ))
                })?);
            }
            Some(BettiVector::new(b)?)
        }
        _ => None,
    };

    // X~ degenerates (satisfies ddbar) iff X and Z do, and X~ lies in the
    // Fujiki class iff X does.
    let up = current.flags();
    let zf = center.flags();
    let descend = |blown: Option<bool>, at_center: Option<bool>| match (blown, at_center) {
        (Some(true), _) => Some(true),
        (Some(false), Some(true)) => Some(false),
        _ => None,
    };
    let flags = Flags {
        kaehler: None,
        fujiki: up.fujiki,
        ddbar: descend(up.ddbar, zf.ddbar),
        e1_degenerate: descend(up.e1_degenerate, zf.e1_degenerate),
    };

    ManifoldModel::from_parts(ModelParts {
        name: format!("Bd({}, {})", current.name(), center.name()),
        dim: n,
        connected: current.connected(),
        diamond,
        betti,
        flags,
        provenance: vec![
            "contraction assumed: blow-down feasibility is checked only arithmetically".into(),
        ],
    })
    .map_err(|e| Error::InapplicableStep(e.to_string()))
}

pub fn run_script(script: &FactorizationScript) -> Result<ScriptRun> {
    let mut trace = vec![script.start.clone()];
    for (index, step) in script.steps.iter().enumerate() {
        let next = apply_step(trace.last().expect("non-empty"), step).map_err(|source| {
            Error::ScriptStep {
                index,
                source: Box::new(source),
            }
        })?;
        trace.push(next);
    }
    Ok(ScriptRun {
        final_model: trace.last().expect("non-empty").clone(),
        trace,
    })
}

/// `#blow-ups - #blow-downs`. The script must run and every center must be
/// connected, so that each step moves `h^{1,1}` by exactly one.
pub fn count_delta(script: &FactorizationScript) -> Result<i64> {
    if let Some((index, step)) = script
        .steps
        .iter()
        .enumerate()
        .find(|(_, s)| !s.center.connected())
    {
        return Err(Error::ScriptStep {
            index,
            source: Box::new(Error::InapplicableStep(format!(
                "center `{}` is disconnected",
                step.center.name()
            ))),
        });
    }
    run_script(script)?;
    Ok(script
        .steps
        .iter()
        .map(|s| match s.direction {
            Direction::BlowUp => 1,
            Direction::BlowDown => -1,
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditStatus {
    Equal,
    Differ,
    /// Betti data missing on at least one side.
    Unknown,
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditStatus::Equal => "equal",
            AuditStatus::Differ => "DIFFER",
            AuditStatus::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub invariant: String,
    pub left: Option<i64>,
    pub right: Option<i64>,
    pub status: AuditStatus,
}

impl AuditEntry {
    fn new(invariant: String, left: Option<i64>, right: Option<i64>) -> Self {
        let status = match (left, right) {
            (Some(a), Some(b)) if a == b => AuditStatus::Equal,
            (Some(_), Some(_)) => AuditStatus::Differ,
            _ => AuditStatus::Unknown,
        };
        AuditEntry {
            invariant,
            left,
            right,
            status,
        }
    }
}

/// Comparison of the bimeromorphic invariants `h^{p,0}`, `h^{0,q}`, `b_1`
/// and `b_2 - h^{1,1}` of two models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantAuditReport {
    pub left: String,
    pub right: String,
    pub entries: Vec<AuditEntry>,
}

impl InvariantAuditReport {
    /// No entry differs. Unknown entries do not count as failures.
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.status != AuditStatus::Differ)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries
            .iter()
            .filter(|e| e.status == AuditStatus::Differ)
    }
}

pub fn invariant_audit(a: &ManifoldModel, b: &ManifoldModel) -> Result<InvariantAuditReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cannot audit `{}` (dim {}) against `{}` (dim {})",
            a.name(),
            a.dim(),
            b.name(),
            b.dim()
        )));
    }
    let n = a.dim() as i64;
    let h = |m: &ManifoldModel, p: i64, q: i64| Some(m.h(p, q) as i64);
    let mut entries = Vec::new();
    for p in 0..=n {
        entries.push(AuditEntry::new(
            format!("h^{{{p},0}}"),
            h(a, p, 0),
            h(b, p, 0),
        ));
    }
    for q in 1..=n {
        entries.push(AuditEntry::new(
            format!("h^{{0,{q}}}"),
            h(a, 0, q),
            h(b, 0, q),
        ));
    }
    let b1 = |m: &ManifoldModel| m.b(1).map(|v| v as i64);
    entries.push(AuditEntry::new("b_1".into(), b1(a), b1(b)));
    let b2h11 = |m: &ManifoldModel| m.b(2).map(|v| v as i64 - m.h(1, 1) as i64);
    entries.push(AuditEntry::new("b_2 - h^{1,1}".into(), b2h11(a), b2h11(b)));
    Ok(InvariantAuditReport {
        left: a.name().to_string(),
        right: b.name().to_string(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::point_blow_up;
    use crate::catalog::{curve, point, projective_space};

    fn script(steps: Vec<FactorizationStep>) -> FactorizationScript {
        FactorizationScript {
            name: "s".into(),
            start: projective_space(3).unwrap(),
            steps,
        }
    }

    #[test]
    fn up_then_down_restores() {
        let cp3 = projective_space(3).unwrap();
        let up = apply_step(&cp3, &FactorizationStep::up(point())).unwrap();
        assert!(up.same_invariants(&point_blow_up(&cp3).unwrap()));
        let down = apply_step(&up, &FactorizationStep::down(point())).unwrap();
        assert!(down.same_invariants(&cp3));
        assert_eq!(down.flags().e1_degenerate, Some(true));
        assert_eq!(down.flags().fujiki, Some(true));
    }

    #[test]
    fn infeasible_blow_down() {
        let err = apply_step(
            &projective_space(3).unwrap(),
            &FactorizationStep::down(curve(1).unwrap()),
        )
        .unwrap_err();
        match err {
            Error::InapplicableStep(msg) => assert!(msg.contains("0 - 1 < 0"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn script_runs() {
        let run = run_script(&script(vec![
            FactorizationStep::up(point()),
            FactorizationStep::down(point()),
        ]))
        .unwrap();
        assert!(run
            .final_model
            .same_invariants(&projective_space(3).unwrap()));
        assert_eq!(run.trace.len(), 3);

        let run = run_script(&script(vec![
            FactorizationStep::up(point()),
            FactorizationStep::up(point()),
        ]))
        .unwrap();
        assert_eq!(run.final_model.h(1, 1), 3);
        let trace: Vec<u64> = run.trace.iter().map(|m| m.h(1, 1)).collect();
        assert_eq!(trace, vec![1, 2, 3]);

        let run = run_script(&script(vec![])).unwrap();
        assert_eq!(run.final_model, projective_space(3).unwrap());
    }

    #[test]
    fn script_error_carries_index() {
        let err = run_script(&script(vec![
            FactorizationStep::up(point()),
            FactorizationStep::down(curve(1).unwrap()),
        ]))
        .unwrap_err();
        assert!(matches!(err, Error::ScriptStep { index: 1, .. }));
    }

    #[test]
    fn deltas() {
        let up = || FactorizationStep::up(point());
        let down = || FactorizationStep::down(point());
        assert_eq!(count_delta(&script(vec![up(), up(), down()])).unwrap(), 1);
        assert_eq!(count_delta(&script(vec![up(), down()])).unwrap(), 0);
        assert_eq!(count_delta(&script(vec![])).unwrap(), 0);
        assert!(count_delta(&script(vec![FactorizationStep::down(curve(1).unwrap())])).is_err());
    }

    #[test]
    fn audit_point_blow_up() {
        let cp3 = projective_space(3).unwrap();
        let bl = point_blow_up(&cp3).unwrap();
        let report = invariant_audit(&cp3, &bl).unwrap();
        assert!(report.all_equal());
        assert_eq!(report.entries.len(), 4 + 3 + 2);
        assert_ne!(cp3.h(1, 1), bl.h(1, 1));

        let err = invariant_audit(&cp3, &projective_space(2).unwrap()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn audit_flags_differences_and_unknowns() {
        let bare =
            ManifoldModel::new("bare", HodgeDiamond::from_fn(2, |p, q| u64::from(p == q))).unwrap();
        let report = invariant_audit(&bare, &crate::catalog::torus(2).unwrap()).unwrap();
        assert!(!report.all_equal());
        let statuses: Vec<_> = report.entries.iter().map(|e| e.status).collect();
        assert_eq!(statuses.last(), Some(&AuditStatus::Unknown));
        assert!(report.failures().any(|e| e.invariant == "h^{1,0}"));
    }
}
