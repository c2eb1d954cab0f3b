//! Frölicher defects and `E_1`-degeneracy.
//!
//! The Frölicher spectral sequence degenerates at `E_1` exactly when
//! `b_k = sum_{p+q=k} h^{p,q}` for every `k`. Only this dimension count is
//! modeled; no pages are computed.

use crate::blowup::{blow_up, BlowUpSpec};
use crate::diamond::DefectVector;
use crate::error::{Error, Result};
use crate::model::ManifoldModel;

/// Outcome of the `E_1`-degeneracy test for one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub model: String,
    pub defect: DefectVector,
    pub degenerate: bool,
    /// Least `k` with a positive defect, absent when degenerate.
    pub first_failing_k: Option<usize>,
}

/// Verdicts for the blow-up, the ambient manifold and the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegeneracyVerdicts {
    pub blown_up: bool,
    pub ambient: bool,
    pub center: bool,
}

pub fn frolicher_defect(m: &ManifoldModel) -> Result<DefectVector> {
    m.defect()
        .ok_or_else(|| Error::BettiRequired(m.name().to_string()))
}

pub fn degenerates_at_e1(m: &ManifoldModel) -> Result<DegeneracyReport> {
    let defect = frolicher_defect(m)?;
    let first_failing_k = defect.first_nonzero();
    Ok(DegeneracyReport {
        model: m.name().to_string(),
        degenerate: first_failing_k.is_none(),
        first_failing_k,
        defect,
    })
}

/// Checks `d(X~)[k] = d(X)[k] + sum_{l=1}^{r-1} d(Z)[k-2l]` for all `k`,
/// summing over the components of the center.
pub fn check_defect_identity(spec: &BlowUpSpec, result: &ManifoldModel) -> Result<bool> {
    let blown = frolicher_defect(result)?;
    let ambient = frolicher_defect(spec.ambient())?;
    let centers = spec
        .centers()
        .iter()
        .map(frolicher_defect)
        .collect::<Result<Vec<_>>>()?;
    if blown.dim() != ambient.dim() {
        return Ok(false);
    }
    let r = spec.codim() as i64;
    Ok((0..=2 * blown.dim() as i64).all(|k| {
        let from_center: i64 = centers
            .iter()
            .map(|dz| (1..r).map(|l| dz.get(k - 2 * l)).sum::<i64>())
            .sum();
        blown.get(k) == ambient.get(k) + from_center
    }))
}

/// `E_1`-verdicts of `X~`, `X` and `Z`. The blow-up verdict is computed from
/// the blown-up data itself, so agreement with `ambient && center` is a
/// checkable consequence rather than an assumption.
pub fn propagate_degeneracy(spec: &BlowUpSpec) -> Result<DegeneracyVerdicts> {
    let ambient = degenerates_at_e1(spec.ambient())?.degenerate;
    let mut center = true;
    for z in spec.centers() {
        center &= degenerates_at_e1(z)?.degenerate;
    }
    let blown_up = degenerates_at_e1(&blow_up(spec)?)?.degenerate;
    Ok(DegeneracyVerdicts {
        blown_up,
        ambient,
        center,
    })
}

/// Necessary conditions for the `dd^c`-lemma: `E_1`-degeneracy and Hodge
/// symmetry. A `true` result does not certify the lemma.
pub fn ddbar_necessary(m: &ManifoldModel) -> Result<bool> {
    if !m.diamond().hodge_symmetric() {
        return Ok(false);
    }
    Ok(degenerates_at_e1(m)?.degenerate)
}
