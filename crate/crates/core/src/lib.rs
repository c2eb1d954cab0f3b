//! Exact integer calculus on the cohomological invariants of compact complex
//! manifolds.
//!
//! A manifold is modeled by its Hodge diamond `h[p][q] = dim H^{p,q}`, an
//! optional Betti vector and a handful of tri-state structural flags. On top
//! of these value types the crate implements
//!
//! - the Dolbeault and de Rham blow-up formulas along a smooth center of
//!   codimension `r >= 2`, together with the projective-bundle formula that
//!   describes the exceptional divisor ([`blowup`]);
//! - Frölicher defects and the `E_1`-degeneracy criterion ([`spectral`]);
//! - blow-up/blow-down scripts and bimeromorphic-invariant audits
//!   ([`birational`]);
//! - alternating-sum arithmetic for long exact sequences ([`exactseq`]);
//! - a JSON manifest format and a catalog of standard manifolds
//!   ([`catalog`], [`manifest`]).
//!
//! Everything works at the level of dimensions. No cohomology classes or maps
//! are represented.

pub mod birational;
pub mod blowup;
pub mod catalog;
pub mod diamond;
pub mod error;
pub mod exactseq;
pub mod manifest;
pub mod model;
pub mod spectral;

pub use birational::{
    apply_step, count_delta, invariant_audit, run_script, AuditEntry, AuditStatus, Direction,
    FactorizationScript, FactorizationStep, InvariantAuditReport, ScriptRun,
};
pub use blowup::{
    blow_up, blow_up_with, de_rham_blow_up, exceptional_divisor, hochschild_blow_up, point_blow_up,
    projective_bundle, BlowUpOptions, BlowUpSpec,
};
pub use catalog::{builtin, builtin_by_name, Builtin};
pub use diamond::{BettiVector, DefectVector, HochschildDims, HodgeDiamond};
pub use error::{Error, Result};
pub use exactseq::{ExactSequenceDims, RelativeTable, SeqEntry};
pub use manifest::{parse_manifest, serialize, ManifestDocument, ParseOptions};
pub use model::{Flags, ManifoldModel};
pub use spectral::{
    check_defect_identity, ddbar_necessary, degenerates_at_e1, frolicher_defect,
    propagate_degeneracy, DegeneracyReport, DegeneracyVerdicts,
};
