//! Validated manifold models and flag inference.

use std::fmt;

use crate::diamond::{BettiVector, DefectVector, HodgeDiamond};
use crate::error::{Error, Result};

type FlagSlot = fn(&mut Flags) -> &mut Option<bool>;

/// Structural flags. `None` means unknown.
///
/// The implication chain is `kaehler => fujiki => ddbar => e1_degenerate`,
/// and `ddbar` additionally forces Hodge symmetry of the diamond. Inference
/// only ever fills unknowns; a clash with an asserted value is a validation
/// error.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Flags {
    pub kaehler: Option<bool>,
    pub fujiki: Option<bool>,
    pub ddbar: Option<bool>,
    pub e1_degenerate: Option<bool>,
}

impl Flags {
    pub const UNKNOWN: Flags = Flags {
        kaehler: None,
        fujiki: None,
        ddbar: None,
        e1_degenerate: None,
    };

    pub const KAEHLER: Flags = Flags {
        kaehler: Some(true),
        fujiki: Some(true),
        ddbar: Some(true),
        e1_degenerate: Some(true),
    };

    /// Flag names and values in canonical (alphabetical) order.
    pub fn named(&self) -> [(&'static str, Option<bool>); 4] {
        [
            ("ddbar", self.ddbar),
            ("e1_degenerate", self.e1_degenerate),
            ("fujiki", self.fujiki),
            ("kaehler", self.kaehler),
        ]
    }

    /// Closes the flags under the implication chain given the diamond and,
    /// when known, the Frölicher defect. Returns every contradiction found.
    pub fn infer(
        &self,
        diamond: &HodgeDiamond,
        defect: Option<&DefectVector>,
    ) -> std::result::Result<Flags, Vec<String>> {
        let mut out = *self;
        let mut problems = Vec::new();

        if let Some(defect) = defect {
            let degenerate = defect.is_zero();
            match out.e1_degenerate {
                Some(asserted) if asserted != degenerate => {
                    let k = defect.first_nonzero().unwrap_or(0);
                    problems.push(if asserted {
                        format!(
                            "flag contradiction: e1_degenerate=true but Betti data gives defect {} at k={k}",
                            defect.get(k as i64)
                        )
                    } else {
                        "flag contradiction: e1_degenerate=false but Betti data has zero defect"
                            .to_string()
                    });
                }
                _ => out.e1_degenerate = Some(degenerate),
            }
        }

        // Forward: truth flows down the chain. Remember which asserted flag
        // forced it so messages name the origin.
        let chain: [(&str, FlagSlot); 4] = [
            ("kaehler", |f| &mut f.kaehler),
            ("fujiki", |f| &mut f.fujiki),
            ("ddbar", |f| &mut f.ddbar),
            ("e1_degenerate", |f| &mut f.e1_degenerate),
        ];
        let mut origin: Option<&str> = None;
        for (name, slot) in chain {
            let value = *slot(&mut out);
            match (origin, value) {
                (Some(src), Some(false)) => {
                    problems.push(format!(
                        "flag contradiction: {src}=true implies {name}=true but {name}=false"
                    ));
                }
                (Some(_), _) => *slot(&mut out) = Some(true),
                (None, Some(true)) => origin = Some(name),
                (None, _) => {}
            }
        }

        if out.ddbar == Some(true) {
            if let Some((p, q)) = diamond.first_hodge_asymmetry() {
                let src = if self.ddbar == Some(true) {
                    "ddbar=true".to_string()
                } else {
                    format!("ddbar (implied by {}=true)", origin.unwrap_or("ddbar"))
                };
                problems.push(format!(
                    "Hodge-symmetry contradiction: {src} requires h[{p}][{q}] = h[{q}][{p}], found {} ≠ {}",
                    diamond.get(p as i64, q as i64),
                    diamond.get(q as i64, p as i64)
                ));
            }
        }

        if !problems.is_empty() {
            return Err(problems);
        }

        // Backward: falsity flows up the chain.
        if !diamond.hodge_symmetric() && out.ddbar.is_none() {
            out.ddbar = Some(false);
        }
        if out.e1_degenerate == Some(false) && out.ddbar.is_none() {
            out.ddbar = Some(false);
        }
        if out.ddbar == Some(false) && out.fujiki.is_none() {
            out.fujiki = Some(false);
        }
        if out.fujiki == Some(false) && out.kaehler.is_none() {
            out.kaehler = Some(false);
        }
        Ok(out)
    }
}

/// Tri-state conjunction: false dominates, then unknown.
pub(crate) fn and3(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

/// Raw ingredients of a model prior to validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelParts {
    pub name: String,
    pub dim: usize,
    pub connected: bool,
    pub diamond: HodgeDiamond,
    pub betti: Option<BettiVector>,
    pub flags: Flags,
    pub provenance: Vec<String>,
}

impl ModelParts {
    pub fn new(name: impl Into<String>, diamond: HodgeDiamond) -> Self {
        ModelParts {
            name: name.into(),
            dim: diamond.dim(),
            connected: true,
            diamond,
            betti: None,
            flags: Flags::UNKNOWN,
            provenance: Vec::new(),
        }
    }

    pub fn betti(mut self, betti: BettiVector) -> Self {
        self.betti = Some(betti);
        self
    }

    pub fn flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn connected(mut self, connected: bool) -> Self {
        self.connected = connected;
        self
    }

    pub fn validate(self) -> Result<ManifoldModel> {
        ManifoldModel::from_parts(self)
    }
}

/// A compact complex manifold described by its invariants.
///
/// Instances are only produced by validation, so every model in circulation
/// satisfies the Frölicher inequality, Poincaré symmetry of its Betti numbers
/// and a contradiction-free flag set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldModel {
    name: String,
    dim: usize,
    connected: bool,
    diamond: HodgeDiamond,
    betti: Option<BettiVector>,
    betti_derived: bool,
    flags: Flags,
    provenance: Vec<String>,
}

impl ManifoldModel {
    /// Connected model with no Betti data and unknown flags.
    pub fn new(name: impl Into<String>, diamond: HodgeDiamond) -> Result<Self> {
        ModelParts::new(name, diamond).validate()
    }

    pub fn from_parts(parts: ModelParts) -> Result<Self> {
        let ModelParts {
            name,
            dim,
            connected,
            diamond,
            betti,
            flags,
            provenance,
        } = parts;
        let mut problems = Vec::new();

        if diamond.dim() != dim {
            problems.push(format!(
                "hodge matrix has dimension {} but dim is {dim}",
                diamond.dim()
            ));
        }
        if let Some(b) = &betti {
            if b.dim() != dim {
                problems.push(format!(
                    "betti vector has {} entries, expected {}",
                    b.as_slice().len(),
                    2 * dim + 1
                ));
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validation {
                name,
                violations: problems,
            });
        }

        let h00 = diamond.get(0, 0);
        if h00 == 0 {
            problems.push("h[0][0] must be ≥ 1 for a non-empty manifold".into());
        } else if connected && h00 != 1 {
            problems.push(format!("connected model requires h[0][0] = 1, found {h00}"));
        }

        let defect = match &betti {
            Some(b) => {
                if b.get(0) != h00 {
                    problems.push(format!(
                        "b[0] = {} must equal h[0][0] = {h00} (number of components)",
                        b.get(0)
                    ));
                }
                let defect = DefectVector::between(&diamond, b)?;
                for (k, &d) in defect.as_slice().iter().enumerate() {
                    if d < 0 {
                        problems.push(format!("Frölicher inequality violated at k={k}"));
                    }
                }
                let top = 2 * dim;
                for k in 0..dim {
                    if b.get(k as i64) != b.get((top - k) as i64) {
                        problems.push(format!(
                            "Poincaré symmetry violated: b[{k}] = {} but b[{}] = {}",
                            b.get(k as i64),
                            top - k,
                            b.get((top - k) as i64)
                        ));
                    }
                }
                Some(defect)
            }
            None => None,
        };

        let flags = match flags.infer(&diamond, defect.as_ref()) {
            Ok(flags) => flags,
            Err(mut flag_problems) => {
                problems.append(&mut flag_problems);
                flags
            }
        };

        if !problems.is_empty() {
            return Err(Error::Validation {
                name,
                violations: problems,
            });
        }

        let (betti, betti_derived) = match betti {
            Some(b) => (Some(b), false),
            None if flags.e1_degenerate == Some(true) => (
                Some(BettiVector::new(diamond.diagonal_sums()).expect("odd length")),
                true,
            ),
            None => (None, false),
        };

        Ok(ManifoldModel {
            name,
            dim,
            connected,
            diamond,
            betti,
            betti_derived,
            flags,
            provenance,
        })
    }

    /// Builds a model without any validation. Only meant for tests that need
    /// to represent data violating the usual invariants.
    #[doc(hidden)]
    pub fn new_unchecked(parts: ModelParts) -> Self {
        ManifoldModel {
            name: parts.name,
            dim: parts.dim,
            connected: parts.connected,
            diamond: parts.diamond,
            betti: parts.betti,
            betti_derived: false,
            flags: parts.flags,
            provenance: parts.provenance,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn connected(&self) -> bool {
        self.connected
    }

    pub fn diamond(&self) -> &HodgeDiamond {
        &self.diamond
    }

    pub fn betti(&self) -> Option<&BettiVector> {
        self.betti.as_ref()
    }

    /// True when the Betti numbers were inferred from `e1_degenerate` rather
    /// than supplied.
    pub fn betti_derived(&self) -> bool {
        self.betti_derived
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    /// Free-form notes about assumptions made while computing this model.
    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    /// `h[p][q]` with out-of-range indices reading as zero.
    pub fn h(&self, p: i64, q: i64) -> u64 {
        self.diamond.get(p, q)
    }

    /// `b[k]` if Betti data is available.
    pub fn b(&self, k: i64) -> Option<u64> {
        self.betti.as_ref().map(|b| b.get(k))
    }

    /// Frölicher defect, when Betti data is available.
    pub fn defect(&self) -> Option<DefectVector> {
        self.betti
            .as_ref()
            .map(|b| DefectVector::between(&self.diamond, b).expect("dimensions checked"))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_provenance(mut self, note: impl Into<String>) -> Self {
        self.provenance.push(note.into());
        self
    }

    /// Equality of dimension-level data: dimension, diamond and Betti
    /// numbers. Names, flags and provenance are ignored.
    pub fn same_invariants(&self, other: &ManifoldModel) -> bool {
        self.dim == other.dim && self.diamond == other.diamond && self.betti == other.betti
    }

    pub fn into_parts(self) -> ModelParts {
        ModelParts {
            name: self.name,
            dim: self.dim,
            connected: self.connected,
            diamond: self.diamond,
            betti: if self.betti_derived { None } else { self.betti },
            flags: self.flags,
            provenance: self.provenance,
        }
    }
}

impl fmt::Display for ManifoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim)
    }
}
