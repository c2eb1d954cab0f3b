//! Blow-ups along smooth centers and projective bundles.
//!
//! For a center `Z` of codimension `r >= 2` in `X`,
//!
//! ```text
//! h^{p,q}(Bl_Z X) = h^{p,q}(X) + sum_{i=1}^{r-1} h^{p-i,q-i}(Z)
//! b_k(Bl_Z X)     = b_k(X)     + sum_{l=1}^{r-1} b_{k-2l}(Z)
//! ```
//!
//! and the exceptional divisor is the projectivized normal bundle, whose
//! diamond is `sum_{i=0}^{r-1} h^{p-i,q-i}(Z)`. A disconnected center is
//! handled by summing the contributions of its components.

use crate::catalog;
use crate::diamond::{BettiVector, HochschildDims, HodgeDiamond};
use crate::error::{Error, Result};
use crate::model::{and3, Flags, ManifoldModel, ModelParts};

/// Note attached to every blow-up output.
pub const EMBEDDING_ASSUMPTION: &str =
    "center embedding assumed: the invariants do not show whether the center embeds in the ambient manifold";

/// An ambient manifold together with a (possibly disconnected) center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpSpec {
    ambient: ManifoldModel,
    centers: Vec<ManifoldModel>,
    codim: usize,
}

impl BlowUpSpec {
    pub fn new(ambient: ManifoldModel, center: ManifoldModel) -> Result<Self> {
        Self::with_centers(ambient, vec![center])
    }

    /// A center given as a list of components, all of the same dimension.
    pub fn with_centers(ambient: ManifoldModel, centers: Vec<ManifoldModel>) -> Result<Self> {
        let first = centers
            .first()
            .ok_or_else(|| Error::DimensionMismatch("blow-up needs at least one center".into()))?;
        let center_dim = first.dim();
        if let Some(odd) = centers.iter().find(|c| c.dim() != center_dim) {
            return Err(Error::DimensionMismatch(format!(
                "center components must share a dimension: `{}` has {} but `{}` has {}",
                first.name(),
                center_dim,
                odd.name(),
                odd.dim()
            )));
        }
        let codim = ambient.dim() as i64 - center_dim as i64;
        if codim < 2 {
            return Err(Error::CodimTooSmall { codim });
        }
        Ok(BlowUpSpec {
            ambient,
            centers,
            codim: codim as usize,
        })
    }

    pub fn ambient(&self) -> &ManifoldModel {
        &self.ambient
    }

    pub fn centers(&self) -> &[ManifoldModel] {
        &self.centers
    }

    /// Complex codimension `r` of the center.
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn center_dim(&self) -> usize {
        self.ambient.dim() - self.codim
    }

    fn center_label(&self) -> String {
        self.centers
            .iter()
            .map(ManifoldModel::name)
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Betti vectors of all center components, if every one has them.
    fn center_betti(&self) -> Option<Vec<&BettiVector>> {
        self.centers.iter().map(ManifoldModel::betti).collect()
    }

    fn center_flag(&self, get: impl Fn(&Flags) -> Option<bool>) -> Option<bool> {
        self.centers
            .iter()
            .map(|c| get(&c.flags()))
            .fold(Some(true), and3)
    }
}

/// Policy knobs for flag propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlowUpOptions {
    /// Carry `kaehler = true` from the ambient manifold to the blow-up.
    /// Only a positive value is ever carried over.
    pub propagate_kaehler: bool,
}

impl Default for BlowUpOptions {
    fn default() -> Self {
        BlowUpOptions {
            propagate_kaehler: true,
        }
    }
}

/// Diamond of the projectivization of a rank-`rank` bundle over `base`.
///
/// # Panics
///
/// If `rank == 0`.
pub fn projective_bundle(base: &ManifoldModel, rank: usize) -> HodgeDiamond {
    projective_bundle_diamond(base.diamond(), rank)
}

fn projective_bundle_diamond(base: &HodgeDiamond, rank: usize) -> HodgeDiamond {
    assert!(rank >= 1, "projective bundle needs rank ≥ 1");
    let dim = base.dim() + rank - 1;
    HodgeDiamond::from_fn(dim, |p, q| {
        (0..rank as i64)
            .map(|i| base.get(p as i64 - i, q as i64 - i))
            .sum()
    })
}

fn projective_bundle_betti(base: &BettiVector, rank: usize) -> BettiVector {
    let dim = base.dim() + rank - 1;
    let b = (0..=2 * dim as i64)
        .map(|k| (0..rank as i64).map(|i| base.get(k - 2 * i)).sum())
        .collect();
    BettiVector::new(b).expect("odd length")
}

/// The exceptional divisor `E = P(N_{Z/X})`, a `CP^{r-1}`-bundle over the
/// center.
pub fn exceptional_divisor(spec: &BlowUpSpec) -> Result<ManifoldModel> {
    let r = spec.codim();
    let dim = spec.ambient.dim() - 1;
    let mut diamond = HodgeDiamond::zero(dim);
    for center in spec.centers() {
        diamond = diamond.direct_sum(&projective_bundle(center, r))?;
    }
    let betti = spec.center_betti().map(|all| {
        all.into_iter()
            .map(|b| projective_bundle_betti(b, r))
            .fold(BettiVector::zero(dim), |acc, b| add_betti(&acc, &b))
    });
    let flags = Flags {
        kaehler: spec.center_flag(|f| f.kaehler).filter(|&k| k),
        fujiki: spec.center_flag(|f| f.fujiki),
        ddbar: spec.center_flag(|f| f.ddbar),
        e1_degenerate: spec.center_flag(|f| f.e1_degenerate),
    };
    let connected = spec.centers.len() == 1 && spec.centers[0].connected();
    ManifoldModel::from_parts(ModelParts {
        name: format!("E({} in {})", spec.center_label(), spec.ambient.name()),
        dim,
        connected,
        diamond,
        betti,
        flags,
        provenance: Vec::new(),
    })
}

fn add_betti(a: &BettiVector, b: &BettiVector) -> BettiVector {
    let b = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x + y)
        .collect();
    BettiVector::new(b).expect("odd length")
}

/// Dolbeault blow-up with default flag policy.
pub fn blow_up(spec: &BlowUpSpec) -> Result<ManifoldModel> {
    blow_up_with(spec, &BlowUpOptions::default())
}

pub fn blow_up_with(spec: &BlowUpSpec, options: &BlowUpOptions) -> Result<ManifoldModel> {
    let x = spec.ambient();
    let n = x.dim();
    let r = spec.codim();

    let mut diamond = x.diamond().clone();
    for center in spec.centers() {
        for i in 1..r {
            diamond = diamond.direct_sum(&center.diamond().shift(i, n))?;
        }
    }

    let betti = match (x.betti(), spec.center_betti()) {
        (Some(bx), Some(bzs)) => {
            let mut acc = bx.clone();
            for bz in bzs {
                let with_center = de_rham_blow_up(bx, bz, r)?;
                acc = add_betti(&acc, &subtract_betti(&with_center, bx));
            }
            Some(acc)
        }
        _ => None,
    };

    let ambient = x.flags();
    let flags = Flags {
        kaehler: (options.propagate_kaehler && ambient.kaehler == Some(true)).then_some(true),
        fujiki: ambient.fujiki,
        ddbar: and3(ambient.ddbar, spec.center_flag(|f| f.ddbar)),
        e1_degenerate: and3(ambient.e1_degenerate, spec.center_flag(|f| f.e1_degenerate)),
    };

    ManifoldModel::from_parts(ModelParts {
        name: format!("Bl({}, {})", x.name(), spec.center_label()),
        dim: n,
        connected: x.connected(),
        diamond,
        betti,
        flags,
        provenance: vec![EMBEDDING_ASSUMPTION.to_string()],
    })
}

fn subtract_betti(a: &BettiVector, b: &BettiVector) -> BettiVector {
    let v = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x - y)
        .collect();
    BettiVector::new(v).expect("odd length")
}

/// `b_k(X~) = b_k(X) + sum_{l=1}^{r-1} b_{k-2l}(Z)`.
pub fn de_rham_blow_up(bx: &BettiVector, bz: &BettiVector, r: usize) -> Result<BettiVector> {
    if r < 2 {
        return Err(Error::CodimTooSmall { codim: r as i64 });
    }
    if bx.dim() != bz.dim() + r {
        return Err(Error::DimensionMismatch(format!(
            "betti vectors of dimensions {} and {} do not differ by codimension {r}",
            bx.dim(),
            bz.dim()
        )));
    }
    let b = (0..=2 * bx.dim() as i64)
        .map(|k| bx.get(k) + (1..r as i64).map(|l| bz.get(k - 2 * l)).sum::<u64>())
        .collect();
    BettiVector::new(b)
}

/// Both sides of `HH_k(X~) = HH_k(X) + (r-1) HH_k(Z)`, each aligned on
/// `k = -n..=n`. The first list is computed from the blown-up diamond, the
/// second from the inputs.
pub fn hochschild_blow_up(spec: &BlowUpSpec) -> Result<(HochschildDims, HochschildDims)> {
    let n = spec.ambient().dim();
    let left = blow_up(spec)?.diamond().anti_diagonal_sums();
    let factor = (spec.codim() - 1) as u64;
    let right = spec
        .centers()
        .iter()
        .fold(spec.ambient().diamond().anti_diagonal_sums(), |acc, z| {
            acc.add_scaled(&z.diamond().anti_diagonal_sums(), factor)
        })
        .widen(n);
    Ok((left, right))
}

/// Blow-up at a single point: `h^{p,p}` grows by one for `0 < p < n`... and
/// also at `p = n`'s neighbour rows, i.e. exactly when `p = q > 0` and
/// `p < n`.
pub fn point_blow_up(x: &ManifoldModel) -> Result<ManifoldModel> {
    if x.dim() < 2 {
        return Err(Error::CodimTooSmall {
            codim: x.dim() as i64,
        });
    }
    blow_up(&BlowUpSpec::new(x.clone(), catalog::point())?)
}
