//! Hodge diamonds, Betti vectors and the bigraded arithmetic built on them.
//!
//! Indices outside the valid range read as zero everywhere. Formulas such as
//! `h[p - i][q - i]` therefore never need explicit bounds checks at the call
//! site.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensions `h[p][q]` of the Dolbeault cohomology of an `n`-dimensional
/// manifold, stored row-major with `p` as the row index.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HodgeDiamond {
    n: usize,
    h: Vec<u64>,
}

impl HodgeDiamond {
    /// Builds a diamond from its rows, `rows[p][q] = h^{p,q}`.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::DimensionMismatch(
                "hodge matrix must have at least one row".into(),
            ));
        }
        let n = rows.len() - 1;
        let mut h = Vec::with_capacity(rows.len() * rows.len());
        for (p, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "hodge row {p} has {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
            h.extend_from_slice(row);
        }
        Ok(HodgeDiamond { n, h })
    }

    pub fn zero(n: usize) -> Self {
        HodgeDiamond {
            n,
            h: vec![0; (n + 1) * (n + 1)],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut d = Self::zero(n);
        for p in 0..=n {
            for q in 0..=n {
                d.h[p * (n + 1) + q] = f(p, q);
            }
        }
        d
    }

    /// The diamond of a point: a single 1 at `(0, 0)`.
    pub fn point() -> Self {
        HodgeDiamond { n: 0, h: vec![1] }
    }

    /// Complex dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `h[p][q]`, or 0 when `(p, q)` lies outside `[0, n] x [0, n]`.
    pub fn get(&self, p: i64, q: i64) -> u64 {
        let n = self.n as i64;
        if p < 0 || q < 0 || p > n || q > n {
            0
        } else {
            self.h[p as usize * (self.n + 1) + q as usize]
        }
    }

    pub fn set(&mut self, p: usize, q: usize, value: u64) {
        assert!(p <= self.n && q <= self.n, "({p}, {q}) outside diamond");
        self.h[p * (self.n + 1) + q] = value;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.h.chunks(self.n + 1).map(<[u64]>::to_vec).collect()
    }

    /// Iterates over `(p, q, h[p][q])`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        let width = self.n + 1;
        self.h
            .iter()
            .enumerate()
            .map(move |(idx, &v)| (idx / width, idx % width, v))
    }

    pub fn total(&self) -> u64 {
        self.h.iter().sum()
    }

    /// Re-indexes the diamond by `(p, q) -> (p + i, q + i)` inside a diamond
    /// of dimension `target_dim`.
    ///
    /// # Panics
    ///
    /// If `target_dim < self.dim() + i`, since entries would fall off the
    /// edge.
    pub fn shift(&self, i: usize, target_dim: usize) -> HodgeDiamond {
        assert!(
            target_dim >= self.n + i,
            "shift by {i} of a dimension-{} diamond does not fit in dimension {target_dim}",
            self.n
        );
        let i = i as i64;
        HodgeDiamond::from_fn(target_dim, |p, q| self.get(p as i64 - i, q as i64 - i))
    }

    /// Entrywise sum of two diamonds of the same dimension.
    pub fn direct_sum(&self, other: &HodgeDiamond) -> Result<HodgeDiamond> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "direct sum of diamonds of dimensions {} and {}",
                self.n, other.n
            )));
        }
        Ok(HodgeDiamond {
            n: self.n,
            h: self.h.iter().zip(&other.h).map(|(a, b)| a + b).collect(),
        })
    }

    /// Serre duality `h[p][q] = h[n - p][n - q]`.
    pub fn serre_symmetric(&self) -> bool {
        let n = self.n;
        self.entries()
            .all(|(p, q, v)| v == self.get((n - p) as i64, (n - q) as i64))
    }

    /// Hodge symmetry `h[p][q] = h[q][p]`.
    pub fn hodge_symmetric(&self) -> bool {
        self.first_hodge_asymmetry().is_none()
    }

    /// The first `(p, q)` with `p > q` and `h[p][q] != h[q][p]`.
    pub fn first_hodge_asymmetry(&self) -> Option<(usize, usize)> {
        self.entries()
            .find(|&(p, q, v)| p > q && v != self.get(q as i64, p as i64))
            .map(|(p, q, _)| (p, q))
    }

    /// `chi_p = sum_q (-1)^q h[p][q]` for `p = 0..=n`.
    pub fn euler_p(&self) -> Vec<i64> {
        self.h
            .chunks(self.n + 1)
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(q, &v)| if q % 2 == 0 { v as i64 } else { -(v as i64) })
                    .sum()
            })
            .collect()
    }

    /// `sum_{p+q=k} h[p][q]` for `k = 0..=2n`.
    pub fn diagonal_sums(&self) -> Vec<u64> {
        let mut sums = vec![0; 2 * self.n + 1];
        for (p, q, v) in self.entries() {
            sums[p + q] += v;
        }
        sums
    }

    /// `sum_{p-q=k} h[p][q]` for `k = -n..=n`: the Hochschild homology
    /// dimensions.
    pub fn anti_diagonal_sums(&self) -> HochschildDims {
        let mut dims = vec![0; 2 * self.n + 1];
        for (p, q, v) in self.entries() {
            dims[p + self.n - q] += v;
        }
        HochschildDims { n: self.n, dims }
    }
}

impl fmt::Debug for HodgeDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HodgeDiamond")
            .field("n", &self.n)
            .field("rows", &self.rows())
            .finish()
    }
}

/// Betti numbers `b[0..=2n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiVector {
    n: usize,
    b: Vec<u64>,
}

impl BettiVector {
    pub fn new(b: Vec<u64>) -> Result<Self> {
        if b.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "betti vector must have odd length 2n+1, got {}",
                b.len()
            )));
        }
        Ok(BettiVector {
            n: (b.len() - 1) / 2,
            b,
        })
    }

    pub fn zero(n: usize) -> Self {
        BettiVector {
            n,
            b: vec![0; 2 * n + 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `b[k]`, or 0 outside `[0, 2n]`.
    pub fn get(&self, k: i64) -> u64 {
        if k < 0 || k > 2 * self.n as i64 {
            0
        } else {
            self.b[k as usize]
        }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.b
    }

    /// `sum_k (-1)^k b[k]`.
    pub fn topological_euler(&self) -> i64 {
        self.b
            .iter()
            .enumerate()
            .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    pub fn poincare_symmetric(&self) -> bool {
        let top = 2 * self.n;
        (0..=top).all(|k| self.b[k] == self.b[top - k])
    }
}

/// `d[k] = sum_{p+q=k} h[p][q] - b[k]`. Signed so that data violating the
/// Frölicher inequality can still be represented.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DefectVector {
    n: usize,
    d: Vec<i64>,
}

impl DefectVector {
    pub fn between(diamond: &HodgeDiamond, betti: &BettiVector) -> Result<Self> {
        if diamond.dim() != betti.dim() {
            return Err(Error::DimensionMismatch(format!(
                "diamond of dimension {} against betti vector of dimension {}",
                diamond.dim(),
                betti.dim()
            )));
        }
        let d = diamond
            .diagonal_sums()
            .into_iter()
            .enumerate()
            .map(|(k, s)| s as i64 - betti.get(k as i64) as i64)
            .collect();
        Ok(DefectVector {
            n: diamond.dim(),
            d,
        })
    }

    pub fn from_vec(d: Vec<i64>) -> Result<Self> {
        if d.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "defect vector must have odd length 2n+1, got {}",
                d.len()
            )));
        }
        Ok(DefectVector {
            n: (d.len() - 1) / 2,
            d,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `d[k]`, or 0 outside `[0, 2n]`.
    pub fn get(&self, k: i64) -> i64 {
        if k < 0 || k > 2 * self.n as i64 {
            0
        } else {
            self.d[k as usize]
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(|&v| v == 0)
    }

    /// Least `k` with a non-zero defect.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.d.iter().position(|&v| v != 0)
    }
}

/// Hochschild homology dimensions `HH_k` for `k = -n..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HochschildDims {
    n: usize,
    dims: Vec<u64>,
}

impl HochschildDims {
    pub fn zero(n: usize) -> Self {
        HochschildDims {
            n,
            dims: vec![0; 2 * n + 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `HH_k`, zero for `|k| > n`.
    pub fn get(&self, k: i64) -> u64 {
        let n = self.n as i64;
        if k < -n || k > n {
            0
        } else {
            self.dims[(k + n) as usize]
        }
    }

    /// Pairs `(k, HH_k)` in ascending `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        let n = self.n as i64;
        self.dims
            .iter()
            .enumerate()
            .map(move |(idx, &v)| (idx as i64 - n, v))
    }

    /// Re-centers onto `[-target, target]`.
    pub fn widen(&self, target: usize) -> HochschildDims {
        assert!(target >= self.n);
        let t = target as i64;
        HochschildDims {
            n: target,
            dims: (-t..=t).map(|k| self.get(k)).collect(),
        }
    }

    /// `self + factor * other`, aligned on `k`.
    pub fn add_scaled(&self, other: &HochschildDims, factor: u64) -> HochschildDims {
        let n = self.n.max(other.n);
        let t = n as i64;
        HochschildDims {
            n,
            dims: (-t..=t)
                .map(|k| self.get(k) + factor * other.get(k))
                .collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }
}
