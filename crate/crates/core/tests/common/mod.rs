#![allow(dead_code)]

use hodge_core::model::ModelParts;
use hodge_core::{BettiVector, HodgeDiamond, ManifoldModel};
use proptest::prelude::*;

/// Connected diamond of dimension `n` with entries in `[0, max]`.
pub fn diamond(n: usize, max: u64) -> impl Strategy<Value = HodgeDiamond> {
    prop::collection::vec(0..=max, (n + 1) * (n + 1)).prop_map(move |mut h| {
        h[0] = 1;
        let rows: Vec<Vec<u64>> = h.chunks(n + 1).map(<[u64]>::to_vec).collect();
        HodgeDiamond::from_rows(&rows).unwrap()
    })
}

/// Diamond satisfying Serre duality, and optionally Hodge symmetry, with
/// `h[0][0] = h[n][n] = 1`.
pub fn symmetric_diamond(n: usize, max: u64, hodge: bool) -> impl Strategy<Value = HodgeDiamond> {
    prop::collection::vec(0..=max, (n + 1) * (n + 1)).prop_map(move |raw| {
        let mut d = HodgeDiamond::zero(n);
        for p in 0..=n {
            for q in 0..=n {
                // Smallest representative of the orbit under the symmetries.
                let mut orbit = vec![(p, q), (n - p, n - q)];
                if hodge {
                    orbit.push((q, p));
                    orbit.push((n - q, n - p));
                }
                let (rp, rq) = *orbit.iter().min().unwrap();
                d.set(p, q, raw[rp * (n + 1) + rq]);
            }
        }
        d.set(0, 0, 1);
        d.set(n, n, 1);
        d
    })
}

/// Betti numbers `rowsum_k - defect_k` with a Poincaré-symmetric defect
/// bounded by the row sums and vanishing at `k = 0, 2n`. `zero` forces a
/// degenerate model.
pub fn with_planted_defect(
    name: &'static str,
    d: HodgeDiamond,
    seeds: Vec<u64>,
    zero: bool,
) -> ManifoldModel {
    let n = d.dim();
    let sums = d.diagonal_sums();
    let mut defect = vec![0u64; 2 * n + 1];
    for k in 1..=n {
        let mirror = 2 * n - k;
        let cap = sums[k].min(sums[mirror]);
        let v = if zero || cap == 0 {
            0
        } else {
            seeds[k % seeds.len()] % (cap + 1)
        };
        defect[k] = v;
        defect[mirror] = v;
    }
    let betti = sums.iter().zip(&defect).map(|(s, d)| s - d).collect();
    ModelParts::new(name, d)
        .betti(BettiVector::new(betti).unwrap())
        .validate()
        .unwrap()
}

/// Blow-up diamond by listing basis elements: every class of `X`, and
/// `t^i * c` for each class `c` of `Z` of type `(a, b)`, landing in type
/// `(a + i, b + i)`, for `1 <= i < r`.
pub fn enumerate_blow_up(x: &HodgeDiamond, z: &HodgeDiamond, r: usize) -> Vec<Vec<u64>> {
    let n = x.dim();
    let mut basis: Vec<(usize, usize)> = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            for _ in 0..x.get(p as i64, q as i64) {
                basis.push((p, q));
            }
        }
    }
    for a in 0..=z.dim() {
        for b in 0..=z.dim() {
            for _ in 0..z.get(a as i64, b as i64) {
                for i in 1..r {
                    basis.push((a + i, b + i));
                }
            }
        }
    }
    let mut rows = vec![vec![0u64; n + 1]; n + 1];
    for (p, q) in basis {
        rows[p][q] += 1;
    }
    rows
}

/// De Rham analogue of [`enumerate_blow_up`]: `t^l * c` shifts degree by
/// `2l`.
pub fn enumerate_betti_blow_up(bx: &[u64], bz: &[u64], r: usize) -> Vec<u64> {
    let mut out = bx.to_vec();
    for (k, &count) in bz.iter().enumerate() {
        for l in 1..r {
            out[k + 2 * l] += count;
        }
    }
    out
}
