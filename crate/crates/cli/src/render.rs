//! Text rendering of Hodge diamonds.
//!
//! Row `k` (top row `k = 0`) lists `h[p][q]` with `p + q = k`, `p`
//! decreasing from left to right, entries separated by one space and
//! centered against the widest row. Trailing spaces are dropped.

use hodge_core::HodgeDiamond;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedDiamond {
    pub lines: Vec<String>,
}

impl RenderedDiamond {
    pub fn new(d: &HodgeDiamond) -> Self {
        let n = d.dim();
        let rows: Vec<String> = (0..=2 * n)
            .map(|k| {
                let hi = k.min(n);
                let lo = k.saturating_sub(n);
                (lo..=hi)
                    .rev()
                    .map(|p| d.get(p as i64, (k - p) as i64).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let width = rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
        let lines = rows
            .into_iter()
            .map(|r| {
                let pad = (width - r.chars().count()) / 2;
                format!("{}{r}", " ".repeat(pad))
            })
            .collect();
        RenderedDiamond { lines }
    }

    /// Recovers the diamond from its rendering.
    pub fn parse(lines: &[String]) -> Option<HodgeDiamond> {
        if lines.len().is_multiple_of(2) {
            return None;
        }
        let n = (lines.len() - 1) / 2;
        let mut d = HodgeDiamond::zero(n);
        for (k, line) in lines.iter().enumerate() {
            let values: Vec<u64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .ok()?;
            let hi = k.min(n);
            let lo = k.saturating_sub(n);
            if values.len() != hi - lo + 1 {
                return None;
            }
            for (p, v) in (lo..=hi).rev().zip(values) {
                d.set(p, k - p, v);
            }
        }
        Some(d)
    }

    pub fn to_text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}
