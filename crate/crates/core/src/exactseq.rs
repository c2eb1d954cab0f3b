//! Dimension arithmetic for finite exact sequences.
//!
//! A sequence `0 -> V_0 -> V_1 -> ... -> V_m -> 0` is exact only if
//! `sum_i (-1)^i dim V_i = 0`. Sequences here are always read with zero
//! flanks; callers window longer sequences at positions known to vanish.

use std::fmt;
use std::str::FromStr;

use crate::blowup::{blow_up, exceptional_divisor, BlowUpSpec};
use crate::error::{Error, Result};
use crate::model::ManifoldModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqEntry {
    Known(u64),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactSequenceDims {
    entries: Vec<SeqEntry>,
}

impl ExactSequenceDims {
    pub fn new(entries: Vec<SeqEntry>) -> Self {
        ExactSequenceDims { entries }
    }

    pub fn known(dims: &[u64]) -> Self {
        ExactSequenceDims {
            entries: dims.iter().copied().map(SeqEntry::Known).collect(),
        }
    }

    pub fn entries(&self) -> &[SeqEntry] {
        &self.entries
    }

    pub fn push(&mut self, entry: SeqEntry) {
        self.entries.push(entry);
    }

    fn unknown_positions(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| **e == SeqEntry::Unknown)
            .map(|(i, _)| i)
            .collect()
    }

    /// Alternating sum of the known entries.
    fn partial_sum(&self) -> i128 {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| match e {
                SeqEntry::Known(v) if i % 2 == 0 => *v as i128,
                SeqEntry::Known(v) => -(*v as i128),
                SeqEntry::Unknown => 0,
            })
            .sum()
    }

    /// `sum_i (-1)^i entries[i] == 0`.
    pub fn alternating_sum_check(&self) -> Result<bool> {
        if let Some(&i) = self.unknown_positions().first() {
            return Err(Error::ExactSequence(format!(
                "entry {i} is unknown; the alternating sum needs every dimension"
            )));
        }
        Ok(self.partial_sum() == 0)
    }

    /// The value of the single unknown entry that makes the alternating sum
    /// vanish.
    pub fn solve_unknown(&self) -> Result<u64> {
        let unknowns = self.unknown_positions();
        let pos = match unknowns.as_slice() {
            [pos] => *pos,
            [] => return Err(Error::ExactSequence("no unknown entry to solve for".into())),
            _ => {
                return Err(Error::ExactSequence(format!(
                    "{} unknown entries; exactly one is solvable",
                    unknowns.len()
                )))
            }
        };
        let rest = self.partial_sum();
        let value = if pos % 2 == 0 { -rest } else { rest };
        u64::try_from(value).map_err(|_| {
            Error::ExactSequence(format!(
                "entry {pos} would have to be {value}; the known dimensions are inconsistent"
            ))
        })
    }

    /// Copy with the single unknown replaced by `value`.
    pub fn completed(&self, value: u64) -> Self {
        ExactSequenceDims {
            entries: self
                .entries
                .iter()
                .map(|e| match e {
                    SeqEntry::Unknown => SeqEntry::Known(value),
                    known => *known,
                })
                .collect(),
        }
    }
}

impl fmt::Display for ExactSequenceDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| match e {
                SeqEntry::Known(v) => v.to_string(),
                SeqEntry::Unknown => "?".into(),
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Parses `"1, ?, 3"` style input; parentheses are optional.
impl FromStr for ExactSequenceDims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(ExactSequenceDims::default());
        }
        inner
            .split(',')
            .map(|tok| match tok.trim() {
                "?" => Ok(SeqEntry::Unknown),
                t => t.parse().map(SeqEntry::Known).map_err(|_| {
                    Error::ExactSequence(format!("`{t}` is neither a dimension nor `?`"))
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(ExactSequenceDims::new)
    }
}

/// `dim H^{p,q}(M, N)` where it is forced, `None` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeTable {
    n: usize,
    cells: Vec<Option<u64>>,
}

impl RelativeTable {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> Option<u64> {
        if p > self.n || q > self.n {
            return None;
        }
        self.cells[p * (self.n + 1) + q]
    }

    pub fn determined(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }
}

/// Relative Dolbeault dimensions in the range where the restriction to `sub`
/// vanishes for degree reasons: if `p > dim N` or `q > dim N` then
/// `H^{p,q}(M, N) = H^{p,q}(M)`.
pub fn relative_dims_trivial_range(
    m: &ManifoldModel,
    sub: &ManifoldModel,
) -> Result<RelativeTable> {
    if sub.dim() >= m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "submanifold `{}` (dim {}) must have smaller dimension than `{}` (dim {})",
            sub.name(),
            sub.dim(),
            m.name(),
            m.dim()
        )));
    }
    let n = m.dim();
    let s = sub.dim();
    let mut cells = Vec::with_capacity((n + 1) * (n + 1));
    for p in 0..=n {
        for q in 0..=n {
            cells.push((p > s || q > s).then(|| m.h(p as i64, q as i64)));
        }
    }
    Ok(RelativeTable { n, cells })
}

/// Row `p` of the long exact sequence of a pair `(M, N)`,
///
/// ```text
/// 0 -> R^{p,0} -> H^{p,0}(M) -> H^{p,0}(N) -> R^{p,1} -> ... -> H^{p,n}(N) -> 0
/// ```
///
/// with relative terms supplied by `relative`.
pub fn pair_sequence_row(
    m: &ManifoldModel,
    sub: &ManifoldModel,
    p: usize,
    relative: impl Fn(usize) -> SeqEntry,
) -> ExactSequenceDims {
    let mut seq = ExactSequenceDims::known(&[0]);
    for q in 0..=m.dim() {
        seq.push(relative(q));
        seq.push(SeqEntry::Known(m.h(p as i64, q as i64)));
        seq.push(SeqEntry::Known(sub.h(p as i64, q as i64)));
    }
    seq.push(SeqEntry::Known(0));
    seq
}

/// One solved window of the blow-up comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvedWindow {
    pub label: String,
    pub sequence: ExactSequenceDims,
    pub solved: u64,
    /// Alternating sum of the completed sequence vanished.
    pub exact: bool,
    /// A value the solution was expected to match, when one is known.
    pub expected: Option<u64>,
}

impl SolvedWindow {
    fn solve(label: String, sequence: ExactSequenceDims, expected: Option<u64>) -> Result<Self> {
        let solved = sequence.solve_unknown()?;
        let exact = sequence.completed(solved).alternating_sum_check()?;
        Ok(SolvedWindow {
            label,
            sequence,
            solved,
            exact,
            expected,
        })
    }

    pub fn ok(&self) -> bool {
        self.exact && self.expected.is_none_or(|e| e == self.solved)
    }
}

/// Dimension-level consistency of a blow-up with the two long exact
/// sequences of the pairs `(X, Z)` and `(X~, E)`, whose relative terms are
/// isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpSplice {
    pub windows: Vec<SolvedWindow>,
    /// Center-row windows `0 -> H(Z) -> H(E) -> C -> 0` with `C` taken from
    /// the ambient row; `(p, q, exact)`.
    pub center_rows: Vec<(usize, usize, bool)>,
    /// Relative dimensions forced on both pairs agree.
    pub relative_tables_agree: bool,
}

impl BlowUpSplice {
    pub fn consistent(&self) -> bool {
        self.relative_tables_agree
            && self.windows.iter().all(SolvedWindow::ok)
            && self.center_rows.iter().all(|&(_, _, exact)| exact)
    }
}

/// Assembles and solves the windows relating `X`, `Z`, `X~` and `E`:
///
/// - `0 -> H^{p,q}(X) -> H^{p,q}(X~) -> C -> 0`, solved for the cokernel `C`,
///   which must also close `0 -> H^{p,q}(Z) -> H^{p,q}(E) -> C -> 0`;
/// - `0 -> H^{p,q}(X) -> ? -> H^{p,q}(E) -> 0`, whose middle term must be
///   `h^{p,q}(X~) + h^{p,q}(Z)`;
/// - for rows `p > dim Z`, the full row of the `(X~, E)` sequence with the
///   relative terms transported from `(X, Z)` and the first one solved.
pub fn splice_blow_up(spec: &BlowUpSpec) -> Result<BlowUpSplice> {
    let x = spec.ambient();
    let xt = blow_up(spec)?;
    let e = exceptional_divisor(spec)?;
    let n = x.dim() as i64;
    let hz = |p: i64, q: i64| -> u64 { spec.centers().iter().map(|z| z.h(p, q)).sum() };

    let mut windows = Vec::new();
    let mut center_rows = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            let coker = SolvedWindow::solve(
                format!("coker H^{{{p},{q}}}(X) -> H^{{{p},{q}}}(X~)"),
                ExactSequenceDims::new(vec![
                    SeqEntry::Known(0),
                    SeqEntry::Known(x.h(p, q)),
                    SeqEntry::Known(xt.h(p, q)),
                    SeqEntry::Unknown,
                    SeqEntry::Known(0),
                ]),
                None,
            )?;
            let center_row = ExactSequenceDims::known(&[0, hz(p, q), e.h(p, q), coker.solved, 0]);
            center_rows.push((p as usize, q as usize, center_row.alternating_sum_check()?));
            windows.push(coker);

            windows.push(SolvedWindow::solve(
                format!("middle of 0 -> H^{{{p},{q}}}(X) -> ? -> H^{{{p},{q}}}(E) -> 0"),
                ExactSequenceDims::new(vec![
                    SeqEntry::Known(0),
                    SeqEntry::Known(x.h(p, q)),
                    SeqEntry::Unknown,
                    SeqEntry::Known(e.h(p, q)),
                    SeqEntry::Known(0),
                ]),
                Some(xt.h(p, q) + hz(p, q)),
            )?);
        }
    }

    // Relative terms of (X, Z) are known for p > dim Z; transport them.
    let center_dim = spec.center_dim();
    let center_model = spec.centers()[0].clone();
    let rel_xz = relative_dims_trivial_range(x, &center_model)?;
    for p in (center_dim + 1)..=x.dim() {
        let seq = pair_sequence_row(&xt, &e, p, |q| {
            if q == 0 {
                SeqEntry::Unknown
            } else {
                SeqEntry::Known(rel_xz.get(p, q).expect("p > dim Z"))
            }
        });
        windows.push(SolvedWindow::solve(
            format!("row p={p} of the (X~, E) sequence"),
            seq,
            rel_xz.get(p, 0),
        )?);
    }

    let rel_xte = relative_dims_trivial_range(&xt, &e)?;
    let relative_tables_agree = (0..=x.dim()).all(|p| {
        (0..=x.dim()).all(|q| match (rel_xz.get(p, q), rel_xte.get(p, q)) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        })
    });

    Ok(BlowUpSplice {
        windows,
        center_rows,
        relative_tables_agree,
    })
}
