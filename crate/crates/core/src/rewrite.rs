//! Rewrites of a rank-one presentation that keep the generated language:
//! merging consecutive stages, shifting a constant spacer value out of the
//! rows, and reading a row as runs of `B_n` copies.

use std::sync::Arc;

use crate::complexity::language_sample;
use crate::construction::{RankOneSpec, SpacerRow, MAX_ROW_LEN};
use crate::error::{Error, Result};
use crate::factor_index::FactorIndex;
use crate::word::Word;

/// Stages checked eagerly by rewrites whose precondition covers a tail.
pub const EAGER_WINDOW: usize = 6;

fn checked_len(factors: impl IntoIterator<Item = usize>) -> Result<usize> {
    let mut len: usize = 1;
    for f in factors {
        len = len
            .checked_mul(f)
            .filter(|&l| l <= MAX_ROW_LEN)
            .ok_or_else(|| Error::capacity(num_bigint::BigUint::from(len) * f, MAX_ROW_LEN as u64))?;
    }
    Ok(len)
}

/// Stages `N` and `N + 1` fused into one: `B~_n = B_n` for `n <= N` and
/// `B~_n = B_{n+1}` above.
pub fn merge_stage(spec: &RankOneSpec, stage: usize) -> Result<RankOneSpec> {
    if stage == 0 {
        return Err(Error::InvalidParameter("stages are indexed from 1".into()));
    }
    // fail early on undefined stages
    merged_pair_row(spec, stage)?;
    let base = Arc::new(spec.clone());
    Ok(RankOneSpec::custom(
        format!("merge_stage({stage}) of {}", spec.family()),
        move |n| match n.cmp(&stage) {
            std::cmp::Ordering::Less => base.row(n),
            std::cmp::Ordering::Equal => merged_pair_row(&base, stage),
            std::cmp::Ordering::Greater => base.row(n + 1),
        },
    ))
}

fn merged_pair_row(spec: &RankOneSpec, stage: usize) -> Result<SpacerRow> {
    let lower = spec.row(stage)?;
    let upper = spec.row(stage + 1)?;
    let (r, r_up) = (lower.cuts(), upper.cuts());
    let mut s = Vec::with_capacity(checked_len([r + 1, r_up + 1])?);
    for a in 0..=r_up {
        s.extend_from_slice(lower.interior());
        s.push(lower.last() + upper.get(a));
    }
    SpacerRow::new(s)
}

/// Block boundaries `1 = n_1 < n_2 < ...`; past the last listed point the
/// schedule continues in steps of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeSchedule {
    points: Vec<usize>,
}

impl MergeSchedule {
    pub fn new(points: Vec<usize>) -> Result<Self> {
        if points.first() != Some(&1) {
            return Err(Error::InvalidParameter("a merge schedule starts at 1".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "merge schedule must be strictly increasing".into(),
            ));
        }
        Ok(MergeSchedule { points })
    }

    pub fn identity() -> Self {
        MergeSchedule { points: vec![1] }
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// `n_t` for `t >= 1`.
    pub fn point(&self, t: usize) -> usize {
        assert!(t >= 1);
        match self.points.get(t - 1) {
            Some(&p) => p,
            None => self.points.last().expect("nonempty") + (t - self.points.len()),
        }
    }

    /// Original stages fused into merged stage `t`.
    pub fn block(&self, t: usize) -> std::ops::Range<usize> {
        self.point(t)..self.point(t + 1)
    }
}

/// Merged stage `t` fuses stages `n_t .. n_{t+1}` so that `B~_t = B_{n_t}`.
pub fn merge_stages(spec: &RankOneSpec, sched: &MergeSchedule) -> Result<RankOneSpec> {
    for t in 1..=sched.points().len() {
        block_row(spec, sched.block(t))?;
    }
    let base = Arc::new(spec.clone());
    let sched = sched.clone();
    Ok(RankOneSpec::custom(
        format!("merge_stages({:?}) of {}", sched.points(), spec.family()),
        move |t| block_row(&base, sched.block(t)),
    ))
}

/// Mixed-radix form: position `i_0 + i_1 (r_{n_t} + 1) + ...` carries
/// `s_{n_t, i_0}` plus `s_{n_t + j, i_j}` for each `j` whose lower digits
/// are all maximal.
fn block_row(spec: &RankOneSpec, block: std::ops::Range<usize>) -> Result<SpacerRow> {
    let rows = block.map(|n| spec.row(n)).collect::<Result<Vec<_>>>()?;
    let len = checked_len(rows.iter().map(SpacerRow::subcolumns))?;
    let mut s = Vec::with_capacity(len);
    let mut digits = vec![0usize; rows.len()];
    for _ in 0..len {
        let mut value = rows[0].get(digits[0]);
        for j in 1..rows.len() {
            if digits[j - 1] != rows[j - 1].cuts() {
                break;
            }
            value += rows[j].get(digits[j]);
        }
        s.push(value);
        for (j, d) in digits.iter_mut().enumerate() {
            *d += 1;
            if *d <= rows[j].cuts() {
                break;
            }
            *d = 0;
        }
    }
    SpacerRow::new(s)
}

fn check_two_valued(row: &SpacerRow, n: usize, c: u64, d: u64) -> Result<()> {
    if let Some(i) = row.interior().iter().position(|&s| s != c && s != d) {
        return Err(Error::precondition(
            n,
            Some(i),
            format!("s_{{{n},{i}}} = {} is neither {c} nor {d}", row.get(i)),
        ));
    }
    if row.last() != 0 {
        return Err(Error::precondition(
            n,
            Some(row.cuts()),
            format!(
                "s_{{{n},r}} = {} is not 0; normalize the final spacers first (Danilenko)",
                row.last()
            ),
        ));
    }
    Ok(())
}

/// Moves the constant `c` out of every interior spacer from stage `N` on, so
/// that `B~_n = B_n 1^c` for `n > N`. The precondition is checked eagerly on
/// a window of stages and again whenever a later row is requested.
pub fn shift_constant(spec: &RankOneSpec, stage: usize, c: u64, d: u64) -> Result<RankOneSpec> {
    if stage == 0 {
        return Err(Error::InvalidParameter("stages are indexed from 1".into()));
    }
    if c >= d {
        return Err(Error::InvalidParameter(format!("need c < d, got c={c}, d={d}")));
    }
    for n in stage..stage + EAGER_WINDOW {
        check_two_valued(&spec.row(n)?, n, c, d)?;
    }
    let base = Arc::new(spec.clone());
    Ok(RankOneSpec::custom(
        format!("shift_constant(N={stage}, c={c}, d={d}) of {}", spec.family()),
        move |n| {
            let row = base.row(n)?;
            if n < stage {
                return Ok(row);
            }
            check_two_valued(&row, n, c, d)?;
            let mut s = row.into_spacers();
            let last = s.len() - 1;
            if n == stage {
                s[last] = c;
            } else {
                for x in &mut s[..last] {
                    *x -= c;
                }
            }
            SpacerRow::new(s)
        },
    ))
}

/// A schedule whose merged stages up to `horizon` all have nonconstant
/// interior spacers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedSchedule {
    pub schedule: MergeSchedule,
    /// Number of merged stages with the property.
    pub certified_stages: usize,
    /// Original stages covered by those merged stages: `1..=horizon`.
    pub horizon: usize,
}

/// Greedy left-to-right blocks: each block grows until the interior spacer
/// values of its stages take at least two values. A merged row's interior
/// values are exactly the union of its stages' interior values, and its last
/// entry is the sum of the stages' last entries, so rows ending in 0 stay
/// that way.
pub fn nonconstant_schedule(spec: &RankOneSpec, horizon: usize) -> Result<CertifiedSchedule> {
    if horizon == 0 {
        return Err(Error::InvalidParameter("need horizon >= 1".into()));
    }
    let mut points = vec![1];
    // value shared by every interior spacer of the open block
    let mut pending: Option<u64> = None;
    for n in 1..=horizon {
        let row = spec.row(n)?;
        if row.last() != 0 {
            return Err(Error::precondition(
                n,
                Some(row.cuts()),
                "final spacer is not 0; normalize the final spacers first (Danilenko)",
            ));
        }
        let interior = row.interior();
        let first = pending.unwrap_or(interior[0]);
        if interior.iter().any(|&s| s != first) {
            points.push(n + 1);
            pending = None;
        } else {
            pending = Some(first);
        }
    }
    let certified_stages = points.len() - 1;
    if certified_stages == 0 {
        return Err(Error::precondition(
            horizon,
            None,
            format!("every interior spacer in stages 1..={horizon} is equal: an odometer on this window"),
        ));
    }
    let horizon = points[certified_stages] - 1;
    Ok(CertifiedSchedule {
        schedule: MergeSchedule::new(points)?,
        certified_stages,
        horizon,
    })
}

/// `B_{n+1} = (prod_{j<z} B_n^{a_j} 1^d) B_n^{a_z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecomposition {
    pub d: u64,
    pub runs: Vec<usize>,
}

impl RunDecomposition {
    pub fn z(&self) -> usize {
        self.runs.len()
    }

    pub fn reassemble(&self, b: &Word) -> Word {
        let mut out = Word::new();
        for (j, &a) in self.runs.iter().enumerate() {
            for _ in 0..a {
                out.append(b);
            }
            if j + 1 < self.runs.len() {
                out.push_run(1, self.d as usize);
            }
        }
        out
    }
}

pub fn run_decomposition(spec: &RankOneSpec, n: usize, d: u64) -> Result<RunDecomposition> {
    if d == 0 {
        return Err(Error::InvalidParameter("need d >= 1".into()));
    }
    let row = spec.row(n)?;
    check_two_valued(&row, n, 0, d)?;
    let interior = row.interior();
    if !interior.contains(&0) || !interior.contains(&d) {
        return Err(Error::precondition(
            n,
            None,
            format!("interior spacers of stage {n} do not take both values 0 and {d}"),
        ));
    }
    let mut runs = Vec::new();
    let mut count = 0;
    for &s in interior {
        count += 1;
        if s == d {
            runs.push(count);
            count = 0;
        }
    }
    runs.push(count + 1);
    Ok(RunDecomposition { d, runs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageComparison {
    pub max_q: usize,
    pub same: bool,
    /// A shortest factor of one language missing from the other, with the
    /// side (`0` for the first spec) it belongs to.
    pub distinguishing: Option<(usize, Word)>,
}

/// Shortest factor of length at most `max_q` in `x` but not in `index`.
fn missing_factor(x: &Word, index: &FactorIndex, max_q: usize) -> Option<Word> {
    index
        .matching_lengths(x)
        .iter()
        .enumerate()
        .filter(|&(i, &m)| (m as usize) < max_q.min(i + 1))
        .map(|(i, &m)| (m as usize + 1, i))
        .min()
        .map(|(len, end)| x.slice(end + 1 - len, len))
}

/// Compares the length-`<= Q` factor sets of two specs.
pub fn verify_same_language(
    a: &RankOneSpec,
    b: &RankOneSpec,
    max_q: usize,
    cap: u64,
) -> Result<LanguageComparison> {
    let sa = language_sample(a, max_q, cap)?;
    let sb = language_sample(b, max_q, cap)?;
    let found = [
        missing_factor(sa.word(), &sb.index, max_q).map(|w| (0, w)),
        missing_factor(sb.word(), &sa.index, max_q).map(|w| (1, w)),
    ]
    .into_iter()
    .flatten()
    .min_by_key(|(side, w)| (w.len(), *side));
    Ok(LanguageComparison {
        max_q,
        same: found.is_none() && sa.table == sb.table,
        distinguishing: found,
    })
}
