//! Rank-one constructions: spacer rows, stage rules and the defining words
//! `B_1 = 0`, `B_{n+1} = B_n 1^{s_{n,0}} B_n 1^{s_{n,1}} ... B_n 1^{s_{n,r_n}}`.
//!
//! Heights and zero counts are tracked with arbitrary precision so that
//! specs whose words are far too long to materialize can still be analyzed.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// Default materialization cap, in symbols.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Longest spacer row that is ever materialized as a vector.
pub const MAX_ROW_LEN: usize = 1 << 24;

/// One stage of a cutting-and-stacking construction: `r` cuts and the
/// `r + 1` spacer counts `s_0, ..., s_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpacerRow {
    spacers: Vec<u64>,
}

impl SpacerRow {
    pub fn new(spacers: Vec<u64>) -> Result<Self> {
        if spacers.len() < 2 {
            return Err(Error::InvalidRow(format!(
                "a row needs r >= 1, i.e. at least 2 spacer entries (got {})",
                spacers.len()
            )));
        }
        Ok(SpacerRow { spacers })
    }

    /// The cut count `r`.
    pub fn cuts(&self) -> usize {
        self.spacers.len() - 1
    }

    /// `r + 1`, the number of subcolumns.
    pub fn subcolumns(&self) -> usize {
        self.spacers.len()
    }

    pub fn spacers(&self) -> &[u64] {
        &self.spacers
    }

    pub fn get(&self, i: usize) -> u64 {
        self.spacers[i]
    }

    /// Spacers above every subcolumn except the last, `s_0 .. s_{r-1}`.
    pub fn interior(&self) -> &[u64] {
        &self.spacers[..self.cuts()]
    }

    /// `s_r`, the spacers above the rightmost subcolumn.
    pub fn last(&self) -> u64 {
        self.spacers[self.cuts()]
    }

    pub fn spacer_sum(&self) -> BigUint {
        self.spacers.iter().map(|&s| BigUint::from(s)).sum()
    }

    pub fn max_spacer(&self) -> u64 {
        self.spacers.iter().copied().max().unwrap_or(0)
    }

    pub fn into_spacers(self) -> Vec<u64> {
        self.spacers
    }
}

/// Shape of a row without its entries; enough for height bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowShape {
    pub subcolumns: BigUint,
    pub spacer_total: BigUint,
}

/// How a finite list continues past its end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    #[default]
    RepeatLast,
    RepeatCycle,
}

impl Tail {
    fn index(self, n: usize, len: usize) -> usize {
        debug_assert!(n >= 1 && len >= 1);
        match self {
            Tail::RepeatLast => (n - 1).min(len - 1),
            Tail::RepeatCycle => (n - 1) % len,
        }
    }
}

/// An integer sequence `n -> x_n` (for `n >= 1`) given by a finite rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqRule {
    Constant(BigUint),
    List { values: Vec<BigUint>, tail: Tail },
    /// `slope * n + intercept`
    Linear { slope: BigUint, intercept: BigUint },
    /// `(n + offset)!`
    Factorial { offset: u64 },
}

/// Long-run behaviour of a [`SeqRule`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleBehavior {
    /// `x_{n + period} = x_n` for every `n > preperiod`.
    Periodic { preperiod: usize, period: usize },
    /// `x_n -> infinity`, monotonically.
    Divergent,
}

impl SeqRule {
    pub fn constant(value: u64) -> Self {
        SeqRule::Constant(BigUint::from(value))
    }

    pub fn list(values: &[u64], tail: Tail) -> Self {
        SeqRule::List {
            values: values.iter().map(|&v| BigUint::from(v)).collect(),
            tail,
        }
    }

    pub fn value(&self, n: usize) -> BigUint {
        assert!(n >= 1, "sequence rules are indexed from 1");
        match self {
            SeqRule::Constant(v) => v.clone(),
            SeqRule::List { values, tail } => values[tail.index(n, values.len())].clone(),
            SeqRule::Linear { slope, intercept } => slope * BigUint::from(n) + intercept,
            SeqRule::Factorial { offset } => {
                (1..=n as u64 + offset).fold(BigUint::one(), |acc, k| acc * k)
            }
        }
    }

    pub fn behavior(&self) -> RuleBehavior {
        match self {
            SeqRule::Constant(_) => RuleBehavior::Periodic {
                preperiod: 0,
                period: 1,
            },
            SeqRule::List { values, tail } => match tail {
                Tail::RepeatLast => RuleBehavior::Periodic {
                    preperiod: values.len() - 1,
                    period: 1,
                },
                Tail::RepeatCycle => RuleBehavior::Periodic {
                    preperiod: 0,
                    period: values.len(),
                },
            },
            SeqRule::Linear { slope, .. } if slope.is_zero() => RuleBehavior::Periodic {
                preperiod: 0,
                period: 1,
            },
            SeqRule::Linear { .. } | SeqRule::Factorial { .. } => RuleBehavior::Divergent,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.behavior(), RuleBehavior::Periodic { .. })
    }

    fn validate(&self, name: &str) -> Result<()> {
        if let SeqRule::List { values, .. } = self {
            if values.is_empty() {
                return Err(Error::InvalidParameter(format!("{name} list is empty")));
            }
        }
        Ok(())
    }
}

impl From<u64> for SeqRule {
    fn from(v: u64) -> Self {
        SeqRule::constant(v)
    }
}

/// Parameters `(gamma_n, L_n)` of the family `B_{n+1} = ((B_n 1)^{gamma_n} B_n)^{L_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheTsParams {
    gamma: SeqRule,
    l: SeqRule,
}

/// How many leading terms of a rule are checked eagerly on construction.
const EAGER_CHECK: usize = 16;

impl TheTsParams {
    pub fn new(gamma: SeqRule, l: SeqRule) -> Result<Self> {
        gamma.validate("gamma")?;
        l.validate("L")?;
        let params = TheTsParams { gamma, l };
        for n in 1..=EAGER_CHECK {
            params.gamma(n)?;
            params.l(n)?;
        }
        Ok(params)
    }

    pub fn constant(gamma: u64, l: u64) -> Result<Self> {
        Self::new(SeqRule::constant(gamma), SeqRule::constant(l))
    }

    pub fn gamma_rule(&self) -> &SeqRule {
        &self.gamma
    }

    pub fn l_rule(&self) -> &SeqRule {
        &self.l
    }

    pub fn gamma(&self, n: usize) -> Result<BigUint> {
        let g = self.gamma.value(n);
        if g <= BigUint::one() {
            return Err(Error::InvalidParameter(format!(
                "gamma_{n} = {g} but the family needs gamma_n > 1"
            )));
        }
        Ok(g)
    }

    pub fn l(&self, n: usize) -> Result<BigUint> {
        let l = self.l.value(n);
        if l <= BigUint::one() {
            return Err(Error::InvalidParameter(format!(
                "L_{n} = {l} but the family needs L_n > 1"
            )));
        }
        Ok(l)
    }

    /// Heights `h_1..=h_count` via `h_{n+1} = L_n((gamma_n + 1) h_n + gamma_n)`.
    pub fn heights(&self, count: usize) -> Result<Vec<BigUint>> {
        let mut hs = Vec::with_capacity(count);
        let mut h = BigUint::one();
        for n in 1..=count {
            hs.push(h.clone());
            if n < count {
                let g = self.gamma(n)?;
                h = self.l(n)? * ((&g + 1u32) * &h + &g);
            }
        }
        Ok(hs)
    }

    fn row(&self, n: usize) -> Result<SpacerRow> {
        let g = self.gamma(n)?;
        let l = self.l(n)?;
        let len = &l * (&g + 1u32);
        let len_usize = len
            .to_usize()
            .filter(|&x| x <= MAX_ROW_LEN)
            .ok_or_else(|| Error::capacity(len.clone(), MAX_ROW_LEN as u64))?;
        let g = g.to_usize().expect("bounded by row length");
        let l = l.to_usize().expect("bounded by row length");
        let mut s = Vec::with_capacity(len_usize);
        for _ in 0..l {
            s.extend(std::iter::repeat_n(1, g));
            s.push(0);
        }
        SpacerRow::new(s)
    }

    fn shape(&self, n: usize) -> Result<RowShape> {
        let g = self.gamma(n)?;
        let l = self.l(n)?;
        Ok(RowShape {
            subcolumns: &l * (&g + 1u32),
            spacer_total: l * g,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Explicit,
    TheTs,
    Ferenczi,
    Chacon,
    Custom,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::Explicit => "explicit",
            FamilyTag::TheTs => "the_ts",
            FamilyTag::Ferenczi => "ferenczi",
            FamilyTag::Chacon => "chacon",
            FamilyTag::Custom => "custom",
        })
    }
}

pub type StageFn = dyn Fn(usize) -> Result<SpacerRow> + Send + Sync;

#[derive(Clone)]
pub enum StageRule {
    Explicit { rows: Vec<SpacerRow>, tail: Tail },
    TheTs(TheTsParams),
    Repeating(SpacerRow),
    Custom { rule: Arc<StageFn>, description: String },
}

impl fmt::Debug for StageRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageRule::Explicit { rows, tail } => f
                .debug_struct("Explicit")
                .field("rows", rows)
                .field("tail", tail)
                .finish(),
            StageRule::TheTs(p) => f.debug_tuple("TheTs").field(p).finish(),
            StageRule::Repeating(row) => f.debug_tuple("Repeating").field(row).finish(),
            StageRule::Custom { description, .. } => {
                f.debug_struct("Custom").field("description", description).finish()
            }
        }
    }
}

/// A rank-one construction: a total rule `n -> (r_n, s_{n,0..r_n})`.
#[derive(Clone, Debug)]
pub struct RankOneSpec {
    rule: StageRule,
    family: FamilyTag,
    spacer_bound: Option<u64>,
}

impl RankOneSpec {
    pub fn explicit(rows: Vec<SpacerRow>, tail: Tail) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidRow("explicit spec needs at least one row".into()));
        }
        Ok(RankOneSpec {
            rule: StageRule::Explicit { rows, tail },
            family: FamilyTag::Explicit,
            spacer_bound: None,
        })
    }

    /// Convenience for tests and examples: rows given as plain vectors.
    pub fn from_rows(rows: &[&[u64]], tail: Tail) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| SpacerRow::new(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::explicit(rows, tail)
    }

    pub fn the_ts(params: TheTsParams) -> Self {
        RankOneSpec {
            rule: StageRule::TheTs(params),
            family: FamilyTag::TheTs,
            spacer_bound: None,
        }
    }

    /// `ferenczi` (`B_{n+1} = B_n B_n 1 B_n B_n`) or `chacon` (`B_{n+1} = B_n B_n 1 B_n`).
    pub fn named(tag: &str) -> Result<Self> {
        let (row, family) = match tag {
            "ferenczi" => (vec![0, 1, 0, 0], FamilyTag::Ferenczi),
            "chacon" => (vec![0, 1, 0], FamilyTag::Chacon),
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        Ok(RankOneSpec {
            rule: StageRule::Repeating(SpacerRow::new(row)?),
            family,
            spacer_bound: None,
        })
    }

    pub fn custom<F>(description: impl Into<String>, rule: F) -> Self
    where
        F: Fn(usize) -> Result<SpacerRow> + Send + Sync + 'static,
    {
        RankOneSpec {
            rule: StageRule::Custom {
                rule: Arc::new(rule),
                description: description.into(),
            },
            family: FamilyTag::Custom,
            spacer_bound: None,
        }
    }

    pub fn with_spacer_bound(mut self, bound: u64) -> Self {
        self.spacer_bound = Some(bound);
        self
    }

    pub fn family(&self) -> FamilyTag {
        self.family
    }

    pub fn spacer_bound(&self) -> Option<u64> {
        self.spacer_bound
    }

    pub fn rule(&self) -> &StageRule {
        &self.rule
    }

    /// Present for specs built from the `(gamma_n, L_n)` family.
    pub fn the_ts_params(&self) -> Option<&TheTsParams> {
        match &self.rule {
            StageRule::TheTs(p) => Some(p),
            _ => None,
        }
    }

    /// The spacer row of stage `n >= 1`.
    pub fn row(&self, n: usize) -> Result<SpacerRow> {
        if n == 0 {
            return Err(Error::InvalidParameter("stages are indexed from 1".into()));
        }
        let row = match &self.rule {
            StageRule::Explicit { rows, tail } => rows[tail.index(n, rows.len())].clone(),
            StageRule::TheTs(p) => p.row(n)?,
            StageRule::Repeating(row) => row.clone(),
            StageRule::Custom { rule, .. } => rule(n)?,
        };
        if let Some(bound) = self.spacer_bound {
            if let Some((index, &value)) =
                row.spacers().iter().enumerate().find(|&(_, &v)| v > bound)
            {
                return Err(Error::SpacerBound {
                    bound,
                    stage: n,
                    index,
                    value,
                });
            }
        }
        Ok(row)
    }

    /// `(r_n + 1, sum_i s_{n,i})` without materializing the row when the
    /// family has a closed form.
    pub fn row_shape(&self, n: usize) -> Result<RowShape> {
        match &self.rule {
            StageRule::TheTs(p) if self.spacer_bound.is_none() => p.shape(n),
            _ => {
                let row = self.row(n)?;
                Ok(RowShape {
                    subcolumns: BigUint::from(row.subcolumns()),
                    spacer_total: row.spacer_sum(),
                })
            }
        }
    }
}

/// `B_1`.
pub fn base_word() -> Word {
    let mut w = Word::new();
    w.push(0);
    w
}

/// `prod_{i=0}^{r} b 1^{s_i}`.
pub fn expand_stage(b: &Word, row: &SpacerRow, cap: u64) -> Result<Word> {
    let required = BigUint::from(b.len()) * row.subcolumns() + row.spacer_sum();
    let len = required
        .to_u64()
        .filter(|&l| l <= cap)
        .ok_or_else(|| Error::capacity(required.clone(), cap))?;
    let mut out = Word::with_capacity(len as usize);
    for &s in row.spacers() {
        out.append(b);
        out.push_run(1, s as usize);
    }
    Ok(out)
}

/// Heights `h_1..=h_count`, never materializing words.
pub fn heights(spec: &RankOneSpec, count: usize) -> Result<Vec<BigUint>> {
    if count == 0 {
        return Err(Error::InvalidParameter("need at least one height".into()));
    }
    if let (Some(p), None) = (spec.the_ts_params(), spec.spacer_bound()) {
        return p.heights(count);
    }
    let mut hs = Vec::with_capacity(count);
    let mut h = BigUint::one();
    for n in 1..=count {
        hs.push(h.clone());
        if n < count {
            let shape = spec.row_shape(n)?;
            h = shape.subcolumns * h + shape.spacer_total;
        }
    }
    Ok(hs)
}

/// Heights as machine integers; capacity error once they stop fitting in `u64`.
pub fn heights_u64(spec: &RankOneSpec, count: usize) -> Result<Vec<u64>> {
    heights(spec, count)?
        .into_iter()
        .map(|h| h.to_u64().ok_or_else(|| Error::capacity(h, u64::MAX)))
        .collect()
}

/// Stage `n` of a construction: exact height and zero count, plus the word
/// itself when it fits under the cap.
#[derive(Clone, Debug)]
pub struct BuildState {
    pub n: usize,
    pub word: Option<Word>,
    pub height: BigUint,
    pub zero_count: BigUint,
}

pub fn build_state(spec: &RankOneSpec, n: usize, cap: u64) -> Result<BuildState> {
    if n == 0 || cap == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and cap >= 1".into()));
    }
    let mut height = BigUint::one();
    let mut zero_count = BigUint::one();
    for k in 1..n {
        let shape = spec.row_shape(k)?;
        height = &shape.subcolumns * height + shape.spacer_total;
        zero_count *= shape.subcolumns;
    }
    let word = if height <= BigUint::from(cap) {
        Some(materialize(spec, n, cap)?)
    } else {
        None
    };
    Ok(BuildState {
        n,
        word,
        height,
        zero_count,
    })
}

/// `B_n`, or a capacity error carrying the exact required length.
pub fn materialize(spec: &RankOneSpec, n: usize, cap: u64) -> Result<Word> {
    Ok(materialize_all(spec, n, cap)?.pop().expect("n >= 1"))
}

/// `B_1, ..., B_n`.
pub fn materialize_all(spec: &RankOneSpec, n: usize, cap: u64) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::InvalidParameter("stages are indexed from 1".into()));
    }
    let hs = heights(spec, n)?;
    if hs[n - 1] > BigUint::from(cap) {
        return Err(Error::capacity(hs[n - 1].clone(), cap));
    }
    let mut words = Vec::with_capacity(n);
    words.push(base_word());
    for k in 1..n {
        let next = expand_stage(&words[k - 1], &spec.row(k)?, cap)?;
        words.push(next);
    }
    Ok(words)
}

/// True iff every stage in `[start, start + window)` has the odometer pattern
/// `s_{n,i} = c` for `i < r_n` and `s_{n,r_n} = 0`. A finite-window heuristic:
/// it says nothing about stages outside the window.
pub fn odometer_window_check(spec: &RankOneSpec, start: usize, window: usize) -> Result<bool> {
    if start == 0 || window == 0 {
        return Err(Error::InvalidParameter("need start >= 1 and window >= 1".into()));
    }
    for n in start..start + window {
        let row = spec.row(n)?;
        let c = row.get(0);
        if row.last() != 0 || row.interior().iter().any(|&s| s != c) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn expand_stage_examples() {
        let row = SpacerRow::new(vec![1, 0]).unwrap();
        assert_eq!(expand_stage(&w("0"), &row, 100).unwrap(), w("010"));
        let row = SpacerRow::new(vec![1, 1, 0, 1, 1, 0]).unwrap();
        assert_eq!(expand_stage(&w("0"), &row, 100).unwrap(), w("0101001010"));
        let row = SpacerRow::new(vec![2, 0]).unwrap();
        assert_eq!(expand_stage(&w("010"), &row, 100).unwrap(), w("01011010"));
    }

    #[test]
    fn expand_stage_capacity_error_carries_length() {
        let row = SpacerRow::new(vec![2, 0]).unwrap();
        match expand_stage(&w("010"), &row, 7) {
            Err(Error::Capacity { required, cap }) => {
                assert_eq!(required, BigUint::from(8u32));
                assert_eq!(cap, 7);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn rows_need_a_cut() {
        assert!(SpacerRow::new(vec![3]).is_err());
        assert!(SpacerRow::new(vec![]).is_err());
    }

    #[test]
    fn named_heights() {
        let ts = RankOneSpec::the_ts(TheTsParams::constant(2, 2).unwrap());
        assert_eq!(heights(&ts, 5).unwrap(), big(&[1, 10, 64, 388, 2332]));
        let chacon = RankOneSpec::named("chacon").unwrap();
        assert_eq!(heights(&chacon, 4).unwrap(), big(&[1, 4, 13, 40]));
        let ferenczi = RankOneSpec::named("ferenczi").unwrap();
        assert_eq!(heights(&ferenczi, 4).unwrap(), big(&[1, 5, 21, 85]));
        assert!(matches!(
            RankOneSpec::named("smorodinsky"),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn named_words() {
        let ferenczi = RankOneSpec::named("ferenczi").unwrap();
        assert_eq!(materialize(&ferenczi, 2, 100).unwrap(), w("00100"));
        let chacon = RankOneSpec::named("chacon").unwrap();
        assert_eq!(materialize(&chacon, 2, 100).unwrap(), w("0010"));
        assert_eq!(materialize(&chacon, 3, 100).unwrap(), w("0010001010010"));
    }

    #[test]
    fn the_ts_rows() {
        let p = TheTsParams::constant(2, 2).unwrap();
        assert_eq!(p.row(1).unwrap().spacers(), &[1, 1, 0, 1, 1, 0]);
        let p = TheTsParams::constant(3, 2).unwrap();
        let row = p.row(1).unwrap();
        assert_eq!(row.spacers(), &[1, 1, 1, 0, 1, 1, 1, 0]);
        assert_eq!(row.cuts(), 7);
        let p = TheTsParams::constant(2, 3).unwrap();
        assert_eq!(p.row(4).unwrap().subcolumns(), 9);
        assert!(TheTsParams::constant(1, 2).is_err());
        assert!(TheTsParams::constant(2, 1).is_err());
    }

    #[test]
    fn the_ts_word_matches_block_form() {
        // ((B 1)^gamma B)^L
        let p = TheTsParams::constant(3, 2).unwrap();
        let spec = RankOneSpec::the_ts(p);
        let words = materialize_all(&spec, 3, 10_000).unwrap();
        for k in 0..2 {
            let mut b1 = words[k].clone();
            b1.push(1);
            let block = b1.repeat(3).concat(&words[k]);
            assert_eq!(block.repeat(2), words[k + 1]);
        }
    }

    #[test]
    fn build_state_examples() {
        let spec = RankOneSpec::the_ts(TheTsParams::constant(2, 2).unwrap());
        let s = build_state(&spec, 2, DEFAULT_CAP).unwrap();
        assert_eq!(s.word.unwrap(), w("0101001010"));
        assert_eq!(s.height, BigUint::from(10u32));
        assert_eq!(s.zero_count, BigUint::from(6u32));

        let s = build_state(&spec, 1, DEFAULT_CAP).unwrap();
        assert_eq!(s.word.unwrap(), w("0"));
        assert_eq!(s.height, BigUint::one());

        let s = build_state(&spec, 3, 20).unwrap();
        assert!(s.word.is_none());
        assert_eq!(s.height, BigUint::from(64u32));
        assert_eq!(s.zero_count, BigUint::from(36u32));

        assert!(materialize(&spec, 3, 20).unwrap_err().is_capacity());
    }

    #[test]
    fn huge_parameters_stay_symbolic() {
        let p = TheTsParams::new(SeqRule::constant(3), SeqRule::Factorial { offset: 30 }).unwrap();
        let spec = RankOneSpec::the_ts(p);
        let s = build_state(&spec, 4, DEFAULT_CAP).unwrap();
        assert!(s.word.is_none());
        assert!(s.height > BigUint::from(u64::MAX));
        assert!(spec.row(1).unwrap_err().is_capacity());
    }

    #[test]
    fn spacer_bound_enforced() {
        let spec = RankOneSpec::from_rows(&[&[0, 1, 0], &[0, 5, 0]], Tail::RepeatLast)
            .unwrap()
            .with_spacer_bound(3);
        assert!(spec.row(1).is_ok());
        assert!(matches!(
            spec.row(2),
            Err(Error::SpacerBound { stage: 2, index: 1, value: 5, .. })
        ));
    }

    #[test]
    fn tails() {
        let spec =
            RankOneSpec::from_rows(&[&[1, 0], &[2, 0], &[3, 0]], Tail::RepeatCycle).unwrap();
        assert_eq!(spec.row(4).unwrap().spacers(), &[1, 0]);
        assert_eq!(spec.row(6).unwrap().spacers(), &[3, 0]);
        let spec = RankOneSpec::from_rows(&[&[1, 0], &[2, 0]], Tail::RepeatLast).unwrap();
        assert_eq!(spec.row(9).unwrap().spacers(), &[2, 0]);
    }

    #[test]
    fn odometer_window() {
        let zeros = RankOneSpec::from_rows(&[&[0, 0, 0]], Tail::RepeatLast).unwrap();
        assert!(odometer_window_check(&zeros, 1, 5).unwrap());
        let twos = RankOneSpec::from_rows(&[&[2, 2, 0]], Tail::RepeatLast).unwrap();
        assert!(odometer_window_check(&twos, 1, 5).unwrap());
        let ts = RankOneSpec::the_ts(TheTsParams::constant(2, 2).unwrap());
        assert!(!odometer_window_check(&ts, 1, 3).unwrap());
        let chacon = RankOneSpec::named("chacon").unwrap();
        assert!(!odometer_window_check(&chacon, 2, 2).unwrap());
    }

    #[test]
    fn seq_rules() {
        let lin = SeqRule::Linear {
            slope: BigUint::one(),
            intercept: BigUint::one(),
        };
        assert_eq!(lin.value(3), BigUint::from(4u32));
        assert!(!lin.is_bounded());
        let fact = SeqRule::Factorial { offset: 2 };
        assert_eq!(fact.value(3), BigUint::from(120u32));
        assert_eq!(
            SeqRule::list(&[2, 3], Tail::RepeatCycle).behavior(),
            RuleBehavior::Periodic {
                preperiod: 0,
                period: 2
            }
        );
    }
}
