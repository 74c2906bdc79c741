//! Word complexity `p(q)` of a rank-one subshift, right-special census,
//! counting identities and finite-horizon detectors.
//!
//! Factors of the subshift of length at most `Q` are read off `B_M` for the
//! stabilization depth `M = min{m : h_m >= Q} + 2`. The counts are recomputed
//! on `B_{M+1}` and any change is reported as an error.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::construction::{self, heights, RankOneSpec};
use crate::error::{Error, Result};
use crate::factor_index::FactorIndex;
use crate::word::Word;

/// Exact `p(1..=Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityTable {
    p: Vec<u64>,
}

impl ComplexityTable {
    pub fn from_values(p: Vec<u64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidParameter("empty complexity table".into()));
        }
        Ok(ComplexityTable { p })
    }

    pub fn max_q(&self) -> usize {
        self.p.len()
    }

    /// `p(q)` for `1 <= q <= Q`.
    pub fn p(&self, q: usize) -> u64 {
        self.p[q - 1]
    }

    /// `p(q + 1) - p(q)` for `1 <= q < Q`.
    pub fn delta(&self, q: usize) -> i64 {
        self.p[q] as i64 - self.p[q - 1] as i64
    }

    pub fn values(&self) -> &[u64] {
        &self.p
    }

    pub fn ratio(&self, q: usize) -> BigRational {
        BigRational::new(BigInt::from(self.p(q)), BigInt::from(q))
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.p.windows(2).all(|w| w[0] <= w[1])
    }
}

/// The indexed word `B_M` whose factors of length `<= max_q` are exactly
/// those of the subshift (checked against `B_{M+1}`).
#[derive(Clone, Debug)]
pub struct LanguageSample {
    pub depth: usize,
    pub max_q: usize,
    pub index: FactorIndex,
    pub table: ComplexityTable,
}

impl LanguageSample {
    pub fn word(&self) -> &Word {
        self.index.text()
    }
}

/// `min{m : h_m >= q} + 2`.
pub fn stabilization_depth(spec: &RankOneSpec, q: usize) -> Result<usize> {
    let target = BigUint::from(q);
    let mut count = 1;
    loop {
        let hs = heights(spec, count)?;
        if hs[count - 1] >= target {
            return Ok(count + 2);
        }
        count += 1;
    }
}

pub fn language_sample(spec: &RankOneSpec, max_q: usize, cap: u64) -> Result<LanguageSample> {
    if max_q == 0 {
        return Err(Error::InvalidParameter("need Q >= 1".into()));
    }
    let depth = stabilization_depth(spec, max_q)?;
    let words = construction::materialize_all(spec, depth + 1, cap)?;
    let index = FactorIndex::build(&words[depth - 1]);
    let counts = index.counts_per_length(max_q);
    let recheck = FactorIndex::build(&words[depth]).counts_per_length(max_q);
    if let Some(q) = (0..max_q).find(|&i| counts[i] != recheck[i]) {
        return Err(Error::Stabilization {
            depth,
            next: depth + 1,
            length: q + 1,
            before: counts[q],
            after: recheck[q],
        });
    }
    Ok(LanguageSample {
        depth,
        max_q,
        index,
        table: ComplexityTable { p: counts },
    })
}

pub fn subshift_complexity(spec: &RankOneSpec, max_q: usize, cap: u64) -> Result<ComplexityTable> {
    Ok(language_sample(spec, max_q, cap)?.table)
}

/// Which of the three right-special families a word falls in, for the
/// `(gamma_n, L_n)` family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RsFamily {
    /// suffix of `B_{n+1}`
    SuffixOfNext,
    /// suffix of `(B_n 1)^{2 gamma_n} B_n`
    Middle,
    /// suffix of `((B_{n-1} 1)^{gamma_{n-1}} B_{n-1})^{L_{n-1} - 1} B_n`
    Third,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSRecord {
    pub word: Word,
    pub family: Option<RsFamily>,
    pub stage: Option<usize>,
}

/// Right-special words of every length `1..Q`.
#[derive(Clone, Debug)]
pub struct RightSpecialCensus {
    pub max_q: usize,
    /// Entry `q - 1` holds the words of length `q`.
    pub by_length: Vec<Vec<RSRecord>>,
}

impl RightSpecialCensus {
    pub fn counts(&self) -> Vec<u64> {
        self.by_length.iter().map(|v| v.len() as u64).collect()
    }

    pub fn at(&self, q: usize) -> &[RSRecord] {
        &self.by_length[q - 1]
    }
}

/// Right-special counts for lengths `1..Q` (entry `q - 1` is length `q`).
pub fn right_special_counts(sample: &LanguageSample) -> Vec<u64> {
    let mut counts = sample.index.right_special_counts(sample.max_q);
    counts.truncate(sample.max_q.saturating_sub(1));
    counts
}

pub fn right_special(spec: &RankOneSpec, max_q: usize, cap: u64) -> Result<RightSpecialCensus> {
    let sample = language_sample(spec, max_q, cap)?;
    Ok(census_from_sample(&sample))
}

pub fn census_from_sample(sample: &LanguageSample) -> RightSpecialCensus {
    let by_length = (1..sample.max_q)
        .map(|q| {
            sample
                .index
                .right_special_words(q)
                .into_iter()
                .map(|word| RSRecord {
                    word,
                    family: None,
                    stage: None,
                })
                .collect()
        })
        .collect();
    RightSpecialCensus {
        max_q: sample.max_q,
        by_length,
    }
}

/// True iff `p(q) = p(m) + sum_{l=m}^{q-1} rs(l)` for every `m < q <= Q`.
/// `rs_counts[k]` is the right-special count at length `start + k`.
pub fn cassaigne_check(table: &ComplexityTable, start: usize, rs_counts: &[u64]) -> bool {
    let q_max = table.max_q();
    if start == 0 || start > q_max || rs_counts.len() + start < q_max {
        return false;
    }
    let mut acc = table.p(start);
    for q in start + 1..=q_max {
        acc += rs_counts[q - 1 - start];
        if table.p(q) != acc {
            return false;
        }
    }
    true
}

/// `Some(c)` when `p(q) - q = c` on the whole tail window `[window_start, Q]`.
/// Only a finite-horizon detector.
pub fn detect_quasi_sturmian(table: &ComplexityTable, window_start: usize) -> Option<i64> {
    if window_start == 0 || window_start > table.max_q() {
        return None;
    }
    let excess = |q: usize| table.p(q) as i64 - q as i64;
    let c = excess(window_start);
    (window_start..=table.max_q())
        .all(|q| excess(q) == c)
        .then_some(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioProfile {
    pub max_ratio: BigRational,
    pub argmax_ratio: usize,
    pub min_ratio: BigRational,
    pub argmin_ratio: usize,
    /// `max p(q) - 3q/2`
    pub max_excess: BigRational,
    pub argmax_excess: usize,
}

/// Exact extrema of `p(q)/q` and `p(q) - 1.5 q` over `window`; ties go to
/// the smallest `q`.
pub fn ratio_profile(table: &ComplexityTable, window: RangeInclusive<usize>) -> Result<RatioProfile> {
    let (lo, hi) = (*window.start(), *window.end());
    if lo == 0 || lo > hi || hi > table.max_q() {
        return Err(Error::InvalidParameter(format!(
            "window {lo}..={hi} is not inside 1..={}",
            table.max_q()
        )));
    }
    let excess = |q: usize| {
        BigRational::new(BigInt::from(2 * table.p(q) as i128 - 3 * q as i128), BigInt::from(2))
    };
    let mut prof = RatioProfile {
        max_ratio: table.ratio(lo),
        argmax_ratio: lo,
        min_ratio: table.ratio(lo),
        argmin_ratio: lo,
        max_excess: excess(lo),
        argmax_excess: lo,
    };
    for q in lo + 1..=hi {
        let r = table.ratio(q);
        if r > prof.max_ratio {
            prof.max_ratio = r.clone();
            prof.argmax_ratio = q;
        }
        if r < prof.min_ratio {
            prof.min_ratio = r;
            prof.argmin_ratio = q;
        }
        let e = excess(q);
        if e > prof.max_excess {
            prof.max_excess = e;
            prof.argmax_excess = q;
        }
    }
    Ok(prof)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub q: usize,
    pub p: u64,
    /// `1.5 q + (p(h_n) - h_n) - C`
    pub threshold: BigRational,
}

/// Smallest `q` in `[h_n, h_{n+1}]` with `p(q) >= 1.5 q + (p(h_n) - h_n) - C`.
pub fn lower_bound_witness(
    spec: &RankOneSpec,
    n: usize,
    c: i64,
    cap: u64,
) -> Result<Option<Witness>> {
    if n == 0 {
        return Err(Error::InvalidParameter("stages are indexed from 1".into()));
    }
    let hs = construction::heights_u64(spec, n + 1)?;
    let (h_n, h_next) = (hs[n - 1] as usize, hs[n] as usize);
    let table = subshift_complexity(spec, h_next, cap)?;
    Ok(first_witness(&table, h_n, h_next, c))
}

/// Scan of `[h_n, h_next]` on an existing table.
pub fn first_witness(table: &ComplexityTable, h_n: usize, h_next: usize, c: i64) -> Option<Witness> {
    let base = table.p(h_n) as i128 - h_n as i128;
    (h_n..=h_next.min(table.max_q())).find_map(|q| {
        // 2 p(q) >= 3 q + 2 (base - C)
        let lhs = 2 * table.p(q) as i128;
        let rhs = 3 * q as i128 + 2 * (base - c as i128);
        (lhs >= rhs).then(|| Witness {
            q,
            p: table.p(q),
            threshold: BigRational::new(BigInt::from(rhs), BigInt::from(2)),
        })
    })
}

/// Minimal `c >= 1` with `0 1^{c-1}` a suffix of `B_N`.
pub fn split_constant(spec: &RankOneSpec, stage: usize, cap: u64) -> Result<usize> {
    let b = construction::materialize(spec, stage, cap)?;
    Ok(split_constant_of(&b))
}

pub fn split_constant_of(b: &Word) -> usize {
    debug_assert!(b.count_zeros() > 0);
    b.trailing_ones() + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRatio {
    pub n: usize,
    pub height: u64,
    pub p: u64,
    pub ratio: BigRational,
}

/// `p(h_n)/h_n` at the requested stages, for specs with at least three
/// distinct interior spacer values on every tail of the tested window.
pub fn three_value_ratio_witness(
    spec: &RankOneSpec,
    stages: &[usize],
    cap: u64,
) -> Result<Vec<StageRatio>> {
    let Some(&last) = stages.iter().max() else {
        return Ok(Vec::new());
    };
    let mut seen_from: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); last + 1];
    for m in (1..=last).rev() {
        let mut vals = seen_from.get(m + 1).cloned().unwrap_or_default();
        vals.extend(spec.row(m)?.interior().iter().copied());
        seen_from[m] = vals;
    }
    for &n in stages {
        if n == 0 || seen_from[n].len() < 3 {
            return Err(Error::precondition(
                n,
                None,
                format!(
                    "fewer than three distinct spacer values among stages {n}..={last}"
                ),
            ));
        }
    }
    let hs = construction::heights_u64(spec, last)?;
    let table = subshift_complexity(spec, hs[last - 1] as usize, cap)?;
    Ok(stages
        .iter()
        .map(|&n| {
            let h = hs[n - 1];
            let p = table.p(h as usize);
            StageRatio {
                n,
                height: h,
                p,
                ratio: BigRational::new(BigInt::from(p), BigInt::from(h)),
            }
        })
        .collect())
}

/// `p(q) >= q + 1` on `1..=Q`.
pub fn satisfies_hedlund_morse(table: &ComplexityTable) -> bool {
    (1..=table.max_q()).all(|q| table.p(q) > q as u64)
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{Tail, TheTsParams, DEFAULT_CAP};

    fn ts22() -> RankOneSpec {
        RankOneSpec::the_ts(TheTsParams::constant(2, 2).unwrap())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn the_ts_anchor_values() {
        let t = subshift_complexity(&ts22(), 64, DEFAULT_CAP).unwrap();
        assert_eq!(t.p(2), 3);
        assert_eq!(t.p(6), 7);
        assert_eq!(t.p(10), 15);
        assert_eq!(t.p(11), 16);
        assert_eq!(t.p(15), 24);
        assert_eq!(t.p(16), 26);
        assert_eq!(t.p(55), 87);
        assert_eq!(t.p(64), 96);
        assert!(t.is_nondecreasing());
    }

    #[test]
    fn stabilization_depth_rule() {
        // h = 1, 10, 64, ...: the first m with h_m >= 11 is 3
        assert_eq!(stabilization_depth(&ts22(), 11).unwrap(), 5);
        assert_eq!(stabilization_depth(&ts22(), 10).unwrap(), 4);
    }

    #[test]
    fn capacity_error_when_depth_does_not_fit() {
        let err = subshift_complexity(&ts22(), 64, 1000).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn right_special_examples() {
        let census = right_special(&ts22(), 20, DEFAULT_CAP).unwrap();
        let b2: Word = "0101001010".parse().unwrap();
        assert!(census.at(10).iter().any(|r| r.word == b2));
        for q in 11..=15 {
            assert_eq!(census.at(q).len(), 2, "q = {q}");
        }
        let table = subshift_complexity(&ts22(), 20, DEFAULT_CAP).unwrap();
        assert!(cassaigne_check(&table, 1, &census.counts()));
    }

    #[test]
    fn periodic_spec_runs_out_of_right_special_words() {
        let spec = RankOneSpec::from_rows(&[&[0, 0]], Tail::RepeatLast).unwrap();
        let census = right_special(&spec, 8, DEFAULT_CAP).unwrap();
        assert!(census.counts().contains(&0));
        let table = subshift_complexity(&spec, 8, DEFAULT_CAP).unwrap();
        assert_eq!(table.values(), &[1; 8]);
        assert_eq!(detect_quasi_sturmian(&table, 2), None);
    }

    #[test]
    fn cassaigne_detects_violation() {
        let table = ComplexityTable::from_values(vec![2, 3, 4, 5]).unwrap();
        assert!(cassaigne_check(&table, 1, &[1, 1, 1]));
        assert!(!cassaigne_check(&table, 1, &[1, 2, 1]));
        assert!(!cassaigne_check(&table, 1, &[1, 1]));
    }

    #[test]
    fn quasi_sturmian_detector() {
        let sturmian = ComplexityTable::from_values((1..=50).map(|q| q + 1).collect()).unwrap();
        assert_eq!(detect_quasi_sturmian(&sturmian, 10), Some(1));
        let constant = ComplexityTable::from_values(vec![1; 50]).unwrap();
        assert_eq!(detect_quasi_sturmian(&constant, 10), None);
        let table = subshift_complexity(&ts22(), 388, DEFAULT_CAP).unwrap();
        assert_eq!(detect_quasi_sturmian(&table, 64), None);
    }

    #[test]
    fn ratio_profile_on_sturmian_table() {
        let sturmian = ComplexityTable::from_values((1..=50).map(|q| q + 1).collect()).unwrap();
        let prof = ratio_profile(&sturmian, 10..=50).unwrap();
        assert_eq!(prof.max_ratio, rat(11, 10));
        assert_eq!(prof.argmax_ratio, 10);
        assert!(ratio_profile(&sturmian, 10..=51).is_err());
    }

    #[test]
    fn ratio_profile_the_ts_window() {
        let table = subshift_complexity(&ts22(), 388, DEFAULT_CAP).unwrap();
        let prof = ratio_profile(&table, 65..=388).unwrap();
        // the band of increment 2 ends at q = 1.5 h_3 = 96, so p(q)/q peaks at 97
        assert_eq!(prof.argmax_ratio, 97);
        assert_eq!(prof.max_ratio, rat(161, 97));
        assert_eq!(table.ratio(388), rat(3, 2));
        assert_eq!(prof.argmin_ratio, 195);
        assert_eq!(prof.min_ratio, rat(259, 195));
    }

    #[test]
    fn witness_the_ts() {
        let w = lower_bound_witness(&ts22(), 2, 3, DEFAULT_CAP).unwrap().unwrap();
        assert_eq!((w.q, w.p), (16, 26));
        let table = subshift_complexity(&ts22(), 64, DEFAULT_CAP).unwrap();
        assert_eq!(table.p(55), 87);
        let w1 = lower_bound_witness(&ts22(), 1, 3, DEFAULT_CAP).unwrap().unwrap();
        assert!((1..=10).contains(&w1.q));
    }

    #[test]
    fn split_constants() {
        assert_eq!(split_constant(&ts22(), 2, DEFAULT_CAP).unwrap(), 1);
        let f = RankOneSpec::named("ferenczi").unwrap();
        assert_eq!(split_constant(&f, 2, DEFAULT_CAP).unwrap(), 1);
        assert_eq!(split_constant_of(&"0100011".parse().unwrap()), 3);
        let spec = RankOneSpec::from_rows(&[&[0, 2]], Tail::RepeatLast).unwrap();
        assert_eq!(split_constant(&spec, 2, DEFAULT_CAP).unwrap(), 3);
    }

    #[test]
    fn three_value_precondition() {
        let err = three_value_ratio_witness(&ts22(), &[2, 3], DEFAULT_CAP).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }
}
