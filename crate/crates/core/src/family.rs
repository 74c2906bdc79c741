//! Closed forms for the family `B_{n+1} = ((B_n 1)^{gamma_n} B_n)^{L_n}`:
//! piecewise-linear complexity, its limit points, right-special
//! classification, and recipes that pick `(gamma_n, L_n)` against a growth
//! function.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complexity::{RightSpecialCensus, RsFamily};
use crate::construction::{self, RankOneSpec, RuleBehavior, SeqRule, Tail, TheTsParams};
use crate::error::{Error, Result};
use crate::growth::GrowthFn;
use crate::word::Word;

pub(crate) fn rat(n: &BigUint, d: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(n.clone()), BigInt::from(d.clone()))
}

fn int(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `Delta(k) = p(k + 1) - p(k)` is `increment` for `lo < k <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Band {
    pub lo: BigUint,
    pub hi: BigUint,
    pub increment: u8,
}

impl Band {
    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains(&self, k: &BigUint) -> bool {
        &self.lo < k && k <= &self.hi
    }

    /// `|(lo, hi] ∩ [a, b]|`
    fn overlap(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let start = (&self.lo + 1u32).max(a.clone());
        let end = (&self.hi).min(b).clone();
        if start > end {
            BigUint::zero()
        } else {
            end - start + 1u32
        }
    }
}

/// Increments of `p` across one stage `(h_n, h_{n+1}]`.
///
/// Thresholds are `h_n`, `(2 - 1/L_{n-1}) h_n`, `(gamma_n + 1) h_n + gamma_n`,
/// `(2 gamma_n + 1) h_n + 2 gamma_n` and `h_{n+1}`. At `n = 1` the first band
/// is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakpointProfile {
    pub n: usize,
    pub height: BigUint,
    pub next_height: BigUint,
    /// `p(h_n)`
    pub anchor: BigUint,
    pub bands: [Band; 4],
}

impl BreakpointProfile {
    pub fn thresholds(&self) -> [BigUint; 5] {
        [
            self.height.clone(),
            self.bands[0].hi.clone(),
            self.bands[1].hi.clone(),
            self.bands[2].hi.clone(),
            self.next_height.clone(),
        ]
    }

    /// `Delta(k)` for `h_n <= k <= h_{n+1}`.
    pub fn delta(&self, k: &BigUint) -> Option<u8> {
        if k == &self.height {
            return Some(1);
        }
        self.bands.iter().find(|b| b.contains(k)).map(|b| b.increment)
    }

    /// `p(q)` for `h_n <= q <= h_{n+1}`.
    pub fn p(&self, q: &BigUint) -> Option<BigUint> {
        if q < &self.height || q > &self.next_height {
            return None;
        }
        if q == &self.height {
            return Some(self.anchor.clone());
        }
        let last = q - 1u32;
        let from = &self.height + 1u32;
        let mut p = &self.anchor + 1u32;
        for band in &self.bands {
            p += band.overlap(&from, &last) * band.increment;
        }
        Some(p)
    }
}

pub fn breakpoint_profile(params: &TheTsParams, n: usize) -> Result<BreakpointProfile> {
    if n == 0 {
        return Err(Error::InvalidParameter("stages are indexed from 1".into()));
    }
    let hs = params.heights(n + 1)?;
    let h = hs[n - 1].clone();
    let next_height = hs[n].clone();
    let g = params.gamma(n)?;
    let (t1, anchor) = if n == 1 {
        (h.clone(), BigUint::from(2u32))
    } else {
        let l_prev = params.l(n - 1)?;
        let part = &h / &l_prev;
        (&h + &h - &part, &h + part)
    };
    let t2 = (&g + 1u32) * &h + &g;
    let t3 = (&g * 2u32 + 1u32) * &h + &g * 2u32;
    let band = |lo: &BigUint, hi: &BigUint, increment| Band {
        lo: lo.clone(),
        hi: hi.clone(),
        increment,
    };
    let bands = [
        band(&h, &t1, 2),
        band(&t1, &t2, 1),
        band(&t2, &t3, 2),
        band(&t3, &next_height, 1),
    ];
    Ok(BreakpointProfile {
        n,
        height: h,
        next_height,
        anchor,
        bands,
    })
}

/// The unique `n` with `h_n < q <= h_{n+1}`, for `q >= 2`.
pub fn stage_of_length(params: &TheTsParams, q: &BigUint) -> Result<usize> {
    if q < &BigUint::from(2u32) {
        return Err(Error::InvalidParameter("need q >= 2".into()));
    }
    let mut h = BigUint::one();
    let mut n = 1;
    loop {
        let g = params.gamma(n)?;
        let next = params.l(n)? * ((&g + 1u32) * &h + &g);
        if q <= &next {
            return Ok(n);
        }
        h = next;
        n += 1;
    }
}

/// Exact `p(q)` from the piecewise increments, without building any word.
pub fn predicted_complexity(params: &TheTsParams, q: &BigUint) -> Result<BigUint> {
    if q.is_zero() {
        return Err(Error::InvalidParameter("need q >= 1".into()));
    }
    if q.is_one() {
        return Ok(BigUint::from(2u32));
    }
    let n = stage_of_length(params, q)?;
    Ok(breakpoint_profile(params, n)?
        .p(q)
        .expect("q lies in its own stage"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedLimits {
    pub liminf: BigRational,
    pub limsup: BigRational,
}

/// One full period of `(L_{n-1}, gamma_n)` past both preperiods.
fn joint_window(l: &SeqRule, g: &SeqRule) -> Option<RangeInclusive<usize>> {
    match (l.behavior(), g.behavior()) {
        (
            RuleBehavior::Periodic {
                preperiod: lp,
                period: lq,
            },
            RuleBehavior::Periodic {
                preperiod: gp,
                period: gq,
            },
        ) => {
            let start = (lp + 2).max(gp + 1).max(2);
            Some(start..=start + lq.lcm(&gq) - 1)
        }
        _ => None,
    }
}

fn period_values(rule: &SeqRule, offset: usize) -> Vec<BigUint> {
    match rule.behavior() {
        RuleBehavior::Periodic { preperiod, period } => (preperiod + 1..=preperiod + period)
            .map(|n| rule.value(n) + offset)
            .collect(),
        RuleBehavior::Divergent => Vec::new(),
    }
}

/// Checks `gamma_n / h_n` is decreasing on a window of stages, as a finite
/// stand-in for `gamma_n / h_n -> 0`.
fn gamma_over_height_decreasing(params: &TheTsParams) -> Result<bool> {
    const WINDOW: usize = 10;
    let hs = params.heights(WINDOW)?;
    let ratios: Vec<BigRational> = (3..=WINDOW)
        .map(|n| Ok(rat(&params.gamma(n)?, &hs[n - 1])))
        .collect::<Result<_>>()?;
    Ok(ratios.windows(2).all(|w| w[1] < w[0]))
}

/// `liminf p(q)/q = 1 + liminf 1/max(L_{n-1}, gamma_n + 1)` and
/// `limsup p(q)/q = 3/2 + limsup 1/(4 min(L_{n-1}, gamma_n + 1) - 2)`.
pub fn predicted_limits(params: &TheTsParams) -> Result<PredictedLimits> {
    let (l, g) = (params.l_rule(), params.gamma_rule());
    if !g.is_bounded() && !gamma_over_height_decreasing(params)? {
        return Err(Error::Indeterminate(
            "gamma_n / h_n is not decreasing on the test window".into(),
        ));
    }
    let one = BigRational::one();
    let three_halves = BigRational::new(3.into(), 2.into());
    let inv_4m_2 = |m: &BigUint| {
        BigRational::new(
            BigInt::one(),
            BigInt::from(m.clone()) * 4 - BigInt::from(2),
        )
    };
    if let Some(window) = joint_window(l, g) {
        let mut inf: Option<BigRational> = None;
        let mut sup: Option<BigRational> = None;
        for n in window {
            let a = params.l(n - 1)?;
            let b = params.gamma(n)? + 1u32;
            let lo = rat(&BigUint::one(), (&a).max(&b));
            let hi = inv_4m_2((&a).min(&b));
            inf = Some(inf.map_or(lo.clone(), |x| x.min(lo)));
            sup = Some(sup.map_or(hi.clone(), |x| x.max(hi)));
        }
        return Ok(PredictedLimits {
            liminf: one + inf.expect("nonempty window"),
            limsup: three_halves + sup.expect("nonempty window"),
        });
    }
    // at least one rule diverges, so max(L_{n-1}, gamma_n + 1) -> infinity
    let sup = match (l.is_bounded(), g.is_bounded()) {
        (false, true) => period_values(g, 1).iter().map(inv_4m_2).max(),
        (true, false) => period_values(l, 0).iter().map(inv_4m_2).max(),
        _ => None,
    };
    Ok(PredictedLimits {
        liminf: one,
        limsup: three_halves + sup.unwrap_or_else(BigRational::zero),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Less,
    LessEq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Less => "<",
            Relation::LessEq => "<=",
        })
    }
}

/// An exact inequality `lhs rel rhs` emitted by a parameter recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub stage: Option<usize>,
    pub claim: String,
    pub lhs: BigRational,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Certificate {
    fn new(
        stage: Option<usize>,
        claim: impl Into<String>,
        lhs: BigRational,
        relation: Relation,
        rhs: BigRational,
    ) -> Self {
        Certificate {
            stage,
            claim: claim.into(),
            lhs,
            relation,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Less => self.lhs < self.rhs,
            Relation::LessEq => self.lhs <= self.rhs,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.stage {
            write!(f, "n={n}: ")?;
        }
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.claim,
            self.lhs,
            self.relation,
            self.rhs,
            if self.holds() { "ok" } else { "FAILED" }
        )
    }
}

/// Parameters from a recipe, fixed for stages `1..=stages` and continued by
/// repeating the last value.
#[derive(Clone, Debug)]
pub struct ParamChoice {
    pub params: TheTsParams,
    pub stages: usize,
    pub certificates: Vec<Certificate>,
}

impl ParamChoice {
    pub fn all_hold(&self) -> bool {
        self.certificates.iter().all(Certificate::holds)
    }
}

fn positive_parts(eps: &BigRational) -> Result<(BigUint, BigUint)> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
    }
    Ok((
        eps.numer().magnitude().clone(),
        eps.denom().magnitude().clone(),
    ))
}

/// Smallest `gamma >= 2` with `1/(4 gamma + 2) < eps`.
pub fn minimal_gamma(eps: &BigRational) -> Result<BigUint> {
    let (num, den) = positive_parts(eps)?;
    let two = BigUint::from(2u32);
    let g = if den >= &num * 2u32 {
        (&den - &num * 2u32) / (&num * 4u32) + 1u32
    } else {
        BigUint::one()
    };
    Ok(g.max(two))
}

/// Constant `gamma` with `1/(4 gamma + 2) < eps` and
/// `L_n = max(2, n + 1, ceil(q_n / ((gamma + 1) h_n + gamma)))`, where `q_n`
/// is the least `q` with `f*(q) > (gamma + 1) h_n + gamma`.
pub fn choose_params_minimal(eps: &BigRational, f: &GrowthFn, stages: usize) -> Result<ParamChoice> {
    if stages == 0 {
        return Err(Error::InvalidParameter("need at least one stage".into()));
    }
    let gamma = minimal_gamma(eps)?;
    let mut certificates = vec![Certificate::new(
        None,
        "1/(4 gamma + 2) < epsilon",
        rat(&BigUint::one(), &(&gamma * 4u32 + 2u32)),
        Relation::Less,
        eps.clone(),
    )];
    let mut ls = Vec::with_capacity(stages);
    let mut h = BigUint::one();
    for n in 1..=stages {
        let x = (&gamma + 1u32) * &h + &gamma;
        let q_n = f.min_arg_exceeding(&x)?;
        let l = q_n
            .div_ceil(&x)
            .max(BigUint::from(n + 1))
            .max(BigUint::from(2u32));
        certificates.push(Certificate::new(
            Some(n),
            "(gamma + 1) h_n + gamma < f*(q_n)",
            int(&x),
            Relation::Less,
            int(&f.star_floor(&q_n)),
        ));
        certificates.push(Certificate::new(
            Some(n),
            "q_n <= L_n ((gamma + 1) h_n + gamma)",
            int(&q_n),
            Relation::LessEq,
            int(&(&l * &x)),
        ));
        h = &l * &x;
        ls.push(l);
    }
    let params = TheTsParams::new(
        SeqRule::Constant(gamma.clone()),
        SeqRule::List {
            values: ls,
            tail: Tail::RepeatLast,
        },
    )?;
    anchor_certificates(&params, f, 2..=stages + 1, &mut certificates)?;
    // the recipe keeps L_n >= n + 1, so the limit is that of a divergent L
    let asymptotic = TheTsParams::new(
        SeqRule::Constant(gamma),
        SeqRule::Linear {
            slope: BigUint::one(),
            intercept: BigUint::one(),
        },
    )?;
    certificates.push(Certificate::new(
        None,
        "limsup p(q)/q < 3/2 + epsilon",
        predicted_limits(&asymptotic)?.limsup,
        Relation::Less,
        BigRational::new(3.into(), 2.into()) + eps,
    ));
    Ok(ParamChoice {
        params,
        stages,
        certificates,
    })
}

/// `p(h_n) < h_n + f(h_n)` at each listed stage.
fn anchor_certificates(
    params: &TheTsParams,
    f: &GrowthFn,
    stages: RangeInclusive<usize>,
    out: &mut Vec<Certificate>,
) -> Result<()> {
    let hs = params.heights(*stages.end())?;
    for n in stages {
        let h = &hs[n - 1];
        out.push(Certificate::new(
            Some(n),
            "p(h_n) < h_n + f(h_n)",
            int(&predicted_complexity(params, h)?),
            Relation::Less,
            int(&(h + f.star_floor(h))),
        ));
    }
    Ok(())
}

/// `gamma_1 = L_1 = 2`; for `n >= 2`, `gamma_n` is least with
/// `h_n / 2 < f*(gamma_n)` and `L_n = m_n!` with `m_n > n` least such that
/// `(gamma_n + 1) h_n + gamma_n < f*(L_n)`.
pub fn choose_params_totally_ergodic(f: &GrowthFn, stages: usize) -> Result<ParamChoice> {
    if stages == 0 {
        return Err(Error::InvalidParameter("need at least one stage".into()));
    }
    let two = BigUint::from(2u32);
    let mut gammas = vec![two.clone()];
    let mut ls = vec![two.clone()];
    let mut certificates = Vec::new();
    let mut h = BigUint::from(10u32);
    for n in 2..=stages {
        let g = f.min_arg_exceeding(&(&h / 2u32))?.max(two.clone());
        let x = (&g + 1u32) * &h + &g;
        let threshold = f.min_arg_exceeding(&x)?;
        let mut m = n + 1;
        let mut l: BigUint = (1..=m).fold(BigUint::one(), |acc, k| acc * k);
        while l < threshold {
            m += 1;
            l *= m;
        }
        certificates.push(Certificate::new(
            Some(n),
            "h_n / 2 < f*(gamma_n)",
            rat(&h, &two),
            Relation::Less,
            int(&f.star_floor(&g)),
        ));
        certificates.push(Certificate::new(
            Some(n),
            "(gamma_n + 1) h_n + gamma_n < f*(L_n)",
            int(&x),
            Relation::Less,
            int(&f.star_floor(&l)),
        ));
        h = &l * &x;
        gammas.push(g);
        ls.push(l);
    }
    let params = TheTsParams::new(
        SeqRule::List {
            values: gammas,
            tail: Tail::RepeatLast,
        },
        SeqRule::List {
            values: ls,
            tail: Tail::RepeatLast,
        },
    )?;
    anchor_certificates(&params, f, 2..=stages + 1, &mut certificates)?;
    Ok(ParamChoice {
        params,
        stages,
        certificates,
    })
}

/// Constant `gamma_n = gamma`, `L_n = gamma + 1` with `gamma` least such that
/// `1/(gamma + 1) < eps`.
pub fn choose_params_msj(eps: &BigRational) -> Result<ParamChoice> {
    let (num, den) = positive_parts(eps)?;
    let gamma = (den / num).max(BigUint::from(2u32));
    let l = &gamma + 1u32;
    let params = TheTsParams::new(SeqRule::Constant(gamma.clone()), SeqRule::Constant(l.clone()))?;
    let limits = predicted_limits(&params)?;
    let one = BigRational::one();
    let certificates = vec![
        Certificate::new(
            None,
            "1/(gamma + 1) < epsilon",
            rat(&BigUint::one(), &l),
            Relation::Less,
            eps.clone(),
        ),
        Certificate::new(
            None,
            "liminf p(q)/q < 1 + epsilon",
            limits.liminf,
            Relation::Less,
            &one + eps,
        ),
        Certificate::new(
            None,
            "limsup p(q)/q < 3/2 + epsilon",
            limits.limsup,
            Relation::Less,
            BigRational::new(3.into(), 2.into()) + eps,
        ),
    ];
    Ok(ParamChoice {
        params,
        stages: 1,
        certificates,
    })
}

/// The family and stage of a right-special word of length at least 2.
pub fn classify_rs(w: &Word, params: &TheTsParams, cap: u64) -> Result<(RsFamily, usize)> {
    let q = BigUint::from(w.len());
    let n = stage_of_length(params, &q)?;
    let spec = RankOneSpec::the_ts(params.clone());
    let words = construction::materialize_all(&spec, n + 1, cap)?;
    let hs = params.heights(n + 1)?;
    let (b_n, b_next) = (&words[n - 1], &words[n]);
    let h = &hs[n - 1];
    let g = params.gamma(n)?;

    let mut hits = Vec::new();
    if b_next.ends_with(w) {
        hits.push(RsFamily::SuffixOfNext);
    }
    let middle_lo = (&g + 1u32) * h + &g;
    let middle_hi = (&g * 2u32 + 1u32) * h + &g * 2u32;
    if middle_lo < q && q <= middle_hi {
        let mut unit = b_n.clone();
        unit.push(1);
        let middle = unit.repeat(2 * usize::try_from(&g).expect("fits: q lies above it")).concat(b_n);
        if middle.ends_with(w) {
            hits.push(RsFamily::Middle);
        }
    }
    if n >= 2 {
        let l_prev = params.l(n - 1)?;
        let upper = h * 2u32 - h / &l_prev;
        if h < &q && q <= upper {
            let block_len = h / &l_prev;
            let block = b_n.slice(0, usize::try_from(&block_len).expect("below h_n"));
            let reps = usize::try_from(&l_prev).expect("divides h_n") - 1;
            let third = block.repeat(reps).concat(b_n);
            if third.ends_with(w) {
                hits.push(RsFamily::Third);
            }
        }
    }
    match hits.as_slice() {
        [family] => Ok((*family, n)),
        [] => Err(Error::Classification(format!(
            "length {} word matches no family at stage {n}",
            w.len()
        ))),
        many => Err(Error::Classification(format!(
            "length {} word matches {many:?} at stage {n}",
            w.len()
        ))),
    }
}

/// Fills in the family and stage of every record of length at least 2.
pub fn classify_census(census: &mut RightSpecialCensus, params: &TheTsParams, cap: u64) -> Result<()> {
    for records in census.by_length.iter_mut().skip(1) {
        for rec in records {
            let (family, n) = classify_rs(&rec.word, params, cap)?;
            rec.family = Some(family);
            rec.stage = Some(n);
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WmCondition {
    /// `(L_n - 1) / (L_n (gamma_n + 1))` per stage of the window.
    pub zero_ratios: Vec<BigRational>,
    /// `gamma_n / (gamma_n + 1)` per stage of the window.
    pub one_ratios: Vec<BigRational>,
    pub kappa: BigRational,
    pub holds: bool,
}

/// Proportions of interior spacers equal to 0 and to 1 on a window of stages.
/// `holds` needs a positive window minimum and a bounded `gamma` rule, since
/// an unbounded one sends both proportions' minimum to 0.
pub fn wm_condition_check(params: &TheTsParams, window: RangeInclusive<usize>) -> Result<WmCondition> {
    if window.is_empty() || *window.start() == 0 {
        return Err(Error::InvalidParameter("need a nonempty window of stages >= 1".into()));
    }
    let mut zero_ratios = Vec::new();
    let mut one_ratios = Vec::new();
    for n in window {
        let g = params.gamma(n)?;
        let l = params.l(n)?;
        zero_ratios.push(rat(&(&l - 1u32), &(&l * (&g + 1u32))));
        one_ratios.push(rat(&g, &(g.clone() + 1u32)));
    }
    let kappa = zero_ratios
        .iter()
        .chain(&one_ratios)
        .min()
        .cloned()
        .expect("nonempty window");
    let holds = kappa.is_positive() && params.gamma_rule().is_bounded();
    Ok(WmCondition {
        zero_ratios,
        one_ratios,
        kappa,
        holds,
    })
}
