//! Exact cutting-and-stacking dynamics.
//!
//! Measures are unnormalized: `mu(I_1) = 1`, so `mu(I_n) = prod_{k<n} 1/(r_k + 1)`
//! and `mu(C_n) = h_n mu(I_n)`. Sets are finite unions of levels of one
//! column. `T` is undefined on the top level of each column; images that
//! need it are refined into deeper columns up to a depth cap, and whatever
//! mass is still undetermined is reported alongside the exact part.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::construction::{self, heights, RankOneSpec, SpacerRow};
use crate::error::{Error, Result};
use crate::word::Word;

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn big(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnView {
    pub n: usize,
    pub height: BigUint,
    pub level_width: BigRational,
    pub column_measure: BigRational,
}

/// A union of levels `I_{depth, j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelSet {
    pub depth: usize,
    /// Sorted, without repeats.
    pub indices: Vec<u64>,
}

impl LevelSet {
    pub fn new(depth: usize, mut indices: Vec<u64>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        LevelSet { depth, indices }
    }

    pub fn level(depth: usize, j: u64) -> Self {
        LevelSet {
            depth,
            indices: vec![j],
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    fn intersection_len(&self, other: &LevelSet) -> usize {
        debug_assert_eq!(self.depth, other.depth);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.indices.len() && j < other.indices.len() {
            match self.indices[i].cmp(&other.indices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageResult {
    pub resolved: LevelSet,
    /// Mass whose image lies past the top of the column at the depth cap.
    pub unresolved_mass: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn exact(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Columns `C_1..=C_depth` with machine-size heights.
#[derive(Clone, Debug)]
pub struct Tower {
    heights: Vec<u64>,
    /// `rows[k - 1]` builds `C_{k+1}` from `C_k`.
    rows: Vec<SpacerRow>,
    /// `starts[k - 1][i]`: height in `C_{k+1}` where copy `i` of `C_k` begins.
    starts: Vec<Vec<u64>>,
    widths: Vec<BigRational>,
}

impl Tower {
    pub fn new(spec: &RankOneSpec, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidParameter("tower depth must be at least 1".into()));
        }
        let heights = construction::heights_u64(spec, depth)?;
        let mut rows = Vec::with_capacity(depth - 1);
        let mut starts = Vec::with_capacity(depth - 1);
        let mut widths = vec![BigRational::one()];
        for k in 1..depth {
            let row = spec.row(k)?;
            let mut at = 0u64;
            let mut st = Vec::with_capacity(row.subcolumns());
            for &s in row.spacers() {
                st.push(at);
                at += heights[k - 1] + s;
            }
            debug_assert_eq!(at, heights[k]);
            let w = &widths[k - 1] / BigInt::from(row.subcolumns());
            widths.push(w);
            rows.push(row);
            starts.push(st);
        }
        Ok(Tower {
            heights,
            rows,
            starts,
            widths,
        })
    }

    pub fn depth(&self) -> usize {
        self.heights.len()
    }

    pub fn height(&self, n: usize) -> u64 {
        self.heights[n - 1]
    }

    pub fn row(&self, n: usize) -> &SpacerRow {
        &self.rows[n - 1]
    }

    /// `mu(I_n)`
    pub fn level_width(&self, n: usize) -> &BigRational {
        &self.widths[n - 1]
    }

    /// `mu(C_n)`
    pub fn column_measure(&self, n: usize) -> BigRational {
        self.level_width(n) * BigInt::from(self.height(n))
    }

    pub fn column(&self, n: usize) -> ColumnView {
        ColumnView {
            n,
            height: BigUint::from(self.height(n)),
            level_width: self.level_width(n).clone(),
            column_measure: self.column_measure(n),
        }
    }

    fn check_depth(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.depth() {
            return Err(Error::InvalidParameter(format!(
                "depth {m} outside the tower (1..={})",
                self.depth()
            )));
        }
        Ok(())
    }

    pub fn mass(&self, set: &LevelSet) -> BigRational {
        self.level_width(set.depth) * BigInt::from(set.len())
    }

    pub fn whole_column(&self, n: usize) -> LevelSet {
        LevelSet {
            depth: n,
            indices: (0..self.height(n)).collect(),
        }
    }

    /// Heights in `C_m` of the copies of `I_{n,j}`, in increasing order.
    pub fn refine(&self, n: usize, j: u64, m: usize) -> Result<Vec<u64>> {
        Ok(self.refine_set(&LevelSet::level(n, j), m)?.indices)
    }

    pub fn refine_set(&self, set: &LevelSet, m: usize) -> Result<LevelSet> {
        self.check_depth(set.depth)?;
        self.check_depth(m)?;
        if m < set.depth {
            return Err(Error::InvalidParameter(format!(
                "cannot refine depth {} to shallower depth {m}",
                set.depth
            )));
        }
        if let Some(&j) = set.indices.last() {
            if j >= self.height(set.depth) {
                return Err(Error::InvalidParameter(format!(
                    "level {j} outside column {} of height {}",
                    set.depth,
                    self.height(set.depth)
                )));
            }
        }
        let mut cur = set.indices.clone();
        for k in set.depth..m {
            let st = &self.starts[k - 1];
            // copies are disjoint and ordered, so the output stays sorted
            cur = st
                .iter()
                .flat_map(|&s| cur.iter().map(move |&j| s + j))
                .collect();
        }
        Ok(LevelSet {
            depth: m,
            indices: cur,
        })
    }

    /// Whether `I_{m,j}` is a copy of a level of `C_{m-1}`, and which one.
    pub fn parent(&self, m: usize, j: u64) -> Option<u64> {
        if m <= 1 {
            return None;
        }
        let st = &self.starts[m - 2];
        let i = st.partition_point(|&s| s <= j) - 1;
        let off = j - st[i];
        (off < self.height(m - 1)).then_some(off)
    }

    /// Symbol of `I_{m,j}`: 0 for copies of `I_{1,0}`, 1 for spacers.
    pub fn coding(&self, m: usize, j: u64) -> u8 {
        let (mut m, mut j) = (m, j);
        while m > 1 {
            match self.parent(m, j) {
                Some(p) => {
                    j = p;
                    m -= 1;
                }
                None => return 1,
            }
        }
        0
    }

    /// `T^t A` as far as columns `<= depth_cap` determine it.
    pub fn apply_t_power(&self, a: &LevelSet, t: u64, depth_cap: usize) -> Result<ImageResult> {
        self.check_depth(a.depth)?;
        self.check_depth(depth_cap)?;
        if depth_cap < a.depth {
            return Err(Error::InvalidParameter("depth cap below the set's depth".into()));
        }
        let mut resolved: Vec<(usize, u64)> = Vec::new();
        let mut unresolved = vec![0u64; depth_cap + 1];
        let mut work: Vec<(usize, u64)> = a.indices.iter().map(|&j| (a.depth, j)).collect();
        while let Some((m, j)) = work.pop() {
            if j + t < self.height(m) {
                resolved.push((m, j + t));
            } else if m == depth_cap {
                unresolved[m] += 1;
            } else {
                work.extend(self.starts[m - 1].iter().map(|&s| (m + 1, s + j)));
            }
        }
        let target = resolved.iter().map(|&(m, _)| m).max().unwrap_or(a.depth);
        let mut indices = Vec::new();
        for (m, j) in resolved {
            indices.extend(self.refine(m, j, target)?);
        }
        let unresolved_mass = unresolved
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(m, &c)| self.level_width(m) * BigInt::from(c))
            .fold(BigRational::zero(), |acc, x| acc + x);
        Ok(ImageResult {
            resolved: LevelSet::new(target, indices),
            unresolved_mass,
        })
    }

    /// `mu(T^t A ∩ B)` bracketed by the resolved part and the unresolved mass.
    pub fn measure_intersection(
        &self,
        a: &LevelSet,
        b: &LevelSet,
        t: u64,
        depth_cap: usize,
    ) -> Result<Interval> {
        let image = self.apply_t_power(a, t, depth_cap)?;
        let depth = image.resolved.depth.max(b.depth);
        let lhs = self.refine_set(&image.resolved, depth)?;
        let rhs = self.refine_set(b, depth)?;
        let lo = self.level_width(depth) * BigInt::from(lhs.intersection_len(&rhs));
        let hi = &lo + image.unresolved_mass;
        Ok(Interval { lo, hi })
    }
}

/// `min(#{i < r_k : s_{k,i} = 0}, #{i < r_k : s_{k,i} = 1}) / (r_k + 1)`.
pub fn row_kappa(row: &SpacerRow) -> BigRational {
    let zeros = row.interior().iter().filter(|&&s| s == 0).count() as u64;
    let ones = row.interior().iter().filter(|&&s| s == 1).count() as u64;
    ratio(zeros.min(ones), row.subcolumns() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

impl Verdict {
    fn of(measured: &Interval, bound: &BigRational) -> Self {
        if &measured.lo >= bound {
            Verdict::Holds
        } else if &measured.hi < bound {
            Verdict::Fails
        } else {
            Verdict::Indeterminate
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaReport {
    pub n: usize,
    pub ell: usize,
    pub j: u64,
    /// Window minimum of [`row_kappa`] over stages `n..n+ell`.
    pub kappa: BigRational,
    /// `sum_{k<ell} h_{n+k}`
    pub t: u64,
    /// `kappa^ell mu(I_n)`
    pub bound: BigRational,
    /// `mu(T^t I ∩ I)` with `I = I_{n,j}`.
    pub self_target: Interval,
    /// `mu(T^t I ∩ J)` with `J = I_{n,j-ell}`.
    pub below_target: Interval,
    pub self_verdict: Verdict,
    pub below_verdict: Verdict,
}

impl KappaReport {
    pub fn holds(&self) -> bool {
        self.self_verdict == Verdict::Holds && self.below_verdict == Verdict::Holds
    }
}

/// Return-time lower bounds for a level and the level `ell` below it.
pub fn kappa_check(tower: &Tower, n: usize, ell: usize, j: u64, depth_cap: usize) -> Result<KappaReport> {
    if (j as usize) < ell {
        return Err(Error::InvalidParameter(format!("need j >= ell, got j={j}, ell={ell}")));
    }
    if n + ell > tower.depth() {
        return Err(Error::InvalidParameter(format!(
            "tower depth {} too small for n={n}, ell={ell}",
            tower.depth()
        )));
    }
    if j >= tower.height(n) {
        return Err(Error::InvalidParameter(format!("level {j} outside column {n}")));
    }
    let kappa = (n..n + ell.max(1))
        .map(|k| row_kappa(tower.row(k)))
        .min()
        .expect("nonempty window");
    let t: u64 = (n..n + ell).map(|k| tower.height(k)).sum();
    let mut bound = tower.level_width(n).clone();
    for _ in 0..ell {
        bound *= &kappa;
    }
    let i = LevelSet::level(n, j);
    let below = LevelSet::level(n, j - ell as u64);
    let self_target = tower.measure_intersection(&i, &i, t, depth_cap)?;
    let below_target = tower.measure_intersection(&i, &below, t, depth_cap)?;
    Ok(KappaReport {
        n,
        ell,
        j,
        self_verdict: Verdict::of(&self_target, &bound),
        below_verdict: Verdict::of(&below_target, &bound),
        kappa,
        t,
        bound,
        self_target,
        below_target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMeasureReport {
    /// Entry `m - 1`: `sum_{n<=m} (1/(r_n h_n)) sum_i s_{n,i}`.
    pub partial_sums: Vec<BigRational>,
    /// Entry `n - 1`: `mu(C_n)`.
    pub column_measures: Vec<BigRational>,
    /// Spacer bound used for the growth check.
    pub k: u64,
    /// Whether the bound came from the spec rather than the window.
    pub k_declared: bool,
    /// `mu(C_{n+1}) <= (1 + k/2^{n-1}) mu(C_n)` at every step of the window.
    pub bounded: bool,
}

pub fn finite_measure_report(spec: &RankOneSpec, stages: usize) -> Result<FiniteMeasureReport> {
    if stages == 0 {
        return Err(Error::InvalidParameter("need at least one stage".into()));
    }
    let hs = heights(spec, stages)?;
    let mut partial_sums = Vec::with_capacity(stages);
    let mut column_measures = Vec::with_capacity(stages);
    let mut sum = BigRational::zero();
    let mut width = BigRational::one();
    let mut max_spacer = 0;
    for n in 1..=stages {
        column_measures.push(big(&hs[n - 1]) * &width);
        let row = spec.row(n)?;
        max_spacer = max_spacer.max(row.max_spacer());
        let denom = BigUint::from(row.cuts()) * &hs[n - 1];
        sum += BigRational::new(BigInt::from(row.spacer_sum()), BigInt::from(denom));
        partial_sums.push(sum.clone());
        width /= BigInt::from(row.subcolumns());
    }
    let (k, k_declared) = match spec.spacer_bound() {
        Some(k) => (k, true),
        None => (max_spacer, false),
    };
    let bounded = column_measures.windows(2).enumerate().all(|(i, w)| {
        let factor = BigRational::one() + BigRational::new(BigInt::from(k), BigInt::one() << i);
        w[1] <= &w[0] * factor
    });
    Ok(FiniteMeasureReport {
        partial_sums,
        column_measures,
        k,
        k_declared,
        bounded,
    })
}

/// `#{occurrences of w in B_n} / (h_n - len(w))`.
pub fn empirical_measure(spec: &RankOneSpec, w: &Word, n: usize, cap: u64) -> Result<BigRational> {
    let b = construction::materialize(spec, n, cap)?;
    empirical_of(&b, w)
}

fn empirical_of(b: &Word, w: &Word) -> Result<BigRational> {
    if w.is_empty() || w.len() >= b.len() {
        return Err(Error::InvalidParameter(format!(
            "need 0 < len(w) < h_n, got len(w)={} and h_n={}",
            w.len(),
            b.len()
        )));
    }
    Ok(ratio(b.occurrences(w) as u64, (b.len() - w.len()) as u64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderCheck {
    pub empirical: BigRational,
    /// Mass of the levels of `C_n` where `w` starts, over `mu(C_n)`.
    pub tower: BigRational,
    pub gap: BigRational,
    /// `len(w) / h_n`
    pub allowed: BigRational,
}

impl CylinderCheck {
    pub fn within_bound(&self) -> bool {
        self.gap <= self.allowed
    }
}

pub fn cylinder_cross_check(spec: &RankOneSpec, w: &Word, n: usize, cap: u64) -> Result<CylinderCheck> {
    let b = construction::materialize(spec, n, cap)?;
    let empirical = empirical_of(&b, w)?;
    let h = b.len() as u64;
    let count = b.occurrences(w) as u64;
    let tower = ratio(count, h);
    let gap = (&empirical - &tower).abs();
    Ok(CylinderCheck {
        empirical,
        tower,
        gap,
        allowed: ratio(w.len() as u64, h),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WmPoint {
    pub t: u64,
    pub intersection: Interval,
    /// Cesàro average of midpoint deviations over `1..=t`.
    pub cesaro: BigRational,
    /// Average half-width of the intervals over `1..=t`.
    pub cesaro_slack: BigRational,
}

/// Heuristic correlation-decay curve: `c_T = (1/T) sum_{t<=T} |mid(mu(T^t A ∩ B)) - mu(A) mu(B) / mu(Y)|`
/// with `mu(Y) = mu(C_{depth_cap})`. A finite-depth diagnostic, not a mixing
/// verdict.
pub fn wm_diagnostic(
    tower: &Tower,
    a: &LevelSet,
    b: &LevelSet,
    t_max: u64,
    depth_cap: usize,
) -> Result<Vec<WmPoint>> {
    if t_max == 0 {
        return Err(Error::InvalidParameter("need T_max >= 1".into()));
    }
    let expected = tower.mass(a) * tower.mass(b) / tower.column_measure(depth_cap);
    let mut points = Vec::with_capacity(t_max as usize);
    let mut dev_sum = BigRational::zero();
    let mut slack_sum = BigRational::zero();
    for t in 1..=t_max {
        let iv = tower.measure_intersection(a, b, t, depth_cap)?;
        dev_sum += (iv.midpoint() - &expected).abs();
        slack_sum += iv.width() / BigInt::from(2);
        let tt = BigInt::from(t);
        points.push(WmPoint {
            t,
            cesaro: &dev_sum / &tt,
            cesaro_slack: &slack_sum / &tt,
            intersection: iv,
        });
    }
    Ok(points)
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{materialize, Tail, TheTsParams, DEFAULT_CAP};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn chacon() -> RankOneSpec {
        RankOneSpec::named("chacon").unwrap()
    }

    fn ts(g: u64, l: u64) -> RankOneSpec {
        RankOneSpec::the_ts(TheTsParams::constant(g, l).unwrap())
    }

    fn odometer() -> RankOneSpec {
        RankOneSpec::from_rows(&[&[0, 0]], Tail::RepeatLast).unwrap()
    }

    #[test]
    fn refine_examples() {
        let t = Tower::new(&chacon(), 4).unwrap();
        assert_eq!(t.refine(1, 0, 2).unwrap(), vec![0, 1, 3]);
        assert_eq!(t.refine(3, 5, 3).unwrap(), vec![5]);
        let t = Tower::new(&ts(2, 2), 3).unwrap();
        assert_eq!(t.refine(1, 0, 2).unwrap(), vec![0, 2, 4, 5, 7, 9]);
    }

    #[test]
    fn coding_matches_words() {
        for spec in [chacon(), ts(2, 2), ts(3, 2)] {
            let t = Tower::new(&spec, 4).unwrap();
            for n in 1..=4 {
                let b = materialize(&spec, n, DEFAULT_CAP).unwrap();
                let coded: Vec<u8> = (0..t.height(n)).map(|j| t.coding(n, j)).collect();
                assert_eq!(coded, b.symbols().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn refinement_preserves_mass() {
        let t = Tower::new(&ts(2, 3), 5).unwrap();
        let a = LevelSet::new(2, vec![0, 3, 7]);
        for m in 2..=5 {
            assert_eq!(t.mass(&t.refine_set(&a, m).unwrap()), t.mass(&a));
        }
    }

    #[test]
    fn apply_examples() {
        let t = Tower::new(&chacon(), 5).unwrap();
        let a = LevelSet::level(2, 0);
        let img = t.apply_t_power(&a, 0, 5).unwrap();
        assert_eq!((img.resolved.clone(), img.unresolved_mass.clone()), (a.clone(), r(0, 1)));
        // C_3 = C_2 C_2 spacer C_2; copy 0 of I_{2,0} goes to copy 1 in four steps
        let img = t.apply_t_power(&a, 4, 3).unwrap();
        assert_eq!(img.resolved, LevelSet::new(3, vec![4, 8]));
        assert_eq!(img.unresolved_mass, t.level_width(3).clone());
        let img = t.apply_t_power(&a, 2, 5).unwrap();
        assert_eq!(img.resolved, LevelSet::level(2, 2));
    }

    #[test]
    fn images_conserve_mass_and_compose() {
        let t = Tower::new(&ts(2, 2), 6).unwrap();
        let a = LevelSet::new(2, vec![1, 4, 8]);
        for (t1, t2) in [(3u64, 5u64), (10, 17), (40, 33)] {
            let one = t.apply_t_power(&a, t1 + t2, 6).unwrap();
            assert_eq!(t.mass(&one.resolved) + &one.unresolved_mass, t.mass(&a));
            let first = t.apply_t_power(&a, t1, 6).unwrap();
            let second = t.apply_t_power(&first.resolved, t2, 6).unwrap();
            if one.unresolved_mass.is_zero() && first.unresolved_mass.is_zero() && second.unresolved_mass.is_zero() {
                let d = one.resolved.depth.max(second.resolved.depth);
                assert_eq!(
                    t.refine_set(&one.resolved, d).unwrap(),
                    t.refine_set(&second.resolved, d).unwrap()
                );
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let t = Tower::new(&chacon(), 6).unwrap();
        let a = LevelSet::level(3, 2);
        assert_eq!(t.measure_intersection(&a, &a, 0, 6).unwrap(), Interval::exact(t.level_width(3).clone()));
        let b = LevelSet::level(3, 3);
        assert_eq!(t.measure_intersection(&a, &b, 0, 6).unwrap(), Interval::exact(r(0, 1)));
        let i = LevelSet::level(3, 0);
        let iv = t.measure_intersection(&i, &i, 13, 6).unwrap();
        assert!(iv.lo >= t.level_width(3) / BigInt::from(3));
    }

    #[test]
    fn kappa_examples() {
        let t = Tower::new(&chacon(), 7).unwrap();
        let k = kappa_check(&t, 3, 1, 1, 6).unwrap();
        assert_eq!(k.kappa, r(1, 3));
        assert!(k.holds());
        let k = kappa_check(&t, 3, 0, 4, 6).unwrap();
        assert_eq!(k.self_target, Interval::exact(k.bound.clone()));
        let t = Tower::new(&ts(2, 2), 6).unwrap();
        let k = kappa_check(&t, 2, 1, 3, 5).unwrap();
        assert_eq!(k.kappa, r(1, 6));
        assert!(k.holds());
        assert!(kappa_check(&t, 2, 2, 1, 5).is_err());
    }

    #[test]
    fn finite_measure_examples() {
        let rep = finite_measure_report(&chacon(), 4).unwrap();
        assert_eq!(rep.column_measures, vec![r(1, 1), r(4, 3), r(13, 9), r(40, 27)]);
        assert!(rep.bounded && !rep.k_declared);
        let rep = finite_measure_report(&odometer(), 5).unwrap();
        assert!(rep.partial_sums.iter().all(Zero::is_zero));
        assert!(rep.column_measures.iter().all(One::is_one));
        let rep = finite_measure_report(&ts(2, 2), 4).unwrap();
        assert_eq!(rep.column_measures[3], r(388, 216));
        assert!(rep.column_measures.windows(2).all(|w| w[0] <= w[1]));
        let rep = finite_measure_report(&ts(2, 2).with_spacer_bound(1), 6).unwrap();
        assert!(rep.bounded && rep.k_declared);
    }

    #[test]
    fn empirical_examples() {
        let zero: Word = "0".parse().unwrap();
        assert_eq!(empirical_measure(&ts(2, 2), &zero, 4, DEFAULT_CAP).unwrap(), r(216, 387));
        let ones: Word = "11".parse().unwrap();
        assert!(empirical_measure(&ts(3, 2), &ones, 4, DEFAULT_CAP).unwrap().is_zero());
        let c = cylinder_cross_check(&ts(2, 2), &zero, 3, DEFAULT_CAP).unwrap();
        assert_eq!((c.empirical.clone(), c.tower.clone()), (r(36, 63), r(36, 64)));
        assert!(c.within_bound());
        let c = cylinder_cross_check(&chacon(), &"01".parse().unwrap(), 3, DEFAULT_CAP).unwrap();
        assert!(c.gap <= r(2, 13));
    }

    #[test]
    fn odometer_recurs_at_heights() {
        let t = Tower::new(&odometer(), 8).unwrap();
        let a = LevelSet::level(3, 0);
        let mu = t.mass(&a);
        for s in 1..=16u64 {
            let iv = t.measure_intersection(&a, &a, s, 8).unwrap();
            if s % 4 == 0 {
                assert_eq!(iv.hi, mu);
                assert!(iv.lo >= &mu / BigInt::from(2));
            } else {
                assert!(iv.lo.is_zero());
            }
        }
    }
}
