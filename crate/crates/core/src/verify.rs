//! Named check suites over a spec, reported one line per check.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::complexity::{self, cassaigne_check, detect_quasi_sturmian, right_special_counts, LanguageSample};
use crate::construction::{heights_u64, RankOneSpec};
use crate::error::{Error, Result};
use crate::family::rat;
use crate::tower::{finite_measure_report, kappa_check, Tower, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Indeterminate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub measured: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    fn push(&mut self, name: impl Into<String>, status: Status, expected: impl ToString, measured: impl ToString) {
        self.lines.push(CheckLine {
            name: name.into(),
            status,
            expected: expected.to_string(),
            measured: measured.to_string(),
        });
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, expected: impl ToString, measured: impl ToString) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(name, status, expected, measured);
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != Status::Fail)
    }

    /// `name<TAB>status<TAB>expected<TAB>measured`, one line per check.
    pub fn to_tsv(&self) -> String {
        self.lines
            .iter()
            .map(|l| format!("{}\t{}\t{}\t{}\n", l.name, l.status, l.expected, l.measured))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// `p(h_n) = (1 + 1/L_{n-1}) h_n` against brute force (the `(gamma_n, L_n)` family only).
    Comp,
    /// Return-time lower bounds `kappa^ell mu(I)` on simulated columns.
    Kappa,
    /// Monotonicity, tail shape and the `p(q) >= q + 1` floor.
    Complexity,
    /// `p(q + 1) - p(q)` against the right-special count.
    Cassaigne,
    /// Column measures and the bounded-spacer growth estimate.
    FiniteMeasure,
}

impl Profile {
    pub const ALL: [Profile; 5] = [
        Profile::Comp,
        Profile::Kappa,
        Profile::Complexity,
        Profile::Cassaigne,
        Profile::FiniteMeasure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Comp => "comp",
            Profile::Kappa => "kappa",
            Profile::Complexity => "complexity",
            Profile::Cassaigne => "cassaigne",
            Profile::FiniteMeasure => "finite-measure",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown profile `{name}`")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_q: usize,
    pub cap: u64,
    pub stages: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_q: 2000,
            cap: crate::construction::DEFAULT_CAP,
            stages: 8,
        }
    }
}

/// Language sample for the largest `Q <= max_q` among `max_q` and the
/// heights below it that fits under the cap.
pub fn sample_within_cap(spec: &RankOneSpec, max_q: usize, cap: u64) -> Result<LanguageSample> {
    let mut candidates = vec![max_q];
    let mut count = 1;
    loop {
        let hs = crate::construction::heights(spec, count)?;
        let h = &hs[count - 1];
        if h >= &BigUint::from(max_q) {
            break;
        }
        count += 1;
    }
    let hs = crate::construction::heights(spec, count)?;
    candidates.extend(
        hs.iter()
            .rev()
            .filter_map(|h| usize::try_from(h).ok())
            .filter(|&h| h >= 2 && h < max_q),
    );
    let mut last = None;
    for q in candidates {
        match complexity::language_sample(spec, q, cap) {
            Ok(s) => return Ok(s),
            Err(e) if e.is_capacity() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::InvalidParameter("no feasible Q".into())))
}

pub fn verify_suite(spec: &RankOneSpec, profile: Profile, opts: &VerifyOptions) -> Result<Report> {
    let mut report = Report::default();
    match profile {
        Profile::Comp => comp(spec, opts, &mut report)?,
        Profile::Kappa => kappa(spec, &mut report)?,
        Profile::Complexity => complexity_shape(spec, opts, &mut report)?,
        Profile::Cassaigne => cassaigne(spec, opts, &mut report)?,
        Profile::FiniteMeasure => finite_measure(spec, opts, &mut report)?,
    }
    Ok(report)
}

fn comp(spec: &RankOneSpec, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let Some(params) = spec.the_ts_params() else {
        report.push("comp", Status::Skip, "the_ts family", spec.family());
        return Ok(());
    };
    let hs = heights_u64(spec, 4)?;
    let sample = sample_within_cap(spec, hs[3] as usize, opts.cap)?;
    for n in 2..=4 {
        let h = hs[n - 1];
        if h as usize > sample.max_q {
            report.push(format!("p(h_{n})"), Status::Skip, "within cap", "beyond cap");
            continue;
        }
        let expected = rat(&BigUint::from(h), &BigUint::from(1u32))
            * (BigRational::from_integer(1.into()) + rat(&BigUint::from(1u32), &params.l(n - 1)?));
        let measured = sample.table.p(h as usize);
        report.check(
            format!("p(h_{n})"),
            expected == rat(&BigUint::from(measured), &BigUint::from(1u32)),
            expected,
            measured,
        );
    }
    Ok(())
}

fn kappa(spec: &RankOneSpec, report: &mut Report) -> Result<()> {
    let tower = Tower::new(spec, 9)?;
    for n in 3..=5 {
        for ell in 1..=2 {
            let k = kappa_check(&tower, n, ell, ell as u64, n + ell + 2)?;
            let name = format!("kappa n={n} ell={ell}");
            for (target, iv, verdict) in [
                ("self", &k.self_target, k.self_verdict),
                ("below", &k.below_target, k.below_verdict),
            ] {
                let status = match verdict {
                    Verdict::Holds => Status::Pass,
                    Verdict::Fails => Status::Fail,
                    Verdict::Indeterminate => Status::Indeterminate,
                };
                report.push(
                    format!("{name} {target}"),
                    status,
                    format!(">= {}", k.bound),
                    format!("[{}, {}]", iv.lo, iv.hi),
                );
            }
        }
    }
    Ok(())
}

fn complexity_shape(spec: &RankOneSpec, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let sample = sample_within_cap(spec, opts.max_q, opts.cap)?;
    let table = &sample.table;
    let q_max = table.max_q();
    report.check("nondecreasing", table.is_nondecreasing(), "true", table.is_nondecreasing());
    let periodic = (1..=q_max).any(|q| table.p(q) <= q as u64);
    let tail_start = q_max / 2 + 1;
    let tail = if periodic {
        format!("eventually_constant(p={})", table.p(q_max))
    } else if let Some(c) = detect_quasi_sturmian(table, tail_start) {
        format!("quasi_sturmian(c={c})")
    } else {
        "growing".to_string()
    };
    report.push("tail_shape", Status::Pass, "-", format!("{tail} on [{tail_start}, {q_max}]"));
    if periodic {
        report.push("hedlund_morse", Status::Skip, "aperiodic", "periodic");
    } else {
        let ok = complexity::satisfies_hedlund_morse(table);
        report.check("hedlund_morse", ok, format!("p(q) >= q+1 on 1..={q_max}"), ok);
    }
    Ok(())
}

fn cassaigne(spec: &RankOneSpec, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let sample = sample_within_cap(spec, opts.max_q, opts.cap)?;
    let rs = right_special_counts(&sample);
    let ok = cassaigne_check(&sample.table, 1, &rs);
    report.check(
        "cassaigne",
        ok,
        format!("delta(q) = rs(q) on 1..{}", sample.max_q),
        ok,
    );
    Ok(())
}

fn finite_measure(spec: &RankOneSpec, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let rep = finite_measure_report(spec, opts.stages)?;
    for (n, m) in rep.column_measures.iter().enumerate() {
        report.push(format!("mu(C_{})", n + 1), Status::Pass, "-", m);
    }
    report.push(
        "partial_sum",
        Status::Pass,
        "-",
        rep.partial_sums.last().expect("stages >= 1"),
    );
    let source = if rep.k_declared { "declared" } else { "window max" };
    report.check(
        "bounded",
        rep.bounded,
        format!("mu(C_(n+1)) <= (1 + k/2^(n-1)) mu(C_n), k={} ({source})", rep.k),
        rep.bounded,
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{Tail, TheTsParams};

    #[test]
    fn profiles_pass_on_known_specs() {
        let ts = RankOneSpec::the_ts(TheTsParams::constant(2, 2).unwrap());
        let chacon = RankOneSpec::named("chacon").unwrap();
        let opts = VerifyOptions {
            max_q: 500,
            ..Default::default()
        };
        let comp = verify_suite(&ts, Profile::Comp, &opts).unwrap();
        assert!(comp.passed());
        assert_eq!(comp.lines.len(), 3);
        assert_eq!(comp.lines[0].measured, "15");
        for p in Profile::ALL {
            for spec in [&ts, &chacon] {
                assert!(verify_suite(spec, p, &opts).unwrap().passed(), "{}", p.name());
            }
        }
    }

    #[test]
    fn odometer_tail_is_constant() {
        let odo = RankOneSpec::from_rows(&[&[0, 0]], Tail::RepeatLast).unwrap();
        let rep = verify_suite(&odo, Profile::Complexity, &VerifyOptions::default()).unwrap();
        assert!(rep.passed());
        assert!(rep.to_tsv().contains("eventually_constant(p=1)"));
        assert!(rep.to_tsv().contains("hedlund_morse\tskip"));
    }
}
