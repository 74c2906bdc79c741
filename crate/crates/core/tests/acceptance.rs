//! End-to-end acceptance checks. Run with `cargo test -p rankone-core --test acceptance`.

use std::process::ExitCode;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use rankone_core::complexity::{
    first_witness, language_sample, ratio_profile, right_special_counts, satisfies_hedlund_morse,
    subshift_complexity, ComplexityTable,
};
use rankone_core::construction::{heights_u64, materialize, RankOneSpec, Tail, TheTsParams, DEFAULT_CAP};
use rankone_core::family::{
    choose_params_minimal, choose_params_msj, choose_params_totally_ergodic, predicted_complexity,
    predicted_limits,
};
use rankone_core::growth::GrowthFn;
use rankone_core::rewrite::{merge_stages, shift_constant, MergeSchedule};
use rankone_core::tower::{
    cylinder_cross_check, empirical_measure, finite_measure_report, kappa_check, wm_diagnostic, LevelSet,
    Tower,
};
use rankone_core::Word;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ts(gamma: u64, l: u64) -> RankOneSpec {
    RankOneSpec::the_ts(TheTsParams::constant(gamma, l).unwrap())
}

fn table(spec: &RankOneSpec, q: usize) -> ComplexityTable {
    subshift_complexity(spec, q, DEFAULT_CAP).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn f64_of(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

fn anchors() -> Outcome {
    let t = table(&ts(2, 2), 388);
    let got: Vec<u64> = [10, 64, 388].iter().map(|&q| t.p(q)).collect();
    ensure(got == [15, 96, 582], format!("p(10), p(64), p(388) = {got:?}"))?;
    Ok("p(10)=15 p(64)=96 p(388)=582".into())
}

fn count_bands() -> Outcome {
    let mut checked = 0;
    for (gamma, l) in [(2, 2), (3, 2)] {
        let spec = ts(gamma, l);
        let params = spec.the_ts_params().unwrap();
        let hs = heights_u64(&spec, 4).unwrap();
        let (h2, h4) = (hs[1] as usize, hs[3] as usize);
        let t = table(&spec, h4 + 1);
        for q in h2 + 1..=h4 {
            let pred = |k: usize| predicted_complexity(params, &BigUint::from(k)).unwrap();
            let predicted = (pred(q + 1) - pred(q)).to_i64().unwrap();
            ensure(
                t.delta(q) == predicted && (predicted == 1 || predicted == 2),
                format!("gamma={gamma} L={l} q={q}: delta {} vs predicted {predicted}", t.delta(q)),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} increments on (h_2, h_4] match"))
}

fn ratio_extremes() -> Outcome {
    let spec = ts(2, 2);
    let hs = heights_u64(&spec, 5).unwrap();
    let (h3, h4, h5) = (hs[2] as usize, hs[3] as usize, hs[4] as usize);
    let t = table(&spec, h5);
    let prof = ratio_profile(&t, h3 + 1..=h5).unwrap();
    let gap = (&prof.max_ratio - r(5, 3)).abs();
    ensure(
        gap <= r(1, h3 as i64),
        format!("max p/q = {} at q={}", prof.max_ratio, prof.argmax_ratio),
    )?;
    for h in [h4, h5] {
        ensure(t.ratio(h) == r(3, 2), format!("p(h)/h = {} at h={h}", t.ratio(h)))?;
    }

    let fer = RankOneSpec::named("ferenczi").unwrap();
    let fh = heights_u64(&fer, 6).unwrap();
    let ft = table(&fer, fh[5] as usize);
    let fp = ratio_profile(&ft, fh[3] as usize + 1..=fh[5] as usize).unwrap();
    let (hi, lo) = (f64_of(&fp.max_ratio), f64_of(&fp.min_ratio));
    ensure(
        (hi - 5.0 / 3.0).abs() <= 0.05 && (lo - 1.5).abs() <= 0.05,
        format!("ferenczi max {hi:.4}, min {lo:.4}"),
    )?;
    Ok(format!(
        "max {} at q={} (|gap| {}), p(h)/h = 3/2 at h_4, h_5; window min {}; ferenczi max {hi:.4} min {lo:.4}",
        prof.max_ratio, prof.argmax_ratio, gap, prof.min_ratio
    ))
}

fn cassaigne() -> Outcome {
    let specs = [
        ("the_ts(2,2)", ts(2, 2)),
        ("ferenczi", RankOneSpec::named("ferenczi").unwrap()),
        ("chacon", RankOneSpec::named("chacon").unwrap()),
    ];
    for (name, spec) in &specs {
        let sample = language_sample(spec, 2000, DEFAULT_CAP).unwrap();
        let rs = right_special_counts(&sample);
        for q in 1..2000 {
            ensure(
                sample.table.delta(q) == rs[q - 1] as i64,
                format!("{name} q={q}: delta {} vs rs {}", sample.table.delta(q), rs[q - 1]),
            )?;
        }
    }
    Ok("delta(q) = #RS(q) for q < 2000 on the_ts(2,2), ferenczi, chacon".into())
}

fn hedlund_morse() -> Outcome {
    let specs = [
        ts(2, 2),
        ts(3, 2),
        ts(2, 3),
        RankOneSpec::named("ferenczi").unwrap(),
        RankOneSpec::named("chacon").unwrap(),
        RankOneSpec::from_rows(&[&[0, 1, 2, 0]], Tail::RepeatLast).unwrap(),
        RankOneSpec::from_rows(&[&[1, 0], &[0, 2, 0]], Tail::RepeatCycle).unwrap(),
    ];
    for (i, spec) in specs.iter().enumerate() {
        let t = table(spec, 1500);
        ensure(satisfies_hedlund_morse(&t), format!("spec {i} violates p(q) >= q+1"))?;
    }
    Ok(format!("{} aperiodic specs, q <= 1500", specs.len()))
}

fn small_row(lo: u64, hi: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(lo..=hi, 2..=4)
}

fn rewrites() -> Outcome {
    let config = Config {
        cases: 128,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = || TestRng::deterministic_rng(RngAlgorithm::ChaCha);

    let mut merge_runner = TestRunner::new_with_rng(config.clone(), rng());
    let merge_case = (
        prop::collection::vec(small_row(0, 3), 1..=3),
        prop::collection::vec(1usize..=3, 1..=3),
    );
    merge_runner
        .run(&merge_case, |(rows, gaps)| {
            let rows: Vec<&[u64]> = rows.iter().map(Vec::as_slice).collect();
            let spec = RankOneSpec::from_rows(&rows, Tail::RepeatCycle).unwrap();
            let mut points = vec![1];
            for g in gaps {
                points.push(points.last().unwrap() + g);
            }
            let sched = MergeSchedule::new(points).unwrap();
            let merged = merge_stages(&spec, &sched).unwrap();
            for t in 1..=4 {
                let n = sched.point(t);
                let Ok(expect) = materialize(&spec, n, 200_000) else { break };
                let got = materialize(&merged, t, 200_000).unwrap();
                if got != expect {
                    return Err(TestCaseError::fail(format!("B~_{t} != B_{n}")));
                }
            }
            Ok(())
        })
        .map_err(|e| format!("merge: {e}"))?;

    let mut shift_runner = TestRunner::new_with_rng(config, rng());
    let shift_case = (0u64..=2, 1u64..=3, 1usize..=2, prop::collection::vec(small_row(0, 1), 1..=3));
    shift_runner
        .run(&shift_case, |(c, gap, big_n, picks)| {
            let d = c + gap;
            let rows: Vec<Vec<u64>> = picks
                .iter()
                .map(|p| {
                    let mut row: Vec<u64> = p.iter().map(|&b| if b == 0 { c } else { d }).collect();
                    *row.last_mut().unwrap() = 0;
                    row
                })
                .collect();
            let rows: Vec<&[u64]> = rows.iter().map(Vec::as_slice).collect();
            let spec = RankOneSpec::from_rows(&rows, Tail::RepeatCycle).unwrap();
            let shifted = shift_constant(&spec, big_n, c, d).unwrap();
            for n in 1..=big_n + 3 {
                let Ok(mut expect) = materialize(&spec, n, 200_000) else { break };
                if n > big_n {
                    expect.push_run(1, c as usize);
                }
                if materialize(&shifted, n, 400_000).unwrap() != expect {
                    return Err(TestCaseError::fail(format!("N={big_n} c={c} d={d}: B~_{n} != B_{n} 1^c")));
                }
            }
            Ok(())
        })
        .map_err(|e| format!("shift: {e}"))?;
    Ok("128 merge schedules and 128 constant shifts reproduce the original words".into())
}

fn witness() -> Outcome {
    let spec = ts(2, 2);
    let hs = heights_u64(&spec, 4).unwrap();
    let t = table(&spec, hs[3] as usize);
    let base = t.p(10) as i64 - 10;
    let (p55, threshold) = (t.p(55), r(3 * 55 + 2 * (base - 3), 2));
    ensure(
        p55 == 87 && BigRational::from_integer(p55.into()) >= threshold,
        format!("p(55) = {p55}, threshold {threshold}"),
    )?;
    let mut found = Vec::new();
    for n in [2, 3] {
        let w = first_witness(&t, hs[n - 1] as usize, hs[n] as usize, 3)
            .ok_or_else(|| format!("no witness at n={n}"))?;
        found.push(format!("n={n}: q={} p={} >= {}", w.q, w.p, w.threshold));
    }
    Ok(format!("p(55)=87 >= 169/2; first witnesses {}", found.join(", ")))
}

fn kappa_bound() -> Outcome {
    let mut checked = 0;
    for (name, spec, kappa) in [
        ("chacon", RankOneSpec::named("chacon").unwrap(), r(1, 3)),
        ("the_ts(2,2)", ts(2, 2), r(1, 6)),
    ] {
        let tower = Tower::new(&spec, 8).unwrap();
        for n in 2..=4 {
            for ell in 1..=2 {
                let k = kappa_check(&tower, n, ell, ell as u64, n + ell + 2).unwrap();
                ensure(k.kappa == kappa, format!("{name}: kappa {} expected {kappa}", k.kappa))?;
                ensure(
                    k.self_target.lo >= k.bound && k.below_target.lo >= k.bound,
                    format!(
                        "{name} n={n} ell={ell}: lower ends {}, {} below {}",
                        k.self_target.lo, k.below_target.lo, k.bound
                    ),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (spec, n, ell) cases, lower interval ends >= kappa^ell mu(I)"))
}

fn finite_measure() -> Outcome {
    let chacon = finite_measure_report(&RankOneSpec::named("chacon").unwrap(), 8).unwrap();
    let the_ts = finite_measure_report(&ts(2, 2), 8).unwrap();
    ensure(chacon.column_measures[3] == r(40, 27), format!("chacon mu(C_4) = {}", chacon.column_measures[3]))?;
    ensure(the_ts.column_measures[3] == r(388, 216), format!("the_ts mu(C_4) = {}", the_ts.column_measures[3]))?;
    ensure(chacon.bounded && the_ts.bounded, "growth bound violated")?;
    let last = |v: &[BigRational]| f64_of(v.last().unwrap());
    Ok(format!(
        "mu(C_4) = 40/27 and 97/54; partial sums at n=8: {:.5}, {:.5}",
        last(&chacon.partial_sums),
        last(&the_ts.partial_sums)
    ))
}

fn empirical() -> Outcome {
    let spec = ts(2, 2);
    let zero: Word = "0".parse().unwrap();
    let nu = empirical_measure(&spec, &zero, 4, DEFAULT_CAP).unwrap();
    ensure(nu == r(216, 387), format!("nu([0]) = {nu}"))?;
    for w in ["0", "1", "01"] {
        let c = cylinder_cross_check(&spec, &w.parse().unwrap(), 4, DEFAULT_CAP).unwrap();
        ensure(c.within_bound(), format!("w={w}: gap {} > {}", c.gap, c.allowed))?;
    }
    Ok("nu([0]) = 216/387; gaps within len(w)/h_4 for 0, 1, 01".into())
}

fn recipes() -> Outcome {
    let eps = r(1, 10);
    let minimal = choose_params_minimal(&eps, &GrowthFn::Identity, 4).unwrap();
    let g = minimal.params.gamma(1).unwrap();
    ensure(g == BigUint::from(3u32), format!("minimal gamma {g}"))?;
    ensure(
        r(1, 4 * 3 + 2) < eps && r(1, 4 * 2 + 2) >= eps,
        "gamma=3 is not the least gamma with 1/(4 gamma + 2) < 1/10",
    )?;

    let msj = choose_params_msj(&r(1, 2)).unwrap();
    let (g, l) = (msj.params.gamma(1).unwrap(), msj.params.l(1).unwrap());
    ensure((g.clone(), l.clone()) == (2u32.into(), 3u32.into()), format!("msj gives gamma={g} L={l}"))?;
    let lim = predicted_limits(&msj.params).unwrap();
    ensure(
        lim.limsup < r(3, 2) + r(1, 2) && lim.liminf < r(3, 2),
        format!("msj limits {} {}", lim.liminf, lim.limsup),
    )?;

    let te = choose_params_totally_ergodic(&GrowthFn::Identity, 3).unwrap();
    let got: Vec<BigUint> = vec![
        te.params.gamma(1).unwrap(),
        te.params.l(1).unwrap(),
        te.params.gamma(2).unwrap(),
        te.params.l(2).unwrap(),
    ];
    ensure(
        got == [2u32, 2, 6, 120].map(BigUint::from),
        format!("totally ergodic gives {got:?}"),
    )?;

    let mut n_certs = 0;
    for choice in [&minimal, &msj, &te] {
        for c in &choice.certificates {
            ensure(c.holds(), format!("certificate failed: {c}"))?;
            n_certs += 1;
        }
    }
    // independent recomputation of the first anchor of the totally ergodic choice
    let h2 = BigUint::from(10u32);
    let p = predicted_complexity(&te.params, &h2).unwrap();
    ensure(p == BigUint::from(15u32) && p < &h2 + &h2, format!("p(h_2) = {p}"))?;
    Ok(format!("gamma=3; (2, 3); (2, 2, 6, 120); {n_certs} certificates hold"))
}

fn wm_substitute() -> Outcome {
    let tower = Tower::new(&ts(2, 3), 6).unwrap();
    let a = LevelSet::level(2, 0);
    let curve = wm_diagnostic(&tower, &a, &a, 200, 6).unwrap();
    let (c50, c200) = (&curve[49].cesaro, &curve[199].cesaro);
    ensure(c200 < c50, format!("c_200 = {} not below c_50 = {}", f64_of(c200), f64_of(c50)))?;

    // an odometer returns to I_{3,0} exactly at multiples of h_3 = 4; the
    // only slack is the top t levels of the depth-cap column
    let odo = Tower::new(&RankOneSpec::from_rows(&[&[0, 0]], Tail::RepeatLast).unwrap(), 12).unwrap();
    let a = LevelSet::level(3, 0);
    let mu = odo.mass(&a);
    let mut spike_floor = mu.clone();
    let mut off_ceiling = BigRational::from_integer(0.into());
    for t in 1..=32u64 {
        let iv = odo.measure_intersection(&a, &a, t, 12).unwrap();
        if t % 4 == 0 {
            ensure(iv.hi == mu, format!("odometer t={t}: upper end {} below mu(I) = {mu}", iv.hi))?;
            spike_floor = spike_floor.min(iv.lo);
        } else {
            ensure(iv.lo == BigRational::from_integer(0.into()), format!("odometer t={t}: lower end {}", iv.lo))?;
            off_ceiling = off_ceiling.max(iv.hi);
        }
    }
    ensure(spike_floor > off_ceiling, "odometer spikes not separated")?;
    Ok(format!(
        "c_50 = {:.5} > c_200 = {:.5}; odometer: mu(T^t I ∩ I) in [{spike_floor}, {mu}] at t = 4k, <= {off_ceiling} otherwise",
        f64_of(c50),
        f64_of(c200)
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("height anchors", anchors),
        ("count bands", count_bands),
        ("ratio extremes", ratio_extremes),
        ("cassaigne identity", cassaigne),
        ("hedlund-morse floor", hedlund_morse),
        ("rewrite exactness", rewrites),
        ("lower-bound witness", witness),
        ("return-time bound", kappa_bound),
        ("finite measure", finite_measure),
        ("empirical measure", empirical),
        ("parameter recipes", recipes),
        ("mixing diagnostic", wm_substitute),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
