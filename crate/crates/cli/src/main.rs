use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed};

use rankone_core::complexity::{self, census_from_sample, ratio_to_f64};
use rankone_core::construction::{self, DEFAULT_CAP};
use rankone_core::family::{self, choose_params_minimal, choose_params_msj, choose_params_totally_ergodic};
use rankone_core::growth::{GrowthFile, GrowthFn};
use rankone_core::rewrite::{self, MergeSchedule};
use rankone_core::specfile::{load_spec, params_to_json, spec_to_json};
use rankone_core::tower::{finite_measure_report, kappa_check, wm_diagnostic, LevelSet, Tower, Verdict};
use rankone_core::verify::{verify_suite, Profile, Report, Status, VerifyOptions};
use rankone_core::Error;

#[derive(Parser)]
#[command(name = "rankone", version, about = "Rank-one subshifts: words, complexity, rewrites, towers")]
struct Cli {
    /// Largest word the tool will materialize, in symbols.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write B_depth as a 0/1 string.
    Build {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact p(q) for q <= max-q as CSV.
    Complexity {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        max_q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add a decimal ratio column.
        #[arg(long)]
        float: bool,
    },
    /// Right-special words of each length below max-q.
    RightSpecial {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        max_q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite the spec and compare languages up to verify-q.
    Transform {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// merge: N; merge-multi: comma-separated merge points; shift-c: N,c,d
        #[arg(long)]
        args: String,
        #[arg(long, default_value_t = 200)]
        verify_q: usize,
        /// Stages written out for the transformed spec.
        #[arg(long, default_value_t = 8)]
        horizon: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact tower measure checks.
    Tower {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        check: TowerCheck,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        /// Level of the column used as the test set.
        #[arg(long, default_value_t = 0)]
        level: u64,
        #[arg(long, default_value_t = 50)]
        t_max: u64,
        /// Defaults to n + 4 (kappa: n + ell + 2).
        #[arg(long)]
        depth_cap: Option<usize>,
        #[arg(long, default_value_t = 8)]
        stages: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        float: bool,
    },
    /// Predicted p(q) for the (gamma_n, L_n) family.
    Predict {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        q: BigUint,
    },
    /// Parameters for a complexity target, as a spec file.
    SelectParams {
        #[arg(long, value_enum)]
        mode: Mode,
        /// N/D
        #[arg(long)]
        epsilon: Option<BigRational>,
        /// Growth function: a JSON file, or one of identity, ceil-log2, ceil-sqrt.
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value_t = 6)]
        stages: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named check profile.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value_t = 2000)]
        max_q: usize,
        #[arg(long, default_value_t = 8)]
        stages: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Merge,
    MergeMulti,
    ShiftC,
}

#[derive(Clone, Copy, ValueEnum)]
enum TowerCheck {
    Kappa,
    FiniteMeasure,
    Wm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Minimal,
    Dreal,
    Msj,
}

enum Failure {
    Usage(String),
    Capacity(String),
    Check,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            Error::InvalidParameter(_)
            | Error::InvalidRow(_)
            | Error::UnknownFamily(_)
            | Error::SpecFormat(_)
            | Error::Json(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn frac(r: &BigRational) -> String {
    format!("{},{}", r.numer(), r.denom())
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn parse_list(args: &str, what: &str) -> Result<Vec<u64>, Failure> {
    args.split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("{what}: expected comma-separated integers, got `{args}`")))
}

fn growth_fn(f: &str) -> Result<GrowthFn, Failure> {
    if let Ok(g) = GrowthFn::named(f) {
        return Ok(g);
    }
    let text = fs::read_to_string(f)?;
    let file: GrowthFile =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("growth file {f}: {e}")))?;
    Ok(GrowthFn::from_file(file)?)
}

fn build(cap: u64, spec: &Path, depth: usize, out: Option<&Path>) -> CliResult {
    let spec = load_spec(spec)?;
    let mut text = construction::materialize(&spec, depth, cap)?.to_string();
    text.push('\n');
    emit(out, &text)
}

fn complexity_csv(cap: u64, spec: &Path, max_q: usize, out: Option<&Path>, float: bool) -> CliResult {
    let spec = load_spec(spec)?;
    let table = complexity::subshift_complexity(&spec, max_q, cap)?;
    let mut text = String::from("q,p,delta,ratio_num,ratio_den");
    text.push_str(if float { ",ratio\n" } else { "\n" });
    for q in 1..=table.max_q() {
        let delta = if q < table.max_q() {
            table.delta(q).to_string()
        } else {
            String::new()
        };
        let r = table.ratio(q);
        write!(text, "{q},{},{delta},{}", table.p(q), frac(&r)).unwrap();
        if float {
            write!(text, ",{:.6}", ratio_to_f64(&r)).unwrap();
        }
        text.push('\n');
    }
    emit(out, &text)
}

fn right_special(cap: u64, spec: &Path, max_q: usize, out: Option<&Path>) -> CliResult {
    let spec = load_spec(spec)?;
    let sample = complexity::language_sample(&spec, max_q, cap)?;
    let mut census = census_from_sample(&sample);
    if let Some(params) = spec.the_ts_params() {
        family::classify_census(&mut census, params, cap)?;
    }
    let mut text = String::from("q,word,family,stage\n");
    for q in 1..census.max_q {
        for rec in census.at(q) {
            let fam = rec.family.map(|f| format!("{f:?}")).unwrap_or_default();
            let stage = rec.stage.map(|n| n.to_string()).unwrap_or_default();
            writeln!(text, "{q},{},{fam},{stage}", rec.word).unwrap();
        }
    }
    emit(out, &text)
}

fn transform(
    cap: u64,
    spec_path: &Path,
    op: Op,
    args: &str,
    verify_q: usize,
    horizon: usize,
    out: Option<&Path>,
) -> CliResult {
    let spec = load_spec(spec_path)?;
    let values = parse_list(args, "--args")?;
    let as_stage = |v: u64| usize::try_from(v).map_err(|_| Failure::Usage(format!("stage {v} out of range")));
    let (result, op_name) = match op {
        Op::Merge => {
            let [n] = values[..] else {
                return Err(Failure::Usage("merge takes --args N".into()));
            };
            (rewrite::merge_stage(&spec, as_stage(n)?)?, format!("merge({n})"))
        }
        Op::MergeMulti => {
            let points = values.iter().map(|&v| as_stage(v)).collect::<Result<Vec<_>, _>>()?;
            let sched = MergeSchedule::new(points)?;
            (rewrite::merge_stages(&spec, &sched)?, format!("merge-multi({args})"))
        }
        Op::ShiftC => {
            let [n, c, d] = values[..] else {
                return Err(Failure::Usage("shift-c takes --args N,c,d".into()));
            };
            (rewrite::shift_constant(&spec, as_stage(n)?, c, d)?, format!("shift-c({n},{c},{d})"))
        }
    };
    emit(out, &json_text(&spec_to_json(&result, horizon)?))?;
    let cmp = rewrite::verify_same_language(&spec, &result, verify_q, cap)?;
    let mut report = String::new();
    let measured = match &cmp.distinguishing {
        None => "same".to_string(),
        Some((side, w)) => format!("differs: {w} only in {}", if *side == 0 { "input" } else { "output" }),
    };
    let status = if cmp.same { Status::Pass } else { Status::Fail };
    writeln!(report, "{op_name} language q<={}\t{status}\tsame\t{measured}", cmp.max_q).unwrap();
    eprint!("{report}");
    if cmp.same {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[allow(clippy::too_many_arguments)]
fn tower(
    spec: &Path,
    check: TowerCheck,
    n: usize,
    ell: usize,
    level: u64,
    t_max: u64,
    depth_cap: Option<usize>,
    stages: usize,
    out: Option<&Path>,
    float: bool,
) -> CliResult {
    let spec = load_spec(spec)?;
    match check {
        TowerCheck::Kappa => {
            let cap = depth_cap.unwrap_or(n + ell + 2);
            let tower = Tower::new(&spec, cap.max(n + ell))?;
            let k = kappa_check(&tower, n, ell, ell as u64, cap)?;
            let mut text = String::from(
                "n,ell,t,kappa_num,kappa_den,bound_num,bound_den,self_lo_num,self_lo_den,self_hi_num,self_hi_den,\
                 below_lo_num,below_lo_den,below_hi_num,below_hi_den,self,below\n",
            );
            writeln!(
                text,
                "{n},{ell},{},{},{},{},{},{},{},{:?},{:?}",
                k.t,
                frac(&k.kappa),
                frac(&k.bound),
                frac(&k.self_target.lo),
                frac(&k.self_target.hi),
                frac(&k.below_target.lo),
                frac(&k.below_target.hi),
                k.self_verdict,
                k.below_verdict,
            )
            .unwrap();
            emit(out, &text)?;
            if k.self_verdict == Verdict::Fails || k.below_verdict == Verdict::Fails {
                return Err(Failure::Check);
            }
        }
        TowerCheck::FiniteMeasure => {
            let rep = finite_measure_report(&spec, stages)?;
            let mut text = String::from("n,column_num,column_den,partial_num,partial_den\n");
            for (i, (c, s)) in rep.column_measures.iter().zip(&rep.partial_sums).enumerate() {
                writeln!(text, "{},{},{}", i + 1, frac(c), frac(s)).unwrap();
            }
            emit(out, &text)?;
            eprintln!("bounded\t{}\tk={}", rep.bounded, rep.k);
            if !rep.bounded {
                return Err(Failure::Check);
            }
        }
        TowerCheck::Wm => {
            let cap = depth_cap.unwrap_or(n + 4);
            let tower = Tower::new(&spec, cap.max(n))?;
            let a = LevelSet::level(n, level);
            let points = wm_diagnostic(&tower, &a, &a, t_max, cap)?;
            let mut text = String::from("t,lo_num,lo_den,hi_num,hi_den");
            text.push_str(if float { ",cesaro\n" } else { "\n" });
            for p in &points {
                write!(text, "{},{},{}", p.t, frac(&p.intersection.lo), frac(&p.intersection.hi)).unwrap();
                if float {
                    write!(text, ",{:.6}", ratio_to_f64(&p.cesaro)).unwrap();
                }
                text.push('\n');
            }
            emit(out, &text)?;
        }
    }
    Ok(())
}

fn predict(spec: &Path, q: &BigUint) -> CliResult {
    let spec = load_spec(spec)?;
    let params = spec
        .the_ts_params()
        .ok_or_else(|| Failure::Usage("predict needs a the_ts spec".into()))?;
    let p = family::predicted_complexity(params, q)?;
    let n = family::stage_of_length(params, q)?;
    println!("q\tp\tstage");
    println!("{q}\t{p}\t{n}");
    Ok(())
}

fn select_params(
    mode: Mode,
    epsilon: Option<&BigRational>,
    f: Option<&str>,
    stages: usize,
    out: Option<&Path>,
) -> CliResult {
    let need_eps = || epsilon.ok_or_else(|| Failure::Usage("this mode needs --epsilon N/D".into()));
    let need_f = || f.ok_or_else(|| Failure::Usage("this mode needs --f".into())).and_then(growth_fn);
    let choice = match mode {
        Mode::Minimal => choose_params_minimal(need_eps()?, &need_f()?, stages)?,
        Mode::Dreal => choose_params_totally_ergodic(&need_f()?, stages)?,
        Mode::Msj => choose_params_msj(need_eps()?)?,
    };
    emit(out, &json_text(&params_to_json(&choice.params)))?;
    for c in &choice.certificates {
        eprintln!("{c}");
    }
    if choice.all_hold() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn verify(cap: u64, spec: &Path, profile: &str, max_q: usize, stages: usize, out: Option<&Path>) -> CliResult {
    let profile = Profile::parse(profile)?;
    let spec = load_spec(spec)?;
    let opts = VerifyOptions { max_q, cap, stages };
    let report: Report = verify_suite(&spec, profile, &opts)?;
    emit(out, &report.to_tsv())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> CliResult {
    let cap = cli.cap;
    if cap == 0 {
        return Err(Failure::Usage("--cap must be positive".into()));
    }
    match cli.command {
        Command::Build { spec, depth, out } => build(cap, &spec, depth, out.as_deref()),
        Command::Complexity {
            spec,
            max_q,
            out,
            float,
        } => complexity_csv(cap, &spec, max_q, out.as_deref(), float),
        Command::RightSpecial { spec, max_q, out } => right_special(cap, &spec, max_q, out.as_deref()),
        Command::Transform {
            spec,
            op,
            args,
            verify_q,
            horizon,
            out,
        } => transform(cap, &spec, op, &args, verify_q, horizon, out.as_deref()),
        Command::Tower {
            spec,
            check,
            n,
            ell,
            level,
            t_max,
            depth_cap,
            stages,
            out,
            float,
        } => tower(&spec, check, n, ell, level, t_max, depth_cap, stages, out.as_deref(), float),
        Command::Predict { spec, q } => predict(&spec, &q),
        Command::SelectParams {
            mode,
            epsilon,
            f,
            stages,
            out,
        } => {
            if let Some(e) = &epsilon {
                if !e.is_positive() || e >= &BigRational::one() {
                    return Err(Failure::Usage(format!("--epsilon must lie in (0, 1), got {e}")));
                }
            }
            select_params(mode, epsilon.as_ref(), f.as_deref(), stages, out.as_deref())
        }
        Command::Verify {
            spec,
            profile,
            max_q,
            stages,
            out,
        } => verify(cap, &spec, &profile, max_q, stages, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
