//! Python bindings. Rationals come back as `fractions.Fraction`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use rankone_core::complexity;
use rankone_core::construction::{self, RankOneSpec, SpacerRow, Tail, TheTsParams, DEFAULT_CAP};
use rankone_core::family;
use rankone_core::growth::GrowthFn;
use rankone_core::rewrite::{self, MergeSchedule};
use rankone_core::specfile;
use rankone_core::tower::{self, LevelSet, Tower};
use rankone_core::verify::{verify_suite, Profile, VerifyOptions};
use rankone_core::Error;

create_exception!(rankone, CapacityError, PyRuntimeError);
create_exception!(rankone, StabilizationError, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Capacity { .. } => CapacityError::new_err(e.to_string()),
        Error::Stabilization { .. } => StabilizationError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for rankone_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

/// Accepts `"N/D"`, an int, or anything with `numerator` and `denominator`.
fn rational_arg(x: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    if let Ok(s) = x.cast::<PyString>() {
        let text = s.to_str()?;
        return text
            .trim()
            .parse::<BigRational>()
            .map_err(|_| PyValueError::new_err(format!("not a rational: {text:?}")));
    }
    let n: BigInt = x.getattr("numerator")?.extract()?;
    let d: BigInt = x.getattr("denominator")?.extract()?;
    if d == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn tail_arg(tail: &str) -> PyResult<Tail> {
    match tail {
        "repeat_last" => Ok(Tail::RepeatLast),
        "repeat_cycle" => Ok(Tail::RepeatCycle),
        other => Err(PyValueError::new_err(format!("unknown tail {other:?}"))),
    }
}

/// A rank-one construction: one spacer row per stage.
#[pyclass(name = "Spec", frozen, module = "rankone", skip_from_py_object)]
#[derive(Clone)]
struct PySpec {
    inner: RankOneSpec,
}

impl PySpec {
    fn the_ts_params(&self) -> PyResult<&TheTsParams> {
        self.inner
            .the_ts_params()
            .ok_or_else(|| PyValueError::new_err("needs a the_ts spec"))
    }
}

fn wrap(inner: RankOneSpec) -> PySpec {
    PySpec { inner }
}

#[pymethods]
impl PySpec {
    /// `B_{n+1} = ((B_n 1)^gamma B_n)^L` with constant parameters.
    #[staticmethod]
    fn the_ts(gamma: u64, l: u64) -> PyResult<Self> {
        Ok(wrap(RankOneSpec::the_ts(TheTsParams::constant(gamma, l).py()?)))
    }

    /// `"chacon"` or `"ferenczi"`.
    #[staticmethod]
    fn named(tag: &str) -> PyResult<Self> {
        Ok(wrap(RankOneSpec::named(tag).py()?))
    }

    #[staticmethod]
    #[pyo3(signature = (rows, tail = "repeat_last"))]
    fn explicit(rows: Vec<Vec<u64>>, tail: &str) -> PyResult<Self> {
        let rows = rows.into_iter().map(SpacerRow::new).collect::<Result<Vec<_>, _>>().py()?;
        Ok(wrap(RankOneSpec::explicit(rows, tail_arg(tail)?).py()?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(wrap(specfile::parse_spec(text).py()?))
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(wrap(specfile::load_spec(path).py()?))
    }

    /// Explicit rows `1..=horizon` for derived specs.
    #[pyo3(signature = (horizon = 8))]
    fn to_json(&self, horizon: usize) -> PyResult<String> {
        let v = specfile::spec_to_json(&self.inner, horizon).py()?;
        serde_json::to_string(&v).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.family().to_string()
    }

    fn row(&self, n: usize) -> PyResult<Vec<u64>> {
        Ok(self.inner.row(n).py()?.into_spacers())
    }

    /// `[h_1, ..., h_count]`.
    fn heights(&self, count: usize) -> PyResult<Vec<BigUint>> {
        construction::heights(&self.inner, count).py()
    }

    /// `B_n` as a `0`/`1` string.
    #[pyo3(signature = (n, cap = DEFAULT_CAP))]
    fn word(&self, n: usize, cap: u64) -> PyResult<String> {
        Ok(construction::materialize(&self.inner, n, cap).py()?.to_string())
    }

    fn __repr__(&self) -> String {
        match self.inner.the_ts_params() {
            Some(p) => format!(
                "Spec(the_ts, gamma_1={}, L_1={})",
                p.gamma(1).map(|g| g.to_string()).unwrap_or_default(),
                p.l(1).map(|l| l.to_string()).unwrap_or_default()
            ),
            None => format!("Spec({})", self.inner.family()),
        }
    }
}

/// `[p(1), ..., p(max_q)]`.
#[pyfunction]
#[pyo3(signature = (spec, max_q, cap = DEFAULT_CAP))]
fn subshift_complexity(py: Python<'_>, spec: &PySpec, max_q: usize, cap: u64) -> PyResult<Vec<u64>> {
    let inner = spec.inner.clone();
    let table = py.detach(move || complexity::subshift_complexity(&inner, max_q, cap)).py()?;
    Ok(table.values().to_vec())
}

/// `{q: [words]}` for `q < max_q`.
#[pyfunction]
#[pyo3(signature = (spec, max_q, cap = DEFAULT_CAP))]
fn right_special<'py>(
    py: Python<'py>,
    spec: &PySpec,
    max_q: usize,
    cap: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let census = complexity::right_special(&spec.inner, max_q, cap).py()?;
    let out = PyDict::new(py);
    for q in 1..census.max_q {
        let words: Vec<String> = census.at(q).iter().map(|r| r.word.to_string()).collect();
        out.set_item(q, words)?;
    }
    Ok(out)
}

#[pyfunction]
fn cassaigne_check(complexity: Vec<u64>, rs_counts: Vec<u64>) -> PyResult<bool> {
    let table = complexity::ComplexityTable::from_values(complexity).py()?;
    Ok(complexity::cassaigne_check(&table, 1, &rs_counts))
}

#[pyfunction]
fn predicted_complexity(spec: &PySpec, q: BigUint) -> PyResult<BigUint> {
    family::predicted_complexity(spec.the_ts_params()?, &q).py()
}

/// `(liminf, limsup)` of `p(q)/q`.
#[pyfunction]
fn predicted_limits<'py>(py: Python<'py>, spec: &PySpec) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let lim = family::predicted_limits(spec.the_ts_params()?).py()?;
    Ok((fraction(py, &lim.liminf)?, fraction(py, &lim.limsup)?))
}

/// Returns `(spec, certificate lines, all_hold)`. Modes: `minimal`, `dreal`, `msj`.
#[pyfunction]
#[pyo3(signature = (mode, epsilon = None, f = None, stages = 6))]
fn select_params(
    mode: &str,
    epsilon: Option<&Bound<'_, PyAny>>,
    f: Option<&str>,
    stages: usize,
) -> PyResult<(PySpec, Vec<String>, bool)> {
    let eps = epsilon.map(rational_arg).transpose()?;
    let need_eps = || eps.as_ref().ok_or_else(|| PyValueError::new_err("this mode needs epsilon"));
    let need_f = || {
        f.ok_or_else(|| PyValueError::new_err("this mode needs f"))
            .and_then(|name| GrowthFn::named(name).py())
    };
    let choice = match mode {
        "minimal" => family::choose_params_minimal(need_eps()?, &need_f()?, stages),
        "dreal" => family::choose_params_totally_ergodic(&need_f()?, stages),
        "msj" => family::choose_params_msj(need_eps()?),
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    }
    .py()?;
    let certs = choice.certificates.iter().map(ToString::to_string).collect();
    let ok = choice.all_hold();
    Ok((wrap(RankOneSpec::the_ts(choice.params)), certs, ok))
}

#[pyfunction]
fn merge_stage(spec: &PySpec, n: usize) -> PyResult<PySpec> {
    Ok(wrap(rewrite::merge_stage(&spec.inner, n).py()?))
}

/// Merge points `n_1 = 1 < n_2 < ...`; merged stage `t` has `B~_t = B_{n_t}`.
#[pyfunction]
fn merge_stages(spec: &PySpec, points: Vec<usize>) -> PyResult<PySpec> {
    let sched = MergeSchedule::new(points).py()?;
    Ok(wrap(rewrite::merge_stages(&spec.inner, &sched).py()?))
}

#[pyfunction]
fn shift_constant(spec: &PySpec, n: usize, c: u64, d: u64) -> PyResult<PySpec> {
    Ok(wrap(rewrite::shift_constant(&spec.inner, n, c, d).py()?))
}

/// `(same, distinguishing word or None)` over lengths up to `max_q`.
#[pyfunction]
#[pyo3(signature = (a, b, max_q, cap = DEFAULT_CAP))]
fn same_language(a: &PySpec, b: &PySpec, max_q: usize, cap: u64) -> PyResult<(bool, Option<String>)> {
    let cmp = rewrite::verify_same_language(&a.inner, &b.inner, max_q, cap).py()?;
    Ok((cmp.same, cmp.distinguishing.map(|(_, w)| w.to_string())))
}

#[pyfunction]
#[pyo3(signature = (spec, n, ell, depth_cap = None))]
fn kappa_check<'py>(
    py: Python<'py>,
    spec: &PySpec,
    n: usize,
    ell: usize,
    depth_cap: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let cap = depth_cap.unwrap_or(n + ell + 2);
    let t = Tower::new(&spec.inner, cap.max(n + ell)).py()?;
    let k = tower::kappa_check(&t, n, ell, ell as u64, cap).py()?;
    let out = PyDict::new(py);
    out.set_item("kappa", fraction(py, &k.kappa)?)?;
    out.set_item("t", k.t)?;
    out.set_item("bound", fraction(py, &k.bound)?)?;
    out.set_item("self", (fraction(py, &k.self_target.lo)?, fraction(py, &k.self_target.hi)?))?;
    out.set_item("below", (fraction(py, &k.below_target.lo)?, fraction(py, &k.below_target.hi)?))?;
    out.set_item("holds", k.holds())?;
    Ok(out)
}

#[pyfunction]
fn finite_measure<'py>(py: Python<'py>, spec: &PySpec, stages: usize) -> PyResult<Bound<'py, PyDict>> {
    let rep = tower::finite_measure_report(&spec.inner, stages).py()?;
    let out = PyDict::new(py);
    let fracs = |v: &[BigRational]| -> PyResult<Bound<'py, PyList>> {
        PyList::new(py, v.iter().map(|r| fraction(py, r)).collect::<PyResult<Vec<_>>>()?)
    };
    out.set_item("column_measures", fracs(&rep.column_measures)?)?;
    out.set_item("partial_sums", fracs(&rep.partial_sums)?)?;
    out.set_item("k", rep.k)?;
    out.set_item("bounded", rep.bounded)?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (spec, w, n, cap = DEFAULT_CAP))]
fn empirical_measure<'py>(
    py: Python<'py>,
    spec: &PySpec,
    w: &str,
    n: usize,
    cap: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let w = w.parse().py()?;
    fraction(py, &tower::empirical_measure(&spec.inner, &w, n, cap).py()?)
}

type WmRow<'py> = (u64, Bound<'py, PyAny>, Bound<'py, PyAny>, Bound<'py, PyAny>);

/// `[(t, lo, hi, cesaro)]` for `A = B = I_{n, level}`.
#[pyfunction]
#[pyo3(signature = (spec, n, t_max, level = 0, depth_cap = None))]
fn wm_diagnostic<'py>(
    py: Python<'py>,
    spec: &PySpec,
    n: usize,
    t_max: u64,
    level: u64,
    depth_cap: Option<usize>,
) -> PyResult<Vec<WmRow<'py>>> {
    let cap = depth_cap.unwrap_or(n + 4);
    let inner = spec.inner.clone();
    let points = py
        .detach(move || -> rankone_core::Result<_> {
            let t = Tower::new(&inner, cap.max(n))?;
            let a = LevelSet::level(n, level);
            tower::wm_diagnostic(&t, &a, &a, t_max, cap)
        })
        .py()?;
    points
        .iter()
        .map(|p| {
            Ok((
                p.t,
                fraction(py, &p.intersection.lo)?,
                fraction(py, &p.intersection.hi)?,
                fraction(py, &p.cesaro)?,
            ))
        })
        .collect()
}

/// `(passed, report)` with one tab-separated line per check.
#[pyfunction]
#[pyo3(signature = (spec, profile, max_q = 2000, stages = 8, cap = DEFAULT_CAP))]
fn verify(spec: &PySpec, profile: &str, max_q: usize, stages: usize, cap: u64) -> PyResult<(bool, String)> {
    let profile = Profile::parse(profile).py()?;
    let report = verify_suite(&spec.inner, profile, &VerifyOptions { max_q, cap, stages }).py()?;
    Ok((report.passed(), report.to_tsv()))
}

#[pymodule]
fn rankone(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpec>()?;
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    m.add("StabilizationError", m.py().get_type::<StabilizationError>())?;
    m.add_function(wrap_pyfunction!(subshift_complexity, m)?)?;
    m.add_function(wrap_pyfunction!(right_special, m)?)?;
    m.add_function(wrap_pyfunction!(cassaigne_check, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_complexity, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_limits, m)?)?;
    m.add_function(wrap_pyfunction!(select_params, m)?)?;
    m.add_function(wrap_pyfunction!(merge_stage, m)?)?;
    m.add_function(wrap_pyfunction!(merge_stages, m)?)?;
    m.add_function(wrap_pyfunction!(shift_constant, m)?)?;
    m.add_function(wrap_pyfunction!(same_language, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_check, m)?)?;
    m.add_function(wrap_pyfunction!(finite_measure, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_measure, m)?)?;
    m.add_function(wrap_pyfunction!(wm_diagnostic, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    Ok(())
}
