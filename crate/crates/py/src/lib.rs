use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cycbound_core::bounds::{all_bounds, compute, BoundKind};
use cycbound_core::cyclic::{coset_partition, parse_defining_set, CyclicCodeSpec};
use cycbound_core::error::Error;
use cycbound_core::gf::build_field_context;
use cycbound_core::harness::{evaluate_length, tightness_row, DEFAULT_DISTANCE_CAP};
use cycbound_core::oracle::true_distance;
use cycbound_core::usemiring::{includes as u_includes, pattern_expand, schaub_lower_bound, Pattern};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn spec(q: u32, n: usize, set: &str) -> PyResult<CyclicCodeSpec> {
    let s = parse_defining_set(set, n, q).map_err(py_err)?;
    CyclicCodeSpec::new(q, n, s).map_err(py_err)
}

/// Value and JSON witness of one bound (`bch`, `ht`, `bs`, `roos`, `bound_c`).
#[pyfunction]
#[pyo3(signature = (q, n, set, kind))]
fn bound(q: u32, n: usize, set: &str, kind: &str) -> PyResult<(usize, String)> {
    let kind: BoundKind = kind.parse().map_err(py_err)?;
    let out = compute(kind, &spec(q, n, set)?);
    let witness = serde_json::to_string(&out.witness).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((out.value, witness))
}

/// All five bound values keyed by table column.
#[pyfunction]
fn bounds(q: u32, n: usize, set: &str) -> PyResult<BTreeMap<String, usize>> {
    Ok(all_bounds(&spec(q, n, set)?).into_iter().map(|o| (o.kind.column().to_string(), o.value)).collect())
}

/// Exact minimum distance; `n + 1` for the zero code.
#[pyfunction]
#[pyo3(signature = (q, n, set, cap = DEFAULT_DISTANCE_CAP))]
fn distance(q: u32, n: usize, set: &str, cap: u64) -> PyResult<usize> {
    let s = spec(q, n, set)?;
    let ctx = build_field_context(q, n).map_err(py_err)?;
    Ok(true_distance(&s, &ctx, cap as u128).map_err(py_err)?.d)
}

#[pyfunction]
#[pyo3(signature = (q, n, set, a_cap = 1 << 16, subset_cap = 1 << 24))]
fn schaub(q: u32, n: usize, set: &str, a_cap: u64, subset_cap: u64) -> PyResult<u32> {
    schaub_lower_bound(&spec(q, n, set)?, a_cap as u128, subset_cap as u128).map_err(py_err)
}

#[pyfunction]
fn cosets(q: u32, n: usize) -> PyResult<Vec<Vec<usize>>> {
    Ok(coset_partition(n, q).map_err(py_err)?.classes().to_vec())
}

/// Least shift at which pattern `u` is included in `v`, or `None`.
#[pyfunction]
fn includes(u: &str, v: &str) -> PyResult<Option<usize>> {
    let expand = |t: &str| t.parse::<Pattern>().and_then(|p| pattern_expand(&p)).map_err(py_err);
    u_includes(&expand(u)?, &expand(v)?).map_err(py_err)
}

/// `(N_codes, [BCH, HT, BS, RS, BC])` tight counts for one length.
#[pyfunction]
#[pyo3(signature = (q, n, cap = DEFAULT_DISTANCE_CAP, exclude_trivial = false))]
fn tightness(q: u32, n: usize, cap: u64, exclude_trivial: bool) -> PyResult<(usize, Vec<usize>)> {
    let rec = evaluate_length(q, n, cap).map_err(py_err)?;
    let row = tightness_row(&rec, exclude_trivial);
    Ok((row.n_codes, row.total.to_vec()))
}

#[pymodule]
fn cycbound(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(bound, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(schaub, m)?)?;
    m.add_function(wrap_pyfunction!(cosets, m)?)?;
    m.add_function(wrap_pyfunction!(includes, m)?)?;
    m.add_function(wrap_pyfunction!(tightness, m)?)?;
    Ok(())
}
