//! Python bindings. Integers come back as Python ints (exact, any size);
//! parse and argument errors raise `ValueError`, failed computations raise
//! `RuntimeError`.

use std::fmt::Display;

use mubar_core::dd::{census_degree3, evaluate_w, DDDiagram, LinkingClass, OneTermMode};
use mubar_core::freeword::{decompose_iterated, decompose_to_simple, hall_collect, GroupWord};
use mubar_core::parse::{parse_events, parse_word};
use mubar_core::singular::{
    clasp_labels, find_type_witness, sample_clasp, sample_dc, type_check_clasp, type_check_dc, ClaspBudget, DcBudget, PairStrands, TypeReport,
};
use mubar_core::stringlink::{EventList, MuBarValue, MuIndex, StringLinkDiagram};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyInt, PyList};

fn bad(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn failed(e: impl Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn int<'py>(py: Python<'py>, v: impl Display) -> PyResult<Bound<'py, PyAny>> {
    py.get_type::<PyInt>().call1((v.to_string(),))
}

fn pair<'py>(py: Python<'py>, v: &MuBarValue) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    Ok((int(py, &v.residue)?, int(py, &v.modulus)?))
}

fn word(text: &str) -> PyResult<GroupWord> {
    Ok(parse_word(text).map_err(bad)?.eval())
}

fn index(indices: Vec<usize>, of: usize, strands: usize) -> PyResult<MuIndex> {
    let idx = MuIndex::new(indices, of).map_err(bad)?;
    idx.check(strands).map_err(bad)?;
    Ok(idx)
}

fn link(text: &str, strands: usize) -> PyResult<EventList> {
    EventList::compile(&word(text)?, strands).map_err(bad)
}

/// Integer `μ(indices, of)` of the string link given by a word.
#[pyfunction]
fn mu<'py>(py: Python<'py>, word: &str, strands: usize, indices: Vec<usize>, of: usize) -> PyResult<Bound<'py, PyAny>> {
    let l = link(word, strands)?;
    let v = l.mu(&index(indices, of, strands)?).map_err(failed)?;
    int(py, v)
}

/// `(residue, Δ)` with the residue reduced into `[0, Δ)` when `Δ > 0`.
#[pyfunction]
fn mu_bar<'py>(py: Python<'py>, word: &str, strands: usize, indices: Vec<usize>, of: usize) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let l = link(word, strands)?;
    let v = l.mu_bar(&index(indices, of, strands)?).map_err(failed)?;
    pair(py, &v)
}

/// `μ̄` of an event list in the `under over sign` line format.
#[pyfunction]
fn events_mu_bar<'py>(py: Python<'py>, events: &str, indices: Vec<usize>, of: usize) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let l = parse_events(events).map_err(bad)?;
    let v = l.mu_bar(&index(indices, of, l.num_strands())?).map_err(failed)?;
    pair(py, &v)
}

#[pyfunction]
fn linking_matrix(events: &str) -> PyResult<Vec<Vec<i64>>> {
    parse_events(events).map_err(bad)?.linking_matrix().map_err(failed)
}

/// Compiles a word to its event list text.
#[pyfunction]
fn compile_word(word: &str, strands: usize) -> PyResult<String> {
    Ok(link(word, strands)?.to_string())
}

fn report<'py>(py: Python<'py>, r: &TypeReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("theory", &r.theory)?;
    d.set_item("index", &r.index)?;
    d.set_item("degree", r.degree)?;
    d.set_item("checked", r.checked)?;
    d.set_item("all_zero", r.all_zero)?;
    let ce: Vec<String> = r.counterexamples.iter().map(|c| format!("{c:?}")).collect();
    d.set_item("counterexamples", PyList::new(py, ce)?)?;
    Ok(d)
}

/// Checks the extended invariant on singular links of `theory` (`"dc"` or
/// `"clasp:<n>"`). With `samples` set, draws that many random links from
/// `seed` instead of sweeping the budget.
#[pyfunction]
#[pyo3(signature = (theory, indices, of, degree, strands=None, max_base_len=4, max_unmarked=2, same_components=false, samples=None, seed=0, max_counterexamples=5))]
#[allow(clippy::too_many_arguments)]
fn type_check<'py>(
    py: Python<'py>,
    theory: &str,
    indices: Vec<usize>,
    of: usize,
    degree: usize,
    strands: Option<usize>,
    max_base_len: usize,
    max_unmarked: usize,
    same_components: bool,
    samples: Option<u64>,
    seed: u64,
    max_counterexamples: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let k = strands.unwrap_or_else(|| indices.iter().copied().chain([of]).max().unwrap_or(0));
    let idx = index(indices, of, k)?;
    let r = if theory == "dc" {
        let pair_strands = if same_components { PairStrands::SameComponents } else { PairStrands::Any };
        let b = DcBudget { num_strands: k, max_unmarked, pair_strands, max_counterexamples };
        py.detach(|| match samples {
            Some(s) => sample_dc(&idx, degree, &b, s, seed),
            None => type_check_dc(&idx, degree, &b),
        })
    } else {
        let n: usize = theory.strip_prefix("clasp:").and_then(|n| n.parse().ok()).ok_or_else(|| bad(format!("unknown theory `{theory}`")))?;
        let comps = idx.sequence();
        if n + 1 != comps.len() {
            return Err(bad(format!("clasp:{n} labels need an index on {} components", n + 1)));
        }
        let b = ClaspBudget { num_strands: k, max_base_len, labels: clasp_labels(&comps), max_counterexamples };
        py.detach(|| match samples {
            Some(s) => sample_clasp(&idx, degree, &b, s, seed),
            None => type_check_clasp(&idx, degree, &b),
        })
    }
    .map_err(failed)?;
    report(py, &r)
}

/// A dc singular link with nonzero extended `μ̄`, as
/// `(event_text, pairs, (residue, Δ))`, or `None`.
#[pyfunction]
#[pyo3(signature = (indices, of, degree, strands=None, max_unmarked=4))]
fn find_witness<'py>(
    py: Python<'py>,
    indices: Vec<usize>,
    of: usize,
    degree: usize,
    strands: Option<usize>,
    max_unmarked: usize,
) -> PyResult<Option<(String, Vec<(usize, usize)>, (Bound<'py, PyAny>, Bound<'py, PyAny>))>> {
    let k = strands.unwrap_or_else(|| indices.iter().copied().chain([of]).max().unwrap_or(0));
    let idx = index(indices, of, k)?;
    let b = DcBudget { num_strands: k, max_unmarked, pair_strands: PairStrands::Any, max_counterexamples: 1 };
    match py.detach(|| find_type_witness(&idx, degree, &b)).map_err(failed)? {
        None => Ok(None),
        Some((l, v)) => Ok(Some((l.base().to_string(), l.pairs().to_vec(), pair(py, &v)?))),
    }
}

/// Degree-3 DD census: counts plus the canonical diagrams as text.
#[pyfunction]
fn census(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let c = census_degree3();
    let d = PyDict::new(py);
    d.set_item("labeled", c.labeled.len())?;
    d.set_item("naive", c.naive)?;
    d.set_item("canonical", c.orbits.len())?;
    let reps: Vec<String> = c.orbits.keys().map(DDDiagram::to_text).collect();
    d.set_item("diagrams", reps)?;
    let one_term: Vec<(bool, bool)> =
        c.orbits.keys().map(|r| (r.one_term_test(OneTermMode::Matching), r.one_term_test(OneTermMode::Adjacent))).collect();
    d.set_item("one_term", one_term)?;
    Ok(d)
}

/// `W(μ̄)` of a DD diagram (text format) on a linking class.
#[pyfunction]
#[pyo3(signature = (diagram, indices, of, linking_class="split", samples=5, seed=0))]
fn dd_eval<'py>(
    py: Python<'py>,
    diagram: &str,
    indices: Vec<usize>,
    of: usize,
    linking_class: &str,
    samples: usize,
    seed: u64,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let d: DDDiagram = diagram.parse().map_err(bad)?;
    let class = LinkingClass::parse(linking_class, d.num_circles()).map_err(bad)?;
    let idx = index(indices, of, d.num_circles())?;
    let v = evaluate_w(&d, &idx, &class, samples, seed).map_err(failed)?;
    pair(py, &v)
}

/// Basic commutator factors `(bracket, exponent)` of `word` modulo the class.
#[pyfunction]
fn collect(word_text: &str, class: usize) -> PyResult<Vec<(String, i64)>> {
    let h = hall_collect(&word(word_text)?, class).map_err(failed)?;
    Ok(h.factors.into_iter().map(|f| (f.bracket, f.exponent)).collect())
}

/// Simple commutators per level. With `max_level`, later levels work on the
/// residual modulo repeated generators.
#[pyfunction]
#[pyo3(signature = (word_text, level, max_level=None))]
fn decompose(word_text: &str, level: usize, max_level: Option<usize>) -> PyResult<Vec<(usize, Vec<String>)>> {
    let w = word(word_text)?;
    let out = match max_level {
        Some(m) => decompose_iterated(&w, level, m),
        None => decompose_to_simple(&w, level).map(|s| vec![(level, s)]),
    }
    .map_err(failed)?;
    Ok(out.into_iter().map(|(n, specs)| (n, specs.iter().map(ToString::to_string).collect())).collect())
}

#[pymodule]
fn mubar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(mu_bar, m)?)?;
    m.add_function(wrap_pyfunction!(events_mu_bar, m)?)?;
    m.add_function(wrap_pyfunction!(linking_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(compile_word, m)?)?;
    m.add_function(wrap_pyfunction!(type_check, m)?)?;
    m.add_function(wrap_pyfunction!(find_witness, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(dd_eval, m)?)?;
    m.add_function(wrap_pyfunction!(collect, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    Ok(())
}
