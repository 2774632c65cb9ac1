//! Python bindings. Rationals cross the boundary as `"p/q"` strings (or ints);
//! reports come back as the same JSON/table/TeX text the CLI prints.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hypercx::cohomology::{cohomology_group, CohomologyKind};
use hypercx::families::{build_family, classify, sl_check, sweep, FamilyId, FamilySpec, Grid};
use hypercx::io::{emit_report, parse_instance, sweep_report, Format};
use hypercx::linalg::{parse_rational, Rational};
use hypercx::metric::{build_metric, hkt_check, hyperkahler_check};

fn err(e: hypercx::Error) -> PyErr {
    let msg = format!("{}: {e}", e.code());
    if e.is_internal() {
        PyRuntimeError::new_err(msg)
    } else {
        PyValueError::new_err(msg)
    }
}

#[derive(FromPyObject)]
enum RationalArg {
    Int(i64),
    Str(String),
}

fn rational(name: &str, v: RationalArg) -> PyResult<Rational> {
    match v {
        RationalArg::Int(n) => Ok(Rational::from_integer(n.into())),
        RationalArg::Str(s) => {
            parse_rational(&s).ok_or_else(|| PyValueError::new_err(format!("{name}: {s:?} is not a rational p/q")))
        }
    }
}

fn family_id(id: &str) -> PyResult<FamilyId> {
    id.parse().map_err(err)
}

fn format(f: &str) -> PyResult<Format> {
    f.parse().map_err(err)
}

/// A Lie algebra with a hypercomplex structure and metric.
#[pyclass(name = "Instance", frozen)]
struct PyInstance {
    inner: hypercx::instance::Instance,
}

#[pymethods]
impl PyInstance {
    /// Builds a member of a built-in family: `gt`, `nilpotent8`, `almost-abelian`.
    #[staticmethod]
    #[pyo3(signature = (id, params = None))]
    fn family(id: &str, params: Option<Vec<(String, RationalArg)>>) -> PyResult<Self> {
        let parsed = params
            .unwrap_or_default()
            .into_iter()
            .map(|(k, v)| rational(&k, v).map(|r| (k, r)))
            .collect::<PyResult<Vec<_>>>()?;
        let refs: Vec<(&str, Rational)> = parsed.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        let inner = build_family(&FamilySpec::new(family_id(id)?, &refs)).map_err(err)?;
        Ok(PyInstance { inner })
    }

    /// Parses and builds an instance document (JSON text).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = parse_instance(text).and_then(|d| d.build()).map_err(err)?;
        Ok(PyInstance { inner })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label.clone()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dim()
    }

    fn is_integrable(&self) -> bool {
        self.inner.complex.is_integrable()
    }

    fn is_nilpotent(&self) -> bool {
        self.inner.algebra().is_nilpotent()
    }

    fn is_unimodular(&self) -> bool {
        self.inner.algebra().is_unimodular()
    }

    /// `dim H^{p,0}` for `p = 0..=2n`; kind is dolbeault, delJ, bott-chern or aeppli.
    fn cohomology_dims(&self, kind: &str) -> PyResult<Vec<usize>> {
        let kind: CohomologyKind = kind.parse().map_err(err)?;
        (0..=self.inner.complex.half())
            .map(|p| cohomology_group(&self.inner.complex, kind, p).map(|h| h.dim).map_err(err))
            .collect()
    }

    fn hkt(&self) -> PyResult<bool> {
        let c = &self.inner.complex;
        let m = build_metric(c, &self.inner.gram).map_err(err)?;
        Ok(hkt_check(c, &m).map_err(err)?.hkt)
    }

    fn hyperkahler(&self) -> PyResult<bool> {
        let c = &self.inner.complex;
        let m = build_metric(c, &self.inner.gram).map_err(err)?;
        Ok(hyperkahler_check(c, &m))
    }

    fn sl(&self) -> PyResult<bool> {
        Ok(sl_check(&self.inner).map_err(err)?.sl)
    }

    /// Full analysis report as text in the given format (json, table, tex).
    #[pyo3(signature = (format = "json"))]
    fn analyze(&self, py: Python<'_>, format: &str) -> PyResult<String> {
        let f = self::format(format)?;
        let inst = &self.inner;
        py.detach(|| classify(inst).and_then(|r| emit_report(inst, &r, f))).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Instance({:?}, dimension={})", self.inner.label, self.inner.dim())
    }
}

/// Classifies a parameter grid, `{name: [values]}`, and reports the family's
/// equivalence checks.
#[pyfunction]
#[pyo3(signature = (family, grid, format = "json"))]
fn sweep_grid(py: Python<'_>, family: &str, grid: Vec<(String, Vec<RationalArg>)>, format: &str) -> PyResult<String> {
    let id = family_id(family)?;
    let f = self::format(format)?;
    let axes = grid
        .into_iter()
        .map(|(k, vs)| {
            let vs = vs.into_iter().map(|v| rational(&k, v)).collect::<PyResult<Vec<_>>>()?;
            Ok((k, vs))
        })
        .collect::<PyResult<Vec<_>>>()?;
    let g = Grid::new(id, axes);
    py.detach(|| sweep(&g).map(|r| sweep_report(&r).emit(f))).map_err(err)
}

#[pymodule]
fn pyhypercx(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(sweep_grid, m)?)?;
    Ok(())
}
