use pyo3::exceptions::{PyIOError, PyKeyError, PyValueError};
use pyo3::prelude::*;

use weightcat::bench::builtin::by_name;
use weightcat::bench::fixtures::arrow_complex;
use weightcat::bench::{self, BenchError, ComplexFile, RunConfig};
use weightcat::catcore::{CategorySpec, Mor, Obj};
use weightcat::homotopy::{ChainMap, Complex as Cx};

fn py_err(e: BenchError) -> PyErr {
    match e {
        BenchError::Io(m) => PyIOError::new_err(m),
        BenchError::UnknownScenario(_) => PyKeyError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn cat_err(e: weightcat::catcore::CatError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated category spec.
#[pyclass(frozen)]
struct Model {
    name: String,
    spec: CategorySpec,
}

#[pymethods]
impl Model {
    /// A shipped model by name ("ell" or "arrow").
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let spec = by_name(name).ok_or_else(|| PyKeyError::new_err(format!("no builtin model {name:?}")))?;
        Ok(Model { name: name.into(), spec })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let spec = bench::load_spec(path).map_err(py_err)?;
        let name = std::path::Path::new(path).file_stem().map_or(path.into(), |s| s.to_string_lossy().into_owned());
        Ok(Model { name, spec })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Model { name: "model".into(), spec: bench::parse_spec(text).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        bench::spec_to_json(&self.spec)
    }

    #[getter]
    fn simples(&self) -> Vec<String> {
        self.spec.simples.iter().map(|s| s.name.clone()).collect()
    }

    fn hom_dim(&self, x: &str, y: &str) -> PyResult<usize> {
        Ok(self.spec.hom_dim(&self.obj(x)?, &self.obj(y)?))
    }

    fn numerical_ideal_dim(&self, x: &str, y: &str) -> PyResult<usize> {
        Ok(self.spec.numerical_ideal(&self.obj(x)?, &self.obj(y)?).dim())
    }

    fn radical_dim(&self, x: &str, y: &str) -> PyResult<usize> {
        Ok(self.spec.radical(&self.obj(x)?, &self.obj(y)?).map_err(cat_err)?.dim())
    }

    /// Trace of the identity, as a "p/q" string.
    fn dim(&self, x: &str) -> PyResult<String> {
        let x = self.obj(x)?;
        Ok(self.spec.trace(&Mor::identity(&self.spec, &x)).map_err(cat_err)?.to_string())
    }

    fn tensor(&self, x: &str, y: &str) -> PyResult<String> {
        let t = self.spec.tensor_obj(&self.obj(x)?, &self.obj(y)?).map_err(cat_err)?;
        Ok(t.describe(&self.spec))
    }

    /// (even rank, odd rank).
    fn kimura_profile(&self, x: &str) -> PyResult<(u64, u64)> {
        let k = self.spec.kimura_profile(&self.obj(x)?);
        Ok((k.even_rank, k.odd_rank))
    }

    fn sym_power_rank(&self, x: &str, n: u32) -> PyResult<String> {
        Ok(self.spec.sym_power_rank(&self.obj(x)?, n).to_string())
    }

    fn wedge_power_rank(&self, x: &str, n: u32) -> PyResult<String> {
        Ok(self.spec.wedge_power_rank(&self.obj(x)?, n).to_string())
    }

    /// Runs one scenario and returns its report as JSON.
    #[pyo3(signature = (name, seed=0, bound=8))]
    fn run_scenario(&self, name: &str, seed: u64, bound: usize) -> PyResult<String> {
        let r = bench::run_scenario(name, &self.spec, &RunConfig { seed, bound }).map_err(py_err)?;
        Ok(bench::SuiteReport::new(&self.name, seed, bound, vec![r]).to_json())
    }

    /// Runs every scenario; returns (pass, text report).
    #[pyo3(signature = (seed=0, bound=8))]
    fn verify_all(&self, py: Python<'_>, seed: u64, bound: usize) -> (bool, String) {
        let report = py.detach(|| bench::run_all(&self.name, &self.spec, &RunConfig { seed, bound }));
        (report.pass, report.to_text())
    }

    fn __repr__(&self) -> String {
        format!("Model({:?}, simples={:?})", self.name, self.simples())
    }
}

impl Model {
    fn obj(&self, expr: &str) -> PyResult<Obj> {
        bench::parse_obj_expr(&self.spec, expr).map_err(py_err)
    }
}

/// A bounded complex over a model.
#[pyclass(frozen)]
struct Complex {
    spec: CategorySpec,
    cx: Cx,
}

#[pymethods]
impl Complex {
    #[staticmethod]
    fn load(model: &Model, path: &str) -> PyResult<Self> {
        Ok(Complex { spec: model.spec.clone(), cx: bench::load_complex(&model.spec, path).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_json(model: &Model, text: &str) -> PyResult<Self> {
        let file = ComplexFile::parse(text).map_err(py_err)?;
        Ok(Complex { spec: model.spec.clone(), cx: file.to_complex(&model.spec).map_err(py_err)? })
    }

    /// The two-term complex on the model's numerical arrow.
    #[staticmethod]
    fn arrow(model: &Model) -> PyResult<Self> {
        Ok(Complex { spec: model.spec.clone(), cx: arrow_complex(&model.spec).map_err(cat_err)? })
    }

    fn to_json(&self) -> String {
        ComplexFile::from_complex(&self.spec, &self.cx).to_json()
    }

    fn minimize(&self) -> PyResult<Complex> {
        let m = self.spec.minimize(&self.cx).map_err(cat_err)?;
        Ok(Complex { spec: self.spec.clone(), cx: m.complex })
    }

    fn shift(&self, n: i32) -> Complex {
        Complex { spec: self.spec.clone(), cx: self.cx.shift(n) }
    }

    /// (low, high) weights, or None for a contractible complex.
    fn weight_window(&self) -> PyResult<Option<(i32, i32)>> {
        self.spec.weight_window(&self.cx).map_err(cat_err)
    }

    /// (low, high) of the weight truncation at `b`.
    fn truncate(&self, b: i32) -> PyResult<(Complex, Complex)> {
        let d = self.spec.weight_truncate(&self.cx, b).map_err(cat_err)?;
        Ok((Complex { spec: self.spec.clone(), cx: d.low }, Complex { spec: self.spec.clone(), cx: d.high }))
    }

    fn kb_trace(&self) -> PyResult<String> {
        Ok(self.spec.kb_trace(&ChainMap::identity(&self.spec, &self.cx)).map_err(cat_err)?.to_string())
    }

    fn pi(&self) -> PyResult<String> {
        Ok(self.spec.pi_obj(&self.cx).map_err(cat_err)?.describe(&self.spec))
    }

    fn hom_dim(&self, other: &Complex) -> PyResult<usize> {
        Ok(self.spec.kb_hom(&self.cx, &other.cx).map_err(cat_err)?.dim())
    }

    /// (image, target) dimensions of π on Hom(self, other).
    fn fullness_gap(&self, other: &Complex) -> PyResult<(usize, usize)> {
        let g = self.spec.fullness_gap(&self.cx, &other.cx).map_err(cat_err)?;
        Ok((g.image_dim, g.target_dim))
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> =
            self.cx.components().iter().map(|(i, o)| format!("{i}: {}", o.describe(&self.spec))).collect();
        format!("Complex({{{}}})", parts.join(", "))
    }
}

#[pyfunction]
fn scenarios() -> Vec<&'static str> {
    bench::SCENARIOS.to_vec()
}

#[pymodule]
#[pyo3(name = "weightcat")]
fn weightcat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_class::<Complex>()?;
    m.add_function(wrap_pyfunction!(scenarios, m)?)?;
    Ok(())
}
