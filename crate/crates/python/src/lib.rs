use std::sync::Arc;

use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use usmod::certificate::{envelope_certificate, injectivity_report, EssentialJson, Tier};
use usmod::essential::{is_essential, is_u_s_essential_fast, is_u_s_essential_oracle, quotient_characterization, EssentialVerdict};
use usmod::harness::corpus::{generate_corpus, Bounds};
use usmod::harness::laws::run_laws;
use usmod::harness::report::{Format, Report};
use usmod::harness::search::search_counterexample;
use usmod::injective::{is_injective_baer, InjVerdict};
use usmod::module::{FiniteModule, Submodule as Sub};
use usmod::mset::MultiplicativeSet as MSet;
use usmod::ring::{FiniteRing, Ideal};
use usmod::torsion::{is_u_s_torsion, s_torsion_submodule};

fn err(e: usmod::error::Error) -> PyErr {
    if e.is_resource() {
        PyMemoryError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn ring_elems(r: &FiniteRing, names: &[String]) -> PyResult<Vec<usize>> {
    names
        .iter()
        .map(|n| r.find(n).ok_or_else(|| PyValueError::new_err(format!("`{n}` is not an element of {}", r.label()))))
        .collect()
}

#[pyclass(name = "Ring", frozen)]
struct Ring {
    inner: Arc<FiniteRing>,
}

#[pymethods]
impl Ring {
    #[staticmethod]
    fn zmod(n: usize) -> PyResult<Self> {
        Ok(Ring { inner: FiniteRing::zmod(n).map_err(err)? })
    }

    #[staticmethod]
    fn product(a: PyRef<'_, Ring>, b: PyRef<'_, Ring>) -> PyResult<Self> {
        Ok(Ring {
            inner: FiniteRing::product(&a.inner, &b.inner).map_err(err)?,
        })
    }

    /// R ⋉ M.
    #[staticmethod]
    fn trivial_extension(m: PyRef<'_, Module>) -> PyResult<Self> {
        Ok(Ring {
            inner: FiniteRing::trivial_extension(&m.inner).map_err(err)?,
        })
    }

    /// R / (gens).
    fn quotient(&self, gens: Vec<String>) -> PyResult<Ring> {
        let ideal = Ideal::generated(&self.inner, &ring_elems(&self.inner, &gens)?).map_err(err)?;
        Ok(Ring {
            inner: FiniteRing::quotient(&self.inner, &ideal).map_err(err)?.ring,
        })
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.elements().map(|x| self.inner.name(x).to_string()).collect()
    }

    fn units(&self) -> Vec<String> {
        self.inner.units().into_iter().map(|x| self.inner.name(x).to_string()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.inner.label())
    }
}

#[pyclass(name = "MultiplicativeSet", frozen)]
struct MultiplicativeSet {
    inner: MSet,
}

#[pymethods]
impl MultiplicativeSet {
    #[staticmethod]
    fn closure(ring: PyRef<'_, Ring>, gens: Vec<String>) -> PyResult<Self> {
        let g = ring_elems(&ring.inner, &gens)?;
        Ok(MultiplicativeSet {
            inner: MSet::closure(&ring.inner, &g).map_err(err)?,
        })
    }

    #[staticmethod]
    fn units(ring: PyRef<'_, Ring>) -> Self {
        MultiplicativeSet {
            inner: MSet::units(&ring.inner),
        }
    }

    #[staticmethod]
    fn trivial(ring: PyRef<'_, Ring>) -> Self {
        MultiplicativeSet {
            inner: MSet::trivial(&ring.inner),
        }
    }

    /// R ∖ p for the prime p generated by `gens`.
    #[staticmethod]
    fn complement_of_prime(ring: PyRef<'_, Ring>, gens: Vec<String>) -> PyResult<Self> {
        let p = Ideal::generated(&ring.inner, &ring_elems(&ring.inner, &gens)?).map_err(err)?;
        Ok(MultiplicativeSet {
            inner: MSet::complement_of_prime(&ring.inner, &p).map_err(err)?,
        })
    }

    fn members(&self) -> Vec<String> {
        let r = self.inner.ring();
        self.inner.iter().map(|x| r.name(x).to_string()).collect()
    }

    #[getter]
    fn sigma(&self) -> String {
        self.inner.ring().name(self.inner.sigma()).to_string()
    }

    #[getter]
    fn is_regular(&self) -> bool {
        self.inner.is_regular()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("MultiplicativeSet({})", self.inner.display())
    }
}

#[pyclass(name = "Module", frozen)]
struct Module {
    inner: Arc<FiniteModule>,
}

#[pymethods]
impl Module {
    #[staticmethod]
    fn regular(ring: PyRef<'_, Ring>) -> Self {
        Module {
            inner: FiniteModule::regular(&ring.inner),
        }
    }

    #[staticmethod]
    fn zero(ring: PyRef<'_, Ring>) -> Self {
        Module {
            inner: FiniteModule::zero_module(&ring.inner),
        }
    }

    #[staticmethod]
    fn direct_sum(parts: Vec<PyRef<'_, Module>>) -> PyResult<Self> {
        let ms: Vec<Arc<FiniteModule>> = parts.iter().map(|m| m.inner.clone()).collect();
        Ok(Module {
            inner: FiniteModule::direct_sum(&ms).map_err(err)?.module,
        })
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn span(&self, gens: Vec<String>) -> PyResult<Submodule> {
        let g = gens
            .iter()
            .map(|n| self.inner.find(n).ok_or_else(|| PyValueError::new_err(format!("`{n}` is not an element of {}", self.inner.label()))))
            .collect::<PyResult<Vec<usize>>>()?;
        Ok(Submodule {
            inner: self.inner.span(&g).map_err(err)?,
        })
    }

    fn whole(&self) -> Submodule {
        Submodule { inner: self.inner.whole() }
    }

    fn submodules(&self) -> PyResult<Vec<Submodule>> {
        Ok(self.inner.all_submodules().map_err(err)?.into_iter().map(|k| Submodule { inner: k }).collect())
    }

    fn quotient(&self, k: PyRef<'_, Submodule>) -> PyResult<Module> {
        Ok(Module {
            inner: self.inner.quotient(&k.inner).map_err(err)?.module,
        })
    }

    /// tor_S(M).
    fn s_torsion(&self, s: PyRef<'_, MultiplicativeSet>) -> PyResult<Submodule> {
        Ok(Submodule {
            inner: s_torsion_submodule(&self.inner, &s.inner).map_err(err)?,
        })
    }

    fn is_injective(&self) -> PyResult<bool> {
        Ok(is_injective_baer(&self.inner).map_err(err)?.verdict == InjVerdict::Injective)
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Module({})", self.inner.label())
    }
}

#[pyclass(name = "Submodule", frozen)]
struct Submodule {
    inner: Sub,
}

fn verdict_dict<'py>(py: Python<'py>, v: &EssentialVerdict, s: &MSet) -> PyResult<Bound<'py, PyDict>> {
    let j = EssentialJson::of(v, s);
    let d = PyDict::new(py);
    d.set_item("verdict", j.verdict)?;
    d.set_item("method", format!("{:?}", j.method))?;
    d.set_item("witness_s", j.witness_s)?;
    d.set_item("counterexample_L", j.counterexample_l)?;
    Ok(d)
}

#[pymethods]
impl Submodule {
    fn elements(&self) -> Vec<String> {
        let m = self.inner.parent();
        self.inner.to_vec().into_iter().map(|x| m.name(x).to_string()).collect()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.len()
    }

    fn parent(&self) -> Module {
        Module {
            inner: self.inner.parent().clone(),
        }
    }

    /// The submodule as a module in its own right.
    fn as_module(&self) -> PyResult<Module> {
        Ok(Module {
            inner: self.inner.as_module().map_err(err)?.0,
        })
    }

    fn is_essential(&self) -> PyResult<bool> {
        Ok(is_essential(&self.inner).map_err(err)?.verdict)
    }

    fn is_u_s_essential(&self, s: PyRef<'_, MultiplicativeSet>) -> PyResult<bool> {
        Ok(is_u_s_essential_fast(&self.inner, &s.inner).map_err(err)?.verdict)
    }

    /// Verdict with witnesses; `method` is "fast", "oracle" or "quotient".
    #[pyo3(signature = (s, method = "fast"))]
    fn u_s_essential_verdict<'py>(&self, py: Python<'py>, s: PyRef<'_, MultiplicativeSet>, method: &str) -> PyResult<Bound<'py, PyDict>> {
        let v = match method {
            "fast" => is_u_s_essential_fast(&self.inner, &s.inner),
            "oracle" => is_u_s_essential_oracle(&self.inner, &s.inner),
            "quotient" => quotient_characterization(&self.inner, &s.inner),
            _ => return Err(PyValueError::new_err(format!("unknown method `{method}`"))),
        }
        .map_err(err)?;
        verdict_dict(py, &v, &s.inner)
    }

    fn is_u_s_torsion(&self, s: PyRef<'_, MultiplicativeSet>) -> PyResult<bool> {
        Ok(is_u_s_torsion(&self.inner, &s.inner).map_err(err)?.holds)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: PyRef<'_, Submodule>) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Submodule({})", self.inner.display())
    }
}

/// Envelope certificate JSON for M.
#[pyfunction]
fn envelope_json(m: PyRef<'_, Module>, s: PyRef<'_, MultiplicativeSet>) -> PyResult<String> {
    let cert = envelope_certificate(&m.inner, &s.inner).map_err(err)?;
    Ok(serde_json::to_string(&cert).expect("serializable"))
}

/// Injectivity report JSON; tier is "certify", "bounded" or "refute".
#[pyfunction]
#[pyo3(signature = (m, s, tier = "certify"))]
fn injectivity_json(m: PyRef<'_, Module>, s: PyRef<'_, MultiplicativeSet>, tier: &str) -> PyResult<String> {
    let t: Tier = tier.parse().map_err(err)?;
    let rep = injectivity_report(&m.inner, &s.inner, t).map_err(err)?;
    Ok(serde_json::to_string(&rep).expect("serializable"))
}

/// Runs a DSL program; returns (line, text, status, actual) per assertion.
#[pyfunction]
fn check(source: &str) -> PyResult<Vec<(usize, String, String, String)>> {
    let session = usmod::dsl::run_source(source).map_err(err)?;
    Ok(session
        .results
        .into_iter()
        .map(|r| {
            let status = match r.status {
                usmod::dsl::Status::Pass => "pass",
                usmod::dsl::Status::Fail => "fail",
                usmod::dsl::Status::SkippedResource => "skipped-resource",
            };
            (r.line, r.text, status.to_string(), r.actual)
        })
        .collect())
}

/// Law-suite report JSON over a seeded corpus.
#[pyfunction]
#[pyo3(signature = (seed = 42, count = 20, law = None, max_ring = 36, max_module = 64))]
fn laws_json(py: Python<'_>, seed: u64, count: usize, law: Option<String>, max_ring: usize, max_module: usize) -> PyResult<String> {
    let bounds = Bounds {
        max_ring,
        max_module,
        count,
    };
    py.detach(|| {
        let corpus = generate_corpus(seed, &bounds)?;
        let results = run_laws(&corpus, law.as_deref())?;
        let caps = *usmod::caps::Caps::global();
        Ok(Report::new(seed, caps, bounds, law, results).render(Format::Json))
    })
    .map_err(err)
}

/// Counterexample search report JSON.
#[pyfunction]
#[pyo3(signature = (claim, max_ring = 12, max_module = 64, seed = 0, count = 200))]
fn search_json(py: Python<'_>, claim: &str, max_ring: usize, max_module: usize, seed: u64, count: usize) -> PyResult<String> {
    let bounds = Bounds {
        max_ring,
        max_module,
        count,
    };
    let claim = claim.to_string();
    py.detach(|| search_counterexample(&claim, &bounds, seed))
        .map(|r| serde_json::to_string(&r).expect("serializable"))
        .map_err(err)
}

#[pymodule]
#[pyo3(name = "usmod")]
pub fn usmod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<MultiplicativeSet>()?;
    m.add_class::<Module>()?;
    m.add_class::<Submodule>()?;
    m.add_function(wrap_pyfunction!(envelope_json, m)?)?;
    m.add_function(wrap_pyfunction!(injectivity_json, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(laws_json, m)?)?;
    m.add_function(wrap_pyfunction!(search_json, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
