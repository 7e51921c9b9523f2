//! Python bindings: a thin wrapper exposing words-in, strings-out views of
//! the core library. Group elements cross the boundary as reduced words
//! (generator 0 is the affine reflection), polynomials and reports as
//! strings, so no Python-side state can drift out of sync with the Rust
//! side.

use std::sync::Mutex;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tiltval_core::engine::Engine;
use tiltval_core::hecke::Hecke;
use tiltval_core::rootsys::Mat;
use tiltval_core::Caps;

fn err_py(e: tiltval_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "RootSystem")]
struct PyRootSystem {
    inner: Mutex<Engine>,
}

impl PyRootSystem {
    fn check_reduced(engine: &Engine, word: &[usize]) -> PyResult<tiltval_core::affine::AffineElement> {
        let x = engine.weyl().element_from_word(word).map_err(err_py)?;
        if engine.weyl().length(&x) as usize != word.len() {
            return Err(PyValueError::new_err(format!("word {word:?} is not reduced")));
        }
        Ok(x)
    }
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        let engine = Engine::new(label, Caps::default()).map_err(err_py)?;
        Ok(PyRootSystem {
            inner: Mutex::new(engine),
        })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.lock().unwrap().rs().label.clone()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.lock().unwrap().rs().rank
    }

    #[getter]
    fn num_positive_roots(&self) -> usize {
        self.inner.lock().unwrap().rs().num_positive_roots()
    }

    #[getter]
    fn coxeter_number(&self) -> i64 {
        self.inner.lock().unwrap().rs().coxeter_number
    }

    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.lock().unwrap().rs().cartan.clone()
    }

    /// Length of the element given by any word (need not be reduced).
    fn length(&self, word: Vec<usize>) -> PyResult<u32> {
        let engine = self.inner.lock().unwrap();
        let x = engine.weyl().element_from_word(&word).map_err(err_py)?;
        Ok(engine.weyl().length(&x))
    }

    /// Canonical reduced word of the element given by any word.
    fn reduced_word(&self, word: Vec<usize>) -> PyResult<Vec<usize>> {
        let engine = self.inner.lock().unwrap();
        let x = engine.weyl().element_from_word(&word).map_err(err_py)?;
        Ok(engine.weyl().reduced_word(&x))
    }

    fn bruhat_leq(&self, x: Vec<usize>, w: Vec<usize>) -> PyResult<bool> {
        let engine = self.inner.lock().unwrap();
        let xe = engine.weyl().element_from_word(&x).map_err(err_py)?;
        let we = engine.weyl().element_from_word(&w).map_err(err_py)?;
        Ok(engine.weyl().bruhat_leq(&xe, &we))
    }

    /// Fixed point of the parabolic omitting the given generator, as exact
    /// rational strings in fundamental-weight coordinates.
    fn invariant_point(&self, omit: usize) -> PyResult<Vec<String>> {
        let engine = self.inner.lock().unwrap();
        let par = engine
            .weyl()
            .parabolic(omit, &Caps::default())
            .map_err(err_py)?;
        Ok(engine.weyl().invariant_point(&par).coords_string())
    }

    /// P_{x,w} as a polynomial in q, e.g. "1 + q".
    fn kl_polynomial(&self, x: Vec<usize>, w: Vec<usize>) -> PyResult<String> {
        let mut engine = self.inner.lock().unwrap();
        let xe = Self::check_reduced(&engine, &x)?;
        let we = Self::check_reduced(&engine, &w)?;
        let coeffs = engine.anti.hecke.kl_q_coeffs(&xe, &we);
        Ok(Hecke::format_q_poly(&coeffs))
    }

    /// Two-sided cells of the parabolic omitting the given generator:
    /// a list of (a-value, [reduced words]).
    fn cells(&self, omit: usize) -> PyResult<Vec<(u32, Vec<Vec<usize>>)>> {
        let mut engine = self.inner.lock().unwrap();
        let par = engine
            .weyl()
            .parabolic(omit, &Caps::default())
            .map_err(err_py)?;
        let cells = engine.anti.hecke.two_sided_cells(&par).map_err(err_py)?;
        let weyl = engine.weyl();
        Ok(cells
            .iter()
            .map(|c| {
                (
                    c.a,
                    c.elements.iter().map(|x| weyl.reduced_word(x)).collect(),
                )
            })
            .collect())
    }

    /// The symbolic Delta-sum for w, optionally conjugated by the finite
    /// part of y, in variables m1.. and l1..
    #[pyo3(signature = (w, y=None))]
    fn delta(&self, w: Vec<usize>, y: Option<Vec<usize>>) -> PyResult<String> {
        let mut engine = self.inner.lock().unwrap();
        let we = Self::check_reduced(&engine, &w)?;
        let ybar = match y {
            Some(word) => Self::check_reduced(&engine, &word)?.mat,
            None => Mat::identity(engine.rs().rank),
        };
        Ok(engine.delta_sum_formatted(&ybar, &we))
    }

    /// Full verification sweep; returns the report as a JSON string.
    fn verify(&self, p: u64) -> PyResult<String> {
        let mut engine = self.inner.lock().unwrap();
        let report = engine.verify(p).map_err(err_py)?;
        Ok(serde_json::to_string_pretty(&report).unwrap())
    }
}

/// One-shot verification; returns the report as a JSON string.
#[pyfunction]
fn verify(label: &str, p: u64) -> PyResult<String> {
    let mut engine = Engine::new(label, Caps::default()).map_err(err_py)?;
    let report = engine.verify(p).map_err(err_py)?;
    Ok(serde_json::to_string_pretty(&report).unwrap())
}

#[pymodule]
fn tiltval_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
