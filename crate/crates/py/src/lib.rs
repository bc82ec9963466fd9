//! Python bindings: Cartan data and character tables, highest-weight crystal
//! generation and verification, and the quiver-side exact-rational toolkit.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use quivercrystal::binfinity::{
    generate_binf_tensor_graph, generate_blambda_default, IotaSequence, StringElement,
};
use quivercrystal::cartan::{CartanDatum, WeightVector};
use quivercrystal::crystal::{check_axioms, verify_highest_weight_characterization, CrystalGraph};
use quivercrystal::error::Error;
use quivercrystal::quiver::{
    dimension_identity, extend_i, free_action_checks, sample_lagrangian_point, shrink_i,
    ADHMDatum, DoubledQuiver, GradedDims,
};

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A symmetric generalized Cartan matrix with its derived structure.
#[pyclass(name = "Cartan", skip_from_py_object)]
#[derive(Clone)]
struct PyCartan {
    inner: CartanDatum,
}

#[pymethods]
impl PyCartan {
    /// Build from a preset name ("A1", ..., "D4", ..., "E8").
    #[new]
    fn new(preset: &str) -> PyResult<Self> {
        Ok(PyCartan {
            inner: CartanDatum::preset(preset).map_err(to_py_err)?,
        })
    }

    /// Build from an explicit integer matrix.
    #[staticmethod]
    fn from_matrix(matrix: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(PyCartan {
            inner: CartanDatum::new(matrix).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<i64>> {
        self.inner.matrix().clone()
    }

    #[getter]
    fn is_finite_type(&self) -> bool {
        self.inner.is_finite_type()
    }

    /// <h_i, lam> for lam given in fundamental-weight coordinates.
    fn pairing(&self, i: usize, lam: Vec<i64>) -> PyResult<i64> {
        self.inner
            .pairing(i, &WeightVector::from_lam(lam))
            .map_err(to_py_err)
    }

    /// Truncated character table: list of (nu, multiplicity) with
    /// |ht(nu)| <= bound, nu in simple-root coordinates.
    fn character(&self, lam: Vec<i64>, bound: i64) -> PyResult<Vec<(Vec<i64>, u64)>> {
        let table = self
            .inner
            .weyl_kac_character(&WeightVector::from_lam(lam), bound)
            .map_err(to_py_err)?;
        Ok(table.entries.clone())
    }

    fn __repr__(&self) -> String {
        format!("Cartan(rank={})", self.inner.rank())
    }
}

/// A generated highest-weight crystal graph.
#[pyclass(name = "Crystal")]
struct PyCrystal {
    cartan: CartanDatum,
    lam: WeightVector,
    graph: CrystalGraph,
}

#[pymethods]
impl PyCrystal {
    /// Generate the highest-weight crystal for lam (fundamental-weight
    /// coordinates) down to height-distance `depth`.
    #[new]
    #[pyo3(signature = (cartan, lam, depth = 30))]
    fn new(cartan: &PyCartan, lam: Vec<i64>, depth: i64) -> PyResult<Self> {
        let lam = WeightVector::from_lam(lam);
        let graph =
            generate_blambda_default(&cartan.inner, &lam, depth).map_err(to_py_err)?;
        Ok(PyCrystal {
            cartan: cartan.inner.clone(),
            lam,
            graph,
        })
    }

    fn __len__(&self) -> usize {
        self.graph.len()
    }

    #[getter]
    fn truncated(&self) -> bool {
        self.graph.truncated
    }

    fn keys(&self) -> Vec<String> {
        self.graph
            .elements()
            .iter()
            .map(|e| e.key.clone())
            .collect()
    }

    /// Edges as (from_key, to_key, color) triples.
    fn edges(&self) -> Vec<(String, String, usize)> {
        self.graph
            .edges()
            .iter()
            .map(|e| {
                (
                    self.graph.element(e.from).key.clone(),
                    self.graph.element(e.to).key.clone(),
                    e.i,
                )
            })
            .collect()
    }

    /// Multiplicity of each weight, keyed by nu (simple-root coordinates).
    fn weight_census(&self) -> Vec<(Vec<i64>, u64)> {
        self.graph
            .weight_census(&self.lam)
            .into_iter()
            .collect()
    }

    fn to_dot(&self) -> String {
        self.graph.to_dot()
    }

    fn to_json(&self) -> String {
        self.graph.to_json().to_string()
    }

    /// Axiom violations as human-readable strings (empty = clean).
    fn check_axioms(&self) -> PyResult<Vec<String>> {
        let report = check_axioms(&self.graph, &self.cartan).map_err(to_py_err)?;
        Ok(report
            .violations
            .iter()
            .map(|v| format!("[{}] {}: {}", v.axiom, v.element, v.detail))
            .collect())
    }

    /// Witnesses against the highest-weight characterization (empty = pass).
    fn verify_characterization(&self) -> PyResult<Vec<String>> {
        let iota = IotaSequence::default_cycle(self.cartan.rank());
        let depth = self.graph.max_ht_distance(&self.lam);
        let domain = generate_binf_tensor_graph(&self.cartan, &iota, &self.lam, depth + 1)
            .map_err(to_py_err)?;
        let top = quivercrystal::binfinity::tensor_key(&StringElement::b0(), &self.lam);
        let report = verify_highest_weight_characterization(
            &self.cartan,
            &self.graph,
            &top,
            &self.lam,
            &domain,
            &top,
        )
        .map_err(to_py_err)?;
        Ok(report.witnesses())
    }

    fn __repr__(&self) -> String {
        format!("Crystal(elements={})", self.graph.len())
    }
}

/// A stable representation point of the doubled quiver with its ambient data.
#[pyclass(name = "QuiverPoint")]
struct PyQuiverPoint {
    cartan: CartanDatum,
    quiver: DoubledQuiver,
    datum: ADHMDatum,
}

#[pymethods]
impl PyQuiverPoint {
    /// Sample a stable zero of the moment map with nilpotent B.
    #[new]
    #[pyo3(signature = (cartan, v, w, seed = 0))]
    fn new(cartan: &PyCartan, v: Vec<usize>, w: Vec<usize>, seed: u64) -> PyResult<Self> {
        let quiver = DoubledQuiver::from_cartan(&cartan.inner);
        let dims = GradedDims::new(v, w).map_err(to_py_err)?;
        let datum = sample_lagrangian_point(&quiver, &dims, seed).map_err(to_py_err)?;
        Ok(PyQuiverPoint {
            cartan: cartan.inner.clone(),
            quiver,
            datum,
        })
    }

    #[getter]
    fn v(&self) -> Vec<usize> {
        self.datum.dims.v.clone()
    }

    #[getter]
    fn w(&self) -> Vec<usize> {
        self.datum.dims.w.clone()
    }

    fn to_json(&self) -> String {
        self.datum.to_json().to_string()
    }

    fn moment_map_is_zero(&self) -> bool {
        self.datum.moment_map_is_zero(&self.quiver)
    }

    fn is_stable(&self) -> bool {
        self.datum.is_stable(&self.quiver).stable
    }

    fn is_nilpotent(&self) -> bool {
        self.datum.is_nilpotent(&self.quiver)
    }

    /// Cokernel dimension of the assembled maps into vertex i.
    fn eps(&self, i: usize) -> i64 {
        self.datum.eps_i(&self.quiver, i)
    }

    /// (stabilizer dimension, rank of the linearized moment map, expected rank).
    fn free_action(&self) -> PyResult<(usize, usize, usize)> {
        let rep = free_action_checks(&self.quiver, &self.datum).map_err(to_py_err)?;
        Ok((rep.stabilizer_dim, rep.rank_dmu, rep.expected_rank))
    }

    /// New point with dim V_i lowered by k (cokernel drops by k).
    fn shrink(&self, i: usize, k: usize) -> PyResult<PyQuiverPoint> {
        let datum = shrink_i(&self.quiver, &self.datum, i, k).map_err(to_py_err)?;
        Ok(PyQuiverPoint {
            cartan: self.cartan.clone(),
            quiver: self.quiver.clone(),
            datum,
        })
    }

    /// New point with dim V_i raised by l (cokernel grows by l); also returns
    /// the dimension of the kernel the gluing was drawn from.
    #[pyo3(signature = (i, l, seed = 0))]
    fn extend(&self, i: usize, l: usize, seed: u64) -> PyResult<(PyQuiverPoint, usize)> {
        let out =
            extend_i(&self.quiver, &self.cartan, &self.datum, i, l, seed).map_err(to_py_err)?;
        Ok((
            PyQuiverPoint {
                cartan: self.cartan.clone(),
                quiver: self.quiver.clone(),
                datum: out.datum,
            },
            out.kernel_dim,
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "QuiverPoint(v={:?}, w={:?})",
            self.datum.dims.v, self.datum.dims.w
        )
    }
}

/// Both sides of the graded dimension identity: (lhs, rhs as string, equal).
#[pyfunction]
fn dim_identity(cartan: &PyCartan, v: Vec<usize>, w: Vec<usize>) -> PyResult<(i64, String, bool)> {
    let quiver = DoubledQuiver::from_cartan(&cartan.inner);
    let dims = GradedDims::new(v, w).map_err(to_py_err)?;
    let id = dimension_identity(&cartan.inner, &quiver, &dims).map_err(to_py_err)?;
    Ok((id.lhs, id.rhs.to_string(), id.equal))
}

#[pymodule]
fn quivercrystal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCartan>()?;
    m.add_class::<PyCrystal>()?;
    m.add_class::<PyQuiverPoint>()?;
    m.add_function(wrap_pyfunction!(dim_identity, m)?)?;
    Ok(())
}
