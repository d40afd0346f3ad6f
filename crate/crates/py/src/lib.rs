//! Python bindings for logtrop.
//!
//! Integers cross the boundary as Python `int`s of any size; rational
//! results come back as `fractions.Fraction`. Reports are returned as dicts
//! with the same layout as the JSON documents written by the CLI.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use logtrop_core::compactify;
use logtrop_core::cones::{self, Cone as CoreCone, Fan as CoreFan};
use logtrop_core::exactlin::{self, IntegerVector, RationalMatrix, RationalVector};
use logtrop_core::io::{self, FormatError};
use logtrop_core::katofan::{self, KatoFan as CoreKatoFan, ToricMonoid};
use logtrop_core::topology::{self, SimplicialComplex as CoreComplex};
use logtrop_core::trop::{self, PolySupport, TropFan as CoreTropFan, TropOptions};

create_exception!(logtrop, LogtropError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    LogtropError::new_err(e.to_string())
}

fn format_err(e: FormatError) -> PyErr {
    err(e)
}

fn vector(v: Vec<BigInt>) -> IntegerVector {
    IntegerVector::new(v)
}

fn vectors(vs: Vec<Vec<BigInt>>, dim: usize) -> PyResult<Vec<IntegerVector>> {
    vs.into_iter()
        .map(|v| {
            if v.len() != dim {
                return Err(err(format!(
                    "vector of length {} in dimension {dim}",
                    v.len()
                )));
            }
            Ok(vector(v))
        })
        .collect()
}

fn ambient(rays: &[Vec<BigInt>], ambient_dim: Option<usize>) -> PyResult<usize> {
    ambient_dim
        .or_else(|| rays.first().map(Vec::len))
        .ok_or_else(|| err("ambient_dim is required when there are no rays"))
}

fn entries(v: &IntegerVector) -> Vec<BigInt> {
    v.entries().to_vec()
}

fn fraction_list<'py>(py: Python<'py>, v: &RationalVector) -> PyResult<Bound<'py, PyList>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    let items = v
        .entries()
        .iter()
        .map(|q| fraction.call1((q.numer().clone(), q.denom().clone())))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(module = "logtrop", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct Cone {
    inner: CoreCone,
}

#[pymethods]
impl Cone {
    #[new]
    #[pyo3(signature = (rays, ambient_dim=None))]
    fn new(rays: Vec<Vec<BigInt>>, ambient_dim: Option<usize>) -> PyResult<Self> {
        let n = ambient(&rays, ambient_dim)?;
        let inner = CoreCone::from_rays(n, &vectors(rays, n)?).map_err(err)?;
        Ok(Cone { inner })
    }

    /// The cone `{x : a·x ≥ 0, e·x = 0}`.
    #[staticmethod]
    #[pyo3(signature = (ambient_dim, inequalities, equations=Vec::new()))]
    fn from_inequalities(
        ambient_dim: usize,
        inequalities: Vec<Vec<BigInt>>,
        equations: Vec<Vec<BigInt>>,
    ) -> PyResult<Self> {
        let inner = CoreCone::from_inequalities(
            ambient_dim,
            &vectors(inequalities, ambient_dim)?,
            &vectors(equations, ambient_dim)?,
        )
        .map_err(err)?;
        Ok(Cone { inner })
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn rays(&self) -> Vec<Vec<BigInt>> {
        self.inner.rays().iter().map(entries).collect()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<BigInt>> {
        self.inner.facets().iter().map(entries).collect()
    }

    #[getter]
    fn equations(&self) -> Vec<Vec<BigInt>> {
        self.inner.equations().iter().map(entries).collect()
    }

    fn is_simplicial(&self) -> bool {
        self.inner.is_simplicial()
    }

    fn contains(&self, point: Vec<BigInt>) -> bool {
        point.len() == self.inner.ambient_dim() && self.inner.contains_lattice_point(&vector(point))
    }

    fn faces(&self) -> Vec<Cone> {
        self.inner
            .faces()
            .into_iter()
            .map(|inner| Cone { inner })
            .collect()
    }

    fn __repr__(&self) -> String {
        let rays: Vec<String> = self.inner.rays().iter().map(ToString::to_string).collect();
        format!("Cone([{}])", rays.join(", "))
    }
}

#[pyclass(module = "logtrop", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct Fan {
    inner: CoreFan,
}

#[pymethods]
impl Fan {
    /// A fan from a ray table and its maximal cones as index lists.
    #[new]
    #[pyo3(signature = (rays, cones, ambient_dim=None))]
    fn new(
        rays: Vec<Vec<BigInt>>,
        cones: Vec<Vec<usize>>,
        ambient_dim: Option<usize>,
    ) -> PyResult<Self> {
        let n = ambient(&rays, ambient_dim)?;
        let inner = CoreFan::from_ray_indices(n, &vectors(rays, n)?, &cones).map_err(err)?;
        Ok(Fan { inner })
    }

    #[staticmethod]
    fn origin(ambient_dim: usize) -> Self {
        Fan {
            inner: CoreFan::origin(ambient_dim),
        }
    }

    /// The complete fan of `(P^1)^n`.
    #[staticmethod]
    fn orthants(ambient_dim: usize) -> Self {
        Fan {
            inner: CoreFan::orthants(ambient_dim),
        }
    }

    #[staticmethod]
    fn from_cone(cone: &Cone) -> Self {
        Fan {
            inner: CoreFan::from_cone(&cone.inner),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Fan {
            inner: io::fan_from_json(text).map_err(format_err)?,
        })
    }

    fn to_json(&self) -> String {
        io::fan_to_json(&self.inner)
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn rays(&self) -> Vec<Vec<BigInt>> {
        self.inner.rays().iter().map(entries).collect()
    }

    /// Every cone, as ray-index lists, the zero cone first.
    #[getter]
    fn cones(&self) -> Vec<Vec<usize>> {
        self.inner.cones().iter().map(|c| c.rays.clone()).collect()
    }

    #[getter]
    fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.inner
            .maximal_cones()
            .iter()
            .map(|c| c.rays.clone())
            .collect()
    }

    fn cone(&self, index: usize) -> PyResult<Cone> {
        self.inner
            .cones()
            .get(index)
            .map(|c| Cone {
                inner: c.cone.clone(),
            })
            .ok_or_else(|| err(format!("no cone with index {index}")))
    }

    fn is_complete(&self) -> bool {
        self.inner.is_complete()
    }

    fn is_simplicial(&self) -> bool {
        self.inner.is_simplicial()
    }

    fn is_subfan_of(&self, other: &Fan) -> bool {
        self.inner.is_subfan_of(&other.inner)
    }

    fn contains(&self, point: Vec<BigInt>) -> bool {
        point.len() == self.inner.ambient_dim() && self.inner.contains_lattice_point(&vector(point))
    }

    fn __len__(&self) -> usize {
        self.inner.cones().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Fan(ambient_dim={}, rays={}, cones={})",
            self.inner.ambient_dim(),
            self.inner.rays().len(),
            self.inner.cones().len()
        )
    }
}

#[pyclass(module = "logtrop", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct TropFan {
    inner: CoreTropFan,
}

#[pymethods]
impl TropFan {
    /// A precomputed tropical fan.
    #[new]
    #[pyo3(signature = (fan, declared_variety=false))]
    fn new(fan: &Fan, declared_variety: bool) -> Self {
        TropFan {
            inner: CoreTropFan::new(fan.inner.clone(), declared_variety),
        }
    }

    #[getter]
    fn fan(&self) -> Fan {
        Fan {
            inner: self.inner.fan.clone(),
        }
    }

    #[getter]
    fn declared_variety(&self) -> bool {
        self.inner.declared_variety
    }

    /// Rows of the quotient map by the lineality space, if one was removed.
    #[getter]
    fn quotient(&self) -> Option<Vec<Vec<BigInt>>> {
        self.inner
            .quotient
            .as_ref()
            .map(|q| q.iter().map(entries).collect())
    }

    #[getter]
    fn dim(&self) -> usize {
        trop::trop_dim(&self.inner)
    }

    fn to_json(&self) -> String {
        io::trop_to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "TropFan(ambient_dim={}, dim={}, declared_variety={})",
            self.inner.ambient_dim(),
            trop::trop_dim(&self.inner),
            self.inner.declared_variety
        )
    }
}

#[pyclass(module = "logtrop", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct KatoFan {
    inner: CoreKatoFan,
}

#[pymethods]
impl KatoFan {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(KatoFan {
            inner: io::kato_fan_from_json(text).map_err(format_err)?,
        })
    }

    /// The Kato fan of the toric variety of a fan.
    #[staticmethod]
    fn from_fan(fan: &Fan) -> PyResult<Self> {
        Ok(KatoFan {
            inner: CoreKatoFan::from_fan(&fan.inner).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        io::kato_fan_to_json(&self.inner)
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn stalk_ranks(&self) -> Vec<usize> {
        self.inner.stalks().iter().map(ToricMonoid::rank).collect()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Whether point `y` is a specialization of point `x`.
    fn leq(&self, x: usize, y: usize) -> PyResult<bool> {
        if x >= self.inner.len() || y >= self.inner.len() {
            return Err(err("point index out of range"));
        }
        Ok(self.inner.leq(x, y))
    }

    /// Cells of the cone complex, one per point, as cones.
    fn cells(&self) -> Vec<Cone> {
        katofan::cone_complex(&self.inner)
            .cells()
            .iter()
            .map(|c| Cone { inner: c.clone() })
            .collect()
    }

    /// Rows `(point, cell_dim, stratum_codim)` of the strata–cone table.
    fn strata_table(&self) -> (Vec<(String, usize, usize)>, bool) {
        let t = katofan::strata_cone_table(&self.inner);
        (
            t.rows
                .iter()
                .map(|r| (r.name.clone(), r.cell_dim, r.stratum_codim))
                .collect(),
            t.order_reversing,
        )
    }

    fn link(&self) -> SimplicialComplex {
        SimplicialComplex {
            inner: topology::link_complex(&katofan::cone_complex(&self.inner)),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyclass(module = "logtrop", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct SimplicialComplex {
    inner: CoreComplex,
}

#[pymethods]
impl SimplicialComplex {
    #[new]
    fn new(vertices: Vec<String>, maximal_simplices: Vec<Vec<String>>) -> PyResult<Self> {
        Ok(SimplicialComplex {
            inner: CoreComplex::from_labels(vertices, &maximal_simplices).map_err(err)?,
        })
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn maximal_simplices(&self) -> Vec<Vec<String>> {
        let v = self.inner.vertices();
        self.inner
            .maximal_simplices()
            .iter()
            .map(|s| s.iter().map(|&i| v[i].clone()).collect())
            .collect()
    }

    #[getter]
    fn dim(&self) -> isize {
        self.inner.dim()
    }

    #[getter]
    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector()
    }

    fn to_json(&self) -> String {
        io::complex_to_json(&self.inner)
    }
}

// ---------------------------------------------------------------------------
// Exact linear algebra

fn matrix(rows: Vec<Vec<BigInt>>) -> PyResult<RationalMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    RationalMatrix::from_integer_rows(cols, &vectors(rows, cols)?).map_err(err)
}

#[pyfunction]
fn rank(rows: Vec<Vec<BigInt>>) -> PyResult<usize> {
    Ok(exactlin::rank(&matrix(rows)?))
}

#[pyfunction]
fn primitive(v: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
    Ok(entries(&exactlin::primitive(&vector(v)).map_err(err)?))
}

/// A point `x` with `A·x ≥ 0` and strict inequality on the listed rows, or
/// `None`.
#[pyfunction]
#[pyo3(signature = (rows, strict=BTreeSet::new()))]
fn solve_nonneg<'py>(
    py: Python<'py>,
    rows: Vec<Vec<BigInt>>,
    strict: BTreeSet<usize>,
) -> PyResult<Option<Bound<'py, PyList>>> {
    let m = matrix(rows)?;
    exactlin::solve_nonneg(&m, &strict)
        .map(|x| fraction_list(py, &x))
        .transpose()
}

// ---------------------------------------------------------------------------
// Fans

#[pyfunction]
fn common_refinement(f: &Fan, g: &Fan) -> PyResult<Fan> {
    Ok(Fan {
        inner: cones::common_refinement(&f.inner, &g.inner).map_err(err)?,
    })
}

/// `|g| ⊆ |f|`.
#[pyfunction]
fn support_contains(f: &Fan, g: &Fan) -> PyResult<bool> {
    cones::support_contains(&f.inner, &g.inner).map_err(err)
}

#[pyfunction]
fn triangulate(f: &Fan) -> Fan {
    Fan {
        inner: cones::triangulate(&f.inner),
    }
}

#[pyfunction]
fn stellar_subdivision(f: &Fan, w: Vec<BigInt>) -> PyResult<Fan> {
    Ok(Fan {
        inner: cones::stellar_subdivision(&f.inner, &vector(w)).map_err(err)?,
    })
}

// ---------------------------------------------------------------------------
// Kato fans

/// `Spec P` for the saturated monoid of lattice points in the cone spanned
/// by `generators`.
#[pyfunction]
#[pyo3(signature = (generators, ambient_dim=None))]
fn spec(generators: Vec<Vec<BigInt>>, ambient_dim: Option<usize>) -> PyResult<KatoFan> {
    let n = ambient(&generators, ambient_dim)?;
    let p = ToricMonoid::from_generators(n, &vectors(generators, n)?).map_err(err)?;
    Ok(KatoFan {
        inner: katofan::spec(&p).map_err(err)?,
    })
}

#[pyfunction]
fn is_proper_subdivision(sub: &Fan, base: &Fan) -> PyResult<bool> {
    Ok(katofan::is_proper_subdivision(&sub.inner, &base.inner)
        .map_err(err)?
        .proper)
}

// ---------------------------------------------------------------------------
// Tropical fans

fn supports(rank: usize, exps: Vec<Vec<Vec<BigInt>>>) -> PyResult<Vec<PolySupport>> {
    exps.into_iter()
        .map(|s| PolySupport::new(rank, vectors(s, rank)?).map_err(err))
        .collect()
}

fn rank_of(exps: &[Vec<Vec<BigInt>>]) -> PyResult<usize> {
    exps.first()
        .and_then(|s| s.first())
        .map(Vec::len)
        .ok_or_else(|| err("empty support"))
}

#[pyfunction]
#[pyo3(signature = (exponents, tropical_basis=false, quotient_lineality=false))]
fn trop_hypersurface(
    exponents: Vec<Vec<BigInt>>,
    tropical_basis: bool,
    quotient_lineality: bool,
) -> PyResult<TropFan> {
    trop_prevariety(vec![exponents], tropical_basis, quotient_lineality)
}

#[pyfunction]
#[pyo3(signature = (supports_list, tropical_basis=false, quotient_lineality=false))]
fn trop_prevariety(
    supports_list: Vec<Vec<Vec<BigInt>>>,
    tropical_basis: bool,
    quotient_lineality: bool,
) -> PyResult<TropFan> {
    if supports_list.is_empty() {
        return Err(err(logtrop_core::Error::EmptyPrevariety));
    }
    let rank = rank_of(&supports_list)?;
    let fs = supports(rank, supports_list)?;
    let opts = TropOptions {
        tropical_basis,
        quotient_lineality,
    };
    Ok(TropFan {
        inner: trop::trop_prevariety(&fs, opts).map_err(err)?,
    })
}

#[pyfunction]
fn restrict_to_fan(t: &TropFan, fan: &Fan) -> PyResult<TropFan> {
    Ok(TropFan {
        inner: trop::restrict_to_fan(&t.inner, &fan.inner).map_err(err)?,
    })
}

#[pyfunction]
fn trop_dim(t: &TropFan) -> usize {
    trop::trop_dim(&t.inner)
}

// ---------------------------------------------------------------------------
// Compactifications

/// A witness point of `relint(sigma) ∩ |t|`, or `None`.
#[pyfunction]
fn tevelev_meets(t: &TropFan, sigma: &Cone) -> PyResult<Option<Vec<BigInt>>> {
    Ok(compactify::tevelev_meets(&t.inner, &sigma.inner)
        .map_err(err)?
        .map(|w| entries(&w)))
}

#[pyfunction]
fn check_proper<'py>(
    py: Python<'py>,
    t: &TropFan,
    sigma: &Fan,
    complete: &Fan,
) -> PyResult<Bound<'py, PyAny>> {
    let r = compactify::check_proper(&t.inner, &sigma.inner, &complete.inner).map_err(err)?;
    json_to_py(
        py,
        &io::render(&io::CompactificationReportDoc::new(&r, &sigma.inner)),
    )
}

#[pyfunction]
fn check_dimensions<'py>(
    py: Python<'py>,
    t: &TropFan,
    sigma: &Fan,
    dim_y: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let r = compactify::check_dimensions(&t.inner, &sigma.inner, dim_y).map_err(err)?;
    json_to_py(
        py,
        &io::render(&io::CompactificationReportDoc::new(&r, &sigma.inner)),
    )
}

/// The compactifying fan; `star` defaults to the fan of `(P^1)^n`.
#[pyfunction]
#[pyo3(signature = (t, star=None))]
fn build_compactification(t: &TropFan, star: Option<&Fan>) -> PyResult<Fan> {
    let default;
    let star = match star {
        Some(s) => &s.inner,
        None => {
            default = CoreFan::orthants(t.inner.ambient_dim());
            &default
        }
    };
    Ok(Fan {
        inner: compactify::build_compactification(&t.inner, star)
            .map_err(err)?
            .fan,
    })
}

// ---------------------------------------------------------------------------
// Topology

#[pyfunction]
fn link(f: &Fan) -> SimplicialComplex {
    SimplicialComplex {
        inner: topology::link(&f.inner),
    }
}

/// Reduced Betti numbers `[b̃^-1, b̃^0, …]` over `Q`.
#[pyfunction]
fn reduced_cohomology(s: &SimplicialComplex) -> Vec<usize> {
    topology::reduced_cohomology(&s.inner).reduced_betti
}

/// Predicted `dim W_0 H_c^i` from the reduced Betti numbers of a link.
#[pyfunction]
fn w0_report(reduced_betti: Vec<usize>) -> Vec<usize> {
    topology::w0_report(&topology::BettiTable { reduced_betti }).dims
}

#[pymodule]
fn logtrop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LogtropError", m.py().get_type::<LogtropError>())?;
    m.add_class::<Cone>()?;
    m.add_class::<Fan>()?;
    m.add_class::<TropFan>()?;
    m.add_class::<KatoFan>()?;
    m.add_class::<SimplicialComplex>()?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(primitive, m)?)?;
    m.add_function(wrap_pyfunction!(solve_nonneg, m)?)?;
    m.add_function(wrap_pyfunction!(common_refinement, m)?)?;
    m.add_function(wrap_pyfunction!(support_contains, m)?)?;
    m.add_function(wrap_pyfunction!(triangulate, m)?)?;
    m.add_function(wrap_pyfunction!(stellar_subdivision, m)?)?;
    m.add_function(wrap_pyfunction!(spec, m)?)?;
    m.add_function(wrap_pyfunction!(is_proper_subdivision, m)?)?;
    m.add_function(wrap_pyfunction!(trop_hypersurface, m)?)?;
    m.add_function(wrap_pyfunction!(trop_prevariety, m)?)?;
    m.add_function(wrap_pyfunction!(restrict_to_fan, m)?)?;
    m.add_function(wrap_pyfunction!(trop_dim, m)?)?;
    m.add_function(wrap_pyfunction!(tevelev_meets, m)?)?;
    m.add_function(wrap_pyfunction!(check_proper, m)?)?;
    m.add_function(wrap_pyfunction!(check_dimensions, m)?)?;
    m.add_function(wrap_pyfunction!(build_compactification, m)?)?;
    m.add_function(wrap_pyfunction!(link, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(w0_report, m)?)?;
    Ok(())
}
