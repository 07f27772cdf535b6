//! Python bindings for `autfn-core`.

use autfn_core::ablin::{abelianize, is_special};
use autfn_core::audit::{audit_torsion, AUDIT_CAP};
use autfn_core::aut::{self, NamedGenerator, Order, DEFAULT_CAP};
use autfn_core::complex::{self, smith};
use autfn_core::manifold::{ChiDescriptor, ManifoldExpr};
use autfn_core::obstruction::{self, ActionMode, OddRankRules};
use autfn_core::report::{self, Format};
use autfn_core::word;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn format(name: &str) -> PyResult<Format> {
    name.parse().map_err(value_err)
}

/// A reduced word in the free group of the given rank.
#[pyclass(name = "Word", frozen, eq, hash, from_py_object, module = "autfn")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Word(word::Word);

#[pymethods]
impl Word {
    #[new]
    fn new(text: &str, rank: usize) -> PyResult<Self> {
        word::Word::parse(text, rank).map(Word).map_err(value_err)
    }

    #[staticmethod]
    fn from_signed(rank: usize, letters: Vec<i64>) -> PyResult<Self> {
        word::Word::from_signed(rank, &letters)
            .map(Word)
            .map_err(value_err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    /// Signed generator indices, `-i` for `a_i^{-1}`.
    fn letters(&self) -> Vec<i64> {
        self.0.to_signed()
    }

    fn inverse(&self) -> Self {
        Word(self.0.inverse())
    }

    fn __mul__(&self, other: &Word) -> PyResult<Self> {
        self.0.concat(&other.0).map(Word).map_err(value_err)
    }

    fn exponent_sums(&self) -> Vec<i64> {
        self.0.exponent_sums()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}', {})", self.0, self.0.rank())
    }
}

/// An automorphism of a free group, stored with its inverse.
#[pyclass(
    name = "Automorphism",
    frozen,
    eq,
    hash,
    from_py_object,
    module = "autfn"
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Automorphism(aut::Automorphism);

fn words(texts: &[String], rank: usize) -> PyResult<Vec<word::Word>> {
    texts
        .iter()
        .map(|t| word::Word::parse(t, rank).map_err(value_err))
        .collect()
}

#[pymethods]
impl Automorphism {
    /// Images of `a_1..a_n` and of the inverse map, as word strings.
    #[new]
    fn new(rank: usize, images: Vec<String>, inverse_images: Vec<String>) -> PyResult<Self> {
        aut::Automorphism::new(words(&images, rank)?, words(&inverse_images, rank)?)
            .map(Automorphism)
            .map_err(value_err)
    }

    #[staticmethod]
    fn identity(rank: usize) -> Self {
        Automorphism(aut::Automorphism::identity(rank))
    }

    /// `kind` is one of `inversion`, `transposition`, `rotation`, `nielsen`;
    /// indices are 1-based.
    #[staticmethod]
    #[pyo3(signature = (kind, rank, i, j=None))]
    fn named(kind: &str, rank: usize, i: usize, j: Option<usize>) -> PyResult<Self> {
        let need_j = || j.ok_or_else(|| value_err(format!("{kind} needs two indices")));
        let g = match kind {
            "inversion" => NamedGenerator::Inversion(i),
            "transposition" => NamedGenerator::Transposition(i, need_j()?),
            "rotation" => NamedGenerator::Rotation(i),
            "nielsen" => NamedGenerator::Nielsen(i, need_j()?),
            other => return Err(value_err(format!("unknown generator kind {other:?}"))),
        };
        aut::Automorphism::named(g, rank)
            .map(Automorphism)
            .map_err(value_err)
    }

    #[staticmethod]
    fn delta(rank: usize) -> Self {
        Automorphism(aut::Automorphism::delta(rank))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn images(&self) -> Vec<String> {
        self.0.images().iter().map(ToString::to_string).collect()
    }

    fn apply(&self, w: &Word) -> PyResult<Word> {
        self.0.apply(&w.0).map(Word).map_err(value_err)
    }

    /// `self ∘ other`, applying `other` first.
    fn compose(&self, other: &Automorphism) -> PyResult<Self> {
        self.0
            .compose(&other.0)
            .map(Automorphism)
            .map_err(value_err)
    }

    fn __matmul__(&self, other: &Automorphism) -> PyResult<Self> {
        self.compose(other)
    }

    fn inverse(&self) -> Self {
        Automorphism(self.0.inverse())
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Order, or `None` when it exceeds `cap`.
    #[pyo3(signature = (cap=DEFAULT_CAP))]
    fn order(&self, cap: usize) -> PyResult<Option<usize>> {
        match self.0.order(cap).map_err(value_err)? {
            Order::Finite(k) => Ok(Some(k)),
            Order::CapExceeded => Ok(None),
        }
    }

    /// Exponent-sum matrix as a list of rows.
    fn abelianize(&self) -> Vec<Vec<i64>> {
        abelianize(&self.0).rows()
    }

    fn is_special(&self) -> PyResult<bool> {
        is_special(&self.0).map_err(|e| PyArithmeticError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Automorphism({}, {:?})", self.0.rank(), self.images())
    }
}

/// Torsion audit at rank `n`: `(check, expected, actual, pass)` rows.
#[pyfunction]
#[pyo3(signature = (n, cap=AUDIT_CAP))]
fn audit(n: usize, cap: usize) -> PyResult<Vec<(String, String, String, bool)>> {
    let r = audit_torsion(n, cap).map_err(value_err)?;
    Ok(r.checks
        .into_iter()
        .map(|c| (c.name, c.expected, c.actual, c.pass))
        .collect())
}

fn evaluate(expr: &str) -> PyResult<ChiDescriptor> {
    ManifoldExpr::parse(expr)
        .and_then(|e| e.evaluate())
        .map_err(value_err)
}

/// `(dim, chi, orientable, connected)` of a manifold expression.
#[pyfunction]
fn manifold(expr: &str) -> PyResult<(u32, i64, bool, bool)> {
    let d = evaluate(expr)?;
    Ok((d.dim, d.chi, d.orientable, d.connected))
}

/// Largest admissible `p`-rank, or `None` when unbounded.
#[pyfunction]
#[pyo3(signature = (expr, p, orientation_preserving=false))]
fn rank_bound(expr: &str, p: u64, orientation_preserving: bool) -> PyResult<Option<u64>> {
    let mode = if orientation_preserving {
        ActionMode::OrientationPreserving
    } else {
        ActionMode::General
    };
    let b = obstruction::rank_bound(&evaluate(expr)?, p, mode).map_err(value_err)?;
    Ok(match b.bound {
        obstruction::Bound::Finite(k) => Some(k),
        obstruction::Bound::Unbounded => None,
    })
}

/// `(n, rule, conclusion)` for each `n` in `n_min..=n_max`.
#[pyfunction]
#[pyo3(signature = (expr, n_min, n_max, odd_rank_rules=true))]
fn verdicts(
    expr: &str,
    n_min: u64,
    n_max: u64,
    odd_rank_rules: bool,
) -> PyResult<Vec<(u64, Option<String>, String)>> {
    let rules = if odd_rank_rules {
        OddRankRules::Strict
    } else {
        OddRankRules::Off
    };
    let v =
        obstruction::verdict_table(&evaluate(expr)?, n_min..=n_max, rules).map_err(value_err)?;
    Ok(v.iter()
        .map(|v| (v.n, v.rule.map(|r| r.to_string()), v.conclusion.to_string()))
        .collect())
}

/// Verdict table rendered as `tsv` or `json-lines`.
#[pyfunction]
#[pyo3(signature = (expr, n_min, n_max, fmt="tsv"))]
fn verdict_report(expr: &str, n_min: u64, n_max: u64, fmt: &str) -> PyResult<String> {
    let v = obstruction::verdict_table(&evaluate(expr)?, n_min..=n_max, OddRankRules::Strict)
        .map_err(value_err)?;
    Ok(report::verdicts_table(&v).render(format(fmt)?))
}

/// A simplicial complex with a group acting by vertex permutations.
#[pyclass(name = "EquivariantComplex", frozen, module = "autfn")]
struct EquivariantComplex(complex::EquivariantComplex);

#[pymethods]
impl EquivariantComplex {
    /// Builds from the text of a complex file, an action file and an optional
    /// orientation file.
    #[new]
    #[pyo3(signature = (complex, action, orientation=None))]
    fn new(complex: &str, action: &str, orientation: Option<&str>) -> PyResult<Self> {
        complex::io::load(complex, action, orientation)
            .map(EquivariantComplex)
            .map_err(value_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn regular(&self) -> bool {
        self.0.is_regular()
    }

    fn f_vector(&self) -> Vec<usize> {
        self.0.complex().f_vector()
    }

    fn euler_characteristic(&self) -> i64 {
        self.0.complex().euler_characteristic()
    }

    fn subdivide(&self) -> Self {
        EquivariantComplex(self.0.subdivide())
    }

    fn fixed_vertices(&self) -> Vec<usize> {
        smith::fixed_vertices(&self.0)
    }

    /// `(i, chi_c, a)` per stratum; `a` is `None` if divisibility fails.
    fn strata(&self) -> PyResult<Vec<(u32, i64, Option<i64>)>> {
        let r = smith::strata_chi(&self.0).map_err(value_err)?;
        Ok(r.strata.iter().map(|s| (s.i, s.chi_c, s.a)).collect())
    }

    /// `(chi(X), chi(X/G))` for a free action.
    fn free_quotient(&self) -> PyResult<(i64, i64)> {
        let r = smith::free_quotient_chi(&self.0).map_err(value_err)?;
        Ok((r.chi, r.quotient_chi))
    }

    /// `(chi(X), chi_c(X - F), chi(F))` for a group of prime order.
    fn fixed_split(&self) -> PyResult<(i64, i64, i64)> {
        let r = smith::fixed_split_chi(&self.0).map_err(value_err)?;
        Ok((r.chi, r.complement_chi_c, r.fixed_chi))
    }

    /// `(n - r, sum of n(H) - r)` at a fixed vertex.
    fn borel(&self, basepoint: usize) -> PyResult<(i64, i64)> {
        let r = smith::borel_check(&self.0, basepoint).map_err(value_err)?;
        Ok((r.lhs, r.rhs))
    }

    /// Whether the rank inequalities hold, with the rendered report.
    #[pyo3(signature = (fmt="json-lines"))]
    fn rank_check(&self, fmt: &str) -> PyResult<(bool, String)> {
        let r = smith::effective_rank_bound_check(&self.0).map_err(value_err)?;
        Ok((r.holds, report::rank_check_table(&r).render(format(fmt)?)))
    }
}

#[pymodule]
fn autfn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Word>()?;
    m.add_class::<Automorphism>()?;
    m.add_class::<EquivariantComplex>()?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(manifold, m)?)?;
    m.add_function(wrap_pyfunction!(rank_bound, m)?)?;
    m.add_function(wrap_pyfunction!(verdicts, m)?)?;
    m.add_function(wrap_pyfunction!(verdict_report, m)?)?;
    Ok(())
}
