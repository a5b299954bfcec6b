//! Python bindings: the Partition class plus module-level functions covering
//! enumeration, categories, word problems, twisting and the sphere side.
//! Structured results cross the boundary as native lists and tuples; whole
//! documents (presentations, parametrizations) as JSON strings.

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use nccube_core::categories::{self, CategorySpec, NamedCategory};
use nccube_core::error::Error as CoreError;
use nccube_core::groups::{GroupOracle, Word};
use nccube_core::partition;
use nccube_core::schur_weyl;
use nccube_core::spheres::{self, SphereSpec};
use nccube_core::tensor;

fn domain(e: CoreError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(format!("bad JSON: {e}"))
}

fn named(token: &str) -> PyResult<NamedCategory> {
    token.parse().map_err(domain)
}

fn preset_oracle(preset: &str) -> PyResult<GroupOracle> {
    match preset {
        "free" => Ok(GroupOracle::Free),
        "abelian" => Ok(GroupOracle::Abelian),
        "half" => Ok(GroupOracle::Half),
        other => Err(PyValueError::new_err(format!(
            "unknown group preset {other:?}; expected free, abelian or half"
        ))),
    }
}

fn sphere_spec(preset: &str, n: usize, zero_degree: Option<usize>) -> PyResult<SphereSpec> {
    let spec = match preset {
        "free" => SphereSpec::free(n),
        "commutative" => SphereSpec::commutative(n),
        "half" => SphereSpec::half(n),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown sphere preset {other:?}; expected free, commutative or half"
            )))
        }
    };
    match zero_degree {
        Some(d) => spec.with_zero_degree(d).map_err(domain),
        None => Ok(spec),
    }
}

/// A two-row set partition with k upper and l lower legs.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Partition {
    inner: partition::Partition,
}

impl From<partition::Partition> for Partition {
    fn from(inner: partition::Partition) -> Self {
        Partition { inner }
    }
}

#[pymethods]
impl Partition {
    /// Build from the canonical JSON encoding.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(serde_json::from_str::<partition::Partition>(text).map_err(json_err)?.into())
    }

    /// Finest partition whose blocks make both words constant, one letter
    /// per leg: kernel_words("aab", "baa").
    #[staticmethod]
    fn kernel_words(upper: &str, lower: &str) -> Self {
        partition::Partition::kernel_words(upper, lower).into()
    }

    /// The two-leg crossing pairing.
    #[staticmethod]
    fn crossing() -> Self {
        partition::Partition::crossing().into()
    }

    /// Mirror pairing on (k, k) joining opposite legs, k blocks.
    #[staticmethod]
    fn mirror(k: usize) -> Self {
        categories::pi_k(k).into()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(json_err)
    }

    fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    fn block_count(&self) -> usize {
        self.inner.block_count()
    }

    /// +1 or -1; raises on partitions with an odd block.
    fn signature(&self) -> PyResult<i64> {
        Ok(self.inner.signature().map_err(domain)?.as_i64())
    }

    fn is_even(&self) -> bool {
        self.inner.is_even()
    }

    fn is_noncrossing(&self) -> bool {
        self.inner.is_noncrossing()
    }

    fn is_balanced(&self) -> bool {
        self.inner.is_balanced()
    }

    fn is_vertical(&self) -> bool {
        self.inner.is_vertical()
    }

    fn tensor(&self, other: &Partition) -> Self {
        self.inner.tensor(&other.inner).into()
    }

    /// Stack the other partition below this one; returns the composite and
    /// the number of closed loops removed.
    fn compose(&self, other: &Partition) -> PyResult<(Partition, usize)> {
        let (composite, loops) = self.inner.compose(&other.inner).map_err(domain)?;
        Ok((composite.into(), loops))
    }

    fn involution(&self) -> Self {
        self.inner.involution().into()
    }

    fn rotate(&self) -> PyResult<Self> {
        Ok(self.inner.rotate().map_err(domain)?.into())
    }

    fn coarsenings(&self) -> Vec<Partition> {
        self.inner.coarsenings().into_iter().map(Into::into).collect()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }

    fn __eq__(&self, other: &Partition) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut hasher = std::hash::DefaultHasher::new();
        self.inner.hash(&mut hasher);
        hasher.finish()
    }
}

/// All partitions of a shape, optionally restricted to a named category.
#[pyfunction]
#[pyo3(signature = (upper, lower, class_token=None))]
fn enumerate_partitions(
    upper: usize,
    lower: usize,
    class_token: Option<&str>,
) -> PyResult<Vec<Partition>> {
    let spec = class_token.map(named).transpose()?.map(CategorySpec::named);
    let mut out = Vec::new();
    for pi in partition::enumerate(upper, lower).map_err(domain)? {
        let keep = match &spec {
            Some(s) => s.member(&pi).map_err(domain)?,
            None => true,
        };
        if keep {
            out.push(pi.into());
        }
    }
    Ok(out)
}

/// Membership of a partition in a named category such as "P_even_inf".
#[pyfunction]
fn member(class_token: &str, pi: &Partition) -> PyResult<bool> {
    CategorySpec::named(named(class_token)?).member(&pi.inner).map_err(domain)
}

/// Close generators under tensor, composition, involution and rotation.
#[pyfunction]
fn closure(generators: Vec<Partition>, legs: usize) -> PyResult<Vec<Partition>> {
    let gens: Vec<partition::Partition> = generators.into_iter().map(|p| p.inner).collect();
    Ok(categories::closure(&gens, legs).map_err(domain)?.into_iter().map(Into::into).collect())
}

/// Mobius function of the coarsening order, sigma coarser than pi.
#[pyfunction]
fn mobius(sigma: &Partition, pi: &Partition) -> PyResult<i64> {
    i64::try_from(tensor::mobius(&sigma.inner, &pi.inner))
        .map_err(|_| PyValueError::new_err("mobius value exceeds i64"))
}

/// Does the signed map equal the Mobius-weighted sum of plain maps?
#[pyfunction]
fn verify_mobius(pi: &Partition, n: usize) -> PyResult<bool> {
    tensor::verify_mobius_identity(&pi.inner, n).map_err(domain)
}

/// Rank of the span of the partition maps on an n-dimensional space.
#[pyfunction]
fn span_dim(parts: Vec<Partition>, n: usize) -> PyResult<usize> {
    let parts: Vec<partition::Partition> = parts.into_iter().map(|p| p.inner).collect();
    tensor::span_dim(&parts, n).map_err(domain)
}

/// Dimension of the joint fixed space of the k-th tensor powers of the
/// signed permutation matrices.
#[pyfunction]
fn fix_dim(n: usize, k: usize) -> PyResult<usize> {
    schur_weyl::fix_dim(n, k).map_err(domain)
}

/// Does fix_dim(n, k) match the span of the even partition maps?
#[pyfunction]
fn check_schur_weyl(n: usize, k: usize) -> PyResult<bool> {
    schur_weyl::check_schur_weyl(n, k).map_err(domain)
}

/// Word problem in a preset reflection group; words are lists of letters
/// numbered from 1.  Returns "yes", "no" or "undecided".
#[pyfunction]
fn group_equal(preset: &str, w: Vec<u32>, v: Vec<u32>) -> PyResult<String> {
    let oracle = preset_oracle(preset)?;
    Ok(oracle.equal(&Word(w), &Word(v)).to_string())
}

/// Monomial relations of a preset sphere as JSON.
#[pyfunction]
#[pyo3(signature = (preset, n, zero_degree=None))]
fn sphere_relations(preset: &str, n: usize, zero_degree: Option<usize>) -> PyResult<String> {
    let relations = sphere_spec(preset, n, zero_degree)?.relations().map_err(domain)?;
    serde_json::to_string(&relations).map_err(json_err)
}

/// Which vertical partitions hold on a preset sphere, plain and signed, per
/// word length up to k_max; returned as JSON.
#[pyfunction]
#[pyo3(signature = (preset, n, k_max, zero_degree=None))]
fn standard_parametrization(
    preset: &str,
    n: usize,
    k_max: usize,
    zero_degree: Option<usize>,
) -> PyResult<String> {
    let spec = sphere_spec(preset, n, zero_degree)?;
    let param = spheres::standard_parametrization(&spec, k_max).map_err(domain)?;
    serde_json::to_string(&param).map_err(json_err)
}

/// Relations the members of a named category impose on n generators,
/// as presentation JSON.
#[pyfunction]
fn group_of_category(class_token: &str, n: usize, legs: usize) -> PyResult<String> {
    let pres = categories::group_of_category(&CategorySpec::named(named(class_token)?), n, legs)
        .map_err(domain)?;
    serde_json::to_string(&pres).map_err(json_err)
}

/// Members of the category of a preset group at one shape.
#[pyfunction]
fn category_of_group(
    preset: &str,
    upper: usize,
    lower: usize,
    index_bound: usize,
) -> PyResult<Vec<Partition>> {
    let oracle = preset_oracle(preset)?;
    let cat = categories::category_of_group(&oracle, upper, lower, index_bound).map_err(domain)?;
    if !cat.undecided.is_empty() {
        return Err(PyValueError::new_err(format!(
            "{} partitions exceeded the index bound {index_bound}",
            cat.undecided.len()
        )));
    }
    Ok(cat.members.into_iter().map(Into::into).collect())
}

/// Sphere relations of a preset group as JSON, plain or signed.
#[pyfunction]
#[pyo3(signature = (preset, n, twisted=false))]
fn sphere_of_group(preset: &str, n: usize, twisted: bool) -> PyResult<String> {
    let pres = match preset {
        "free" => nccube_core::groups::GroupPresentation::free(n),
        "abelian" => nccube_core::groups::GroupPresentation::abelian(n),
        "half" => nccube_core::groups::GroupPresentation::half(n),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown group preset {other:?}; expected free, abelian or half"
            )))
        }
    };
    let sphere = spheres::sphere_presentation_from_group(&pres).map_err(domain)?;
    let relations: &BTreeSet<_> = if twisted { &sphere.twisted } else { &sphere.untwisted };
    serde_json::to_string(relations).map_err(json_err)
}

#[pymodule]
pub fn nccube(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Partition>()?;
    m.add_function(wrap_pyfunction!(enumerate_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(closure, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(verify_mobius, m)?)?;
    m.add_function(wrap_pyfunction!(span_dim, m)?)?;
    m.add_function(wrap_pyfunction!(fix_dim, m)?)?;
    m.add_function(wrap_pyfunction!(check_schur_weyl, m)?)?;
    m.add_function(wrap_pyfunction!(group_equal, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_relations, m)?)?;
    m.add_function(wrap_pyfunction!(standard_parametrization, m)?)?;
    m.add_function(wrap_pyfunction!(group_of_category, m)?)?;
    m.add_function(wrap_pyfunction!(category_of_group, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_of_group, m)?)?;
    Ok(())
}
