//! Python bindings. A `Table` wraps a multiplication table; module-level
//! functions mirror the constructions, and `Table.analyze()` returns the
//! same report the CLI prints as JSON, converted to plain Python values.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

use sgt::assembly::analyze;
use sgt::census::{classify, enumerate_semigroups};
use sgt::format::{parse, parse_file, render, Kind};
use sgt::morphisms::enumerate_homomorphisms;
use sgt::report::json_report;
use sgt::substructures::{centre, is_subassembly};
use sgt::table::{are_isomorphic, certify_group, idempotents, SubsetRef, TableRef};
use sgt::Caps;

fn err(e: sgt::Error) -> PyErr {
    match &e {
        sgt::Error::Inconsistency(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn caps() -> Caps {
    Caps::default()
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_py_any(py),
            None => n.as_f64().unwrap_or(f64::NAN).into_py_any(py),
        },
        Value::String(s) => s.into_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

/// A finite semigroup's multiplication table with named elements.
#[pyclass(module = "sgt_py")]
struct Table {
    table: TableRef,
    kind: Kind,
}

impl Table {
    fn semigroup(table: TableRef) -> Self {
        Table {
            table,
            kind: Kind::Semigroup,
        }
    }

    fn element(&self, name: &str) -> PyResult<sgt::table::ElementId> {
        self.table
            .element(name)
            .ok_or_else(|| PyValueError::new_err(format!("{name:?} is not an element")))
    }
}

#[pymethods]
impl Table {
    /// Parses the text table format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let parsed = parse(text).map_err(err)?;
        Ok(Table {
            table: parsed.table,
            kind: parsed.kind,
        })
    }

    /// Reads a .sgt file.
    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        let parsed = parse_file(path.as_ref()).map_err(err)?;
        Ok(Table {
            table: parsed.table,
            kind: parsed.kind,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.table.order()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.kind.label()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.table.names().to_vec()
    }

    fn product(&self, x: &str, y: &str) -> PyResult<String> {
        let p = self.table.product(self.element(x)?, self.element(y)?);
        Ok(self.table.name(p).to_string())
    }

    fn render(&self) -> String {
        render(self.kind, &self.table)
    }

    /// Full analysis as nested dicts; same content as `sgt analyze --format json`.
    fn analyze(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let a = analyze(&self.table).map_err(err)?;
        let text = json_report(self.kind, &a);
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| PyRuntimeError::new_err(format!("report did not parse: {e}")))?;
        json_to_py(py, &value)
    }

    fn is_assembly(&self) -> PyResult<bool> {
        Ok(analyze(&self.table).map_err(err)?.is_assembly())
    }

    fn idempotents(&self) -> PyResult<Vec<String>> {
        Ok(idempotents(&self.table)
            .map_err(err)?
            .names()
            .iter()
            .map(|s| s.to_string())
            .collect())
    }

    fn centre(&self) -> PyResult<Vec<String>> {
        Ok(centre(&self.table)
            .map_err(err)?
            .names()
            .iter()
            .map(|s| s.to_string())
            .collect())
    }

    /// Whether the named elements form a subassembly.
    fn is_subassembly(&self, members: Vec<String>) -> PyResult<bool> {
        let a = analyze(&self.table).map_err(err)?;
        let names: Vec<&str> = members.iter().map(|s| s.as_str()).collect();
        let subset = SubsetRef::by_names(&self.table, &names).map_err(err)?;
        Ok(is_subassembly(&a, &subset).map_err(err)?.is_yes())
    }

    /// An element-name bijection onto `other`, or None.
    fn isomorphism(&self, other: &Table, py: Python<'_>) -> PyResult<Option<Py<PyAny>>> {
        match are_isomorphic(&self.table, &other.table, &caps()).map_err(err)? {
            None => Ok(None),
            Some(m) => {
                let dict = PyDict::new(py);
                for x in self.table.elements() {
                    dict.set_item(self.table.name(x), other.table.name(m[x.0]))?;
                }
                Ok(Some(dict.into_py_any(py)?))
            }
        }
    }

    fn __len__(&self) -> usize {
        self.table.order()
    }

    fn __repr__(&self) -> String {
        format!("Table({} of order {})", self.kind.label(), self.table.order())
    }
}

#[pyfunction]
fn cyclic(n: usize) -> PyResult<Table> {
    Ok(Table {
        table: sgt::constructions::cyclic_group(n).map_err(err)?,
        kind: Kind::Group,
    })
}

#[pyfunction]
fn chain(n: usize) -> PyResult<Table> {
    Ok(Table::semigroup(
        sgt::constructions::chain_assembly(n).map_err(err)?,
    ))
}

#[pyfunction]
fn left_zero(n: usize) -> PyResult<Table> {
    Ok(Table::semigroup(
        sgt::constructions::left_zero_band(n).map_err(err)?,
    ))
}

#[pyfunction]
fn right_zero(n: usize) -> PyResult<Table> {
    Ok(Table::semigroup(
        sgt::constructions::right_zero_band(n).map_err(err)?,
    ))
}

#[pyfunction]
fn with_zero(t: &Table) -> PyResult<Table> {
    Ok(Table::semigroup(
        sgt::constructions::with_zero(&t.table).map_err(err)?,
    ))
}

#[pyfunction]
fn product(a: &Table, b: &Table) -> PyResult<Table> {
    Ok(Table::semigroup(
        sgt::table::direct_product(&a.table, &b.table, &caps()).map_err(err)?,
    ))
}

#[pyfunction]
fn power(t: &Table) -> PyResult<Table> {
    Ok(Table::semigroup(
        sgt::table::power_semigroup(&t.table, &caps()).map_err(err)?,
    ))
}

/// The 2x2 matrix preset: a Rees matrix semigroup over the sign group.
#[pyfunction]
fn rees_paper() -> PyResult<Table> {
    Ok(Table::semigroup(
        sgt::constructions::rees_paper().map_err(err)?,
    ))
}

/// All cosets of all normal subgroups of a group table, multiplied setwise.
#[pyfunction]
fn coset_assembly(g: &Table) -> PyResult<Table> {
    let group = certify_group(&g.table).map_err(err)?;
    Ok(Table::semigroup(
        sgt::constructions::coset_assembly(&group, &caps())
            .map_err(err)?
            .table,
    ))
}

/// Class representatives of all semigroups of orders 1..=max_order.
#[pyfunction]
fn census(max_order: usize) -> PyResult<Vec<Table>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        let mut census = enumerate_semigroups(n, false).map_err(err)?;
        classify(&mut census).map_err(err)?;
        for rec in census.records {
            out.push(Table::semigroup(rec.table));
        }
    }
    Ok(out)
}

/// Number of homomorphisms from s to t.
#[pyfunction]
fn hom_count(s: &Table, t: &Table) -> PyResult<usize> {
    Ok(enumerate_homomorphisms(&s.table, &t.table, &caps())
        .map_err(err)?
        .len())
}

#[pymodule]
fn sgt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Table>()?;
    m.add_function(wrap_pyfunction!(cyclic, m)?)?;
    m.add_function(wrap_pyfunction!(chain, m)?)?;
    m.add_function(wrap_pyfunction!(left_zero, m)?)?;
    m.add_function(wrap_pyfunction!(right_zero, m)?)?;
    m.add_function(wrap_pyfunction!(with_zero, m)?)?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(power, m)?)?;
    m.add_function(wrap_pyfunction!(rees_paper, m)?)?;
    m.add_function(wrap_pyfunction!(coset_assembly, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(hom_count, m)?)?;
    Ok(())
}
