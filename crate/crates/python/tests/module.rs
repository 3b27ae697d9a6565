use std::ffi::CString;

use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn run(code: &str) -> PyResult<()> {
    Python::attach(|py| {
        let globals = PyDict::new(py);
        globals.set_item("fq", wrap_pymodule!(pyfuzzyquant::pyfuzzyquant)(py))?;
        let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/fixtures/fixtures.json");
        globals.set_item("FIXTURES", fixtures)?;
        py.run(&CString::new(code).unwrap(), Some(&globals), None)
    })
}

#[test]
fn sets_and_quantifiers() {
    run(r#"
u = ["u1", "u2", "u3", "u4", "u5"]
kp = fq.FuzzySet(u, [0.5, 0.8, 0.2, 0.6, 0.0])
bm = fq.FuzzySet(u, [0.8, 0.3, 0.1, 0.9, 1.0])
assert abs(fq.proportion(kp, bm) - 1.5 / 3.1) < 1e-9
assert kp.intersect(bm).values == [0.5, 0.3, 0.1, 0.6, 0.0]
several = fq.FuzzyQuantifier("several", [(0, 0), (0.4, 1), (1, 0)])
assert several.apply(0.4) == 1.0
assert fq.tensor("godel", 0.3, 0.6) == 0.3
"#)
    .unwrap();
}

#[test]
fn model_degrees() {
    run(r#"
m = fq.Model.load(FIXTURES)
r = m.degree("several mice eat most plants")
assert r["form"] == "DoubleQuant"
assert abs(r["direct"] - 0.28) < 1e-9 and abs(r["categorical"] - 0.28) < 1e-9
"#)
    .unwrap();
}

#[test]
fn errors_become_exceptions() {
    run(r#"
m = fq.Model.load(FIXTURES)
try:
    m.parse("xyzzy sleeps")
    raise AssertionError("accepted")
except fq.FuzzyQuantError as e:
    assert "xyzzy" in str(e)
try:
    fq.FuzzySet(["a"], [1.5])
    raise AssertionError("accepted")
except ValueError:
    pass
"#)
    .unwrap();
}

#[test]
fn laws() {
    run(r#"
laws = fq.check_laws("product", 2, [0, 0.5, 1])
assert len(laws) == 10 and all(laws.values()), laws
"#)
    .unwrap();
}
