//! The extension module driven from an embedded interpreter.

use pyo3::prelude::*;
use pyo3::types::PyDict;

use usmod_py::usmod_py;

fn run(code: &std::ffi::CStr) -> PyResult<()> {
    Python::attach(|py| {
        let globals = PyDict::new(py);
        py.run(code, Some(&globals), None)
    })
}

#[test]
fn python_api() {
    pyo3::append_to_inittab!(usmod_py);
    Python::initialize();
    run(c"
import json, usmod
z6 = usmod.Ring.zmod(6)
s = usmod.MultiplicativeSet.closure(z6, ['4'])
assert s.members() == ['1', '4'] and s.sigma == '4'
m = usmod.Module.regular(z6)
k = m.span(['2'])
assert k.is_u_s_essential(s) and not k.is_essential()
v = m.span(['3']).u_s_essential_verdict(s, 'oracle')
assert v['verdict'] is False and v['counterexample_L'] is not None
assert json.loads(usmod.envelope_json(k.as_module(), s))['verdict'] == 'envelope'
assert json.loads(usmod.laws_json(seed=2, count=3))['totals']['violated'] == 0
try:
    usmod.Ring.zmod(0)
except ValueError:
    pass
else:
    raise AssertionError('zmod(0) accepted')
")
    .unwrap();
}
