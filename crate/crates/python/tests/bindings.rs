//! Load the module into an embedded interpreter and cross one value of each
//! kind over the boundary.  The fuller exercise lives in python/smoke_test.py
//! against the compiled cdylib.

use nccube::nccube;
use pyo3::prelude::*;
use pyo3::types::PyModule;

#[test]
fn module_imports_and_answers() {
    pyo3::append_to_inittab!(nccube);
    Python::initialize();
    Python::attach(|py| {
        let module = PyModule::import(py, "nccube").expect("module imports");

        let partition_cls = module.getattr("Partition").expect("class exported");
        let crossing = partition_cls.call_method0("crossing").expect("constructor");
        let sign: i64 = crossing
            .call_method0("signature")
            .expect("signature runs")
            .extract()
            .expect("integer sign");
        assert_eq!(sign, -1);

        let eta = partition_cls
            .call_method1("kernel_words", ("aab", "baa"))
            .expect("kernel constructor");
        let balanced: bool =
            eta.call_method0("is_balanced").expect("predicate").extract().expect("bool");
        assert!(balanced);
        let member: bool = module
            .getattr("member")
            .expect("function exported")
            .call1(("P_even_inf", &eta))
            .expect("membership runs")
            .extract()
            .expect("bool");
        assert!(member);

        let decision: String = module
            .getattr("group_equal")
            .expect("function exported")
            .call1(("half", vec![1u32, 2, 3], vec![3u32, 2, 1]))
            .expect("word problem runs")
            .extract()
            .expect("string");
        assert_eq!(decision, "yes");

        let ok: bool = module
            .getattr("check_schur_weyl")
            .expect("function exported")
            .call1((2usize, 3usize))
            .expect("check runs")
            .extract()
            .expect("bool");
        assert!(ok);
    });
}
