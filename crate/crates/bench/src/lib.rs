//! Fixtures shared by the benchmarks.

use fcat_core::CategorySpec;

pub fn category(name: &str) -> CategorySpec {
    CategorySpec::builtin(name).expect("bundled category loads")
}
