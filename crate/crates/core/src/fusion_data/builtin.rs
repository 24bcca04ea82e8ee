//! The four categories shipped with the crate.

pub const FIBONACCI: &str = include_str!("../../data/fibonacci.json");
pub const ISING: &str = include_str!("../../data/ising.json");
pub const VEC_Z2: &str = include_str!("../../data/vec_z2.json");
pub const VEC_Z3: &str = include_str!("../../data/vec_z3.json");

/// Look up a bundled file by stem or file name (`"ising"`, `"ising.json"`).
pub fn builtin_source(name: &str) -> Option<&'static str> {
    let stem = name.rsplit('/').next().unwrap_or(name);
    let stem = stem.strip_suffix(".json").unwrap_or(stem);
    match stem {
        "fibonacci" => Some(FIBONACCI),
        "ising" => Some(ISING),
        "vec_z2" => Some(VEC_Z2),
        "vec_z3" => Some(VEC_Z3),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 4] = ["fibonacci", "ising", "vec_z2", "vec_z3"];
