//! On-disk JSON layout of a category file.

use serde::Deserialize;
use std::collections::BTreeMap;

pub type NRow = (String, String, String, u32);
pub type FRow = (String, String, String, String, String, String, usize, usize, usize, usize, f64, f64);
pub type RRow = (String, String, String, usize, usize, f64, f64);

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub name: String,
    pub labels: Vec<String>,
    pub unit: String,
    pub dual: BTreeMap<String, String>,
    #[serde(rename = "N")]
    pub n: Vec<NRow>,
    #[serde(rename = "F", default)]
    pub f: Vec<FRow>,
    #[serde(rename = "R", default)]
    pub r: Option<Vec<RRow>>,
    #[serde(default)]
    pub dims: BTreeMap<String, [f64; 2]>,
    #[serde(default)]
    pub tol: Option<f64>,
}

impl CategoryFile {
    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Schema(e.to_string()))
    }
}
