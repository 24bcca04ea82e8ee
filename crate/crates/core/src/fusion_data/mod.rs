//! Skeletal data of a spherical fusion category: labels, fusion rules,
//! F- and R-symbols and quantum dimensions, plus loading and validation.

mod builtin;
mod schema;
mod validate;

pub use builtin::{builtin_source, BUILTIN_NAMES, FIBONACCI, ISING, VEC_Z2, VEC_Z3};
pub use schema::CategoryFile;
pub use validate::{validate_hexagon, validate_pentagon, HexagonReport, PentagonReport};

use crate::diagram::tree::Caches;
use crate::diagram::RigidData;
use crate::error::{ConsistencyKind, Error, Result};
use crate::linalg::{c, condition_number, inverse, Mat, C64, ONE, ZERO};
use std::collections::HashMap;

pub const DEFAULT_TOL: f64 = 1e-9;

/// A sequence of simple labels. The unit label never appears: it is stripped
/// on construction, since every structure map involving it is trivial.
pub type TensorWord = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub id: String,
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct FusionRules {
    rank: usize,
    unit: usize,
    n: Vec<usize>,
    dual: Vec<usize>,
}

impl FusionRules {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        self.n[(a * self.rank + b) * self.rank + c]
    }

    /// Simple summands of a⊗b.
    pub fn products(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&c| self.n(a, b, c) > 0)
    }

    /// Number of fusion trees of `word` into each simple channel.
    pub fn channel_counts(&self, word: &[usize]) -> Vec<usize> {
        let mut counts = vec![0; self.rank];
        counts[self.unit] = 1;
        for &x in word {
            let mut next = vec![0; self.rank];
            for (e, &ce) in counts.iter().enumerate() {
                if ce == 0 {
                    continue;
                }
                for k in 0..self.rank {
                    next[k] += ce * self.n(e, x, k);
                }
            }
            counts = next;
        }
        counts
    }

    pub fn dual_word(&self, word: &[usize]) -> TensorWord {
        word.iter().rev().map(|&a| self.dual(a)).collect()
    }
}

/// Index triple (internal label, first vertex multiplicity, second vertex multiplicity).
pub type FIndex = (usize, usize, usize);

/// One F-matrix F^{abc}_d: rows indexed by ((ab)_e c) trees, columns by (a(bc)_f) trees.
#[derive(Debug, Clone)]
pub struct FMatrix {
    pub left: Vec<FIndex>,
    pub right: Vec<FIndex>,
    pub mat: Mat,
    pub inv: Mat,
}

impl FMatrix {
    pub fn left_pos(&self, key: FIndex) -> Option<usize> {
        self.left.iter().position(|&k| k == key)
    }

    pub fn right_pos(&self, key: FIndex) -> Option<usize> {
        self.right.iter().position(|&k| k == key)
    }
}

#[derive(Debug, Clone, Default)]
pub struct FSymbolTable {
    blocks: HashMap<[usize; 4], FMatrix>,
}

impl FSymbolTable {
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&FMatrix> {
        self.blocks.get(&[a, b, c, d])
    }

    /// F^{abc}_d[(e,α,β),(f,γ,δ)], zero when either index is not an allowed tree.
    pub fn entry(&self, abcd: [usize; 4], left: FIndex, right: FIndex) -> C64 {
        self.blocks
            .get(&abcd)
            .and_then(|m| Some(m.mat[(m.left_pos(left)?, m.right_pos(right)?)]))
            .unwrap_or(ZERO)
    }

    pub fn inv_entry(&self, abcd: [usize; 4], right: FIndex, left: FIndex) -> C64 {
        self.blocks
            .get(&abcd)
            .and_then(|m| Some(m.inv[(m.right_pos(right)?, m.left_pos(left)?)]))
            .unwrap_or(ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize; 4], &FMatrix)> {
        self.blocks.iter()
    }
}

/// R^{ab}_c[μ,ν]: σ_{a,b} applied to the (a,b→c) vertex μ gives Σ_ν R[μ,ν] times the (b,a→c) vertex ν.
#[derive(Debug, Clone, Default)]
pub struct RSymbolTable {
    blocks: HashMap<[usize; 3], (Mat, Mat)>,
}

impl RSymbolTable {
    pub fn get(&self, a: usize, b: usize, c: usize) -> Option<&Mat> {
        self.blocks.get(&[a, b, c]).map(|(m, _)| m)
    }

    pub fn inv(&self, a: usize, b: usize, c: usize) -> Option<&Mat> {
        self.blocks.get(&[a, b, c]).map(|(_, m)| m)
    }
}

#[derive(Debug, Clone)]
pub struct PivotalData {
    pub d: Vec<C64>,
    /// Pivotal coefficients; the file format has no field for them, so they are all 1.
    pub p: Vec<C64>,
    pub d2: C64,
}

#[derive(Debug, Clone)]
pub struct CategorySpec {
    pub name: String,
    pub labels: Vec<Label>,
    pub rules: FusionRules,
    pub f: FSymbolTable,
    pub r: Option<RSymbolTable>,
    pub pivotal: PivotalData,
    pub tol: f64,
    pub(crate) rigid: RigidData,
    pub(crate) cache: Caches,
}

pub fn load_category(text: &str) -> Result<CategorySpec> {
    CategorySpec::from_file(&CategoryFile::from_json(text)?, None)
}

impl CategorySpec {
    /// Load one of the bundled categories by name.
    pub fn builtin(name: &str) -> Result<CategorySpec> {
        let src = builtin_source(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
        load_category(src)
    }

    pub fn from_file(file: &CategoryFile, tol_override: Option<f64>) -> Result<CategorySpec> {
        let tol = tol_override.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0) {
            return Err(Error::Schema(format!("tolerance must be positive, got {tol}")));
        }
        let labels = parse_labels(file)?;
        let index = |s: &str| -> Result<usize> {
            labels.iter().position(|l| l.id == s).ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let rank = labels.len();
        let unit = index(&file.unit)?;

        let mut dual = vec![usize::MAX; rank];
        for (a, b) in &file.dual {
            let (a, b) = (index(a)?, index(b)?);
            dual[a] = b;
        }
        if let Some(a) = dual.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Schema(format!("no dual given for `{}`", labels[a].id)));
        }

        let mut n = vec![0usize; rank * rank * rank];
        for (a, b, cc, m) in &file.n {
            let (a, b, cc) = (index(a)?, index(b)?, index(cc)?);
            if *m == 0 {
                return Err(Error::Schema("fusion multiplicities must be >= 1".into()));
            }
            let slot = &mut n[(a * rank + b) * rank + cc];
            if *slot != 0 {
                return Err(Error::Schema(format!(
                    "duplicate fusion entry {} {} {}",
                    labels[a].id, labels[b].id, labels[cc].id
                )));
            }
            *slot = *m as usize;
        }
        let rules = FusionRules { rank, unit, n, dual };
        check_rules(&rules)?;

        let mut d = vec![ZERO; rank];
        for (i, l) in labels.iter().enumerate() {
            match file.dims.get(&l.id) {
                Some([re, im]) => d[i] = C64::new(*re, *im),
                None if i == unit => d[i] = ONE,
                None => return Err(Error::MissingData(format!("quantum dimension of `{}`", l.id))),
            }
        }
        for key in file.dims.keys() {
            index(key)?;
        }

        let f = build_f(file, &rules, &index, tol)?;
        let pent = validate::pentagon_residual(&rules, &f);
        if !(pent.max_residual < tol) {
            return Err(Error::Consistency { kind: ConsistencyKind::Pentagon, residual: pent.max_residual });
        }

        check_dimensions(&rules, &d, tol)?;
        let d2 = d.iter().map(|x| x * x).sum::<C64>();
        let pivotal = PivotalData { d, p: vec![ONE; rank], d2 };

        let r = match &file.r {
            Some(rows) => Some(build_r(rows, &rules, &index, tol)?),
            None => None,
        };

        let mut spec = CategorySpec {
            name: file.name.clone(),
            labels,
            rules,
            f,
            r,
            pivotal,
            tol,
            rigid: RigidData::trivial(rank),
            cache: Caches::default(),
        };
        if spec.r.is_some() {
            let hex = validate_hexagon(&spec)?;
            if !(hex.max_residual < tol) {
                return Err(Error::Consistency { kind: ConsistencyKind::Hexagon, residual: hex.max_residual });
            }
        }
        spec.rigid = RigidData::normalize(&spec)?;
        Ok(spec)
    }

    pub fn rank(&self) -> usize {
        self.rules.rank
    }

    pub fn unit(&self) -> usize {
        self.rules.unit
    }

    pub fn dual(&self, a: usize) -> usize {
        self.rules.dual[a]
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        self.rules.n(a, b, c)
    }

    pub fn dim(&self, a: usize) -> C64 {
        self.pivotal.d[a]
    }

    pub fn global_dimension(&self) -> C64 {
        self.pivotal.d2
    }

    pub fn is_braided(&self) -> bool {
        self.r.is_some()
    }

    pub fn label_index(&self, id: &str) -> Result<usize> {
        self.labels.iter().position(|l| l.id == id).ok_or_else(|| Error::UnknownLabel(id.to_string()))
    }

    pub fn label_id(&self, a: usize) -> &str {
        &self.labels[a].id
    }

    /// Build a word from label indices, dropping unit labels.
    pub fn word(&self, labels: &[usize]) -> TensorWord {
        labels.iter().copied().filter(|&a| a != self.unit()).collect()
    }

    /// Parse a comma separated list of label ids; the empty string is the unit word.
    pub fn parse_word(&self, text: &str) -> Result<TensorWord> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        let idx = text.split(',').map(|s| self.label_index(s.trim())).collect::<Result<Vec<_>>>()?;
        Ok(self.word(&idx))
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return self.labels[self.unit()].id.clone();
        }
        w.iter().map(|&a| self.label_id(a)).collect::<Vec<_>>().join(",")
    }

    pub fn dual_word(&self, w: &[usize]) -> TensorWord {
        self.rules.dual_word(w)
    }

    /// Per-channel tree counts of a word.
    pub fn channel_counts(&self, w: &[usize]) -> Vec<usize> {
        self.rules.channel_counts(w)
    }

    /// dim Hom(A, B) = Σ_k trees(A→k)·trees(B→k).
    pub fn hom_dim(&self, a: &[usize], b: &[usize]) -> usize {
        let (ca, cb) = (self.channel_counts(a), self.channel_counts(b));
        ca.iter().zip(&cb).map(|(x, y)| x * y).sum()
    }

    /// All labels other than the unit, in index order.
    pub fn nonunit_labels(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&a| a != self.unit())
    }
}

fn parse_labels(file: &CategoryFile) -> Result<Vec<Label>> {
    let mut labels: Vec<Label> = Vec::new();
    for (i, id) in file.labels.iter().enumerate() {
        if id.is_empty() || id.contains(',') {
            return Err(Error::Schema(format!("invalid label id `{id}`")));
        }
        if labels.iter().any(|l| &l.id == id) {
            return Err(Error::Schema(format!("duplicate label `{id}`")));
        }
        labels.push(Label { id: id.clone(), index: i });
    }
    if labels.is_empty() {
        return Err(Error::Schema("no labels".into()));
    }
    Ok(labels)
}

fn check_rules(r: &FusionRules) -> Result<()> {
    let bad = |kind| Err(Error::Consistency { kind, residual: 1.0 });
    let (rank, u) = (r.rank, r.unit);
    for a in 0..rank {
        for cc in 0..rank {
            let delta = usize::from(a == cc);
            if r.n(a, u, cc) != delta || r.n(u, a, cc) != delta {
                return bad(ConsistencyKind::UnitLaw);
            }
        }
    }
    if r.dual[u] != u {
        return bad(ConsistencyKind::Duality);
    }
    for a in 0..rank {
        if r.dual[r.dual[a]] != a {
            return bad(ConsistencyKind::Duality);
        }
        for b in 0..rank {
            if r.n(a, b, u) != usize::from(b == r.dual[a]) {
                return bad(ConsistencyKind::Duality);
            }
        }
    }
    for a in 0..rank {
        for b in 0..rank {
            for cc in 0..rank {
                for d in 0..rank {
                    let lhs: usize = (0..rank).map(|e| r.n(a, b, e) * r.n(e, cc, d)).sum();
                    let rhs: usize = (0..rank).map(|f| r.n(b, cc, f) * r.n(a, f, d)).sum();
                    if lhs != rhs {
                        return Err(Error::Consistency {
                            kind: ConsistencyKind::Associativity,
                            residual: lhs.abs_diff(rhs) as f64,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn tree_lists(r: &FusionRules, a: usize, b: usize, cc: usize, d: usize) -> (Vec<FIndex>, Vec<FIndex>) {
    let mut left = Vec::new();
    for e in 0..r.rank {
        for al in 0..r.n(a, b, e) {
            for be in 0..r.n(e, cc, d) {
                left.push((e, al, be));
            }
        }
    }
    let mut right = Vec::new();
    for f in 0..r.rank {
        for ga in 0..r.n(b, cc, f) {
            for de in 0..r.n(a, f, d) {
                right.push((f, ga, de));
            }
        }
    }
    (left, right)
}

fn build_f(
    file: &CategoryFile,
    rules: &FusionRules,
    index: &dyn Fn(&str) -> Result<usize>,
    tol: f64,
) -> Result<FSymbolTable> {
    let rank = rules.rank;
    let u = rules.unit;
    let mut blocks: HashMap<[usize; 4], FMatrix> = HashMap::new();
    for a in 0..rank {
        for b in 0..rank {
            for cc in 0..rank {
                for d in 0..rank {
                    let (left, right) = tree_lists(rules, a, b, cc, d);
                    if left.is_empty() {
                        continue;
                    }
                    let n = left.len();
                    // Re-associating around a unit strand is the identity in the sorted bases.
                    let mat = if a == u || b == u || cc == u { Mat::identity(n, n) } else { Mat::zeros(n, n) };
                    blocks.insert([a, b, cc, d], FMatrix { left, right, mat: mat.clone(), inv: mat });
                }
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    for row in &file.f {
        let (a, b, cc, d) = (index(&row.0)?, index(&row.1)?, index(&row.2)?, index(&row.3)?);
        let (e, f) = (index(&row.4)?, index(&row.5)?);
        let (al, be, ga, de) = (row.6, row.7, row.8, row.9);
        let value = C64::new(row.10, row.11);
        let forbidden = || Error::Schema(format!("F entry on a forbidden channel: {row:?}"));
        let block = blocks.get_mut(&[a, b, cc, d]).ok_or_else(forbidden)?;
        let i = block.left_pos((e, al, be)).ok_or_else(forbidden)?;
        let j = block.right_pos((f, ga, de)).ok_or_else(forbidden)?;
        if !seen.insert((a, b, cc, d, i, j)) {
            return Err(Error::Schema(format!("duplicate F entry {row:?}")));
        }
        if a == u || b == u || cc == u {
            let expected = if i == j { ONE } else { ZERO };
            let residual = (value - expected).norm();
            if residual >= tol {
                return Err(Error::Consistency { kind: ConsistencyKind::UnitLaw, residual });
            }
            continue;
        }
        block.mat[(i, j)] = value;
    }
    for block in blocks.values_mut() {
        let cond = condition_number(&block.mat);
        if !(cond < 1e12) {
            return Err(Error::Consistency { kind: ConsistencyKind::Invertibility, residual: 1.0 / cond });
        }
        block.inv = inverse(&block.mat).expect("well conditioned");
    }
    Ok(FSymbolTable { blocks })
}

fn build_r(
    rows: &[schema::RRow],
    rules: &FusionRules,
    index: &dyn Fn(&str) -> Result<usize>,
    tol: f64,
) -> Result<RSymbolTable> {
    let rank = rules.rank;
    let u = rules.unit;
    let mut blocks: HashMap<[usize; 3], (Mat, Mat)> = HashMap::new();
    for a in 0..rank {
        for b in 0..rank {
            for cc in rules.products(a, b) {
                let n = rules.n(a, b, cc);
                let m = if a == u || b == u { Mat::identity(n, n) } else { Mat::zeros(n, n) };
                blocks.insert([a, b, cc], (m.clone(), m));
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    for row in rows {
        let (a, b, cc) = (index(&row.0)?, index(&row.1)?, index(&row.2)?);
        let (mu, nu) = (row.3, row.4);
        let value = C64::new(row.5, row.6);
        let (m, _) = blocks
            .get_mut(&[a, b, cc])
            .filter(|(m, _)| mu < m.nrows() && nu < m.ncols())
            .ok_or_else(|| Error::Schema(format!("R entry on a forbidden channel: {row:?}")))?;
        if !seen.insert((a, b, cc, mu, nu)) {
            return Err(Error::Schema(format!("duplicate R entry {row:?}")));
        }
        if a == u || b == u {
            let expected = if mu == nu { ONE } else { ZERO };
            let residual = (value - expected).norm();
            if residual >= tol {
                return Err(Error::Consistency { kind: ConsistencyKind::UnitLaw, residual });
            }
            continue;
        }
        m[(mu, nu)] = value;
    }
    for (m, inv) in blocks.values_mut() {
        let cond = condition_number(m);
        if !(cond < 1e12) {
            return Err(Error::Consistency { kind: ConsistencyKind::Invertibility, residual: 1.0 / cond });
        }
        *inv = inverse(m).expect("well conditioned");
    }
    Ok(RSymbolTable { blocks })
}

fn check_dimensions(rules: &FusionRules, d: &[C64], tol: f64) -> Result<()> {
    let rank = rules.rank;
    let residual = (d[rules.unit] - ONE).norm();
    if residual >= tol {
        return Err(Error::Consistency { kind: ConsistencyKind::Dimension, residual });
    }
    for a in 0..rank {
        if d[a].norm() < tol {
            return Err(Error::Consistency { kind: ConsistencyKind::Dimension, residual: d[a].norm() });
        }
        let residual = (d[a] - d[rules.dual[a]]).norm();
        if residual >= tol {
            return Err(Error::Consistency { kind: ConsistencyKind::Sphericality, residual });
        }
    }
    for a in 0..rank {
        for b in 0..rank {
            let rhs: C64 = (0..rank).map(|k| c(rules.n(a, b, k) as f64) * d[k]).sum();
            let residual = (d[a] * d[b] - rhs).norm();
            if residual >= tol * (1.0 + rhs.norm()) {
                return Err(Error::Consistency { kind: ConsistencyKind::Dimension, residual });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIVIAL: &str = r#"{"name":"Vec","labels":["1"],"unit":"1","dual":{"1":"1"},
        "N":[["1","1","1",1]],"F":[],"dims":{"1":[1,0]}}"#;

    #[test]
    fn fibonacci_dimensions() {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let tau = s.label_index("tau").unwrap();
        assert!((s.dim(tau).re - phi).abs() < 1e-12);
        assert!((s.global_dimension().re - (2.0 + phi)).abs() < 1e-12);
    }

    #[test]
    fn trivial_category_loads() {
        let s = load_category(TRIVIAL).unwrap();
        assert_eq!(s.rank(), 1);
        assert!((s.global_dimension() - ONE).norm() < 1e-15);
    }

    #[test]
    fn global_dimensions_of_builtins() {
        let want = [("vec_z2", 2.0), ("ising", 4.0), ("vec_z3", 3.0)];
        for (name, d2) in want {
            let s = CategorySpec::builtin(name).unwrap();
            assert!((s.global_dimension().re - d2).abs() < 1e-12, "{name}");
        }
    }

    #[test]
    fn hom_dims() {
        let fib = CategorySpec::builtin("fibonacci").unwrap();
        let t = fib.label_index("tau").unwrap();
        assert_eq!(fib.hom_dim(&[t, t], &[t]), 1);
        assert_eq!(fib.hom_dim(&[], &[]), 1);
        let ising = CategorySpec::builtin("ising").unwrap();
        let s = ising.label_index("sigma").unwrap();
        assert_eq!(ising.hom_dim(&[s, s], &[s, s]), 2);
    }

    #[test]
    fn hom_dim_matches_fusion_rules() {
        for name in BUILTIN_NAMES {
            let s = CategorySpec::builtin(name).unwrap();
            for a in s.nonunit_labels() {
                for b in s.nonunit_labels() {
                    for k in 0..s.rank() {
                        assert_eq!(s.hom_dim(&[a, b], &s.word(&[k])), s.n(a, b, k));
                        assert_eq!(s.hom_dim(&s.word(&[k]), &[a, b]), s.n(a, b, k));
                    }
                }
            }
        }
    }

    #[test]
    fn missing_dimension_is_reported() {
        let mut doc: serde_json::Value = serde_json::from_str(FIBONACCI).unwrap();
        doc["dims"].as_object_mut().unwrap().remove("tau");
        assert!(matches!(load_category(&doc.to_string()), Err(Error::MissingData(_))));
    }

    #[test]
    fn forbidden_f_entry_is_schema_error() {
        let text = TRIVIAL.replace(r#""F":[]"#, r#""F":[["1","1","1","1","1","1",0,0,0,1,1,0]]"#);
        assert!(matches!(load_category(&text), Err(Error::Schema(_))));
    }

    #[test]
    fn broken_unit_law_is_rejected() {
        let text = TRIVIAL.replace(r#"["1","1","1",1]"#, r#"["1","1","1",2]"#);
        assert!(matches!(
            load_category(&text),
            Err(Error::Consistency { kind: ConsistencyKind::UnitLaw, .. })
        ));
    }
}
