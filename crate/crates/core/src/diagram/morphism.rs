//! Morphisms between tensor words as per-channel matrices.

use crate::error::{shape, Error, Result};
use crate::fusion_data::{CategorySpec, TensorWord};
use crate::linalg::{max_abs, Mat, C64};
use rand::Rng;
use serde_json::{json, Value};

/// An element of Hom(source, target). `blocks[k]` maps source trees at channel k
/// to target trees at channel k; its shape is trees(target,k) × trees(source,k).
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    pub source: TensorWord,
    pub target: TensorWord,
    pub blocks: Vec<Mat>,
}

impl Morphism {
    pub fn zero(spec: &CategorySpec, source: &[usize], target: &[usize]) -> Morphism {
        let (bs, bt) = (spec.basis(source), spec.basis(target));
        let blocks = (0..spec.rank()).map(|k| Mat::zeros(bt.dim(k), bs.dim(k))).collect();
        Morphism { source: source.to_vec(), target: target.to_vec(), blocks }
    }

    pub fn identity(spec: &CategorySpec, word: &[usize]) -> Morphism {
        let b = spec.basis(word);
        let blocks = (0..spec.rank()).map(|k| Mat::identity(b.dim(k), b.dim(k))).collect();
        Morphism { source: word.to_vec(), target: word.to_vec(), blocks }
    }

    /// Entries uniform in the unit square of the complex plane.
    pub fn random<R: Rng>(spec: &CategorySpec, source: &[usize], target: &[usize], rng: &mut R) -> Morphism {
        let mut m = Morphism::zero(spec, source, target);
        for b in &mut m.blocks {
            for z in b.iter_mut() {
                *z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        m
    }

    /// The basis vector of Hom(k, word) (or of Hom(word, k) when `dual`) given by one tree.
    pub fn tree_vector(spec: &CategorySpec, word: &[usize], k: usize, index: usize, dual: bool) -> Morphism {
        let kw = spec.word(&[k]);
        let mut m = if dual { Morphism::zero(spec, word, &kw) } else { Morphism::zero(spec, &kw, word) };
        if dual {
            m.blocks[k][(0, index)] = C64::new(1.0, 0.0);
        } else {
            m.blocks[k][(index, 0)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// g.compose(f) = g∘f.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if self.source != f.target {
            return Err(shape(format!("compose: {:?} after {:?}", self.source, f.target)));
        }
        let blocks = self.blocks.iter().zip(&f.blocks).map(|(g, f)| g * f).collect();
        Ok(Morphism { source: f.source.clone(), target: self.target.clone(), blocks })
    }

    /// f.then(g) = g∘f; reads in the order the diagram is traversed.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        g.compose(self)
    }

    fn same_shape(&self, o: &Morphism) -> Result<()> {
        if self.source != o.source || self.target != o.target {
            return Err(shape("morphisms live in different Hom spaces"));
        }
        Ok(())
    }

    pub fn add(&self, o: &Morphism) -> Result<Morphism> {
        self.same_shape(o)?;
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| a + b).collect();
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), blocks })
    }

    pub fn sub(&self, o: &Morphism) -> Result<Morphism> {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }

    pub fn add_assign(&mut self, o: &Morphism) -> Result<()> {
        self.same_shape(o)?;
        for (a, b) in self.blocks.iter_mut().zip(&o.blocks) {
            *a += b;
        }
        Ok(())
    }

    pub fn scale(&self, s: C64) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b * s).collect(),
        }
    }

    /// Largest absolute matrix entry.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(max_abs).fold(0.0, f64::max)
    }

    pub fn distance(&self, o: &Morphism) -> Result<f64> {
        Ok(self.sub(o)?.norm())
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() < tol
    }

    /// The scalar of an endomorphism of the unit word or of a simple label.
    pub fn scalar(&self) -> Result<C64> {
        let nonempty: Vec<&Mat> = self.blocks.iter().filter(|b| b.len() > 0).collect();
        match nonempty.as_slice() {
            [b] if b.nrows() == 1 && b.ncols() == 1 => Ok(b[(0, 0)]),
            _ => Err(shape("not an endomorphism of a simple object")),
        }
    }

    /// Coefficients in the matrix-unit basis, block by block, row-major.
    pub fn coords(&self) -> Vec<C64> {
        let mut v = Vec::new();
        for b in &self.blocks {
            for r in 0..b.nrows() {
                for c in 0..b.ncols() {
                    v.push(b[(r, c)]);
                }
            }
        }
        v
    }

    pub fn from_coords(spec: &CategorySpec, source: &[usize], target: &[usize], coords: &[C64]) -> Morphism {
        let mut m = Morphism::zero(spec, source, target);
        let mut it = coords.iter();
        for b in &mut m.blocks {
            for r in 0..b.nrows() {
                for c in 0..b.ncols() {
                    b[(r, c)] = *it.next().expect("enough coordinates");
                }
            }
        }
        m
    }

    pub fn to_json(&self, spec: &CategorySpec) -> Value {
        let word = |w: &[usize]| w.iter().map(|&a| spec.label_id(a).to_string()).collect::<Vec<_>>();
        let mut blocks = serde_json::Map::new();
        for (k, b) in self.blocks.iter().enumerate() {
            if b.len() == 0 {
                continue;
            }
            let rows: Vec<Value> = (0..b.nrows())
                .map(|r| Value::Array((0..b.ncols()).map(|c| json!([b[(r, c)].re, b[(r, c)].im])).collect()))
                .collect();
            blocks.insert(spec.label_id(k).to_string(), Value::Array(rows));
        }
        json!({"source": word(&self.source), "target": word(&self.target), "blocks": blocks})
    }

    pub fn from_json(spec: &CategorySpec, v: &Value) -> Result<Morphism> {
        let bad = |m: &str| Error::Schema(format!("morphism: {m}"));
        let word = |key: &str| -> Result<TensorWord> {
            let arr = v[key].as_array().ok_or_else(|| bad("missing word"))?;
            let ids = arr
                .iter()
                .map(|x| x.as_str().ok_or_else(|| bad("label is not a string")).and_then(|s| spec.label_index(s)))
                .collect::<Result<Vec<_>>>()?;
            Ok(spec.word(&ids))
        };
        let (source, target) = (word("source")?, word("target")?);
        let mut m = Morphism::zero(spec, &source, &target);
        let blocks = v["blocks"].as_object().ok_or_else(|| bad("missing blocks"))?;
        for (label, rows) in blocks {
            let k = spec.label_index(label)?;
            let rows = rows.as_array().ok_or_else(|| bad("block is not an array"))?;
            let b = &mut m.blocks[k];
            if rows.len() != b.nrows() {
                return Err(shape(format!("block {label} has {} rows, expected {}", rows.len(), b.nrows())));
            }
            for (r, row) in rows.iter().enumerate() {
                let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
                if row.len() != b.ncols() {
                    return Err(shape(format!("block {label} row {r} has wrong length")));
                }
                for (c, z) in row.iter().enumerate() {
                    let pair = z.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("entry is not [re,im]"))?;
                    let re = pair[0].as_f64().ok_or_else(|| bad("non-numeric entry"))?;
                    let im = pair[1].as_f64().ok_or_else(|| bad("non-numeric entry"))?;
                    b[(r, c)] = C64::new(re, im);
                }
            }
        }
        Ok(m)
    }
}

/// f ⊗ g, re-expressed in the canonical basis of the concatenated words.
pub fn tensor(spec: &CategorySpec, f: &Morphism, g: &Morphism) -> Morphism {
    let src = spec.recoupling(&f.source, &g.source);
    let tgt = spec.recoupling(&f.target, &g.target);
    let source: TensorWord = f.source.iter().chain(&g.source).copied().collect();
    let target: TensorWord = f.target.iter().chain(&g.target).copied().collect();
    let mut blocks = Vec::with_capacity(spec.rank());
    for k in 0..spec.rank() {
        let (ss, ts) = (&src.split[k], &tgt.split[k]);
        let mut m = Mat::zeros(ts.len(), ss.len());
        for (col, &(a, i, c, j, mu)) in ss.iter().enumerate() {
            for (row, &(a2, i2, c2, j2, mu2)) in ts.iter().enumerate() {
                if a2 == a && c2 == c && mu2 == mu {
                    m[(row, col)] = f.blocks[a][(i2, i)] * g.blocks[c][(j2, j)];
                }
            }
        }
        blocks.push(&tgt.w[k] * m * &src.w_inv[k]);
    }
    Morphism { source, target, blocks }
}

impl CategorySpec {
    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        tensor(self, f, g)
    }

    /// id_w ⊗ f
    pub fn id_l(&self, w: &[usize], f: &Morphism) -> Morphism {
        if w.is_empty() {
            return f.clone();
        }
        tensor(self, &Morphism::identity(self, w), f)
    }

    /// f ⊗ id_w
    pub fn id_r(&self, f: &Morphism, w: &[usize]) -> Morphism {
        if w.is_empty() {
            return f.clone();
        }
        tensor(self, f, &Morphism::identity(self, w))
    }

    /// id_l ⊗ f ⊗ id_r
    pub fn whisker(&self, l: &[usize], f: &Morphism, r: &[usize]) -> Morphism {
        self.id_l(l, &self.id_r(f, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_shapes() {
        let s = CategorySpec::builtin("ising").unwrap();
        let sg = s.label_index("sigma").unwrap();
        let id = Morphism::identity(&s, &[sg, sg]);
        let dims: Vec<_> = id.blocks.iter().map(|b| b.nrows()).collect();
        assert_eq!(dims, vec![1, 0, 1]);
        let e = Morphism::identity(&s, &[]);
        assert_eq!(e.scalar().unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn compose_is_blockwise_product() {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let t = s.label_index("tau").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = vec![t, t, t];
        let f = Morphism::random(&s, &w, &w, &mut rng);
        let g = Morphism::random(&s, &w, &w, &mut rng);
        let gf = g.compose(&f).unwrap();
        for k in 0..s.rank() {
            let b = &g.blocks[k] * &f.blocks[k];
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    let mut acc = C64::new(0.0, 0.0);
                    for l in 0..f.blocks[k].nrows() {
                        acc += g.blocks[k][(i, l)] * f.blocks[k][(l, j)];
                    }
                    assert!((acc - gf.blocks[k][(i, j)]).norm() < 1e-12);
                }
            }
        }
        assert!(g.compose(&Morphism::identity(&s, &[t])).is_err());
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let s = CategorySpec::builtin("ising").unwrap();
        let sg = s.label_index("sigma").unwrap();
        let ps = s.label_index("psi").unwrap();
        let (a, b) = (vec![sg, ps, sg], vec![sg, sg]);
        let t = tensor(&s, &Morphism::identity(&s, &a), &Morphism::identity(&s, &b));
        let want = Morphism::identity(&s, &[sg, ps, sg, sg, sg]);
        assert!(t.distance(&want).unwrap() < 1e-12);
    }

    #[test]
    fn json_roundtrip() {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let t = s.label_index("tau").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = Morphism::random(&s, &[t, t], &[t], &mut rng);
        let back = Morphism::from_json(&s, &f.to_json(&s)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn coords_roundtrip() {
        let s = CategorySpec::builtin("ising").unwrap();
        let sg = s.label_index("sigma").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = Morphism::random(&s, &[sg, sg], &[sg, sg], &mut rng);
        let g = Morphism::from_coords(&s, &f.source, &f.target, &f.coords());
        assert_eq!(f, g);
    }
}
