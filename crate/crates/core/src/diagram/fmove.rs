//! Morphisms whose target is expressed in a non-canonical tree shape.

use super::morphism::Morphism;
use super::tree::{rotate_vec, LTree, Move, Shape, Side, TreeVec};
use crate::error::{Error, Result};
use crate::fusion_data::{CategorySpec, TensorWord};
use crate::linalg::{Mat, ONE};

/// Blocks map canonical source trees to target trees of shape `shape`.
#[derive(Debug, Clone)]
pub struct ShapedMorphism {
    pub source: TensorWord,
    pub target: TensorWord,
    pub shape: Shape,
    /// Ordered target trees per channel.
    pub trees: Vec<Vec<LTree>>,
    pub blocks: Vec<Mat>,
}

impl ShapedMorphism {
    pub fn from_canonical(spec: &CategorySpec, m: &Morphism) -> Result<ShapedMorphism> {
        if m.target.is_empty() {
            return Err(Error::BadPosition("empty target word has no tree".into()));
        }
        let shape = Shape::left_nested(m.target.len());
        let trees = channel_trees(spec, &shape, &m.target);
        let basis = spec.basis(&m.target);
        // labelings of the left-nested shape are exactly the canonical trees; match their order
        let mut blocks = Vec::with_capacity(spec.rank());
        for k in 0..spec.rank() {
            let n = basis.dim(k);
            let mut perm = Mat::zeros(n, n);
            for (i, t) in trees[k].iter().enumerate() {
                let ft = t.to_canonical().expect("left nested");
                perm[(i, basis.position(k, &ft).expect("in basis"))] = ONE;
            }
            blocks.push(perm * &m.blocks[k]);
        }
        Ok(ShapedMorphism { source: m.source.clone(), target: m.target.clone(), shape, trees, blocks })
    }

    /// Rewrite in the canonical left-nested basis.
    pub fn to_canonical(&self, spec: &CategorySpec) -> Morphism {
        let basis = spec.basis(&self.target);
        let mut m = Morphism::zero(spec, &self.source, &self.target);
        for k in 0..spec.rank() {
            let mut change = Mat::zeros(basis.dim(k), self.trees[k].len());
            for (j, t) in self.trees[k].iter().enumerate() {
                let col = super::tree::to_canonical_column(spec, t, &basis);
                for (i, v) in col.into_iter().enumerate() {
                    change[(i, j)] = v;
                }
            }
            m.blocks[k] = change * &self.blocks[k];
        }
        m
    }
}

fn channel_trees(spec: &CategorySpec, shape: &Shape, word: &[usize]) -> Vec<Vec<LTree>> {
    let mut out = vec![Vec::new(); spec.rank()];
    for t in shape.labelings(spec, word) {
        out[t.charge()].push(t);
    }
    out
}

/// Re-associate the target at the node `path` in direction `mv`.
pub fn f_move(spec: &CategorySpec, m: &ShapedMorphism, path: &[Side], mv: Move) -> Result<ShapedMorphism> {
    let shape = m.shape.moved(path, mv)?;
    let trees = channel_trees(spec, &shape, &m.target);
    let mut blocks = Vec::with_capacity(spec.rank());
    for k in 0..spec.rank() {
        let index: std::collections::HashMap<&LTree, usize> =
            trees[k].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut change = Mat::zeros(trees[k].len(), m.trees[k].len());
        for (j, t) in m.trees[k].iter().enumerate() {
            let v: TreeVec = rotate_vec(spec, &vec![(t.clone(), ONE)], path, mv)?;
            for (t2, coef) in v {
                change[(index[&t2], j)] += coef;
            }
        }
        blocks.push(change * &m.blocks[k]);
    }
    Ok(ShapedMorphism { source: m.source.clone(), target: m.target.clone(), shape, trees, blocks })
}

/// Max deviation between two shaped morphisms over the same shape.
pub fn shaped_distance(a: &ShapedMorphism, b: &ShapedMorphism) -> f64 {
    assert_eq!(a.shape, b.shape);
    a.blocks
        .iter()
        .zip(&b.blocks)
        .map(|(x, y)| crate::linalg::max_abs(&(x - y)))
        .fold(0.0, f64::max)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn three_strand_move_is_f_matrix() {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let t = s.label_index("tau").unwrap();
        let id = ShapedMorphism::from_canonical(&s, &Morphism::identity(&s, &[t, t, t])).unwrap();
        let moved = f_move(&s, &id, &[], Move::ToRight).unwrap();
        for d in 0..s.rank() {
            let fm = s.f.get(t, t, t, d).unwrap();
            assert!(max_abs(&(&moved.blocks[d] - fm.mat.transpose())) < 1e-12);
        }
    }

    #[test]
    fn move_and_inverse() {
        let s = CategorySpec::builtin("ising").unwrap();
        let sg = s.label_index("sigma").unwrap();
        let id = ShapedMorphism::from_canonical(&s, &Morphism::identity(&s, &[sg, sg, sg, sg])).unwrap();
        let there = f_move(&s, &id, &[Side::Left], Move::ToRight).unwrap();
        let back = f_move(&s, &there, &[Side::Left], Move::ToLeft).unwrap();
        assert!(shaped_distance(&back, &id) < 1e-12);
        assert!(back.to_canonical(&s).distance(&Morphism::identity(&s, &[sg, sg, sg, sg])).unwrap() < 1e-12);
    }

    #[test]
    fn pentagon_cycle_is_identity() {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let t = s.label_index("tau").unwrap();
        let id = ShapedMorphism::from_canonical(&s, &Morphism::identity(&s, &[t; 4])).unwrap();
        // (((ab)c)d) → ((ab)(cd)) → (a(b(cd)))
        let p1 = f_move(&s, &id, &[], Move::ToRight).unwrap();
        let p1 = f_move(&s, &p1, &[], Move::ToRight).unwrap();
        // (((ab)c)d) → ((a(bc))d) → (a((bc)d)) → (a(b(cd)))
        let p2 = f_move(&s, &id, &[Side::Left], Move::ToRight).unwrap();
        let p2 = f_move(&s, &p2, &[], Move::ToRight).unwrap();
        let p2 = f_move(&s, &p2, &[Side::Right], Move::ToRight).unwrap();
        assert!(shaped_distance(&p1, &p2) < 1e-12);
    }

    #[test]
    fn leaf_position_is_rejected() {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let t = s.label_index("tau").unwrap();
        let id = ShapedMorphism::from_canonical(&s, &Morphism::identity(&s, &[t, t, t])).unwrap();
        assert!(matches!(f_move(&s, &id, &[Side::Right], Move::ToRight), Err(Error::BadPosition(_))));
    }
}
