//! Fusion-tree bases and re-association moves.
//!
//! A basis vector of Hom(k, w₁⊗…⊗wₙ) is a left-nested splitting tree
//! ((…(w₁w₂)_{e₂} w₃)_{e₃} …)_k. General binary shapes are only used
//! transiently, while re-expressing trees through F-moves.

use crate::error::{Error, Result};
use crate::fusion_data::CategorySpec;
use crate::linalg::{Mat, C64, ONE};
use std::collections::HashMap;
use std::sync::Arc;

/// A left-nested tree: `internal` holds e₂…e_{n-1}, `mults` the vertex indices μ₂…μₙ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionTree {
    pub internal: Vec<usize>,
    pub mults: Vec<usize>,
}

/// Canonical bases of a word, one ordered list of trees per simple channel.
#[derive(Debug, Clone)]
pub struct ChannelBasis {
    pub word: Vec<usize>,
    pub trees: Vec<Vec<FusionTree>>,
    index: Vec<HashMap<FusionTree, usize>>,
}

impl ChannelBasis {
    pub fn new(spec: &CategorySpec, word: &[usize]) -> ChannelBasis {
        let rank = spec.rank();
        let mut trees: Vec<Vec<FusionTree>> = vec![Vec::new(); rank];
        match word.len() {
            0 => trees[spec.unit()].push(FusionTree { internal: vec![], mults: vec![] }),
            _ => {
                // partial trees of the prefix, keyed by current charge
                let mut partial: Vec<(usize, FusionTree)> =
                    vec![(word[0], FusionTree { internal: vec![], mults: vec![] })];
                for (pos, &x) in word.iter().enumerate().skip(1) {
                    let last = pos + 1 == word.len();
                    let mut next = Vec::new();
                    for (e, t) in &partial {
                        for k in spec.rules.products(*e, x) {
                            for mu in 0..spec.n(*e, x, k) {
                                let mut t2 = t.clone();
                                if pos > 1 {
                                    t2.internal.push(*e);
                                }
                                t2.mults.push(mu);
                                let _ = last;
                                next.push((k, t2));
                            }
                        }
                    }
                    partial = next;
                }
                for (k, t) in partial {
                    trees[k].push(t);
                }
            }
        }
        for list in &mut trees {
            list.sort();
        }
        let index = trees
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        ChannelBasis { word: word.to_vec(), trees, index }
    }

    pub fn dim(&self, k: usize) -> usize {
        self.trees[k].len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.trees.iter().map(Vec::len).collect()
    }

    pub fn position(&self, k: usize, t: &FusionTree) -> Option<usize> {
        self.index[k].get(t).copied()
    }
}

/// A labeled binary tree of arbitrary shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LTree {
    Leaf(usize),
    Node { left: Box<LTree>, right: Box<LTree>, charge: usize, mult: usize },
}

impl LTree {
    pub fn charge(&self) -> usize {
        match self {
            LTree::Leaf(a) => *a,
            LTree::Node { charge, .. } => *charge,
        }
    }

    pub fn node(left: LTree, right: LTree, charge: usize, mult: usize) -> LTree {
        LTree::Node { left: Box::new(left), right: Box::new(right), charge, mult }
    }

    pub fn shape(&self) -> Shape {
        match self {
            LTree::Leaf(_) => Shape::Leaf,
            LTree::Node { left, right, .. } => Shape::node(left.shape(), right.shape()),
        }
    }

    /// Build from a canonical tree of a non-empty word with root charge k.
    pub fn from_canonical(word: &[usize], t: &FusionTree, k: usize) -> LTree {
        let n = word.len();
        assert!(n >= 1);
        let mut cur = LTree::Leaf(word[0]);
        for i in 1..n {
            let charge = if i + 1 == n { k } else { t.internal[i - 1] };
            cur = LTree::node(cur, LTree::Leaf(word[i]), charge, t.mults[i - 1]);
        }
        cur
    }

    /// Inverse of `from_canonical`; None unless the tree is left-nested.
    pub fn to_canonical(&self) -> Option<FusionTree> {
        let mut internal = Vec::new();
        let mut mults = Vec::new();
        let mut cur = self;
        let mut first = true;
        while let LTree::Node { left, right, charge, mult } = cur {
            if !matches!(**right, LTree::Leaf(_)) {
                return None;
            }
            if !first {
                internal.push(*charge);
            }
            first = false;
            mults.push(*mult);
            cur = left;
        }
        internal.reverse();
        mults.reverse();
        Some(FusionTree { internal, mults })
    }

    fn at(&self, path: &[Side]) -> Option<&LTree> {
        match (path.split_first(), self) {
            (None, _) => Some(self),
            (Some((Side::Left, rest)), LTree::Node { left, .. }) => left.at(rest),
            (Some((Side::Right, rest)), LTree::Node { right, .. }) => right.at(rest),
            _ => None,
        }
    }

    fn replace(&self, path: &[Side], new: LTree) -> LTree {
        match (path.split_first(), self) {
            (None, _) => new,
            (Some((side, rest)), LTree::Node { left, right, charge, mult }) => match side {
                Side::Left => LTree::node(left.replace(rest, new), (**right).clone(), *charge, *mult),
                Side::Right => LTree::node((**left).clone(), right.replace(rest, new), *charge, *mult),
            },
            _ => unreachable!("path checked by caller"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Direction of a re-association at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// ((XY)Z) → (X(YZ)), coefficients from F.
    ToRight,
    /// (X(YZ)) → ((XY)Z), coefficients from F⁻¹.
    ToLeft,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn node(l: Shape, r: Shape) -> Shape {
        Shape::Node(Box::new(l), Box::new(r))
    }

    pub fn left_nested(n: usize) -> Shape {
        assert!(n >= 1);
        (1..n).fold(Shape::Leaf, |acc, _| Shape::node(acc, Shape::Leaf))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    fn at(&self, path: &[Side]) -> Option<&Shape> {
        match (path.split_first(), self) {
            (None, _) => Some(self),
            (Some((Side::Left, rest)), Shape::Node(l, _)) => l.at(rest),
            (Some((Side::Right, rest)), Shape::Node(_, r)) => r.at(rest),
            _ => None,
        }
    }

    fn replace(&self, path: &[Side], new: Shape) -> Shape {
        match (path.split_first(), self) {
            (None, _) => new,
            (Some((Side::Left, rest)), Shape::Node(l, r)) => Shape::node(l.replace(rest, new), (**r).clone()),
            (Some((Side::Right, rest)), Shape::Node(l, r)) => Shape::node((**l).clone(), r.replace(rest, new)),
            _ => unreachable!("path checked by caller"),
        }
    }

    /// Shape after applying `mv` at `path`, or BadPosition.
    pub fn moved(&self, path: &[Side], mv: Move) -> Result<Shape> {
        let sub = self.at(path).ok_or_else(|| Error::BadPosition(format!("{path:?} is not a node")))?;
        let new = match (mv, sub) {
            (Move::ToRight, Shape::Node(l, z)) => match &**l {
                Shape::Node(x, y) => Shape::node((**x).clone(), Shape::node((**y).clone(), (**z).clone())),
                Shape::Leaf => return Err(Error::BadPosition(format!("left child at {path:?} is a leaf"))),
            },
            (Move::ToLeft, Shape::Node(x, r)) => match &**r {
                Shape::Node(y, z) => Shape::node(Shape::node((**x).clone(), (**y).clone()), (**z).clone()),
                Shape::Leaf => return Err(Error::BadPosition(format!("right child at {path:?} is a leaf"))),
            },
            _ => return Err(Error::BadPosition(format!("{path:?} is a leaf"))),
        };
        Ok(self.replace(path, new))
    }

    /// Rotations (all `ToLeft`) that bring this shape to the left-nested one.
    pub fn normalizing_moves(&self) -> Vec<Vec<Side>> {
        let mut moves = Vec::new();
        let mut shape = self.clone();
        let mut path: Vec<Side> = Vec::new();
        loop {
            let Some(Shape::Node(_, r)) = shape.at(&path) else { break };
            if matches!(**r, Shape::Node(..)) {
                moves.push(path.clone());
                shape = shape.moved(&path, Move::ToLeft).expect("checked node");
            } else {
                path.push(Side::Left);
            }
        }
        moves
    }

    /// Every labeling of this shape by `word` (in order), sorted.
    pub fn labelings(&self, spec: &CategorySpec, word: &[usize]) -> Vec<LTree> {
        assert_eq!(self.leaves(), word.len());
        let mut out = self.labelings_rec(spec, word);
        out.sort();
        out
    }

    fn labelings_rec(&self, spec: &CategorySpec, word: &[usize]) -> Vec<LTree> {
        match self {
            Shape::Leaf => vec![LTree::Leaf(word[0])],
            Shape::Node(l, r) => {
                let nl = l.leaves();
                let lefts = l.labelings_rec(spec, &word[..nl]);
                let rights = r.labelings_rec(spec, &word[nl..]);
                let mut out = Vec::new();
                for x in &lefts {
                    for y in &rights {
                        for k in spec.rules.products(x.charge(), y.charge()) {
                            for mu in 0..spec.n(x.charge(), y.charge(), k) {
                                out.push(LTree::node(x.clone(), y.clone(), k, mu));
                            }
                        }
                    }
                }
                out
            }
        }
    }
}

/// A linear combination of labeled trees.
pub type TreeVec = Vec<(LTree, C64)>;

/// Apply one re-association to a single tree.
pub fn rotate(spec: &CategorySpec, tree: &LTree, path: &[Side], mv: Move) -> Result<TreeVec> {
    let sub = tree.at(path).ok_or_else(|| Error::BadPosition(format!("{path:?} is not a node")))?;
    let LTree::Node { left, right, charge: d, mult: mu_root } = sub else {
        return Err(Error::BadPosition(format!("{path:?} is a leaf")));
    };
    let d = *d;
    let mut out = Vec::new();
    match mv {
        Move::ToRight => {
            let LTree::Node { left: x, right: y, charge: e, mult: al } = &**left else {
                return Err(Error::BadPosition(format!("left child at {path:?} is a leaf")));
            };
            let z = right;
            let (a, b, c) = (x.charge(), y.charge(), z.charge());
            let fm = spec.f.get(a, b, c, d).expect("allowed tree has an F-matrix");
            let i = fm.left_pos((*e, *al, *mu_root)).expect("tree index");
            for (j, &(f, ga, de)) in fm.right.iter().enumerate() {
                let coef = fm.mat[(i, j)];
                if coef.norm() == 0.0 {
                    continue;
                }
                let inner = LTree::node((**y).clone(), (**z).clone(), f, ga);
                let new = LTree::node((**x).clone(), inner, d, de);
                out.push((tree.replace(path, new), coef));
            }
        }
        Move::ToLeft => {
            let LTree::Node { left: y, right: z, charge: f, mult: ga } = &**right else {
                return Err(Error::BadPosition(format!("right child at {path:?} is a leaf")));
            };
            let x = left;
            let (a, b, c) = (x.charge(), y.charge(), z.charge());
            let fm = spec.f.get(a, b, c, d).expect("allowed tree has an F-matrix");
            let j = fm.right_pos((*f, *ga, *mu_root)).expect("tree index");
            for (i, &(e, al, be)) in fm.left.iter().enumerate() {
                let coef = fm.inv[(j, i)];
                if coef.norm() == 0.0 {
                    continue;
                }
                let inner = LTree::node((**x).clone(), (**y).clone(), e, al);
                let new = LTree::node(inner, (**z).clone(), d, be);
                out.push((tree.replace(path, new), coef));
            }
        }
    }
    Ok(out)
}

/// Apply a re-association to every term of a combination, merging equal trees.
pub fn rotate_vec(spec: &CategorySpec, v: &TreeVec, path: &[Side], mv: Move) -> Result<TreeVec> {
    let mut acc: HashMap<LTree, C64> = HashMap::new();
    let mut order: Vec<LTree> = Vec::new();
    for (t, coef) in v {
        for (t2, c2) in rotate(spec, t, path, mv)? {
            let entry = acc.entry(t2.clone()).or_insert_with(|| {
                order.push(t2);
                C64::new(0.0, 0.0)
            });
            *entry += coef * c2;
        }
    }
    Ok(order.into_iter().map(|t| {
        let c = acc[&t];
        (t, c)
    }).collect())
}

/// Express a tree of any shape in the canonical basis of its word, as a coefficient column.
pub fn to_canonical_column(spec: &CategorySpec, tree: &LTree, basis: &ChannelBasis) -> Vec<C64> {
    let k = tree.charge();
    let mut v: TreeVec = vec![(tree.clone(), ONE)];
    for path in tree.shape().normalizing_moves() {
        v = rotate_vec(spec, &v, &path, Move::ToLeft).expect("normalizing moves are valid");
    }
    let mut col = vec![C64::new(0.0, 0.0); basis.dim(k)];
    for (t, coef) in v {
        let ft = t.to_canonical().expect("normalized");
        col[basis.position(k, &ft).expect("canonical tree in basis")] += coef;
    }
    col
}

/// Change of basis from "A-tree ⊗ C-tree joined at the root" to the canonical basis of A++C.
#[derive(Debug)]
pub struct Recoupling {
    /// Split basis per channel: (a, index in A's a-block, c, index in C's c-block, μ).
    pub split: Vec<Vec<(usize, usize, usize, usize, usize)>>,
    pub w: Vec<Mat>,
    pub w_inv: Vec<Mat>,
}

impl Recoupling {
    pub fn new(spec: &CategorySpec, a_word: &[usize], c_word: &[usize]) -> Recoupling {
        let rank = spec.rank();
        let ba = spec.basis(a_word);
        let bc = spec.basis(c_word);
        let joined: Vec<usize> = a_word.iter().chain(c_word).copied().collect();
        let bj = spec.basis(&joined);
        let mut split = vec![Vec::new(); rank];
        for a in 0..rank {
            for c in 0..rank {
                for k in spec.rules.products(a, c) {
                    for mu in 0..spec.n(a, c, k) {
                        for i in 0..ba.dim(a) {
                            for j in 0..bc.dim(c) {
                                split[k].push((a, i, c, j, mu));
                            }
                        }
                    }
                }
            }
        }
        let mut w = Vec::with_capacity(rank);
        let mut w_inv = Vec::with_capacity(rank);
        for k in 0..rank {
            let n = bj.dim(k);
            assert_eq!(n, split[k].len(), "split and canonical bases have equal size");
            let mut m = Mat::zeros(n, n);
            for (s, &(a, i, c, j, mu)) in split[k].iter().enumerate() {
                let col: Vec<C64> = if a_word.is_empty() {
                    let mut col = vec![C64::new(0.0, 0.0); n];
                    col[bj.position(k, &bc.trees[c][j]).expect("same word")] = ONE;
                    col
                } else if c_word.is_empty() {
                    let mut col = vec![C64::new(0.0, 0.0); n];
                    col[bj.position(k, &ba.trees[a][i]).expect("same word")] = ONE;
                    col
                } else {
                    let ta = LTree::from_canonical(a_word, &ba.trees[a][i], a);
                    let tc = LTree::from_canonical(c_word, &bc.trees[c][j], c);
                    to_canonical_column(spec, &LTree::node(ta, tc, k, mu), &bj)
                };
                for (r, v) in col.into_iter().enumerate() {
                    m[(r, s)] = v;
                }
            }
            let inv = crate::linalg::inverse(&m).expect("recoupling is invertible");
            w.push(m);
            w_inv.push(inv);
        }
        Recoupling { split, w, w_inv }
    }
}

/// Memo tables for bases and recouplings; purely a cache of derived values.
#[derive(Default)]
pub(crate) struct Caches {
    bases: std::sync::Mutex<HashMap<Vec<usize>, Arc<ChannelBasis>>>,
    recouplings: std::sync::Mutex<HashMap<(Vec<usize>, Vec<usize>), Arc<Recoupling>>>,
}

impl Clone for Caches {
    fn clone(&self) -> Self {
        Caches::default()
    }
}

impl std::fmt::Debug for Caches {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Caches")
    }
}

impl CategorySpec {
    /// Canonical tree basis of a word.
    pub fn basis(&self, word: &[usize]) -> Arc<ChannelBasis> {
        if let Some(b) = self.cache.bases.lock().unwrap().get(word) {
            return b.clone();
        }
        let b = Arc::new(ChannelBasis::new(self, word));
        self.cache.bases.lock().unwrap().insert(word.to_vec(), b.clone());
        b
    }

    pub fn recoupling(&self, a: &[usize], c: &[usize]) -> Arc<Recoupling> {
        let key = (a.to_vec(), c.to_vec());
        if let Some(r) = self.cache.recouplings.lock().unwrap().get(&key) {
            return r.clone();
        }
        let r = Arc::new(Recoupling::new(self, a, c));
        self.cache.recouplings.lock().unwrap().insert(key, r.clone());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> (CategorySpec, usize) {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let t = s.label_index("tau").unwrap();
        (s, t)
    }

    #[test]
    fn basis_sizes_match_counts() {
        let (s, t) = fib();
        for n in 0..6 {
            let w = vec![t; n];
            let b = s.basis(&w);
            assert_eq!(b.dims(), s.channel_counts(&w));
        }
    }

    #[test]
    fn basis_is_sorted_and_roundtrips_through_ltree() {
        let s = CategorySpec::builtin("ising").unwrap();
        let sg = s.label_index("sigma").unwrap();
        let w = vec![sg, sg, sg, sg];
        let b = s.basis(&w);
        for k in 0..s.rank() {
            assert!(b.trees[k].windows(2).all(|p| p[0] < p[1]));
            for t in &b.trees[k] {
                let lt = LTree::from_canonical(&w, t, k);
                assert_eq!(lt.to_canonical().as_ref(), Some(t));
            }
        }
    }

    #[test]
    fn normalizing_moves_reach_left_nested() {
        let shape = Shape::node(Shape::Leaf, Shape::node(Shape::node(Shape::Leaf, Shape::Leaf), Shape::Leaf));
        let mut sh = shape.clone();
        for p in shape.normalizing_moves() {
            sh = sh.moved(&p, Move::ToLeft).unwrap();
        }
        assert_eq!(sh, Shape::left_nested(4));
    }

    #[test]
    fn bad_positions_are_rejected() {
        let sh = Shape::left_nested(3);
        assert!(matches!(sh.moved(&[Side::Right], Move::ToRight), Err(Error::BadPosition(_))));
        assert!(matches!(sh.moved(&[], Move::ToLeft), Err(Error::BadPosition(_))));
    }

    #[test]
    fn recoupling_with_empty_factor_is_identity() {
        let (s, t) = fib();
        let r = s.recoupling(&[t, t], &[]);
        for k in 0..s.rank() {
            let n = r.w[k].nrows();
            assert!(crate::linalg::max_abs(&(&r.w[k] - Mat::identity(n, n))) < 1e-15);
        }
    }
}
