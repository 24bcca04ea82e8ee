//! Duality: cups, caps, bends and traces.
//!
//! Unprimed maps are the coevaluation cup(a): 1 → a a* and evaluation
//! cap(a): a* a → 1. Primed maps are their mirror images through the pivotal
//! structure: cup'(a): 1 → a* a and cap'(a): a a* → 1.

use super::morphism::Morphism;
use crate::error::{shape, ConsistencyKind, Error, Result};
use crate::fusion_data::CategorySpec;
use crate::linalg::{C64, ONE};

/// Scalars attached to the single unit-channel tree of a a* (cup) and a* a (cap).
#[derive(Debug, Clone)]
pub struct RigidData {
    pub cup: Vec<C64>,
    pub cap: Vec<C64>,
}

impl RigidData {
    pub(crate) fn trivial(rank: usize) -> RigidData {
        RigidData { cup: vec![ONE; rank], cap: vec![ONE; rank] }
    }

    /// Fix cup/cap scalars so both zig-zags are exact and every loop equals d(a).
    /// Cups are real positive √|d(a)| on self-dual labels and on one label of each dual pair.
    pub(crate) fn normalize(spec: &CategorySpec) -> Result<RigidData> {
        let rank = spec.rank();
        let tol = spec.tol;
        let mut zz = vec![ONE; rank];
        for a in spec.nonunit_labels() {
            let z1 = zigzag_scalar(spec, a, false)?;
            let z2 = zigzag_scalar(spec, a, true)?;
            let residual = (z1 - z2).norm();
            if residual >= tol || z1.norm() < tol {
                return Err(Error::Consistency { kind: ConsistencyKind::Rigidity, residual });
            }
            zz[a] = z1;
        }
        let p = &spec.pivotal.p;
        let d = &spec.pivotal.d;
        let mut cup = vec![ONE; rank];
        for a in spec.nonunit_labels() {
            let ad = spec.dual(a);
            if a <= ad {
                cup[a] = C64::new(d[a].norm().sqrt(), 0.0);
            }
        }
        for a in spec.nonunit_labels() {
            let ad = spec.dual(a);
            if a > ad {
                // loop(ad) = p_ad · cap[a] · cup[ad] = d(ad) with cap[a] = 1/(zz[a]·cup[a])
                cup[a] = p[ad] * cup[ad] / (zz[a] * d[ad]);
            }
        }
        let cap: Vec<C64> = (0..rank).map(|a| ONE / (zz[a] * cup[a])).collect();
        let rigid = RigidData { cup, cap };
        for a in spec.nonunit_labels() {
            let ad = spec.dual(a);
            let lp = p[a] * rigid.cap[ad] * rigid.cup[a];
            let residual = (lp - d[a]).norm();
            if residual >= tol * (1.0 + d[a].norm()) {
                return Err(Error::Consistency { kind: ConsistencyKind::Dimension, residual });
            }
        }
        Ok(rigid)
    }
}

/// Zig-zag with unit cup/cap scalars: (id_a ⊗ cap)(cup ⊗ id_a) on a, or the mirror on a*.
fn zigzag_scalar(spec: &CategorySpec, a: usize, mirror: bool) -> Result<C64> {
    let ad = spec.dual(a);
    let cup = unit_channel_map(spec, &[], &[a, ad], ONE);
    let cap = unit_channel_map(spec, &[ad, a], &[], ONE);
    let m = if mirror {
        spec.id_l(&[ad], &cup).then(&spec.id_r(&cap, &[ad]))?
    } else {
        spec.id_r(&cup, &[a]).then(&spec.id_l(&[a], &cap))?
    };
    m.scalar()
}

/// The morphism whose only entry is `value` on the unit channel (1×1 block).
fn unit_channel_map(spec: &CategorySpec, source: &[usize], target: &[usize], value: C64) -> Morphism {
    let mut m = Morphism::zero(spec, source, target);
    let b = &mut m.blocks[spec.unit()];
    debug_assert_eq!((b.nrows(), b.ncols()), (1, 1));
    b[(0, 0)] = value;
    m
}

impl CategorySpec {
    /// cup(a): 1 → a a*
    pub fn cup(&self, a: usize) -> Morphism {
        let ad = self.dual(a);
        unit_channel_map(self, &[], &self.word(&[a, ad]), self.rigid.cup[a])
    }

    /// cap(a): a* a → 1
    pub fn cap(&self, a: usize) -> Morphism {
        let ad = self.dual(a);
        unit_channel_map(self, &self.word(&[ad, a]), &[], self.rigid.cap[a])
    }

    /// cup'(a): 1 → a* a
    pub fn cup_p(&self, a: usize) -> Morphism {
        let ad = self.dual(a);
        unit_channel_map(self, &[], &self.word(&[ad, a]), self.rigid.cup[ad] / self.pivotal.p[a])
    }

    /// cap'(a): a a* → 1
    pub fn cap_p(&self, a: usize) -> Morphism {
        let ad = self.dual(a);
        unit_channel_map(self, &self.word(&[a, ad]), &[], self.pivotal.p[a] * self.rigid.cap[ad])
    }

    /// cup(W): 1 → W W*
    pub fn cup_word(&self, w: &[usize]) -> Morphism {
        let Some((&x, rest)) = w.split_last() else { return Morphism::identity(self, &[]) };
        let inner = self.cup_word(rest);
        let rest_d = self.dual_word(rest);
        inner.then(&self.whisker(rest, &self.cup(x), &rest_d)).expect("shapes agree")
    }

    /// cap(W): W* W → 1
    pub fn cap_word(&self, w: &[usize]) -> Morphism {
        let Some((&x, rest)) = w.split_last() else { return Morphism::identity(self, &[]) };
        let xd = self.word(&[self.dual(x)]);
        let inner = self.whisker(&xd, &self.cap_word(rest), &[x]);
        inner.then(&self.cap(x)).expect("shapes agree")
    }

    /// cup'(W): 1 → W* W
    pub fn cup_p_word(&self, w: &[usize]) -> Morphism {
        let Some((&x, rest)) = w.split_last() else { return Morphism::identity(self, &[]) };
        let xd = self.word(&[self.dual(x)]);
        self.cup_p(x).then(&self.whisker(&xd, &self.cup_p_word(rest), &[x])).expect("shapes agree")
    }

    /// cap'(W): W W* → 1
    pub fn cap_p_word(&self, w: &[usize]) -> Morphism {
        let Some((&x, rest)) = w.split_last() else { return Morphism::identity(self, &[]) };
        let rest_d = self.dual_word(rest);
        self.whisker(rest, &self.cap_p(x), &rest_d).then(&self.cap_p_word(rest)).expect("shapes agree")
    }

    /// Hom(X Y, Z) → Hom(X, Z Y*): (f ⊗ id)(id ⊗ cup(Y)). `y_len` = |Y|.
    pub fn bend_source_right(&self, f: &Morphism, y_len: usize) -> Result<Morphism> {
        let (x, y) = split_tail(&f.source, y_len)?;
        let yd = self.dual_word(y);
        self.id_l(x, &self.cup_word(y)).then(&self.id_r(f, &yd))
    }

    pub fn unbend_source_right(&self, g: &Morphism, y: &[usize]) -> Result<Morphism> {
        let (z, _) = split_tail(&g.target, y.len())?;
        self.id_r(g, y).then(&self.id_l(z, &self.cap_word(y)))
    }

    /// Hom(X Y, Z) → Hom(Y, X* Z): (id ⊗ f)(cup'(X) ⊗ id). `x_len` = |X|.
    pub fn bend_source_left(&self, f: &Morphism, x_len: usize) -> Result<Morphism> {
        let (x, y) = split_head(&f.source, x_len)?;
        let xd = self.dual_word(x);
        self.id_r(&self.cup_p_word(x), y).then(&self.id_l(&xd, f))
    }

    pub fn unbend_source_left(&self, g: &Morphism, x: &[usize]) -> Result<Morphism> {
        let (_, z) = split_head(&g.target, x.len())?;
        self.id_l(x, g).then(&self.id_r(&self.cap_p_word(x), z))
    }

    /// Hom(X, Y Z) → Hom(X Z*, Y): (id ⊗ cap'(Z))(f ⊗ id). `z_len` = |Z|.
    pub fn bend_target_right(&self, f: &Morphism, z_len: usize) -> Result<Morphism> {
        let (y, z) = split_tail(&f.target, z_len)?;
        let zd = self.dual_word(z);
        self.id_r(f, &zd).then(&self.id_l(y, &self.cap_p_word(z)))
    }

    pub fn unbend_target_right(&self, g: &Morphism, z: &[usize]) -> Result<Morphism> {
        let (x, _) = split_tail(&g.source, z.len())?;
        self.id_l(x, &self.cup_p_word(z)).then(&self.id_r(g, z))
    }

    /// Hom(X, Y Z) → Hom(Y* X, Z): (cap(Y) ⊗ id)(id ⊗ f). `y_len` = |Y|.
    pub fn bend_target_left(&self, f: &Morphism, y_len: usize) -> Result<Morphism> {
        let (y, z) = split_head(&f.target, y_len)?;
        let yd = self.dual_word(y);
        self.id_l(&yd, f).then(&self.id_r(&self.cap_word(y), z))
    }

    pub fn unbend_target_left(&self, g: &Morphism, y: &[usize]) -> Result<Morphism> {
        let (_, x) = split_head(&g.source, y.len())?;
        self.id_r(&self.cup_word(y), x).then(&self.id_l(y, g))
    }

    /// Spherical trace Σ_k d(k)·tr(f_k).
    pub fn trace(&self, f: &Morphism) -> Result<C64> {
        if !f.is_endo() {
            return Err(shape("trace of a non-endomorphism"));
        }
        Ok(f.blocks.iter().enumerate().map(|(k, b)| self.dim(k) * b.trace()).sum())
    }

    /// Close all strands on the right with cup(A) and cap'(A).
    pub fn trace_right(&self, f: &Morphism) -> Result<C64> {
        if !f.is_endo() {
            return Err(shape("trace of a non-endomorphism"));
        }
        let ad = self.dual_word(&f.source);
        self.cup_word(&f.source)
            .then(&self.id_r(f, &ad))?
            .then(&self.cap_p_word(&f.source))?
            .scalar()
    }

    /// Close all strands on the left with cup'(A) and cap(A).
    pub fn trace_left(&self, f: &Morphism) -> Result<C64> {
        if !f.is_endo() {
            return Err(shape("trace of a non-endomorphism"));
        }
        let ad = self.dual_word(&f.source);
        self.cup_p_word(&f.source)
            .then(&self.id_l(&ad, f))?
            .then(&self.cap_word(&f.source))?
            .scalar()
    }

    /// Right partial trace of f ∈ End(X Y) over the last `y_len` strands.
    pub fn partial_trace_right(&self, f: &Morphism, y_len: usize) -> Result<Morphism> {
        if !f.is_endo() {
            return Err(shape("partial trace of a non-endomorphism"));
        }
        let (x, y) = split_tail(&f.source, y_len)?;
        let yd = self.dual_word(y);
        self.id_l(x, &self.cup_word(y)).then(&self.id_r(f, &yd))?.then(&self.id_l(x, &self.cap_p_word(y)))
    }

    /// Quantum dimension of a word.
    pub fn word_dim(&self, w: &[usize]) -> C64 {
        w.iter().map(|&a| self.dim(a)).product()
    }
}

fn split_tail(w: &[usize], n: usize) -> Result<(&[usize], &[usize])> {
    if n > w.len() {
        return Err(shape("split longer than word"));
    }
    Ok(w.split_at(w.len() - n))
}

fn split_head(w: &[usize], n: usize) -> Result<(&[usize], &[usize])> {
    if n > w.len() {
        return Err(shape("split longer than word"));
    }
    Ok(w.split_at(n))
}
