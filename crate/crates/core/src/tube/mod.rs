//! The tube category: Hom_TC(X, Y) = ⊕_R Hom(R X, Y R), annular composition,
//! the embedding of the base category, rotations c_{G,X} and the tube algebra.

mod algebra;

pub use algebra::{TubeAlgebra, TubeBasisElement};

use crate::diagram::Morphism;
use crate::error::{shape, Result};
use crate::fusion_data::{CategorySpec, TensorWord};
use crate::linalg::C64;
use rand::Rng;
use std::collections::BTreeMap;

/// Components below this norm are dropped after composition.
const PRUNE: f64 = 1e-14;

/// An element of Hom_TC(source, target); `components[R]` ∈ Hom(R source, target R).
#[derive(Debug, Clone, PartialEq)]
pub struct TubeMorphism {
    pub source: TensorWord,
    pub target: TensorWord,
    pub components: BTreeMap<usize, Morphism>,
}

/// Σ_R hom_dim(R X, Y R).
pub fn tube_hom_dim(spec: &CategorySpec, x: &[usize], y: &[usize]) -> usize {
    (0..spec.rank()).map(|r| spec.hom_dim(&grade_source(spec, r, x), &grade_target(spec, r, y))).sum()
}

fn grade_source(spec: &CategorySpec, r: usize, x: &[usize]) -> TensorWord {
    spec.word(&[r]).into_iter().chain(x.iter().copied()).collect()
}

fn grade_target(spec: &CategorySpec, r: usize, y: &[usize]) -> TensorWord {
    y.iter().copied().chain(spec.word(&[r])).collect()
}

impl TubeMorphism {
    pub fn zero(source: &[usize], target: &[usize]) -> TubeMorphism {
        TubeMorphism { source: source.to_vec(), target: target.to_vec(), components: BTreeMap::new() }
    }

    /// A single component at grade R, with the words read off the component.
    pub fn graded(spec: &CategorySpec, r: usize, f: &Morphism) -> Result<TubeMorphism> {
        let n = spec.word(&[r]).len();
        if f.source.len() < n || f.target.len() < n || f.source[..n] != spec.word(&[r])[..] {
            return Err(shape("graded: component must start with its grade"));
        }
        let x = f.source[n..].to_vec();
        let y = f.target[..f.target.len() - n].to_vec();
        let mut t = TubeMorphism::zero(&x, &y);
        t.components.insert(r, f.clone());
        Ok(t)
    }

    pub fn component(&self, spec: &CategorySpec, r: usize) -> Morphism {
        self.components.get(&r).cloned().unwrap_or_else(|| {
            Morphism::zero(spec, &grade_source(spec, r, &self.source), &grade_target(spec, r, &self.target))
        })
    }

    pub fn random<R: Rng>(spec: &CategorySpec, x: &[usize], y: &[usize], rng: &mut R) -> TubeMorphism {
        let mut t = TubeMorphism::zero(x, y);
        for r in 0..spec.rank() {
            let (s, tg) = (grade_source(spec, r, x), grade_target(spec, r, y));
            if spec.hom_dim(&s, &tg) > 0 {
                t.components.insert(r, Morphism::random(spec, &s, &tg, rng));
            }
        }
        t
    }

    fn same_space(&self, o: &TubeMorphism) -> Result<()> {
        if self.source != o.source || self.target != o.target {
            return Err(shape("tube morphisms live in different Hom spaces"));
        }
        Ok(())
    }

    pub fn add(&self, o: &TubeMorphism) -> Result<TubeMorphism> {
        self.same_space(o)?;
        let mut out = self.clone();
        for (r, f) in &o.components {
            match out.components.get_mut(r) {
                Some(g) => g.add_assign(f)?,
                None => {
                    out.components.insert(*r, f.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &TubeMorphism) -> Result<TubeMorphism> {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> TubeMorphism {
        TubeMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|(r, f)| (*r, f.scale(s))).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.components.values().map(Morphism::norm).fold(0.0, f64::max)
    }

    pub fn distance(&self, o: &TubeMorphism) -> Result<f64> {
        Ok(self.sub(o)?.norm())
    }

    fn pruned(mut self) -> TubeMorphism {
        self.components.retain(|_, f| f.norm() >= PRUNE);
        self
    }

    /// Coordinates in the basis returned by `tube_basis`.
    pub fn coords(&self, spec: &CategorySpec) -> Vec<C64> {
        (0..spec.rank()).flat_map(|r| self.component(spec, r).coords()).collect()
    }

    pub fn from_coords(spec: &CategorySpec, x: &[usize], y: &[usize], coords: &[C64]) -> TubeMorphism {
        let mut t = TubeMorphism::zero(x, y);
        let mut offset = 0;
        for r in 0..spec.rank() {
            let (s, tg) = (grade_source(spec, r, x), grade_target(spec, r, y));
            let n = spec.hom_dim(&s, &tg);
            if n > 0 {
                t.components.insert(r, Morphism::from_coords(spec, &s, &tg, &coords[offset..offset + n]));
            }
            offset += n;
        }
        t
    }
}

impl CategorySpec {
    /// Matrix-unit basis of Hom_TC(X, Y), grade by grade.
    pub fn tube_basis(&self, x: &[usize], y: &[usize]) -> Vec<TubeMorphism> {
        let n = tube_hom_dim(self, x, y);
        let mut out = Vec::with_capacity(n);
        let zero = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut v = zero.clone();
            v[i] = C64::new(1.0, 0.0);
            out.push(TubeMorphism::from_coords(self, x, y, &v));
        }
        out
    }

    pub fn tube_identity(&self, x: &[usize]) -> TubeMorphism {
        self.embed(&Morphism::identity(self, x))
    }

    pub fn embed(&self, f: &Morphism) -> TubeMorphism {
        let mut t = TubeMorphism::zero(&f.source, &f.target);
        t.components.insert(self.unit(), f.clone());
        t
    }

    /// (g∘f)_T = Σ_{S,R,b∈Hom(T,SR)} (id ⊗ b*)(g_S ⊗ id_R)(id_S ⊗ f_R)(b ⊗ id).
    pub fn tube_compose(&self, g: &TubeMorphism, f: &TubeMorphism) -> Result<TubeMorphism> {
        if g.source != f.target {
            return Err(shape("tube_compose: source of g differs from target of f"));
        }
        let (x, z) = (&f.source, &g.target);
        let mut out = TubeMorphism::zero(x, z);
        for (&s, gs) in &g.components {
            let sw = self.word(&[s]);
            for (&r, fr) in &f.components {
                let rw = self.word(&[r]);
                let stacked = self.id_l(&sw, fr).then(&self.id_r(gs, &rw))?;
                let sr: TensorWord = sw.iter().chain(&rw).copied().collect();
                for pair in self.decompose_resolution(&sr) {
                    let term = self
                        .id_r(&pair.b, x)
                        .then(&stacked)?
                        .then(&self.id_l(z, &pair.b_dual))?;
                    match out.components.get_mut(&pair.channel) {
                        Some(acc) => acc.add_assign(&term)?,
                        None => {
                            out.components.insert(pair.channel, term);
                        }
                    }
                }
            }
        }
        Ok(out.pruned())
    }

    /// The α_G shorthand: ⊕_S Σ_{c∈Hom(S,G)} (id_Y ⊗ c*)∘α∘(c ⊗ id_X) for α ∈ Hom(G X, Y G).
    pub fn lift(&self, alpha: &Morphism, g: &[usize]) -> Result<TubeMorphism> {
        let n = g.len();
        if alpha.source.len() < n || alpha.source[..n] != *g || alpha.target.len() < n {
            return Err(shape("lift: α must start with G"));
        }
        if alpha.target[alpha.target.len() - n..] != *g {
            return Err(shape("lift: α must end with G"));
        }
        let x = &alpha.source[n..];
        let y = &alpha.target[..alpha.target.len() - n];
        let mut out = TubeMorphism::zero(x, y);
        for pair in self.decompose_resolution(g) {
            let term = self.id_r(&pair.b, x).then(alpha)?.then(&self.id_l(y, &pair.b_dual))?;
            match out.components.get_mut(&pair.channel) {
                Some(acc) => acc.add_assign(&term)?,
                None => {
                    out.components.insert(pair.channel, term);
                }
            }
        }
        Ok(out.pruned())
    }

    /// c_{G,X} ∈ Hom_TC(X G, G X): the identity on G X G, read around the tube.
    pub fn c_morphism(&self, g: &[usize], x: &[usize]) -> TubeMorphism {
        let gxg: TensorWord = g.iter().chain(x).chain(g).copied().collect();
        self.lift(&Morphism::identity(self, &gxg), g).expect("identity has the right shape")
    }
}
