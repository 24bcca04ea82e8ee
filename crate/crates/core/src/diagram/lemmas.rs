//! Resolutions of the identity and the dimension identities built on them.

use super::morphism::Morphism;
use crate::error::{shape, Error, Result};
use crate::fusion_data::CategorySpec;
use crate::linalg::{c, condition_number, inverse, Mat, C64};

/// b ∈ Hom(k, A) with its dual b* ∈ Hom(A, k), b*∘b = id_k.
#[derive(Debug, Clone)]
pub struct ResolutionPair {
    pub channel: usize,
    pub b: Morphism,
    pub b_dual: Morphism,
}

/// Dual basis of a basis of Hom(k, A): invert the pairing matrix (b*_i ∘ b_j).
/// `basis` holds column vectors of the k-block.
pub fn dual_basis(basis: &Mat) -> Result<Mat> {
    if basis.nrows() != basis.ncols() {
        return Err(shape("a basis of Hom(k, A) must have trees(A,k) vectors"));
    }
    let cond = condition_number(basis);
    if !(cond <= 1e12) {
        return Err(Error::IllConditioned(cond));
    }
    Ok(inverse(basis).expect("well conditioned"))
}

impl CategorySpec {
    /// Σ_{k,b} b∘b* = id_A with b running over the canonical tree basis.
    pub fn decompose_resolution(&self, a: &[usize]) -> Vec<ResolutionPair> {
        let basis = self.basis(a);
        let mut out = Vec::new();
        for k in 0..self.rank() {
            let n = basis.dim(k);
            if n == 0 {
                continue;
            }
            out.extend(self.resolution_from_basis(a, k, &Mat::identity(n, n)).expect("identity basis"));
        }
        out
    }

    /// Pairs for an arbitrary basis of Hom(k, A), given as columns.
    pub fn resolution_from_basis(&self, a: &[usize], k: usize, basis: &Mat) -> Result<Vec<ResolutionPair>> {
        let dual = dual_basis(basis)?;
        let kw = self.word(&[k]);
        let mut out = Vec::new();
        for i in 0..basis.ncols() {
            let mut b = Morphism::zero(self, &kw, a);
            b.blocks[k].copy_from(&basis.column(i));
            let mut bd = Morphism::zero(self, a, &kw);
            bd.blocks[k].copy_from(&dual.row(i));
            out.push(ResolutionPair { channel: k, b, b_dual: bd });
        }
        Ok(out)
    }

    /// Both identities of the dual decomposition lemma for a word X and simple S;
    /// returns the larger residual.
    pub fn dual_decompose_check(&self, x: &[usize], s: usize) -> Result<f64> {
        let sw = self.word(&[s]);
        let xd = self.dual_word(x);
        let ds = self.dim(s);

        // Σ_{T, b ∈ Hom(S, X* T)} d(T)·(id_X ⊗ b*)(cup(X) ⊗ id_T)(cap'(X) ⊗ id_T)(id_X ⊗ b)
        let xs: Vec<usize> = x.iter().chain(&sw).copied().collect();
        let mut lhs = Morphism::zero(self, &xs, &xs);
        for t in 0..self.rank() {
            let tw = self.word(&[t]);
            let target: Vec<usize> = xd.iter().chain(&tw).copied().collect();
            for (b, bd) in self.hom_basis(&sw, &target)? {
                let term = self
                    .id_l(x, &b)
                    .then(&self.id_r(&self.cap_p_word(x), &tw))?
                    .then(&self.id_r(&self.cup_word(x), &tw))?
                    .then(&self.id_l(x, &bd))?;
                lhs.add_assign(&term.scale(self.dim(t)))?;
            }
        }
        let r1 = lhs.distance(&Morphism::identity(self, &xs).scale(ds))?;

        // mirror: Σ_{T, b ∈ Hom(S, T X*)} d(T)·(b* ⊗ id_X)(id_T ⊗ cup'(X))(id_T ⊗ cap(X))(b ⊗ id_X)
        let sx: Vec<usize> = sw.iter().chain(x).copied().collect();
        let mut lhs = Morphism::zero(self, &sx, &sx);
        for t in 0..self.rank() {
            let tw = self.word(&[t]);
            let target: Vec<usize> = tw.iter().chain(&xd).copied().collect();
            for (b, bd) in self.hom_basis(&sw, &target)? {
                let term = self
                    .id_r(&b, x)
                    .then(&self.id_l(&tw, &self.cap_word(x)))?
                    .then(&self.id_l(&tw, &self.cup_p_word(x)))?
                    .then(&self.id_r(&bd, x))?;
                lhs.add_assign(&term.scale(self.dim(t)))?;
            }
        }
        let r2 = lhs.distance(&Morphism::identity(self, &sx).scale(ds))?;
        Ok(r1.max(r2))
    }

    /// Basis of Hom(S, A) for a simple (or unit) word S with dual vectors: b*∘b' = δ.
    pub fn hom_basis(&self, s: &[usize], a: &[usize]) -> Result<Vec<(Morphism, Morphism)>> {
        let k = match s {
            [] => self.unit(),
            [k] => *k,
            _ => return Err(shape("hom_basis expects a simple source")),
        };
        Ok(self
            .decompose_resolution(a)
            .into_iter()
            .filter(|p| p.channel == k)
            .map(|p| (p.b, p.b_dual))
            .collect())
    }

    /// Σ_{S,T} hom_dim([S,T],[R])·d(S)·d(T) − d(R)·D2.
    pub fn double_decompose_residual(&self, r: usize) -> f64 {
        let mut acc = C64::new(0.0, 0.0);
        for s in 0..self.rank() {
            for t in 0..self.rank() {
                let n = self.hom_dim(&self.word(&[s, t]), &self.word(&[r]));
                acc += c(n as f64) * self.dim(s) * self.dim(t);
            }
        }
        (acc - self.dim(r) * self.global_dimension()).norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_data::BUILTIN_NAMES;

    #[test]
    fn resolution_of_fibonacci_pair() {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let t = s.label_index("tau").unwrap();
        let pairs = s.decompose_resolution(&[t, t]);
        assert_eq!(pairs.len(), 2);
        let mut sum = Morphism::zero(&s, &[t, t], &[t, t]);
        for p in &pairs {
            let kw = s.word(&[p.channel]);
            assert!(p.b.then(&p.b_dual).unwrap().distance(&Morphism::identity(&s, &kw)).unwrap() < 1e-12);
            sum.add_assign(&p.b_dual.then(&p.b).unwrap()).unwrap();
        }
        assert!(sum.distance(&Morphism::identity(&s, &[t, t])).unwrap() < 1e-12);
    }

    #[test]
    fn resolution_of_simple_is_identity_pair() {
        let s = CategorySpec::builtin("ising").unwrap();
        let sg = s.label_index("sigma").unwrap();
        let pairs = s.decompose_resolution(&[sg]);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].b, Morphism::identity(&s, &[sg]));
        let three = s.decompose_resolution(&[sg, sg, sg]);
        assert_eq!(three.iter().filter(|p| p.channel == sg).count(), 2);
        assert_eq!(three.len(), 2);
    }

    #[test]
    fn general_basis_duals() {
        let s = CategorySpec::builtin("ising").unwrap();
        let sg = s.label_index("sigma").unwrap();
        let basis = Mat::from_row_slice(2, 2, &[c(1.0), c(2.0), c(0.5), c(-1.0)]);
        let pairs = s.resolution_from_basis(&[sg, sg, sg], sg, &basis).unwrap();
        for (i, p) in pairs.iter().enumerate() {
            for (j, q) in pairs.iter().enumerate() {
                let v = q.b.then(&p.b_dual).unwrap().scalar().unwrap();
                assert!((v - c(if i == j { 1.0 } else { 0.0 })).norm() < 1e-12);
            }
        }
        let singular = Mat::from_row_slice(2, 2, &[c(1.0), c(2.0), c(0.5), c(1.0)]);
        assert!(matches!(
            s.resolution_from_basis(&[sg, sg, sg], sg, &singular),
            Err(Error::IllConditioned(_))
        ));
    }

    #[test]
    fn dual_decompose_on_builtins() {
        for name in BUILTIN_NAMES {
            let s = CategorySpec::builtin(name).unwrap();
            for x in s.nonunit_labels() {
                for t in 0..s.rank() {
                    let r = s.dual_decompose_check(&[x], t).unwrap();
                    assert!(r < 1e-10, "{name} x={x} s={t}: {r}");
                }
            }
        }
    }

    #[test]
    fn double_decompose_on_builtins() {
        for name in BUILTIN_NAMES {
            let s = CategorySpec::builtin(name).unwrap();
            for r in 0..s.rank() {
                assert!(s.double_decompose_residual(r) < 1e-10);
            }
        }
    }
}
