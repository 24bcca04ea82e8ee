//! Drinfeld centre objects as idempotents in the tube category.

mod blocks;
mod modular;

pub use blocks::{
    centre_twist, decompose_tube_algebra, half_braiding_from_idempotent, half_braiding_with, round_trip_residual,
    Splitting,
};
pub use modular::{
    is_modular, killing_ring, killing_ring_eval, s_matrix, s_matrix_dual, slice_checks, twists, twists_dual, ModularData,
    SliceReport,
};

use crate::diagram::Morphism;
use crate::error::{shape, Error, Result};
use crate::fusion_data::{CategorySpec, TensorWord};
use crate::linalg::{c, column_space, rank, Mat, Vector, C64};
use crate::tube::{tube_hom_dim, TubeMorphism};

/// τ_s ∈ Hom(s X, X s) for every simple s.
#[derive(Debug, Clone)]
pub struct HalfBraiding {
    pub object: TensorWord,
    pub tau: Vec<Morphism>,
}

impl HalfBraiding {
    /// The unit object with τ_s = id_s.
    pub fn unit(spec: &CategorySpec) -> HalfBraiding {
        let tau = (0..spec.rank()).map(|s| Morphism::identity(spec, &spec.word(&[s]))).collect();
        HalfBraiding { object: Vec::new(), tau }
    }

    /// τ_S = (id_I ⊗ σ_{J,S}⁻¹)∘(σ_{S,I} ⊗ id_J) on I J: S passes over I and under J.
    pub fn from_braiding(spec: &CategorySpec, i: &[usize], j: &[usize]) -> Result<HalfBraiding> {
        let object: TensorWord = i.iter().chain(j).copied().collect();
        let mut tau = Vec::with_capacity(spec.rank());
        for s in 0..spec.rank() {
            let sw = spec.word(&[s]);
            let over = spec.id_r(&spec.braid_words(&sw, i)?, j);
            let under = spec.id_l(i, &spec.unbraid_words(j, &sw)?);
            tau.push(over.then(&under)?);
        }
        Ok(HalfBraiding { object, tau })
    }

    /// τ_G for a word G: (τ_{g1} ⊗ id)∘(id_{g1} ⊗ τ_{g2…}).
    pub fn word_tau(&self, spec: &CategorySpec, g: &[usize]) -> Result<Morphism> {
        let Some((&first, rest)) = g.split_first() else {
            return Ok(Morphism::identity(spec, &self.object));
        };
        let inner = spec.id_l(&[first], &self.word_tau(spec, rest)?);
        inner.then(&spec.id_r(&self.tau[first], rest))
    }

    /// Largest violation of τ_{SR}∘(b ⊗ id_X) = (id_X ⊗ b)∘τ_k over resolutions b: k → S R,
    /// of τ_𝟙 = id, and of invertibility.
    pub fn residual(&self, spec: &CategorySpec) -> Result<f64> {
        let x = &self.object;
        let mut worst = self.tau[spec.unit()].distance(&Morphism::identity(spec, x))?;
        for (s, t) in self.tau.iter().enumerate() {
            let sw = spec.word(&[s]);
            let sx: TensorWord = sw.iter().chain(x).copied().collect();
            let xs: TensorWord = x.iter().chain(&sw).copied().collect();
            if t.source != sx || t.target != xs {
                return Err(shape("half-braiding component has the wrong shape"));
            }
            for b in &t.blocks {
                if b.nrows() != b.ncols() || rank(b, spec.tol) < b.nrows() {
                    return Ok(f64::INFINITY);
                }
            }
        }
        for s in 0..spec.rank() {
            for r in 0..spec.rank() {
                let sr = spec.word(&[s, r]);
                let tau_sr = self.word_tau(spec, &sr)?;
                for pair in spec.decompose_resolution(&sr) {
                    let lhs = spec.id_r(&pair.b, x).then(&tau_sr)?;
                    let rhs = self.tau[pair.channel].then(&spec.id_l(x, &pair.b))?;
                    worst = worst.max(lhs.distance(&rhs)?);
                }
            }
        }
        Ok(worst)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    HalfBraiding,
    BraidingPair(TensorWord, TensorWord),
    Block(usize),
}

#[derive(Debug, Clone)]
pub struct CentreIdempotent {
    pub eps: TubeMorphism,
    /// m_i = dim ε∘Hom_TC(i, X).
    pub mults: Vec<usize>,
    pub origin: Origin,
}

impl CentreIdempotent {
    pub fn new(spec: &CategorySpec, eps: TubeMorphism, origin: Origin) -> Result<CentreIdempotent> {
        if eps.source != eps.target {
            return Err(shape("an idempotent must be an endomorphism"));
        }
        let mut mults = Vec::with_capacity(spec.rank());
        for i in 0..spec.rank() {
            let m = tube_map(spec, &spec.word(&[i]), &eps.source, |h| spec.tube_compose(&eps, h))?;
            mults.push(rank(&m, spec.tol));
        }
        Ok(CentreIdempotent { eps, mults, origin })
    }

    pub fn object(&self) -> &[usize] {
        &self.eps.source
    }

    /// Σ_i m_i: the size of the matrix block this idempotent generates.
    pub fn size(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn idempotency_residual(&self, spec: &CategorySpec) -> Result<f64> {
        spec.tube_compose(&self.eps, &self.eps)?.distance(&self.eps)
    }
}

/// Matrix of a linear map on Hom_TC(X, Y) in tube coordinates.
pub(crate) fn tube_map<F>(spec: &CategorySpec, x: &[usize], y: &[usize], f: F) -> Result<Mat>
where
    F: Fn(&TubeMorphism) -> Result<TubeMorphism>,
{
    let basis = spec.tube_basis(x, y);
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        cols.push(f(b)?.coords(spec));
    }
    let rows = match cols.first() {
        Some(c) => c.len(),
        None => {
            // empty source space: probe the image size with the zero map
            let z = f(&TubeMorphism::zero(x, y))?;
            tube_hom_dim(spec, &z.source, &z.target)
        }
    };
    let mut m = Mat::zeros(rows, basis.len());
    for (j, col) in cols.into_iter().enumerate() {
        m.set_column(j, &Vector::from_vec(col));
    }
    Ok(m)
}

/// ε_τ = (1/D2) ⊕_S d(S)·τ_S.
pub fn eps_unchecked(spec: &CategorySpec, hb: &HalfBraiding) -> TubeMorphism {
    let mut eps = TubeMorphism::zero(&hb.object, &hb.object);
    let d2 = spec.global_dimension();
    for (s, t) in hb.tau.iter().enumerate() {
        eps.components.insert(s, t.scale(spec.dim(s) / d2));
    }
    eps
}

pub fn eps_from_half_braiding(spec: &CategorySpec, hb: &HalfBraiding) -> Result<CentreIdempotent> {
    let r = hb.residual(spec)?;
    if !(r < spec.tol) {
        return Err(Error::NotHalfBraiding(r));
    }
    CentreIdempotent::new(spec, eps_unchecked(spec, hb), Origin::HalfBraiding)
}

/// ε_I^J: the S-loop passes over I and under J.
pub fn eps_xy(spec: &CategorySpec, i: &[usize], j: &[usize]) -> Result<CentreIdempotent> {
    let hb = HalfBraiding::from_braiding(spec, i, j)?;
    let mut e = eps_from_half_braiding(spec, &hb)?;
    e.origin = Origin::BraidingPair(i.to_vec(), j.to_vec());
    Ok(e)
}

/// All ε_I^J for simple I, J, in label order.
pub fn eps_xy_family(spec: &CategorySpec) -> Result<Vec<CentreIdempotent>> {
    let mut out = Vec::new();
    for i in 0..spec.rank() {
        for j in 0..spec.rank() {
            out.push(eps_xy(spec, &spec.word(&[i]), &spec.word(&[j]))?);
        }
    }
    Ok(out)
}

/// ‖ε_τ∘α − RHS‖ where RHS_R = d(R)/D2·(id_{XR} ⊗ cap(G))(τ_{RG*} ⊗ id_G)(id_{RG*} ⊗ α_G)(id_R ⊗ cup'(G) ⊗ id_Y).
pub fn handle_slide_check(spec: &CategorySpec, hb: &HalfBraiding, alpha: &TubeMorphism) -> Result<f64> {
    if alpha.target != hb.object {
        return Err(shape("handle slide: α must land in the half-braided object"));
    }
    let x = &hb.object;
    let y = &alpha.source;
    let lhs = spec.tube_compose(&eps_unchecked(spec, hb), alpha)?;
    let d2 = spec.global_dimension();
    let mut rhs = TubeMorphism::zero(y, x);
    for (&g, ag) in &alpha.components {
        let gw = spec.word(&[g]);
        let gd = spec.dual(g);
        for r in 0..spec.rank() {
            let rgd = spec.word(&[r, gd]);
            let tau = hb.word_tau(spec, &rgd)?;
            let xr: TensorWord = x.iter().copied().chain(spec.word(&[r])).collect();
            let term = spec
                .whisker(&spec.word(&[r]), &spec.cup_p(g), y)
                .then(&spec.id_l(&rgd, ag))?
                .then(&spec.id_r(&tau, &gw))?
                .then(&spec.id_l(&xr, &spec.cap(g)))?
                .scale(spec.dim(r) / d2);
            rhs = rhs.add(&TubeMorphism::graded(spec, r, &term)?)?;
        }
    }
    lhs.distance(&rhs)
}

/// Mirror: ‖β∘ε_τ − RHS‖ with RHS_R = d(R)/D2·(id_Y ⊗ cap'(G) ⊗ id_R)(β_G ⊗ id_{G*R})(id_G ⊗ τ_{G*R})(cup(G) ⊗ id_{RX}).
pub fn handle_slide_check_mirror(spec: &CategorySpec, hb: &HalfBraiding, beta: &TubeMorphism) -> Result<f64> {
    if beta.source != hb.object {
        return Err(shape("handle slide: β must start at the half-braided object"));
    }
    let x = &hb.object;
    let y = &beta.target;
    let lhs = spec.tube_compose(beta, &eps_unchecked(spec, hb))?;
    let d2 = spec.global_dimension();
    let mut rhs = TubeMorphism::zero(x, y);
    for (&g, bg) in &beta.components {
        let gw = spec.word(&[g]);
        let gd = spec.dual(g);
        for r in 0..spec.rank() {
            let rw = spec.word(&[r]);
            let gdr = spec.word(&[gd, r]);
            let tau = hb.word_tau(spec, &gdr)?;
            let rx: TensorWord = rw.iter().chain(x).copied().collect();
            let term = spec
                .id_r(&spec.cup(g), &rx)
                .then(&spec.id_l(&gw, &tau))?
                .then(&spec.id_r(bg, &gdr))?
                .then(&spec.whisker(y, &spec.cap_p(g), &rw))?
                .scale(spec.dim(r) / d2);
            rhs = rhs.add(&TubeMorphism::graded(spec, r, &term)?)?;
        }
    }
    lhs.distance(&rhs)
}

/// Basis of {h = e2∘h∘e1} ⊂ Hom_TC(X1, X2).
pub fn hom_between_idempotents(
    spec: &CategorySpec,
    e1: &CentreIdempotent,
    e2: &CentreIdempotent,
) -> Result<Vec<TubeMorphism>> {
    let (x1, x2) = (e1.object(), e2.object());
    let p = tube_map(spec, x1, x2, |h| spec.tube_compose(&spec.tube_compose(&e2.eps, h)?, &e1.eps))?;
    let cols = column_space(&p, spec.tol);
    Ok((0..cols.ncols())
        .map(|j| {
            let v: Vec<C64> = cols.column(j).iter().copied().collect();
            TubeMorphism::from_coords(spec, x1, x2, &v)
        })
        .collect())
}

pub fn hom_dim_between(spec: &CategorySpec, e1: &CentreIdempotent, e2: &CentreIdempotent) -> Result<usize> {
    let (x1, x2) = (e1.object(), e2.object());
    let p = tube_map(spec, x1, x2, |h| spec.tube_compose(&spec.tube_compose(&e2.eps, h)?, &e1.eps))?;
    Ok(rank(&p, spec.tol))
}

#[derive(Debug, Clone)]
pub struct Completeness {
    pub complete: bool,
    pub orthogonal: bool,
    pub primitive: bool,
    /// Σ_{X,Y simple} Σ_e dim Hom_TC(X, e)·dim Hom_TC(e, Y)
    pub lhs: usize,
    /// Σ_{X,Y simple} dim Hom_TC(X, Y)
    pub rhs: usize,
    /// (X, Y) pairs where the two sides differ.
    pub mismatches: Vec<(usize, usize)>,
}

/// Orthogonality, primitivity and the dimension count of a family of idempotents.
pub fn completeness_check(spec: &CategorySpec, idems: &[CentreIdempotent]) -> Result<Completeness> {
    let n = idems.len();
    let mut orthogonal = true;
    let mut primitive = true;
    for a in 0..n {
        for b in 0..n {
            let d = hom_dim_between(spec, &idems[a], &idems[b])?;
            if a == b {
                primitive &= d == 1;
            } else {
                orthogonal &= d == 0;
            }
        }
    }
    // dim Hom_TC(e, Y) = rank of h ↦ h∘e
    let mut out_dims = vec![vec![0usize; spec.rank()]; n];
    for (a, e) in idems.iter().enumerate() {
        for y in 0..spec.rank() {
            let m = tube_map(spec, e.object(), &spec.word(&[y]), |h| spec.tube_compose(h, &e.eps))?;
            out_dims[a][y] = rank(&m, spec.tol);
        }
    }
    let (mut lhs, mut rhs) = (0, 0);
    let mut mismatches = Vec::new();
    for x in 0..spec.rank() {
        for y in 0..spec.rank() {
            let l: usize = (0..n).map(|a| idems[a].mults[x] * out_dims[a][y]).sum();
            let r = tube_hom_dim(spec, &spec.word(&[x]), &spec.word(&[y]));
            lhs += l;
            rhs += r;
            if l != r {
                mismatches.push((x, y));
            }
        }
    }
    Ok(Completeness {
        complete: orthogonal && primitive && mismatches.is_empty(),
        orthogonal,
        primitive,
        lhs,
        rhs,
        mismatches,
    })
}

/// Scalar multiple of `unit` closest to `v` (least squares in coordinates).
pub(crate) fn ratio(v: &[C64], unit: &[C64]) -> C64 {
    let num: C64 = unit.iter().zip(v).map(|(u, x)| u.conj() * x).sum();
    let den: f64 = unit.iter().map(|u| u.norm_sqr()).sum();
    if den == 0.0 {
        c(0.0)
    } else {
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(name: &str) -> CategorySpec {
        CategorySpec::builtin(name).unwrap()
    }

    #[test]
    fn braiding_gives_half_braiding() {
        let s = spec("ising");
        let sg = s.label_index("sigma").unwrap();
        let hb = HalfBraiding::from_braiding(&s, &[sg], &[sg]).unwrap();
        assert!(hb.residual(&s).unwrap() < 1e-10);
        assert!(HalfBraiding::unit(&s).residual(&s).unwrap() < 1e-14);
    }

    #[test]
    fn broken_half_braiding_is_rejected() {
        let s = spec("fibonacci");
        let t = s.label_index("tau").unwrap();
        let mut hb = HalfBraiding::from_braiding(&s, &[t], &[]).unwrap();
        hb.tau[t] = hb.tau[t].scale(c(2.0));
        assert!(matches!(eps_from_half_braiding(&s, &hb), Err(Error::NotHalfBraiding(_))));
    }

    #[test]
    fn unit_idempotent() {
        let s = spec("fibonacci");
        let e = eps_from_half_braiding(&s, &HalfBraiding::unit(&s)).unwrap();
        assert!(e.idempotency_residual(&s).unwrap() < 1e-12);
        assert_eq!(e.mults, vec![1, 0]);
    }

    #[test]
    fn eps_xy_fibonacci() {
        let s = spec("fibonacci");
        let t = s.label_index("tau").unwrap();
        for (i, j, mults) in [(vec![t], vec![], vec![0, 1]), (vec![t], vec![t], vec![1, 1])] {
            let e = eps_xy(&s, &i, &j).unwrap();
            assert!(e.idempotency_residual(&s).unwrap() < 1e-9);
            assert_eq!(e.mults, mults);
        }
    }

    #[test]
    fn vec_z2_trivial_braiding() {
        let s = spec("vec_z2");
        let e = s.label_index("e").unwrap();
        let eps = eps_xy(&s, &[e], &[]).unwrap();
        assert_eq!(eps.mults, vec![0, 1]);
    }

    #[test]
    fn handle_slides() {
        let s = spec("fibonacci");
        let t = s.label_index("tau").unwrap();
        let hb = HalfBraiding::from_braiding(&s, &[t], &[]).unwrap();
        let eps = eps_unchecked(&s, &hb);
        let id = s.tube_identity(&[t]);
        assert!(handle_slide_check(&s, &hb, &id).unwrap() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let a = TubeMorphism::random(&s, &[t], &[t], &mut rng);
            assert!(handle_slide_check(&s, &hb, &a).unwrap() < 1e-9);
            assert!(handle_slide_check_mirror(&s, &hb, &a).unwrap() < 1e-9);
        }
        let hb2 = HalfBraiding::from_braiding(&s, &[t], &[t]).unwrap();
        let a = TubeMorphism::random(&s, &[t], &[t, t], &mut rng);
        assert!(handle_slide_check(&s, &hb2, &a).unwrap() < 1e-9);
        assert!(eps.norm() > 0.0);
    }

    #[test]
    fn hom_spaces_fibonacci() {
        let s = spec("fibonacci");
        let t = s.label_index("tau").unwrap();
        let tt = eps_xy(&s, &[t], &[t]).unwrap();
        assert_eq!(hom_between_idempotents(&s, &tt, &tt).unwrap().len(), 1);
        let a = eps_xy(&s, &[], &[t]).unwrap();
        let b = eps_xy(&s, &[t], &[]).unwrap();
        assert_eq!(hom_dim_between(&s, &a, &b).unwrap(), 0);
    }

    #[test]
    fn completeness() {
        let s = spec("fibonacci");
        let fam = eps_xy_family(&s).unwrap();
        let sizes: Vec<usize> = fam.iter().map(|e| e.size()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 2]);
        let c = completeness_check(&s, &fam).unwrap();
        assert!(c.complete);
        assert_eq!((c.lhs, c.rhs), (7, 7));

        let z2 = spec("vec_z2");
        let c = completeness_check(&z2, &eps_xy_family(&z2).unwrap()).unwrap();
        assert!(!c.complete);
        assert!(!c.orthogonal);
    }
}
