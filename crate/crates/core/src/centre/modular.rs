//! Modular data, the killing ring and the two slicing identities.

use crate::diagram::Morphism;
use crate::error::{Error, Result};
use crate::fusion_data::{CategorySpec, TensorWord};
use crate::linalg::{c, singular_values, Mat, C64};
use rand::Rng;

/// S_IJ = tr(σ_{J,I}∘σ_{I,J}), the Hopf link.
pub fn s_matrix(spec: &CategorySpec) -> Result<Mat> {
    let n = spec.rank();
    let mut s = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (iw, jw) = (spec.word(&[i]), spec.word(&[j]));
            let m = spec.braid_words(&iw, &jw)?.then(&spec.braid_words(&jw, &iw)?)?;
            s[(i, j)] = spec.trace(&m)?;
        }
    }
    Ok(s)
}

/// The same link with the J component replaced by J* running the other way:
/// the inverse double braid of I and J*.
pub fn s_matrix_dual(spec: &CategorySpec) -> Result<Mat> {
    let n = spec.rank();
    let mut s = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (iw, jd) = (spec.word(&[i]), spec.word(&[spec.dual(j)]));
            let m = spec.unbraid_words(&jd, &iw)?.then(&spec.unbraid_words(&iw, &jd)?)?;
            s[(i, j)] = spec.trace(&m)?;
        }
    }
    Ok(s)
}

/// θ_I = tr(σ_{I,I})/d(I).
pub fn twists(spec: &CategorySpec) -> Result<Vec<C64>> {
    (0..spec.rank())
        .map(|i| {
            let w = spec.word(&[i]);
            Ok(spec.trace(&spec.braid_words(&w, &w)?)? / spec.dim(i))
        })
        .collect()
}

/// θ_I read off the dual strand: tr(σ_{I*,I*})/d(I).
pub fn twists_dual(spec: &CategorySpec) -> Result<Vec<C64>> {
    (0..spec.rank())
        .map(|i| {
            let w = spec.word(&[spec.dual(i)]);
            Ok(spec.trace(&spec.braid_words(&w, &w)?)? / spec.dim(i))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ModularData {
    pub s: Mat,
    pub t: Mat,
    pub min_singular_value: f64,
    pub singular: bool,
    /// max |S − S_dual| and max |T − T_dual|
    pub dual_residual: f64,
    /// max |S − Sᵀ|
    pub symmetry_residual: f64,
}

impl ModularData {
    pub fn compute(spec: &CategorySpec) -> Result<ModularData> {
        let s = s_matrix(spec)?;
        let sd = s_matrix_dual(spec)?;
        let th = twists(spec)?;
        let thd = twists_dual(spec)?;
        let t = Mat::from_diagonal(&crate::linalg::Vector::from_vec(th.clone()));
        let min_sv = singular_values(&s).into_iter().fold(f64::INFINITY, f64::min);
        let min_sv = min_sv.min(th.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min));
        let dual_residual = crate::linalg::max_abs(&(&s - &sd))
            .max(th.iter().zip(&thd).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
        let symmetry_residual = crate::linalg::max_abs(&(&s - s.transpose()));
        Ok(ModularData {
            s,
            t,
            min_singular_value: min_sv,
            singular: !(min_sv > modular_threshold(spec)),
            dual_residual,
            symmetry_residual,
        })
    }
}

fn modular_threshold(spec: &CategorySpec) -> f64 {
    1e3 * spec.tol
}

pub fn is_modular(spec: &CategorySpec) -> Result<bool> {
    Ok(!ModularData::compute(spec)?.singular)
}

/// ring_S(A) = (id_A ⊗ cap'(S))∘((σ_{S,A}σ_{A,S}) ⊗ id_{S*})∘(id_A ⊗ cup(S)).
pub fn killing_ring(spec: &CategorySpec, s: usize, a: &[usize]) -> Result<Morphism> {
    let sw = spec.word(&[s]);
    let sd = spec.word(&[spec.dual(s)]);
    let double = spec.braid_words(a, &sw)?.then(&spec.braid_words(&sw, a)?)?;
    spec.id_l(a, &spec.cup(s)).then(&spec.id_r(&double, &sd))?.then(&spec.id_l(a, &spec.cap_p(s)))
}

/// Σ_S d(S)·(S-ring around a closed R strand).
pub fn killing_ring_eval(spec: &CategorySpec, r: usize) -> Result<C64> {
    let rw = spec.word(&[r]);
    let mut acc = c(0.0);
    for s in 0..spec.rank() {
        acc += spec.dim(s) * spec.trace(&killing_ring(spec, s, &rw)?)?;
    }
    Ok(acc)
}

fn ring_sum(spec: &CategorySpec, a: &[usize]) -> Result<Morphism> {
    let mut acc = Morphism::zero(spec, a, a);
    for s in 0..spec.rank() {
        acc.add_assign(&killing_ring(spec, s, a)?.scale(spec.dim(s)))?;
    }
    Ok(acc)
}

fn unit_projector(spec: &CategorySpec, a: &[usize]) -> Morphism {
    let mut p = Morphism::zero(spec, a, a);
    let u = spec.unit();
    let n = p.blocks[u].nrows();
    p.blocks[u] = Mat::identity(n, n);
    p
}

/// Right partial trace of f: X T → A T over T.
fn close_right(spec: &CategorySpec, f: &Morphism, t: &[usize]) -> Result<Morphism> {
    let n = t.len();
    let x = &f.source[..f.source.len() - n];
    let a = &f.target[..f.target.len() - n];
    let td = spec.dual_word(t);
    spec.id_l(x, &spec.cup_word(t)).then(&spec.id_r(f, &td))?.then(&spec.id_l(a, &spec.cap_p_word(t)))
}

#[derive(Debug, Clone)]
pub struct SliceReport {
    pub instances: usize,
    pub horizontal: f64,
    pub vertical: f64,
}

/// Horizontal: Σ_S d(S)·ring_S(X Y)∘α = D2·P_𝟙∘α.
/// Vertical: an S-loop around α ∈ Hom(XY, AB), over the left strands and under the
/// right ones, equals D2·Σ_T d(T)⁻¹ Σ_{b,c} tr_T((id_A ⊗ b*)α(id_X ⊗ c)) ⊗ b c*.
pub fn slice_checks<R: Rng>(spec: &CategorySpec, rng: &mut R, instances: usize) -> Result<SliceReport> {
    let md = ModularData::compute(spec)?;
    if md.singular {
        return Err(Error::NotModular(md.min_singular_value));
    }
    let d2 = spec.global_dimension();
    let n = spec.rank();
    let (mut horizontal, mut vertical) = (0.0f64, 0.0f64);
    let mut done = 0;
    while done < instances {
        let pick = |rng: &mut R| spec.word(&[rng.gen_range(0..n)]);
        let (x, y, a, b) = (pick(rng), pick(rng), pick(rng), pick(rng));
        let xy: TensorWord = x.iter().chain(&y).copied().collect();
        let ab: TensorWord = a.iter().chain(&b).copied().collect();
        if spec.hom_dim(&xy, &ab) == 0 {
            continue;
        }
        done += 1;

        let beta = Morphism::random(spec, &xy, &xy, rng);
        let lhs = beta.then(&ring_sum(spec, &xy)?)?;
        let rhs = beta.then(&unit_projector(spec, &xy).scale(d2))?;
        horizontal = horizontal.max(lhs.distance(&rhs)?);

        let alpha = Morphism::random(spec, &xy, &ab, rng);
        let mut lhs = Morphism::zero(spec, &xy, &ab);
        for s in 0..n {
            let sw = spec.word(&[s]);
            let sd = spec.word(&[spec.dual(s)]);
            let top = spec
                .id_r(&spec.braid_words(&sd, &x)?, &y)
                .then(&spec.id_l(&x, &spec.unbraid_words(&y, &sd)?))?;
            let bot = spec
                .id_r(&spec.braid_words(&sw, &a)?, &b)
                .then(&spec.id_l(&a, &spec.unbraid_words(&b, &sw)?))?;
            let term = spec
                .id_r(&spec.cup(s), &xy)
                .then(&spec.id_l(&sw, &top))?
                .then(&spec.whisker(&sw, &alpha, &sd))?
                .then(&spec.id_r(&bot, &sd))?
                .then(&spec.id_l(&ab, &spec.cap_p(s)))?;
            lhs.add_assign(&term.scale(spec.dim(s)))?;
        }
        let mut rhs = Morphism::zero(spec, &xy, &ab);
        for t in 0..n {
            let tw = spec.word(&[t]);
            let bs = spec.hom_basis(&tw, &b)?;
            let cs = spec.hom_basis(&tw, &y)?;
            for (bv, bdual) in &bs {
                for (cv, cdual) in &cs {
                    let inner = spec.id_l(&x, cv).then(&alpha)?.then(&spec.id_l(&a, bdual))?;
                    let left = close_right(spec, &inner, &tw)?;
                    let right = cdual.then(bv)?;
                    rhs.add_assign(&spec.tensor(&left, &right).scale(d2 / spec.dim(t)))?;
                }
            }
        }
        vertical = vertical.max(lhs.distance(&rhs)?);
    }
    Ok(SliceReport { instances, horizontal, vertical })
}
