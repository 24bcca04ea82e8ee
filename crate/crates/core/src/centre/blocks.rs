//! Centre objects from the block structure of the tube algebra, and half-braidings
//! recovered from idempotents.

use super::{eps_unchecked, ratio, tube_map, CentreIdempotent, HalfBraiding, Origin};
use crate::diagram::Morphism;
use crate::error::{Error, Result};
use crate::fusion_data::{CategorySpec, TensorWord};
use crate::linalg::{column_space, lstsq, rank, Mat, Vector, C64};
use crate::tube::{TubeAlgebra, TubeMorphism};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One primitive idempotent per simple summand of the tube algebra, sitting in the
/// first corner End_TC(j) where the summand has multiplicity one (if any).
pub fn decompose_tube_algebra(spec: &CategorySpec, alg: &TubeAlgebra, seed: u64) -> Result<Vec<CentreIdempotent>> {
    let corners: Vec<Vector> = (0..spec.rank()).map(|i| alg.corner_unit(spec, i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = alg.algebra.decompose(&corners, &mut rng, spec.tol)?;
    let total: usize = blocks.iter().map(|b| b.size * b.size).sum();
    if total != alg.dim() {
        return Err(Error::DecompositionFailed(format!("Σ n² = {total} but dim = {}", alg.dim())));
    }
    Ok(blocks
        .into_iter()
        .enumerate()
        .map(|(n, b)| CentreIdempotent {
            eps: alg.to_tube(spec, &b.primitive, b.corner, b.corner),
            mults: b.mults,
            origin: Origin::Block(n),
        })
        .collect())
}

/// First word (shortest, then lexicographic) whose channel multiplicities are `mults`.
fn word_with_counts(spec: &CategorySpec, mults: &[usize], max_len: usize) -> Option<TensorWord> {
    let letters: Vec<usize> = spec.nonunit_labels().collect();
    let mut layer: Vec<TensorWord> = vec![Vec::new()];
    for _ in 0..=max_len {
        for w in &layer {
            if spec.channel_counts(w) == mults {
                return Some(w.clone());
            }
        }
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |&l| w.iter().copied().chain([l]).collect()))
            .collect();
    }
    None
}

/// Split ε ∈ End_TC(X) through a word W with the same channel multiplicities and
/// transport the tube action onto W.
///
/// For v ∈ ε·Hom_TC(k, X) identified with f_v ∈ Hom(k, W) and t ∈ Hom(R j, k R), the
/// tube action must read (id_W ⊗ cap(R))(τ_{R*} ⊗ id_R)(id_{R*} ⊗ (f_v ⊗ id_R) t)(cup'(R) ⊗ id_j);
/// this is linear in τ_{R*} and determines it.
pub fn half_braiding_from_idempotent(spec: &CategorySpec, e: &CentreIdempotent) -> Result<HalfBraiding> {
    half_braiding_with(spec, e, Splitting::Auto)
}

/// How the underlying word of a split idempotent is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    /// Keep X when ε∘embed(Hom(k, X)) spans the image, else search.
    Auto,
    /// Always search for a word and use orthonormal image bases.
    SearchWords,
}

pub fn half_braiding_with(spec: &CategorySpec, e: &CentreIdempotent, how: Splitting) -> Result<HalfBraiding> {
    let tol = spec.tol;
    let rank_n = spec.rank();
    let x = e.object().to_vec();
    let kw = |k: usize| spec.word(&[k]);

    let mut proj = Vec::with_capacity(rank_n);
    for k in 0..rank_n {
        proj.push(tube_map(spec, &kw(k), &x, |h| spec.tube_compose(&e.eps, h))?);
    }
    let mults: Vec<usize> = proj.iter().map(|p| rank(p, tol)).collect();
    if mults != e.mults {
        return Err(Error::SplitFailed(format!("multiplicities {mults:?} disagree with {:?}", e.mults)));
    }

    // W = X when ε∘embed(Hom(k, X)) fills the image; otherwise any word with the right counts
    let mut bases: Option<Vec<Mat>> = None;
    let mut w = x.clone();
    if spec.channel_counts(&x) == mults && how == Splitting::Auto {
        let mut bs = Vec::with_capacity(rank_n);
        for k in 0..rank_n {
            let mut b = Mat::zeros(proj[k].nrows(), mults[k]);
            for i in 0..mults[k] {
                let v = spec.tube_compose(&e.eps, &spec.embed(&Morphism::tree_vector(spec, &x, k, i, false)))?;
                b.set_column(i, &Vector::from_vec(v.coords(spec)));
            }
            bs.push(b);
        }
        if bs.iter().zip(&mults).all(|(b, &m)| rank(b, tol) == m) {
            bases = Some(bs);
        }
    }
    let bases = match bases {
        Some(b) => b,
        None => {
            w = word_with_counts(spec, &mults, 6)
                .ok_or_else(|| Error::SplitFailed(format!("no word with multiplicities {mults:?}")))?;
            proj.iter().map(|p| column_space(p, tol)).collect()
        }
    };
    for (k, b) in bases.iter().enumerate() {
        if b.ncols() != mults[k] {
            return Err(Error::SplitFailed(format!("image at channel {k} has ambiguous rank")));
        }
    }
    let phi = |j: usize, v: &TubeMorphism| -> Vector {
        let coords = Vector::from_vec(v.coords(spec));
        lstsq(&bases[j], &coords, tol)
    };

    let mut tau: Vec<Option<Morphism>> = vec![None; rank_n];
    tau[spec.unit()] = Some(Morphism::identity(spec, &w));
    for r in spec.nonunit_labels() {
        let s = spec.dual(r);
        let rw = kw(r);
        let sw = kw(s);
        let sw_w: TensorWord = sw.iter().chain(&w).copied().collect();
        let w_sw: TensorWord = w.iter().chain(&sw).copied().collect();
        let unknowns = spec.hom_dim(&sw_w, &w_sw);
        let unknown_basis: Vec<Morphism> = (0..unknowns)
            .map(|u| {
                let mut v = vec![C64::new(0.0, 0.0); unknowns];
                v[u] = C64::new(1.0, 0.0);
                Morphism::from_coords(spec, &sw_w, &w_sw, &v)
            })
            .collect();
        let mut rows: Vec<Vec<C64>> = Vec::new();
        let mut rhs: Vec<C64> = Vec::new();
        for j in 0..rank_n {
            if mults[j] == 0 {
                continue;
            }
            let jw = kw(j);
            let rj: TensorWord = rw.iter().chain(&jw).copied().collect();
            for k in 0..rank_n {
                if mults[k] == 0 {
                    continue;
                }
                let krw: TensorWord = kw(k).into_iter().chain(rw.iter().copied()).collect();
                let nt = spec.hom_dim(&rj, &krw);
                for ti in 0..nt {
                    let mut tc = vec![C64::new(0.0, 0.0); nt];
                    tc[ti] = C64::new(1.0, 0.0);
                    let t = Morphism::from_coords(spec, &rj, &krw, &tc);
                    let tt = TubeMorphism::graded(spec, r, &t)?;
                    for i in 0..mults[k] {
                        let vc: Vec<C64> = bases[k].column(i).iter().copied().collect();
                        let v = TubeMorphism::from_coords(spec, &kw(k), &x, &vc);
                        let target = phi(j, &spec.tube_compose(&v, &tt)?);
                        let f = Morphism::tree_vector(spec, &w, k, i, false);
                        let g = t.then(&spec.id_r(&f, &rw))?;
                        let opened = spec.id_r(&spec.cup_p(r), &jw).then(&spec.id_l(&sw, &g))?;
                        let cols: Vec<Vec<C64>> = unknown_basis
                            .iter()
                            .map(|eb| {
                                let m = opened
                                    .then(&spec.id_r(eb, &rw))
                                    .and_then(|m| m.then(&spec.id_l(&w, &spec.cap(r))))
                                    .expect("shapes agree");
                                m.blocks[j].column(0).iter().copied().collect()
                            })
                            .collect();
                        for row in 0..mults[j] {
                            rows.push(cols.iter().map(|col| col[row]).collect());
                            rhs.push(target[row]);
                        }
                    }
                }
            }
        }
        let a = Mat::from_fn(rows.len(), unknowns, |i, u| rows[i][u]);
        let bvec = Vector::from_vec(rhs);
        let sol = lstsq(&a, &bvec, tol);
        let res = (&a * &sol - &bvec).camax();
        if !(res < 1e3 * tol) {
            return Err(Error::SplitFailed(format!("tube action is not a half-braiding (residual {res:e})")));
        }
        let coords: Vec<C64> = sol.iter().copied().collect();
        tau[s] = Some(Morphism::from_coords(spec, &sw_w, &w_sw, &coords));
    }
    let tau: Vec<Morphism> = tau.into_iter().map(|t| t.expect("every label is a dual")).collect();
    Ok(HalfBraiding { object: w, tau })
}

/// How well ε_τ of a recovered half-braiding reproduces the idempotent it came from:
/// the literal distance when the object is unchanged, otherwise the defect of the
/// isomorphism (X, ε) ≅ (W, ε_τ) built from one-dimensional Hom spaces.
pub fn round_trip_residual(spec: &CategorySpec, e: &CentreIdempotent, hb: &HalfBraiding) -> Result<f64> {
    let hb_res = hb.residual(spec)?;
    let back = eps_unchecked(spec, hb);
    if hb.object == e.object() {
        return Ok(back.distance(&e.eps)?.max(hb_res));
    }
    let other = CentreIdempotent { eps: back.clone(), mults: e.mults.clone(), origin: Origin::HalfBraiding };
    let there = super::hom_between_idempotents(spec, e, &other)?;
    let back_hom = super::hom_between_idempotents(spec, &other, e)?;
    if there.len() != 1 || back_hom.len() != 1 {
        return Err(Error::SplitFailed(format!(
            "expected one-dimensional Hom spaces, found {} and {}",
            there.len(),
            back_hom.len()
        )));
    }
    let (u, v) = (&there[0], &back_hom[0]);
    let vu = spec.tube_compose(v, u)?;
    let lambda = ratio(&vu.coords(spec), &e.eps.coords(spec));
    let inv = C64::new(1.0, 0.0) / lambda;
    let r1 = vu.scale(inv).distance(&e.eps)?;
    let r2 = spec.tube_compose(u, v)?.scale(inv).distance(&back)?;
    Ok(r1.max(r2).max(hb_res))
}

/// θ = tr(τ_W)/d(W) for the self half-braiding of the underlying word.
pub fn centre_twist(spec: &CategorySpec, hb: &HalfBraiding) -> Result<C64> {
    let t = hb.word_tau(spec, &hb.object)?;
    Ok(spec.trace(&t)? / spec.word_dim(&hb.object))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centre::{eps_from_half_braiding, eps_xy, hom_between_idempotents, HalfBraiding};
    use std::f64::consts::PI;

    #[test]
    fn block_sizes() {
        for (name, sizes) in [
            ("fibonacci", vec![1, 1, 1, 2]),
            ("vec_z2", vec![1, 1, 1, 1]),
            ("ising", vec![1, 1, 1, 1, 1, 1, 1, 1, 2]),
        ] {
            let s = CategorySpec::builtin(name).unwrap();
            let alg = TubeAlgebra::new(&s);
            let blocks = decompose_tube_algebra(&s, &alg, 0x5EED).unwrap();
            let mut got: Vec<usize> = blocks.iter().map(|b| b.size()).collect();
            got.sort();
            assert_eq!(got, sizes, "{name}");
            for b in &blocks {
                assert!(b.idempotency_residual(&s).unwrap() < 1e-8);
            }
        }
    }

    #[test]
    fn recovers_braiding_half_braiding() {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let t = s.label_index("tau").unwrap();
        let e = eps_xy(&s, &[t], &[]).unwrap();
        let hb = half_braiding_from_idempotent(&s, &e).unwrap();
        let orig = HalfBraiding::from_braiding(&s, &[t], &[]).unwrap();
        assert_eq!(hb.object, vec![t]);
        for (a, b) in hb.tau.iter().zip(&orig.tau) {
            assert!(a.distance(b).unwrap() < 1e-8);
        }
        assert!(round_trip_residual(&s, &e, &hb).unwrap() < 1e-8);
    }

    #[test]
    fn word_search_matches_direct_split() {
        let s = CategorySpec::builtin("ising").unwrap();
        let sg = s.label_index("sigma").unwrap();
        let e = eps_xy(&s, &[sg], &[sg]).unwrap();
        let direct = half_braiding_from_idempotent(&s, &e).unwrap();
        let searched = half_braiding_with(&s, &e, Splitting::SearchWords).unwrap();
        assert_eq!(direct.object, searched.object);
        assert!(round_trip_residual(&s, &e, &direct).unwrap() < 1e-8);
        // a different basis of the image conjugates τ by an automorphism of the word
        let e2 = eps_from_half_braiding(&s, &searched).unwrap();
        assert!(e2.idempotency_residual(&s).unwrap() < 1e-8);
        assert_eq!(hom_between_idempotents(&s, &e, &e2).unwrap().len(), 1);
        assert!((centre_twist(&s, &direct).unwrap() - centre_twist(&s, &searched).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn unit_object() {
        let s = CategorySpec::builtin("ising").unwrap();
        let e = crate::centre::eps_from_half_braiding(&s, &HalfBraiding::unit(&s)).unwrap();
        let hb = half_braiding_from_idempotent(&s, &e).unwrap();
        assert!(hb.object.is_empty());
        for t in &hb.tau {
            assert!(t.distance(&Morphism::identity(&s, &t.source)).unwrap() < 1e-9);
        }
    }

    #[test]
    fn blocks_round_trip_and_twists() {
        let s = CategorySpec::builtin("fibonacci").unwrap();
        let alg = TubeAlgebra::new(&s);
        let theta = C64::from_polar(1.0, 4.0 * PI / 5.0);
        let mut twists = Vec::new();
        for b in decompose_tube_algebra(&s, &alg, 0x5EED).unwrap() {
            let hb = half_braiding_from_idempotent(&s, &b).unwrap();
            assert!(round_trip_residual(&s, &b, &hb).unwrap() < 1e-6);
            twists.push(centre_twist(&s, &hb).unwrap());
        }
        for want in [C64::new(1.0, 0.0), theta, theta.conj()] {
            assert!(twists.iter().any(|z| (z - want).norm() < 1e-8), "{want} missing from {twists:?}");
        }
    }

    #[test]
    fn toric_code_signs() {
        let s = CategorySpec::builtin("vec_z2").unwrap();
        let alg = TubeAlgebra::new(&s);
        for b in decompose_tube_algebra(&s, &alg, 0x5EED).unwrap() {
            let hb = half_braiding_from_idempotent(&s, &b).unwrap();
            assert!(hb.residual(&s).unwrap() < 1e-9);
            for t in &hb.tau {
                for blk in &t.blocks {
                    for z in blk.iter() {
                        assert!((z.norm() - 1.0).abs() < 1e-9 && z.im.abs() < 1e-9);
                    }
                }
            }
        }
    }
}
