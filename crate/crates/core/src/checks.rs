//! The identity suite behind `fcat check`: one named entry per invariant.

use crate::centre::{
    self, completeness_check, decompose_tube_algebra, eps_xy_family, half_braiding_from_idempotent,
    handle_slide_check, handle_slide_check_mirror, hom_dim_between, killing_ring_eval, round_trip_residual,
    slice_checks, HalfBraiding, ModularData,
};
use crate::diagram::Morphism;
use crate::error::Result;
use crate::fusion_data::{validate_hexagon, validate_pentagon};
use crate::fusion_data::{CategorySpec, TensorWord};
use crate::linalg::{c, C64};
use crate::tube::{tube_hom_dim, TubeAlgebra, TubeMorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CheckValue {
    Residual(f64),
    Count { got: usize, want: usize },
    Flag { got: bool, want: bool },
    Skipped { skipped: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: CheckValue,
    pub pass: bool,
}

impl Check {
    pub fn residual(name: &str, r: f64, bound: f64) -> Check {
        Check { name: name.into(), value: CheckValue::Residual(r), pass: r < bound }
    }

    pub fn count(name: &str, got: usize, want: usize) -> Check {
        Check { name: name.into(), value: CheckValue::Count { got, want }, pass: got == want }
    }

    pub fn flag(name: &str, got: bool, want: bool) -> Check {
        Check { name: name.into(), value: CheckValue::Flag { got, want }, pass: got == want }
    }

    pub fn skipped(name: &str, why: &str) -> Check {
        Check { name: name.into(), value: CheckValue::Skipped { skipped: why.into() }, pass: true }
    }

    fn from_result(name: &str, r: Result<Check>) -> Check {
        r.unwrap_or_else(|e| Check {
            name: name.into(),
            value: CheckValue::Skipped { skipped: format!("error: {e}") },
            pass: false,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Random instances per property.
    pub instances: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: DEFAULT_SEED, instances: 20 }
    }
}

fn random_word<R: Rng>(spec: &CategorySpec, rng: &mut R, max_len: usize) -> TensorWord {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..spec.rank())).filter(|&a| a != spec.unit()).collect()
}

fn worst<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    let mut w = 0.0f64;
    for r in it {
        w = w.max(r?);
    }
    Ok(w)
}

pub fn fusion_checks(spec: &CategorySpec) -> Vec<Check> {
    let tol = spec.tol;
    let mut out = vec![Check::residual("pentagon", validate_pentagon(spec).max_residual, tol)];
    out.push(match validate_hexagon(spec) {
        Ok(h) => Check::residual("hexagon", h.max_residual, tol),
        Err(_) => Check::skipped("hexagon", "no braiding"),
    });
    let n = spec.rank();
    let mut dims = 0.0f64;
    let mut bad_hom = 0;
    for a in 0..n {
        for b in 0..n {
            let sum: C64 = (0..n).map(|k| c(spec.n(a, b, k) as f64) * spec.dim(k)).sum();
            dims = dims.max((sum - spec.dim(a) * spec.dim(b)).norm());
            for k in 0..n {
                bad_hom += usize::from(spec.hom_dim(&spec.word(&[a, b]), &spec.word(&[k])) != spec.n(a, b, k));
                bad_hom += usize::from(
                    spec.hom_dim(&spec.word(&[a, b]), &spec.word(&[k]))
                        != spec.hom_dim(&spec.word(&[k]), &spec.word(&[a, b])),
                );
            }
        }
    }
    out.push(Check::residual("dimension_ring", dims, tol));
    let involutive = (0..n).all(|a| spec.dual(spec.dual(a)) == a) && spec.dual(spec.unit()) == spec.unit();
    out.push(Check::flag("dual_involution", involutive, true));
    out.push(Check::count("hom_dim_mismatches", bad_hom, 0));
    out
}

pub fn diagram_checks(spec: &CategorySpec, opts: SuiteOptions) -> Vec<Check> {
    let tol = spec.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();

    let zz = worst(spec.nonunit_labels().map(|a| {
        let (aw, ad) = (spec.word(&[a]), spec.word(&[spec.dual(a)]));
        let z1 = spec.id_r(&spec.cup(a), &aw).then(&spec.id_l(&aw, &spec.cap(a)))?;
        let z2 = spec.id_l(&ad, &spec.cup(a)).then(&spec.id_r(&spec.cap(a), &ad))?;
        let l1 = (spec.cup_p(a).then(&spec.cap(a))?.scalar()? - spec.dim(a)).norm();
        let l2 = (spec.cup(a).then(&spec.cap_p(a))?.scalar()? - spec.dim(a)).norm();
        Ok(z1.distance(&Morphism::identity(spec, &aw))?.max(z2.distance(&Morphism::identity(spec, &ad))?).max(l1).max(l2))
    }));
    out.push(Check::from_result("zigzag_and_loops", zz.map(|r| Check::residual("zigzag_and_loops", r, tol))));

    let dd = (0..spec.rank()).map(|r| spec.double_decompose_residual(r)).fold(0.0, f64::max);
    out.push(Check::residual("double_decompose", dd, tol));

    let dual = worst((0..spec.rank()).flat_map(|x| (0..spec.rank()).map(move |s| (x, s))).map(|(x, s)| {
        spec.dual_decompose_check(&spec.word(&[x]), s)
    }));
    out.push(Check::from_result("dual_decompose", dual.map(|r| Check::residual("dual_decompose", r, tol))));

    let mut interchange = 0.0f64;
    let mut assoc = 0.0f64;
    let mut spherical = 0.0f64;
    let mut json = 0.0f64;
    for _ in 0..opts.instances {
        let (a, b, x, y) = (
            random_word(spec, &mut rng, 2),
            random_word(spec, &mut rng, 2),
            random_word(spec, &mut rng, 2),
            random_word(spec, &mut rng, 2),
        );
        let (p, q) = (random_word(spec, &mut rng, 2), random_word(spec, &mut rng, 2));
        let f1 = Morphism::random(spec, &a, &b, &mut rng);
        let f2 = Morphism::random(spec, &b, &p, &mut rng);
        let g1 = Morphism::random(spec, &x, &y, &mut rng);
        let g2 = Morphism::random(spec, &y, &q, &mut rng);
        let lhs = spec.tensor(&f1, &g1).then(&spec.tensor(&f2, &g2)).expect("composable");
        let rhs = spec.tensor(&f1.then(&f2).expect("composable"), &g1.then(&g2).expect("composable"));
        interchange = interchange.max(lhs.distance(&rhs).expect("same space"));
        let h = Morphism::random(spec, &p, &q, &mut rng);
        let l = spec.tensor(&spec.tensor(&f1, &g1), &h);
        let r = spec.tensor(&f1, &spec.tensor(&g1, &h));
        assoc = assoc.max(l.distance(&r).expect("same space"));
        let e = Morphism::random(spec, &a, &a, &mut rng);
        let (t, tl, tr) = (
            spec.trace(&e).expect("endo"),
            spec.trace_left(&e).expect("endo"),
            spec.trace_right(&e).expect("endo"),
        );
        spherical = spherical.max((t - tl).norm()).max((t - tr).norm());
        let back = Morphism::from_json(spec, &f1.to_json(spec)).expect("round trip");
        json = json.max(back.distance(&f1).expect("same space"));
    }
    out.push(Check::residual("interchange", interchange, tol));
    out.push(Check::residual("tensor_associativity", assoc, tol));
    out.push(Check::residual("sphericality", spherical, tol));
    out.push(Check::residual("morphism_json_round_trip", json, tol));

    if spec.is_braided() {
        let braid = (|| -> Result<(f64, f64, f64)> {
            let (mut r2, mut nat, mut yb) = (0.0f64, 0.0f64, 0.0f64);
            for _ in 0..opts.instances {
                let a = random_word(spec, &mut rng, 2);
                let b = random_word(spec, &mut rng, 2);
                let cw = random_word(spec, &mut rng, 1);
                let ab: TensorWord = a.iter().chain(&b).copied().collect();
                let s = spec.braid_words(&a, &b)?;
                let back = s.then(&spec.unbraid_words(&a, &b)?)?;
                r2 = r2.max(back.distance(&Morphism::identity(spec, &ab))?);
                let a2 = random_word(spec, &mut rng, 2);
                let f = Morphism::random(spec, &a, &a2, &mut rng);
                let l = spec.id_r(&f, &b).then(&spec.braid_words(&a2, &b)?)?;
                let r = spec.braid_words(&a, &b)?.then(&spec.id_l(&b, &f))?;
                nat = nat.max(l.distance(&r)?);
                let l = spec
                    .id_r(&spec.braid_words(&a, &b)?, &cw)
                    .then(&spec.id_l(&b, &spec.braid_words(&a, &cw)?))?
                    .then(&spec.id_r(&spec.braid_words(&b, &cw)?, &a))?;
                let r = spec
                    .id_l(&a, &spec.braid_words(&b, &cw)?)
                    .then(&spec.id_r(&spec.braid_words(&a, &cw)?, &b))?
                    .then(&spec.id_l(&cw, &spec.braid_words(&a, &b)?))?;
                yb = yb.max(l.distance(&r)?);
            }
            Ok((r2, nat, yb))
        })();
        match braid {
            Ok((r2, nat, yb)) => {
                out.push(Check::residual("reidemeister_ii", r2, tol));
                out.push(Check::residual("braid_naturality", nat, tol));
                out.push(Check::residual("yang_baxter", yb, tol));
            }
            Err(e) => out.push(Check::from_result("braiding", Err(e))),
        }
        out.push(Check::from_result("balancing", balancing(spec).map(|r| Check::residual("balancing", r, tol))));
    } else {
        for name in ["reidemeister_ii", "braid_naturality", "yang_baxter", "balancing"] {
            out.push(Check::skipped(name, "no braiding"));
        }
    }
    out
}

/// σ_{b,a}σ_{a,b} restricted to channel k equals θ_k/(θ_a θ_b).
fn balancing(spec: &CategorySpec) -> Result<f64> {
    let th = centre::twists(spec)?;
    let mut w = 0.0f64;
    for a in 0..spec.rank() {
        for b in 0..spec.rank() {
            let (aw, bw) = (spec.word(&[a]), spec.word(&[b]));
            let m = spec.braid_words(&aw, &bw)?.then(&spec.braid_words(&bw, &aw)?)?;
            for k in spec.rules.products(a, b) {
                let want = th[k] / (th[a] * th[b]);
                let blk = &m.blocks[k];
                let n = blk.nrows();
                for i in 0..n {
                    for j in 0..n {
                        let target = if i == j { want } else { c(0.0) };
                        w = w.max((blk[(i, j)] - target).norm());
                    }
                }
            }
        }
    }
    Ok(w)
}

pub fn tube_checks(spec: &CategorySpec, alg: &TubeAlgebra, opts: SuiteOptions) -> Vec<Check> {
    let tol = spec.tol;
    let n = spec.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7B);
    let mut out = Vec::new();

    let mut brute = 0;
    for r in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    brute += spec.n(r, i, k) * spec.n(j, r, k);
                }
            }
        }
    }
    out.push(Check::count("tube_algebra_dimension", alg.dim(), brute));

    let mut bad = 0;
    for x in 0..n {
        for y in 0..n {
            let (xw, yw) = (spec.word(&[x]), spec.word(&[y]));
            let mut count = 0;
            for i in 0..n {
                for j in 0..n {
                    let ij = spec.word(&[i, j]);
                    count += spec.hom_dim(&xw, &ij) * spec.hom_dim(&ij, &yw);
                }
            }
            bad += usize::from(count != tube_hom_dim(spec, &xw, &yw));
        }
    }
    out.push(Check::count("tube_dim_count_mismatches", bad, 0));

    let gr = (|| -> Result<f64> {
        let mut w = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let ea = TubeMorphism::graded(spec, a, &Morphism::identity(spec, &spec.word(&[a])))?;
                let eb = TubeMorphism::graded(spec, b, &Morphism::identity(spec, &spec.word(&[b])))?;
                let p = spec.tube_compose(&ea, &eb)?;
                for k in 0..n {
                    let got = p.component(spec, k).scalar()?;
                    let rounded = C64::new(got.re.round(), got.im.round());
                    if (got - rounded).norm() > tol || rounded != c(spec.n(a, b, k) as f64) {
                        return Ok(f64::INFINITY);
                    }
                    w = w.max((got - rounded).norm());
                }
            }
        }
        Ok(w)
    })();
    out.push(Check::from_result("grothendieck_ring", gr.map(|r| Check::residual("grothendieck_ring", r, tol))));

    let laws = (|| -> Result<(f64, f64, f64)> {
        let (mut assoc, mut unit, mut cl) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..opts.instances {
            let w: Vec<TensorWord> = (0..4).map(|_| random_word(spec, &mut rng, 1)).collect();
            let f = TubeMorphism::random(spec, &w[0], &w[1], &mut rng);
            let g = TubeMorphism::random(spec, &w[1], &w[2], &mut rng);
            let h = TubeMorphism::random(spec, &w[2], &w[3], &mut rng);
            let l = spec.tube_compose(&spec.tube_compose(&h, &g)?, &f)?;
            let r = spec.tube_compose(&h, &spec.tube_compose(&g, &f)?)?;
            assoc = assoc.max(l.distance(&r)?);
            let li = spec.tube_compose(&spec.tube_identity(&w[1]), &f)?;
            let ri = spec.tube_compose(&f, &spec.tube_identity(&w[0]))?;
            unit = unit.max(li.distance(&f)?).max(ri.distance(&f)?);
            let (g1, h1, x) = (random_word(spec, &mut rng, 1), random_word(spec, &mut rng, 1), &w[0]);
            let hx: TensorWord = h1.iter().chain(x).copied().collect();
            let xg: TensorWord = x.iter().chain(&g1).copied().collect();
            let gh: TensorWord = g1.iter().chain(&h1).copied().collect();
            let lhs = spec.tube_compose(&spec.c_morphism(&g1, &hx), &spec.c_morphism(&h1, &xg))?;
            cl = cl.max(lhs.distance(&spec.c_morphism(&gh, x))?);
        }
        Ok((assoc, unit, cl))
    })();
    match laws {
        Ok((a, u, cl)) => {
            out.push(Check::residual("tube_associativity", a, tol));
            out.push(Check::residual("tube_unit", u, tol));
            out.push(Check::residual("c_composition", cl, tol));
        }
        Err(e) => out.push(Check::from_result("tube_laws", Err(e))),
    }
    out.push(Check::residual("tube_algebra_associativity", alg.algebra.associativity_residual(), tol));
    out.push(Check::residual("tube_algebra_unit", alg.algebra.unit_residual(), tol));
    out
}

pub fn centre_checks(spec: &CategorySpec, alg: &TubeAlgebra, opts: SuiteOptions) -> Vec<Check> {
    let tol = spec.tol;
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xC3);

    let mut half_braidings: Vec<HalfBraiding> = Vec::new();
    match decompose_tube_algebra(spec, alg, opts.seed) {
        Ok(bs) => {
            let sq: usize = bs.iter().map(|b| b.size() * b.size()).sum();
            out.push(Check::count("block_decomposition", sq, alg.dim()));
            let mut rt = 0.0f64;
            let mut failed = None;
            for b in &bs {
                match half_braiding_from_idempotent(spec, b).and_then(|hb| {
                    let r = round_trip_residual(spec, b, &hb)?;
                    Ok((hb, r))
                }) {
                    Ok((hb, r)) => {
                        rt = rt.max(r);
                        half_braidings.push(hb);
                    }
                    Err(e) => failed = Some(e),
                }
            }
            out.push(match failed {
                None => Check::residual("block_round_trip", rt, 1e3 * tol),
                Some(e) => Check::from_result("block_round_trip", Err(e)),
            });
        }
        Err(e) => out.push(Check::from_result("block_decomposition", Err(e))),
    }

    let family = if spec.is_braided() { eps_xy_family(spec).ok() } else { None };
    if let Some(fam) = &family {
        half_braidings = Vec::new();
        for i in 0..spec.rank() {
            for j in 0..spec.rank() {
                if let Ok(hb) = HalfBraiding::from_braiding(spec, &spec.word(&[i]), &spec.word(&[j])) {
                    half_braidings.push(hb);
                }
            }
        }
        let idem = worst(fam.iter().map(|e| e.idempotency_residual(spec)));
        out.push(Check::from_result("eps_idempotent", idem.map(|r| Check::residual("eps_idempotent", r, tol))));
        let mut bad = 0;
        for i in 0..spec.rank() {
            for j in 0..spec.rank() {
                let e = &fam[i * spec.rank() + j];
                for k in 0..spec.rank() {
                    bad += usize::from(e.mults[k] != spec.hom_dim(&spec.word(&[k]), &spec.word(&[i, j])));
                }
            }
        }
        out.push(Check::count("eps_multiplicity_mismatches", bad, 0));
    } else {
        out.push(Check::skipped("eps_idempotent", "no braiding"));
        out.push(Check::skipped("eps_multiplicity_mismatches", "no braiding"));
    }

    let hs = (|| -> Result<f64> {
        let mut w = 0.0f64;
        if half_braidings.is_empty() {
            return Ok(0.0);
        }
        for _ in 0..opts.instances {
            let hb = &half_braidings[rng.gen_range(0..half_braidings.len())];
            let y = random_word(spec, &mut rng, 1);
            let a = TubeMorphism::random(spec, &y, &hb.object, &mut rng);
            let b = TubeMorphism::random(spec, &hb.object, &y, &mut rng);
            w = w.max(handle_slide_check(spec, hb, &a)?).max(handle_slide_check_mirror(spec, hb, &b)?);
        }
        Ok(w)
    })();
    out.push(Check::from_result("handle_slide", hs.map(|r| Check::residual("handle_slide", r, tol))));
    let hbr = worst(half_braidings.iter().map(|hb| hb.residual(spec)));
    out.push(Check::from_result("half_braiding", hbr.map(|r| Check::residual("half_braiding", r, 1e3 * tol))));

    let Some(fam) = family else {
        for name in ["modular_data", "hom_theorem", "completeness", "killing_ring", "slices"] {
            out.push(Check::skipped(name, "no braiding"));
        }
        return out;
    };
    let md = match ModularData::compute(spec) {
        Ok(md) => md,
        Err(e) => {
            out.push(Check::from_result("modular_data", Err(e)));
            return out;
        }
    };
    let first_row = (0..spec.rank()).map(|j| (md.s[(spec.unit(), j)] - spec.dim(j)).norm()).fold(0.0, f64::max);
    out.push(Check::residual("s_symmetric", md.symmetry_residual, tol));
    out.push(Check::residual("s_first_row_dims", first_row, tol));
    out.push(Check::residual("modular_dual_strand", md.dual_residual, tol));
    let modular = !md.singular;

    if modular {
        let mut bad = 0;
        let n = spec.rank();
        let r = (|| -> Result<usize> {
            for (p, e1) in fam.iter().enumerate() {
                for (q, e2) in fam.iter().enumerate() {
                    let (i, j, a, b) = (p / n, p % n, q / n, q % n);
                    let want = spec.hom_dim(&spec.word(&[i]), &spec.word(&[a]))
                        * spec.hom_dim(&spec.word(&[j]), &spec.word(&[b]));
                    bad += usize::from(hom_dim_between(spec, e1, e2)? != want);
                }
            }
            Ok(bad)
        })();
        out.push(Check::from_result("hom_theorem", r.map(|b| Check::count("hom_theorem", b, 0))));
    } else {
        out.push(Check::skipped("hom_theorem", "not modular"));
    }
    out.push(Check::from_result(
        "completeness",
        completeness_check(spec, &fam).map(|c| Check::flag("completeness", c.complete, modular)),
    ));
    if modular {
        let kr = worst((0..spec.rank()).map(|r| {
            let want = if r == spec.unit() { spec.global_dimension() } else { c(0.0) };
            Ok((killing_ring_eval(spec, r)? - want).norm())
        }));
        out.push(Check::from_result("killing_ring", kr.map(|r| Check::residual("killing_ring", r, 10.0 * tol))));
        let sl = slice_checks(spec, &mut rng, opts.instances);
        out.push(Check::from_result(
            "slices",
            sl.map(|r| Check::residual("slices", r.horizontal.max(r.vertical), 10.0 * tol)),
        ));
    } else {
        out.push(Check::skipped("killing_ring", "not modular"));
        out.push(Check::skipped("slices", "not modular"));
    }
    out
}

/// Every check, in a fixed order.
pub fn run_suite(spec: &CategorySpec, opts: SuiteOptions) -> Vec<Check> {
    let alg = TubeAlgebra::new(spec);
    let mut out = fusion_checks(spec);
    out.extend(diagram_checks(spec, opts));
    out.extend(tube_checks(spec, &alg, opts));
    out.extend(centre_checks(spec, &alg, opts));
    out
}
