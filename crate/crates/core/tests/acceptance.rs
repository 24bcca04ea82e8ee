//! The twelve acceptance criteria, one pass/fail line each.
//! Runs without the libtest harness so the table is always printed.

use std::f64::consts::PI;

use fcat_core::centre::{
    completeness_check, decompose_tube_algebra, eps_xy, eps_xy_family, half_braiding_from_idempotent,
    handle_slide_check, handle_slide_check_mirror, hom_dim_between, killing_ring_eval, round_trip_residual,
    HalfBraiding, ModularData,
};
use fcat_core::checks::{diagram_checks, tube_checks, SuiteOptions};
use fcat_core::fusion_data::{validate_hexagon, validate_pentagon, BUILTIN_NAMES};
use fcat_core::linalg::{c, max_abs, Mat, C64};
use fcat_core::{CategorySpec, Morphism, TubeAlgebra, TubeMorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// frozen oracle values
const PHI: f64 = 1.618_033_988_749_895;
const FIB_D2: f64 = 3.618_033_988_7;
const SQRT2: f64 = std::f64::consts::SQRT_2;

type Outcome = Result<(), String>;

fn cat(name: &str) -> CategorySpec {
    CategorySpec::builtin(name).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ac1() -> Outcome {
    for name in BUILTIN_NAMES {
        let s = cat(name);
        let p = validate_pentagon(&s).max_residual;
        ensure(p < 1e-9, || format!("{name} pentagon {p:e}"))?;
        if s.is_braided() {
            let h = validate_hexagon(&s).map_err(err)?.max_residual;
            ensure(h < 1e-9, || format!("{name} hexagon {h:e}"))?;
        }
    }
    Ok(())
}

fn ac2() -> Outcome {
    for name in BUILTIN_NAMES {
        let s = cat(name);
        for r in 0..s.rank() {
            let res = s.double_decompose_residual(r);
            ensure(res < 1e-8, || format!("{name} R={r}: {res:e}"))?;
        }
    }
    let s = cat("fibonacci");
    let mut v = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            v += s.hom_dim(&s.word(&[a, b]), &[]) as f64 * (s.dim(a) * s.dim(b)).re;
        }
    }
    ensure((v - FIB_D2).abs() < 1e-8, || format!("Fibonacci unit value {v}"))
}

fn ac3() -> Outcome {
    for (name, want) in [("fibonacci", 7), ("ising", 12), ("vec_z2", 4)] {
        let got = TubeAlgebra::new(&cat(name)).dim();
        ensure(got == want, || format!("{name}: {got} != {want}"))?;
    }
    Ok(())
}

fn ac4() -> Outcome {
    for name in BUILTIN_NAMES {
        let s = cat(name);
        let unit_tube = |a: usize| TubeMorphism::graded(&s, a, &Morphism::identity(&s, &s.word(&[a]))).unwrap();
        for a in 0..s.rank() {
            for b in 0..s.rank() {
                let p = s.tube_compose(&unit_tube(a), &unit_tube(b)).map_err(err)?;
                for k in 0..s.rank() {
                    let z = p.component(&s, k).scalar().map_err(err)?;
                    let rounded = C64::new(z.re.round(), z.im.round());
                    ensure((z - rounded).norm() < 1e-9 && rounded == c(s.n(a, b, k) as f64), || {
                        format!("{name} e_{a}·e_{b} at {k}: {z}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn ac5() -> Outcome {
    for name in ["fibonacci", "ising"] {
        let s = cat(name);
        for r in 0..s.rank() {
            let want = if r == s.unit() { s.global_dimension() } else { c(0.0) };
            let got = killing_ring_eval(&s, r).map_err(err)?;
            ensure((got - want).norm() < 1e-8, || format!("{name} R={r}: {got}"))?;
        }
    }
    Ok(())
}

fn ac6() -> Outcome {
    for name in ["fibonacci", "ising"] {
        let s = cat(name);
        let mut hbs = Vec::new();
        for e in eps_xy_family(&s).map_err(err)? {
            let r = e.idempotency_residual(&s).map_err(err)?;
            ensure(r < 1e-8, || format!("{name} idempotency {r:e}"))?;
        }
        for i in 0..s.rank() {
            for j in 0..s.rank() {
                hbs.push(HalfBraiding::from_braiding(&s, &s.word(&[i]), &s.word(&[j])).map_err(err)?);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..20 {
            let hb = &hbs[rng.gen_range(0..hbs.len())];
            let y = s.word(&[rng.gen_range(0..s.rank())]);
            let a = TubeMorphism::random(&s, &y, &hb.object, &mut rng);
            let b = TubeMorphism::random(&s, &hb.object, &y, &mut rng);
            let r = handle_slide_check(&s, hb, &a).map_err(err)?.max(handle_slide_check_mirror(&s, hb, &b).map_err(err)?);
            ensure(r < 1e-8, || format!("{name} handle slide {r:e}"))?;
        }
    }
    Ok(())
}

fn ac7() -> Outcome {
    for name in ["fibonacci", "ising"] {
        let s = cat(name);
        let n = s.rank();
        let fam = eps_xy_family(&s).map_err(err)?;
        for (p, e1) in fam.iter().enumerate() {
            for (q, e2) in fam.iter().enumerate() {
                let (i, j, a, b) = (p / n, p % n, q / n, q % n);
                let want = s.hom_dim(&s.word(&[i]), &s.word(&[a])) * s.hom_dim(&s.word(&[j]), &s.word(&[b]));
                let got = hom_dim_between(&s, e1, e2).map_err(err)?;
                ensure(got == want, || format!("{name} ({i},{j})→({a},{b}): {got} != {want}"))?;
            }
        }
    }
    Ok(())
}

fn ac8() -> Outcome {
    for (name, want_sizes, want_total) in [("fibonacci", vec![1, 1, 1, 2], 7), ("ising", vec![], 12)] {
        let s = cat(name);
        let fam = eps_xy_family(&s).map_err(err)?;
        let mut sizes: Vec<usize> = fam.iter().map(|e| e.size()).collect();
        if !want_sizes.is_empty() {
            ensure(sizes == want_sizes, || format!("{name} sizes {sizes:?}"))?;
        }
        let total: usize = sizes.iter().map(|n| n * n).sum();
        ensure(total == want_total, || format!("{name} Σn² = {total}"))?;
        let comp = completeness_check(&s, &fam).map_err(err)?;
        ensure(comp.complete, || format!("{name} not complete: {} vs {}", comp.lhs, comp.rhs))?;
        let alg = TubeAlgebra::new(&s);
        let mut blocks: Vec<usize> = decompose_tube_algebra(&s, &alg, 0x5EED).map_err(err)?.iter().map(|b| b.size()).collect();
        sizes.sort();
        blocks.sort();
        ensure(sizes == blocks, || format!("{name} blocks {blocks:?} vs {sizes:?}"))?;
    }
    Ok(())
}

fn ac9() -> Outcome {
    let s = cat("vec_z2");
    let md = ModularData::compute(&s).map_err(err)?;
    let want = Mat::from_element(2, 2, c(1.0));
    ensure(max_abs(&(&md.s - &want)) < 1e-8 && md.singular, || format!("S = {}", md.s))?;
    let e = s.label_index("e").unwrap();
    let (ee, one) = (eps_xy(&s, &[e], &[e]).map_err(err)?, eps_xy(&s, &[], &[]).map_err(err)?);
    let d = hom_dim_between(&s, &ee, &one).map_err(err)?;
    ensure(d >= 1, || format!("Hom(ε_e^e, ε_1^1) has dimension {d}"))?;
    let comp = completeness_check(&s, &eps_xy_family(&s).map_err(err)?).map_err(err)?;
    ensure(!comp.complete, || "Vec_Z2 reported complete".into())
}

fn ac10() -> Outcome {
    let fib = [[c(1.0), c(PHI)], [c(PHI), c(-1.0)]];
    let ising = [[c(1.0), c(SQRT2), c(1.0)], [c(SQRT2), c(0.0), c(-SQRT2)], [c(1.0), c(-SQRT2), c(1.0)]];
    let cases: [(&str, Vec<Vec<C64>>, Vec<C64>); 2] = [
        ("fibonacci", fib.iter().map(|r| r.to_vec()).collect(), vec![c(1.0), C64::from_polar(1.0, 4.0 * PI / 5.0)]),
        (
            "ising",
            ising.iter().map(|r| r.to_vec()).collect(),
            vec![c(1.0), C64::from_polar(1.0, PI / 8.0), c(-1.0)],
        ),
    ];
    for (name, s_want, t_want) in cases {
        let s = cat(name);
        let md = ModularData::compute(&s).map_err(err)?;
        for (i, row) in s_want.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                ensure((md.s[(i, j)] - v).norm() < 1e-8, || format!("{name} S[{i},{j}] = {}", md.s[(i, j)]))?;
            }
        }
        for (i, &v) in t_want.iter().enumerate() {
            ensure((md.t[(i, i)] - v).norm() < 1e-8, || format!("{name} θ[{i}] = {}", md.t[(i, i)]))?;
        }
        ensure(md.dual_residual < 1e-8, || format!("{name} dual strand {:e}", md.dual_residual))?;
        // S S† = D2 C, C the charge conjugation
        let ss = &md.s * md.s.adjoint();
        let d2 = s.global_dimension();
        let cc = Mat::from_fn(s.rank(), s.rank(), |i, j| if s.dual(i) == j { d2 } else { c(0.0) });
        ensure(max_abs(&(ss - cc)) < 1e-8, || format!("{name} S S† ≠ D2 C"))?;
    }
    Ok(())
}

fn ac11() -> Outcome {
    for name in BUILTIN_NAMES {
        let s = cat(name);
        let alg = TubeAlgebra::new(&s);
        for (n, b) in decompose_tube_algebra(&s, &alg, 0x5EED).map_err(err)?.iter().enumerate() {
            let hb = half_braiding_from_idempotent(&s, b).map_err(|e| format!("{name} block {n}: {e}"))?;
            let r = round_trip_residual(&s, b, &hb).map_err(err)?;
            ensure(r < 1e-6, || format!("{name} block {n}: {r:e}"))?;
        }
    }
    Ok(())
}

fn ac12() -> Outcome {
    let wanted = [
        "tube_associativity",
        "tube_unit",
        "interchange",
        "zigzag_and_loops",
        "reidemeister_ii",
        "sphericality",
    ];
    for name in BUILTIN_NAMES {
        let s = cat(name);
        let opts = SuiteOptions { seed: 0x5EED, instances: 20 };
        let mut checks = diagram_checks(&s, opts);
        checks.extend(tube_checks(&s, &TubeAlgebra::new(&s), opts));
        for w in wanted {
            let c = checks.iter().find(|c| c.name == w).ok_or_else(|| format!("{name}: no {w}"))?;
            ensure(c.pass, || format!("{name} {w}: {:?}", c.value))?;
            if let fcat_core::checks::CheckValue::Residual(r) = c.value {
                ensure(r < 1e-8, || format!("{name} {w}: {r:e}"))?;
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 12] = [
        ("AC-1", "pentagon and hexagon residuals", ac1),
        ("AC-2", "double decomposition of dimensions", ac2),
        ("AC-3", "tube algebra dimensions", ac3),
        ("AC-4", "End_TC(1) reproduces the fusion ring", ac4),
        ("AC-5", "killing ring", ac5),
        ("AC-6", "idempotency and handle slide", ac6),
        ("AC-7", "Hom spaces between ε_I^J", ac7),
        ("AC-8", "completeness and block sizes", ac8),
        ("AC-9", "non-modular witness Vec_Z2", ac9),
        ("AC-10", "S and T matrices", ac10),
        ("AC-11", "block round trip", ac11),
        ("AC-12", "property suites", ac12),
    ];
    let mut failed = Vec::new();
    for (id, what, f) in criteria {
        match f() {
            Ok(()) => println!("[PASS] {id} {what}"),
            Err(e) => {
                println!("[FAIL] {id} {what}: {e}");
                failed.push(id);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
