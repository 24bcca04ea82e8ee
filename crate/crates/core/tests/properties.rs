//! Seeded random instances of the structural identities, every bundled category.

use fcat_core::fusion_data::BUILTIN_NAMES;
use fcat_core::{CategorySpec, Morphism, TensorWord, TubeMorphism};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BOUND: f64 = 1e-8;

fn config() -> Config {
    Config { cases: 24, rng_seed: RngSeed::Fixed(0x5EED), failure_persistence: None, ..Config::default() }
}

fn category(i: usize) -> CategorySpec {
    CategorySpec::builtin(BUILTIN_NAMES[i]).unwrap()
}

fn word(spec: &CategorySpec, raw: &[usize]) -> TensorWord {
    spec.word(&raw.iter().map(|&a| a % spec.rank()).collect::<Vec<_>>())
}

fn raw_word(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..3, 0..=max)
}

fn all_categories<F: Fn(&CategorySpec, u64, &[Vec<usize>]) -> Result<(), TestCaseError>>(words: usize, f: F) {
    let mut runner = proptest::test_runner::TestRunner::new(config());
    let strat = (any::<u64>(), prop::collection::vec(raw_word(2), words));
    for i in 0..BUILTIN_NAMES.len() {
        let spec = category(i);
        runner.run(&strat, |(seed, raw)| f(&spec, seed, &raw)).unwrap_or_else(|e| panic!("{}: {e}", spec.name));
    }
}

#[test]
fn tube_composition_is_associative() {
    all_categories(4, |spec, seed, raw| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w: Vec<TensorWord> = raw.iter().map(|r| word(spec, &r[..r.len().min(1)])).collect();
        let f = TubeMorphism::random(spec, &w[0], &w[1], &mut rng);
        let g = TubeMorphism::random(spec, &w[1], &w[2], &mut rng);
        let h = TubeMorphism::random(spec, &w[2], &w[3], &mut rng);
        let l = spec.tube_compose(&spec.tube_compose(&h, &g).unwrap(), &f).unwrap();
        let r = spec.tube_compose(&h, &spec.tube_compose(&g, &f).unwrap()).unwrap();
        prop_assert!(l.distance(&r).unwrap() < BOUND);
        Ok(())
    });
}

#[test]
fn tube_identity_is_a_unit() {
    all_categories(2, |spec, seed, raw| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (word(spec, &raw[0]), word(spec, &raw[1]));
        let f = TubeMorphism::random(spec, &x, &y, &mut rng);
        let l = spec.tube_compose(&spec.tube_identity(&y), &f).unwrap();
        let r = spec.tube_compose(&f, &spec.tube_identity(&x)).unwrap();
        prop_assert!(l.distance(&f).unwrap() < BOUND);
        prop_assert!(r.distance(&f).unwrap() < BOUND);
        Ok(())
    });
}

#[test]
fn interchange_law() {
    all_categories(6, |spec, seed, raw| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w: Vec<TensorWord> = raw.iter().map(|r| word(spec, r)).collect();
        let f1 = Morphism::random(spec, &w[0], &w[1], &mut rng);
        let f2 = Morphism::random(spec, &w[1], &w[2], &mut rng);
        let g1 = Morphism::random(spec, &w[3], &w[4], &mut rng);
        let g2 = Morphism::random(spec, &w[4], &w[5], &mut rng);
        let l = spec.tensor(&f1, &g1).then(&spec.tensor(&f2, &g2)).unwrap();
        let r = spec.tensor(&f1.then(&f2).unwrap(), &g1.then(&g2).unwrap());
        prop_assert!(l.distance(&r).unwrap() < BOUND);
        Ok(())
    });
}

#[test]
fn zigzag() {
    all_categories(1, |spec, _, raw| {
        let w = word(spec, &raw[0]);
        let wd = spec.dual_word(&w);
        let z1 = spec.id_r(&spec.cup_word(&w), &w).then(&spec.id_l(&w, &spec.cap_word(&w))).unwrap();
        let z2 = spec.id_l(&wd, &spec.cup_word(&w)).then(&spec.id_r(&spec.cap_word(&w), &wd)).unwrap();
        prop_assert!(z1.distance(&Morphism::identity(spec, &w)).unwrap() < BOUND);
        prop_assert!(z2.distance(&Morphism::identity(spec, &wd)).unwrap() < BOUND);
        Ok(())
    });
}

#[test]
fn reidemeister_two() {
    all_categories(2, |spec, _, raw| {
        if !spec.is_braided() {
            return Ok(());
        }
        let (a, b) = (word(spec, &raw[0]), word(spec, &raw[1]));
        let ab: TensorWord = a.iter().chain(&b).copied().collect();
        let ba: TensorWord = b.iter().chain(&a).copied().collect();
        let there = spec.braid_words(&a, &b).unwrap().then(&spec.unbraid_words(&a, &b).unwrap()).unwrap();
        let back = spec.unbraid_words(&a, &b).unwrap().then(&spec.braid_words(&a, &b).unwrap()).unwrap();
        prop_assert!(there.distance(&Morphism::identity(spec, &ab)).unwrap() < BOUND);
        prop_assert!(back.distance(&Morphism::identity(spec, &ba)).unwrap() < BOUND);
        Ok(())
    });
}

#[test]
fn traces_are_spherical() {
    all_categories(1, |spec, seed, raw| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = word(spec, &raw[0]);
        let f = Morphism::random(spec, &w, &w, &mut rng);
        let (l, r) = (spec.trace_left(&f).unwrap(), spec.trace_right(&f).unwrap());
        prop_assert!((l - r).norm() < BOUND);
        prop_assert!((spec.trace(&f).unwrap() - r).norm() < BOUND);
        Ok(())
    });
}
