mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strata_core::composition::{closure, enumerate_omega, precedes, Composition, ReducedNormFilter};
use strata_core::graph::{build_dual_graph, expected_rank, graph_rank};
use strata_core::presentation::{classify_freeness, generators, presentation, stabilize, FreenessCase};
use strata_core::simplify::{certify_free, replay, simplify};
use strata_core::snf::abelianize;
use strata_core::tracer::{synthesize, trace, TraceOptions};
use strata_core::word::Word;

fn composition() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1usize..=4, 0..=5).prop_map(|p| Composition::new(p).unwrap())
}

fn rng_seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #[test]
    fn moves_raise_reduced_norm_by_one(c in composition()) {
        for s in c.successors() {
            prop_assert_eq!(s.reduced_norm(), c.reduced_norm() + 1);
            prop_assert!(s.norm() >= c.norm());
            prop_assert!(precedes(&s, &c));
        }
        prop_assert!(precedes(&c, &c));
    }

    #[test]
    fn closure_is_smallest_closed_superset(seed in rng_seed(), d in 2usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = enumerate_omega(d, ReducedNormFilter::Any);
        let seeds: Vec<Composition> = all.iter().filter(|_| rand::Rng::gen_bool(&mut rng, 0.2)).cloned().collect();
        let t = closure(&seeds, d).unwrap();
        prop_assert!(t.is_closed());
        prop_assert!(seeds.iter().all(|s| t.contains(s)));
        prop_assert_eq!(closure(t.members(), d).unwrap(), t.clone());
        for m in t.members() {
            prop_assert!(seeds.iter().any(|s| precedes(m, s)));
        }
    }

    #[test]
    fn word_laws(seed in rng_seed(), d in 3usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_letters(&mut rng, d, 8);
        let b = common::random_letters(&mut rng, d, 8);
        let c = common::random_letters(&mut rng, d, 8);
        prop_assert_eq!(a.reduce().reduce(), a.reduce());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert!(a.concat(&a.inverse()).is_empty());
        prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
        prop_assert_eq!(a.concat(&b).inverse(), b.inverse().concat(&a.inverse()));
    }

    #[test]
    fn walks_are_admissible_before_and_after_reduction(seed in rng_seed(), d in 2usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_walk(&mut rng, d, 14);
        prop_assert!(w.is_admissible(d).unwrap());
        prop_assert!(w.reduce().is_admissible(d).unwrap());
    }
}

#[test]
fn graph_invariants() {
    for d in 2..=14 {
        let sub = build_dual_graph(d, true).unwrap();
        let walls = build_dual_graph(d, false).unwrap();
        assert!(sub.is_connected() && walls.is_connected());
        for w in enumerate_omega(d, ReducedNormFilter::Eq(1)) {
            assert_eq!(sub.degree(&w), 2);
        }
        assert_eq!(graph_rank(&sub).unwrap(), graph_rank(&walls).unwrap());
        assert_eq!(graph_rank(&walls).unwrap(), expected_rank(d));
        assert_eq!(generators(d).len(), expected_rank(d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relators_expand_to_admissible_loops(seed in rng_seed(), d in 4usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta = common::random_closed_theta(&mut rng, d);
        let p = presentation(&theta).unwrap();
        prop_assert_eq!(p.relators.len(), theta.split_eq2().unwrap().1.len());
        for r in p.relator_words() {
            prop_assert!(r.expand(d).unwrap().is_admissible(d).unwrap());
        }
    }

    #[test]
    fn tietze_moves_preserve_the_group(seed in rng_seed(), d in 4usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = presentation(&common::random_closed_theta(&mut rng, d)).unwrap();
        let s = simplify(&p);
        prop_assert_eq!(abelianize(&p), abelianize(&s.to_presentation()));
        prop_assert_eq!(replay(&p, &s.log).unwrap(), s.clone());
        let again = simplify(&s.to_presentation());
        prop_assert!(again.same_group_data(&s));
        if let Some(r) = certify_free(&s) {
            let ab = abelianize(&p);
            prop_assert_eq!(ab.free_rank, r);
            prop_assert!(ab.torsion.is_empty());
        }
    }

    #[test]
    fn stabilization_beyond_the_forbidden_norms(seed in rng_seed(), e in 4usize..=6) {
        // every codimension-2 member has norm <= e = d - 4, so degrees d - 2 and d agree
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta = common::random_closed_theta(&mut rng, e);
        let d = e + 4;
        let top = simplify(&presentation(&stabilize(&theta, d).unwrap()).unwrap());
        let below = simplify(&presentation(&stabilize(&theta, d - 2).unwrap()).unwrap());
        prop_assert!(top.same_group_data(&below));
    }
}

#[test]
fn freeness_criteria_are_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in 4..=12 {
        let eq2 = enumerate_omega(d, ReducedNormFilter::Eq(2));
        let spaced_twos: Vec<Composition> = eq2
            .iter()
            .filter(|c| matches!(c.as_double_two(), Some((_, j, _)) if j > 0))
            .cloned()
            .collect();
        for _ in 0..3 {
            let mut seeds = spaced_twos.clone();
            seeds.extend(eq2.iter().filter(|_| rand::Rng::gen_bool(&mut rng, 0.3)).cloned());
            let theta = closure(&seeds, d).unwrap();
            let case = classify_freeness(&theta).unwrap();
            assert!(matches!(case, FreenessCase::CaseI | FreenessCase::CaseII | FreenessCase::ShortcutGe3));
            let s = simplify(&presentation(&theta).unwrap());
            assert!(certify_free(&s).is_some(), "d={d}: case (i) not certified: {:?}", s.relators);
        }
        let single = strata_core::presets::single_three_only(d);
        assert_eq!(classify_freeness(&single).unwrap(), FreenessCase::CaseII);
        assert_eq!(certify_free(&simplify(&presentation(&single).unwrap())), Some(1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn traced_loops_follow_the_group_law(seed in rng_seed(), d in 6usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_reduced_walk(&mut rng, d, 6);
        let b = common::random_reduced_walk(&mut rng, d, 6);
        let opts = TraceOptions::default();
        let pa = synthesize(&a, d, 4).unwrap();
        let pb = synthesize(&b, d, 4).unwrap();
        let traced = trace(&pa, &opts).unwrap();
        prop_assert!(traced.is_admissible(d).unwrap());
        prop_assert_eq!(trace(&pa.reversed(), &opts).unwrap(), a.inverse());
        prop_assert_eq!(trace(&pa.concat(&pb).unwrap(), &opts).unwrap(), a.concat(&b));
        let raw = trace(&pa.concat(&pb).unwrap(), &TraceOptions { raw: true, ..opts }).unwrap();
        let joined: Word = a.letters().iter().chain(b.letters()).copied().collect();
        prop_assert_eq!(raw, joined);
    }
}
