//! Invariants over randomly generated instances.

use proptest::prelude::*;

use usmod::essential::{
    is_essential, is_u_s_essential_fast, is_u_s_essential_oracle, quotient_characterization, replay_refutation,
};
use usmod::harness::corpus::{generate_corpus, generate_instance, Bounds};
use usmod::harness::laws::{replay, run_laws, Verdict};
use usmod::harness::search::{shrink, Claim};
use usmod::injective::{is_injective_baer, is_injective_zmod, InjVerdict};
use usmod::spec::{Built, Instance};
use usmod::torsion::{is_u_s_mono, is_u_s_torsion, is_u_s_torsion_scan, s_torsion_scan, s_torsion_submodule};

const SMALL: Bounds = Bounds {
    max_ring: 16,
    max_module: 32,
    count: 1,
};

fn built(seed: u64) -> Option<(Instance, Built)> {
    let inst = generate_instance(seed, &SMALL).ok()??;
    let b = inst.build().ok()?;
    Some((inst, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn torsion_is_the_kernel_of_sigma(seed in any::<u64>()) {
        let Some((_, b)) = built(seed) else { return Ok(()) };
        let tor = s_torsion_submodule(&b.m, &b.s).unwrap();
        prop_assert_eq!(tor.to_vec(), s_torsion_scan(&b.m, &b.s).unwrap().to_vec());
        prop_assert!(tor.killed_by(b.s.sigma()));
        for n in [&b.k, &b.h, &tor] {
            prop_assert_eq!(is_u_s_torsion(n, &b.s).unwrap().holds, is_u_s_torsion_scan(n, &b.s));
        }
    }

    #[test]
    fn three_deciders_agree(seed in any::<u64>()) {
        let Some((_, b)) = built(seed) else { return Ok(()) };
        for k in [&b.k, &b.h] {
            let fast = is_u_s_essential_fast(k, &b.s).unwrap();
            let oracle = is_u_s_essential_oracle(k, &b.s).unwrap();
            let quot = quotient_characterization(k, &b.s).unwrap();
            prop_assert_eq!(fast.verdict, oracle.verdict);
            prop_assert_eq!(oracle.verdict, quot.verdict);
            for v in [fast, oracle, quot] {
                match v.counterexample {
                    Some(l) => prop_assert!(replay_refutation(k, &l, v.witness_s1.unwrap(), &b.s).unwrap()),
                    None => {
                        // s₂ kills tor_S(M), hence every L with K ∩ L u-S-torsion
                        let tor = s_torsion_submodule(&b.m, &b.s).unwrap();
                        prop_assert!(tor.killed_by(v.witness_s2.unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn essential_implies_u_s_essential(seed in any::<u64>()) {
        let Some((_, b)) = built(seed) else { return Ok(()) };
        for k in [&b.k, &b.h] {
            if is_essential(k).unwrap().verdict {
                prop_assert!(is_u_s_essential_fast(k, &b.s).unwrap().verdict);
            }
        }
    }

    #[test]
    fn lattice_operations(seed in any::<u64>()) {
        let Some((_, b)) = built(seed) else { return Ok(()) };
        let (k, h) = (&b.k, &b.h);
        let meet = k.intersect(h).unwrap();
        let join = k.sum(h).unwrap();
        prop_assert!(meet.is_subset(k) && meet.is_subset(h));
        prop_assert!(k.is_subset(&join) && h.is_subset(&join));
        prop_assert_eq!(meet.to_vec(), h.intersect(k).unwrap().to_vec());
        prop_assert_eq!(join.to_vec(), h.sum(k).unwrap().to_vec());
        // |K + H|·|K ∩ H| = |K|·|H|
        prop_assert_eq!(join.len() * meet.len(), k.len() * h.len());
        // modular law with A = K ∩ H ≤ C = K
        let tor = s_torsion_submodule(&b.m, &b.s).unwrap();
        let left = meet.sum(&tor.intersect(k).unwrap()).unwrap();
        let right = meet.sum(&tor).unwrap().intersect(k).unwrap();
        prop_assert_eq!(left.to_vec(), right.to_vec());
    }

    #[test]
    fn homomorphism_kernels_and_images(seed in any::<u64>()) {
        let Some((_, b)) = built(seed) else { return Ok(()) };
        let Some(f) = &b.f else { return Ok(()) };
        let (ker, im) = (f.kernel(), f.image());
        prop_assert_eq!(ker.len() * im.len(), b.m.size());
        prop_assert!(f.image_of(&ker).unwrap().is_zero());
        prop_assert!(f.preimage(&im).unwrap().is_whole());
        prop_assert_eq!(f.preimage(&b.m2.zero_sub()).unwrap().to_vec(), ker.to_vec());
        prop_assert_eq!(is_u_s_mono(f, &b.s).unwrap().holds, ker.killed_by(b.s.sigma()));
        let k2 = f.image_of(&b.k).unwrap();
        prop_assert!(k2.is_subset(&im));
    }

    #[test]
    fn instances_round_trip_through_json(seed in any::<u64>()) {
        let Some((inst, b)) = built(seed) else { return Ok(()) };
        let back = Instance::from_json(&inst.to_json()).unwrap();
        prop_assert_eq!(&back, &inst);
        let again = back.build().unwrap();
        prop_assert_eq!(again.label(), b.label());
    }

    #[test]
    fn baer_matches_structure_over_zmod(seed in any::<u64>()) {
        let Some((_, b)) = built(seed) else { return Ok(()) };
        if b.ring.zmod_modulus().is_none() {
            return Ok(());
        }
        for m in [&b.m, &b.m2] {
            let baer = is_injective_baer(m).unwrap().verdict == InjVerdict::Injective;
            prop_assert_eq!(baer, is_injective_zmod(m).unwrap());
        }
    }
}

#[test]
fn corpus_is_deterministic() {
    let b = Bounds {
        count: 60,
        ..Bounds::default()
    };
    let a = generate_corpus(9, &b).unwrap();
    assert_eq!(a, generate_corpus(9, &b).unwrap());
    assert_ne!(a, generate_corpus(10, &b).unwrap());
    assert!(a.iter().any(Instance::is_pinned));
}

#[test]
fn tiny_bounds_give_only_f2() {
    let b = Bounds {
        max_ring: 2,
        max_module: 4,
        count: 20,
    };
    for inst in generate_corpus(3, &b).unwrap() {
        assert_eq!(inst.build().unwrap().ring.size(), 2);
    }
}

#[test]
fn law_results_replay_from_their_instance() {
    let b = Bounds {
        count: 25,
        ..Bounds::default()
    };
    let corpus = generate_corpus(5, &b).unwrap();
    let results = run_laws(&corpus, None).unwrap();
    let again = run_laws(&corpus, None).unwrap();
    assert_eq!(results.len(), again.len());
    for (r, s) in results.iter().zip(&again) {
        assert_eq!((r.law.as_str(), r.verdict), (s.law.as_str(), s.verdict));
    }
    for r in results.iter().filter(|r| r.verdict != Verdict::SkippedResource).step_by(7) {
        let inst = Instance::from_json(&r.instance.to_json()).unwrap();
        assert_eq!(inst, r.instance);
        assert_eq!(replay(r).unwrap(), r.verdict, "{} on {}", r.law, r.label);
    }
}

#[test]
fn shrinking_preserves_the_witness() {
    let claim = Claim::parse("u-S-essential-not-essential").unwrap();
    let b = Bounds {
        max_ring: 12,
        max_module: 32,
        count: 200,
    };
    let mut shrunk = 0;
    for inst in generate_corpus(11, &b).unwrap() {
        if claim.witnessed_by(&inst).unwrap().is_none() {
            continue;
        }
        let small = shrink(&claim, inst.clone()).unwrap();
        assert!(claim.witnessed_by(&small).unwrap().is_some());
        let (before, after) = (inst.build().unwrap(), small.build().unwrap());
        assert!(after.ring.size() <= before.ring.size());
        assert!(after.m.size() <= before.m.size());
        shrunk += 1;
        if shrunk == 10 {
            break;
        }
    }
    assert!(shrunk > 0);
}
