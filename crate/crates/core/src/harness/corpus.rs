//! Seeded instance generation.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::ring::{spectrum, FiniteRing};
use crate::spec::{Instance, ModuleSpec, MsetSpec, RingSpec, SizeProfile};

/// Largest ring used for products and trivial extensions.
const COMPOSITE_LIMIT: usize = 16;
/// Second modules stay small: they enter direct sums and Hom sets with M.
const SECOND_MODULE_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_ring: usize,
    pub max_module: usize,
    pub count: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_ring: 36,
            max_module: 64,
            count: 500,
        }
    }
}

impl Bounds {
    pub fn check(&self, caps: &Caps) -> Result<()> {
        if self.max_ring > caps.max_ring || self.max_module > caps.max_module {
            return Err(Error::Config(format!(
                "bounds (ring {}, module {}) exceed caps (ring {}, module {})",
                self.max_ring, self.max_module, caps.max_ring, caps.max_module
            )));
        }
        Ok(())
    }
}

fn zmod(n: usize) -> RingSpec {
    RingSpec::zmod(n)
}

fn product(a: RingSpec, b: RingSpec) -> RingSpec {
    RingSpec::Product {
        left: Box::new(a),
        right: Box::new(b),
    }
}

fn trivext(n: usize, module: ModuleSpec) -> RingSpec {
    RingSpec::TrivExt {
        base: Box::new(zmod(n)),
        module: Box::new(module),
    }
}

fn cyclic(gen: usize) -> ModuleSpec {
    if gen == 0 {
        ModuleSpec::Regular
    } else {
        ModuleSpec::Quot {
            base: Box::new(ModuleSpec::Regular),
            gens: vec![gen],
        }
    }
}

/// Every ring family the generator draws from, with sizes.
pub fn ring_catalogue(max_ring: usize) -> Vec<(RingSpec, usize)> {
    let mut out: Vec<(RingSpec, usize)> = (2..=36).map(|n| (zmod(n), n)).collect();
    for (a, b) in [(2, 2), (2, 4), (3, 3), (2, 6), (2, 8), (4, 4)] {
        out.push((product(zmod(a), zmod(b)), a * b));
    }
    out.push((product(product(zmod(2), zmod(2)), zmod(2)), 8));
    out.push((trivext(2, ModuleSpec::Regular), 4));
    out.push((trivext(3, ModuleSpec::Regular), 9));
    out.push((trivext(4, ModuleSpec::Regular), 16));
    out.push((trivext(4, cyclic(2)), 8));
    out.push((
        trivext(
            2,
            ModuleSpec::DirectSum {
                parts: vec![ModuleSpec::Regular, ModuleSpec::Regular],
            },
        ),
        8,
    ));
    out.retain(|(spec, n)| *n <= max_ring && (matches!(spec, RingSpec::Zmod { .. }) || *n <= COMPOSITE_LIMIT));
    out
}

fn random_mset(rng: &mut ChaCha8Rng, ring: &Arc<FiniteRing>) -> MsetSpec {
    let elems: Vec<usize> = ring.elements().collect();
    for _ in 0..16 {
        let roll = rng.gen_range(0..100);
        let spec = if roll < 45 {
            MsetSpec::Closure {
                gens: vec![*elems.choose(rng).unwrap()],
            }
        } else if roll < 60 {
            let mut gens = vec![*elems.choose(rng).unwrap(), *elems.choose(rng).unwrap()];
            gens.sort_unstable();
            gens.dedup();
            MsetSpec::Closure { gens }
        } else if roll < 75 {
            let primes = spectrum(ring).primes;
            let p = primes.choose(rng).expect("finite rings have a prime ideal");
            MsetSpec::ComplementPrime {
                gens: p.members().to_vec(),
            }
        } else if roll < 90 {
            MsetSpec::Units
        } else {
            MsetSpec::Trivial
        };
        if spec.build(ring).is_ok() {
            return spec;
        }
    }
    MsetSpec::Trivial
}

fn random_module_spec(rng: &mut ChaCha8Rng, ring: &Arc<FiniteRing>) -> ModuleSpec {
    let n = ring.size();
    let cyc = |rng: &mut ChaCha8Rng| cyclic(rng.gen_range(0..n));
    match rng.gen_range(0..100) {
        0..=29 => ModuleSpec::Regular,
        30..=49 => cyc(rng),
        50..=74 => ModuleSpec::DirectSum {
            parts: vec![cyc(rng), cyc(rng)],
        },
        75..=87 => ModuleSpec::Sub {
            base: Box::new(ModuleSpec::DirectSum {
                parts: vec![cyc(rng), cyc(rng)],
            }),
            gens: Vec::new(),
        },
        _ => ModuleSpec::Quot {
            base: Box::new(ModuleSpec::DirectSum {
                parts: vec![cyc(rng), cyc(rng)],
            }),
            gens: Vec::new(),
        },
    }
}

/// Sub/quot chains pick their generators after the base is known.
fn fill_chain(rng: &mut ChaCha8Rng, spec: ModuleSpec, ring: &Arc<FiniteRing>) -> Result<ModuleSpec> {
    Ok(match spec {
        ModuleSpec::Sub { base, .. } => {
            let b = base.build(ring)?;
            let gens = random_gens(rng, &b, 2);
            ModuleSpec::Sub { base, gens }
        }
        ModuleSpec::Quot { base, gens } if gens.is_empty() && !matches!(*base, ModuleSpec::Regular) => {
            let b = base.build(ring)?;
            let gens = random_gens(rng, &b, 1);
            ModuleSpec::Quot { base, gens }
        }
        other => other,
    })
}

fn random_module(rng: &mut ChaCha8Rng, ring: &Arc<FiniteRing>, limit: usize) -> Result<(ModuleSpec, Arc<FiniteModule>)> {
    for _ in 0..24 {
        let spec = random_module_spec(rng, ring);
        let spec = match fill_chain(rng, spec, ring) {
            Ok(s) => s,
            Err(e) if e.is_resource() => continue,
            Err(e) => return Err(e),
        };
        match spec.build(ring) {
            Ok(m) if m.size() <= limit && !m.is_zero() => return Ok((spec, m)),
            Ok(_) => {}
            Err(e) if e.is_resource() => {}
            Err(e) => return Err(e),
        }
    }
    // R/(r) for the smallest nonzero quotient that fits
    for r in ring.elements() {
        let spec = cyclic(r);
        let m = spec.build(ring)?;
        if m.size() <= limit && !m.is_zero() {
            return Ok((spec, m));
        }
    }
    Ok((ModuleSpec::Zero, FiniteModule::zero_module(ring)))
}

fn random_gens(rng: &mut ChaCha8Rng, m: &FiniteModule, max: usize) -> Vec<usize> {
    let count = match rng.gen_range(0..10) {
        0 => 0,
        1..=6 => 1,
        _ => 2,
    }
    .min(max);
    let mut gens: Vec<usize> = (0..count).map(|_| rng.gen_range(0..m.size())).collect();
    gens.sort_unstable();
    gens.dedup();
    gens
}

/// One instance from its own seed.
pub fn generate_instance(seed: u64, bounds: &Bounds) -> Result<Option<Instance>> {
    let rings = ring_catalogue(bounds.max_ring.min(Caps::global().max_ring));
    if rings.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zmods: Vec<&(RingSpec, usize)> = rings.iter().filter(|(r, _)| matches!(r, RingSpec::Zmod { .. })).collect();
    let composites: Vec<&(RingSpec, usize)> = rings.iter().filter(|(r, _)| !matches!(r, RingSpec::Zmod { .. })).collect();
    let (ring_spec, _) = if composites.is_empty() || rng.gen_bool(0.65) {
        *zmods.choose(&mut rng).expect("zmod 2 always fits")
    } else {
        *composites.choose(&mut rng).unwrap()
    };
    let ring = ring_spec.build()?;
    let mset = random_mset(&mut rng, &ring);
    let (module, m) = random_module(&mut rng, &ring, bounds.max_module)?;
    if m.size() > bounds.max_module {
        return Ok(None);
    }
    let k_gens = random_gens(&mut rng, &m, 2);
    let h_gens = random_gens(&mut rng, &m, 2);
    let (module2, m2) = random_module(&mut rng, &ring, bounds.max_module.min(SECOND_MODULE_LIMIT))?;
    if m2.size() > bounds.max_module {
        return Ok(None);
    }
    let k2_gens = random_gens(&mut rng, &m2, 2);
    let hom_pick = rng.gen_range(0..1024);
    Ok(Some(Instance {
        ring: ring_spec.clone(),
        mset,
        module,
        k_gens,
        h_gens,
        module2,
        k2_gens,
        hom_pick,
        seed,
        size_profile: SizeProfile {
            ring: ring.size(),
            module: m.size(),
            module2: m2.size(),
        },
    }))
}

/// Deterministic corpus: the pinned ℤ/6 instance first (when it fits), then seeded draws.
pub fn generate_corpus(seed: u64, bounds: &Bounds) -> Result<Vec<Instance>> {
    bounds.check(Caps::global())?;
    let mut out = Vec::with_capacity(bounds.count);
    if bounds.count == 0 {
        return Ok(out);
    }
    if bounds.max_ring >= 6 && bounds.max_module >= 6 {
        out.push(Instance::pinned());
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while out.len() < bounds.count && attempts < bounds.count * 4 {
        attempts += 1;
        if let Some(inst) = generate_instance(master.gen(), bounds)? {
            out.push(inst);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_pinned() {
        let b = Bounds {
            count: 40,
            ..Bounds::default()
        };
        let a = generate_corpus(42, &b).unwrap();
        let c = generate_corpus(42, &b).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&c).unwrap());
        assert_eq!(a.len(), 40);
        assert!(a[0].is_pinned());
        for inst in &a {
            let built = inst.build().unwrap();
            assert!(built.ring.size() <= 36);
            assert!(built.m.size() <= 64);
            assert_eq!(built.m.size(), inst.size_profile.module);
        }
        assert_ne!(generate_corpus(43, &b).unwrap(), a);
    }

    #[test]
    fn tiny_bounds_give_only_f2() {
        let b = Bounds {
            max_ring: 2,
            max_module: 4,
            count: 10,
        };
        let corpus = generate_corpus(1, &b).unwrap();
        assert_eq!(corpus.len(), 10);
        assert!(corpus.iter().all(|i| i.ring == RingSpec::zmod(2)));
        let none = Bounds {
            max_ring: 1,
            max_module: 4,
            count: 10,
        };
        assert!(generate_corpus(1, &none).unwrap().is_empty());
    }

    #[test]
    fn bounds_beyond_caps_are_rejected() {
        let b = Bounds {
            max_ring: 10_000,
            ..Bounds::default()
        };
        assert!(matches!(generate_corpus(0, &b), Err(Error::Config(_))));
    }
}
