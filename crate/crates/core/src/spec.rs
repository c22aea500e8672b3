//! Serializable recipes for rings, multiplicative sets, modules and whole
//! test instances. Element references are indices, which are stable because
//! every constructor is deterministic.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hom::{hom_for_each, Homomorphism};
use crate::module::{FiniteModule, Submodule};
use crate::mset::MultiplicativeSet;
use crate::ring::{FiniteRing, Ideal};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RingSpec {
    Zmod { n: usize },
    Product { left: Box<RingSpec>, right: Box<RingSpec> },
    /// R ⋉ M with M given over R.
    TrivExt { base: Box<RingSpec>, module: Box<ModuleSpec> },
    Quotient { base: Box<RingSpec>, gens: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModuleSpec {
    Regular,
    Zero,
    DirectSum { parts: Vec<ModuleSpec> },
    /// base / span(gens)
    Quot { base: Box<ModuleSpec>, gens: Vec<usize> },
    /// span(gens) ≤ base, as a module
    Sub { base: Box<ModuleSpec>, gens: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MsetSpec {
    Closure { gens: Vec<usize> },
    /// R ∖ p with p generated by `gens`.
    ComplementPrime { gens: Vec<usize> },
    Units,
    Trivial,
}

impl RingSpec {
    pub fn zmod(n: usize) -> Self {
        RingSpec::Zmod { n }
    }

    pub fn build(&self) -> Result<Arc<FiniteRing>> {
        match self {
            RingSpec::Zmod { n } => FiniteRing::zmod(*n),
            RingSpec::Product { left, right } => FiniteRing::product(&left.build()?, &right.build()?),
            RingSpec::TrivExt { base, module } => {
                let r = base.build()?;
                FiniteRing::trivial_extension(&*module.build(&r)?)
            }
            RingSpec::Quotient { base, gens } => {
                let r = base.build()?;
                let ideal = Ideal::generated(&r, gens)?;
                Ok(FiniteRing::quotient(&r, &ideal)?.ring)
            }
        }
    }

    /// Size without building, where cheap to know.
    pub fn size_hint(&self) -> Option<usize> {
        match self {
            RingSpec::Zmod { n } => Some(*n),
            RingSpec::Product { left, right } => Some(left.size_hint()? * right.size_hint()?),
            _ => None,
        }
    }
}

impl ModuleSpec {
    pub fn build(&self, ring: &Arc<FiniteRing>) -> Result<Arc<FiniteModule>> {
        match self {
            ModuleSpec::Regular => Ok(FiniteModule::regular(ring)),
            ModuleSpec::Zero => Ok(FiniteModule::zero_module(ring)),
            ModuleSpec::DirectSum { parts } => {
                let built = parts.iter().map(|p| p.build(ring)).collect::<Result<Vec<_>>>()?;
                Ok(FiniteModule::direct_sum(&built)?.module)
            }
            ModuleSpec::Quot { base, gens } => {
                let b = base.build(ring)?;
                let k = span_checked(&b, gens)?;
                Ok(b.quotient(&k)?.module)
            }
            ModuleSpec::Sub { base, gens } => {
                let b = base.build(ring)?;
                Ok(span_checked(&b, gens)?.as_module()?.0)
            }
        }
    }
}

impl MsetSpec {
    pub fn build(&self, ring: &Arc<FiniteRing>) -> Result<MultiplicativeSet> {
        match self {
            MsetSpec::Closure { gens } => MultiplicativeSet::closure(ring, gens),
            MsetSpec::ComplementPrime { gens } => {
                MultiplicativeSet::complement_of_prime(ring, &Ideal::generated(ring, gens)?)
            }
            MsetSpec::Units => Ok(MultiplicativeSet::units(ring)),
            MsetSpec::Trivial => Ok(MultiplicativeSet::trivial(ring)),
        }
    }
}

pub fn span_checked(m: &Arc<FiniteModule>, gens: &[usize]) -> Result<Submodule> {
    if let Some(&g) = gens.iter().find(|&&g| g >= m.size()) {
        return Err(Error::domain(format!("element {g} not in {}", m.label())));
    }
    m.span(gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SizeProfile {
    pub ring: usize,
    pub module: usize,
    pub module2: usize,
}

/// One test instance: a ring, S, two modules with chosen submodules, and a pick from Hom(M, M2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub ring: RingSpec,
    pub mset: MsetSpec,
    pub module: ModuleSpec,
    pub k_gens: Vec<usize>,
    pub h_gens: Vec<usize>,
    pub module2: ModuleSpec,
    pub k2_gens: Vec<usize>,
    pub hom_pick: u64,
    pub seed: u64,
    pub size_profile: SizeProfile,
}

/// The materialized structures of an [`Instance`].
#[derive(Debug, Clone)]
pub struct Built {
    pub ring: Arc<FiniteRing>,
    pub s: MultiplicativeSet,
    pub m: Arc<FiniteModule>,
    pub k: Submodule,
    pub h: Submodule,
    pub m2: Arc<FiniteModule>,
    pub k2: Submodule,
    /// Hom(M, M2) entry number `hom_pick` modulo the count; `None` if Hom exceeds caps.
    pub f: Option<Homomorphism>,
}

impl Instance {
    /// ℤ/6 with S = {1,4}, M = ℤ/6, K = 2ℤ/6, H = 3ℤ/6.
    pub fn pinned() -> Instance {
        Instance {
            ring: RingSpec::zmod(6),
            mset: MsetSpec::Closure { gens: vec![4] },
            module: ModuleSpec::Regular,
            k_gens: vec![2],
            h_gens: vec![3],
            module2: ModuleSpec::Regular,
            k2_gens: vec![2],
            hom_pick: 4,
            seed: 0,
            size_profile: SizeProfile {
                ring: 6,
                module: 6,
                module2: 6,
            },
        }
    }

    pub fn is_pinned(&self) -> bool {
        let p = Instance::pinned();
        self.ring == p.ring && self.mset == p.mset && self.module == p.module && self.k_gens == p.k_gens
    }

    pub fn build(&self) -> Result<Built> {
        let ring = self.ring.build()?;
        let s = self.mset.build(&ring)?;
        let m = self.module.build(&ring)?;
        let k = span_checked(&m, &self.k_gens)?;
        let h = span_checked(&m, &self.h_gens)?;
        let m2 = self.module2.build(&ring)?;
        let k2 = span_checked(&m2, &self.k2_gens)?;
        let f = pick_hom(&m, &m2, self.hom_pick)?;
        Ok(Built {
            ring,
            s,
            m,
            k,
            h,
            m2,
            k2,
            f,
        })
    }

    /// Fills `size_profile` from the built structures.
    pub fn with_profile(mut self) -> Result<Instance> {
        let b = self.build()?;
        self.size_profile = SizeProfile {
            ring: b.ring.size(),
            module: b.m.size(),
            module2: b.m2.size(),
        };
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances always serialize")
    }

    pub fn from_json(s: &str) -> Result<Instance> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("bad instance: {e}")))
    }
}

impl Built {
    /// Short human-readable description.
    pub fn label(&self) -> String {
        format!(
            "{} S={} M={} K={} H={} M2={} K2={}",
            self.ring.label(),
            self.s.display(),
            self.m.label(),
            self.k.display(),
            self.h.display(),
            self.m2.label(),
            self.k2.display()
        )
    }
}

fn pick_hom(m: &Arc<FiniteModule>, n: &Arc<FiniteModule>, pick: u64) -> Result<Option<Homomorphism>> {
    let mut all = Vec::new();
    match hom_for_each(m, n, (Caps::global().max_homs).min(1 << 12), |h| {
        all.push(h);
        true
    }) {
        Ok(_) => {}
        Err(e) if e.is_resource() => return Ok(None),
        Err(e) => return Err(e),
    }
    let idx = (pick % all.len() as u64) as usize;
    Ok(Some(all.swap_remove(idx)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_instance_builds() {
        let b = Instance::pinned().build().unwrap();
        assert_eq!(b.k.to_vec(), vec![0, 2, 4]);
        assert_eq!(b.h.to_vec(), vec![0, 3]);
        assert_eq!(b.s.members().to_vec(), vec![1, 4]);
        assert!(b.f.is_some());
    }

    #[test]
    fn json_round_trip() {
        let inst = Instance {
            ring: RingSpec::TrivExt {
                base: Box::new(RingSpec::zmod(2)),
                module: Box::new(ModuleSpec::Regular),
            },
            mset: MsetSpec::Trivial,
            module: ModuleSpec::Quot {
                base: Box::new(ModuleSpec::DirectSum {
                    parts: vec![ModuleSpec::Regular, ModuleSpec::Regular],
                }),
                gens: vec![1],
            },
            k_gens: vec![],
            h_gens: vec![1],
            module2: ModuleSpec::Zero,
            k2_gens: vec![],
            hom_pick: 0,
            seed: 9,
            size_profile: SizeProfile {
                ring: 0,
                module: 0,
                module2: 0,
            },
        }
        .with_profile()
        .unwrap();
        assert_eq!(inst.size_profile.ring, 4);
        assert_eq!(inst.size_profile.module, 8);
        let back = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
        assert!(back.build().unwrap().f.unwrap().is_zero());
    }

    #[test]
    fn bad_references_are_rejected() {
        let mut inst = Instance::pinned();
        inst.k_gens = vec![17];
        assert!(inst.build().is_err());
        let mut inst = Instance::pinned();
        inst.mset = MsetSpec::ComplementPrime { gens: vec![0] };
        assert!(matches!(inst.build(), Err(Error::NotPrime)));
    }
}
