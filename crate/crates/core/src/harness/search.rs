//! Counterexample search with family-preserving shrinking.
//!
//! Two essentiality claims are searched systematically (every catalogued ring,
//! every multiplicative set, small modules, every submodule); law claims
//! `paper-law-<id>` / `law-<id>` run the law over a seeded corpus.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::essential::{is_essential, is_u_s_essential_fast};
use crate::module::{FiniteModule, Submodule};
use crate::mset::MultiplicativeSet;
use crate::ring::{spectrum, FiniteRing};
use crate::spec::{Instance, ModuleSpec, MsetSpec, RingSpec, SizeProfile};

use super::corpus::{generate_corpus, ring_catalogue, Bounds};
use super::laws::{find_law, run_laws};

/// Stored witnesses per search; `examined` keeps counting past this.
const WITNESS_LIMIT: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// u-S-essential but not essential.
    UsNotEssential,
    /// essential but not u-S-essential.
    EssentialNotUs,
    Law(&'static str),
}

#[derive(Debug, Clone)]
pub struct Claim {
    pub id: String,
    kind: Kind,
}

impl Claim {
    pub fn parse(id: &str) -> Result<Claim> {
        let kind = match id {
            "u-S-essential-not-essential" => Kind::UsNotEssential,
            "essential-not-us-essential" => Kind::EssentialNotUs,
            _ => {
                let law = id
                    .strip_prefix("paper-law-")
                    .or_else(|| id.strip_prefix("law-"))
                    .and_then(find_law)
                    .ok_or_else(|| Error::Config(format!("unknown claim `{id}`")))?;
                Kind::Law(law.id)
            }
        };
        Ok(Claim { id: id.to_string(), kind })
    }

    /// Does `inst` violate the claim's negation, i.e. is it a witness?
    pub fn witnessed_by(&self, inst: &Instance) -> Result<Option<Found>> {
        match self.kind {
            Kind::Law(law) => {
                let r = run_laws(std::slice::from_ref(inst), Some(law))?.remove(0);
                Ok(r.verdict.is_failure().then(|| Found {
                    instance: inst.clone(),
                    label: r.label,
                    witness_s: r.witness.witness_s,
                    counterexample_l: r.witness.counterexample_l,
                    note: format!("{:?}: {}", r.verdict, r.witness.note),
                }))
            }
            Kind::UsNotEssential | Kind::EssentialNotUs => {
                let b = inst.build()?;
                essential_witness(self.kind, inst, &b.k, &b.s, || b.label())
            }
        }
    }
}

fn essential_witness(
    kind: Kind,
    inst: &Instance,
    k: &Submodule,
    s: &MultiplicativeSet,
    label: impl FnOnce() -> String,
) -> Result<Option<Found>> {
    let us = is_u_s_essential_fast(k, s)?;
    let plain = is_essential(k)?;
    let hit = match kind {
        Kind::UsNotEssential => us.verdict && !plain.verdict,
        _ => plain.verdict && !us.verdict,
    };
    if !hit {
        return Ok(None);
    }
    let m = k.parent();
    let names = |l: &Submodule| l.to_vec().into_iter().map(|x| m.name(x).to_string()).collect();
    let ring = m.ring();
    let (witness_s, counterexample_l) = if us.verdict {
        (us.witness_s2, plain.counterexample.as_ref().map(names))
    } else {
        (us.witness_s1, us.counterexample.as_ref().map(names))
    };
    Ok(Some(Found {
        instance: inst.clone(),
        label: label(),
        witness_s: witness_s.map(|x| vec![ring.name(x).to_string()]),
        counterexample_l,
        note: String::new(),
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct Found {
    pub instance: Instance,
    pub label: String,
    pub witness_s: Option<Vec<String>>,
    #[serde(rename = "counterexample_L")]
    pub counterexample_l: Option<Vec<String>>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub claim: String,
    pub seed: u64,
    pub max_ring: usize,
    pub max_module: usize,
    /// Instances (or submodules, for the essentiality claims) examined.
    pub examined: usize,
    /// True when the whole search space within bounds was covered.
    pub complete: bool,
    pub witnesses: Vec<Found>,
    pub minimized: Option<Found>,
}

/// Greedy generating set of a submodule, ascending.
pub fn generators(k: &Submodule) -> Result<Vec<usize>> {
    let m = k.parent();
    let mut gens = Vec::new();
    let mut span = m.zero_sub();
    for x in k.to_vec() {
        if !span.contains(x) {
            gens.push(x);
            span = m.span(&gens)?;
        }
    }
    Ok(gens)
}

fn cyclic_spec(r: usize) -> ModuleSpec {
    if r == 0 {
        ModuleSpec::Regular
    } else {
        ModuleSpec::Quot {
            base: Box::new(ModuleSpec::Regular),
            gens: vec![r],
        }
    }
}

/// Every distinct multiplicative set as (spec, set), deduplicated by members.
fn all_msets(ring: &Arc<FiniteRing>) -> Vec<(MsetSpec, MultiplicativeSet)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |spec: MsetSpec| {
        if let Ok(s) = spec.build(ring) {
            if seen.insert(s.members().to_vec()) {
                out.push((spec, s));
            }
        }
    };
    push(MsetSpec::Trivial);
    let elems: Vec<usize> = ring.elements().collect();
    for &a in &elems {
        push(MsetSpec::Closure { gens: vec![a] });
    }
    for (i, &a) in elems.iter().enumerate() {
        for &b in &elems[i + 1..] {
            push(MsetSpec::Closure { gens: vec![a, b] });
        }
    }
    for p in spectrum(ring).primes {
        push(MsetSpec::ComplementPrime {
            gens: generators(&FiniteModule::regular(ring).span(&p.members().to_vec()).expect("ideal span")).unwrap_or_default(),
        });
    }
    push(MsetSpec::Units);
    out
}

/// Regular module, cyclic quotients R/(r) and sums of two of them, up to `max_module`.
fn small_modules(ring: &Arc<FiniteRing>, max_module: usize) -> Result<Vec<(ModuleSpec, Arc<FiniteModule>)>> {
    let reg = FiniteModule::regular(ring);
    let mut seen = HashSet::new();
    let mut cyclics = Vec::new();
    for r in ring.elements() {
        let ideal = reg.cyclic(r)?;
        if ideal.is_whole() || !seen.insert(ideal.to_vec()) {
            continue;
        }
        cyclics.push(cyclic_spec(r));
    }
    let mut out = Vec::new();
    for spec in &cyclics {
        let m = spec.build(ring)?;
        if m.size() <= max_module {
            out.push((spec.clone(), m));
        }
    }
    for i in 0..cyclics.len() {
        for j in i..cyclics.len() {
            let size = out.iter().find(|(s, _)| *s == cyclics[i]).map(|(_, m)| m.size()).unwrap_or(usize::MAX);
            let size2 = out.iter().find(|(s, _)| *s == cyclics[j]).map(|(_, m)| m.size()).unwrap_or(usize::MAX);
            if size.saturating_mul(size2) > max_module {
                continue;
            }
            let spec = ModuleSpec::DirectSum {
                parts: vec![cyclics[i].clone(), cyclics[j].clone()],
            };
            let m = spec.build(ring)?;
            out.push((spec, m));
        }
    }
    Ok(out)
}

fn bare_instance(ring: RingSpec, mset: MsetSpec, module: ModuleSpec, k_gens: Vec<usize>, profile: SizeProfile) -> Instance {
    Instance {
        ring,
        mset,
        module,
        k_gens,
        h_gens: Vec::new(),
        module2: ModuleSpec::Zero,
        k2_gens: Vec::new(),
        hom_pick: 0,
        seed: 0,
        size_profile: profile,
    }
}

fn systematic(claim: &Claim, bounds: &Bounds, report: &mut SearchReport) -> Result<()> {
    let mut rings = ring_catalogue(bounds.max_ring);
    rings.sort_by_key(|(_, n)| *n);
    for (ring_spec, _) in rings {
        let ring = match ring_spec.build() {
            Ok(r) => r,
            Err(e) if e.is_resource() => {
                report.complete = false;
                continue;
            }
            Err(e) => return Err(e),
        };
        let msets = all_msets(&ring);
        let modules = small_modules(&ring, bounds.max_module)?;
        for (mspec, m) in &modules {
            let lattice = match m.all_submodules() {
                Ok(l) => l,
                Err(e) if e.is_resource() => {
                    report.complete = false;
                    continue;
                }
                Err(e) => return Err(e),
            };
            for k in &lattice {
                let k_gens = generators(k)?;
                for (sspec, s) in &msets {
                    report.examined += 1;
                    let profile = SizeProfile {
                        ring: ring.size(),
                        module: m.size(),
                        module2: 1,
                    };
                    let inst = bare_instance(ring_spec.clone(), sspec.clone(), mspec.clone(), k_gens.clone(), profile);
                    let label = || format!("{} S={} M={} K={}", ring.label(), s.display(), m.label(), k.display());
                    if let Some(found) = essential_witness(claim.kind, &inst, k, s, label)? {
                        if report.witnesses.len() < WITNESS_LIMIT {
                            report.witnesses.push(found);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn sampled(claim: &Claim, bounds: &Bounds, seed: u64, report: &mut SearchReport) -> Result<()> {
    let Kind::Law(law) = claim.kind else {
        unreachable!("only law claims are sampled")
    };
    let corpus = generate_corpus(seed, bounds)?;
    report.examined = corpus.len();
    report.complete = false;
    for r in run_laws(&corpus, Some(law))? {
        if r.verdict.is_failure() && report.witnesses.len() < WITNESS_LIMIT {
            report.witnesses.push(Found {
                instance: r.instance,
                label: r.label,
                witness_s: r.witness.witness_s,
                counterexample_l: r.witness.counterexample_l,
                note: format!("{:?}: {}", r.verdict, r.witness.note),
            });
        }
    }
    Ok(())
}

/// Runs the claim's search within `bounds`; law claims draw `bounds.count`
/// instances from `seed`, the essentiality claims ignore both.
pub fn search_counterexample(claim_id: &str, bounds: &Bounds, seed: u64) -> Result<SearchReport> {
    let claim = Claim::parse(claim_id)?;
    bounds.check(Caps::global())?;
    let mut report = SearchReport {
        claim: claim.id.clone(),
        seed,
        max_ring: bounds.max_ring,
        max_module: bounds.max_module,
        examined: 0,
        complete: true,
        witnesses: Vec::new(),
        minimized: None,
    };
    match claim.kind {
        Kind::Law(_) => sampled(&claim, bounds, seed, &mut report)?,
        _ => systematic(&claim, bounds, &mut report)?,
    }
    if let Some(first) = report.witnesses.first() {
        let small = shrink(&claim, first.instance.clone())?;
        report.minimized = claim.witnessed_by(&small)?;
    }
    Ok(report)
}

/// Lexicographic size: ring, module, S, second module, generator count.
fn measure(inst: &Instance) -> Option<(usize, usize, usize, usize, usize)> {
    let b = inst.build().ok()?;
    Some((
        b.ring.size(),
        b.m.size(),
        b.s.len(),
        b.m2.size(),
        inst.k_gens.len() + inst.h_gens.len() + inst.k2_gens.len(),
    ))
}

fn without(v: &[usize], i: usize) -> Vec<usize> {
    v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()
}

fn reduce_mset(spec: &MsetSpec, d: usize) -> MsetSpec {
    let map = |g: &[usize]| g.iter().map(|x| x % d).collect();
    match spec {
        MsetSpec::Closure { gens } => MsetSpec::Closure { gens: map(gens) },
        MsetSpec::ComplementPrime { gens } => MsetSpec::ComplementPrime { gens: map(gens) },
        other => other.clone(),
    }
}

/// Smaller neighbours of an instance; ℤ/n only moves to ℤ/d with d | n.
fn neighbours(inst: &Instance) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut push = |f: &dyn Fn(&mut Instance)| {
        let mut c = inst.clone();
        f(&mut c);
        if c != *inst {
            out.push(c);
        }
    };
    if let RingSpec::Zmod { n } = inst.ring {
        let regular_only = matches!(inst.module, ModuleSpec::Regular) && matches!(inst.module2, ModuleSpec::Regular | ModuleSpec::Zero);
        if regular_only {
            for d in (2..n).filter(|d| n % d == 0) {
                push(&|c| {
                    c.ring = RingSpec::zmod(d);
                    c.mset = reduce_mset(&inst.mset, d);
                    for g in [&mut c.k_gens, &mut c.h_gens, &mut c.k2_gens] {
                        g.iter_mut().for_each(|x| *x %= d);
                    }
                });
            }
        }
    }
    push(&|c| c.mset = MsetSpec::Trivial);
    if let MsetSpec::Closure { gens } = &inst.mset {
        for i in 0..gens.len() {
            push(&|c| c.mset = MsetSpec::Closure { gens: without(gens, i) });
        }
    }
    push(&|c| c.module2 = ModuleSpec::Zero);
    push(&|c| c.k2_gens.clear());
    push(&|c| c.hom_pick = 0);
    for i in 0..inst.k_gens.len() {
        push(&|c| c.k_gens = without(&inst.k_gens, i));
    }
    for i in 0..inst.h_gens.len() {
        push(&|c| c.h_gens = without(&inst.h_gens, i));
    }
    for i in 0..inst.k2_gens.len() {
        push(&|c| c.k2_gens = without(&inst.k2_gens, i));
    }
    if let ModuleSpec::DirectSum { parts } = &inst.module {
        for p in parts {
            push(&|c| {
                c.module = p.clone();
                c.k_gens.clear();
                c.h_gens.clear();
            });
        }
    }
    out
}

/// Greedy shrinking: take the first strictly smaller neighbour that is still a witness.
pub fn shrink(claim: &Claim, mut inst: Instance) -> Result<Instance> {
    let Some(mut size) = measure(&inst) else {
        return Ok(inst);
    };
    loop {
        let mut improved = false;
        for cand in neighbours(&inst) {
            let Some(cs) = measure(&cand) else { continue };
            if cs >= size {
                continue;
            }
            match claim.witnessed_by(&cand) {
                Ok(Some(_)) => {
                    inst = cand.with_profile()?;
                    size = cs;
                    improved = true;
                    break;
                }
                Ok(None) => {}
                Err(e) if e.is_resource() || matches!(e, Error::Domain(_) | Error::InvalidMultiplicativeSet(_) | Error::NotPrime) => {}
                Err(e) => return Err(e),
            }
        }
        if !improved {
            return Ok(inst);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(max_ring: usize) -> Bounds {
        Bounds {
            max_ring,
            max_module: 16,
            count: 30,
        }
    }

    #[test]
    fn exp1_family_is_found() {
        let r = search_counterexample("u-S-essential-not-essential", &small(6), 0).unwrap();
        assert!(r.complete);
        assert!(r.witnesses.iter().any(|w| w.instance.ring == RingSpec::zmod(6)));
        let min = r.minimized.unwrap();
        let b = min.instance.build().unwrap();
        assert!(b.ring.size() <= 6 && b.m.size() <= 6);
    }

    #[test]
    fn converse_is_empty() {
        let r = search_counterexample("essential-not-us-essential", &small(8), 0).unwrap();
        assert!(r.witnesses.is_empty());
        assert!(r.examined > 0);
    }

    #[test]
    fn law_claims_resolve_both_prefixes() {
        for id in ["paper-law-thm-prop3", "law-thm-prop3"] {
            let r = search_counterexample(id, &small(12), 3).unwrap();
            assert!(r.witnesses.is_empty(), "{id}");
            assert!(r.minimized.is_none());
        }
        assert!(Claim::parse("paper-law-nope").is_err());
    }

    #[test]
    fn tiny_bounds_find_nothing() {
        let b = Bounds {
            max_ring: 1,
            max_module: 1,
            count: 5,
        };
        let r = search_counterexample("u-S-essential-not-essential", &b, 0).unwrap();
        assert!(r.witnesses.is_empty() && r.examined == 0);
    }

    #[test]
    fn generators_span_the_submodule() {
        let r = FiniteRing::zmod(12).unwrap();
        let m = FiniteModule::regular(&r);
        for k in m.all_submodules().unwrap() {
            let g = generators(&k).unwrap();
            assert!(g.len() <= 1);
            assert_eq!(m.span(&g).unwrap(), k);
        }
    }
}
