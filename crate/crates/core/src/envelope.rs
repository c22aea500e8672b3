//! u-S-injective u-S-(pre)envelopes: verification by the essential-image route
//! and by endomorphism rigidity, construction, uniqueness and summand searches.

use std::sync::Arc;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::essential::{is_u_s_essential_fast, is_u_s_essential_mono, Biconditional, EssentialVerdict};
use crate::hom::{hom_for_each, Homomorphism};
use crate::injective::{certify_u_s_injective, certificate_for, injective_envelope_zmod, Certificate, InjVerdict};
use crate::module::{same_module, DirectSum, FiniteModule, Submodule};
use crate::mset::{u_s_noetherian, MultiplicativeSet};
use crate::ring::all_ideals;
use crate::torsion::{find_u_s_isomorphism, is_u_s_iso, is_u_s_mono, s_torsion_submodule, IsoSearch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preenvelope {
    Yes,
    /// Target only passed the bounded u-S-injectivity test.
    Bounded,
    No,
}

pub fn check_u_s_preenvelope(f: &Homomorphism, s: &MultiplicativeSet) -> Result<Preenvelope> {
    if !is_u_s_mono(f, s)?.holds {
        return Ok(Preenvelope::No);
    }
    Ok(match certify_u_s_injective(f.target(), s)?.verdict {
        InjVerdict::Certified | InjVerdict::Injective => Preenvelope::Yes,
        InjVerdict::BoundedPass => Preenvelope::Bounded,
        InjVerdict::NotInjective | InjVerdict::Refuted => Preenvelope::No,
    })
}

#[derive(Debug, Clone)]
pub struct EnvelopeCandidate {
    pub map: Homomorphism,
    pub preenvelope: Preenvelope,
    pub certificate: Option<Certificate>,
    /// Im(f) in E.
    pub essential: EssentialVerdict,
    /// Every α ∈ End(E) with s·f = α∘f is a u-S-iso; `None` when End(E) exceeds the cap.
    pub rigid: Option<bool>,
}

impl EnvelopeCandidate {
    /// Essential-image verdict on a (possibly bounded) preenvelope.
    pub fn is_envelope(&self) -> bool {
        self.preenvelope != Preenvelope::No && self.essential.verdict
    }

    /// The two routes agree, or the rigidity route was skipped.
    pub fn routes_agree(&self) -> bool {
        self.preenvelope == Preenvelope::No || self.rigid.is_none_or(|r| r == self.essential.verdict)
    }
}

/// Rigidity: s·f = α∘f for some s forces α to be a u-S-iso.
pub fn is_rigid(f: &Homomorphism, s: &MultiplicativeSet) -> Result<bool> {
    let e = f.target();
    let scaled: Vec<Vec<usize>> = s.iter().map(|t| f.scale(t).map().to_vec()).collect();
    let mut rigid = true;
    let mut err = None;
    hom_for_each(e, e, Caps::global().max_homs, |alpha| {
        let af: Vec<usize> = f.map().iter().map(|&y| alpha.apply(y)).collect();
        if scaled.contains(&af) {
            match is_u_s_iso(&alpha, s) {
                Ok(v) if !v.holds() => rigid = false,
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
        }
        rigid && err.is_none()
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(rigid),
    }
}

/// Envelope verification; the rigidity route always runs when End(E) is within caps.
pub fn check_u_s_envelope(f: &Homomorphism, s: &MultiplicativeSet) -> Result<EnvelopeCandidate> {
    let preenvelope = check_u_s_preenvelope(f, s)?;
    let certificate = if preenvelope == Preenvelope::Bounded {
        Some(Certificate::BoundedPass)
    } else {
        certificate_for(f.target(), s)?
    };
    let essential = is_u_s_essential_fast(&f.image(), s)?;
    let rigid = match is_rigid(f, s) {
        Ok(r) => Some(r),
        Err(e) if e.is_resource() => None,
        Err(e) => return Err(e),
    };
    Ok(EnvelopeCandidate {
        map: f.clone(),
        preenvelope,
        certificate,
        essential,
        rigid,
    })
}

fn require_envelope(f: &Homomorphism, s: &MultiplicativeSet) -> Result<()> {
    if check_u_s_envelope(f, s)?.is_envelope() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated("map is not a u-S-envelope".into()))
    }
}

/// Best-effort construction: identity on a certified module, the ℤ/n injective
/// envelope, then M → M/tor_S(M) → E(M/tor_S(M)). `None` means unknown.
pub fn construct_u_s_envelope(m: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<Option<EnvelopeCandidate>> {
    if certificate_for(m, s)?.is_some() {
        return Ok(Some(check_u_s_envelope(&Homomorphism::identity(m), s)?));
    }
    if m.ring().zmod_modulus().is_none() {
        return Ok(None);
    }
    let mut candidates = Vec::new();
    let (_, i) = injective_envelope_zmod(m)?;
    candidates.push(i);
    let tor = s_torsion_submodule(m, s)?;
    if !tor.is_zero() {
        let q = m.quotient(&tor)?;
        let (_, j) = injective_envelope_zmod(&q.module)?;
        candidates.push(j.compose(&q.eta)?);
    }
    for f in candidates {
        let c = check_u_s_envelope(&f, s)?;
        if c.is_envelope() && c.certificate != Some(Certificate::BoundedPass) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Two envelopes of the same module have u-S-isomorphic targets.
pub fn envelope_uniqueness(
    f: &Homomorphism,
    g: &Homomorphism,
    s: &MultiplicativeSet,
) -> Result<IsoSearch> {
    if !same_module(f.source(), g.source()) {
        return Err(Error::domain("envelopes of different modules"));
    }
    require_envelope(f, s)?;
    require_envelope(g, s)?;
    find_u_s_isomorphism(f.target(), g.target(), s, Caps::global().max_homs)
}

#[derive(Debug, Clone)]
pub struct SummandSearch {
    /// B ≤ A' and a u-S-iso A' → A ⊕ B.
    pub found: Option<(Submodule, Homomorphism)>,
    /// Every candidate B was decided (no cap was hit).
    pub complete: bool,
}

/// Searches B among the submodules of `ambient` with `ambient` u-S-isomorphic to A ⊕ B.
pub fn summand_search(a: &Arc<FiniteModule>, ambient: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<SummandSearch> {
    let mut complete = true;
    let lattice = ambient.all_submodules()?;
    for b in lattice {
        let (bmod, _) = b.as_module()?;
        let sum = if b.is_zero() {
            a.clone()
        } else {
            match FiniteModule::direct_sum(&[a.clone(), bmod]) {
                Ok(ds) => ds.module,
                Err(e) if e.is_resource() => {
                    complete = false;
                    continue;
                }
                Err(e) => return Err(e),
            }
        };
        match find_u_s_isomorphism(ambient, &sum, s, Caps::global().max_homs) {
            Ok(IsoSearch::Found(h)) => {
                return Ok(SummandSearch {
                    found: Some((b, h)),
                    complete,
                })
            }
            Ok(IsoSearch::NoneFound) => {}
            Err(e) if e.is_resource() => complete = false,
            Err(e) => return Err(e),
        }
    }
    Ok(SummandSearch { found: None, complete })
}

/// For an envelope f: M → A and a preenvelope g: M → A', A' ≃ A ⊕ B for some B.
pub fn preenvelope_summand(f: &Homomorphism, g: &Homomorphism, s: &MultiplicativeSet) -> Result<SummandSearch> {
    if !same_module(f.source(), g.source()) {
        return Err(Error::domain("maps from different modules"));
    }
    require_envelope(f, s)?;
    if check_u_s_preenvelope(g, s)? == Preenvelope::No {
        return Err(Error::PreconditionViolated("second map is not a u-S-preenvelope".into()));
    }
    summand_search(f.target(), g.target(), s)
}

/// Modules of size ≤ `limit` built from the ring (R, R/I, pairwise sums) plus the given extras.
pub fn module_pool(
    ring: &Arc<crate::ring::FiniteRing>,
    extras: &[Arc<FiniteModule>],
    limit: usize,
) -> Result<Vec<Arc<FiniteModule>>> {
    let reg = FiniteModule::regular(ring);
    let mut base = Vec::new();
    for ideal in all_ideals(ring) {
        if !ideal.is_proper() {
            continue;
        }
        let q = if ideal.len() == 1 {
            reg.clone()
        } else {
            reg.quotient(&reg.submodule(ideal.members().clone())?)?.module
        };
        if q.size() <= limit {
            base.push(q);
        }
    }
    let mut pool = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            if base[i].size() * base[j].size() <= limit {
                pool.push(FiniteModule::direct_sum(&[base[i].clone(), base[j].clone()])?.module);
            }
        }
    }
    for e in extras {
        if !pool.iter().any(|p| same_module(p, e)) {
            pool.push(e.clone());
        }
    }
    Ok(pool)
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeWay {
    /// i is a u-S-injective u-S-envelope.
    pub envelope: bool,
    /// E u-S-injective and every u-S-mono M → Q (Q certified) factors through i up to s via a u-S-mono.
    pub universal_into_injectives: bool,
    /// i u-S-essential and every u-S-essential u-S-mono M → N factors into E up to s via a u-S-mono.
    pub universal_from_extensions: bool,
    pub pool_q: usize,
    pub pool_n: usize,
    /// A known envelope of M lies in the pool, so the converse directions are exercised.
    pub complete: bool,
}

impl ThreeWay {
    pub fn holds(&self) -> bool {
        !self.complete
            || (self.envelope == self.universal_into_injectives && self.envelope == self.universal_from_extensions)
    }
}

/// Some u-S-mono g: src → dst and s with g∘a = s·b.
fn factors(a: &Homomorphism, b: &Homomorphism, s: &MultiplicativeSet) -> Result<bool> {
    let scaled: Vec<Vec<usize>> = s.iter().map(|t| b.scale(t).map().to_vec()).collect();
    let mut ok = false;
    let mut err = None;
    hom_for_each(a.target(), b.target(), Caps::global().max_homs, |g| {
        let ga: Vec<usize> = a.map().iter().map(|&y| g.apply(y)).collect();
        if scaled.contains(&ga) {
            match is_u_s_mono(&g, s) {
                Ok(v) => ok = v.holds,
                Err(e) => err = Some(e),
            }
        }
        !ok && err.is_none()
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(ok),
    }
}

/// The three equivalent descriptions of an envelope, over a bounded module pool.
pub fn envelope_three_way(i: &Homomorphism, s: &MultiplicativeSet, pool_limit: usize) -> Result<ThreeWay> {
    if !is_u_s_mono(i, s)?.holds {
        return Err(Error::PreconditionViolated("map is not a u-S-monomorphism".into()));
    }
    let m = i.source();
    let e = i.target();
    let known = construct_u_s_envelope(m, s)?;
    let mut extras = vec![m.clone(), e.clone()];
    if let Some(k) = &known {
        extras.push(k.map.target().clone());
    }
    let pool = module_pool(m.ring(), &extras, pool_limit)?;
    let cap = Caps::global().max_homs;

    let envelope = check_u_s_envelope(i, s)?.is_envelope();
    let e_injective = certificate_for(e, s)?.is_some();

    let mut pool_q = 0;
    let mut into_injectives = e_injective;
    let mut pool_n = 0;
    let i_essential = is_u_s_essential_mono(i, s)?;
    let mut from_extensions = i_essential;
    for q in &pool {
        let certified = certificate_for(q, s)?.is_some();
        pool_q += certified as usize;
        pool_n += 1;
        let mut err = None;
        hom_for_each(m, q, cap, |f| {
            let step = (|| -> Result<()> {
                if !is_u_s_mono(&f, s)?.holds {
                    return Ok(());
                }
                if certified && into_injectives && !factors(i, &f, s)? {
                    into_injectives = false;
                }
                if from_extensions && is_u_s_essential_mono(&f, s)? && !factors(&f, i, s)? {
                    from_extensions = false;
                }
                Ok(())
            })();
            if let Err(e) = step {
                err = Some(e);
            }
            err.is_none() && (into_injectives || from_extensions)
        })?;
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(ThreeWay {
        envelope,
        universal_into_injectives: into_injectives,
        universal_from_extensions: from_extensions,
        pool_q,
        pool_n,
        complete: known.is_some(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeProperties {
    /// Tier of M's own u-S-injectivity.
    pub injectivity: InjVerdict,
    /// M is u-S-isomorphic to E_{u-S}(M).
    pub iso_to_envelope: bool,
    /// u-S-essential submodules N checked, and how many had envelopes u-S-iso to M's.
    pub essential_subs: usize,
    pub essential_subs_matching: usize,
}

impl EnvelopeProperties {
    pub fn holds(&self) -> bool {
        let first = match self.injectivity {
            InjVerdict::Certified | InjVerdict::Injective => self.iso_to_envelope,
            InjVerdict::Refuted | InjVerdict::NotInjective => !self.iso_to_envelope,
            InjVerdict::BoundedPass => true,
        };
        first && self.essential_subs == self.essential_subs_matching
    }
}

/// u-S-isomorphism in either direction.
pub fn u_s_isomorphic(a: &Arc<FiniteModule>, b: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<bool> {
    let cap = Caps::global().max_homs;
    if find_u_s_isomorphism(a, b, s, cap)?.found().is_some() {
        return Ok(true);
    }
    Ok(find_u_s_isomorphism(b, a, s, cap)?.found().is_some())
}

/// (1) M u-S-injective ⇔ M ≃ E_{u-S}(M); (2) N ⊴ M ⇒ E_{u-S}(N) ≃ E_{u-S}(M).
pub fn envelope_properties(m: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<Option<EnvelopeProperties>> {
    let Some(env) = construct_u_s_envelope(m, s)? else {
        return Ok(None);
    };
    let e = env.map.target().clone();
    let injectivity = certify_u_s_injective(m, s)?.verdict;
    let iso_to_envelope = u_s_isomorphic(m, &e, s)?;
    let mut essential_subs = 0;
    let mut matching = 0;
    for n in m.all_submodules()? {
        if !is_u_s_essential_fast(&n, s)?.verdict {
            continue;
        }
        let (nmod, _) = n.as_module()?;
        let Some(en) = construct_u_s_envelope(&nmod, s)? else {
            continue;
        };
        essential_subs += 1;
        matching += u_s_isomorphic(en.map.target(), &e, s)? as usize;
    }
    Ok(Some(EnvelopeProperties {
        injectivity,
        iso_to_envelope,
        essential_subs,
        essential_subs_matching: matching,
    }))
}

/// M ≤ Q with Q certified u-S-injective ⇒ Q ≃ E_{u-S}(M) ⊕ E'.
pub fn injective_summand(m: &Submodule, s: &MultiplicativeSet) -> Result<Option<SummandSearch>> {
    let q = m.parent();
    if certificate_for(q, s)?.is_none() {
        return Err(Error::PreconditionViolated("ambient module is not certified u-S-injective".into()));
    }
    let (mmod, _) = m.as_module()?;
    let Some(env) = construct_u_s_envelope(&mmod, s)? else {
        return Ok(None);
    };
    summand_search(env.map.target(), q, s).map(Some)
}

/// ⊕f_i : ⊕M_i → ⊕N_i, with both direct sums.
pub fn direct_sum_map(fs: &[Homomorphism]) -> Result<(DirectSum, DirectSum, Homomorphism)> {
    let src: Vec<Arc<FiniteModule>> = fs.iter().map(|f| f.source().clone()).collect();
    let tgt: Vec<Arc<FiniteModule>> = fs.iter().map(|f| f.target().clone()).collect();
    let ds = FiniteModule::direct_sum(&src)?;
    let dt = FiniteModule::direct_sum(&tgt)?;
    let map = ds
        .module
        .elements()
        .map(|x| {
            fs.iter().enumerate().fold(dt.module.zero(), |acc, (i, f)| {
                let y = dt.injections[i].apply(f.apply(ds.projections[i].apply(x)));
                dt.module.add(acc, y)
            })
        })
        .collect();
    let h = Homomorphism::new(ds.module.clone(), dt.module.clone(), map)?;
    Ok((ds, dt, h))
}

#[derive(Debug, Clone, Serialize)]
pub struct SumEnvelope {
    /// ⊕ of the component envelopes is an envelope of ⊕M_i (essential-image route).
    pub sum_is_envelope: bool,
    /// ⊕E_i is u-S-isomorphic to an independently constructed envelope of ⊕M_i;
    /// `None` when no independent envelope was constructible.
    pub iso_to_direct: Option<bool>,
}

impl SumEnvelope {
    pub fn holds(&self) -> bool {
        self.sum_is_envelope && self.iso_to_direct != Some(false)
    }
}

fn sum_envelope_from(envs: Vec<Homomorphism>, s: &MultiplicativeSet) -> Result<SumEnvelope> {
    let (ds, dt, f) = direct_sum_map(&envs)?;
    let sum_is_envelope = check_u_s_envelope(&f, s)?.is_envelope();
    let iso_to_direct = match construct_u_s_envelope(&ds.module, s)? {
        Some(direct) => Some(u_s_isomorphic(&dt.module, direct.map.target(), s)?),
        None => None,
    };
    Ok(SumEnvelope {
        sum_is_envelope,
        iso_to_direct,
    })
}

/// E_{u-S}(⊕M_i) ≃ ⊕E_{u-S}(M_i), using constructed component envelopes.
pub fn envelope_of_direct_sum(ms: &[Arc<FiniteModule>], s: &MultiplicativeSet) -> Result<Option<SumEnvelope>> {
    let mut envs = Vec::new();
    for m in ms {
        match construct_u_s_envelope(m, s)? {
            Some(c) => envs.push(c.map),
            None => return Ok(None),
        }
    }
    sum_envelope_from(envs, s).map(Some)
}

/// Prime summands, regular S: ⊕ of the classical injective envelopes is the u-S-envelope.
pub fn envelope_of_prime_sum(ms: &[Arc<FiniteModule>], s: &MultiplicativeSet) -> Result<SumEnvelope> {
    if !s.is_regular() {
        return Err(Error::PreconditionViolated("multiplicative set is not regular".into()));
    }
    for m in ms {
        if m.is_zero() || !m.is_prime()? {
            return Err(Error::PreconditionViolated("summand is not a prime module".into()));
        }
    }
    if u_s_noetherian(s.ring(), s).is_none() {
        return Err(Error::Internal("finite ring failed the u-S-Noetherian check".into()));
    }
    let mut envs = Vec::new();
    for m in ms {
        envs.push(injective_envelope_zmod(m)?.1);
    }
    sum_envelope_from(envs, s)
}

/// φ∘f = g with φ a u-S-iso: f u-S-essential ⇔ g u-S-essential.
pub fn twisted_essential_transfer(
    f: &Homomorphism,
    g: &Homomorphism,
    phi: &Homomorphism,
    s: &MultiplicativeSet,
) -> Result<Biconditional> {
    if phi.compose(f)? != *g {
        return Err(Error::PreconditionViolated("φ∘f differs from g".into()));
    }
    if !is_u_s_iso(phi, s)?.holds() {
        return Err(Error::PreconditionViolated("φ is not a u-S-isomorphism".into()));
    }
    Ok(Biconditional {
        left: is_u_s_essential_mono(f, s)?,
        right: is_u_s_essential_mono(g, s)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    fn z6() -> (Arc<FiniteModule>, MultiplicativeSet) {
        let r = FiniteRing::zmod(6).unwrap();
        let s = MultiplicativeSet::closure(&r, &[4]).unwrap();
        (FiniteModule::regular(&r), s)
    }

    #[test]
    fn inclusion_of_2z6_is_an_envelope() {
        let (m, s) = z6();
        let (_, inc) = m.span(&[2]).unwrap().as_module().unwrap();
        assert_eq!(check_u_s_preenvelope(&inc, &s).unwrap(), Preenvelope::Yes);
        let c = check_u_s_envelope(&inc, &s).unwrap();
        assert!(c.is_envelope());
        assert_eq!(c.certificate, Some(Certificate::InjectiveBaer));
        assert_eq!(c.rigid, Some(true));
        let (_, inc3) = m.span(&[3]).unwrap().as_module().unwrap();
        let c = check_u_s_envelope(&inc3, &s).unwrap();
        assert_eq!(c.preenvelope, Preenvelope::Yes);
        assert!(!c.is_envelope());
        assert_eq!(c.rigid, Some(false));
        assert_eq!(check_u_s_preenvelope(&Homomorphism::zero(&m, &m), &s).unwrap(), Preenvelope::No);
    }

    #[test]
    fn uniqueness_and_summands() {
        let (m, s) = z6();
        let (k, inc) = m.span(&[2]).unwrap().as_module().unwrap();
        let id = Homomorphism::identity(&k);
        let iso = envelope_uniqueness(&id, &inc, &s).unwrap();
        assert!(is_u_s_iso(iso.found().unwrap(), &s).unwrap().holds());
        let sum = preenvelope_summand(&id, &inc, &s).unwrap();
        // ℤ/6 is already u-S-isomorphic to 2ℤ/6 (x ↦ 4x), so B = 0 comes first
        let (b, h) = sum.found.unwrap();
        assert!(b.is_zero());
        assert!(is_u_s_iso(&h, &s).unwrap().holds());
        let same = preenvelope_summand(&id, &id, &s).unwrap();
        assert!(same.found.unwrap().0.is_zero());
    }

    #[test]
    fn construction() {
        let (m, s) = z6();
        let (k, _) = m.span(&[3]).unwrap().as_module().unwrap();
        let c = construct_u_s_envelope(&k, &s).unwrap().unwrap();
        assert!(c.map.is_identity());
        let r4 = FiniteRing::zmod(4).unwrap();
        let units = MultiplicativeSet::closure(&r4, &[3]).unwrap();
        let z4 = FiniteModule::regular(&r4);
        let (two, _) = z4.span(&[2]).unwrap().as_module().unwrap();
        let c = construct_u_s_envelope(&two, &units).unwrap().unwrap();
        assert_eq!(c.map.target().size(), 4);
    }

    #[test]
    fn three_way() {
        let (m, s) = z6();
        let (_, inc) = m.span(&[2]).unwrap().as_module().unwrap();
        let t = envelope_three_way(&inc, &s, 12).unwrap();
        assert!(t.envelope && t.universal_into_injectives && t.universal_from_extensions);
        let (_, inc3) = m.span(&[3]).unwrap().as_module().unwrap();
        let t = envelope_three_way(&inc3, &s, 12).unwrap();
        assert!(t.complete && t.holds());
        assert!(!t.envelope && !t.universal_into_injectives);
    }

    #[test]
    fn properties() {
        let (m, s) = z6();
        let (k, _) = m.span(&[2]).unwrap().as_module().unwrap();
        let p = envelope_properties(&k, &s).unwrap().unwrap();
        assert!(p.iso_to_envelope && p.holds());
        let p = envelope_properties(&m, &s).unwrap().unwrap();
        assert!(p.holds());
        assert!(p.essential_subs >= 2);
        let q = injective_summand(&m.span(&[2]).unwrap(), &s).unwrap().unwrap();
        assert!(q.found.is_some());
    }

    #[test]
    fn direct_sums() {
        let (m, s) = z6();
        let (k, _) = m.span(&[2]).unwrap().as_module().unwrap();
        let r = envelope_of_direct_sum(&[k.clone(), k.clone()], &s).unwrap().unwrap();
        assert!(r.holds() && r.iso_to_direct == Some(true));
        let one = MultiplicativeSet::trivial(m.ring());
        assert!(envelope_of_prime_sum(&[k.clone(), k.clone()], &one).unwrap().holds());
        assert!(envelope_of_prime_sum(&[m.clone()], &one).is_err());
    }

    #[test]
    fn twisted_transfer() {
        let (m, s) = z6();
        let (k, inc) = m.span(&[2]).unwrap().as_module().unwrap();
        let b = twisted_essential_transfer(&Homomorphism::identity(&k), &inc, &inc, &s).unwrap();
        assert!(b.left && b.right);
        let id = Homomorphism::identity(&m);
        assert!(twisted_essential_transfer(&id, &id, &id, &s).unwrap().holds());
        assert!(twisted_essential_transfer(&id, &inc, &id, &s).is_err());
    }
}
