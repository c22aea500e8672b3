//! Injectivity: the Baer test, injective envelopes over ℤ/n, and the three
//! tiers of u-S-injectivity (certified, bounded-pass, refuted).
//!
//! For a u-S-mono f: A → B, E passes the uniform extension test iff sigma does:
//! if s·h = g∘f then sigma·h = (t·g)∘f with sigma = s·t. So only sigma is tried,
//! and a failing h refutes every member of S at once.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::essential::is_essential;
use crate::hom::{hom_count_bound, hom_for_each, Homomorphism};
use crate::module::{FiniteModule, ModuleOrigin};
use crate::mset::MultiplicativeSet;
use crate::ring::{all_ideals, same_ring, Ideal};
use crate::torsion::is_u_s_mono;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InjVerdict {
    Injective,
    NotInjective,
    #[serde(rename = "u-S-injective-certified")]
    Certified,
    BoundedPass,
    Refuted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    InjectiveBaer,
    #[serde(rename = "u-S-torsion")]
    USTorsion,
    Closure,
    BoundedPass,
}

#[derive(Debug, Clone)]
pub enum InjWitness {
    /// h: I → E with no extension to R.
    Baer { ideal: Ideal, h: Homomorphism },
    /// h: A → E such that no g: B → E has s·h = g∘f, for any s.
    Extension { f: Homomorphism, h: Homomorphism },
}

#[derive(Debug, Clone)]
pub struct InjectivityReport {
    pub verdict: InjVerdict,
    pub certificate: Option<Certificate>,
    pub witness: Option<InjWitness>,
    /// Catalogue entries actually tested (bounded tier only).
    pub catalogue_size: usize,
    /// Catalogue entries dropped for exceeding caps.
    pub skipped: usize,
}

impl InjectivityReport {
    fn certified(c: Certificate) -> Self {
        InjectivityReport {
            verdict: InjVerdict::Certified,
            certificate: Some(c),
            witness: None,
            catalogue_size: 0,
            skipped: 0,
        }
    }

    /// Certified or bounded-pass.
    pub fn passes(&self) -> bool {
        matches!(self.verdict, InjVerdict::Certified | InjVerdict::BoundedPass | InjVerdict::Injective)
    }
}

/// The ideal I as a module, with its inclusion into the regular module.
fn ideal_module(ideal: &Ideal) -> Result<(Arc<FiniteModule>, Homomorphism)> {
    let reg = FiniteModule::regular(ideal.ring());
    reg.submodule(ideal.members().clone())?.as_module()
}

/// Restrictions to I of all maps R → E (r ↦ r·e), as element vectors over I.
fn restrictions(inc: &Homomorphism, e: &Arc<FiniteModule>) -> HashSet<Vec<usize>> {
    e.elements()
        .map(|y| inc.map().iter().map(|&i| e.act(i, y)).collect())
        .collect()
}

/// Baer's criterion: every h: I → E extends to R, for every ideal I.
pub fn is_injective_baer(e: &Arc<FiniteModule>) -> Result<InjectivityReport> {
    let cap = Caps::global().max_homs;
    for ideal in all_ideals(e.ring()) {
        let (imod, inc) = ideal_module(&ideal)?;
        let ext = restrictions(&inc, e);
        let mut bad = None;
        hom_for_each(&imod, e, cap, |h| {
            if ext.contains(h.map()) {
                true
            } else {
                bad = Some(h);
                false
            }
        })?;
        if let Some(h) = bad {
            return Ok(InjectivityReport {
                verdict: InjVerdict::NotInjective,
                certificate: None,
                witness: Some(InjWitness::Baer { ideal, h }),
                catalogue_size: 0,
                skipped: 0,
            });
        }
    }
    Ok(InjectivityReport {
        verdict: InjVerdict::Injective,
        certificate: Some(Certificate::InjectiveBaer),
        witness: None,
        catalogue_size: 0,
        skipped: 0,
    })
}

/// True iff no g: R → E restricts to h on I (scan over g(1) ∈ E).
pub fn replay_baer_witness(ideal: &Ideal, h: &Homomorphism) -> Result<bool> {
    let (_, inc) = ideal_module(ideal)?;
    if inc.source().size() != h.source().size() {
        return Err(Error::domain("h is not defined on the ideal"));
    }
    let e = h.target();
    Ok(!e
        .elements()
        .any(|y| inc.map().iter().enumerate().all(|(x, &i)| h.apply(x) == e.act(i, y))))
}

pub(crate) fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn zmod_of(m: &FiniteModule) -> Result<usize> {
    m.ring()
        .zmod_modulus()
        .ok_or_else(|| Error::UnsupportedRing(format!("{} is not of the form Z/n", m.ring().label())))
}

/// Structure-theorem classification over ℤ/n: for each p^k ∥ n the p-part M_p
/// is injective iff every element of order p is a p^(k-1)-multiple inside M_p,
/// i.e. M_p is free over ℤ/p^k.
pub fn is_injective_zmod(m: &Arc<FiniteModule>) -> Result<bool> {
    let n = zmod_of(m)?;
    for (p, k) in factorize(n) {
        let pk = p.pow(k);
        let part: Vec<usize> = m.elements().filter(|&x| m.int_mul(pk, x) == m.zero()).collect();
        let socle = part.iter().filter(|&&x| m.int_mul(p, x) == m.zero()).count();
        let divisible: HashSet<usize> = part.iter().map(|&x| m.int_mul(pk / p, x)).collect();
        if divisible.len() != socle {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators of a cyclic decomposition of a finite abelian p-group given as a ℤ/n-module.
fn decompose_pgroup(m: &Arc<FiniteModule>) -> Result<Vec<usize>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let mut x = m.zero();
    for y in m.elements() {
        if m.additive_order(y) > m.additive_order(x) {
            x = y;
        }
    }
    let ox = m.additive_order(x);
    let q = m.quotient(&m.cyclic(x)?)?;
    let mut gens = vec![x];
    for ybar in decompose_pgroup(&q.module)? {
        let pj = q.module.additive_order(ybar);
        let y = q.representatives[ybar];
        let t = m.int_mul(pj, y);
        let c = (0..ox)
            .find(|&c| m.int_mul(c, x) == t)
            .ok_or_else(|| Error::Internal("lift does not land in the cyclic summand".into()))?;
        if c % pj != 0 {
            return Err(Error::Internal("maximal-order summand is not pure".into()));
        }
        gens.push(m.sub(y, m.int_mul(c / pj, x)));
    }
    Ok(gens)
}

/// Cyclic decomposition M = ⊕⟨g⟩ into prime-power orders: (generator, p, exponent).
pub fn cyclic_decomposition(m: &Arc<FiniteModule>) -> Result<Vec<(usize, usize, u32)>> {
    let n = zmod_of(m)?;
    let mut out = Vec::new();
    for (p, k) in factorize(n) {
        let pk = p.pow(k);
        let part = m.submodule(crate::subset::ElemSet::from_iter_in(
            m.size(),
            m.elements().filter(|&x| m.int_mul(pk, x) == m.zero()),
        ))?;
        let (pm, inc) = part.as_module()?;
        for g in decompose_pgroup(&pm)? {
            out.push((inc.apply(g), p, exponent_of(pm.additive_order(g), p)));
        }
    }
    Ok(out)
}

fn exponent_of(mut q: usize, p: usize) -> u32 {
    let mut j = 0;
    while q > 1 {
        q /= p;
        j += 1;
    }
    j
}

/// ℤ/p^k as a ℤ/n-module, with its generator.
fn local_hull(ring: &Arc<crate::ring::FiniteRing>, n: usize, pk: usize) -> Result<(Arc<FiniteModule>, usize)> {
    let reg = FiniteModule::regular(ring);
    if pk == n {
        return Ok((reg, ring.one()));
    }
    let q = reg.quotient(&reg.cyclic(pk % n)?)?;
    let one = q.eta.apply(ring.one());
    Ok((q.module, one))
}

/// Injective envelope over ℤ/n: each cyclic p-power summand ℤ/p^j is hulled by ℤ/p^k.
/// Post-conditions (monomorphism, injective target, essential image) are re-checked.
pub fn injective_envelope_zmod(m: &Arc<FiniteModule>) -> Result<(Arc<FiniteModule>, Homomorphism)> {
    let n = zmod_of(m)?;
    if is_injective_zmod(m)? {
        return Ok((m.clone(), Homomorphism::identity(m)));
    }
    let ring = m.ring();
    let factors = factorize(n);
    let gens = cyclic_decomposition(m)?;
    let mut hulls = Vec::new();
    for &(_, p, _) in &gens {
        let k = factors.iter().find(|f| f.0 == p).map(|f| f.1).unwrap_or(0);
        hulls.push(local_hull(ring, n, p.pow(k))?);
    }
    let total: u128 = hulls.iter().map(|(h, _)| h.size() as u128).product();
    let cap = Caps::global().max_module as u128;
    if total > cap {
        return Err(Error::resource("injective envelope size", total, cap));
    }
    let (e, injections) = if hulls.len() == 1 {
        (hulls[0].0.clone(), vec![Homomorphism::identity(&hulls[0].0)])
    } else {
        let parts: Vec<Arc<FiniteModule>> = hulls.iter().map(|(h, _)| h.clone()).collect();
        let ds = FiniteModule::direct_sum(&parts)?;
        (ds.module, ds.injections)
    };
    let mut images = Vec::new();
    for (i, &(g, p, j)) in gens.iter().enumerate() {
        let k = factors.iter().find(|f| f.0 == p).map(|f| f.1).unwrap_or(0);
        let (hull, one) = &hulls[i];
        let y = hull.int_mul(p.pow(k - j), *one);
        images.push((g, injections[i].apply(y)));
    }
    let emb = Homomorphism::from_generator_images(m, &e, &images)?;
    if !emb.is_injective() {
        return Err(Error::Internal("envelope embedding is not injective".into()));
    }
    if is_injective_baer(&e)?.verdict != InjVerdict::Injective {
        return Err(Error::Internal("envelope fails the Baer test".into()));
    }
    if !is_essential(&emb.image())?.verdict {
        return Err(Error::Internal("envelope image is not essential".into()));
    }
    Ok((e, emb))
}

/// Certificate without the bounded fallback: u-S-torsion, direct sum of certified, or Baer.
pub fn certificate_for(e: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<Option<Certificate>> {
    if !same_ring(e.ring(), s.ring()) {
        return Err(Error::domain("multiplicative set over a different ring"));
    }
    if e.whole().killed_by(s.sigma()) {
        return Ok(Some(Certificate::USTorsion));
    }
    if let ModuleOrigin::DirectSum(parts) = e.origin() {
        let mut all = true;
        for p in parts {
            all &= certificate_for(p, s)?.is_some();
        }
        if all {
            return Ok(Some(Certificate::Closure));
        }
    }
    match is_injective_baer(e) {
        Ok(r) if r.verdict == InjVerdict::Injective => Ok(Some(Certificate::InjectiveBaer)),
        Ok(_) => Ok(None),
        Err(err) if err.is_resource() => Ok(None),
        Err(err) => Err(err),
    }
}

/// Certified tiers first, then the bounded test against the default catalogue.
pub fn certify_u_s_injective(e: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<InjectivityReport> {
    if let Some(c) = certificate_for(e, s)? {
        return Ok(InjectivityReport::certified(c));
    }
    let cat = default_catalogue(e, s)?;
    let mut rep = bounded_u_s_injective_test(e, s, &cat.maps)?;
    rep.skipped = cat.skipped;
    Ok(rep)
}

pub struct Catalogue {
    pub maps: Vec<Homomorphism>,
    pub skipped: usize,
}

/// Inclusions K ↪ N for N ∈ {R, E, R⊕R, R⊕E, E⊕E} and natural maps N → N/L with
/// L u-S-torsion for N ∈ {R, E}; entries beyond the caps are counted as skipped.
pub fn default_catalogue(e: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<Catalogue> {
    catalogue_within(e, s, usize::MAX, Caps::global().max_homs)
}

/// [`default_catalogue`] with pairwise sums kept up to `sum_limit` elements and
/// every Hom set involved bounded by `hom_cap`.
pub fn catalogue_within(
    e: &Arc<FiniteModule>,
    s: &MultiplicativeSet,
    sum_limit: usize,
    hom_cap: u128,
) -> Result<Catalogue> {
    let cap = hom_cap.min(Caps::global().max_homs);
    let r = FiniteModule::regular(e.ring());
    let mut ambients = vec![r.clone(), e.clone()];
    let mut skipped = 0;
    for pair in [[&r, &r], [&r, e], [e, e]] {
        if pair[0].size().saturating_mul(pair[1].size()) > sum_limit {
            skipped += 1;
            continue;
        }
        match FiniteModule::direct_sum(&[pair[0].clone(), pair[1].clone()]) {
            Ok(ds) => ambients.push(ds.module),
            Err(err) if err.is_resource() => skipped += 1,
            Err(err) => return Err(err),
        }
    }
    let fits = |a: &Arc<FiniteModule>, b: &Arc<FiniteModule>| {
        hom_count_bound(a, e) <= cap && hom_count_bound(b, e) <= cap
    };
    let mut maps = Vec::new();
    for (idx, n) in ambients.iter().enumerate() {
        let lattice = match n.all_submodules() {
            Ok(l) => l,
            Err(err) if err.is_resource() => {
                skipped += 1;
                continue;
            }
            Err(err) => return Err(err),
        };
        for k in &lattice {
            let (kmod, inc) = k.as_module()?;
            if fits(&kmod, n) {
                maps.push(inc);
            } else {
                skipped += 1;
            }
        }
        if idx < 2 {
            for l in lattice.iter().filter(|l| !l.is_zero() && l.killed_by(s.sigma())) {
                let q = n.quotient(l)?;
                if fits(n, &q.module) {
                    maps.push(q.eta);
                } else {
                    skipped += 1;
                }
            }
        }
    }
    Ok(Catalogue { maps, skipped })
}

/// First h: A → E with sigma·h ∉ {g∘f : g ∈ Hom(B, E)}; `hom_b` lists Hom(B, E).
fn first_failure(
    f: &Homomorphism,
    hom_b: &[Vec<usize>],
    e: &Arc<FiniteModule>,
    sigma: usize,
    cap: u128,
) -> Result<Option<Homomorphism>> {
    let reachable: HashSet<Vec<usize>> =
        hom_b.iter().map(|g| f.map().iter().map(|&b| g[b]).collect()).collect();
    let mut bad = None;
    hom_for_each(f.source(), e, cap, |h| {
        let sh: Vec<usize> = h.map().iter().map(|&y| e.act(sigma, y)).collect();
        if reachable.contains(&sh) {
            true
        } else {
            bad = Some(h);
            false
        }
    })?;
    Ok(bad)
}

/// Uniform extension property against each catalogue map. Passing is evidence
/// only; a failure is a sound refutation.
pub fn bounded_u_s_injective_test(
    e: &Arc<FiniteModule>,
    s: &MultiplicativeSet,
    catalogue: &[Homomorphism],
) -> Result<InjectivityReport> {
    for f in catalogue {
        if !is_u_s_mono(f, s)?.holds {
            return Err(Error::PreconditionViolated("catalogue map is not a u-S-monomorphism".into()));
        }
    }
    let cap = Caps::global().max_homs;
    let sigma = s.sigma();
    // catalogue maps share a handful of targets; Hom(target, E) is listed once each
    let mut targets: Vec<&Arc<FiniteModule>> = Vec::new();
    let slot: Vec<usize> = catalogue
        .iter()
        .map(|f| match targets.iter().position(|t| Arc::ptr_eq(t, f.target())) {
            Some(i) => i,
            None => {
                targets.push(f.target());
                targets.len() - 1
            }
        })
        .collect();
    let homs: Vec<Vec<Vec<usize>>> = targets
        .par_iter()
        .map(|b| {
            let mut all = Vec::new();
            hom_for_each(b, e, cap, |g| {
                all.push(g.map().to_vec());
                true
            })?;
            Ok(all)
        })
        .collect::<Result<_>>()?;
    let outcomes: Vec<Result<Option<Homomorphism>>> = catalogue
        .par_iter()
        .zip(slot.par_iter())
        .map(|(f, &i)| first_failure(f, &homs[i], e, sigma, cap))
        .collect();
    for (f, out) in catalogue.iter().zip(outcomes) {
        if let Some(h) = out? {
            return Ok(InjectivityReport {
                verdict: InjVerdict::Refuted,
                certificate: None,
                witness: Some(InjWitness::Extension { f: f.clone(), h }),
                catalogue_size: catalogue.len(),
                skipped: 0,
            });
        }
    }
    Ok(InjectivityReport {
        verdict: InjVerdict::BoundedPass,
        certificate: Some(Certificate::BoundedPass),
        witness: None,
        catalogue_size: catalogue.len(),
        skipped: 0,
    })
}

/// True iff for every s ∈ S no g: B → E satisfies s·h = g∘f (exhaustive g-scan).
pub fn replay_extension_witness(f: &Homomorphism, h: &Homomorphism, s: &MultiplicativeSet) -> Result<bool> {
    if h.source().size() != f.source().size() {
        return Err(Error::domain("h and f have different sources"));
    }
    let e = h.target();
    let targets: Vec<Vec<usize>> = s.iter().map(|t| h.scale(t).map().to_vec()).collect();
    let mut found = false;
    hom_for_each(f.target(), e, Caps::global().max_homs, |g| {
        let gf: Vec<usize> = f.map().iter().map(|&b| g.apply(b)).collect();
        found = targets.contains(&gf);
        !found
    })?;
    Ok(!found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    fn reg(n: usize) -> Arc<FiniteModule> {
        FiniteModule::regular(&FiniteRing::zmod(n).unwrap())
    }

    #[test]
    fn baer_examples() {
        let z6 = reg(6);
        assert_eq!(is_injective_baer(&z6).unwrap().verdict, InjVerdict::Injective);
        let z4 = reg(4);
        let (two, _) = z4.span(&[2]).unwrap().as_module().unwrap();
        let rep = is_injective_baer(&two).unwrap();
        assert_eq!(rep.verdict, InjVerdict::NotInjective);
        match rep.witness.unwrap() {
            InjWitness::Baer { ideal, h } => {
                assert_eq!(ideal.members().to_vec(), vec![0, 2]);
                assert!(replay_baer_witness(&ideal, &h).unwrap());
            }
            _ => panic!("expected a Baer witness"),
        }
        let zero = FiniteModule::zero_module(z4.ring());
        assert_eq!(is_injective_baer(&zero).unwrap().verdict, InjVerdict::Injective);
    }

    #[test]
    fn structure_classification() {
        assert!(is_injective_zmod(&reg(12)).unwrap());
        let z4 = reg(4);
        let (two, _) = z4.span(&[2]).unwrap().as_module().unwrap();
        assert!(!is_injective_zmod(&two).unwrap());
        let z6 = reg(6);
        let (three, _) = z6.span(&[2]).unwrap().as_module().unwrap();
        assert!(is_injective_zmod(&three).unwrap());
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(36), vec![(2, 2), (3, 2)]);
        assert_eq!(factorize(7), vec![(7, 1)]);
        assert_eq!(factorize(8), vec![(2, 3)]);
    }

    #[test]
    fn decompositions() {
        let r = FiniteRing::zmod(8).unwrap();
        let z8 = FiniteModule::regular(&r);
        let q = z8.quotient(&z8.span(&[4]).unwrap()).unwrap();
        let ds = FiniteModule::direct_sum(&[z8.clone(), q.module.clone()]).unwrap();
        let gens = cyclic_decomposition(&ds.module).unwrap();
        let mut orders: Vec<u32> = gens.iter().map(|g| g.2).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 3]);
        let span = ds.module.span(&gens.iter().map(|g| g.0).collect::<Vec<_>>()).unwrap();
        assert!(span.is_whole());
    }

    #[test]
    fn zmod_envelopes() {
        let z4 = reg(4);
        let (two, _) = z4.span(&[2]).unwrap().as_module().unwrap();
        let (e, i) = injective_envelope_zmod(&two).unwrap();
        assert_eq!(e.size(), 4);
        assert!(i.is_injective());
        let z6 = reg(6);
        let (three, _) = z6.span(&[2]).unwrap().as_module().unwrap();
        let (e, i) = injective_envelope_zmod(&three).unwrap();
        assert_eq!(e.size(), 3);
        assert!(i.is_identity());
        let r = FiniteRing::zmod(8).unwrap();
        let z8 = FiniteModule::regular(&r);
        let q = z8.quotient(&z8.span(&[2]).unwrap()).unwrap();
        let ds = FiniteModule::direct_sum(&[q.module.clone(), q.module.clone()]).unwrap();
        let (e, _) = injective_envelope_zmod(&ds.module).unwrap();
        assert_eq!(e.size(), 64);
        let p = FiniteRing::product(&FiniteRing::zmod(2).unwrap(), &FiniteRing::zmod(3).unwrap()).unwrap();
        assert!(matches!(
            injective_envelope_zmod(&FiniteModule::regular(&p)),
            Err(Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn certification_tiers() {
        let z6 = reg(6);
        let s = MultiplicativeSet::closure(z6.ring(), &[4]).unwrap();
        let rep = certify_u_s_injective(&z6, &s).unwrap();
        assert_eq!(rep.certificate, Some(Certificate::InjectiveBaer));
        let (t, _) = z6.span(&[3]).unwrap().as_module().unwrap();
        assert_eq!(certificate_for(&t, &s).unwrap(), Some(Certificate::USTorsion));
        let ds = FiniteModule::direct_sum(&[z6.clone(), t]).unwrap();
        assert_eq!(certificate_for(&ds.module, &s).unwrap(), Some(Certificate::Closure));
    }

    #[test]
    fn bounded_tier() {
        let z6 = reg(6);
        let s = MultiplicativeSet::closure(z6.ring(), &[4]).unwrap();
        let ideals: Vec<Homomorphism> = z6
            .all_submodules()
            .unwrap()
            .iter()
            .map(|k| k.as_module().unwrap().1)
            .collect();
        let rep = bounded_u_s_injective_test(&z6, &s, &ideals).unwrap();
        assert_eq!(rep.verdict, InjVerdict::BoundedPass);
        assert_eq!(rep.catalogue_size, 4);
        let (three, _) = z6.span(&[2]).unwrap().as_module().unwrap();
        assert_eq!(bounded_u_s_injective_test(&three, &s, &ideals).unwrap().verdict, InjVerdict::BoundedPass);

        let z4 = reg(4);
        let units = MultiplicativeSet::closure(z4.ring(), &[3]).unwrap();
        let (two, _) = z4.span(&[2]).unwrap().as_module().unwrap();
        let ideals: Vec<Homomorphism> = z4
            .all_submodules()
            .unwrap()
            .iter()
            .map(|k| k.as_module().unwrap().1)
            .collect();
        let rep = bounded_u_s_injective_test(&two, &units, &ideals).unwrap();
        assert_eq!(rep.verdict, InjVerdict::Refuted);
        match rep.witness.unwrap() {
            InjWitness::Extension { f, h } => {
                assert_eq!(f.source().size(), 2);
                assert!(replay_extension_witness(&f, &h, &units).unwrap());
            }
            _ => panic!("expected an extension witness"),
        }
        let rep = certify_u_s_injective(&two, &units).unwrap();
        assert_eq!(rep.verdict, InjVerdict::Refuted);
        assert!(rep.catalogue_size > 0);
    }
}
