//! The law registry: one executable check per result, evaluated per instance.

use std::cell::OnceCell;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::envelope::{
    check_u_s_envelope, check_u_s_preenvelope, construct_u_s_envelope, envelope_of_direct_sum, envelope_of_prime_sum,
    envelope_properties, envelope_three_way, envelope_uniqueness, injective_summand, module_pool,
    preenvelope_summand, twisted_essential_transfer, EnvelopeCandidate, Preenvelope,
};
use crate::error::{Error, Result};
use crate::essential::{
    direct_sum_essential, is_essential, is_u_s_essential, is_u_s_essential_fast, is_u_s_essential_mono,
    is_u_s_essential_oracle, max_essential_upgrade, mono_test_by_quotients, oracle_over, quotient_characterization,
    replay_refutation, transitivity_and_meet, transport_image, transport_preimage, u_s_complement, EssentialVerdict,
    Method,
};
use crate::hom::{hom_for_each, Homomorphism};
use crate::injective::{
    bounded_u_s_injective_test, catalogue_within, certificate_for, certify_u_s_injective, injective_envelope_zmod,
    is_injective_baer, is_injective_zmod, replay_baer_witness, replay_extension_witness, InjVerdict, InjWitness,
    InjectivityReport,
};
use crate::module::{FiniteModule, Submodule};
use crate::mset::MultiplicativeSet;
use crate::spec::{Built, Instance};
use crate::torsion::{
    is_u_s_mono, is_u_s_torsion, is_u_s_torsion_scan, s_torsion_scan, s_torsion_submodule, IsoSearch,
};

/// Where a law comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawKind {
    /// A stated result about u-S-notions.
    Theorem,
    /// A consequence of finiteness used by the implementation.
    Derived,
    /// A correctness property of the machinery itself.
    Artifact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    /// Hypothesis not met on this instance.
    Skipped,
    SkippedResource,
    /// The evaluation itself failed (precondition or internal error).
    Error,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Violated | Verdict::Error)
    }
}

/// Witness bundle attached to every result.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Witness {
    pub method: Option<Method>,
    pub witness_s: Option<Vec<String>>,
    #[serde(rename = "counterexample_L")]
    pub counterexample_l: Option<Vec<String>>,
    pub enumeration_complete: bool,
    pub pool_size: Option<usize>,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct Eval {
    pub verdict: Verdict,
    pub witness: Witness,
}

impl Eval {
    fn check(ok: bool, witness: Witness) -> Eval {
        Eval {
            verdict: if ok { Verdict::Holds } else { Verdict::Violated },
            witness,
        }
    }

    fn skip(reason: impl Into<String>) -> Eval {
        Eval {
            verdict: Verdict::Skipped,
            witness: Witness {
                note: reason.into(),
                ..Witness::default()
            },
        }
    }
}

fn complete(note: impl Into<String>) -> Witness {
    Witness {
        enumeration_complete: true,
        note: note.into(),
        ..Witness::default()
    }
}

pub struct Law {
    pub id: &'static str,
    pub kind: LawKind,
    /// Pool definition for laws whose quantifiers range over a bounded family.
    pub pool: Option<&'static str>,
    pub summary: &'static str,
    check: fn(&Ctx) -> Result<Eval>,
}

impl Law {
    pub fn bounded(&self) -> bool {
        self.pool.is_some()
    }
}

/// Per-instance evaluation context with lazily shared structures.
pub struct Ctx<'a> {
    pub inst: &'a Instance,
    pub b: &'a Built,
    lattice: OnceCell<Result<Vec<Submodule>>>,
    tor: OnceCell<Result<Submodule>>,
    envelope: OnceCell<Result<Option<EnvelopeCandidate>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(inst: &'a Instance, b: &'a Built) -> Self {
        Ctx {
            inst,
            b,
            lattice: OnceCell::new(),
            tor: OnceCell::new(),
            envelope: OnceCell::new(),
        }
    }

    fn s(&self) -> &MultiplicativeSet {
        &self.b.s
    }

    fn lattice(&self) -> Result<&[Submodule]> {
        match self.lattice.get_or_init(|| self.b.m.all_submodules()) {
            Ok(l) => Ok(l),
            Err(e) => Err(e.clone()),
        }
    }

    fn tor(&self) -> Result<&Submodule> {
        match self.tor.get_or_init(|| s_torsion_submodule(&self.b.m, &self.b.s)) {
            Ok(t) => Ok(t),
            Err(e) => Err(e.clone()),
        }
    }

    /// Constructed envelope of M, if the construction succeeds.
    fn envelope(&self) -> Result<Option<&EnvelopeCandidate>> {
        match self.envelope.get_or_init(|| construct_u_s_envelope(&self.b.m, &self.b.s)) {
            Ok(e) => Ok(e.as_ref()),
            Err(e) => Err(e.clone()),
        }
    }

    fn ring_names(&self, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
        xs.into_iter().map(|x| self.b.ring.name(x).to_string()).collect()
    }

    fn verdict_witness(&self, v: &EssentialVerdict, note: impl Into<String>) -> Witness {
        Witness {
            method: Some(v.method),
            witness_s: Some(self.ring_names(v.witness_s1.into_iter().chain(v.witness_s2))),
            counterexample_l: v.counterexample.as_ref().map(sub_names),
            enumeration_complete: true,
            pool_size: None,
            note: note.into(),
        }
    }

    /// K and H with their display names.
    fn subs(&self) -> [(&'static str, &Submodule); 2] {
        [("K", &self.b.k), ("H", &self.b.h)]
    }
}

fn sub_names(k: &Submodule) -> Vec<String> {
    k.members().iter().map(|x| k.parent().name(x).to_string()).collect()
}

fn inclusion(k: &Submodule) -> Result<Homomorphism> {
    Ok(k.as_module()?.1)
}

fn fits(size: usize) -> bool {
    size <= Caps::global().max_module
}

/// First failing check, as a violated evaluation.
fn all_of(checks: Vec<(bool, String)>, note: &str) -> Eval {
    match checks.into_iter().find(|(ok, _)| !ok) {
        Some((_, why)) => Eval::check(false, complete(why)),
        None => Eval::check(true, complete(note)),
    }
}

// ---- definitions and first properties ----

fn def1_remark(c: &Ctx) -> Result<Eval> {
    let s = c.s();
    let lattice = c.lattice()?;
    let mut checks = Vec::new();
    for (name, k) in c.subs() {
        // the literal definition, with existential s₁ and s₂ scanned over all of S
        let mut literal = true;
        for l in lattice {
            let meet = k.intersect(l)?;
            if s.iter().any(|t| meet.killed_by(t)) && !s.iter().any(|t| l.killed_by(t)) {
                literal = false;
                break;
            }
        }
        let oracle = oracle_over(k, s, lattice)?.verdict;
        checks.push((literal == oracle, format!("{name}: literal {literal}, sigma form {oracle}")));
    }
    Ok(all_of(checks, "existential and sigma forms agree"))
}

fn remark_2_4(c: &Ctx) -> Result<Eval> {
    let m = &c.b.m;
    let regular_on_m = c.s().iter().all(|t| m.elements().all(|x| x == m.zero() || m.act(t, x) != m.zero()));
    if !regular_on_m {
        return Ok(Eval::skip("S meets the zero-divisors on M"));
    }
    let mut checks = Vec::new();
    for (name, k) in c.subs() {
        let us = is_u_s_essential(k, c.s())?;
        let ess = is_essential(k)?.verdict;
        checks.push((us == ess, format!("{name}: u-S-essential {us}, essential {ess}")));
    }
    Ok(all_of(checks, "u-S-essential ≡ essential"))
}

fn example_2_5_1(c: &Ctx) -> Result<Eval> {
    if !c.b.m.whole().killed_by(c.s().sigma()) {
        return Ok(Eval::skip("sigma·M ≠ 0"));
    }
    let zero = c.b.m.zero_sub();
    let mut checks = Vec::new();
    for (name, k) in [("K", &c.b.k), ("H", &c.b.h), ("0", &zero)] {
        checks.push((is_u_s_essential(k, c.s())?, format!("{name} not u-S-essential in a u-S-torsion module")));
    }
    Ok(all_of(checks, "every submodule is u-S-essential"))
}

fn prop_p1(c: &Ctx) -> Result<Eval> {
    let mut checks = Vec::new();
    for (name, k) in c.subs() {
        let r = max_essential_upgrade(k)?;
        checks.push((
            !r.every_maximal || r.essential,
            format!("{name}: u-m-essential for every maximal m but not essential"),
        ));
    }
    Ok(all_of(checks, "local-at-every-maximal ⇒ essential"))
}

fn lemma_lemp(c: &Ctx) -> Result<Eval> {
    let m = &c.b.m;
    if m.is_zero() || !m.is_prime()? {
        return Ok(Eval::skip("M is not prime"));
    }
    let mut checks = Vec::new();
    let mut any = false;
    for (name, k) in c.subs() {
        if is_essential(k)?.verdict {
            any = true;
            checks.push((is_u_s_essential(k, c.s())?, format!("{name} essential but not u-S-essential")));
        }
    }
    if !any {
        return Ok(Eval::skip("neither K nor H is essential"));
    }
    Ok(all_of(checks, "essential ⇒ u-S-essential in a prime module"))
}

fn prop_2_8(c: &Ctx) -> Result<Eval> {
    let m = &c.b.m;
    if m.is_zero() || !m.is_prime()? {
        return Ok(Eval::skip("M is not prime"));
    }
    let mut checks = Vec::new();
    for (name, k) in c.subs() {
        let r = max_essential_upgrade(k)?;
        checks.push((
            r.holds(),
            format!(
                "{name}: essential {}, every prime {}, every maximal {}",
                r.essential, r.every_prime, r.every_maximal
            ),
        ));
    }
    Ok(all_of(checks, "essential ≡ u-p-essential ∀p ≡ u-m-essential ∀m"))
}

fn thm_prop3(c: &Ctx) -> Result<Eval> {
    let (k, h, s) = (&c.b.k, &c.b.h, c.s());
    let kh = k.intersect(h)?;
    let kph = k.sum(h)?;
    let a = transitivity_and_meet(&kh, k, h, s)?;
    let b = transitivity_and_meet(k, &kph, h, s)?;
    Ok(all_of(
        vec![
            (a.chain.holds(), format!("chain K∩H ≤ K ≤ M: {:?}", a.chain)),
            (a.meet.holds(), format!("meet H, K∩H: {:?}", a.meet)),
            (b.chain.holds(), format!("chain K ≤ K+H ≤ M: {:?}", b.chain)),
            (b.meet.holds(), format!("meet H, K: {:?}", b.meet)),
        ],
        "chain and meet equivalences",
    ))
}

fn prop_prop5(c: &Ctx) -> Result<Eval> {
    let (m, s) = (&c.b.m, c.s());
    let mut checks = Vec::new();
    let qh = m.quotient(&c.b.h)?;
    let q_img = qh.eta.image_of(&c.b.k)?;
    let p = transport_preimage(&q_img, &qh.eta, s)?;
    checks.push((p.holds(), format!("preimage under M → M/H: {p:?}")));
    if let Some(f) = &c.b.f {
        let p = transport_preimage(&c.b.k2, f, s)?;
        checks.push((p.holds(), format!("preimage of K2 under f: {p:?}")));
        if is_u_s_mono(f, s)?.holds {
            let p = transport_image(&c.b.k, f, s)?;
            checks.push((p.holds(), format!("image of K under f: {p:?}")));
        }
    }
    let qt = m.quotient(c.tor()?)?;
    let p = transport_image(&c.b.k, &qt.eta, s)?;
    checks.push((p.holds(), format!("image of K in M/tor_S(M): {p:?}")));
    Ok(all_of(checks, "preimages and u-S-mono images preserve u-S-essentiality"))
}

/// Pairs of submodules whose direct sum fits the caps.
/// Needed size of the smallest candidate sum, for resource skips.
fn sum_too_large(c: &Ctx, arity: usize) -> Error {
    let needed = (c.b.m2.size() as u128).saturating_pow(arity as u32);
    Error::resource(format!("{arity}-fold direct sum size"), needed, Caps::global().max_module as u128)
}

fn sum_parts(c: &Ctx, arity: usize) -> Option<Vec<Submodule>> {
    let (m, m2) = (&c.b.m, &c.b.m2);
    let mixed: Vec<Submodule> = std::iter::once(c.b.k.clone())
        .chain(std::iter::repeat(c.b.k2.clone()).take(arity - 1))
        .collect();
    if fits(m.size() * m2.size().pow(arity as u32 - 1)) {
        return Some(mixed);
    }
    if fits(m2.size().pow(arity as u32)) {
        return Some(vec![c.b.k2.clone(); arity]);
    }
    None
}

fn thm_prop6(c: &Ctx) -> Result<Eval> {
    let Some(parts) = sum_parts(c, 2) else {
        return Err(sum_too_large(c, 2));
    };
    let b = direct_sum_essential(&parts, c.s())?;
    Ok(Eval::check(b.holds(), complete(format!("sum (oracle) vs components: {b:?}"))))
}

fn cor_coro1(c: &Ctx) -> Result<Eval> {
    let Some(parts) = sum_parts(c, 3) else {
        return Err(sum_too_large(c, 3));
    };
    let b = direct_sum_essential(&parts, c.s())?;
    // one direction only: every K_i ⊴ M_i ⇒ ⊕K_i ⊴ ⊕M_i
    Ok(Eval::check(!b.right || b.left, complete(format!("3-fold sum: {b:?}"))))
}

fn prop_propd(c: &Ctx) -> Result<Eval> {
    let Some(parts) = sum_parts(c, 2) else {
        return Err(sum_too_large(c, 2));
    };
    let modules: Vec<Arc<FiniteModule>> = parts.iter().map(|k| k.parent().clone()).collect();
    let ds = FiniteModule::direct_sum(&modules)?;
    let sum = ds.sum_of_submodules(&parts)?;
    let tor_ok = s_torsion_submodule(&ds.module, c.s())?.killed_by(c.s().sigma());
    let mut every = true;
    for k in &parts {
        every &= is_u_s_essential(k, c.s())?;
    }
    let whole = is_u_s_essential_fast(&sum, c.s())?.verdict;
    Ok(Eval::check(
        tor_ok && every == whole,
        complete(format!("tor_S u-S-torsion {tor_ok}; components {every}, sum (element criterion) {whole}")),
    ))
}

fn thm_prop7(c: &Ctx) -> Result<Eval> {
    let lattice = c.lattice()?;
    let mut last = Witness::default();
    for (name, k) in c.subs() {
        let fast = is_u_s_essential_fast(k, c.s())?;
        let oracle = oracle_over(k, c.s(), lattice)?;
        if fast.verdict != oracle.verdict {
            return Ok(Eval::check(
                false,
                c.verdict_witness(&fast, format!("{name}: element criterion {}, oracle {}", fast.verdict, oracle.verdict)),
            ));
        }
        last = c.verdict_witness(&fast, "element criterion ≡ lattice oracle");
    }
    Ok(Eval::check(true, last))
}

fn cor_cor4(c: &Ctx) -> Result<Eval> {
    let one = MultiplicativeSet::trivial(&c.b.ring);
    let lattice = c.lattice()?;
    let mut checks = Vec::new();
    for (name, k) in c.subs() {
        let ess = is_essential(k)?.verdict;
        let fast = is_u_s_essential_fast(k, &one)?.verdict;
        let oracle = oracle_over(k, &one, lattice)?.verdict;
        checks.push((
            ess == fast && fast == oracle,
            format!("{name}: essential {ess}, S={{1}} fast {fast}, oracle {oracle}"),
        ));
    }
    Ok(all_of(checks, "S = {1} degenerates to essentiality"))
}

fn thm_2_17(c: &Ctx) -> Result<Eval> {
    let mut checks = Vec::new();
    for (name, k) in c.subs() {
        let comp = u_s_complement(k, c.s())?;
        checks.push((
            comp.sum_essential && comp.quotient_essential,
            format!(
                "{name}: complement {}, K+K' essential {}, (K+K')/K' essential {}",
                comp.complement.display(),
                comp.sum_essential,
                comp.quotient_essential
            ),
        ));
    }
    Ok(all_of(checks, "complement laws"))
}

fn prop_prop1(c: &Ctx) -> Result<Eval> {
    let mut checks = Vec::new();
    let mut pool = 0;
    for (name, k) in c.subs() {
        let fast = is_u_s_essential_fast(k, c.s())?.verdict;
        let quot = quotient_characterization(k, c.s())?.verdict;
        let i_k = inclusion(k)?;
        let mono = is_u_s_essential_mono(&i_k, c.s())?;
        let by_quotients = mono_test_by_quotients(&i_k, c.s())?;
        pool += c.lattice()?.len();
        checks.push((
            fast == quot && fast == mono && fast == by_quotients,
            format!("{name}: element {fast}, quotient maps {quot}, inclusion mono {mono}, η_L family {by_quotients}"),
        ));
    }
    let mut e = all_of(checks, "three characterizations agree");
    e.witness.pool_size = Some(pool);
    Ok(e)
}

fn cor_cor1(c: &Ctx) -> Result<Eval> {
    let mut maps = vec![("i_K", inclusion(&c.b.k)?), ("i_H", inclusion(&c.b.h)?)];
    if let Some(f) = &c.b.f {
        if is_u_s_mono(f, c.s())?.holds {
            maps.push(("f", f.clone()));
        }
    }
    let mut checks = Vec::new();
    let mut pool = 0;
    for (name, f) in &maps {
        let direct = is_u_s_essential_mono(f, c.s())?;
        let family = mono_test_by_quotients(f, c.s())?;
        pool += f.target().all_submodules()?.len();
        checks.push((direct == family, format!("{name}: essential image {direct}, η_L family {family}")));
    }
    let mut e = all_of(checks, "mono characterization on the quotient family");
    e.witness.pool_size = Some(pool);
    Ok(e)
}

// ---- envelopes ----

fn require_envelope<'c>(c: &'c Ctx) -> Result<std::result::Result<&'c EnvelopeCandidate, Eval>> {
    Ok(match c.envelope()? {
        Some(e) => Ok(e),
        None => Err(Eval::skip("no envelope constructed for M")),
    })
}

/// R/sigma·R, a u-S-torsion module; `None` when sigma is a unit.
fn sigma_quotient(c: &Ctx) -> Result<Option<Arc<FiniteModule>>> {
    let reg = FiniteModule::regular(&c.b.ring);
    let sr = reg.whole().scaled(c.s().sigma());
    if sr.is_whole() {
        return Ok(None);
    }
    Ok(Some(reg.quotient(&sr)?.module))
}

/// ι∘f: M → E ⊕ T.
fn widen(f: &Homomorphism, t: &Arc<FiniteModule>) -> Result<Homomorphism> {
    let ds = FiniteModule::direct_sum(&[f.target().clone(), t.clone()])?;
    ds.injections[0].compose(f)
}

fn prop_prop9(c: &Ctx) -> Result<Eval> {
    let env = match require_envelope(c)? {
        Ok(e) => e,
        Err(skip) => return Ok(skip),
    };
    let f = &env.map;
    let mut others = Vec::new();
    if let Some(t) = sigma_quotient(c)? {
        others.push(("E ⊕ R/σR", widen(f, &t)?));
    }
    if let Ok((_, i)) = injective_envelope_zmod(&c.b.m) {
        others.push(("injective envelope", i));
    }
    others.push(("-f", f.scale(c.b.ring.neg(c.b.ring.one()))));
    let mut checks = Vec::new();
    let mut compared = 0;
    for (name, g) in others {
        let cand = check_u_s_envelope(&g, c.s())?;
        if !cand.is_envelope() || cand.preenvelope != Preenvelope::Yes {
            if name == "E ⊕ R/σR" {
                checks.push((false, format!("{name} should be an envelope")));
            }
            continue;
        }
        compared += 1;
        let iso = envelope_uniqueness(f, &g, c.s())?;
        checks.push((matches!(iso, IsoSearch::Found(_)), format!("{name}: no u-S-isomorphism found")));
    }
    let mut e = all_of(checks, "envelopes are u-S-isomorphic");
    e.witness.pool_size = Some(compared);
    Ok(e)
}

fn prop_prn2(c: &Ctx) -> Result<Eval> {
    let env = match require_envelope(c)? {
        Ok(e) => e,
        Err(skip) => return Ok(skip),
    };
    let f = &env.map;
    let e = f.target().clone();
    let mut extras = vec![e.clone()];
    if let Some(t) = sigma_quotient(c)? {
        extras.push(t);
    }
    let mut checks = Vec::new();
    let mut tried = 0;
    for extra in extras {
        if !fits(e.size() * extra.size()) {
            continue;
        }
        let g = widen(f, &extra)?;
        if check_u_s_preenvelope(&g, c.s())? == Preenvelope::No {
            checks.push((false, "E ⊕ X with X certified is not a preenvelope".to_string()));
            continue;
        }
        tried += 1;
        let found = preenvelope_summand(f, &g, c.s())?;
        checks.push((
            found.found.is_some() || !found.complete,
            format!("no complement B in E ⊕ {}", extra.label()),
        ));
    }
    if tried == 0 && checks.is_empty() {
        return Err(Error::resource("preenvelope size", e.size() as u128 * e.size() as u128, Caps::global().max_module as u128));
    }
    let mut ev = all_of(checks, "preenvelopes split off the envelope");
    ev.witness.pool_size = Some(tried);
    Ok(ev)
}

fn lemma_lem1(c: &Ctx) -> Result<Eval> {
    let mut checks = Vec::new();
    let mut pool = 0;
    let mut tested = 0;
    for (name, e) in [("M", &c.b.m), ("M2", &c.b.m2)] {
        let Some(cert) = certificate_for(e, c.s())? else {
            continue;
        };
        let cat = catalogue_within(e, c.s(), SUM_LIMIT, LAW_HOM_CAP)?;
        pool += cat.maps.len();
        tested += 1;
        let rep = bounded_u_s_injective_test(e, c.s(), &cat.maps)?;
        checks.push((
            rep.verdict == InjVerdict::BoundedPass,
            format!("{name} certified ({cert:?}) but the extension test failed"),
        ));
    }
    if tested == 0 {
        return Ok(Eval::skip("neither M nor M2 is certified u-S-injective"));
    }
    let mut e = all_of(checks, "certified modules satisfy the uniform extension property");
    e.witness.pool_size = Some(pool);
    Ok(e)
}

/// Hom(f, A'): Hom(E, A') → Hom(M, A') is onto up to sigma.
fn hom_surjective_up_to_sigma(f: &Homomorphism, a: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<bool> {
    let cap = Caps::global().max_homs;
    let mut reachable = std::collections::HashSet::new();
    hom_for_each(f.target(), a, cap, |g| {
        reachable.insert(f.map().iter().map(|&y| g.apply(y)).collect::<Vec<usize>>());
        true
    })?;
    let sigma = s.sigma();
    let mut ok = true;
    hom_for_each(f.source(), a, cap, |h| {
        ok = reachable.contains(h.scale(sigma).map());
        ok
    })?;
    Ok(ok)
}

const POOL_LIMIT: usize = 12;
const POOL_UNIVERSE: usize = 16;
/// Largest direct sum built as an ambient or as the module under test.
const SUM_LIMIT: usize = 2 * POOL_UNIVERSE;
/// Hom-set budget for catalogue entries in bounded laws.
const LAW_HOM_CAP: u128 = 1 << 12;

fn prop_propn1(c: &Ctx) -> Result<Eval> {
    let (m, s) = (&c.b.m, c.s());
    if m.size() > POOL_UNIVERSE {
        return Ok(Eval::skip(format!("|M| > {POOL_UNIVERSE}: outside the bounded universe")));
    }
    let hull = injective_envelope_zmod(m).ok();
    let mut extras = vec![m.clone(), c.b.m2.clone()];
    if let Some((e, _)) = &hull {
        extras.push(e.clone());
    }
    let mut pool = Vec::new();
    for a in module_pool(&c.b.ring, &extras, POOL_LIMIT)? {
        if certificate_for(&a, s)?.is_some() {
            pool.push(a);
        }
    }
    let mut maps = vec![("i_K", inclusion(&c.b.k)?)];
    if let Some(env) = c.envelope()? {
        maps.push(("envelope", env.map.clone()));
    }
    if let Some((_, i)) = &hull {
        maps.push(("injective envelope", i.clone()));
    }
    if let Some(f) = &c.b.f {
        maps.push(("f", f.clone()));
    }
    let mut checks = Vec::new();
    for (name, f) in &maps {
        let right = is_u_s_mono(f, s)?.holds && certificate_for(f.target(), s)?.is_some();
        let mut left = true;
        for a in &pool {
            if !hom_surjective_up_to_sigma(f, a, s)? {
                left = false;
                break;
            }
        }
        // right ⇒ left always; left ⇒ u-S-mono once the pool holds an injective hull of M
        let mono_ok = !left || hull.is_none() || is_u_s_mono(f, s)?.holds;
        checks.push((
            (!right || left) && mono_ok,
            format!("{name}: mono ∧ certified target {right}, extension property over pool {left}"),
        ));
    }
    if let Some((_, i)) = &hull {
        checks.push((
            check_u_s_preenvelope(i, s)? == Preenvelope::Yes,
            "injective envelope is not a preenvelope".into(),
        ));
    }
    let mut e = all_of(checks, "preenvelope ⇔ u-S-mono into a u-S-injective");
    e.witness.pool_size = Some(pool.len());
    Ok(e)
}

fn thm_thmn1(c: &Ctx) -> Result<Eval> {
    let mut maps = vec![("i_K", inclusion(&c.b.k)?), ("i_H", inclusion(&c.b.h)?)];
    if let Some(env) = c.envelope()? {
        maps.push(("envelope", env.map.clone()));
    }
    if let Some(f) = &c.b.f {
        maps.push(("f", f.clone()));
    }
    let mut checks = Vec::new();
    let mut compared = 0;
    for (name, f) in &maps {
        let cand = check_u_s_envelope(f, c.s())?;
        if cand.preenvelope == Preenvelope::No || cand.rigid.is_none() {
            continue;
        }
        compared += 1;
        checks.push((
            cand.routes_agree(),
            format!("{name}: essential image {}, rigidity {:?}", cand.essential.verdict, cand.rigid),
        ));
    }
    if compared == 0 {
        return Ok(Eval::skip("no candidate map is a preenvelope with End(E) within caps"));
    }
    let mut e = all_of(checks, "essential-image and rigidity routes agree");
    e.witness.pool_size = Some(compared);
    Ok(e)
}

fn lemma_lem4(c: &Ctx) -> Result<Eval> {
    let (m, s) = (&c.b.m, c.s());
    let f = inclusion(&c.b.k)?;
    let sigma_id = Homomorphism::scalar(m, s.sigma());
    let eta = m.quotient(c.tor()?)?.eta;
    let mut checks = Vec::new();
    for (name, phi) in [("sigma·id", sigma_id), ("M → M/tor_S(M)", eta)] {
        let g = phi.compose(&f)?;
        let b = twisted_essential_transfer(&f, &g, &phi, s)?;
        checks.push((b.holds(), format!("φ = {name}: {b:?}")));
    }
    Ok(all_of(checks, "u-S-isomorphic twists preserve essential monos"))
}

fn prop_prop10(c: &Ctx) -> Result<Eval> {
    let (m, s) = (&c.b.m, c.s());
    if m.size() > POOL_UNIVERSE {
        return Ok(Eval::skip(format!("|M| > {POOL_UNIVERSE}: outside the bounded universe")));
    }
    let mut maps = Vec::new();
    if let Some(env) = c.envelope()? {
        maps.push(("envelope", env.map.clone()));
    }
    if let Some((_, i)) = injective_envelope_zmod(m).ok().filter(|(e, _)| e.size() <= POOL_UNIVERSE) {
        maps.push(("injective envelope", i));
    }
    if maps.is_empty() {
        return Ok(Eval::skip("no envelope constructed for M"));
    }
    let mut checks = Vec::new();
    let mut pool = 0;
    for (name, i) in maps {
        if i.target().size() > POOL_UNIVERSE {
            continue;
        }
        let t = envelope_three_way(&i, s, POOL_LIMIT)?;
        pool = pool.max(t.pool_n);
        checks.push((
            t.holds(),
            format!(
                "{name}: envelope {}, into injectives {}, from extensions {} (Q pool {}, N pool {})",
                t.envelope, t.universal_into_injectives, t.universal_from_extensions, t.pool_q, t.pool_n
            ),
        ));
    }
    if checks.is_empty() {
        return Ok(Eval::skip(format!("envelope larger than {POOL_UNIVERSE}")));
    }
    let mut e = all_of(checks, "three envelope characterizations agree");
    e.witness.pool_size = Some(pool);
    Ok(e)
}

fn prop_prop11(c: &Ctx) -> Result<Eval> {
    let (m, s) = (&c.b.m, c.s());
    if m.size() > 2 * POOL_UNIVERSE {
        return Ok(Eval::skip(format!("|M| > {}: outside the bounded universe", 2 * POOL_UNIVERSE)));
    }
    let Some(p) = envelope_properties(m, s)? else {
        return Ok(Eval::skip("no envelope constructed for M"));
    };
    let mut checks = vec![(
        p.holds(),
        format!(
            "injectivity {:?}, M ≅ E(M) {}, essential N with E(N) ≅ E(M): {}/{}",
            p.injectivity, p.iso_to_envelope, p.essential_subs_matching, p.essential_subs
        ),
    )];
    if certificate_for(m, s)?.is_some() {
        if let Some(found) = injective_summand(&c.b.k, s)? {
            checks.push((
                found.found.is_some() || !found.complete,
                "M certified but E(K) is not a u-S-summand of M".into(),
            ));
        }
    }
    let mut e = all_of(checks, "envelope properties");
    e.witness.pool_size = Some(p.essential_subs);
    Ok(e)
}

fn thm_dsum_envelope(c: &Ctx) -> Result<Eval> {
    let m2 = &c.b.m2;
    let (kmod, _) = c.b.k.as_module()?;
    let mut families: Vec<Vec<Arc<FiniteModule>>> = Vec::new();
    if m2.size() * m2.size() <= SUM_LIMIT {
        families.push(vec![m2.clone(), m2.clone()]);
    }
    if kmod.size() * m2.size() <= SUM_LIMIT {
        families.push(vec![kmod, m2.clone()]);
    }
    if families.is_empty() {
        return Ok(Eval::skip(format!("every candidate sum exceeds {SUM_LIMIT} elements")));
    }
    let mut checks = Vec::new();
    for fam in families {
        if let Some(r) = envelope_of_direct_sum(&fam, c.s())? {
            checks.push((r.holds(), format!("sum of envelopes: envelope {}, ≅ direct {:?}", r.sum_is_envelope, r.iso_to_direct)));
        }
    }
    if checks.is_empty() {
        return Ok(Eval::skip("no envelope constructed for a summand"));
    }
    Ok(all_of(checks, "envelope of a finite sum is the sum of envelopes"))
}

fn thm_thm_n(c: &Ctx) -> Result<Eval> {
    let s = c.s();
    if !s.is_regular() {
        return Ok(Eval::skip("S is not regular"));
    }
    if c.b.ring.zmod_modulus().is_none() {
        return Ok(Eval::skip("injective envelopes are built over ℤ/n only"));
    }
    let mut primes = Vec::new();
    let candidates = [c.b.m.clone(), c.b.m2.clone(), c.b.k.as_module()?.0, c.b.k2.as_module()?.0];
    for m in candidates {
        if !m.is_zero() && m.is_prime()? {
            primes.push(m);
        }
    }
    if primes.is_empty() {
        return Ok(Eval::skip("no prime module among M, M2, K, K2"));
    }
    primes.sort_by_key(|m| m.size());
    let mut fam = vec![primes[0].clone()];
    if primes.len() > 1 && fits(primes[0].size() * primes[1].size()) {
        fam.push(primes[1].clone());
    }
    let mut checks = Vec::new();
    for m in &fam {
        let (e, _) = injective_envelope_zmod(m)?;
        let tor = s_torsion_submodule(&e, s)?;
        checks.push((tor.killed_by(s.sigma()), "tor_S(E(M_i)) is not u-S-torsion".to_string()));
    }
    let r = envelope_of_prime_sum(&fam, s)?;
    checks.push((r.holds(), format!("sum of prime envelopes: {r:?}")));
    Ok(all_of(checks, "prime summands, regular S"))
}

// ---- pinned examples ----

fn example_exp1(c: &Ctx) -> Result<Eval> {
    if !c.inst.is_pinned() {
        return Ok(Eval::skip("not the pinned ℤ/6 instance"));
    }
    let (k, s) = (&c.b.k, c.s());
    let fast = is_u_s_essential_fast(k, s)?;
    let oracle = is_u_s_essential_oracle(k, s)?;
    let ess = is_essential(k)?;
    let l = ess.counterexample.as_ref().map(sub_names);
    let ok = fast.verdict
        && oracle.verdict
        && !ess.verdict
        && l == Some(vec!["0".to_string(), "3".to_string()])
        && fast.witness_s2.map(|x| c.b.ring.name(x).to_string()) == Some("4".into());
    Ok(Eval::check(
        ok,
        Witness {
            method: Some(fast.method),
            witness_s: Some(c.ring_names(fast.witness_s2)),
            counterexample_l: l,
            enumeration_complete: true,
            pool_size: None,
            note: format!("u-S-essential {}, essential {}", fast.verdict, ess.verdict),
        },
    ))
}

fn example_thmn1(c: &Ctx) -> Result<Eval> {
    if !c.inst.is_pinned() {
        return Ok(Eval::skip("not the pinned ℤ/6 instance"));
    }
    let s = c.s();
    let i = inclusion(&c.b.k)?;
    let cand = check_u_s_envelope(&i, s)?;
    let baer = is_injective_baer(&c.b.m)?.verdict == InjVerdict::Injective;
    let mono = is_u_s_mono(&i, s)?.holds;
    let j = inclusion(&c.b.h)?;
    let other = check_u_s_envelope(&j, s)?;
    Ok(all_of(
        vec![
            (mono, "2ℤ6 ↪ ℤ6 is not u-S-mono".into()),
            (baer, "ℤ6 fails Baer".into()),
            (cand.is_envelope() && cand.preenvelope == Preenvelope::Yes, "2ℤ6 ↪ ℤ6 is not an envelope".into()),
            (cand.rigid == Some(true), "rigidity route disagrees".into()),
            (
                other.preenvelope == Preenvelope::Yes && !other.is_envelope(),
                "3ℤ6 ↪ ℤ6 should be a preenvelope but not an envelope".into(),
            ),
        ],
        "2ℤ6 ↪ ℤ6 is a u-S-injective u-S-envelope",
    ))
}

// ---- derived and artifact laws ----

fn lemma_sigma(c: &Ctx) -> Result<Eval> {
    let s = c.s();
    let sigma = s.sigma();
    let mut checks = Vec::new();
    for (name, m) in [("M", &c.b.m), ("M2", &c.b.m2)] {
        let t = s_torsion_submodule(m, s)?;
        let scan = s_torsion_scan(m, s)?;
        checks.push((t == scan, format!("{name}: Ker(sigma) ≠ definitional tor_S")));
    }
    let tor = c.tor()?.clone();
    for (name, n) in [("K", &c.b.k), ("H", &c.b.h), ("M", &c.b.m.whole()), ("tor", &tor), ("K2", &c.b.k2)] {
        let v = is_u_s_torsion(n, s)?.holds;
        let scan = is_u_s_torsion_scan(n, s);
        let by_sigma = n.killed_by(sigma);
        checks.push((v == scan && scan == by_sigma, format!("{name}: decider {v}, scan {scan}, sigma {by_sigma}")));
    }
    Ok(all_of(checks, "tor_S = Ker(sigma) and u-S-torsion ⇔ sigma-annihilation"))
}

fn exp2_unrealizable(c: &Ctx) -> Result<Eval> {
    let mut checks = Vec::new();
    for (name, m) in [("M", &c.b.m), ("M2", &c.b.m2)] {
        let t = s_torsion_scan(m, c.s())?;
        checks.push((is_u_s_torsion(&t, c.s())?.holds, format!("tor_S({name}) is not u-S-torsion")));
    }
    Ok(all_of(checks, "tor_S(M) is u-S-torsion"))
}

fn essential_implies_u_s(c: &Ctx) -> Result<Eval> {
    let mut checks = Vec::new();
    for (name, k) in c.subs() {
        let ess = is_essential(k)?.verdict;
        checks.push((!ess || is_u_s_essential(k, c.s())?, format!("{name} essential but not u-S-essential")));
    }
    Ok(all_of(checks, "essential ⇒ u-S-essential over a finite ring"))
}

fn baer_structure(c: &Ctx) -> Result<Eval> {
    if c.b.ring.zmod_modulus().is_none() {
        return Ok(Eval::skip("structure check is for ℤ/n"));
    }
    let mut checks = Vec::new();
    for (name, m) in [("M", &c.b.m), ("M2", &c.b.m2)] {
        let baer = is_injective_baer(m)?.passes();
        let structure = is_injective_zmod(m)?;
        checks.push((baer == structure, format!("{name}: Baer {baer}, structure {structure}")));
    }
    Ok(all_of(checks, "Baer ≡ structure classification"))
}

fn envelope_post(c: &Ctx) -> Result<Eval> {
    if c.b.ring.zmod_modulus().is_none() {
        return Ok(Eval::skip("injective envelopes are built over ℤ/n only"));
    }
    let (e, i) = injective_envelope_zmod(&c.b.m)?;
    let baer = is_injective_baer(&e)?.verdict == InjVerdict::Injective;
    let ess = is_essential(&i.image())?.verdict;
    Ok(all_of(
        vec![
            (i.is_injective(), "embedding is not injective".into()),
            (baer, format!("{} fails Baer", e.label())),
            (ess, "image is not essential".into()),
        ],
        "injective, Baer, essential image",
    ))
}

fn replay_essential(k: &Submodule, v: &EssentialVerdict, s: &MultiplicativeSet) -> Result<bool> {
    if v.verdict {
        return Ok(true);
    }
    match (&v.counterexample, v.witness_s1) {
        (Some(l), Some(s1)) => replay_refutation(k, l, s1, s),
        _ => Ok(false),
    }
}

fn replay_injectivity(rep: &InjectivityReport, s: &MultiplicativeSet) -> Result<bool> {
    if !matches!(rep.verdict, InjVerdict::Refuted | InjVerdict::NotInjective) {
        return Ok(true);
    }
    match &rep.witness {
        Some(InjWitness::Baer { ideal, h }) => replay_baer_witness(ideal, h),
        Some(InjWitness::Extension { f, h }) => replay_extension_witness(f, h, s),
        None => Ok(false),
    }
}

fn refutation_replay(c: &Ctx) -> Result<Eval> {
    let s = c.s();
    let mut checks = Vec::new();
    let mut refuted = 0;
    for (name, k) in c.subs() {
        for v in [is_u_s_essential_fast(k, s)?, oracle_over(k, s, c.lattice()?)?, quotient_characterization(k, s)?] {
            refuted += !v.verdict as usize;
            checks.push((replay_essential(k, &v, s)?, format!("{name}: {:?} refutation does not replay", v.method)));
        }
        let e = is_essential(k)?;
        if !e.verdict {
            refuted += 1;
            let ok = e
                .counterexample
                .as_ref()
                .map(|l| Ok::<bool, Error>(!l.is_zero() && k.intersect(l)?.is_zero()))
                .transpose()?
                .unwrap_or(false);
            checks.push((ok, format!("{name}: essentiality refutation does not replay")));
        }
    }
    for (name, m) in [("M", &c.b.m), ("M2", &c.b.m2)] {
        // the uncertified route runs the bounded tier, kept to the small universe
        let reps = if m.size() <= POOL_UNIVERSE {
            vec![is_injective_baer(m)?, certify_u_s_injective(m, s)?]
        } else {
            vec![is_injective_baer(m)?]
        };
        for rep in reps {
            refuted += matches!(rep.verdict, InjVerdict::Refuted | InjVerdict::NotInjective) as usize;
            checks.push((replay_injectivity(&rep, s)?, format!("{name}: {:?} witness does not replay", rep.verdict)));
        }
    }
    let mut e = all_of(checks, "every refutation replays");
    e.witness.pool_size = Some(refuted);
    Ok(e)
}

fn closure_bounded(c: &Ctx) -> Result<Eval> {
    let m2 = &c.b.m2;
    if certificate_for(m2, c.s())?.is_none() {
        return Ok(Eval::skip("M2 is not certified u-S-injective"));
    }
    if !fits(m2.size() * m2.size()) {
        return Err(Error::resource("direct sum size", (m2.size() * m2.size()) as u128, Caps::global().max_module as u128));
    }
    let e = FiniteModule::direct_sum(&[m2.clone(), m2.clone()])?.module;
    let cat = catalogue_within(&e, c.s(), SUM_LIMIT, LAW_HOM_CAP)?;
    let rep = bounded_u_s_injective_test(&e, c.s(), &cat.maps)?;
    let mut ev = Eval::check(rep.verdict == InjVerdict::BoundedPass, complete("M2 ⊕ M2 passes the bounded test"));
    ev.witness.pool_size = Some(cat.maps.len());
    ev.witness.enumeration_complete = cat.skipped == 0;
    Ok(ev)
}

macro_rules! law {
    ($id:expr, $kind:ident, $pool:expr, $summary:expr, $f:ident) => {
        Law {
            id: $id,
            kind: LawKind::$kind,
            pool: $pool,
            summary: $summary,
            check: $f,
        }
    };
}

/// Every registered law, in report order.
pub fn registry() -> &'static [Law] {
    static LAWS: &[Law] = &[
        law!("example-exp1", Theorem, None, "ℤ/6, S={1,4}: 2ℤ6 is u-S-essential, not essential (L={0,3}, s=4)", example_exp1),
        law!("def1-remark", Theorem, None, "existential s₁, s₂ definition ≡ sigma form", def1_remark),
        law!("remark-2.4", Theorem, None, "S ⊆ non-zero-divisors on M ⇒ u-S-essential ≡ essential", remark_2_4),
        law!("example-2.5-1", Theorem, None, "sigma·M = 0 ⇒ every submodule is u-S-essential", example_2_5_1),
        law!("prop-p1", Theorem, None, "u-m-essential for every maximal m ⇒ essential", prop_p1),
        law!("lemma-lemp", Theorem, None, "prime M: essential ⇒ u-S-essential", lemma_lemp),
        law!("prop-2.8", Theorem, None, "prime M: essential ≡ u-p-essential ∀p ≡ u-m-essential ∀m", prop_2_8),
        law!("thm-prop3", Theorem, None, "transitivity along chains and meets", thm_prop3),
        law!("prop-prop5", Theorem, None, "preimages and u-S-mono images", prop_prop5),
        law!("thm-prop6", Theorem, None, "K₁⊕K₂ ⊴ M₁⊕M₂ ⇔ K₁ ⊴ M₁ and K₂ ⊴ M₂", thm_prop6),
        law!("cor-coro1", Theorem, None, "finite n-fold direct sums", cor_coro1),
        law!("prop-propd", Theorem, None, "finite index sums via the element criterion", prop_propd),
        law!("thm-prop7", Theorem, None, "element criterion ≡ lattice oracle", thm_prop7),
        law!("cor-cor4", Theorem, None, "S = {1}: u-S-essential ≡ essential", cor_cor4),
        law!("thm-2.17", Theorem, None, "u-S-complements: K+K' and (K+K')/K' are u-S-essential", thm_2_17),
        law!("prop-prop1", Theorem, Some("η_L: M → M/L for every L ≤ M"), "essential ≡ quotient-map characterization", prop_prop1),
        law!("cor-cor1", Theorem, Some("η_L: N → N/L for every L ≤ target"), "u-S-essential monos via quotient maps", cor_cor1),
        law!("prop-prop9", Theorem, None, "envelopes are unique up to u-S-isomorphism", prop_prop9),
        law!("prop-prn2", Theorem, None, "a preenvelope is u-S-isomorphic to envelope ⊕ B", prop_prn2),
        law!("lemma-lem1", Theorem, Some("default catalogue: inclusions into R, E and pairwise sums of ≤ 32 elements, plus u-S-torsion quotients; Hom sets ≤ 4096"), "certified ⇒ uniform extension property", lemma_lem1),
        law!("prop-propn1", Theorem, Some("certified modules among R/I and pairwise sums of size ≤ 12, plus M, M2 and E(M)"), "preenvelope ⇔ u-S-mono into a u-S-injective", prop_propn1),
        law!("thm-thmn1", Theorem, None, "envelope ⇔ essential image (both routes agree)", thm_thmn1),
        law!("example-thmn1", Theorem, None, "2ℤ6 ↪ ℤ6 is a u-S-injective u-S-envelope", example_thmn1),
        law!("lemma-lem4", Theorem, None, "u-S-isomorphic twists preserve essential monos", lemma_lem4),
        law!("prop-prop10", Theorem, Some("Q, N among R/I and pairwise sums of size ≤ 12, plus M, E"), "three characterizations of envelopes", prop_prop10),
        law!("prop-prop11", Theorem, Some("essential submodules of M; summands searched in M"), "envelope properties", prop_prop11),
        law!("thm-dsum-envelope", Theorem, None, "envelope of a finite sum is the sum of envelopes", thm_dsum_envelope),
        law!("thm-thmN", Theorem, None, "prime summands over regular S", thm_thm_n),
        law!("lemma-sigma", Derived, None, "tor_S = Ker(sigma); u-S-torsion ⇔ sigma-annihilation", lemma_sigma),
        law!("exp2-unrealizable", Derived, None, "tor_S(M) is always u-S-torsion for finite S", exp2_unrealizable),
        law!("essential-implies-u-s", Derived, None, "essential ⇒ u-S-essential over finite rings", essential_implies_u_s),
        law!("baer-structure", Artifact, None, "Baer test ≡ structure classification over ℤ/n", baer_structure),
        law!("envelope-post", Artifact, None, "injective envelope outputs are injective with essential image", envelope_post),
        law!("refutation-replay", Artifact, None, "refutations replay from their witnesses", refutation_replay),
        law!("closure-bounded", Artifact, Some("default catalogue of M2 ⊕ M2: pairwise sums of ≤ 32 elements; Hom sets ≤ 4096"), "sums of certified modules pass the bounded test", closure_bounded),
    ];
    LAWS
}

pub fn find_law(id: &str) -> Option<&'static Law> {
    registry().iter().find(|l| l.id == id)
}

#[derive(Debug, Clone, Serialize)]
pub struct LawResult {
    pub instance: Instance,
    pub law: String,
    pub verdict: Verdict,
    #[serde(flatten)]
    pub witness: Witness,
    pub label: String,
    pub wall_time_ms: f64,
}

/// Evaluates one law; resource exhaustion becomes `skipped-resource`, other errors `error`.
pub fn evaluate(law: &Law, ctx: &Ctx) -> Eval {
    match (law.check)(ctx) {
        Ok(e) => e,
        Err(e) if e.is_resource() => Eval {
            verdict: Verdict::SkippedResource,
            witness: Witness {
                note: e.to_string(),
                ..Witness::default()
            },
        },
        Err(e) => Eval {
            verdict: Verdict::Error,
            witness: Witness {
                note: e.to_string(),
                ..Witness::default()
            },
        },
    }
}

fn selected(filter: Option<&str>) -> Result<Vec<&'static Law>> {
    match filter {
        None => Ok(registry().iter().collect()),
        Some(id) => find_law(id)
            .map(|l| vec![l])
            .ok_or_else(|| Error::Config(format!("unknown law `{id}`"))),
    }
}

fn run_instance(inst: &Instance, laws: &[&'static Law]) -> Vec<LawResult> {
    let built = inst.build();
    let (label, ctx_built) = match &built {
        Ok(b) => (b.label(), Some(b)),
        Err(_) => (String::new(), None),
    };
    let ctx = ctx_built.map(|b| Ctx::new(inst, b));
    laws.iter()
        .map(|law| {
            let start = Instant::now();
            let eval = match (&ctx, &built) {
                (Some(ctx), _) => evaluate(law, ctx),
                (None, Err(e)) => Eval {
                    verdict: if e.is_resource() { Verdict::SkippedResource } else { Verdict::Error },
                    witness: Witness {
                        note: e.to_string(),
                        ..Witness::default()
                    },
                },
                (None, Ok(_)) => unreachable!(),
            };
            LawResult {
                law: law.id.to_string(),
                instance: inst.clone(),
                label: label.clone(),
                verdict: eval.verdict,
                witness: eval.witness,
                wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

/// All selected laws on every instance, in (instance, registry) order.
pub fn run_laws(corpus: &[Instance], filter: Option<&str>) -> Result<Vec<LawResult>> {
    let laws = selected(filter)?;
    let per_instance: Vec<Vec<LawResult>> = corpus.par_iter().map(|inst| run_instance(inst, &laws)).collect();
    Ok(per_instance.into_iter().flatten().collect())
}

/// Re-runs the law of a result on its serialized instance.
pub fn replay(result: &LawResult) -> Result<Verdict> {
    let law = find_law(&result.law).ok_or_else(|| Error::Config(format!("unknown law `{}`", result.law)))?;
    let inst = Instance::from_json(&result.instance.to_json())?;
    Ok(run_instance(&inst, &[law])[0].verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = registry().iter().map(|l| l.id).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn pinned_instance_satisfies_every_law() {
        let results = run_laws(&[Instance::pinned()], None).unwrap();
        for r in &results {
            assert!(!r.verdict.is_failure(), "{}: {:?} {}", r.law, r.verdict, r.witness.note);
        }
        let exp1 = results.iter().find(|r| r.law == "example-exp1").unwrap();
        assert_eq!(exp1.verdict, Verdict::Holds);
        assert_eq!(exp1.witness.counterexample_l, Some(vec!["0".into(), "3".into()]));
        assert_eq!(exp1.witness.witness_s, Some(vec!["4".into()]));
        let env = results.iter().find(|r| r.law == "example-thmn1").unwrap();
        assert_eq!(env.verdict, Verdict::Holds);
    }

    #[test]
    fn unknown_filter_is_a_config_error() {
        assert!(matches!(run_laws(&[], Some("no-such-law")), Err(Error::Config(_))));
        assert!(run_laws(&[], None).unwrap().is_empty());
    }
}
