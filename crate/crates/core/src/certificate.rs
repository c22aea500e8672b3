//! JSON certificates for envelope candidates and injectivity reports.

use std::sync::Arc;

use serde::Serialize;

use crate::envelope::{check_u_s_envelope, construct_u_s_envelope, EnvelopeCandidate, Preenvelope};
use crate::error::Result;
use crate::essential::{EssentialVerdict, Method};
use crate::hom::Homomorphism;
use crate::injective::{
    bounded_u_s_injective_test, certify_u_s_injective, default_catalogue, replay_baer_witness, replay_extension_witness,
    Certificate, InjVerdict, InjWitness, InjectivityReport,
};
use crate::module::{FiniteModule, Submodule};
use crate::mset::MultiplicativeSet;
use crate::torsion::is_u_s_mono;

fn names(m: &FiniteModule, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| m.name(x).to_string()).collect()
}

fn sub_names(k: &Submodule) -> Vec<String> {
    names(k.parent(), k.to_vec())
}

/// A map as `[source element, image]` pairs.
#[derive(Debug, Clone, Serialize)]
pub struct MapJson {
    pub source: String,
    pub target: String,
    pub pairs: Vec<[String; 2]>,
}

impl MapJson {
    pub fn of(f: &Homomorphism) -> MapJson {
        let (a, b) = (f.source(), f.target());
        MapJson {
            source: a.label().to_string(),
            target: b.label().to_string(),
            pairs: (0..a.size()).map(|x| [a.name(x).to_string(), b.name(f.apply(x)).to_string()]).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleJson {
    pub label: String,
    pub size: usize,
    pub elements: Vec<String>,
}

impl ModuleJson {
    pub fn of(m: &Arc<FiniteModule>) -> ModuleJson {
        ModuleJson {
            label: m.label().to_string(),
            size: m.size(),
            elements: m.names().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EssentialJson {
    pub verdict: bool,
    pub method: Method,
    pub witness_s: Option<Vec<String>>,
    #[serde(rename = "counterexample_L")]
    pub counterexample_l: Option<Vec<String>>,
}

impl EssentialJson {
    pub fn of(v: &EssentialVerdict, s: &MultiplicativeSet) -> EssentialJson {
        let ring = s.ring();
        let witness_s = [v.witness_s1, v.witness_s2]
            .iter()
            .flatten()
            .map(|&x| ring.name(x).to_string())
            .collect::<Vec<_>>();
        EssentialJson {
            verdict: v.verdict,
            method: v.method,
            witness_s: (!witness_s.is_empty()).then_some(witness_s),
            counterexample_l: v.counterexample.as_ref().map(sub_names),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeWitnesses {
    pub map: MapJson,
    /// s with s·Ker(f) = 0.
    pub mono_s: Option<String>,
    pub preenvelope: Preenvelope,
    /// Definitional rigidity of End(E); `None` when End(E) exceeds the cap.
    pub rigid: Option<bool>,
    /// The essential-image and rigidity routes agree (or rigidity was not computed).
    pub routes_agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeCertificate {
    pub module: ModuleJson,
    #[serde(rename = "candidate_E")]
    pub candidate_e: Option<ModuleJson>,
    pub certificate_tier: Option<Certificate>,
    pub essential_verdict: Option<EssentialJson>,
    pub witnesses: Option<EnvelopeWitnesses>,
    pub catalogue_size: usize,
    /// "envelope", "not-envelope" or "unknown" (no candidate constructed).
    pub verdict: &'static str,
}

impl EnvelopeCertificate {
    pub fn is_envelope(&self) -> bool {
        self.verdict == "envelope"
    }
}

fn certificate_of(m: &Arc<FiniteModule>, cand: Option<EnvelopeCandidate>, s: &MultiplicativeSet) -> Result<EnvelopeCertificate> {
    let Some(c) = cand else {
        return Ok(EnvelopeCertificate {
            module: ModuleJson::of(m),
            candidate_e: None,
            certificate_tier: None,
            essential_verdict: None,
            witnesses: None,
            catalogue_size: 0,
            verdict: "unknown",
        });
    };
    let e = c.map.target();
    let catalogue_size = if c.certificate == Some(Certificate::BoundedPass) {
        default_catalogue(e, s)?.maps.len()
    } else {
        0
    };
    let mono = is_u_s_mono(&c.map, s)?;
    Ok(EnvelopeCertificate {
        module: ModuleJson::of(m),
        candidate_e: Some(ModuleJson::of(e)),
        certificate_tier: c.certificate,
        essential_verdict: Some(EssentialJson::of(&c.essential, s)),
        witnesses: Some(EnvelopeWitnesses {
            map: MapJson::of(&c.map),
            mono_s: mono.witness.map(|w| s.ring().name(w.s).to_string()),
            preenvelope: c.preenvelope,
            rigid: c.rigid,
            routes_agree: c.routes_agree(),
        }),
        catalogue_size,
        verdict: if c.is_envelope() { "envelope" } else { "not-envelope" },
    })
}

/// Constructs an envelope of M (best effort) and certifies it.
pub fn envelope_certificate(m: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<EnvelopeCertificate> {
    certificate_of(m, construct_u_s_envelope(m, s)?, s)
}

/// Certifies a user-supplied candidate f: M → E.
pub fn candidate_certificate(f: &Homomorphism, s: &MultiplicativeSet) -> Result<EnvelopeCertificate> {
    certificate_of(f.source(), Some(check_u_s_envelope(f, s)?), s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// Certificates first, bounded test as fallback.
    Certify,
    /// Bounded test against the default catalogue only.
    Bounded,
    /// Bounded test, reporting a refutation with its replay.
    Refute,
}

impl std::str::FromStr for Tier {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Tier> {
        match s {
            "certify" => Ok(Tier::Certify),
            "bounded" => Ok(Tier::Bounded),
            "refute" => Ok(Tier::Refute),
            _ => Err(crate::error::Error::Config(format!("unknown tier `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InjWitnessJson {
    Baer { ideal: Vec<String>, h: MapJson },
    Extension { f: MapJson, h: MapJson },
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectivityJson {
    pub module: ModuleJson,
    pub tier: &'static str,
    pub verdict: InjVerdict,
    pub certificate: Option<Certificate>,
    pub witness: Option<InjWitnessJson>,
    /// The witness re-verified by an exhaustive scan.
    pub witness_replays: Option<bool>,
    pub catalogue_size: usize,
    pub skipped: usize,
}

impl InjectivityJson {
    pub fn refuted(&self) -> bool {
        matches!(self.verdict, InjVerdict::Refuted | InjVerdict::NotInjective)
    }
}

pub fn injectivity_report(e: &Arc<FiniteModule>, s: &MultiplicativeSet, tier: Tier) -> Result<InjectivityJson> {
    let rep: InjectivityReport = match tier {
        Tier::Certify => certify_u_s_injective(e, s)?,
        Tier::Bounded | Tier::Refute => {
            let cat = default_catalogue(e, s)?;
            let mut r = bounded_u_s_injective_test(e, s, &cat.maps)?;
            r.skipped = cat.skipped;
            r
        }
    };
    let (witness, witness_replays) = match &rep.witness {
        Some(InjWitness::Baer { ideal, h }) => (
            Some(InjWitnessJson::Baer {
                ideal: ideal.members().to_vec().into_iter().map(|x| ideal.ring().name(x).to_string()).collect(),
                h: MapJson::of(h),
            }),
            Some(replay_baer_witness(ideal, h)?),
        ),
        Some(InjWitness::Extension { f, h }) => (
            Some(InjWitnessJson::Extension {
                f: MapJson::of(f),
                h: MapJson::of(h),
            }),
            Some(replay_extension_witness(f, h, s)?),
        ),
        None => (None, None),
    };
    Ok(InjectivityJson {
        module: ModuleJson::of(e),
        tier: match tier {
            Tier::Certify => "certify",
            Tier::Bounded => "bounded",
            Tier::Refute => "refute",
        },
        verdict: rep.verdict,
        certificate: rep.certificate,
        witness,
        witness_replays,
        catalogue_size: rep.catalogue_size,
        skipped: rep.skipped,
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
    fn envelope_of_two_z6() {
        let (m, s) = z6();
        let (k, _) = m.span(&[2]).unwrap().as_module().unwrap();
        let cert = envelope_certificate(&k, &s).unwrap();
        assert!(cert.is_envelope());
        assert!(cert.essential_verdict.as_ref().unwrap().verdict);
        let json = serde_json::to_string(&cert).unwrap();
        let order = ["candidate_E", "certificate_tier", "essential_verdict", "witnesses", "catalogue_size"];
        let pos: Vec<usize> = order.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn three_tor_inclusion_is_not_an_envelope() {
        let (m, s) = z6();
        let (_, inc) = m.span(&[3]).unwrap().as_module().unwrap();
        let cert = candidate_certificate(&inc, &s).unwrap();
        assert_eq!(cert.verdict, "not-envelope");
        assert!(cert.essential_verdict.unwrap().counterexample_l.is_some());
    }

    #[test]
    fn refute_tier_replays() {
        let r = FiniteRing::zmod(4).unwrap();
        let s = MultiplicativeSet::units(&r);
        let (e, _) = FiniteModule::regular(&r).span(&[2]).unwrap().as_module().unwrap();
        let rep = injectivity_report(&e, &s, Tier::Refute).unwrap();
        assert!(rep.refuted());
        assert_eq!(rep.witness_replays, Some(true));
        let cert = injectivity_report(&FiniteModule::regular(&r), &s, Tier::Certify).unwrap();
        assert_eq!(cert.certificate, Some(Certificate::InjectiveBaer));
    }
}
