//! S-torsion, u-S-torsion and the u-S versions of mono/epi/iso, exactness and splitting.
//!
//! For a finite S the product `sigma` of all members kills every module that
//! some member kills, so the uniform notions reduce to annihilation by `sigma`.
//! Reported witnesses are always the smallest member (in element order) that works.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{hom_for_each, Homomorphism};
use crate::module::{same_module, FiniteModule, Submodule};
use crate::mset::MultiplicativeSet;
use crate::ring::same_ring;
use crate::subset::ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessRole {
    KillsModule,
    KillsKernel,
    KillsCokernel,
    Splits,
    Exactness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct USWitness {
    pub s: usize,
    pub role: WitnessRole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionVerdict {
    pub holds: bool,
    pub witness: Option<USWitness>,
}

fn check_ring(m: &FiniteModule, s: &MultiplicativeSet) -> Result<()> {
    if same_ring(m.ring(), s.ring()) {
        Ok(())
    } else {
        Err(Error::domain("multiplicative set over a different ring"))
    }
}

/// tor_S(M) computed as the kernel of multiplication by sigma.
pub fn s_torsion_submodule(m: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<Submodule> {
    check_ring(m, s)?;
    let sigma = s.sigma();
    let members = ElemSet::from_iter_in(m.size(), m.elements().filter(|&x| m.act(sigma, x) == m.zero()));
    Ok(Submodule::from_members_unchecked(m, members))
}

/// tor_S(M) by the definition: elements killed by some member of S.
pub fn s_torsion_scan(m: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<Submodule> {
    check_ring(m, s)?;
    let members = ElemSet::from_iter_in(
        m.size(),
        m.elements().filter(|&x| s.iter().any(|t| m.act(t, x) == m.zero())),
    );
    Ok(Submodule::from_members_unchecked(m, members))
}

/// Smallest member of S killing every element of `n`.
pub fn smallest_killer(n: &Submodule, s: &MultiplicativeSet) -> Option<usize> {
    s.iter().find(|&t| n.killed_by(t))
}

/// sigma·N = 0, with the smallest killing member as witness.
pub fn is_u_s_torsion(n: &Submodule, s: &MultiplicativeSet) -> Result<TorsionVerdict> {
    check_ring(n.parent(), s)?;
    Ok(torsion_verdict(n, s, WitnessRole::KillsModule))
}

fn torsion_verdict(n: &Submodule, s: &MultiplicativeSet, role: WitnessRole) -> TorsionVerdict {
    if n.killed_by(s.sigma()) {
        let w = smallest_killer(n, s).unwrap_or(s.sigma());
        TorsionVerdict {
            holds: true,
            witness: Some(USWitness { s: w, role }),
        }
    } else {
        TorsionVerdict {
            holds: false,
            witness: None,
        }
    }
}

pub fn is_u_s_torsion_module(m: &Arc<FiniteModule>, s: &MultiplicativeSet) -> Result<TorsionVerdict> {
    is_u_s_torsion(&m.whole(), s)
}

/// Definitional existential scan: some member of S kills N.
pub fn is_u_s_torsion_scan(n: &Submodule, s: &MultiplicativeSet) -> bool {
    s.iter().any(|t| n.killed_by(t))
}

/// Ker(f) is u-S-torsion.
pub fn is_u_s_mono(f: &Homomorphism, s: &MultiplicativeSet) -> Result<TorsionVerdict> {
    check_ring(f.source(), s)?;
    Ok(torsion_verdict(&f.kernel(), s, WitnessRole::KillsKernel))
}

/// Coker(f) = target/Im(f) is u-S-torsion.
pub fn is_u_s_epi(f: &Homomorphism, s: &MultiplicativeSet) -> Result<TorsionVerdict> {
    check_ring(f.source(), s)?;
    let coker = f.target().quotient(&f.image())?;
    Ok(torsion_verdict(&coker.module.whole(), s, WitnessRole::KillsCokernel))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoVerdict {
    pub mono: TorsionVerdict,
    pub epi: TorsionVerdict,
}

impl IsoVerdict {
    pub fn holds(&self) -> bool {
        self.mono.holds && self.epi.holds
    }
}

pub fn is_u_s_iso(f: &Homomorphism, s: &MultiplicativeSet) -> Result<IsoVerdict> {
    Ok(IsoVerdict {
        mono: is_u_s_mono(f, s)?,
        epi: is_u_s_epi(f, s)?,
    })
}

/// A →f B →g C is u-S-exact: some s has s·Ker(g) ⊆ Im(f) and s·Im(f) ⊆ Ker(g).
pub fn is_u_s_exact(f: &Homomorphism, g: &Homomorphism, s: &MultiplicativeSet) -> Result<Option<USWitness>> {
    if !same_module(f.target(), g.source()) {
        return Err(Error::domain("target of f is not the source of g"));
    }
    check_ring(f.source(), s)?;
    let (ker, im) = (g.kernel(), f.image());
    Ok(s.iter()
        .find(|&t| ker.scaled(t).is_subset(&im) && im.scaled(t).is_subset(&ker))
        .map(|t| USWitness {
            s: t,
            role: WitnessRole::Exactness,
        }))
}

#[derive(Debug, Clone)]
pub struct SplitWitness {
    pub s: usize,
    /// f' with f'∘f = s·1_M.
    pub retraction: Homomorphism,
}

/// Searches Hom(N, M) for f' and s ∈ S with f'∘f = s·1_M.
pub fn is_u_s_split(f: &Homomorphism, s: &MultiplicativeSet, cap: u128) -> Result<Option<SplitWitness>> {
    if !is_u_s_mono(f, s)?.holds {
        return Err(Error::PreconditionViolated("map is not a u-S-monomorphism".into()));
    }
    let m = f.source();
    let members: Vec<usize> = s.iter().collect();
    let targets: Vec<Vec<usize>> = members
        .iter()
        .map(|&t| m.elements().map(|x| m.act(t, x)).collect())
        .collect();
    let mut best: Option<(usize, Homomorphism)> = None;
    hom_for_each(f.target(), m, cap, |fp| {
        let composite: Vec<usize> = f.map().iter().map(|&y| fp.apply(y)).collect();
        for (i, target) in targets.iter().enumerate() {
            if best.as_ref().is_some_and(|(b, _)| *b <= i) {
                break;
            }
            if &composite == target {
                best = Some((i, fp.clone()));
                break;
            }
        }
        // the smallest member cannot be beaten
        !matches!(best, Some((0, _)))
    })?;
    Ok(best.map(|(i, retraction)| SplitWitness {
        s: members[i],
        retraction,
    }))
}

#[derive(Debug, Clone)]
pub enum IsoSearch {
    Found(Homomorphism),
    /// Enumeration of Hom(A, B) completed without a u-S-isomorphism.
    NoneFound,
}

impl IsoSearch {
    pub fn found(&self) -> Option<&Homomorphism> {
        match self {
            IsoSearch::Found(h) => Some(h),
            IsoSearch::NoneFound => None,
        }
    }
}

/// First map A → B (enumeration order) that is a u-S-isomorphism.
/// An incomplete enumeration is an error, never `NoneFound`.
pub fn find_u_s_isomorphism(
    a: &Arc<FiniteModule>,
    b: &Arc<FiniteModule>,
    s: &MultiplicativeSet,
    cap: u128,
) -> Result<IsoSearch> {
    check_ring(a, s)?;
    let sigma = s.sigma();
    // |sigma·A| and |sigma·B| agree for u-S-isomorphic modules
    let scaled = |m: &Arc<FiniteModule>| m.whole().scaled(sigma).len();
    if scaled(a) != scaled(b) {
        return Ok(IsoSearch::NoneFound);
    }
    if same_module(a, b) {
        return Ok(IsoSearch::Found(Homomorphism::identity(a)));
    }
    let mut found = None;
    let mut err = None;
    hom_for_each(a, b, cap, |f| match is_u_s_iso(&f, s) {
        Ok(v) if v.holds() => {
            found = Some(f);
            false
        }
        Ok(_) => true,
        Err(e) => {
            err = Some(e);
            false
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(match found {
        Some(f) => IsoSearch::Found(f),
        None => IsoSearch::NoneFound,
    })
}
