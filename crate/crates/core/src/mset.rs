//! Finite multiplicative subsets and their uniform witness `sigma`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{same_ring, FiniteRing, Ideal};
use crate::subset::ElemSet;

#[derive(Clone)]
pub struct MultiplicativeSet {
    ring: Arc<FiniteRing>,
    members: ElemSet,
    sigma: usize,
}

impl fmt::Debug for MultiplicativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultSet{} sigma={}", self.display(), self.ring.name(self.sigma))
    }
}

impl PartialEq for MultiplicativeSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_ring(&self.ring, &other.ring)
    }
}

impl MultiplicativeSet {
    /// Validates an explicit member set.
    pub fn new(ring: &Arc<FiniteRing>, members: ElemSet) -> Result<MultiplicativeSet> {
        if members.universe() != ring.size() {
            return Err(Error::domain("member set over the wrong ring"));
        }
        if !members.contains(ring.one()) {
            return Err(Error::InvalidMultiplicativeSet("1 is not a member".into()));
        }
        if members.contains(ring.zero()) {
            return Err(Error::InvalidMultiplicativeSet("0 is a member".into()));
        }
        for s in members.iter() {
            for t in members.iter() {
                if !members.contains(ring.mul(s, t)) {
                    return Err(Error::InvalidMultiplicativeSet(format!(
                        "{}*{} is not a member",
                        ring.name(s),
                        ring.name(t)
                    )));
                }
            }
        }
        let sigma = members.iter().fold(ring.one(), |acc, s| ring.mul(acc, s));
        Ok(MultiplicativeSet {
            ring: ring.clone(),
            members,
            sigma,
        })
    }

    /// Smallest multiplicatively closed set containing `generators` and 1.
    pub fn closure(ring: &Arc<FiniteRing>, generators: &[usize]) -> Result<MultiplicativeSet> {
        if generators.is_empty() {
            return Err(Error::domain("closure needs at least one generator"));
        }
        let n = ring.size();
        if let Some(&g) = generators.iter().find(|&&g| g >= n) {
            return Err(Error::domain(format!("element {g} not in ring")));
        }
        let mut members = ElemSet::singleton(n, ring.one());
        let mut frontier = vec![ring.one()];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = ring.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        if members.contains(ring.zero()) {
            return Err(Error::InvalidMultiplicativeSet(
                "closure of the generators contains 0".into(),
            ));
        }
        Self::new(ring, members)
    }

    pub fn trivial(ring: &Arc<FiniteRing>) -> MultiplicativeSet {
        Self::new(ring, ElemSet::singleton(ring.size(), ring.one())).expect("{1} is always valid")
    }

    pub fn units(ring: &Arc<FiniteRing>) -> MultiplicativeSet {
        Self::new(ring, ElemSet::from_iter_in(ring.size(), ring.units()))
            .expect("unit group is multiplicative")
    }

    /// R ∖ p for a prime ideal p.
    pub fn complement_of_prime(ring: &Arc<FiniteRing>, p: &Ideal) -> Result<MultiplicativeSet> {
        if !same_ring(ring, p.ring()) {
            return Err(Error::domain("prime ideal belongs to a different ring"));
        }
        if !p.is_prime() {
            return Err(Error::NotPrime);
        }
        Self::new(ring, ElemSet::full(ring.size()).difference(p.members()))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    /// Members in sorted index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Product of all members; kills whatever any member kills.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// True iff every member is a nonzerodivisor of the ring.
    pub fn is_regular(&self) -> bool {
        self.members.iter().all(|s| !self.ring.is_zero_divisor(s))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn display(&self) -> String {
        let names: Vec<&str> = self.members.iter().map(|x| self.ring.name(x)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// u-S-Noetherian witness: `s` and, per ideal, the finitely generated sub-ideal J with sI ⊆ J.
#[derive(Debug, Clone)]
pub struct NoetherianWitness {
    pub s: usize,
    pub sub_ideals: Vec<(Ideal, Ideal)>,
}

/// Every ideal of a finite ring is generated by its own elements, so `s = 1`
/// and `J = I` always work; the inclusion `sI ⊆ J` is still checked literally.
pub fn u_s_noetherian(ring: &Arc<FiniteRing>, s: &MultiplicativeSet) -> Option<NoetherianWitness> {
    let ideals = crate::ring::all_ideals(ring);
    for cand in s.iter() {
        let mut pairs = Vec::with_capacity(ideals.len());
        let ok = ideals.iter().all(|i| {
            let gens = i.members().to_vec();
            let j = Ideal::generated(ring, &gens).expect("members are ring elements");
            let fits = i.members().iter().all(|x| j.contains(ring.mul(cand, x)));
            if fits {
                pairs.push((i.clone(), j));
            }
            fits
        });
        if ok {
            return Some(NoetherianWitness {
                s: cand,
                sub_ideals: pairs,
            });
        }
    }
    None
}
