//! R-linear maps between finite modules and their enumeration.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::{same_module, FiniteModule, Submodule};
use crate::subset::ElemSet;

#[derive(Clone)]
pub struct Homomorphism {
    source: Arc<FiniteModule>,
    target: Arc<FiniteModule>,
    map: Vec<usize>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom[{} -> {}]", self.source.label(), self.target.label())?;
        f.debug_map()
            .entries(self.map.iter().enumerate().map(|(x, &y)| (self.source.name(x), self.target.name(y))))
            .finish()
    }
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && same_module(&self.source, &other.source)
            && same_module(&self.target, &other.target)
    }
}

impl Eq for Homomorphism {}

impl Homomorphism {
    /// Validates additivity and R-linearity exhaustively.
    pub fn new(source: Arc<FiniteModule>, target: Arc<FiniteModule>, map: Vec<usize>) -> Result<Self> {
        if !crate::ring::same_ring(source.ring(), target.ring()) {
            return Err(Error::domain("modules over different rings"));
        }
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(Error::domain("map has the wrong shape"));
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.add(x, y)] != target.add(map[x], map[y]) {
                    return Err(Error::domain("map is not additive"));
                }
            }
            for r in source.ring().elements() {
                if map[source.act(r, x)] != target.act(r, map[x]) {
                    return Err(Error::domain("map is not R-linear"));
                }
            }
        }
        Ok(Homomorphism { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteModule>, target: Arc<FiniteModule>, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), source.size());
        Homomorphism { source, target, map }
    }

    pub fn identity(m: &Arc<FiniteModule>) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), m.elements().collect())
    }

    pub fn zero(source: &Arc<FiniteModule>, target: &Arc<FiniteModule>) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), vec![target.zero(); source.size()])
    }

    /// x ↦ r·x on M.
    pub fn scalar(m: &Arc<FiniteModule>, r: usize) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), m.elements().map(|x| m.act(r, x)).collect())
    }

    /// The unique map determined by images of a generating set, if it is well defined.
    pub fn from_generator_images(
        source: &Arc<FiniteModule>,
        target: &Arc<FiniteModule>,
        images: &[(usize, usize)],
    ) -> Result<Self> {
        if !crate::ring::same_ring(source.ring(), target.ring()) {
            return Err(Error::domain("modules over different rings"));
        }
        let mut phi = vec![usize::MAX; source.size()];
        phi[source.zero()] = target.zero();
        let mut dom = vec![source.zero()];
        for &(g, y) in images {
            if g >= source.size() || y >= target.size() {
                return Err(Error::domain("generator image out of range"));
            }
            match extend(source, target, &phi, &dom, g, y) {
                Some((p, d)) => {
                    phi = p;
                    dom = d;
                }
                None => return Err(Error::domain("generator images are not compatible with the relations")),
            }
        }
        if dom.len() != source.size() {
            return Err(Error::domain("the given elements do not generate the source"));
        }
        Ok(Self::new_unchecked(source.clone(), target.clone(), phi))
    }

    pub fn source(&self) -> &Arc<FiniteModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteModule> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        if !same_module(&inner.target, &self.source) {
            return Err(Error::domain("maps are not composable"));
        }
        Ok(Self::new_unchecked(
            inner.source.clone(),
            self.target.clone(),
            inner.map.iter().map(|&x| self.map[x]).collect(),
        ))
    }

    pub fn add(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if !same_module(&self.source, &other.source) || !same_module(&self.target, &other.target) {
            return Err(Error::domain("maps have different source or target"));
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.map.iter().zip(&other.map).map(|(&a, &b)| self.target.add(a, b)).collect(),
        ))
    }

    /// s·f.
    pub fn scale(&self, s: usize) -> Homomorphism {
        Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.map.iter().map(|&y| self.target.act(s, y)).collect(),
        )
    }

    pub fn kernel(&self) -> Submodule {
        let members = ElemSet::from_iter_in(
            self.source.size(),
            self.source.elements().filter(|&x| self.map[x] == self.target.zero()),
        );
        Submodule::from_members_unchecked(&self.source, members)
    }

    pub fn image(&self) -> Submodule {
        Submodule::from_members_unchecked(
            &self.target,
            ElemSet::from_iter_in(self.target.size(), self.map.iter().copied()),
        )
    }

    /// f(K) for K ≤ source.
    pub fn image_of(&self, k: &Submodule) -> Result<Submodule> {
        if !same_module(k.parent(), &self.source) {
            return Err(Error::domain("submodule is not in the source"));
        }
        Ok(Submodule::from_members_unchecked(
            &self.target,
            ElemSet::from_iter_in(self.target.size(), k.members().iter().map(|x| self.map[x])),
        ))
    }

    /// f⁻¹(Q) for Q ≤ target.
    pub fn preimage(&self, q: &Submodule) -> Result<Submodule> {
        if !same_module(q.parent(), &self.target) {
            return Err(Error::domain("submodule is not in the target"));
        }
        Ok(Submodule::from_members_unchecked(
            &self.source,
            ElemSet::from_iter_in(self.source.size(), self.source.elements().filter(|&x| q.contains(self.map[x]))),
        ))
    }

    /// Restriction to a submodule of the source, viewed as a module.
    pub fn restrict(&self, k: &Submodule) -> Result<Homomorphism> {
        let (_, inc) = k.as_module()?;
        self.compose(&inc)
    }

    /// Same map with the target replaced by a submodule containing the image.
    pub fn corestrict(&self, onto: &Submodule) -> Result<Homomorphism> {
        if !same_module(onto.parent(), &self.target) || !self.image().is_subset(onto) {
            return Err(Error::domain("image is not contained in the given submodule"));
        }
        let (sub, inc) = onto.as_module()?;
        let mut index = vec![usize::MAX; self.target.size()];
        for (i, &x) in inc.map().iter().enumerate() {
            index[x] = i;
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            sub,
            self.map.iter().map(|&y| index[y]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_identity(&self) -> bool {
        same_module(&self.source, &self.target) && self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&y| y == self.target.zero())
    }
}

/// Extends a partial map defined on the submodule `dom` by sending `g ↦ y`.
/// Returns `None` when the extension is not well defined.
fn extend(
    source: &FiniteModule,
    target: &FiniteModule,
    phi: &[usize],
    dom: &[usize],
    g: usize,
    y: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut phi = phi.to_vec();
    let mut new_dom = dom.to_vec();
    for r in source.ring().elements() {
        let rg = source.act(r, g);
        let ry = target.act(r, y);
        for &a in dom {
            let x = source.add(a, rg);
            let v = target.add(phi[a], ry);
            if phi[x] == usize::MAX {
                phi[x] = v;
                new_dom.push(x);
            } else if phi[x] != v {
                return None;
            }
        }
    }
    Some((phi, new_dom))
}

/// A greedily chosen generating set: each step adds the element that grows the span most.
pub fn generating_set(m: &Arc<FiniteModule>) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = m.zero_sub();
    while !span.is_whole() {
        let mut best: Option<(usize, Submodule)> = None;
        for x in m.elements() {
            if span.contains(x) {
                continue;
            }
            let cand = span.sum(&m.cyclic(x).expect("in range")).expect("same parent");
            if best.as_ref().is_none_or(|(_, b)| cand.len() > b.len()) {
                best = Some((x, cand));
            }
        }
        let (x, s) = best.expect("span is proper so some element is outside");
        gens.push(x);
        span = s;
    }
    gens
}

/// Admissible images for `g`: elements killed by everything that kills `g`.
fn candidate_images(source: &FiniteModule, target: &FiniteModule, g: usize) -> Vec<usize> {
    let ann: Vec<usize> = source
        .ring()
        .elements()
        .filter(|&r| source.act(r, g) == source.zero())
        .collect();
    target
        .elements()
        .filter(|&y| ann.iter().all(|&r| target.act(r, y) == target.zero()))
        .collect()
}

/// Upper bound on |Hom(M, N)| used to guard enumeration.
pub fn hom_count_bound(m: &Arc<FiniteModule>, n: &Arc<FiniteModule>) -> u128 {
    generating_set(m)
        .iter()
        .map(|&g| candidate_images(m, n, g).len() as u128)
        .fold(1u128, |a, b| a.saturating_mul(b))
}

/// All R-linear maps M → N in deterministic order.
pub fn hom_enumerate(m: &Arc<FiniteModule>, n: &Arc<FiniteModule>, cap: u128) -> Result<Vec<Homomorphism>> {
    let mut out = Vec::new();
    hom_for_each(m, n, cap, |h| {
        out.push(h);
        true
    })?;
    Ok(out)
}

/// Streams Hom(M, N) into `visit`; stops early when `visit` returns false.
/// Returns whether the enumeration ran to completion.
pub fn hom_for_each(
    m: &Arc<FiniteModule>,
    n: &Arc<FiniteModule>,
    cap: u128,
    mut visit: impl FnMut(Homomorphism) -> bool,
) -> Result<bool> {
    if !crate::ring::same_ring(m.ring(), n.ring()) {
        return Err(Error::domain("modules over different rings"));
    }
    let gens = generating_set(m);
    let cands: Vec<Vec<usize>> = gens.iter().map(|&g| candidate_images(m, n, g)).collect();
    let projected = cands
        .iter()
        .map(|c| c.len() as u128)
        .fold(1u128, |a, b| a.saturating_mul(b));
    if projected > cap {
        return Err(Error::resource(
            format!("Hom({}, {})", m.label(), n.label()),
            projected,
            cap,
        ));
    }
    let mut phi = vec![usize::MAX; m.size()];
    phi[m.zero()] = n.zero();
    let dom = vec![m.zero()];

    fn go(
        m: &Arc<FiniteModule>,
        n: &Arc<FiniteModule>,
        gens: &[usize],
        cands: &[Vec<usize>],
        k: usize,
        phi: &[usize],
        dom: &[usize],
        visit: &mut dyn FnMut(Homomorphism) -> bool,
    ) -> bool {
        if k == gens.len() {
            return visit(Homomorphism::new_unchecked(m.clone(), n.clone(), phi.to_vec()));
        }
        for &y in &cands[k] {
            if let Some((p, d)) = extend(m, n, phi, dom, gens[k], y) {
                if !go(m, n, gens, cands, k + 1, &p, &d, visit) {
                    return false;
                }
            }
        }
        true
    }

    Ok(go(m, n, &gens, &cands, 0, &phi, &dom, &mut visit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    fn reg(n: usize) -> Arc<FiniteModule> {
        FiniteModule::regular(&FiniteRing::zmod(n).unwrap())
    }

    #[test]
    fn endomorphisms_of_z6() {
        let m = reg(6);
        let homs = hom_enumerate(&m, &m, 1000).unwrap();
        assert_eq!(homs.len(), 6);
        for (r, h) in homs.iter().enumerate() {
            assert_eq!(h.apply(1), r);
            assert!(Homomorphism::new(m.clone(), m.clone(), h.map().to_vec()).is_ok());
        }
    }

    #[test]
    fn maps_into_zero_and_coprime_orders() {
        let m = reg(6);
        let z = FiniteModule::zero_module(m.ring());
        assert_eq!(hom_enumerate(&m, &z, 10).unwrap().len(), 1);
        let (a, _) = m.cyclic(2).unwrap().as_module().unwrap();
        let (b, _) = m.cyclic(3).unwrap().as_module().unwrap();
        let homs = hom_enumerate(&a, &b, 10).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_zero());
    }

    #[test]
    fn cap_is_enforced() {
        let m = reg(6);
        let d = FiniteModule::direct_sum(&[m.clone(), m.clone()]).unwrap().module;
        assert!(hom_enumerate(&d, &d, 10).unwrap_err().is_resource());
        assert_eq!(hom_enumerate(&d, &d, 10_000).unwrap().len(), 6usize.pow(4));
    }

    #[test]
    fn kernels_images_preimages() {
        let m = reg(6);
        let q = m.quotient(&m.cyclic(3).unwrap()).unwrap();
        assert_eq!(q.eta.kernel().to_vec(), vec![0, 3]);
        let two = Homomorphism::scalar(&m, 2);
        assert_eq!(two.image().to_vec(), vec![0, 2, 4]);
        assert_eq!(two.preimage(&m.cyclic(3).unwrap()).unwrap().to_vec(), vec![0, 3]);
        assert_eq!(two.preimage(&m.cyclic(2).unwrap()).unwrap().len(), 6);
        assert!(two.preimage(&reg(4).whole()).is_err());
    }

    #[test]
    fn generator_images() {
        let m = reg(6);
        let f = Homomorphism::from_generator_images(&m, &m, &[(1, 3)]).unwrap();
        assert_eq!(f.map(), &[0, 3, 0, 3, 0, 3]);
        assert!(Homomorphism::from_generator_images(&m, &m, &[(2, 3)]).is_err());
        let (k, _) = m.cyclic(2).unwrap().as_module().unwrap();
        // 2 ↦ 4 in the submodule {0,2,4}
        let g = Homomorphism::from_generator_images(&k, &m, &[(1, 4)]).unwrap();
        assert_eq!(g.map(), &[0, 4, 2]);
    }

    #[test]
    fn invalid_maps_rejected() {
        let m = reg(6);
        assert!(Homomorphism::new(m.clone(), m.clone(), vec![0, 1, 0, 0, 0, 0]).is_err());
        assert!(Homomorphism::new(m.clone(), m.clone(), vec![0; 5]).is_err());
    }

    #[test]
    fn greedy_generators_are_minimal_for_cyclic_sums() {
        let m = reg(6);
        assert_eq!(generating_set(&m).len(), 1);
        let d = FiniteModule::direct_sum(&[reg(2), reg(2)]).unwrap().module;
        assert_eq!(generating_set(&d).len(), 2);
    }
}
