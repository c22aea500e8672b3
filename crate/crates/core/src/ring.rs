//! Finite commutative unital rings stored as full operation tables.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::subset::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    /// ℤ/nℤ with element `i` the residue `i`.
    Zmod(usize),
    Product,
    TrivialExtension,
    Quotient,
    Table,
}

pub struct FiniteRing {
    label: String,
    names: Vec<String>,
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    kind: RingKind,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, |R|={})", self.label, self.n)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

/// True when both handles describe the same ring tables.
pub fn same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FiniteRing {
    /// Builds a ring from explicit tables and checks every axiom exhaustively.
    pub fn from_tables(
        label: impl Into<String>,
        names: Vec<String>,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        kind: RingKind,
    ) -> Result<Arc<FiniteRing>> {
        let n = names.len();
        if n == 0 || add.len() != n * n || mul.len() != n * n {
            return Err(Error::InvalidRing("table dimensions do not match".into()));
        }
        if zero >= n || one >= n {
            return Err(Error::InvalidRing("zero/one out of range".into()));
        }
        if add.iter().chain(&mul).any(|&x| x >= n) {
            return Err(Error::InvalidRing("table entry out of range".into()));
        }
        let mut neg = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == zero {
                    neg[a] = b;
                    break;
                }
            }
        }
        if neg.contains(&usize::MAX) {
            return Err(Error::InvalidRing("missing additive inverse".into()));
        }
        let ring = FiniteRing {
            label: label.into(),
            names,
            n,
            add,
            mul,
            neg,
            zero,
            one,
            kind,
        };
        ring.check_axioms()?;
        Ok(Arc::new(ring))
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        if self.zero == self.one {
            return Err(Error::InvalidRing("zero equals one".into()));
        }
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return Err(Error::InvalidRing("zero is not additive identity".into()));
            }
            if self.mul(a, self.one) != a {
                return Err(Error::InvalidRing("one is not multiplicative identity".into()));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::InvalidRing("addition not commutative".into()));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::InvalidRing("multiplication not commutative".into()));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::InvalidRing("addition not associative".into()));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidRing("multiplication not associative".into()));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::InvalidRing("not distributive".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// ℤ/nℤ.
    pub fn zmod(n: usize) -> Result<Arc<FiniteRing>> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("zmod needs n >= 2, got {n}")));
        }
        let cap = Caps::global().max_ring;
        if n > cap {
            return Err(Error::resource("ring size", n as u128, cap as u128));
        }
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = (a + b) % n;
                mul[a * n + b] = (a * b) % n;
            }
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_tables(format!("Z/{n}"), names, add, mul, 0, 1, RingKind::Zmod(n))
    }

    /// Componentwise ring on pairs; element `(a, b)` has index `a * |R2| + b`.
    pub fn product(r1: &Arc<FiniteRing>, r2: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>> {
        let (n1, n2) = (r1.n, r2.n);
        let n = n1 * n2;
        let cap = Caps::global().max_ring;
        if n > cap {
            return Err(Error::resource("product ring size", n as u128, cap as u128));
        }
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let (a, b) = (x / n2, x % n2);
            for y in 0..n {
                let (c, d) = (y / n2, y % n2);
                add[x * n + y] = r1.add(a, c) * n2 + r2.add(b, d);
                mul[x * n + y] = r1.mul(a, c) * n2 + r2.mul(b, d);
            }
        }
        let names = (0..n)
            .map(|x| format!("({},{})", r1.names[x / n2], r2.names[x % n2]))
            .collect();
        Self::from_tables(
            format!("{} x {}", r1.label, r2.label),
            names,
            add,
            mul,
            r1.zero * n2 + r2.zero,
            r1.one * n2 + r2.one,
            RingKind::Product,
        )
    }

    /// R ⋉ M with `(a,m)(b,n) = (ab, an + bm)`; element `(a, m)` has index `a * |M| + m`.
    pub fn trivial_extension(m: &FiniteModule) -> Result<Arc<FiniteRing>> {
        let r = m.ring();
        let (nr, nm) = (r.n, m.size());
        let n = nr * nm;
        let cap = Caps::global().max_ring;
        if n > cap {
            return Err(Error::resource("trivial extension size", n as u128, cap as u128));
        }
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let (a, u) = (x / nm, x % nm);
            for y in 0..n {
                let (b, v) = (y / nm, y % nm);
                add[x * n + y] = r.add(a, b) * nm + m.add(u, v);
                mul[x * n + y] = r.mul(a, b) * nm + m.add(m.act(a, v), m.act(b, u));
            }
        }
        let names = (0..n)
            .map(|x| format!("({},{})", r.names[x / nm], m.name(x % nm)))
            .collect();
        let ext = Self::from_tables(
            format!("{} |x {}", r.label, m.label()),
            names,
            add,
            mul,
            r.zero * nm + m.zero(),
            r.one * nm + m.zero(),
            RingKind::TrivialExtension,
        )?;
        // a -> (a, 0) must be an injective ring map
        let embed = |a: usize| a * nm + m.zero();
        for a in 0..nr {
            for b in 0..nr {
                if embed(r.add(a, b)) != ext.add(embed(a), embed(b))
                    || embed(r.mul(a, b)) != ext.mul(embed(a), embed(b))
                {
                    return Err(Error::Internal("trivial extension embedding is not a ring map".into()));
                }
            }
        }
        Ok(ext)
    }

    /// Coset ring R/I together with the natural surjection.
    pub fn quotient(r: &Arc<FiniteRing>, ideal: &Ideal) -> Result<QuotientRing> {
        if !same_ring(r, &ideal.ring) {
            return Err(Error::domain("ideal belongs to a different ring"));
        }
        if ideal.members.len() == r.n {
            return Err(Error::ImproperIdeal);
        }
        // cosets labelled by their minimal representative
        let mut proj = vec![usize::MAX; r.n];
        let mut reps = Vec::new();
        for x in 0..r.n {
            if proj[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for i in ideal.members.iter() {
                proj[r.add(x, i)] = idx;
            }
        }
        let q = reps.len();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * q + j] = proj[r.add(a, b)];
                mul[i * q + j] = proj[r.mul(a, b)];
            }
        }
        let names = reps.iter().map(|&x| format!("[{}]", r.names[x])).collect();
        let kind = match r.kind {
            RingKind::Zmod(_) => {
                // ℤ/n / (d) with d = |I|-complement is ℤ/q, and minimal reps are 0..q
                if reps.iter().copied().eq(0..q) && ideal.members.contains(q % r.n) {
                    RingKind::Zmod(q)
                } else {
                    RingKind::Quotient
                }
            }
            _ => RingKind::Quotient,
        };
        let ring = Self::from_tables(
            format!("{}/{}", r.label, ideal.display()),
            names,
            add,
            mul,
            proj[r.zero],
            proj[r.one],
            kind,
        )?;
        Ok(QuotientRing { ring, proj })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn zmod_modulus(&self) -> Option<usize> {
        match self.kind {
            RingKind::Zmod(n) => Some(n),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Looks up an element by its display name.
    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_zero_divisor(&self, a: usize) -> bool {
        (0..self.n).any(|b| b != self.zero && self.mul(a, b) == self.zero)
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.n).any(|b| self.mul(a, b) == self.one)
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.is_unit(a)).collect()
    }

    /// Nonzerodivisors of the ring.
    pub fn regular_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| !self.is_zero_divisor(a)).collect()
    }
}

pub struct QuotientRing {
    pub ring: Arc<FiniteRing>,
    /// Natural surjection as an element map.
    pub proj: Vec<usize>,
}

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    members: ElemSet,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self.display())
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for Ideal {}

impl Ideal {
    /// Validates a member set as an ideal.
    pub fn new(ring: &Arc<FiniteRing>, members: ElemSet) -> Result<Ideal> {
        if members.universe() != ring.n || !members.contains(ring.zero) {
            return Err(Error::domain("ideal must contain zero"));
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(ring.add(a, b)) {
                    return Err(Error::domain("ideal not closed under addition"));
                }
            }
            for r in 0..ring.n {
                if !members.contains(ring.mul(r, a)) {
                    return Err(Error::domain("ideal not closed under multiplication"));
                }
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            members,
        })
    }

    pub(crate) fn from_members_unchecked(ring: &Arc<FiniteRing>, members: ElemSet) -> Ideal {
        Ideal {
            ring: ring.clone(),
            members,
        }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal::from_members_unchecked(ring, ElemSet::singleton(ring.n, ring.zero))
    }

    pub fn whole(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal::from_members_unchecked(ring, ElemSet::full(ring.n))
    }

    /// The principal ideal (r).
    pub fn principal(ring: &Arc<FiniteRing>, r: usize) -> Ideal {
        let members = ElemSet::from_iter_in(ring.n, (0..ring.n).map(|a| ring.mul(a, r)));
        Ideal::from_members_unchecked(ring, members)
    }

    /// Ideal generated by a set of ring elements.
    pub fn generated(ring: &Arc<FiniteRing>, gens: &[usize]) -> Result<Ideal> {
        if let Some(&g) = gens.iter().find(|&&g| g >= ring.n) {
            return Err(Error::domain(format!("element {g} not in ring")));
        }
        Ok(gens.iter().fold(Ideal::zero(ring), |acc, &g| {
            acc.sum(&Ideal::principal(ring, g))
        }))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let r = &self.ring;
        let mut members = ElemSet::empty(r.n);
        for a in self.members.iter() {
            for b in other.members.iter() {
                members.insert(r.add(a, b));
            }
        }
        Ideal::from_members_unchecked(r, members)
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        Ideal::from_members_unchecked(&self.ring, self.members.intersection(&other.members))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_proper(&self) -> bool {
        self.members.len() < self.ring.n
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_prime(&self) -> bool {
        let r = &self.ring;
        self.is_proper()
            && (0..r.n).all(|a| {
                self.contains(a)
                    || (0..r.n).all(|b| self.contains(b) || !self.contains(r.mul(a, b)))
            })
    }

    pub fn display(&self) -> String {
        let names: Vec<&str> = self.members.iter().map(|x| self.ring.name(x)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// All ideals as the join-closure of the principal ideals, in canonical order.
pub fn all_ideals(ring: &Arc<FiniteRing>) -> Vec<Ideal> {
    let principals: Vec<Ideal> = {
        let mut seen = HashSet::new();
        (0..ring.n)
            .map(|r| Ideal::principal(ring, r))
            .filter(|i| seen.insert(i.members.clone()))
            .collect()
    };
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let start = Ideal::zero(ring);
    seen.insert(start.members.clone());
    queue.push_back(start);
    while let Some(i) = queue.pop_front() {
        for p in &principals {
            if p.is_subset(&i) {
                continue;
            }
            let j = i.sum(p);
            if seen.insert(j.members.clone()) {
                queue.push_back(j);
            }
        }
        out.push(i);
    }
    out.sort_by(|a, b| a.members.canonical_cmp(&b.members));
    out
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub primes: Vec<Ideal>,
    pub maximals: Vec<Ideal>,
}

pub fn spectrum(ring: &Arc<FiniteRing>) -> Spectrum {
    let ideals = all_ideals(ring);
    let proper: Vec<&Ideal> = ideals.iter().filter(|i| i.is_proper()).collect();
    let primes = proper.iter().filter(|i| i.is_prime()).map(|&i| i.clone()).collect();
    let maximals = proper
        .iter()
        .filter(|i| {
            !proper
                .iter()
                .any(|j| j.len() > i.len() && i.is_subset(j))
        })
        .map(|&i| i.clone())
        .collect();
    Spectrum { primes, maximals }
}

/// Exhaustive isomorphism test (small rings only).
pub fn rings_isomorphic(a: &FiniteRing, b: &FiniteRing) -> Result<bool> {
    const CAP: usize = 16;
    if a.n != b.n {
        return Ok(false);
    }
    if a.n > CAP {
        return Err(Error::resource("ring isomorphism search", a.n as u128, CAP as u128));
    }
    let n = a.n;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.zero] = b.zero;
    used[b.zero] = true;
    map[a.one] = b.one;
    used[b.one] = true;
    let order: Vec<usize> = (0..n).filter(|&x| x != a.zero && x != a.one).collect();
    // units must go to units
    let a_units: Vec<bool> = (0..n).map(|x| a.is_unit(x)).collect();
    let b_units: Vec<bool> = (0..n).map(|x| b.is_unit(x)).collect();

    fn consistent(a: &FiniteRing, b: &FiniteRing, map: &[usize], x: usize) -> bool {
        for y in 0..a.n {
            if map[y] == usize::MAX {
                continue;
            }
            for (s, t) in [(a.add(x, y), b.add(map[x], map[y])), (a.mul(x, y), b.mul(map[x], map[y]))] {
                if map[s] != usize::MAX && map[s] != t {
                    return false;
                }
            }
        }
        true
    }

    fn go(
        a: &FiniteRing,
        b: &FiniteRing,
        order: &[usize],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        au: &[bool],
        bu: &[bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for t in 0..b.n {
            if used[t] || au[x] != bu[t] {
                continue;
            }
            map[x] = t;
            used[t] = true;
            if consistent(a, b, map, x) && go(a, b, order, k + 1, map, used, au, bu) {
                return true;
            }
            map[x] = usize::MAX;
            used[t] = false;
        }
        false
    }

    if !consistent(a, b, &map, a.one) {
        return Ok(false);
    }
    Ok(go(a, b, &order, 0, &mut map, &mut used, &a_units, &b_units))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::FiniteModule;

    fn members(i: &Ideal) -> Vec<usize> {
        i.members().to_vec()
    }

    #[test]
    fn zmod_tables() {
        let z6 = FiniteRing::zmod(6).unwrap();
        assert_eq!(z6.size(), 6);
        assert_eq!(z6.mul(2, 3), 0);
        let z2 = FiniteRing::zmod(2).unwrap();
        assert_eq!(z2.add(1, 1), 0);
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(z4.mul(2, 2), 0);
        assert!(matches!(FiniteRing::zmod(1), Err(Error::InvalidRing(_))));
    }

    #[test]
    fn products() {
        let z2 = FiniteRing::zmod(2).unwrap();
        let z3 = FiniteRing::zmod(3).unwrap();
        let z4 = FiniteRing::zmod(4).unwrap();
        let p = FiniteRing::product(&z2, &z3).unwrap();
        assert!(rings_isomorphic(&p, &FiniteRing::zmod(6).unwrap()).unwrap());
        let q = FiniteRing::product(&z2, &z2).unwrap();
        let (e1, e2) = (q.find("(1,0)").unwrap(), q.find("(0,1)").unwrap());
        assert_eq!(q.mul(e1, e2), q.zero());
        assert!(!rings_isomorphic(&q, &z4).unwrap());
        let r = FiniteRing::product(&z4, &z3).unwrap();
        assert_eq!(r.size(), 12);
        assert_eq!(r.name(r.one()), "(1,1)");
        let big = FiniteRing::zmod(36).unwrap();
        assert!(FiniteRing::product(&big, &z2).unwrap_err().is_resource());
    }

    #[test]
    fn trivial_extensions() {
        let z2 = FiniteRing::zmod(2).unwrap();
        let m = FiniteModule::regular(&z2);
        let e = FiniteRing::trivial_extension(&m).unwrap();
        assert_eq!(e.size(), 4);
        let x = e.find("(0,1)").unwrap();
        assert_eq!(e.mul(x, x), e.zero());
        assert_eq!(e.name(e.one()), "(1,0)");
        for b in e.elements() {
            assert_eq!(e.mul(e.one(), b), b);
        }
        let z3 = FiniteRing::zmod(3).unwrap();
        let e3 = FiniteRing::trivial_extension(&FiniteModule::regular(&z3)).unwrap();
        assert_eq!(e3.size(), 9);
        // 0 ⋉ M squares to zero
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(e3.mul(u, v), e3.zero());
            }
        }
    }

    #[test]
    fn quotients() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let q2 = FiniteRing::quotient(&z6, &Ideal::principal(&z6, 2)).unwrap();
        assert_eq!(q2.ring.size(), 2);
        assert_eq!(q2.ring.zmod_modulus(), Some(2));
        let q3 = FiniteRing::quotient(&z6, &Ideal::principal(&z6, 3)).unwrap();
        assert_eq!(q3.ring.size(), 3);
        assert!(rings_isomorphic(&q3.ring, &FiniteRing::zmod(3).unwrap()).unwrap());
        let q0 = FiniteRing::quotient(&z6, &Ideal::zero(&z6)).unwrap();
        assert!(rings_isomorphic(&q0.ring, &z6).unwrap());
        assert!(matches!(
            FiniteRing::quotient(&z6, &Ideal::whole(&z6)),
            Err(Error::ImproperIdeal)
        ));
        // surjection is a ring map
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(q3.proj[z6.mul(a, b)], q3.ring.mul(q3.proj[a], q3.proj[b]));
                assert_eq!(q3.proj[z6.add(a, b)], q3.ring.add(q3.proj[a], q3.proj[b]));
            }
        }
    }

    #[test]
    fn ideals_and_spectrum() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let ideals: Vec<Vec<usize>> = all_ideals(&z6).iter().map(members).collect();
        assert_eq!(ideals, vec![vec![0], vec![0, 3], vec![0, 2, 4], vec![0, 1, 2, 3, 4, 5]]);
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(all_ideals(&z4).len(), 3);
        let f5 = FiniteRing::zmod(5).unwrap();
        assert_eq!(all_ideals(&f5).len(), 2);

        let sp = spectrum(&z6);
        let primes: Vec<Vec<usize>> = sp.primes.iter().map(members).collect();
        let maxs: Vec<Vec<usize>> = sp.maximals.iter().map(members).collect();
        assert_eq!(primes, vec![vec![0, 3], vec![0, 2, 4]]);
        assert_eq!(maxs, primes);
        let sp4 = spectrum(&z4);
        assert_eq!(sp4.primes.len(), 1);
        assert_eq!(members(&sp4.maximals[0]), vec![0, 2]);
        let spf = spectrum(&f5);
        assert_eq!(members(&spf.primes[0]), vec![0]);
        assert_eq!(members(&spf.maximals[0]), vec![0]);
    }

    #[test]
    fn maximal_quotients_have_two_ideals() {
        for n in [6usize, 8, 12, 30] {
            let r = FiniteRing::zmod(n).unwrap();
            let sp = spectrum(&r);
            for m in &sp.maximals {
                assert!(sp.primes.contains(m));
                let q = FiniteRing::quotient(&r, m).unwrap();
                assert_eq!(all_ideals(&q.ring).len(), 2);
            }
        }
    }

    #[test]
    fn ideal_validation() {
        let z6 = FiniteRing::zmod(6).unwrap();
        assert!(Ideal::new(&z6, ElemSet::from_iter_in(6, [0, 3])).is_ok());
        assert!(Ideal::new(&z6, ElemSet::from_iter_in(6, [0, 2])).is_err());
        assert!(Ideal::new(&z6, ElemSet::from_iter_in(6, [3])).is_err());
    }
}
