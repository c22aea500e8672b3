//! Finite modules, their submodule lattices, quotients and direct sums.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::ring::{same_ring, FiniteRing, Ideal};
use crate::subset::ElemSet;

/// How a module was built. Direct sums remember their summands so that
/// closure rules (e.g. sums of u-S-injectives) can recurse into them.
#[derive(Debug, Clone)]
pub enum ModuleOrigin {
    Regular,
    Zero,
    Quotient,
    Submodule,
    DirectSum(Vec<Arc<FiniteModule>>),
    Table,
}

pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    label: String,
    names: Vec<String>,
    m: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    act: Vec<usize>,
    zero: usize,
    origin: ModuleOrigin,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule({} over {}, |M|={})", self.label, self.ring.label(), self.m)
    }
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.zero == other.zero
            && self.add == other.add
            && self.act == other.act
            && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for FiniteModule {}

pub fn same_module(a: &Arc<FiniteModule>, b: &Arc<FiniteModule>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FiniteModule {
    /// Builds a module from explicit tables; `act[r * m + x]` is `r·x`.
    /// Group and action axioms are checked exhaustively.
    pub fn from_tables(
        ring: &Arc<FiniteRing>,
        label: impl Into<String>,
        names: Vec<String>,
        add: Vec<usize>,
        act: Vec<usize>,
        zero: usize,
        origin: ModuleOrigin,
    ) -> Result<Arc<FiniteModule>> {
        let module = Self::build(ring, label, names, add, act, zero, origin)?;
        module.check_axioms()?;
        Ok(module)
    }

    /// Shape-checked construction without the exhaustive axiom scan; used for
    /// modules derived from valid ones (quotients, sums, submodules).
    fn build(
        ring: &Arc<FiniteRing>,
        label: impl Into<String>,
        names: Vec<String>,
        add: Vec<usize>,
        act: Vec<usize>,
        zero: usize,
        origin: ModuleOrigin,
    ) -> Result<Arc<FiniteModule>> {
        let m = names.len();
        let cap = Caps::global().max_module;
        if m > cap {
            return Err(Error::resource("module size", m as u128, cap as u128));
        }
        if m == 0 || add.len() != m * m || act.len() != ring.size() * m || zero >= m {
            return Err(Error::InvalidModule("table dimensions do not match".into()));
        }
        if add.iter().chain(&act).any(|&x| x >= m) {
            return Err(Error::InvalidModule("table entry out of range".into()));
        }
        let mut neg = vec![usize::MAX; m];
        for a in 0..m {
            if let Some(b) = (0..m).find(|&b| add[a * m + b] == zero) {
                neg[a] = b;
            }
        }
        if neg.contains(&usize::MAX) {
            return Err(Error::InvalidModule("missing additive inverse".into()));
        }
        let module = FiniteModule {
            ring: ring.clone(),
            label: label.into(),
            names,
            m,
            add,
            neg,
            act,
            zero,
            origin,
        };
        Ok(Arc::new(module))
    }

    fn check_axioms(&self) -> Result<()> {
        let r = &self.ring;
        let bad = |msg: &str| Err(Error::InvalidModule(msg.into()));
        for x in 0..self.m {
            if self.add(x, self.zero) != x {
                return bad("zero is not additive identity");
            }
            if self.act(r.one(), x) != x {
                return bad("1·x != x");
            }
            for y in 0..self.m {
                if self.add(x, y) != self.add(y, x) {
                    return bad("addition not commutative");
                }
                for z in 0..self.m {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return bad("addition not associative");
                    }
                }
            }
        }
        for a in r.elements() {
            for x in 0..self.m {
                for y in 0..self.m {
                    if self.act(a, self.add(x, y)) != self.add(self.act(a, x), self.act(a, y)) {
                        return bad("r(x+y) != rx + ry");
                    }
                }
                for b in r.elements() {
                    if self.act(r.add(a, b), x) != self.add(self.act(a, x), self.act(b, x)) {
                        return bad("(r+r')x != rx + r'x");
                    }
                    if self.act(r.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return bad("(rr')x != r(r'x)");
                    }
                }
            }
        }
        Ok(())
    }

    /// R as a module over itself.
    pub fn regular(ring: &Arc<FiniteRing>) -> Arc<FiniteModule> {
        let n = ring.size();
        let mut add = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ring.add(a, b);
            }
        }
        let act = add
            .iter()
            .enumerate()
            .map(|(i, _)| ring.mul(i / n, i % n))
            .collect();
        Self::build(
            ring,
            ring.label(),
            ring.names().to_vec(),
            add,
            act,
            ring.zero(),
            ModuleOrigin::Regular,
        )
        .expect("regular module is valid")
    }

    pub fn zero_module(ring: &Arc<FiniteRing>) -> Arc<FiniteModule> {
        Self::build(
            ring,
            "0",
            vec!["0".into()],
            vec![0],
            vec![0; ring.size()],
            0,
            ModuleOrigin::Zero,
        )
        .expect("zero module is valid")
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn origin(&self) -> &ModuleOrigin {
        &self.origin
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.m == 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.m
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.m + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg[y])
    }

    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.act[r * self.m + x]
    }

    /// True iff `r·x = 0` for every `x` in `set`.
    pub fn kills(&self, r: usize, set: &ElemSet) -> bool {
        set.iter().all(|x| self.act(r, x) == self.zero)
    }

    /// Additive order of `x`.
    pub fn additive_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.zero {
            y = self.add(y, x);
            k += 1;
        }
        k
    }

    /// `k·x` for an integer multiple.
    pub fn int_mul(&self, k: usize, x: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add(acc, x))
    }

    pub fn whole(self: &Arc<Self>) -> Submodule {
        Submodule {
            parent: self.clone(),
            members: ElemSet::full(self.m),
        }
    }

    pub fn zero_sub(self: &Arc<Self>) -> Submodule {
        Submodule {
            parent: self.clone(),
            members: ElemSet::singleton(self.m, self.zero),
        }
    }

    /// Rx.
    pub fn cyclic(self: &Arc<Self>, x: usize) -> Result<Submodule> {
        if x >= self.m {
            return Err(Error::domain(format!("element {x} not in module")));
        }
        let members = ElemSet::from_iter_in(self.m, self.ring.elements().map(|r| self.act(r, x)));
        Ok(Submodule {
            parent: self.clone(),
            members,
        })
    }

    /// Submodule generated by `gens`.
    pub fn span(self: &Arc<Self>, gens: &[usize]) -> Result<Submodule> {
        let mut acc = self.zero_sub();
        for &g in gens {
            let c = self.cyclic(g)?;
            if !c.members.is_subset(&acc.members) {
                acc = acc.sum_unchecked(&c);
            }
        }
        Ok(acc)
    }

    /// Validates a member set as a submodule.
    pub fn submodule(self: &Arc<Self>, members: ElemSet) -> Result<Submodule> {
        if members.universe() != self.m || !members.contains(self.zero) {
            return Err(Error::domain("submodule must contain zero"));
        }
        for x in members.iter() {
            for y in members.iter() {
                if !members.contains(self.add(x, y)) {
                    return Err(Error::domain("not closed under addition"));
                }
            }
            for r in self.ring.elements() {
                if !members.contains(self.act(r, x)) {
                    return Err(Error::domain("not closed under the ring action"));
                }
            }
        }
        Ok(Submodule {
            parent: self.clone(),
            members,
        })
    }

    /// Distinct cyclic submodules, in element order of first generator.
    pub fn cyclic_submodules(self: &Arc<Self>) -> Vec<Submodule> {
        let mut seen = HashSet::new();
        self.elements()
            .map(|x| self.cyclic(x).expect("x in range"))
            .filter(|c| seen.insert(c.members.clone()))
            .collect()
    }

    /// The full lattice as the join-closure of the cyclic submodules, sorted canonically.
    pub fn all_submodules(self: &Arc<Self>) -> Result<Vec<Submodule>> {
        let caps = Caps::global();
        if self.m > caps.max_module {
            return Err(Error::resource(
                "submodule lattice of module",
                self.m as u128,
                caps.max_module as u128,
            ));
        }
        let cyclics = self.cyclic_submodules();
        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        let start = self.zero_sub();
        seen.insert(start.members.clone());
        queue.push_back(start);
        while let Some(l) = queue.pop_front() {
            for c in &cyclics {
                if c.members.is_subset(&l.members) {
                    continue;
                }
                let j = l.sum_unchecked(c);
                if seen.insert(j.members.clone()) {
                    if seen.len() > caps.max_lattice {
                        return Err(Error::resource(
                            "submodule lattice",
                            seen.len() as u128,
                            caps.max_lattice as u128,
                        ));
                    }
                    queue.push_back(j);
                }
            }
            out.push(l);
        }
        out.sort_by(|a, b| a.members.canonical_cmp(&b.members));
        Ok(out)
    }

    /// Ann_R(M).
    pub fn annihilator(self: &Arc<Self>) -> Ideal {
        self.whole().annihilator()
    }

    /// Z_R(M) = { r : rx = 0 for some x ≠ 0 }.
    pub fn zero_divisors_on(&self) -> Vec<usize> {
        self.ring
            .elements()
            .filter(|&r| self.elements().any(|x| x != self.zero && self.act(r, x) == self.zero))
            .collect()
    }

    /// Every nonzero submodule has the annihilator of M.
    pub fn is_prime(self: &Arc<Self>) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::domain("prime module test needs a nonzero module"));
        }
        let ann = self.annihilator();
        // Ann(N) ⊇ Ann(M) always, and Ann(N) = ∩ Ann(Rx) over x ∈ N, so cyclics suffice
        Ok(self
            .elements()
            .filter(|&x| x != self.zero)
            .all(|x| self.cyclic(x).expect("in range").annihilator() == ann))
    }

    /// M/K with the natural surjection; cosets are labelled by minimal representative.
    pub fn quotient(self: &Arc<Self>, k: &Submodule) -> Result<Quotient> {
        if !same_module(self, &k.parent) {
            return Err(Error::domain("submodule belongs to a different module"));
        }
        let mut proj = vec![usize::MAX; self.m];
        let mut reps = Vec::new();
        for x in 0..self.m {
            if proj[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for y in k.members.iter() {
                proj[self.add(x, y)] = idx;
            }
        }
        let q = reps.len();
        let nr = self.ring.size();
        let mut add = vec![0; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * q + j] = proj[self.add(a, b)];
            }
        }
        let mut act = vec![0; nr * q];
        for r in 0..nr {
            for (i, &a) in reps.iter().enumerate() {
                act[r * q + i] = proj[self.act(r, a)];
            }
        }
        let names = reps.iter().map(|&x| format!("[{}]", self.names[x])).collect();
        let module = Self::build(
            &self.ring,
            format!("({})/{}", self.label, k.display()),
            names,
            add,
            act,
            proj[self.zero],
            ModuleOrigin::Quotient,
        )?;
        let eta = Homomorphism::new_unchecked(self.clone(), module.clone(), proj);
        Ok(Quotient {
            module,
            eta,
            representatives: reps,
        })
    }

    /// Componentwise direct sum with its injections and projections.
    pub fn direct_sum(parts: &[Arc<FiniteModule>]) -> Result<DirectSum> {
        let first = parts
            .first()
            .ok_or_else(|| Error::domain("direct sum of no modules"))?;
        let ring = first.ring.clone();
        if parts.iter().any(|p| !same_ring(&p.ring, &ring)) {
            return Err(Error::domain("direct summands over different rings"));
        }
        let total: u128 = parts.iter().map(|p| p.m as u128).product();
        let cap = Caps::global().max_module as u128;
        if total > cap {
            return Err(Error::resource("direct sum size", total, cap));
        }
        let total = total as usize;
        // last coordinate varies fastest
        let mut strides = vec![1usize; parts.len()];
        for i in (0..parts.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * parts[i + 1].m;
        }
        let coords = |x: usize| -> Vec<usize> {
            parts
                .iter()
                .zip(&strides)
                .map(|(p, &st)| (x / st) % p.m)
                .collect()
        };
        let encode = |c: &[usize]| -> usize { c.iter().zip(&strides).map(|(a, s)| a * s).sum() };
        let all_coords: Vec<Vec<usize>> = (0..total).map(coords).collect();
        let nr = ring.size();
        let mut add = vec![0; total * total];
        for x in 0..total {
            for y in 0..total {
                let c: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.add(all_coords[x][i], all_coords[y][i]))
                    .collect();
                add[x * total + y] = encode(&c);
            }
        }
        let mut act = vec![0; nr * total];
        for r in 0..nr {
            for x in 0..total {
                let c: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.act(r, all_coords[x][i]))
                    .collect();
                act[r * total + x] = encode(&c);
            }
        }
        let names = all_coords
            .iter()
            .map(|c| {
                let parts: Vec<&str> = c.iter().zip(parts).map(|(&a, p)| p.name(a)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let zero = encode(&parts.iter().map(|p| p.zero).collect::<Vec<_>>());
        let label = parts
            .iter()
            .map(|p| p.label.as_str())
            .collect::<Vec<_>>()
            .join(" + ");
        let module = Self::build(
            &ring,
            format!("({label})"),
            names,
            add,
            act,
            zero,
            ModuleOrigin::DirectSum(parts.to_vec()),
        )?;
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            let inj = (0..p.m)
                .map(|a| {
                    let mut c: Vec<usize> = parts.iter().map(|q| q.zero).collect();
                    c[i] = a;
                    encode(&c)
                })
                .collect();
            injections.push(Homomorphism::new_unchecked(p.clone(), module.clone(), inj));
            let proj = all_coords.iter().map(|c| c[i]).collect();
            projections.push(Homomorphism::new_unchecked(module.clone(), p.clone(), proj));
        }
        Ok(DirectSum {
            module,
            injections,
            projections,
        })
    }
}

pub struct Quotient {
    pub module: Arc<FiniteModule>,
    /// Natural map M → M/K.
    pub eta: Homomorphism,
    /// Minimal representative of each coset, by quotient index.
    pub representatives: Vec<usize>,
}

pub struct DirectSum {
    pub module: Arc<FiniteModule>,
    pub injections: Vec<Homomorphism>,
    pub projections: Vec<Homomorphism>,
}

impl DirectSum {
    /// Submodule ⊕ K_i of the sum, one submodule per summand.
    pub fn sum_of_submodules(&self, parts: &[Submodule]) -> Result<Submodule> {
        if parts.len() != self.injections.len() {
            return Err(Error::domain("wrong number of summand submodules"));
        }
        let mut acc = self.module.zero_sub();
        for (k, inj) in parts.iter().zip(&self.injections) {
            acc = acc.sum(&inj.image_of(k)?)?;
        }
        Ok(acc)
    }
}

#[derive(Clone)]
pub struct Submodule {
    parent: Arc<FiniteModule>,
    members: ElemSet,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{} of {}", self.display(), self.parent.label)
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_module(&self.parent, &other.parent)
    }
}

impl Eq for Submodule {}

impl Submodule {
    pub(crate) fn from_members_unchecked(parent: &Arc<FiniteModule>, members: ElemSet) -> Self {
        Submodule {
            parent: parent.clone(),
            members,
        }
    }

    pub fn parent(&self) -> &Arc<FiniteModule> {
        &self.parent
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.m
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.members.is_subset(&other.members)
    }

    fn check_parent(&self, other: &Submodule) -> Result<()> {
        if same_module(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::domain("submodules of different modules"))
        }
    }

    fn sum_unchecked(&self, other: &Submodule) -> Submodule {
        let p = &self.parent;
        let mut members = ElemSet::empty(p.m);
        for a in self.members.iter() {
            for b in other.members.iter() {
                members.insert(p.add(a, b));
            }
        }
        Submodule {
            parent: p.clone(),
            members,
        }
    }

    /// A + B.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_parent(other)?;
        Ok(self.sum_unchecked(other))
    }

    /// A ∩ B.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.check_parent(other)?;
        Ok(Submodule {
            parent: self.parent.clone(),
            members: self.members.intersection(&other.members),
        })
    }

    /// r·N as a submodule.
    pub fn scaled(&self, r: usize) -> Submodule {
        Submodule {
            parent: self.parent.clone(),
            members: ElemSet::from_iter_in(self.parent.m, self.members.iter().map(|x| self.parent.act(r, x))),
        }
    }

    pub fn killed_by(&self, r: usize) -> bool {
        self.parent.kills(r, &self.members)
    }

    /// Ann_R(N).
    pub fn annihilator(&self) -> Ideal {
        let ring = self.parent.ring();
        let members = ElemSet::from_iter_in(ring.size(), ring.elements().filter(|&r| self.killed_by(r)));
        Ideal::from_members_unchecked(ring, members)
    }

    /// The submodule as a module in its own right, with its inclusion map.
    /// Elements keep their parent names and parent order.
    pub fn as_module(&self) -> Result<(Arc<FiniteModule>, Homomorphism)> {
        let p = &self.parent;
        let elems = self.members.to_vec();
        let k = elems.len();
        let mut index = vec![usize::MAX; p.m];
        for (i, &x) in elems.iter().enumerate() {
            index[x] = i;
        }
        let mut add = vec![0; k * k];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                add[i * k + j] = index[p.add(a, b)];
            }
        }
        let nr = p.ring.size();
        let mut act = vec![0; nr * k];
        for r in 0..nr {
            for (i, &a) in elems.iter().enumerate() {
                act[r * k + i] = index[p.act(r, a)];
            }
        }
        if add.iter().chain(&act).any(|&x| x == usize::MAX) {
            return Err(Error::domain("member set is not a submodule"));
        }
        let names = elems.iter().map(|&x| p.names[x].clone()).collect();
        let module = FiniteModule::build(
            &p.ring,
            self.display(),
            names,
            add,
            act,
            index[p.zero],
            ModuleOrigin::Submodule,
        )?;
        let inclusion = Homomorphism::new_unchecked(module.clone(), p.clone(), elems);
        Ok((module, inclusion))
    }

    pub fn display(&self) -> String {
        let names: Vec<&str> = self.members.iter().map(|x| self.parent.name(x)).collect();
        format!("{{{}}}", names.join(","))
    }
}
