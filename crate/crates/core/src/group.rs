//! Enumerated permutation groups, subgroups, quotients and characteristic subgroups.
//!
//! Elements are addressed by dense indices (`usize`, identity = 0) into a flat table
//! built by breadth-first closure of the generators.

use std::collections::{BTreeMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHasher;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::util::{is_prime_power_or_one, p_part, prime_divisors};

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

const NONE: u32 = u32::MAX;
const STACK_DEGREE: usize = 512;

#[derive(Clone)]
struct ElementStore {
    degree: usize,
    data: Vec<u16>,
    table: Vec<u32>,
    len: usize,
}

impl ElementStore {
    fn new(degree: usize) -> Self {
        ElementStore {
            degree,
            data: Vec::new(),
            table: vec![NONE; 64],
            len: 0,
        }
    }

    #[inline]
    fn slot(&self, key: &[u16]) -> usize {
        let mut h = FxHasher::default();
        key.hash(&mut h);
        (h.finish() as usize) & (self.table.len() - 1)
    }

    #[inline]
    fn get(&self, i: usize) -> &[u16] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    fn find(&self, key: &[u16]) -> Option<usize> {
        let mask = self.table.len() - 1;
        let mut s = self.slot(key);
        loop {
            let v = self.table[s];
            if v == NONE {
                return None;
            }
            if self.get(v as usize) == key {
                return Some(v as usize);
            }
            s = (s + 1) & mask;
        }
    }

    fn insert(&mut self, key: &[u16]) -> (usize, bool) {
        if (self.len + 1) * 2 > self.table.len() {
            self.grow();
        }
        let mask = self.table.len() - 1;
        let mut s = self.slot(key);
        loop {
            let v = self.table[s];
            if v == NONE {
                let id = self.len;
                self.table[s] = id as u32;
                self.data.extend_from_slice(key);
                self.len += 1;
                return (id, true);
            }
            if self.get(v as usize) == key {
                return (v as usize, false);
            }
            s = (s + 1) & mask;
        }
    }

    fn grow(&mut self) {
        let size = self.table.len() * 2;
        self.table = vec![NONE; size];
        let mask = size - 1;
        for id in 0..self.len {
            let mut s = self.slot(self.get(id));
            while self.table[s] != NONE {
                s = (s + 1) & mask;
            }
            self.table[s] = id as u32;
        }
    }
}

/// A conjugacy class.
#[derive(Clone, Debug)]
pub struct Class {
    /// Lexicographically least member.
    pub rep: usize,
    pub size: usize,
    pub order: u32,
    pub members: Vec<u32>,
    /// Index of the class containing the inverses.
    pub inverse: usize,
}

/// A real conjugacy class `(g) ∪ (g⁻¹)`.
#[derive(Clone, Debug)]
pub struct RealClass {
    pub rep: usize,
    /// One or two conjugacy class indices.
    pub classes: Vec<usize>,
    pub size: usize,
    pub order: u32,
    pub is_npp: bool,
}

/// A subgroup of a fixed parent group, as a membership bitset plus generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: FixedBitSet,
    order: usize,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.members.contains(e)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// Predicates accepted by [`FiniteGroup::structure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    Cyclic,
    Abelian,
    Nilpotent,
    Solvable,
    Perfect,
    PGroup(u64),
    ElementaryAbelian(u64),
}

/// Invariants standing in for an isomorphism type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub element_orders: BTreeMap<u32, usize>,
    pub class_sizes: Vec<usize>,
    pub center_order: usize,
    /// `None` for nonsolvable groups.
    pub derived_length: Option<usize>,
}

#[derive(Clone, Default)]
struct Cache {
    normal: OnceLock<Vec<Subgroup>>,
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    label: Option<String>,
    degree: usize,
    generators: Vec<Permutation>,
    gen_ids: Vec<usize>,
    store: ElementStore,
    orders: Vec<u32>,
    inverses: Vec<u32>,
    parent: Vec<(u32, u16)>,
    class_of: Vec<u32>,
    classes: Vec<Class>,
    real_classes: Vec<RealClass>,
    real_class_of: Vec<usize>,
    primes: Vec<u64>,
    cache: Cache,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteGroup({}, order {}, degree {})",
            self.name,
            self.order(),
            self.degree
        )
    }
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators` with the default cap.
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
    ) -> Result<Self> {
        FiniteGroup::with_cap(name, degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self> {
        let name = name.into();
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Invalid(format!(
                    "{name}: generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut store = ElementStore::new(degree);
        let mut parent = vec![(NONE, 0u16)];
        store.insert(Permutation::identity(degree).images());
        let mut buf = vec![0u16; degree];
        let mut i = 0;
        while i < store.len {
            for (s, g) in generators.iter().enumerate() {
                let gi = g.images();
                let x = store.get(i);
                for k in 0..degree {
                    buf[k] = gi[x[k] as usize];
                }
                let (_, fresh) = store.insert(&buf);
                if fresh {
                    parent.push((i as u32, s as u16));
                    if store.len > cap {
                        return Err(Error::CapExceeded { name, cap });
                    }
                }
            }
            i += 1;
        }
        let gen_ids = generators
            .iter()
            .map(|g| store.find(g.images()).unwrap())
            .collect();
        let mut group = FiniteGroup {
            name,
            label: None,
            degree,
            generators,
            gen_ids,
            store,
            orders: Vec::new(),
            inverses: Vec::new(),
            parent,
            class_of: Vec::new(),
            classes: Vec::new(),
            real_classes: Vec::new(),
            real_class_of: Vec::new(),
            primes: Vec::new(),
            cache: Cache::default(),
        };
        group.primes = prime_divisors(group.order() as u64);
        group.compute_orders_and_inverses();
        group.compute_classes();
        Ok(group)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn compute_orders_and_inverses(&mut self) {
        let n = self.order();
        let d = self.degree;
        let mut seen = vec![false; d];
        let mut inv = vec![0u16; d];
        self.orders = Vec::with_capacity(n);
        self.inverses = Vec::with_capacity(n);
        for e in 0..n {
            let x = self.store.get(e);
            seen.iter_mut().for_each(|s| *s = false);
            let mut ord: u64 = 1;
            for start in 0..d {
                if seen[start] {
                    continue;
                }
                let mut len = 0u64;
                let mut y = start;
                while !seen[y] {
                    seen[y] = true;
                    y = x[y] as usize;
                    len += 1;
                }
                ord = num_integer::lcm(ord, len);
            }
            self.orders.push(ord as u32);
            for (k, &v) in x.iter().enumerate() {
                inv[v as usize] = k as u16;
            }
            let id = self.store.find(&inv).expect("inverse lies in the group");
            self.inverses.push(id as u32);
        }
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let d = self.degree;
        let mut class_of = vec![NONE; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        let mut buf = vec![0u16; d];
        for start in 0..n {
            if class_of[start] != NONE {
                continue;
            }
            let cid = raw.len() as u32;
            let mut members = vec![start as u32];
            class_of[start] = cid;
            let mut k = 0;
            while k < members.len() {
                let y = members[k] as usize;
                for g in &self.generators {
                    // g⁻¹ y g maps g(i) to g(y(i))
                    let gi = g.images();
                    let yi = self.store.get(y);
                    for i in 0..d {
                        buf[gi[i] as usize] = gi[yi[i] as usize];
                    }
                    let z = self.store.find(&buf).unwrap();
                    if class_of[z] == NONE {
                        class_of[z] = cid;
                        members.push(z as u32);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        let reps: Vec<usize> = raw
            .iter()
            .map(|m| {
                let mut best = m[0] as usize;
                for &x in m.iter().skip(1) {
                    if self.store.get(x as usize) < self.store.get(best) {
                        best = x as usize;
                    }
                }
                best
            })
            .collect();
        let mut idx: Vec<usize> = (0..raw.len()).collect();
        idx.sort_by(|&a, &b| {
            let ka = (self.orders[reps[a]], raw[a].len());
            let kb = (self.orders[reps[b]], raw[b].len());
            ka.cmp(&kb)
                .then_with(|| self.store.get(reps[a]).cmp(self.store.get(reps[b])))
        });
        let mut new_id = vec![0u32; raw.len()];
        for (new, &old) in idx.iter().enumerate() {
            new_id[old] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = new_id[*c as usize];
        }
        let mut raws: Vec<Option<Vec<u32>>> = raw.into_iter().map(Some).collect();
        let mut classes = Vec::with_capacity(idx.len());
        for &old in &idx {
            let members = raws[old].take().unwrap();
            let rep = reps[old];
            classes.push(Class {
                rep,
                size: members.len(),
                order: self.orders[rep],
                members,
                inverse: class_of[self.inverses[rep] as usize] as usize,
            });
        }
        let mut real_classes = Vec::new();
        let mut real_class_of = vec![usize::MAX; classes.len()];
        for (i, c) in classes.iter().enumerate() {
            if real_class_of[i] != usize::MAX {
                continue;
            }
            let mut ids = vec![i];
            if c.inverse != i {
                ids.push(c.inverse);
            }
            for &j in &ids {
                real_class_of[j] = real_classes.len();
            }
            real_classes.push(RealClass {
                rep: c.rep,
                size: ids.iter().map(|&j| classes[j].size).sum(),
                order: c.order,
                is_npp: prime_divisors(c.order as u64).len() >= 2,
                classes: ids,
            });
        }
        self.class_of = class_of;
        self.classes = classes;
        self.real_classes = real_classes;
        self.real_class_of = real_class_of;
    }

    // ---- basic accessors ----

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.store.len
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_ids(&self) -> &[usize] {
        &self.gen_ids
    }

    pub fn prime_divisors(&self) -> &[u64] {
        &self.primes
    }

    pub fn images(&self, e: usize) -> &[u16] {
        self.store.get(e)
    }

    pub fn element(&self, e: usize) -> Permutation {
        Permutation::from_raw(self.store.get(e).to_vec())
    }

    pub fn find(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        self.store.find(p.images())
    }

    /// All elements as permutations, in index order.
    pub fn elements(&self) -> Vec<Permutation> {
        (0..self.order()).map(|e| self.element(e)).collect()
    }

    #[inline]
    pub fn element_order(&self, e: usize) -> u32 {
        self.orders[e]
    }

    #[inline]
    pub fn inv(&self, e: usize) -> usize {
        self.inverses[e] as usize
    }

    /// `a` followed by `b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let x = self.store.get(a);
        let y = self.store.get(b);
        if self.degree <= STACK_DEGREE {
            let mut buf = [0u16; STACK_DEGREE];
            for k in 0..self.degree {
                buf[k] = y[x[k] as usize];
            }
            self.store
                .find(&buf[..self.degree])
                .expect("product lies in the group")
        } else {
            let buf: Vec<u16> = x.iter().map(|&k| y[k as usize]).collect();
            self.store.find(&buf).expect("product lies in the group")
        }
    }

    /// `g⁻¹ a g`.
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.orders[a] as u64;
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    /// Generator indices whose product (left to right) is `e`.
    pub fn word(&self, e: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut x = e;
        while x != 0 {
            let (p, s) = self.parent[x];
            w.push(s as usize);
            x = p as usize;
        }
        w.reverse();
        w
    }

    /// Breadth-first tree: for `e > 0`, `e = parent(e) · generator(e)` and `parent(e) < e`.
    pub fn tree_parent(&self, e: usize) -> Option<(usize, usize)> {
        if e == 0 {
            None
        } else {
            let (p, s) = self.parent[e];
            Some((p as usize, s as usize))
        }
    }

    // ---- classes ----

    pub fn conjugacy_classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn real_classes(&self) -> &[RealClass] {
        &self.real_classes
    }

    #[inline]
    pub fn class_of(&self, e: usize) -> usize {
        self.class_of[e] as usize
    }

    pub fn real_class_of_class(&self, c: usize) -> usize {
        self.real_class_of[c]
    }

    pub fn real_class_of(&self, e: usize) -> usize {
        self.real_class_of[self.class_of(e)]
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.classes[c].size
    }

    // ---- subgroups ----

    fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut m = self.empty_set();
        m.insert(0);
        Subgroup {
            members: m,
            order: 1,
            gens: Vec::new(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        let mut m = self.empty_set();
        m.insert_range(..);
        Subgroup {
            members: m,
            order: self.order(),
            gens: self.gen_ids.clone(),
        }
    }

    /// `⟨h, x₁, …⟩`, skipping extras already contained.
    pub fn extend(&self, h: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut members = h.members.clone();
        let mut gens = h.gens.clone();
        let mut list: Vec<usize> = h.members.ones().collect();
        for &x in extra {
            if members.contains(x) {
                continue;
            }
            gens.push(x);
            // Cosets of the current subgroup: multiply by all generators until closed.
            let mut k = 0;
            let start_len = list.len();
            // Every element already present times the new generator may be new.
            let mut frontier: Vec<usize> = Vec::new();
            for &e in &list[..start_len] {
                let y = self.mul(e, x);
                if !members.contains(y) {
                    members.insert(y);
                    frontier.push(y);
                }
            }
            list.extend_from_slice(&frontier);
            k += start_len;
            while k < list.len() {
                let e = list[k];
                for &s in &gens {
                    let y = self.mul(e, s);
                    if !members.contains(y) {
                        members.insert(y);
                        list.push(y);
                    }
                }
                k += 1;
            }
        }
        Subgroup {
            order: list.len(),
            members,
            gens,
        }
    }

    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        self.extend(&self.trivial_subgroup(), gens)
    }

    pub fn subgroup_of_perms(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let ids: Option<Vec<usize>> = gens.iter().map(|g| self.find(g)).collect();
        let ids = ids.ok_or_else(|| Error::Invalid("generator outside the group".into()))?;
        Ok(self.subgroup(&ids))
    }

    /// Subgroup with the given member set, which must be closed; generators chosen greedily.
    pub fn subgroup_from_set(&self, set: &FixedBitSet) -> Subgroup {
        let mut h = self.trivial_subgroup();
        let target = set.count_ones(..);
        for e in set.ones() {
            if h.order == target {
                break;
            }
            if !h.contains(e) {
                h = self.extend(&h, &[e]);
            }
        }
        debug_assert_eq!(&h.members, set);
        h
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.gens
            .iter()
            .all(|&x| self.gen_ids.iter().all(|&g| h.contains(self.conj(x, g))))
    }

    pub fn normal_closure(&self, elems: &[usize]) -> Subgroup {
        let mut h = self.subgroup(elems);
        loop {
            let mut missing = Vec::new();
            for &x in &h.gens {
                for &g in &self.gen_ids {
                    let y = self.conj(x, g);
                    if !h.contains(y) && !missing.contains(&y) {
                        missing.push(y);
                    }
                }
            }
            if missing.is_empty() {
                return h;
            }
            h = self.extend(&h, &missing);
        }
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut m = a.members.clone();
        m.intersect_with(&b.members);
        self.subgroup_from_set(&m)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if b.is_subgroup_of(a) {
            return a.clone();
        }
        if a.is_subgroup_of(b) {
            return b.clone();
        }
        self.extend(a, &b.gens)
    }

    /// `A·N` for normal `N`, checking `|AN| = |A||N|/|A∩N|`.
    pub fn normal_product(&self, a: &Subgroup, n: &Subgroup) -> Result<Subgroup> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let p = self.join(a, n);
        let i = a.members.intersection(&n.members).count();
        assert_eq!(
            p.order * i,
            a.order * n.order,
            "product formula |AN| = |A||N|/|A∩N|"
        );
        Ok(p)
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut m = self.empty_set();
        for x in h.members.ones() {
            m.insert(self.conj(x, g));
        }
        let gens = h.gens.iter().map(|&x| self.conj(x, g)).collect();
        Subgroup {
            members: m,
            order: h.order,
            gens,
        }
    }

    /// Member set of `g⁻¹ H g`.
    pub fn conjugate_set(&self, h: &Subgroup, g: usize) -> FixedBitSet {
        let mut m = self.empty_set();
        for x in h.members.ones() {
            m.insert(self.conj(x, g));
        }
        m
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mut m = self.empty_set();
        for g in 0..self.order() {
            if h.gens.iter().all(|&x| h.contains(self.conj(x, g))) {
                m.insert(g);
            }
        }
        self.subgroup_from_set(&m)
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let mut m = self.empty_set();
        for g in 0..self.order() {
            if h.gens.iter().all(|&x| self.mul(x, g) == self.mul(g, x)) {
                m.insert(g);
            }
        }
        self.subgroup_from_set(&m)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// Subgroup as a group in its own right (same degree).
    pub fn subgroup_as_group(&self, h: &Subgroup, name: &str) -> FiniteGroup {
        let gens = h.gens.iter().map(|&x| self.element(x)).collect();
        FiniteGroup::new(name, self.degree, gens).expect("subgroup fits under the parent's cap")
    }

    /// Normal subgroups sorted by order, then by member set.
    pub fn normal_subgroups(&self) -> &[Subgroup] {
        self.cache
            .normal
            .get_or_init(|| self.compute_normal_subgroups())
    }

    fn compute_normal_subgroups(&self) -> Vec<Subgroup> {
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut minimal: Vec<Subgroup> = Vec::new();
        let triv = self.trivial_subgroup();
        seen.insert(triv.members.clone());
        let mut all = vec![triv];
        for c in self.classes.iter().skip(1) {
            let n = self.normal_closure(&[c.rep]);
            if seen.insert(n.members.clone()) {
                minimal.push(n.clone());
                all.push(n);
            }
        }
        let mut k = 0;
        while k < all.len() {
            let base = all[k].clone();
            for m in &minimal {
                if m.is_subgroup_of(&base) {
                    continue;
                }
                let j = self.join(&base, m);
                if seen.insert(j.members.clone()) {
                    all.push(j);
                }
            }
            k += 1;
        }
        all.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then_with(|| a.members.ones().cmp(b.members.ones()))
        });
        all
    }

    /// Derived subgroup of a normal subgroup `h`.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut comms = Vec::new();
        for (i, &a) in h.gens.iter().enumerate() {
            for &b in &h.gens[i + 1..] {
                let c = self.comm(a, b);
                if c != 0 && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ …` down to the first repeated term.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let next = self.derived_subgroup(last);
            if next.order == last.order {
                return series;
            }
            series.push(next);
        }
    }

    /// `O^p(G)`, generated by the elements of order prime to `p`.
    pub fn residual_p(&self, p: u64) -> Subgroup {
        let reps: Vec<usize> = self
            .classes
            .iter()
            .filter(|c| !(c.order as u64).is_multiple_of(p) && c.order > 1)
            .map(|c| c.rep)
            .collect();
        self.normal_closure(&reps)
    }

    pub fn solvable_residual(&self) -> Subgroup {
        self.derived_series().pop().unwrap()
    }

    /// `G^nil = ⋂_p O^p(G)`.
    pub fn nilpotent_residual(&self) -> Subgroup {
        let mut m = self.whole().members;
        for &p in &self.primes {
            m.intersect_with(&self.residual_p(p).members);
        }
        let nil = self.subgroup_from_set(&m);
        assert!(
            self.solvable_residual().is_subgroup_of(&nil),
            "G^sol ⊆ G^nil"
        );
        nil
    }

    /// A Sylow `p`-subgroup, grown one normalizing `p`-element at a time.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let target = p_part(self.order() as u64, p) as usize;
        let mut pg = self.trivial_subgroup();
        while pg.order < target {
            let n = self.normalizer(&pg);
            let x = n
                .elements()
                .find(|&x| !pg.contains(x) && is_power_of(self.orders[x] as u64, p))
                .expect("a non-Sylow p-subgroup has a p-element in its normalizer outside it");
            pg = self.extend(&pg, &[x]);
        }
        assert_eq!(pg.order, target);
        pg
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o as usize == self.order())
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_ids;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.primes.iter().all(|&p| self.is_normal(&self.sylow(p)))
    }

    pub fn is_solvable(&self) -> bool {
        self.solvable_residual().order == 1
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup(&self.whole()).order == self.order()
    }

    pub fn structure(&self, pred: Structure) -> bool {
        let n = self.order() as u64;
        match pred {
            Structure::Cyclic => self.is_cyclic(),
            Structure::Abelian => self.is_abelian(),
            Structure::Nilpotent => self.is_nilpotent(),
            Structure::Solvable => self.is_solvable(),
            Structure::Perfect => self.is_perfect(),
            Structure::PGroup(p) => is_power_of(n, p),
            Structure::ElementaryAbelian(p) => {
                is_power_of(n, p)
                    && self.is_abelian()
                    && self.orders.iter().all(|&o| o == 1 || o as u64 == p)
            }
        }
    }

    /// Structure test on a subgroup; direct where cheap, otherwise via re-enumeration.
    pub fn subgroup_structure(&self, h: &Subgroup, pred: Structure) -> bool {
        let n = h.order as u64;
        let abelian = || {
            h.gens
                .iter()
                .all(|&a| h.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
        };
        match pred {
            Structure::Cyclic => h.elements().any(|x| self.orders[x] as usize == h.order),
            Structure::Abelian => abelian(),
            Structure::PGroup(p) => is_power_of(n, p),
            Structure::ElementaryAbelian(p) => {
                is_power_of(n, p)
                    && abelian()
                    && h.elements()
                        .all(|x| self.orders[x] == 1 || self.orders[x] as u64 == p)
            }
            Structure::Nilpotent if is_prime_power_or_one(n) => true,
            _ => self.subgroup_as_group(h, "H").structure(pred),
        }
    }

    /// Largest nilpotent normal subgroup.
    pub fn fitting(&self) -> Subgroup {
        let nil: Vec<&Subgroup> = self
            .normal_subgroups()
            .iter()
            .filter(|n| self.subgroup_structure(n, Structure::Nilpotent))
            .collect();
        let best = nil.iter().max_by_key(|n| n.order).unwrap();
        assert_eq!(
            nil.iter().filter(|n| n.order == best.order).count(),
            1,
            "F(G) is unique"
        );
        assert!(
            nil.iter().all(|n| n.is_subgroup_of(best)),
            "F(G) contains all nilpotent normal subgroups"
        );
        (*best).clone()
    }

    /// Preimage of `F(G/F(G))`.
    pub fn fitting2(&self) -> Subgroup {
        let f = self.fitting();
        let q = self.quotient(&f).expect("F(G) is normal");
        let f2 = q.group.fitting();
        q.preimage(self, &f2)
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        Ok(Quotient::build(self, n))
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut element_orders = BTreeMap::new();
        for &o in &self.orders {
            *element_orders.entry(o).or_insert(0) += 1;
        }
        let mut class_sizes: Vec<usize> = self.classes.iter().map(|c| c.size).collect();
        class_sizes.sort_unstable();
        let series = self.derived_series();
        let derived_length = if series.last().unwrap().order == 1 {
            Some(series.len() - 1)
        } else {
            None
        };
        Fingerprint {
            order: self.order(),
            element_orders,
            class_sizes,
            center_order: self.center().order,
            derived_length,
        }
    }
}

pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// `G/N` realized as a permutation group, with the projection recorded.
pub struct Quotient {
    pub group: FiniteGroup,
    kernel: Subgroup,
    projection: Vec<u32>,
    lifts: Vec<u32>,
}

impl Quotient {
    fn build(g: &FiniteGroup, n: &Subgroup) -> Quotient {
        let index = g.order() / n.order;
        let name = format!("{}/N{}", g.name, n.order);
        let qgens: Vec<Permutation>;
        let degree: usize;
        if n.order == 1 {
            let group = g.clone().with_name(name);
            let projection = (0..g.order() as u32).collect::<Vec<_>>();
            return Quotient {
                group,
                kernel: n.clone(),
                lifts: projection.clone(),
                projection,
            };
        } else if let Some(gens) = orbit_action(g, n, index) {
            degree = gens[0].degree();
            qgens = gens;
        } else {
            let (ids, count) = right_cosets(g, n);
            degree = count;
            qgens = g
                .gen_ids
                .iter()
                .map(|&s| {
                    let mut img = vec![0usize; count];
                    for x in 0..g.order() {
                        img[ids[x] as usize] = ids[g.mul(x, s)] as usize;
                    }
                    Permutation::from_images(img).unwrap()
                })
                .collect();
        }
        let group =
            FiniteGroup::new(name, degree, qgens).expect("quotient is smaller than its base");
        assert_eq!(group.order() * n.order, g.order(), "|G/N|·|N| = |G|");
        let mut projection = vec![0u32; g.order()];
        for x in 1..g.order() {
            let (p, s) = g.parent[x];
            projection[x] =
                group.mul(projection[p as usize] as usize, group.gen_ids[s as usize]) as u32;
        }
        let mut lifts = vec![NONE; group.order()];
        for x in 0..g.order() {
            let q = projection[x] as usize;
            if lifts[q] == NONE {
                lifts[q] = x as u32;
            }
        }
        for &a in &g.gen_ids {
            for &b in &g.gen_ids {
                let lhs = projection[g.mul(a, b)] as usize;
                let rhs = group.mul(projection[a] as usize, projection[b] as usize);
                assert_eq!(lhs, rhs, "projection is a homomorphism");
            }
        }
        Quotient {
            group,
            kernel: n.clone(),
            projection,
            lifts,
        }
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    #[inline]
    pub fn project(&self, x: usize) -> usize {
        self.projection[x] as usize
    }

    /// Some element of `G` mapping to `q`.
    pub fn lift(&self, q: usize) -> usize {
        self.lifts[q] as usize
    }

    pub fn preimage(&self, g: &FiniteGroup, k: &Subgroup) -> Subgroup {
        let mut m = FixedBitSet::with_capacity(g.order());
        for x in 0..g.order() {
            if k.contains(self.project(x)) {
                m.insert(x);
            }
        }
        let mut gens: Vec<usize> = self.kernel.gens.clone();
        gens.extend(k.generators().iter().map(|&q| self.lift(q)));
        let h = g.subgroup(&gens);
        debug_assert_eq!(h.members, m);
        h
    }

    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = h.generators().iter().map(|&x| self.project(x)).collect();
        self.group.subgroup(&gens)
    }
}

/// Action of `G` on the `N`-orbits of points, if its kernel is exactly `N`.
fn orbit_action(g: &FiniteGroup, n: &Subgroup, index: usize) -> Option<Vec<Permutation>> {
    let d = g.degree;
    let mut orbit = vec![usize::MAX; d];
    let mut count = 0;
    for start in 0..d {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = count;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &s in &n.gens {
                let y = g.images(s)[x] as usize;
                if orbit[y] == usize::MAX {
                    orbit[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    if count == d || count < 2 {
        return None;
    }
    let mut gens = Vec::new();
    for gp in &g.generators {
        let mut img = vec![0usize; count];
        for x in 0..d {
            img[orbit[x]] = orbit[gp.apply(x)];
        }
        gens.push(Permutation::from_images(img).ok()?);
    }
    let q = FiniteGroup::with_cap("probe", count, gens.clone(), index).ok()?;
    if q.order() == index {
        Some(gens)
    } else {
        None
    }
}

/// Right coset ids `Nx ↦ 0..|G:N|`, numbered by first appearance.
fn right_cosets(g: &FiniteGroup, n: &Subgroup) -> (Vec<u32>, usize) {
    let mut ids = vec![NONE; g.order()];
    let nel: Vec<usize> = n.elements().collect();
    let mut count = 0u32;
    for x in 0..g.order() {
        if ids[x] != NONE {
            continue;
        }
        for &k in &nel {
            ids[g.mul(k, x)] = count;
        }
        count += 1;
    }
    (ids, count as usize)
}

/// Right coset ids `Kx` for an arbitrary subgroup, numbered by first appearance.
pub fn right_coset_ids(g: &FiniteGroup, k: &Subgroup) -> (Vec<u32>, usize) {
    right_cosets(g, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn grp(name: &str, degree: usize, gens: &[&str]) -> FiniteGroup {
        let gens = gens
            .iter()
            .map(|s| parse_cycles(s, degree).unwrap())
            .collect();
        FiniteGroup::new(name, degree, gens).unwrap()
    }

    fn s4() -> FiniteGroup {
        grp("S4", 4, &["(1 2)", "(1 2 3 4)"])
    }

    #[test]
    fn enumerates_small_groups() {
        assert_eq!(grp("S3", 3, &["(1 2)", "(2 3)"]).order(), 6);
        assert_eq!(grp("Z5", 5, &["(1 2 3 4 5)"]).order(), 5);
        assert_eq!(grp("T", 3, &[]).order(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![
            parse_cycles("(1 2)", 6).unwrap(),
            parse_cycles("(1 2 3 4 5 6)", 6).unwrap(),
        ];
        assert!(matches!(
            FiniteGroup::with_cap("S6", 6, gens, 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn class_counts() {
        let s3 = grp("S3", 3, &["(1 2)", "(2 3)"]);
        assert_eq!(s3.conjugacy_classes().len(), 3);
        assert_eq!(s3.real_classes().len(), 3);
        let z5 = grp("Z5", 5, &["(1 2 3 4 5)"]);
        assert_eq!(z5.conjugacy_classes().len(), 5);
        assert_eq!(z5.real_classes().len(), 3);
        let a5 = grp("A5", 5, &["(1 2 3)", "(1 2 3 4 5)"]);
        assert_eq!(a5.conjugacy_classes().len(), 5);
        assert_eq!(a5.real_classes().len(), 5);
        let total: usize = a5.conjugacy_classes().iter().map(|c| c.size).sum();
        assert_eq!(total, 60);
    }

    #[test]
    fn class_order_is_deterministic() {
        let a = s4();
        let b = grp("S4", 4, &["(1 2 3 4)", "(1 2)"]);
        let reps_a: Vec<Permutation> = a
            .conjugacy_classes()
            .iter()
            .map(|c| a.element(c.rep))
            .collect();
        let reps_b: Vec<Permutation> = b
            .conjugacy_classes()
            .iter()
            .map(|c| b.element(c.rep))
            .collect();
        assert_eq!(reps_a, reps_b);
        let orders: Vec<u32> = a.conjugacy_classes().iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 2, 3, 4]);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let g = s4();
        let orders: Vec<usize> = g.normal_subgroups().iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let z6 = grp("Z6", 6, &["(1 2 3 4 5 6)"]);
        let orders: Vec<usize> = z6.normal_subgroups().iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn sylow_intersections_in_s4() {
        let g = s4();
        let p = g.sylow(2);
        assert_eq!(p.order(), 8);
        let conjugates: Vec<Subgroup> = (0..g.order())
            .map(|x| g.conjugate_subgroup(&p, x))
            .collect();
        let q = conjugates
            .iter()
            .find(|q| q.members() != p.members())
            .unwrap();
        assert_eq!(g.intersection(&p, q).order(), 4);
    }

    #[test]
    fn normal_product_in_s4() {
        let g = s4();
        let t = g.subgroup(&[g.find(&parse_cycles("(1 2)", 4).unwrap()).unwrap()]);
        assert_eq!(t.order(), 2);
        let a4 = g.residual_p(2);
        assert_eq!(a4.order(), 12);
        assert_eq!(g.normal_product(&t, &a4).unwrap().order(), 24);
        assert_eq!(g.normal_product(&a4, &t), Err(Error::NotNormal));
    }

    #[test]
    fn residuals() {
        let s5 = grp("S5", 5, &["(1 2)", "(1 2 3 4 5)"]);
        assert_eq!(s5.residual_p(2).order(), 60);
        assert_eq!(s5.residual_p(3).order(), 120);
        assert_eq!(s5.solvable_residual().order(), 60);
        assert_eq!(s5.nilpotent_residual().order(), 60);
        let z6 = grp("Z6", 6, &["(1 2 3 4 5 6)"]);
        assert_eq!(z6.residual_p(2).order(), 3);
        assert_eq!(z6.nilpotent_residual().order(), 1);
    }

    #[test]
    fn fitting_subgroups() {
        let g = s4();
        assert_eq!(g.fitting().order(), 4);
        assert_eq!(g.fitting2().order(), 12);
        let z12 = grp("Z12", 12, &["(1 2 3 4 5 6 7 8 9 10 11 12)"]);
        assert_eq!(z12.fitting().order(), 12);
    }

    #[test]
    fn quotients() {
        let g = s4();
        let v4 = g.fitting();
        let q = g.quotient(&v4).unwrap();
        assert_eq!(q.group.order(), 6);
        let fp = q.group.fingerprint();
        assert_eq!(fp.element_orders, BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
        assert_eq!(g.quotient(&g.whole()).unwrap().group.order(), 1);
        for x in 0..g.order() {
            for y in 0..g.order() {
                assert_eq!(
                    q.project(g.mul(x, y)),
                    q.group.mul(q.project(x), q.project(y))
                );
            }
        }
        let t = g.subgroup(&[1]);
        assert!(g.quotient(&t).is_err() || g.is_normal(&t));
    }

    #[test]
    fn structure_predicates() {
        let s3 = grp("S3", 3, &["(1 2)", "(2 3)"]);
        assert!(s3.is_solvable() && !s3.is_nilpotent());
        let a5 = grp("A5", 5, &["(1 2 3)", "(1 2 3 4 5)"]);
        assert!(a5.is_perfect());
        let v = grp("V", 4, &["(1 2)", "(3 4)"]);
        assert!(v.structure(Structure::ElementaryAbelian(2)));
        assert!(!v.is_cyclic());
    }

    #[test]
    fn words_evaluate_to_elements() {
        let g = s4();
        for e in 0..g.order() {
            let mut x = 0;
            for s in g.word(e) {
                x = g.mul(x, g.generator_ids()[s]);
            }
            assert_eq!(x, e);
        }
    }
}
