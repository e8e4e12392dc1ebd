//! Finite groups as multiplication tables.
//!
//! Elements are indices `0..order` with `0` the identity, listed in
//! breadth-first order over the generators. Permutations compose left to
//! right: `i^(xy) = (i^x)^y`.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::module::RepModule;

/// Default cap on enumerated group order.
pub const GROUP_CAP: usize = 20_000;

/// Permutation generators as image arrays on `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl PermGroupSpec {
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {i} has {} images on {} points",
                    g.len(),
                    self.degree
                )));
            }
            let mut seen = vec![false; self.degree];
            for &x in g {
                if x >= self.degree || seen[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "generator {i} is not a bijection of 0..{}",
                        self.degree
                    )));
                }
                seen[x] = true;
            }
        }
        Ok(())
    }
}

/// `i^(xy) = (i^x)^y`.
pub fn perm_mul(x: &[usize], y: &[usize]) -> Vec<usize> {
    x.iter().map(|&i| y[i]).collect()
}

#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<usize>,
    gens: Vec<usize>,
    /// `parent[x] = (y, s)` with `x = y · gens[s]`; unused for the identity.
    parent: Vec<(usize, usize)>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.gens == other.gens && self.mul == other.mul
    }
}

impl Eq for GroupTable {}

/// A subgroup, as a sorted set of element indices of its parent table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elems: Vec<usize>,
}

impl Subgroup {
    fn from_members(members: &[bool]) -> Self {
        Subgroup {
            elems: (0..members.len()).filter(|&i| members[i]).collect(),
        }
    }

    pub fn trivial() -> Self {
        Subgroup { elems: vec![0] }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elems: self.elems.iter().copied().filter(|&x| other.contains(x)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiefFactor {
    pub prime: u32,
    pub rank: u32,
    pub centralizer: Subgroup,
}

/// Ascending chain `1 = N_0 < ... < N_m = G` of normal subgroups with
/// annotated factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiefSeries {
    pub terms: Vec<Subgroup>,
    pub factors: Vec<ChiefFactor>,
}

fn prime_power(n: usize) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    let (mut m, mut r) = (n, 0);
    while m % p == 0 {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p as u32, r))
}

impl GroupTable {
    /// Breadth-first closure of `gens` under `mul`, followed by the full
    /// multiplication table. Returns the table and the enumerated elements.
    pub fn generate<T, F>(gens: &[T], identity: T, mul: F, cap: usize) -> Result<(GroupTable, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let k = gens.len();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut parent = vec![(0, 0)];
        let mut right = Vec::new();
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            for (s, g) in gens.iter().enumerate() {
                let y = mul(&x, g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elems.len() >= cap {
                            return Err(Error::cap("group order", cap));
                        }
                        let j = elems.len();
                        index.insert(y.clone(), j);
                        elems.push(y);
                        parent.push((head, s));
                        j
                    }
                };
                right.push(j);
            }
            head += 1;
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            for b in 1..n {
                let (pb, s) = parent[b];
                let ab = table[a * n + pb] as usize;
                table[a * n + b] = right[ab * k + s] as u32;
            }
        }
        let gen_idx: Vec<usize> = (0..k).map(|s| right[s]).collect();
        let g = GroupTable::from_parts(n, table, gen_idx, parent, None);
        Ok((g, elems))
    }

    fn from_parts(
        order: usize,
        mul: Vec<u32>,
        gens: Vec<usize>,
        parent: Vec<(usize, usize)>,
        perms: Option<Vec<Vec<usize>>>,
    ) -> GroupTable {
        let mut inv = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b;
                    break;
                }
            }
        }
        let mut g = GroupTable {
            order,
            mul,
            inv,
            gens,
            parent,
            classes: Vec::new(),
            class_of: vec![usize::MAX; order],
            perms,
        };
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let mut classes = Vec::new();
        for x in 0..self.order {
            if self.class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut orbit = vec![x];
            self.class_of[x] = id;
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                head += 1;
                for si in 0..self.gens.len() {
                    let c = self.conj(y, self.gens[si]);
                    if self.class_of[c] == usize::MAX {
                        self.class_of[c] = id;
                        orbit.push(c);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        self.classes = classes;
    }

    /// Enumerates the group generated by permutations.
    pub fn from_perms(spec: &PermGroupSpec, cap: usize) -> Result<GroupTable> {
        spec.validate()?;
        let id: Vec<usize> = (0..spec.degree).collect();
        let (mut g, elems) = GroupTable::generate(&spec.generators, id, |x, y| perm_mul(x, y), cap)?;
        g.perms = Some(elems);
        Ok(g)
    }

    pub fn trivial() -> GroupTable {
        GroupTable::from_parts(1, vec![0], Vec::new(), vec![(0, 0)], None)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv[g], x), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Breadth-first parent: `x = parent · gens[s]`.
    pub fn parent(&self, x: usize) -> Option<(usize, usize)> {
        (x != 0).then(|| self.parent[x])
    }

    /// Word over the generators (indices into `generators()`) that evaluates to `x`.
    pub fn word(&self, mut x: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while x != 0 {
            let (p, s) = self.parent[x];
            w.push(s);
            x = p;
        }
        w.reverse();
        w
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> &[usize] {
        &self.classes[self.class_of[x]]
    }

    pub fn perm(&self, x: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[x].as_slice())
    }

    pub fn perm_degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    /// Index of the element with the given permutation image.
    pub fn find_perm(&self, images: &[usize]) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|p| p.as_slice() == images)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != 0 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elems: (0..self.order).collect(),
        }
    }

    /// Checks closure, identity, inverses and associativity on every triple
    /// (or 10⁴ pseudo-random triples when the order exceeds 500).
    pub fn verify_axioms(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a || self.mul(a, self.inv[a]) != 0 {
                return false;
            }
        }
        if n <= 500 {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    let ab = self.mul(a, b);
                    (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
            })
        } else {
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            (0..10_000).all(|_| {
                let mut next = || {
                    s ^= s << 13;
                    s ^= s >> 7;
                    s ^= s << 17;
                    (s % n as u64) as usize
                };
                let (a, b, c) = (next(), next(), next());
                self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
            })
        }
    }

    // ---- subgroups ----

    fn close(&self, members: &mut [bool], list: &mut Vec<usize>, gens: &[usize]) {
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !members[y] {
                    members[y] = true;
                    list.push(y);
                }
            }
        }
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut list = vec![0];
        self.close(&mut members, &mut list, gens);
        Subgroup::from_members(&members)
    }

    /// Smallest normal subgroup containing the seeds: the subgroup generated
    /// by their conjugacy classes.
    pub fn normal_closure(&self, seeds: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.classes.len()];
        for &x in seeds {
            let c = self.class_of[x];
            if !seen[c] {
                seen[c] = true;
                gens.extend_from_slice(&self.classes[c]);
            }
        }
        self.subgroup_generated(&gens)
    }

    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        h.contains(0)
            && h.elems
                .iter()
                .all(|&a| h.contains(self.inv[a]) && h.elems.iter().all(|&b| h.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.elems
            .iter()
            .all(|&x| self.gens.iter().all(|&g| h.contains(self.conj(x, g))))
    }

    /// `[A, B]`, generated by all commutators.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        let mut seen = vec![false; self.order];
        for &x in &a.elems {
            for &y in &b.elems {
                let c = self.commutator(x, y);
                if !seen[c] {
                    seen[c] = true;
                    gens.push(c);
                }
            }
        }
        self.subgroup_generated(&gens)
    }

    /// Derived series of a subgroup, down to its stable term.
    pub fn derived_series_of(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup(last, last);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    /// Lower central series `γ_{i+1}(H) = [γ_i(H), H]`, down to its stable term.
    pub fn lower_central_series_of(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup(last, h);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn derived_series(&self) -> Vec<Subgroup> {
        self.derived_series_of(&self.whole())
    }

    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        self.lower_central_series_of(&self.whole())
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        h.elems
            .iter()
            .all(|&a| h.elems.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().expect("nonempty").is_trivial()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().expect("nonempty").is_trivial()
    }

    pub fn is_nilpotent_subgroup(&self, h: &Subgroup) -> bool {
        self.lower_central_series_of(h).last().expect("nonempty").is_trivial()
    }

    /// Normal subgroups `M ⊋ N` of the whole group that are minimal with this
    /// property, i.e. the preimages of the minimal normal subgroups of `G/N`.
    /// Sorted by order, then by least generating element index.
    pub fn minimal_normal_over(&self, n: &Subgroup) -> Vec<Subgroup> {
        let mut cands: Vec<(Subgroup, usize)> = Vec::new();
        for x in 0..self.order {
            if n.contains(x) {
                continue;
            }
            let mut seeds = n.elems.clone();
            seeds.push(x);
            let m = self.normal_closure(&seeds);
            if !cands.iter().any(|(c, _)| *c == m) {
                cands.push((m, x));
            }
        }
        let minimal: Vec<(Subgroup, usize)> = cands
            .iter()
            .filter(|(m, _)| !cands.iter().any(|(o, _)| o.order() < m.order() && o.is_subset(m)))
            .cloned()
            .collect();
        let mut minimal = minimal;
        minimal.sort_by_key(|(m, x)| (m.order(), *x));
        minimal.into_iter().map(|(m, _)| m).collect()
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        self.minimal_normal_over(&Subgroup::trivial())
    }

    /// `{x : [x, a] ∈ B for all a ∈ A}`.
    pub fn centralizer_of_factor(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup {
            elems: (0..self.order)
                .filter(|&x| a.elems.iter().all(|&y| b.contains(self.commutator(x, y))))
                .collect(),
        }
    }

    pub fn chief_series(&self) -> Result<ChiefSeries> {
        if !self.is_soluble() {
            return Err(Error::NotSoluble);
        }
        let mut terms = vec![Subgroup::trivial()];
        let mut factors = Vec::new();
        while terms.last().expect("nonempty").order() < self.order {
            let n = terms.last().expect("nonempty");
            let m = self
                .minimal_normal_over(n)
                .into_iter()
                .next()
                .expect("proper normal subgroup has a cover");
            let (prime, rank) = prime_power(m.order() / n.order()).ok_or(Error::NotSoluble)?;
            let centralizer = self.centralizer_of_factor(&m, n);
            factors.push(ChiefFactor {
                prime,
                rank,
                centralizer,
            });
            terms.push(m);
        }
        Ok(ChiefSeries { terms, factors })
    }

    /// Partition into cosets `xN` with the least index as representative;
    /// returns the coset id of each element and the representatives.
    fn cosets(&self, n: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let mut id = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if id[x] != usize::MAX {
                continue;
            }
            for &y in &n.elems {
                id[self.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
        (id, reps)
    }

    /// `G/N` with the projection `G → G/N` as an index map.
    pub fn quotient(&self, n: &Subgroup) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_subgroup(n) || !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let (coset, reps) = self.cosets(n);
        let gens: Vec<usize> = self.gens.iter().map(|&g| coset[g]).collect();
        let (q, elems) = GroupTable::generate(&gens, coset[0], |&a, &b| coset[self.mul(reps[a], reps[b])], usize::MAX)?;
        let mut where_is = vec![0; reps.len()];
        for (i, &c) in elems.iter().enumerate() {
            where_is[c] = i;
        }
        let proj = (0..self.order).map(|x| where_is[coset[x]]).collect();
        Ok((q, proj))
    }

    /// `O_{p'p}(G)`: intersection of the centralizers of the p-chief factors
    /// of the computed chief series (the whole group if there are none).
    pub fn o_pprime_p(&self, p: u32) -> Result<Subgroup> {
        let series = self.chief_series()?;
        let mut out = self.whole();
        for f in series.factors.iter().filter(|f| f.prime == p) {
            out = out.intersect(&f.centralizer);
        }
        debug_assert!(self.is_normal(&out));
        Ok(out)
    }

    /// The subgroup as a group in its own right, generated by a greedily
    /// chosen generating set, with the embedding of its elements.
    pub fn subgroup_table(&self, h: &Subgroup) -> (GroupTable, Vec<usize>) {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = Subgroup::trivial();
        for &x in &h.elems {
            if !span.contains(x) {
                gens.push(x);
                span = self.subgroup_generated(&gens);
            }
        }
        // drop generators made redundant by later ones
        let mut i = 0;
        while i < gens.len() {
            let mut rest = gens.clone();
            rest.remove(i);
            if self.subgroup_generated(&rest).order() == h.order() {
                gens = rest;
            } else {
                i += 1;
            }
        }
        let (mut t, elems) =
            GroupTable::generate(&gens, 0usize, |&a, &b| self.mul(a, b), usize::MAX).expect("uncapped");
        if let Some(perms) = &self.perms {
            t.perms = Some(elems.iter().map(|&x| perms[x].clone()).collect());
        }
        (t, elems)
    }

    /// A p'-subgroup, grown greedily from the trivial group.
    pub fn p_prime_subgroup(&self, p: u32) -> Subgroup {
        let p = p as usize;
        let mut gens = Vec::new();
        let mut h = Subgroup::trivial();
        for x in 1..self.order {
            if h.contains(x) || self.element_order(x).is_multiple_of(p) {
                continue;
            }
            gens.push(x);
            let cand = self.subgroup_generated(&gens);
            if cand.order().is_multiple_of(p) {
                gens.pop();
            } else {
                h = cand;
            }
        }
        h
    }

    /// Right cosets `H t`; returns representatives with the identity first.
    pub fn right_transversal(&self, h: &Subgroup) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            for &y in &h.elems {
                seen[self.mul(y, x)] = true;
            }
            reps.push(x);
        }
        reps
    }

    /// For a right transversal, the decomposition `t_i · x = h · t_j`.
    pub fn coset_action(&self, h: &Subgroup, reps: &[usize], i: usize, x: usize) -> (usize, usize) {
        let y = self.mul(reps[i], x);
        for (j, &t) in reps.iter().enumerate() {
            let hh = self.mul(y, self.inv[t]);
            if h.contains(hh) {
                return (hh, j);
            }
        }
        unreachable!("transversal covers the group")
    }
}

/// The split extension `A ⋊ G` of a module over a prime field: pairs
/// `(v, g)` with `(v, g)(w, h) = (v·ρ(h) + w, gh)` for the right action.
/// Returns the table, the embedding of the vectors (indexed by their
/// integer code in base p) and the projection onto `G`.
pub fn semidirect_with_module(a: &RepModule, cap: usize) -> Result<(Arc<GroupTable>, Vec<usize>, Vec<usize>)> {
    let f: &Field = a.field();
    if !f.is_prime_field() {
        return Err(Error::PreconditionViolated(
            "split extensions need a module over a prime field".into(),
        ));
    }
    let g = a.group();
    let p = f.order() as u64;
    let d = a.dim();
    let size = p
        .checked_pow(d as u32)
        .and_then(|s| s.checked_mul(g.order() as u64))
        .unwrap_or(u64::MAX);
    if size > cap as u64 {
        return Err(Error::cap("split extension order", cap));
    }
    let mut gens: Vec<(Vec<Elem>, usize)> = g.generators().iter().map(|&s| (vec![0; d], s)).collect();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        gens.push((e, 0));
    }
    let (x, elems) = GroupTable::generate(
        &gens,
        (vec![0; d], 0usize),
        |(v, s), (w, t)| {
            let mut u = crate::linalg::vec_mat(f, v, a.elem_mat(*t));
            for (ui, &wi) in u.iter_mut().zip(w) {
                *ui = f.add(*ui, wi);
            }
            (u, g.mul(*s, *t))
        },
        cap,
    )?;
    let code = |v: &[Elem]| v.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64) as usize;
    let mut embed = vec![0; p.pow(d as u32) as usize];
    let mut proj = vec![0; elems.len()];
    for (i, (v, s)) in elems.iter().enumerate() {
        proj[i] = *s;
        if *s == 0 {
            embed[code(v)] = i;
        }
    }
    Ok((Arc::new(x), embed, proj))
}
