//! Permutation groups backed by a deterministic stabilizer chain.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use thiserror::Error;

use super::Perm;

/// Default cap on explicit element enumeration.
pub const ELEMENT_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {order} exceeds the element cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("permutation of degree {got} does not match group degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps `point` to `x`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(point: usize, gens: Vec<Perm>, degree: usize) -> Level {
        let mut l = Level { point, gens, orbit: Vec::new(), transversal: Vec::new() };
        l.rebuild(degree);
        l
    }

    fn rebuild(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Perm>> = vec![None; degree];
        transversal[self.point] = Some(Perm::identity(degree));
        let mut orbit = vec![self.point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.gens {
                let y = g.image(x);
                if transversal[y].is_none() {
                    let u = transversal[x].as_ref().unwrap().mul(g);
                    transversal[y] = Some(u);
                    orbit.push(y);
                }
            }
            i += 1;
        }
        self.orbit = orbit;
        self.transversal = transversal;
    }
}

#[derive(Clone, Debug)]
struct Chain {
    levels: Vec<Level>,
}

impl Chain {
    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it went all the way through).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.image(level.point);
            if beta == level.point {
                continue;
            }
            match &level.transversal[beta] {
                None => return (g, i),
                Some(u) => g = g.mul(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }
}

/// Deterministic Schreier–Sims. Base points are the given prefix followed by
/// the first point moved by each newly needed strong generator.
fn schreier_sims(degree: usize, gens: &[Perm], base_prefix: &[usize]) -> Chain {
    let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut base: Vec<usize> = base_prefix.to_vec();
    for g in &gens {
        if base.iter().all(|&b| g.image(b) == b) {
            base.push(g.first_moved().unwrap());
        }
    }
    let mut levels: Vec<Level> = base
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let lg: Vec<Perm> = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.image(c) == c))
                .cloned()
                .collect();
            Level::new(b, lg, degree)
        })
        .collect();
    let mut chain_levels = std::mem::take(&mut levels);
    let mut i = chain_levels.len() as isize - 1;
    'outer: while i >= 0 {
        let iu = i as usize;
        let orbit = chain_levels[iu].orbit.clone();
        let lgens = chain_levels[iu].gens.clone();
        for &beta in &orbit {
            for g in &lgens {
                let gamma = g.image(beta);
                let ub = chain_levels[iu].transversal[beta].as_ref().unwrap();
                let ug = chain_levels[iu].transversal[gamma].as_ref().unwrap();
                let prod = ub.mul(g);
                if &prod == ug {
                    continue;
                }
                let schreier = prod.mul(&ug.inverse());
                let chain = Chain { levels: chain_levels };
                let (h, j) = chain.strip(schreier, iu + 1);
                chain_levels = chain.levels;
                let target = if j < chain_levels.len() {
                    Some(j)
                } else if !h.is_identity() {
                    let p = h.first_moved().unwrap();
                    chain_levels.push(Level::new(p, Vec::new(), degree));
                    Some(chain_levels.len() - 1)
                } else {
                    None
                };
                if let Some(j) = target {
                    for level in chain_levels.iter_mut().take(j + 1).skip(iu + 1) {
                        level.gens.push(h.clone());
                        level.rebuild(degree);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
        }
        i -= 1;
    }
    Chain { levels: chain_levels }
}

/// A permutation group given by generators; the stabilizer chain is built on
/// first use and cached.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<Chain>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.gens)
            .finish()
    }
}

impl PermGroup {
    /// Group generated by `gens` on `degree` points. Identity generators are dropped.
    pub fn new(degree: usize, gens: Vec<Perm>) -> PermGroup {
        assert!(gens.iter().all(|g| g.degree() == degree), "generator degree mismatch");
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        PermGroup { degree, gens, chain: OnceLock::new() }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| schreier_sims(self.degree, &self.gens, &[]))
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for l in &self.chain().levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.chain().strip(g.clone(), 0);
        j == self.chain().levels.len() && h.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Group generated by these generators together with `extra`.
    pub fn join(&self, extra: &[Perm]) -> PermGroup {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// Orbits on points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            let mut orb = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < orb.len() {
                let x = orb[i];
                for g in &self.gens {
                    let y = g.image(x);
                    if !seen[y] {
                        seen[y] = true;
                        orb.push(y);
                    }
                }
                i += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(point, &self.gens, |x, g| g.image(*x))
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Lazy iterator over all elements in chain order.
    pub fn iter_elements(&self) -> ElementIter<'_> {
        ElementIter::new(self)
    }

    /// All elements, deterministic chain order; fails if the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Perm>, GroupError> {
        let order = self.order();
        if order > cap {
            return Err(GroupError::CapExceeded { order, cap });
        }
        Ok(self.iter_elements().collect())
    }

    /// Stabilizer of `x` under a right action of this group, plus the orbit of `x`.
    ///
    /// Schreier generators are sifted into the stabilizer until its order
    /// reaches `|G| / |orbit|`.
    pub fn stabilizer<T, F>(&self, x: T, act: F) -> (PermGroup, Vec<T>)
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &Perm) -> T,
    {
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut orbit = vec![x.clone()];
        let mut reps = vec![self.identity()];
        index.insert(x, 0);
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.gens {
                let y = act(&orbit[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), orbit.len());
                    reps.push(reps[i].mul(g));
                    orbit.push(y);
                }
            }
            i += 1;
        }
        let target = self.order() / orbit.len() as u64;
        let mut stab = PermGroup::trivial(self.degree);
        'done: for (k, item) in orbit.iter().enumerate() {
            if stab.order() == target {
                break;
            }
            for g in &self.gens {
                if stab.order() == target {
                    break 'done;
                }
                let y = act(item, g);
                let j = index[&y];
                let s = reps[k].mul(g).mul(&reps[j].inverse());
                if !stab.contains(&s) {
                    stab = stab.join(&[s]);
                }
            }
        }
        debug_assert_eq!(stab.order(), target);
        (stab, orbit)
    }

    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        self.stabilizer(point, |x, g| g.image(*x)).0
    }

    /// Setwise stabilizer of a set of points.
    pub fn set_stabilizer(&self, set: &[usize]) -> PermGroup {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.stabilizer(s, |set, g| {
            let mut v: Vec<usize> = set.iter().map(|&x| g.image(x)).collect();
            v.sort_unstable();
            v
        })
        .0
    }

    /// Centralizer of one element, as the stabilizer under conjugation.
    pub fn centralizer_of(&self, g: &Perm) -> PermGroup {
        self.stabilizer(g.clone(), |x, h| x.conjugate(h)).0
    }

    /// Centralizer of a subgroup (of any group of the same degree).
    pub fn centralizer(&self, of: &PermGroup) -> PermGroup {
        let mut c = self.clone();
        for g in of.generators() {
            c = c.centralizer_of(g);
        }
        c
    }

    pub fn center(&self) -> PermGroup {
        self.centralizer(self)
    }

    /// Normalizer of a subgroup, via the stabilizer of its sorted element list.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup, GroupError> {
        let key = h.sorted_elements(ELEMENT_CAP)?;
        Ok(self
            .stabilizer(key, |set, g| {
                let mut v: Vec<Perm> = set.iter().map(|x| x.conjugate(g)).collect();
                v.sort_unstable();
                v
            })
            .0)
    }

    pub fn sorted_elements(&self, cap: u64) -> Result<Vec<Perm>, GroupError> {
        let mut v = self.elements(cap)?;
        v.sort_unstable();
        Ok(v)
    }

    /// The subgroup conjugated by `g`.
    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        PermGroup::new(self.degree, self.gens.iter().map(|x| x.conjugate(g)).collect())
    }

    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        parent
            .generators()
            .iter()
            .all(|g| self.gens.iter().all(|x| self.contains(&x.conjugate(g))))
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Perm]) -> PermGroup {
        let mut n = PermGroup::new(self.degree, gens.to_vec());
        let mut queue: VecDeque<Perm> = n.gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = x.conjugate(g);
                if !n.contains(&y) {
                    n = n.join(std::slice::from_ref(&y));
                    queue.push_back(y);
                }
            }
        }
        n
    }

    /// `[A, B]` for subgroups `A`, `B` of this group, both normalized by it.
    pub fn commutator_subgroup(&self, a: &PermGroup, b: &PermGroup) -> PermGroup {
        let comms: Vec<Perm> = a
            .gens
            .iter()
            .flat_map(|x| b.gens.iter().map(move |y| Perm::commutator(x, y)))
            .collect();
        let ab = PermGroup::new(self.degree, a.gens.iter().chain(b.gens.iter()).cloned().collect());
        ab.normal_closure(&comms)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        self.commutator_subgroup(self, self)
    }

    /// `G = γ1 ≥ γ2 ≥ ...` down to the first repeated term.
    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, self);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Nilpotency class, if the group is nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let lcs = self.lower_central_series();
        lcs.last().unwrap().is_trivial_order().then(|| lcs.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, x)| self.gens[i + 1..].iter().all(|y| x.mul(y) == y.mul(x)))
    }

    pub(crate) fn is_trivial_order(&self) -> bool {
        self.order() == 1
    }

    /// Intersection of two subgroups by filtering the smaller one's elements.
    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup, GroupError> {
        let (small, big) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        let mut acc = PermGroup::trivial(self.degree);
        for e in small.iter_elements_capped(ELEMENT_CAP)? {
            if big.contains(&e) && !acc.contains(&e) {
                acc = acc.join(&[e]);
            }
        }
        Ok(acc)
    }

    fn iter_elements_capped(&self, cap: u64) -> Result<ElementIter<'_>, GroupError> {
        let order = self.order();
        if order > cap {
            return Err(GroupError::CapExceeded { order, cap });
        }
        Ok(self.iter_elements())
    }

    /// Histogram of element orders as sorted `(order, count)` pairs.
    pub fn order_histogram(&self, cap: u64) -> Result<Vec<(u64, u64)>, GroupError> {
        let mut h: HashMap<u64, u64> = HashMap::new();
        for e in self.iter_elements_capped(cap)? {
            *h.entry(e.order()).or_default() += 1;
        }
        let mut v: Vec<(u64, u64)> = h.into_iter().collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Number of double cosets `A g B` in this group.
    pub fn double_coset_count(&self, a: &PermGroup, b: &PermGroup) -> Result<u64, GroupError> {
        Ok(self.double_coset_sizes(a, b)?.len() as u64)
    }

    /// Sizes of the double cosets `A g B`, in order of first representative.
    pub fn double_coset_sizes(&self, a: &PermGroup, b: &PermGroup) -> Result<Vec<u64>, GroupError> {
        let elems = self.elements(ELEMENT_CAP)?;
        let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut class = vec![usize::MAX; elems.len()];
        let mut sizes = Vec::new();
        for start in 0..elems.len() {
            if class[start] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            class[start] = id;
            let mut stack = vec![start];
            let mut count = 0u64;
            while let Some(i) = stack.pop() {
                count += 1;
                let g = &elems[i];
                let nbrs = a
                    .gens
                    .iter()
                    .map(|x| x.mul(g))
                    .chain(b.gens.iter().map(|y| g.mul(y)));
                for h in nbrs {
                    let j = *index
                        .get(&h)
                        .ok_or_else(|| GroupError::Invalid("double coset left the group".into()))?;
                    if class[j] == usize::MAX {
                        class[j] = id;
                        stack.push(j);
                    }
                }
            }
            sizes.push(count);
        }
        Ok(sizes)
    }
}

/// Orbit of `x` under a right action generated by `gens`, in discovery order.
pub fn orbit_of<T, F>(x: T, gens: &[Perm], act: F) -> Vec<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &Perm) -> T,
{
    let mut seen: HashSet<T> = HashSet::new();
    seen.insert(x.clone());
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let y = act(&orbit[i], g);
            if seen.insert(y.clone()) {
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

/// Odometer over transversal choices; element = `u_{m-1} * ... * u_0`.
pub struct ElementIter<'a> {
    chain: &'a Chain,
    idx: Vec<usize>,
    /// `partial[k] = u_{m-1} * ... * u_k` for the current choices.
    partial: Vec<Perm>,
    degree: usize,
    done: bool,
}

impl<'a> ElementIter<'a> {
    fn new(g: &'a PermGroup) -> Self {
        let chain = g.chain();
        let m = chain.levels.len();
        let mut it = ElementIter {
            chain,
            idx: vec![0; m],
            partial: vec![Perm::identity(g.degree); m + 1],
            degree: g.degree,
            done: false,
        };
        it.recompute_from(m);
        it
    }

    fn rep(&self, level: usize) -> &Perm {
        let l = &self.chain.levels[level];
        l.transversal[l.orbit[self.idx[level]]].as_ref().unwrap()
    }

    /// Recomputes `partial[k]` for all `k < from`.
    fn recompute_from(&mut self, from: usize) {
        let m = self.chain.levels.len();
        if from > m {
            return;
        }
        for k in (0..from).rev() {
            self.partial[k] = if k < m {
                self.partial[k + 1].mul(self.rep(k))
            } else {
                Perm::identity(self.degree)
            };
        }
    }
}

impl Iterator for ElementIter<'_> {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let out = self.partial[0].clone();
        // advance odometer, level 0 fastest
        let m = self.chain.levels.len();
        let mut k = 0;
        loop {
            if k == m {
                self.done = true;
                break;
            }
            self.idx[k] += 1;
            if self.idx[k] < self.chain.levels[k].orbit.len() {
                self.recompute_from(k + 1);
                break;
            }
            self.idx[k] = 0;
            k += 1;
        }
        Some(out)
    }
}
