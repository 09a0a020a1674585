//! Groups held as full multiplication tables, for brute-force isomorphism
//! and automorphism search at small orders.

use std::collections::HashMap;

use super::group::GroupError;
use super::{Perm, PermGroup};

/// Largest order accepted by [`TableGroup::new`].
pub const TABLE_CAP: u64 = 5000;

#[derive(Clone, Debug)]
pub struct TableGroup {
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    identity: u32,
}

impl TableGroup {
    pub fn new(g: &PermGroup) -> Result<TableGroup, GroupError> {
        TableGroup::with_cap(g, TABLE_CAP)
    }

    pub fn with_cap(g: &PermGroup, cap: u64) -> Result<TableGroup, GroupError> {
        let elements = g.elements(cap)?;
        let n = elements.len();
        let index: HashMap<Perm, u32> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let mut table = vec![0u32; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                table[i * n + j] = index[&x.mul(y)];
            }
        }
        let identity = index[&g.identity()];
        let inverse = (0..n).map(|i| index[&elements[i].inverse()]).collect();
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        Ok(TableGroup { elements, index, table, inverse, orders, identity })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, g: &Perm) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    /// `b⁻¹ a b`.
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn order_histogram(&self) -> Vec<(u32, usize)> {
        let mut h: HashMap<u32, usize> = HashMap::new();
        for &o in &self.orders {
            *h.entry(o).or_default() += 1;
        }
        let mut v: Vec<_> = h.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[self.identity as usize] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        mask
    }

    fn closure_size(&self, gens: &[u32]) -> usize {
        self.closure(gens).iter().filter(|&&b| b).count()
    }

    /// A small generating set, preferring elements of large order from rare
    /// order classes; deterministic.
    pub fn small_generating_set(&self) -> Vec<u32> {
        let n = self.order();
        if n == 1 {
            return Vec::new();
        }
        let mut class_size: HashMap<u32, usize> = HashMap::new();
        for &o in &self.orders {
            *class_size.entry(o).or_default() += 1;
        }
        let mut ranked: Vec<u32> = (0..n as u32).filter(|&i| i != self.identity).collect();
        ranked.sort_by_key(|&i| (class_size[&self.orders[i as usize]], std::cmp::Reverse(self.orders[i as usize]), i));

        // one element generating everything
        if let Some(&g) = ranked.iter().find(|&&g| self.orders[g as usize] as usize == n) {
            return vec![g];
        }
        // try pairs with the first element drawn from a few class representatives
        let mut firsts: Vec<u32> = Vec::new();
        for &g in &ranked {
            if !firsts.iter().any(|&f| self.orders[f as usize] == self.orders[g as usize]) {
                firsts.push(g);
            }
        }
        for &x in &firsts {
            for &y in &ranked {
                if self.closure_size(&[x, y]) == n {
                    return vec![x, y];
                }
            }
        }
        // greedy fallback
        let mut gens = Vec::new();
        let mut mask = self.closure(&gens);
        for &g in &ranked {
            if !mask[g as usize] {
                gens.push(g);
                mask = self.closure(&gens);
            }
        }
        gens
    }

    /// Extends generator images to a map on all elements, checking the
    /// homomorphism condition on every edge of the Cayley graph and injectivity.
    fn extend(&self, gens: &[u32], target: &TableGroup, images: &[u32]) -> Option<Vec<u32>> {
        let n = self.order();
        let mut map = vec![u32::MAX; n];
        let mut used = vec![false; target.order()];
        map[self.identity as usize] = target.identity;
        used[target.identity as usize] = true;
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let fx = map[x as usize];
            for (&g, &fg) in gens.iter().zip(images) {
                let y = self.mul(x, g) as usize;
                let fy = target.mul(fx, fg);
                if map[y] == u32::MAX {
                    if used[fy as usize] {
                        return None;
                    }
                    used[fy as usize] = true;
                    map[y] = fy;
                    queue.push(y as u32);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        (queue.len() == n).then_some(map)
    }

    /// Backtracking search over generator images; `visit` returns `false` to stop.
    fn search_homs<F: FnMut(Vec<u32>) -> bool>(&self, target: &TableGroup, mut visit: F) {
        if self.order() != target.order() || self.order_histogram() != target.order_histogram() {
            return;
        }
        let gens = self.small_generating_set();
        let candidates: Vec<Vec<u32>> = gens
            .iter()
            .map(|&g| (0..target.order() as u32).filter(|&h| target.orders[h as usize] == self.orders[g as usize]).collect())
            .collect();
        let mut images = Vec::with_capacity(gens.len());
        self.search_rec(target, &gens, &candidates, &mut images, &mut visit);
    }

    fn search_rec<F: FnMut(Vec<u32>) -> bool>(
        &self,
        target: &TableGroup,
        gens: &[u32],
        candidates: &[Vec<u32>],
        images: &mut Vec<u32>,
        visit: &mut F,
    ) -> bool {
        let k = images.len();
        if k == gens.len() {
            return match self.extend(gens, target, images) {
                Some(map) => visit(map),
                None => true,
            };
        }
        for &c in &candidates[k] {
            let ok = (0..k).all(|j| {
                let (gj, hj) = (gens[j], images[j]);
                self.element_order(self.mul(gj, gens[k])) == target.element_order(target.mul(hj, c))
                    && self.element_order(self.mul(self.inv(gj), gens[k])) == target.element_order(target.mul(target.inv(hj), c))
            });
            if !ok {
                continue;
            }
            images.push(c);
            let go_on = self.search_rec(target, gens, candidates, images, visit);
            images.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    /// An isomorphism onto `other` as an index map, if one exists.
    pub fn isomorphism(&self, other: &TableGroup) -> Option<Vec<u32>> {
        let mut found = None;
        self.search_homs(other, |m| {
            found = Some(m);
            false
        });
        found
    }

    /// All automorphisms, as index maps.
    pub fn automorphism_maps(&self) -> Vec<Vec<u32>> {
        let mut all = Vec::new();
        self.search_homs(self, |m| {
            all.push(m);
            true
        });
        all
    }

    /// Checks that `map` is a bijective homomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &TableGroup, map: &[u32]) -> bool {
        let n = self.order();
        if map.len() != n || other.order() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &m in map {
            if seen[m as usize] {
                return false;
            }
            seen[m as usize] = true;
        }
        (0..n as u32).all(|a| (0..n as u32).all(|b| map[self.mul(a, b) as usize] == other.mul(map[a as usize], map[b as usize])))
    }

    fn map_to_perm(map: &[u32]) -> Perm {
        Perm::from_images(map.to_vec()).expect("automorphism is a bijection")
    }

    /// Automorphism group acting on element indices.
    pub fn automorphism_group(&self) -> PermGroup {
        let n = self.order();
        let mut aut = PermGroup::trivial(n);
        for m in self.automorphism_maps() {
            let p = Self::map_to_perm(&m);
            if !aut.contains(&p) {
                aut = aut.join(&[p]);
            }
        }
        aut
    }

    /// Inner automorphisms acting on element indices.
    pub fn inner_automorphism_group(&self) -> PermGroup {
        let n = self.order();
        let gens = self
            .small_generating_set()
            .into_iter()
            .map(|g| Self::map_to_perm(&(0..n as u32).map(|x| self.conj(x, g)).collect::<Vec<_>>()))
            .collect();
        PermGroup::new(n, gens)
    }
}

/// Isomorphism between two permutation groups, if any, as a map on elements.
pub fn isomorphic(g: &PermGroup, h: &PermGroup) -> Result<Option<Vec<(Perm, Perm)>>, GroupError> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let tg = TableGroup::new(g)?;
    let th = TableGroup::new(h)?;
    Ok(tg.isomorphism(&th).map(|m| {
        debug_assert!(tg.is_isomorphism(&th, &m));
        m.iter().enumerate().map(|(i, &j)| (tg.element(i as u32).clone(), th.element(j).clone())).collect()
    }))
}

pub fn are_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<bool, GroupError> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let tg = TableGroup::new(g)?;
    let th = TableGroup::new(h)?;
    Ok(match tg.isomorphism(&th) {
        Some(m) => tg.is_isomorphism(&th, &m),
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::named;

    #[test]
    fn self_isomorphism() {
        let g = named::gl23();
        let t = TableGroup::new(&g).unwrap();
        let m = t.isomorphism(&t).unwrap();
        assert!(t.is_isomorphism(&t, &m));
    }

    #[test]
    fn c4_vs_klein() {
        let c4 = named::cyclic(4);
        let v4 = PermGroup::new(4, vec![Perm::parse(4, "(1,2)(3,4)").unwrap(), Perm::parse(4, "(1,3)(2,4)").unwrap()]);
        assert!(!are_isomorphic(&c4, &v4).unwrap());
        assert!(are_isomorphic(&c4, &c4).unwrap());
    }

    #[test]
    fn sym3_copies() {
        let d3 = named::dihedral(3);
        let s3 = named::symmetric(3);
        assert!(are_isomorphic(&d3, &s3).unwrap());
        assert!(are_isomorphic(&s3, &d3).unwrap());
        // order histograms differ
        assert!(!are_isomorphic(&named::dihedral(4), &named::quaternion()).unwrap());
    }

    #[test]
    fn automorphism_counts() {
        let aut = |g: &PermGroup| TableGroup::new(g).unwrap().automorphism_group().order();
        assert_eq!(aut(&named::cyclic(3)), 2);
        assert_eq!(aut(&named::symmetric(3)), 6);
        assert_eq!(aut(&named::quaternion()), 24);
        assert_eq!(aut(&named::cyclic(8)), 4);
        let s3 = TableGroup::new(&named::symmetric(3)).unwrap();
        assert_eq!(s3.inner_automorphism_group().order(), 6);
        assert_eq!(s3.automorphism_maps().len(), 6);
    }

    #[test]
    fn isomorphism_between_agl_copies() {
        // AGL2(3) as a point stabilizer conjugate vs the natural copy
        let a = named::agl23();
        let twisted = a.conjugate(&Perm::parse(9, "(1,5,9)(2,3)").unwrap());
        assert!(are_isomorphic(&a, &twisted).unwrap());
        let bad = named::direct_product(&named::gl23(), &named::cyclic(9));
        assert!(!are_isomorphic(&a, &bad).unwrap());
    }
}
