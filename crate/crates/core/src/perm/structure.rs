//! Sylow subgroups, O_p, quotients and recognition of a few small groups.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::group::{orbit_of, GroupError, ELEMENT_CAP};
use super::table::{are_isomorphic, TableGroup};
use super::{named, Perm, PermGroup};

/// Prime factorization as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut q = 1;
    while n.is_multiple_of(p) {
        n /= p;
        q *= p;
    }
    q
}

pub fn is_p_group(g: &PermGroup, p: u64) -> bool {
    p_part(g.order(), p) == g.order()
}

/// The prime `p` if `g` is a nontrivial p-group.
pub fn p_group_prime(g: &PermGroup) -> Option<u64> {
    match factorize(g.order()).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// A Sylow p-subgroup, grown one factor of `p` at a time inside successive
/// normalizers, taking the first suitable element in chain order.
pub fn sylow(g: &PermGroup, p: u64) -> Result<PermGroup, GroupError> {
    let target = p_part(g.order(), p);
    let mut s = PermGroup::trivial(g.degree());
    while s.order() < target {
        let n = if s.is_trivial() { g.clone() } else { g.normalizer(&s)? };
        let x = n
            .iter_elements()
            .find(|x| !s.contains(x) && s.contains(&x.pow(p as i64)))
            .ok_or_else(|| GroupError::Invalid("normalizer step found no p-element".into()))?;
        s = s.join(&[x]);
    }
    Ok(s)
}

/// Largest normal p-subgroup, as the intersection of the conjugates of a Sylow p-subgroup.
pub fn o_p(g: &PermGroup, p: u64) -> Result<PermGroup, GroupError> {
    let s = sylow(g, p)?;
    if s.is_trivial() {
        return Ok(s);
    }
    let key = s.sorted_elements(ELEMENT_CAP)?;
    let mut core = key.clone();
    let conjugates = orbit_of(key, g.generators(), |set, h| {
        let mut v: Vec<Perm> = set.iter().map(|x| x.conjugate(h)).collect();
        v.sort_unstable();
        v
    });
    for c in &conjugates {
        core.retain(|x| c.binary_search(x).is_ok());
        if core.len() == 1 {
            break;
        }
    }
    let mut out = PermGroup::trivial(g.degree());
    for x in core {
        if !out.contains(&x) {
            out = out.join(&[x]);
        }
    }
    Ok(out)
}

/// Product of `O_p` over the primes dividing `|g|` other than those in `skip`.
pub fn product_of_o_p(g: &PermGroup, skip: &[u64]) -> Result<PermGroup, GroupError> {
    let mut gens = Vec::new();
    for (p, _) in factorize(g.order()) {
        if !skip.contains(&p) {
            gens.extend(o_p(g, p)?.generators().iter().cloned());
        }
    }
    Ok(PermGroup::new(g.degree(), gens))
}

/// `G/N` realized as the action of `G` on the right cosets of `N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    normal: Vec<Perm>,
    cosets: Vec<Perm>,
    index: HashMap<Perm, usize>,
    group: PermGroup,
}

impl Quotient {
    pub fn new(g: &PermGroup, n: &PermGroup) -> Result<Quotient, GroupError> {
        if !n.is_subgroup_of(g) || !n.is_normal_in(g) {
            return Err(GroupError::Invalid("quotient by a non-normal subgroup".into()));
        }
        let normal = n.elements(ELEMENT_CAP)?;
        let canon = |x: &Perm| normal.iter().map(|m| m.mul(x)).min().unwrap();
        let cosets = orbit_of(g.identity(), g.generators(), |c, h| canon(&c.mul(h)));
        let index: HashMap<Perm, usize> = cosets.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut q = Quotient { normal, cosets, index, group: PermGroup::trivial(0) };
        let gens = g.generators().iter().map(|h| q.image(h)).collect();
        q.group = PermGroup::new(q.cosets.len(), gens);
        Ok(q)
    }

    fn canon(&self, x: &Perm) -> Perm {
        self.normal.iter().map(|m| m.mul(x)).min().unwrap()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Image of an element of `G`.
    pub fn image(&self, g: &Perm) -> Perm {
        let images = self.cosets.iter().map(|c| self.index[&self.canon(&c.mul(g))] as u32).collect();
        Perm::from_images_unchecked(images)
    }

    /// Conjugation by an element normalizing both `G` and `N`, as a permutation of the cosets.
    pub fn conjugation_by(&self, b: &Perm) -> Option<Perm> {
        let images: Option<Vec<u32>> = self
            .cosets
            .iter()
            .map(|c| self.index.get(&self.canon(&c.conjugate(b))).map(|&i| i as u32))
            .collect();
        Perm::from_images(images?).ok()
    }

    pub fn image_of_subgroup(&self, h: &PermGroup) -> PermGroup {
        PermGroup::new(self.group.degree(), h.generators().iter().map(|x| self.image(x)).collect())
    }

    pub fn coset_representatives(&self) -> &[Perm] {
        &self.cosets
    }
}

/// Small groups identified by isomorphism with an explicit copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SmallGroup {
    C3,
    Sym3,
    Q8,
    GL23,
    Alt5,
    PSL27,
    AGL23,
    Heisenberg27,
}

impl fmt::Display for SmallGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SmallGroup::C3 => "C3",
            SmallGroup::Sym3 => "Sym(3)",
            SmallGroup::Q8 => "Q8",
            SmallGroup::GL23 => "GL2(3)",
            SmallGroup::Alt5 => "Alt(5)",
            SmallGroup::PSL27 => "PSL2(7)",
            SmallGroup::AGL23 => "AGL2(3)",
            SmallGroup::Heisenberg27 => "3^(1+2)",
        };
        f.write_str(s)
    }
}

impl SmallGroup {
    pub const ALL: [SmallGroup; 8] = [
        SmallGroup::C3,
        SmallGroup::Sym3,
        SmallGroup::Q8,
        SmallGroup::GL23,
        SmallGroup::Alt5,
        SmallGroup::PSL27,
        SmallGroup::AGL23,
        SmallGroup::Heisenberg27,
    ];

    pub fn model(self) -> PermGroup {
        match self {
            SmallGroup::C3 => named::cyclic(3),
            SmallGroup::Sym3 => named::symmetric(3),
            SmallGroup::Q8 => named::quaternion(),
            SmallGroup::GL23 => named::gl23(),
            SmallGroup::Alt5 => named::alternating(5),
            SmallGroup::PSL27 => named::psl27(),
            SmallGroup::AGL23 => named::agl23(),
            SmallGroup::Heisenberg27 => named::heisenberg27(),
        }
    }
}

/// Cheap invariants: order, element-order histogram, derived subgroup order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: u64,
    pub histogram: Vec<(u64, u64)>,
    pub derived_order: u64,
}

pub fn fingerprint(g: &PermGroup) -> Result<Fingerprint, GroupError> {
    Ok(Fingerprint {
        order: g.order(),
        histogram: g.order_histogram(ELEMENT_CAP)?,
        derived_order: g.derived_subgroup().order(),
    })
}

/// Fingerprint prescreen, then confirmation by an explicit isomorphism.
pub fn is_isomorphic_to(g: &PermGroup, which: SmallGroup) -> Result<bool, GroupError> {
    let model = which.model();
    if g.order() != model.order() || fingerprint(g)? != fingerprint(&model)? {
        return Ok(false);
    }
    are_isomorphic(g, &model)
}

pub fn recognize(g: &PermGroup) -> Result<Option<SmallGroup>, GroupError> {
    for which in SmallGroup::ALL {
        if is_isomorphic_to(g, which)? {
            return Ok(Some(which));
        }
    }
    Ok(None)
}

/// Simple iff every nontrivial normal closure of an element is the whole group.
pub fn is_simple(g: &PermGroup) -> Result<bool, GroupError> {
    if g.order() == 1 {
        return Ok(false);
    }
    let t = TableGroup::new(g)?;
    let mut seen = vec![false; t.order()];
    for i in 0..t.order() as u32 {
        if seen[i as usize] || i == t.identity() {
            continue;
        }
        for j in 0..t.order() as u32 {
            seen[t.conj(i, j) as usize] = true;
        }
        if g.normal_closure(&[t.element(i).clone()]).order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(95040), vec![(2, 6), (3, 3), (5, 1), (11, 1)]);
        assert_eq!(p_part(5616, 3), 27);
        assert_eq!(factorize(1), vec![]);
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sylow(&named::symmetric(3), 3).unwrap().order(), 3);
        let s = sylow(&named::agl23(), 3).unwrap();
        assert_eq!(s.order(), 27);
        assert!(is_isomorphic_to(&s, SmallGroup::Heisenberg27).unwrap());
        assert_eq!(sylow(&named::symmetric(6), 2).unwrap().order(), 16);
        assert_eq!(sylow(&named::psl27(), 7).unwrap().order(), 7);
    }

    #[test]
    fn o_p_examples() {
        assert_eq!(o_p(&named::symmetric(3), 2).unwrap().order(), 1);
        assert_eq!(o_p(&named::symmetric(3), 3).unwrap().order(), 3);
        assert_eq!(o_p(&named::symmetric(4), 2).unwrap().order(), 4);
        let o3 = o_p(&named::agl23(), 3).unwrap();
        assert_eq!(o3.order(), 9);
        assert!(o3.is_normal_in(&named::agl23()));
        assert_eq!(o_p(&named::gl23(), 2).unwrap().order(), 8);
        assert_eq!(o_p(&named::alternating(5), 2).unwrap().order(), 1);
    }

    #[test]
    fn quotients() {
        let s4 = named::symmetric(4);
        let v4 = o_p(&s4, 2).unwrap();
        let q = Quotient::new(&s4, &v4).unwrap();
        assert_eq!(q.group().order(), 6);
        assert!(is_isomorphic_to(q.group(), SmallGroup::Sym3).unwrap());
        let gl = named::gl23();
        let z = gl.center();
        let pgl = Quotient::new(&gl, &z).unwrap();
        assert_eq!(pgl.group().order(), 24);
        let h = PermGroup::new(4, vec![Perm::parse(4, "(1,2)").unwrap()]);
        assert!(Quotient::new(&s4, &h).is_err());
    }

    #[test]
    fn recognition_of_models() {
        for which in SmallGroup::ALL {
            assert_eq!(recognize(&which.model()).unwrap(), Some(which));
        }
        assert_eq!(recognize(&named::cyclic(6)).unwrap(), None);
        // same order as GL2(3)
        let bad = named::direct_product(&named::symmetric(4), &named::cyclic(2));
        assert!(!is_isomorphic_to(&bad, SmallGroup::GL23).unwrap());
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&named::alternating(5)).unwrap());
        assert!(is_simple(&named::psl27()).unwrap());
        assert!(!is_simple(&named::symmetric(4)).unwrap());
        assert!(!is_simple(&named::gl23()).unwrap());
    }
}
