//! The Steiner system S(12,6,5) from the extended ternary Golay code, its
//! linked threes, and its automorphism group.
//!
//! Points are `0..12` in memory and `1..=12` in text. Sets of points are
//! bitmasks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{Perm, PermGroup};

pub const POINTS: usize = 12;

/// Right half of the generator matrix `[I6 | M]`.
pub const GOLAY_M: [[u8; 6]; 6] = [
    [0, 1, 1, 1, 1, 1],
    [1, 0, 1, 2, 2, 1],
    [1, 1, 0, 1, 2, 2],
    [1, 2, 1, 0, 1, 2],
    [1, 2, 2, 1, 0, 1],
    [1, 1, 2, 2, 1, 0],
];

pub type Mask = u16;

pub fn mask_of(points: &[usize]) -> Mask {
    points.iter().fold(0, |m, &p| m | 1 << p)
}

pub fn points_of(m: Mask) -> Vec<usize> {
    (0..POINTS).filter(|&p| m >> p & 1 == 1).collect()
}

fn image_mask(m: Mask, img: &[usize]) -> Mask {
    let mut out = 0;
    let mut rest = m;
    while rest != 0 {
        let p = rest.trailing_zeros() as usize;
        out |= 1 << img[p];
        rest &= rest - 1;
    }
    out
}

/// All `k`-subsets of `0..n` as masks, in lexicographic order of their sorted
/// point lists.
pub fn subsets(n: usize, k: usize) -> Vec<Mask> {
    fn go(start: usize, n: usize, k: usize, acc: Mask, out: &mut Vec<Mask>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for p in start..=n - k {
            go(p + 1, n, k - 1, acc | 1 << p, out);
        }
    }
    let mut out = Vec::new();
    go(0, n, k, 0, &mut out);
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("5-subset {subset:?} lies in {count} blocks")]
    NotSteiner { subset: Vec<usize>, count: usize },
    #[error("expected {expected} blocks, found {found}")]
    BlockCount { expected: usize, found: usize },
    #[error("backtrack budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerSystem {
    blocks: Vec<Mask>,
    is_block: Vec<bool>,
    /// Block containing each 5-subset, indexed by mask.
    block_of_five: Vec<Mask>,
}

#[derive(Serialize, Deserialize)]
struct DesignDump {
    format: String,
    version: u32,
    points: usize,
    blocks: Vec<Vec<usize>>,
}

impl SteinerSystem {
    /// Validates the exactly-one cover of all 5-subsets.
    pub fn from_blocks(mut blocks: Vec<Mask>) -> Result<SteinerSystem, DesignError> {
        blocks.sort_by_key(|&b| points_of(b));
        blocks.dedup();
        let mut is_block = vec![false; 1 << POINTS];
        for &b in &blocks {
            is_block[b as usize] = true;
        }
        let mut block_of_five = vec![0; 1 << POINTS];
        let mut hits = vec![0usize; 1 << POINTS];
        for &b in &blocks {
            for p in points_of(b) {
                let f = b & !(1 << p);
                hits[f as usize] += 1;
                block_of_five[f as usize] = b;
            }
        }
        for f in subsets(POINTS, 5) {
            if hits[f as usize] != 1 {
                return Err(DesignError::NotSteiner { subset: points_of(f), count: hits[f as usize] });
            }
        }
        Ok(SteinerSystem { blocks, is_block, block_of_five })
    }

    pub fn blocks(&self) -> &[Mask] {
        &self.blocks
    }

    pub fn is_block(&self, m: Mask) -> bool {
        self.is_block[m as usize]
    }

    pub fn block_through(&self, five: Mask) -> Option<Mask> {
        match self.block_of_five[five as usize] {
            0 => None,
            b => Some(b),
        }
    }

    pub fn blocks_containing(&self, set: Mask) -> usize {
        self.blocks.iter().filter(|&&b| b & set == set).count()
    }

    pub fn preserves(&self, p: &Perm) -> bool {
        let img: Vec<usize> = (0..POINTS).map(|x| p.image(x)).collect();
        self.blocks.iter().all(|&b| self.is_block(image_mask(b, &img)))
    }

    pub fn to_json(&self) -> String {
        let dump = DesignDump {
            format: "steiner-system".into(),
            version: 1,
            points: POINTS,
            blocks: self.blocks.iter().map(|&b| points_of(b).iter().map(|p| p + 1).collect()).collect(),
        };
        serde_json::to_string_pretty(&dump).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<SteinerSystem, String> {
        let dump: DesignDump = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if dump.format != "steiner-system" || dump.version != 1 || dump.points != POINTS {
            return Err("unsupported design format".into());
        }
        let mut blocks = Vec::new();
        for b in &dump.blocks {
            if b.iter().any(|&p| p == 0 || p > POINTS) {
                return Err(format!("point out of range in {b:?}"));
            }
            blocks.push(b.iter().fold(0, |m, &p| m | 1 << (p - 1)));
        }
        SteinerSystem::from_blocks(blocks).map_err(|e| e.to_string())
    }
}

/// All 729 codewords of the code spanned by `[I6 | M]`.
pub fn golay_codewords() -> Vec<[u8; 12]> {
    let mut out = Vec::with_capacity(729);
    for n in 0..729u32 {
        let mut coef = [0u8; 6];
        let mut k = n;
        for c in coef.iter_mut() {
            *c = (k % 3) as u8;
            k /= 3;
        }
        let mut w = [0u8; 12];
        for i in 0..6 {
            w[i] = coef[i];
            for j in 0..6 {
                w[6 + j] = (w[6 + j] + coef[i] * GOLAY_M[i][j]) % 3;
            }
        }
        out.push(w);
    }
    out
}

pub fn weight(w: &[u8; 12]) -> usize {
    w.iter().filter(|&&x| x != 0).count()
}

/// Supports of the weight-6 codewords.
pub fn build_steiner() -> Result<SteinerSystem, DesignError> {
    let blocks: Vec<Mask> = golay_codewords()
        .iter()
        .filter(|w| weight(w) == 6)
        .map(|w| (0..12).filter(|&i| w[i] != 0).fold(0, |m, i| m | 1 << i))
        .collect();
    let s = SteinerSystem::from_blocks(blocks)?;
    if s.blocks.len() != 132 {
        return Err(DesignError::BlockCount { expected: 132, found: s.blocks.len() });
    }
    Ok(s)
}

/// A partition of the points into four triples, any two of which form a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkedThree(pub [Mask; 4]);

impl LinkedThree {
    pub fn parts(&self) -> Vec<Vec<usize>> {
        self.0.iter().map(|&m| points_of(m)).collect()
    }

    pub fn contains(&self, triple: Mask) -> bool {
        self.0.contains(&triple)
    }

    pub fn image(&self, p: &Perm) -> LinkedThree {
        let img: Vec<usize> = (0..POINTS).map(|x| p.image(x)).collect();
        let mut parts = self.0.map(|m| image_mask(m, &img));
        parts.sort_by_key(|&m| points_of(m));
        LinkedThree(parts)
    }
}

/// The 220 triples, lexicographic.
pub fn triples() -> Vec<Mask> {
    subsets(POINTS, 3)
}

/// Every partition into four triples, checked pairwise, in lexicographic
/// order of the sorted part lists.
pub fn linked_threes(s: &SteinerSystem) -> Vec<LinkedThree> {
    fn go(s: &SteinerSystem, free: Mask, parts: &mut Vec<Mask>, out: &mut Vec<LinkedThree>) {
        if free == 0 {
            out.push(LinkedThree([parts[0], parts[1], parts[2], parts[3]]));
            return;
        }
        let first = free.trailing_zeros() as usize;
        let rest = free & !(1 << first);
        for pair in subsets(POINTS, 2) {
            if pair & rest != pair {
                continue;
            }
            let t = pair | 1 << first;
            if parts.iter().all(|&q| s.is_block(q | t)) {
                parts.push(t);
                go(s, free & !t, parts, out);
                parts.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(s, (1 << POINTS) - 1, &mut Vec::new(), &mut out);
    out.sort_by_key(|l| l.parts());
    out
}

/// Number of partitions of the points into four triples, for sanity checks.
pub fn partition_count() -> usize {
    fn go(free: Mask) -> usize {
        if free == 0 {
            return 1;
        }
        let first = free.trailing_zeros();
        let rest = free & !(1 << first);
        subsets(POINTS, 2).iter().filter(|&&p| p & rest == p).map(|&p| go(rest & !p)).sum()
    }
    go((1 << POINTS) - 1)
}

pub const AUT_BUDGET: u64 = 50_000_000;

/// Every automorphism, by backtracking over point images.
///
/// Once points `0..5` have images, a candidate for a later point must keep
/// the blocks through it and four of the first five points consistent with
/// the images so far; a leaf is accepted only if all blocks map to blocks.
pub fn automorphisms(s: &SteinerSystem, budget: u64) -> Result<Vec<Perm>, DesignError> {
    struct Search<'a> {
        s: &'a SteinerSystem,
        img: [usize; POINTS],
        used: Mask,
        nodes: u64,
        budget: u64,
        out: Vec<Perm>,
    }
    impl Search<'_> {
        fn allowed(&self, k: usize) -> Mask {
            let mut allowed = !self.used & ((1 << POINTS) - 1);
            if k < 5 {
                return allowed;
            }
            let assigned: Mask = (1 << k) - 1;
            let assigned_img = image_mask(assigned, &self.img);
            for skip in 0..5 {
                let four: Mask = 0b11111 & !(1 << skip);
                let four_img = image_mask(four, &self.img);
                let b = self.s.block_through(four | 1 << k).expect("Steiner");
                let expected = image_mask(b & assigned, &self.img);
                let mut ok = 0;
                let mut cand = allowed;
                while cand != 0 {
                    let y = cand.trailing_zeros() as usize;
                    cand &= cand - 1;
                    let by = self.s.block_through(four_img | 1 << y).expect("Steiner");
                    if by & assigned_img == expected {
                        ok |= 1 << y;
                    }
                }
                allowed &= ok;
            }
            allowed
        }

        fn go(&mut self, k: usize) -> Result<(), DesignError> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(DesignError::BudgetExceeded(self.budget));
            }
            if k == POINTS {
                let p = Perm::from_images(self.img.iter().map(|&x| x as u32).collect()).expect("bijection");
                if self.s.preserves(&p) {
                    self.out.push(p);
                }
                return Ok(());
            }
            let mut cand = self.allowed(k);
            while cand != 0 {
                let y = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                self.img[k] = y;
                self.used |= 1 << y;
                self.go(k + 1)?;
                self.used &= !(1 << y);
            }
            Ok(())
        }
    }
    let mut search = Search { s, img: [0; POINTS], used: 0, nodes: 0, budget, out: Vec::new() };
    search.go(0)?;
    search.out.sort();
    Ok(search.out)
}

/// `Aut(S)` with generators picked greedily from the full element list, and
/// the number of automorphisms found.
pub fn automorphism_group(s: &SteinerSystem) -> Result<(PermGroup, usize), DesignError> {
    let all = automorphisms(s, AUT_BUDGET)?;
    let mut g = PermGroup::trivial(POINTS);
    for p in &all {
        if !g.contains(p) {
            g = g.join(std::slice::from_ref(p));
        }
    }
    Ok((g, all.len()))
}

pub fn mask_image(m: Mask, p: &Perm) -> Mask {
    let img: Vec<usize> = (0..POINTS).map(|x| p.image(x)).collect();
    image_mask(m, &img)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{are_isomorphic, named, orbit_of};

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn golay_weights() {
        let mut hist = [0usize; 13];
        for w in golay_codewords() {
            hist[weight(&w)] += 1;
        }
        assert_eq!((hist[0], hist[6], hist[9], hist[12]), (1, 264, 440, 24));
        assert_eq!(hist.iter().sum::<usize>(), 729);
    }

    #[test]
    fn steiner_counts() {
        let s = build_steiner().unwrap();
        assert_eq!(s.blocks().len(), 132);
        let full: Mask = (1 << POINTS) - 1;
        assert!(s.blocks().iter().all(|&b| s.is_block(full & !b)));
        for (k, expected) in [(1, 66), (2, 30), (3, 12), (4, 4), (5, 1)] {
            for set in subsets(POINTS, k) {
                assert_eq!(s.blocks_containing(set), expected, "{:?}", points_of(set));
            }
        }
        assert_eq!(binom(12, 5), 792);
    }

    #[test]
    fn broken_design_rejected() {
        let s = build_steiner().unwrap();
        let mut blocks = s.blocks().to_vec();
        blocks.pop();
        assert!(matches!(SteinerSystem::from_blocks(blocks), Err(DesignError::NotSteiner { count: 0, .. })));
    }

    #[test]
    fn json_round_trip() {
        let s = build_steiner().unwrap();
        let back = SteinerSystem::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(s.to_json().contains("\"version\": 1"));
    }

    #[test]
    fn linked_three_counts() {
        let s = build_steiner().unwrap();
        assert_eq!(partition_count(), 15400);
        let lt = linked_threes(&s);
        assert_eq!(lt.len(), 220);
        let mut sorted = lt.clone();
        sorted.sort_by_key(|l| l.parts());
        assert_eq!(sorted, lt);
        for t in triples() {
            assert_eq!(lt.iter().filter(|l| l.contains(t)).count(), 4);
        }
    }

    #[test]
    fn automorphism_group_is_m12() {
        let s = build_steiner().unwrap();
        let (g, count) = automorphism_group(&s).unwrap();
        assert_eq!(count, 95040);
        assert_eq!(g.order(), 95040);
        assert!(g.generators().iter().all(|p| s.preserves(p)));

        let blocks = orbit_of(s.blocks()[0], g.generators(), |&m, p| mask_image(m, p));
        assert_eq!(blocks.len(), 132);
        let trips = orbit_of(triples()[0], g.generators(), |&m, p| mask_image(m, p));
        assert_eq!(trips.len(), 220);
        let lt = linked_threes(&s);
        let lts = orbit_of(lt[0], g.generators(), |l, p| l.image(p));
        assert_eq!(lts.len(), 220);

        let stab = g.set_stabilizer(&points_of(triples()[0]));
        assert_eq!(stab.order(), 432);
        assert!(are_isomorphic(&stab, &named::agl23()).unwrap());
        let (lstab, orbit) = g.stabilizer(lt[0], |l, p| l.image(p));
        assert_eq!((lstab.order(), orbit.len()), (432, 220));
        let both = lstab.set_stabilizer(&lt[0].parts()[0]);
        assert_eq!(both.order(), 108);
    }
}
