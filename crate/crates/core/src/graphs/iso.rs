//! Graph isomorphism by colour refinement and individualization.
//!
//! Both graphs are refined together on their disjoint union, so a colour
//! means the same thing on either side and class sizes can be compared.

use std::collections::BTreeMap;

use thiserror::Error;

use super::BipartiteGraph;

pub const DEFAULT_STEP_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `map[v]` is the image in the second graph of vertex `v` of the first.
    Isomorphic(Vec<usize>),
    NotIsomorphic,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoError {
    #[error("inconclusive: step cap of {0} exceeded")]
    StepCapExceeded(u64),
}

pub fn verify_isomorphism(a: &BipartiteGraph, b: &BipartiteGraph, map: &[usize]) -> bool {
    let n = a.vertex_count();
    if map.len() != n || b.vertex_count() != n || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    a.vertex_edges().all(|(u, v)| b.adjacent(map[u], map[v]))
}

struct Search<'a> {
    adj: Vec<&'a [usize]>,
    offset: usize,
    n: usize,
    steps: u64,
    cap: u64,
}

impl Search<'_> {
    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let shift = if v < self.n { 0 } else { self.offset };
        self.adj[v].iter().map(move |&w| w + shift)
    }

    fn charge(&mut self, k: u64) -> Result<(), IsoError> {
        self.steps += k;
        if self.steps > self.cap {
            Err(IsoError::StepCapExceeded(self.cap))
        } else {
            Ok(())
        }
    }

    /// Degree and distance-count profile of every vertex.
    fn initial(&mut self) -> Result<Vec<usize>, IsoError> {
        let total = self.adj.len();
        let mut sigs = Vec::with_capacity(total);
        for s in 0..total {
            let mut dist = vec![usize::MAX; total];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            let mut profile = vec![0usize];
            while let Some(u) = queue.pop_front() {
                let d = dist[u];
                if profile.len() <= d {
                    profile.push(0);
                }
                profile[d] += 1;
                let next: Vec<usize> = self.neighbors(u).collect();
                for w in next {
                    if dist[w] == usize::MAX {
                        dist[w] = d + 1;
                        queue.push_back(w);
                    }
                }
            }
            self.charge(total as u64)?;
            sigs.push((self.adj[s].len(), profile));
        }
        Ok(relabel(&sigs))
    }

    fn refine(&mut self, mut colors: Vec<usize>) -> Result<Vec<usize>, IsoError> {
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..colors.len())
                .map(|v| {
                    let mut nb: Vec<usize> = self.neighbors(v).map(|w| colors[w]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            self.charge(sigs.iter().map(|s| s.1.len() as u64 + 1).sum())?;
            let next = relabel(&sigs);
            let k = count_classes(&next);
            colors = next;
            if k == classes {
                return Ok(colors);
            }
            classes = k;
        }
    }

    fn balanced(&self, colors: &[usize]) -> bool {
        let mut diff: BTreeMap<usize, i64> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *diff.entry(c).or_default() += if v < self.n { 1 } else { -1 };
        }
        diff.values().all(|&d| d == 0)
    }

    fn search(&mut self, colors: Vec<usize>) -> Result<Option<Vec<usize>>, IsoError> {
        let colors = self.refine(colors)?;
        if !self.balanced(&colors) {
            return Ok(None);
        }
        let mut members: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            let e = members.entry(c).or_default();
            if v < self.n {
                e.0.push(v);
            } else {
                e.1.push(v - self.n);
            }
        }
        let target = members.iter().filter(|(_, (a, _))| a.len() > 1).min_by_key(|(c, (a, _))| (a.len(), **c));
        let Some((_, (left, right))) = target else {
            let mut map = vec![0; self.n];
            for (a, b) in members.values() {
                map[a[0]] = b[0];
            }
            let n = self.n;
            let ok = (0..n).all(|v| self.adj[v].iter().all(|&u| self.adj[n + map[v]].binary_search(&map[u]).is_ok()));
            return Ok(ok.then_some(map));
        };
        let (v, candidates) = (left[0], right.clone());
        let fresh = colors.iter().max().map_or(0, |m| m + 1);
        for w in candidates {
            let mut next = colors.clone();
            next[v] = fresh;
            next[self.n + w] = fresh;
            if let Some(map) = self.search(next)? {
                return Ok(Some(map));
            }
        }
        Ok(None)
    }
}

fn relabel<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut ids: BTreeMap<T, usize> = sigs.iter().map(|s| (s.clone(), 0)).collect();
    for (k, v) in ids.values_mut().enumerate() {
        *v = k;
    }
    sigs.iter().map(|s| ids[s]).collect()
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Searches for an edge-preserving bijection; every map returned has been
/// checked edge by edge.
pub fn isomorphic(a: &BipartiteGraph, b: &BipartiteGraph, cap: u64) -> Result<IsoOutcome, IsoError> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let adj = (0..n).map(|v| a.neighbors(v)).chain((0..n).map(|v| b.neighbors(v))).collect();
    let mut s = Search { adj, offset: n, n, steps: 0, cap };
    let colors = s.initial()?;
    match s.search(colors)? {
        Some(map) if verify_isomorphism(a, b, &map) => Ok(IsoOutcome::Isomorphic(map)),
        _ => Ok(IsoOutcome::NotIsomorphic),
    }
}
