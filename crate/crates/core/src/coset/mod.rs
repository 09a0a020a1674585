//! Todd–Coxeter coset enumeration.
//!
//! [`enumerate`] runs either HLT with lookahead or Felsch and returns a
//! closed, compacted, standardized [`CosetTable`]. Cosets are 1-based in the
//! public API; coset 1 is the subgroup itself.

mod engine;

use std::collections::HashSet;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::perm::Perm;
use crate::words::{Presentation, Word};
use engine::Engine;

pub const DEFAULT_MAX_COSETS: usize = 4_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Hlt => "hlt",
            Strategy::Felsch => "felsch",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            other => Err(format!("unknown strategy `{other}` (expected hlt or felsch)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Rows (live plus dead) allowed before giving up.
    pub max_cosets: usize,
    pub strategy: Strategy,
    pub time_cap: Option<Duration>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_cosets: DEFAULT_MAX_COSETS, strategy: Strategy::Hlt, time_cap: None }
    }
}

impl EnumerationLimits {
    pub fn new(max_cosets: usize, strategy: Strategy) -> Self {
        EnumerationLimits { max_cosets, strategy, time_cap: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub total_defined: u64,
    pub max_rows: usize,
    pub deductions: u64,
    pub coincidences: u64,
    pub lookaheads: u64,
    pub compactions: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("coset limit of {max_cosets} rows exceeded after {} definitions", stats.total_defined)]
    LimitExceeded { max_cosets: usize, stats: EnumerationStats },
    #[error("time cap exceeded after {} definitions", stats.total_defined)]
    TimeExceeded { stats: EnumerationStats },
    #[error("word uses generator {index} but the presentation has {count}")]
    InvalidWord { index: usize, count: usize },
    #[error("max_cosets must be at least 1")]
    ZeroCap,
    #[error("coset table is not closed: {0}")]
    NotClosed(String),
    #[error("coset {coset} out of range 1..={live}")]
    CosetOutOfRange { coset: usize, live: usize },
}

fn columns(w: &Word) -> Vec<u32> {
    w.letters()
        .iter()
        .map(|&l| {
            let g = l.unsigned_abs() - 1;
            2 * g + u32::from(l < 0)
        })
        .collect()
}

/// Enumerates the cosets of `<subgroup>` in the group presented by `p`.
pub fn enumerate(p: &Presentation, subgroup: &[Word], limits: &EnumerationLimits) -> Result<CosetTable, EnumerationError> {
    if limits.max_cosets == 0 {
        return Err(EnumerationError::ZeroCap);
    }
    let count = p.generator_count();
    for w in subgroup {
        if let Some(index) = w.max_generator() {
            if index >= count {
                return Err(EnumerationError::InvalidWord { index, count });
            }
        }
    }
    let mut relators: Vec<Vec<u32>> =
        p.relators().iter().map(|r| columns(&r.cyclically_reduced())).filter(|r| !r.is_empty()).collect();
    let mut seen = HashSet::new();
    relators.retain(|r| seen.insert(r.clone()));
    if limits.strategy == Strategy::Hlt {
        relators.sort_by_key(|r| r.len());
    }
    let sub: Vec<Vec<u32>> = subgroup.iter().map(columns).filter(|w| !w.is_empty()).collect();
    let mut engine = Engine::new(count, relators, sub, limits);
    match limits.strategy {
        Strategy::Hlt => engine.run_hlt()?,
        Strategy::Felsch => engine.run_felsch()?,
    }
    let (rows, live, stats) = engine.finish();
    let mut table = CosetTable {
        presentation: p.clone(),
        subgroup: subgroup.to_vec(),
        ncols: 2 * count,
        rows,
        live,
        strategy: limits.strategy,
        max_cosets: limits.max_cosets,
        stats,
    };
    table.check_closed()?;
    table.standardize();
    Ok(table)
}

/// A closed coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    presentation: Presentation,
    subgroup: Vec<Word>,
    ncols: usize,
    /// Row-major, `rows[(c - 1) * ncols + col]`, entries 1-based.
    rows: Vec<u32>,
    live: usize,
    strategy: Strategy,
    max_cosets: usize,
    stats: EnumerationStats,
}

#[derive(Serialize, Deserialize)]
struct TableDump {
    format: String,
    version: u32,
    presentation_sha256: String,
    generators: Vec<String>,
    subgroup: Vec<String>,
    strategy: Strategy,
    max_cosets: usize,
    live_count: usize,
    rows: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup
    }

    pub fn stats(&self) -> &EnumerationStats {
        &self.stats
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    #[inline]
    fn entry(&self, c: usize, col: usize) -> u32 {
        self.rows[(c - 1) * self.ncols + col]
    }

    /// Image of coset `c` under generator `g` (or its inverse).
    pub fn image(&self, c: usize, g: usize, inverse: bool) -> Result<usize, EnumerationError> {
        self.check_coset(c)?;
        Ok(self.entry(c, 2 * g + usize::from(inverse)) as usize)
    }

    fn check_coset(&self, c: usize) -> Result<(), EnumerationError> {
        if c == 0 || c > self.live {
            Err(EnumerationError::CosetOutOfRange { coset: c, live: self.live })
        } else {
            Ok(())
        }
    }

    /// The coset reached from `c` by applying `w` letter by letter.
    pub fn trace(&self, c: usize, w: &Word) -> Result<usize, EnumerationError> {
        self.check_coset(c)?;
        Ok(columns(w).iter().fold(c, |d, &col| self.entry(d, col as usize) as usize))
    }

    /// Full scan: totality, inverse consistency, relators close at every
    /// coset, subgroup words fix coset 1.
    pub fn check_closed(&self) -> Result<(), EnumerationError> {
        let bad = |m: String| Err(EnumerationError::NotClosed(m));
        for c in 1..=self.live {
            for col in 0..self.ncols {
                let d = self.entry(c, col) as usize;
                if d == 0 || d > self.live {
                    return bad(format!("entry ({c}, {col}) undefined"));
                }
                if self.entry(d, col ^ 1) as usize != c {
                    return bad(format!("entry ({c}, {col}) inconsistent"));
                }
            }
        }
        let rels: Vec<Vec<u32>> = self.presentation.relators().iter().map(columns).collect();
        for c in 1..=self.live {
            for r in &rels {
                if r.iter().fold(c, |d, &col| self.entry(d, col as usize) as usize) != c {
                    return bad(format!("relator does not close at coset {c}"));
                }
            }
        }
        for w in &self.subgroup {
            if self.trace(1, w)? != 1 {
                return bad("subgroup word moves coset 1".into());
            }
        }
        Ok(())
    }

    /// Renumbers cosets breadth-first from coset 1, scanning columns in the
    /// order `g1, g1⁻¹, g2, g2⁻¹, ...`.
    pub fn standardize(&mut self) {
        let n = self.live;
        let mut new_of = vec![0u32; n + 1];
        let mut order = Vec::with_capacity(n);
        new_of[1] = 1;
        order.push(1usize);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for col in 0..self.ncols {
                let d = self.entry(c, col) as usize;
                if new_of[d] == 0 {
                    order.push(d);
                    new_of[d] = order.len() as u32;
                }
            }
        }
        let mut rows = vec![0u32; self.rows.len()];
        for (k, &c) in order.iter().enumerate() {
            for col in 0..self.ncols {
                rows[k * self.ncols + col] = new_of[self.entry(c, col) as usize];
            }
        }
        self.rows = rows;
    }

    pub fn is_standard(&self) -> bool {
        let mut t = self.clone();
        t.standardize();
        t.rows == self.rows
    }

    /// Permutation of the cosets induced by each generator.
    pub fn coset_action(&self) -> Vec<(String, Perm)> {
        self.presentation
            .generators()
            .iter()
            .enumerate()
            .map(|(g, name)| {
                let images = (1..=self.live).map(|c| self.entry(c, 2 * g) - 1).collect();
                (name.clone(), Perm::from_images(images).expect("closed table columns are bijections"))
            })
            .collect()
    }

    /// Rows as 1-based coset indices, one inner vector per coset.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.rows.chunks(self.ncols).map(|r| r.to_vec()).collect()
    }

    pub fn presentation_hash(&self) -> String {
        let digest = Sha256::digest(self.presentation.to_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        let names = self.presentation.generators();
        let dump = TableDump {
            format: "coset-table".into(),
            version: 1,
            presentation_sha256: self.presentation_hash(),
            generators: names.to_vec(),
            subgroup: self.subgroup.iter().map(|w| w.display(names).to_string()).collect(),
            strategy: self.strategy,
            max_cosets: self.max_cosets,
            live_count: self.live,
            rows: self.rows(),
        };
        serde_json::to_string(&dump).expect("table serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{catalog, parse_presentation};

    fn run(src: &str, sub: &[&str], strategy: Strategy) -> CosetTable {
        let p = parse_presentation(src).unwrap();
        let h: Vec<Word> = sub.iter().map(|w| p.word(w).unwrap()).collect();
        enumerate(&p, &h, &EnumerationLimits::new(100_000, strategy)).unwrap()
    }

    #[test]
    fn cyclic_three() {
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let t = run("gens a; rels a^3", &[], s);
            assert_eq!(t.live_count(), 3);
            let act = t.coset_action();
            assert_eq!(act[0].1.to_string(), "(1,2,3)");
        }
    }

    #[test]
    fn small_groups_both_strategies() {
        let cases: [(&str, &[&str], usize); 6] = [
            ("gens a, b; rels a^2; b^3; (a b)^5", &[], 60),
            ("gens a, b; rels a^2; b^3; (a b)^5", &["b"], 20),
            ("gens a, b; rels a^4; b^2; (a b)^2", &[], 8),
            ("gens x, y; rels x^4; x^2 y^-2; y^-1 x y x", &[], 8),
            ("gens a, b; rels a^2; b^3; (a b)^7; [a,b]^4", &[], 168),
            ("gens a, b; rels a^8; b^2 a^4; b^-1 a b a", &["a"], 2),
        ];
        for (src, sub, n) in cases {
            let h = run(src, sub, Strategy::Hlt);
            let f = run(src, sub, Strategy::Felsch);
            assert_eq!(h.live_count(), n, "{src}");
            assert_eq!(f.live_count(), n, "{src}");
            assert_eq!(h.rows(), f.rows(), "{src}");
        }
    }

    #[test]
    fn trivial_group() {
        let t = run("gens a, b; rels a b^-2; b a^-2; a^2", &[], Strategy::Hlt);
        assert_eq!(t.live_count(), 1);
        assert!(t.coset_action().iter().all(|(_, p)| p.degree() == 1));
    }

    #[test]
    fn trace_and_closure() {
        let t = run("gens a, b; rels a^2; b^3; (a b)^5", &["b"], Strategy::Hlt);
        assert_eq!(t.trace(3, &Word::identity()).unwrap(), 3);
        let b = t.presentation().word("b").unwrap();
        assert_eq!(t.trace(1, &b).unwrap(), 1);
        for r in t.presentation().relators() {
            for c in 1..=t.live_count() {
                assert_eq!(t.trace(c, r).unwrap(), c);
            }
        }
        assert!(t.trace(0, &b).is_err());
        assert!(t.trace(21, &b).is_err());
        assert!(t.is_standard());
    }

    #[test]
    fn infinite_hits_limit() {
        let p = parse_presentation("gens a, b; rels [a,b]").unwrap();
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let r = enumerate(&p, &[], &EnumerationLimits::new(2000, s));
            assert!(matches!(r, Err(EnumerationError::LimitExceeded { max_cosets: 2000, .. })), "{s}");
        }
    }

    #[test]
    fn invalid_subgroup_word() {
        let p = parse_presentation("gens a; rels a^3").unwrap();
        let r = enumerate(&p, &[Word::generator(1)], &EnumerationLimits::default());
        assert_eq!(r.unwrap_err(), EnumerationError::InvalidWord { index: 1, count: 1 });
        assert_eq!(enumerate(&p, &[], &EnumerationLimits::new(0, Strategy::Hlt)).unwrap_err(), EnumerationError::ZeroCap);
    }

    #[test]
    fn amalgam_pieces() {
        for (name, n) in [("Zstar", 108), ("Xstar", 432), ("Ystar", 432), ("C3test", 3), ("AGL23", 9)] {
            let e = catalog(name).unwrap();
            for s in [Strategy::Hlt, Strategy::Felsch] {
                let t = enumerate(&e.presentation, &e.subgroup_words, &EnumerationLimits::new(200_000, s)).unwrap();
                assert_eq!(t.live_count(), n, "{name} {s}");
            }
        }
    }

    #[test]
    fn json_dump_shape() {
        let t = run("gens a; rels a^3", &[], Strategy::Hlt);
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["live_count"], 3);
        assert_eq!(v["rows"], serde_json::json!([[2, 3], [3, 1], [1, 2]]));
        assert_eq!(v["presentation_sha256"].as_str().unwrap().len(), 64);
        assert_eq!(v["strategy"], "hlt");
    }
}
