//! The mutable enumeration state. Columns are `2i` for generator `i` and
//! `2i + 1` for its inverse; cosets are numbered from 1 and 0 means undefined.

use std::collections::VecDeque;
use std::time::Instant;

use super::{EnumerationError, EnumerationLimits, EnumerationStats, Strategy};

/// A lookahead must leave at least this fraction of the cap free.
const MIN_FREE_DIVISOR: usize = 100;

const PDL_SIZE: usize = 256;

pub(super) enum Halt {
    Full,
    Error(EnumerationError),
}

type Step<T> = Result<T, Halt>;

pub(super) struct Engine {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    /// Rows `1..next` are in use, live or dead.
    next: u32,
    dead: usize,
    cap: usize,
    queue: Vec<u32>,
    /// Pending `(coset, column)` entries whose consequences are unscanned.
    deductions: Vec<(u32, u32)>,
    felsch: bool,
    /// Felsch: gaps of length two met while scanning deductions, newest last.
    pdl: VecDeque<(u32, u32)>,
    relators: Vec<Vec<u32>>,
    /// Cyclic conjugates of relators and their inverses, by first column.
    by_first: Vec<Vec<Vec<u32>>>,
    subgroup: Vec<Vec<u32>>,
    deadline: Option<Instant>,
    pub(super) stats: EnumerationStats,
}

#[inline]
fn inv(c: u32) -> u32 {
    c ^ 1
}

impl Engine {
    pub(super) fn new(ngens: usize, relators: Vec<Vec<u32>>, subgroup: Vec<Vec<u32>>, limits: &EnumerationLimits) -> Engine {
        let ncols = 2 * ngens;
        let mut by_first: Vec<Vec<Vec<u32>>> = vec![Vec::new(); ncols];
        {
            for r in &relators {
                let rinv: Vec<u32> = r.iter().rev().map(|&c| inv(c)).collect();
                for w in [r, &rinv] {
                    for k in 0..w.len() {
                        let rot: Vec<u32> = w[k..].iter().chain(&w[..k]).copied().collect();
                        let slot = &mut by_first[rot[0] as usize];
                        if !slot.contains(&rot) {
                            slot.push(rot);
                        }
                    }
                }
            }
        }
        let mut e = Engine {
            ncols,
            table: vec![0; 2 * ncols],
            parent: vec![0, 1],
            next: 2,
            dead: 0,
            cap: limits.max_cosets,
            queue: Vec::new(),
            deductions: Vec::new(),
            felsch: limits.strategy == Strategy::Felsch,
            pdl: VecDeque::new(),
            relators,
            by_first,
            subgroup,
            deadline: limits.time_cap.map(|d| Instant::now() + d),
            stats: EnumerationStats::default(),
        };
        e.stats.total_defined = 1;
        e.stats.max_rows = 1;
        e
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.ncols + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, d: u32) {
        self.table[c as usize * self.ncols + x as usize] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rows_used(&self) -> usize {
        self.next as usize - 1
    }

    pub(super) fn live_count(&self) -> usize {
        self.rows_used() - self.dead
    }

    fn define(&mut self, c: u32, x: u32) -> Step<u32> {
        if self.rows_used() >= self.cap {
            return Err(Halt::Full);
        }
        let d = self.next;
        self.next += 1;
        if self.table.len() == self.table.capacity() {
            let limit = (self.cap + 1) * self.ncols;
            let extra = self.table.len().min(limit - self.table.len()).max(self.ncols);
            self.table.reserve_exact(extra);
        }
        self.table.resize(self.table.len() + self.ncols, 0);
        self.parent.push(d);
        self.set(c, x, d);
        self.set(d, inv(x), c);
        self.stats.total_defined += 1;
        self.stats.max_rows = self.stats.max_rows.max(self.rows_used());
        {
            self.deductions.push((c, x));
        }
        if self.stats.total_defined.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Halt::Error(EnumerationError::TimeExceeded { stats: self.stats.clone() }));
                }
            }
        }
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
            self.dead += 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.stats.coincidences += 1;
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols as u32 {
                let d = self.get(g, x);
                if d == 0 {
                    continue;
                }
                self.set(d, inv(x), 0);
                let (mu, nu) = (self.rep(g), self.rep(d));
                let mx = self.get(mu, x);
                if mx != 0 {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, inv(x));
                    if nx != 0 {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, inv(x), mu);
                        {
                            self.deductions.push((mu, x));
                        }
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `w` from `c`; fills the gap when `fill` is set, otherwise only
    /// records deductions and coincidences.
    fn scan(&mut self, c: u32, w: &[u32], fill: bool) -> Step<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                let n = self.get(f, w[i]);
                if n == 0 {
                    break;
                }
                f = n;
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i as isize {
                let n = self.get(b, inv(w[j as usize]));
                if n == 0 {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = w[i];
                self.set(f, x, b);
                self.set(b, inv(x), f);
                self.stats.deductions += 1;
                {
                    self.deductions.push((f, x));
                }
                return Ok(());
            }
            if !fill {
                if self.felsch && j == i as isize + 1 {
                    if self.pdl.len() == PDL_SIZE {
                        self.pdl.pop_front();
                    }
                    self.pdl.push_back((f, w[i]));
                }
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            let n = self.by_first[x as usize].len();
            for k in 0..n {
                let w = std::mem::take(&mut self.by_first[x as usize][k]);
                let _ = self.scan(c, &w, false);
                self.by_first[x as usize][k] = w;
                if !self.is_live(c) {
                    break;
                }
            }
            let d = self.get(c, x);
            if d == 0 || !self.is_live(d) {
                continue;
            }
            let y = inv(x);
            let n = self.by_first[y as usize].len();
            for k in 0..n {
                let w = std::mem::take(&mut self.by_first[y as usize][k]);
                let _ = self.scan(d, &w, false);
                self.by_first[y as usize][k] = w;
                if !self.is_live(d) {
                    break;
                }
            }
        }
    }

    /// Renumbers live rows in order, dropping dead ones. Returns the old-to-new map.
    fn compact(&mut self) -> Vec<u32> {
        self.stats.compactions += 1;
        self.pdl.clear();
        let n = self.next as usize;
        let mut map = vec![0u32; n];
        let mut k = 0u32;
        for (c, slot) in map.iter_mut().enumerate().skip(1) {
            if self.parent[c] == c as u32 {
                k += 1;
                *slot = k;
            }
        }
        let nc = self.ncols;
        let mut table = vec![0u32; (k as usize + 1) * nc];
        for c in 1..n {
            let nc_row = map[c] as usize;
            if nc_row == 0 {
                continue;
            }
            for x in 0..nc {
                let d = self.table[c * nc + x];
                table[nc_row * nc + x] = if d == 0 { 0 } else { map[d as usize] };
            }
        }
        self.table = table;
        self.parent = (0..=k).collect();
        self.next = k + 1;
        self.dead = 0;
        map
    }

    fn maybe_compact(&mut self, alpha: u32) -> u32 {
        if self.dead * 2 > self.rows_used() {
            self.remap_after_compact(alpha)
        } else {
            alpha
        }
    }

    /// Compacts and returns the new number of the first live row at or after `alpha`.
    fn remap_after_compact(&mut self, alpha: u32) -> u32 {
        let old_next = self.next;
        let mut first = alpha;
        while first < old_next && !self.is_live(first) {
            first += 1;
        }
        let map = self.compact();
        if first < old_next {
            map[first as usize]
        } else {
            self.next
        }
    }

    fn lookahead(&mut self, from: u32) {
        self.stats.lookaheads += 1;
        let mut c = from;
        while c < self.next {
            if self.is_live(c) {
                for k in 0..self.relators.len() {
                    let w = std::mem::take(&mut self.relators[k]);
                    let _ = self.scan(c, &w, false);
                    self.relators[k] = w;
                    if !self.is_live(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    /// Frees rows after a full table; fails if too little space is recovered.
    fn recover(&mut self, alpha: u32, lookahead: bool) -> Result<u32, EnumerationError> {
        if lookahead {
            self.lookahead(alpha);
        }
        let alpha = self.remap_after_compact(alpha);
        let min_free = (self.cap / MIN_FREE_DIVISOR).max(1);
        if self.cap - self.rows_used() < min_free {
            return Err(EnumerationError::LimitExceeded { max_cosets: self.cap, stats: self.stats.clone() });
        }
        Ok(alpha)
    }

    fn scan_subgroup(&mut self) -> Result<(), EnumerationError> {
        let words = std::mem::take(&mut self.subgroup);
        for w in &words {
            loop {
                match self.scan(1, w, true) {
                    Ok(()) => break,
                    Err(Halt::Full) => {
                        self.recover(1, true)?;
                    }
                    Err(Halt::Error(e)) => return Err(e),
                }
            }
            self.process_deductions();
        }
        self.subgroup = words;
        Ok(())
    }

    pub(super) fn run_hlt(&mut self) -> Result<(), EnumerationError> {
        self.scan_subgroup()?;
        let mut alpha = 1u32;
        'rows: while alpha < self.next {
            if !self.is_live(alpha) {
                alpha += 1;
                continue;
            }
            let mut k = 0;
            while k < self.relators.len() {
                let w = std::mem::take(&mut self.relators[k]);
                let step = self.scan(alpha, &w, true);
                self.relators[k] = w;
                { self.process_deductions(); }
                match step {
                    Ok(()) => k += 1,
                    Err(Halt::Full) => {
                        alpha = self.recover(alpha, true)?;
                        continue 'rows;
                    }
                    Err(Halt::Error(e)) => return Err(e),
                }
                if !self.is_live(alpha) {
                    break;
                }
            }
            if self.is_live(alpha) {
                for x in 0..self.ncols as u32 {
                    if self.get(alpha, x) == 0 {
                        match self.define(alpha, x) {
                            Ok(_) => {}
                            Err(Halt::Full) => {
                                alpha = self.recover(alpha, true)?;
                                continue 'rows;
                            }
                            Err(Halt::Error(e)) => return Err(e),
                        }
                    }
                }
            }
            alpha = self.maybe_compact(alpha + 1);
        }
        Ok(())
    }

    pub(super) fn run_felsch(&mut self) -> Result<(), EnumerationError> {
        self.scan_subgroup()?;
        let fill_factor = 5 * (self.ncols + 2) / 4;
        let mut alpha = 1u32;
        while alpha < self.next {
            if self.is_live(alpha) {
                let mut x = 0u32;
                while x < self.ncols as u32 && self.is_live(alpha) {
                    // Preferred definitions only while the table stays dense.
                    if self.rows_used() >= fill_factor * alpha as usize {
                        self.pdl.clear();
                    }
                    if let Some((c, y)) = self.pdl.pop_back() {
                        if self.is_live(c) && self.get(c, y) == 0 {
                            match self.define(c, y) {
                                Ok(_) => self.process_deductions(),
                                Err(Halt::Full) => {
                                    alpha = self.recover(alpha, false)?;
                                    x = 0;
                                }
                                Err(Halt::Error(e)) => return Err(e),
                            }
                        }
                        continue;
                    }
                    if self.get(alpha, x) == 0 {
                        match self.define(alpha, x) {
                            Ok(_) => self.process_deductions(),
                            Err(Halt::Full) => {
                                alpha = self.recover(alpha, false)?;
                                x = 0;
                                continue;
                            }
                            Err(Halt::Error(e)) => return Err(e),
                        }
                    }
                    x += 1;
                }
            }
            alpha = self.maybe_compact(alpha + 1);
        }
        Ok(())
    }

    /// Compacts and returns the rows of live cosets, row 0 omitted.
    pub(super) fn finish(mut self) -> (Vec<u32>, usize, EnumerationStats) {
        if self.dead > 0 {
            self.compact();
        }
        let live = self.live_count();
        let rows = self.table[self.ncols..].to_vec();
        (rows, live, self.stats)
    }
}
