//! 3×3 matrices over GF(3), the map Θ onto SL3(3), and the projective plane
//! of order 3.
//!
//! Vectors are rows and matrices act on the right: `v ↦ v·M`. Projective
//! points and lines are triples normalized so the first nonzero entry is 1,
//! listed in lexicographic order. A point `v` lies on a line `l` when
//! `v·l = 0`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{Perm, PermGroup};
use crate::words::{catalog, letter_generator, Presentation, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat3(pub [[u8; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    /// Reduces arbitrary integers mod 3, so `-1` may be written directly.
    pub fn new(rows: [[i64; 3]; 3]) -> Mat3 {
        let mut m = [[0u8; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = rows[i][j].rem_euclid(3) as u8;
            }
        }
        Mat3(m)
    }

    pub fn diag(a: i64, b: i64, c: i64) -> Mat3 {
        Mat3::new([[a, 0, 0], [0, b, 0], [0, 0, c]])
    }

    pub fn from_flat(e: [u8; 9]) -> Mat3 {
        Mat3::new([
            [e[0] as i64, e[1] as i64, e[2] as i64],
            [e[3] as i64, e[4] as i64, e[5] as i64],
            [e[6] as i64, e[7] as i64, e[8] as i64],
        ])
    }

    pub fn to_flat(&self) -> [u8; 9] {
        let m = &self.0;
        [m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]]
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let (a, b) = (&self.0, &other.0);
        let mut m = [[0u8; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]) % 3;
            }
        }
        Mat3(m)
    }

    pub fn det(&self) -> u8 {
        let m = self.0.map(|r| r.map(|x| x as i64));
        let d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        d.rem_euclid(3) as u8
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    /// Adjugate times the determinant, which is its own inverse mod 3.
    pub fn inverse(&self) -> Option<Mat3> {
        let d = self.det() as i64;
        if d == 0 {
            return None;
        }
        let m = self.0.map(|r| r.map(|x| x as i64));
        let c = |i: usize, j: usize| {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        let adj: [[i64; 3]; 3] = std::array::from_fn(|j| std::array::from_fn(|i| c(i, j) * d));
        Some(Mat3::new(adj))
    }

    pub fn pow(&self, n: i64) -> Mat3 {
        let base = if n < 0 { self.inverse().expect("invertible") } else { *self };
        let mut acc = Mat3::IDENTITY;
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn order(&self) -> Option<u64> {
        if !self.is_invertible() {
            return None;
        }
        let mut m = *self;
        let mut k = 1;
        while m != Mat3::IDENTITY {
            m = m.mul(self);
            k += 1;
        }
        Some(k)
    }

    pub fn apply(&self, v: [u8; 3]) -> [u8; 3] {
        let m = &self.0;
        let mut out = [0u8; 3];
        for (j, o) in out.iter_mut().enumerate() {
            *o = (v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j]) % 3;
        }
        out
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.0;
        write!(f, "[{}{}{}/{}{}{}/{}{}{}]", r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2])
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf3Error {
    #[error("no matrix named `{0}`")]
    UnknownName(String),
    #[error("generator `{0}` has no matrix")]
    Unmapped(String),
}

pub const THETA_NAMES: [&str; 8] = ["a", "b", "p", "q", "r", "s", "t", "u"];

pub fn theta(name: &str) -> Result<Mat3, Gf3Error> {
    let m = match name {
        "a" => [[1, 0, 0], [1, 1, 0], [0, 0, 1]],
        "b" => [[1, 0, 0], [0, 1, 0], [0, 1, 1]],
        "t" => [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
        "u" => [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
        "p" => [[1, 0, 0], [0, 0, 1], [0, -1, 0]],
        "q" => [[1, 0, 0], [0, -1, 1], [0, 1, 1]],
        "r" => [[0, 1, 0], [-1, 0, 0], [0, 0, 1]],
        "s" => [[-1, 1, 0], [1, 1, 0], [0, 0, 1]],
        _ => return Err(Gf3Error::UnknownName(name.to_string())),
    };
    Ok(Mat3::new(m))
}

/// Matrices for the generators of `p`, looked up by name.
pub fn theta_images(p: &Presentation) -> Result<Vec<Mat3>, Gf3Error> {
    p.generators().iter().map(|g| theta(g).map_err(|_| Gf3Error::Unmapped(g.clone()))).collect()
}

pub fn eval_word(w: &Word, images: &[Mat3]) -> Mat3 {
    let inverses: Vec<Mat3> = images.iter().map(|m| m.inverse().expect("invertible")).collect();
    w.letters().iter().fold(Mat3::IDENTITY, |acc, &l| {
        let g = letter_generator(l);
        acc.mul(if l > 0 { &images[g] } else { &inverses[g] })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub set: &'static str,
    pub relator: String,
    pub value: Mat3,
    pub identity: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub entries: Vec<RelatorCheck>,
}

impl ThetaReport {
    pub fn all_identity(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.identity)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelatorCheck> {
        self.entries.iter().filter(|e| !e.identity)
    }
}

/// Evaluates each relator of `p` under Θ.
pub fn check_relators(set: &'static str, p: &Presentation, relators: &[Word]) -> Result<ThetaReport, Gf3Error> {
    let images = theta_images(p)?;
    let names = p.generators();
    let entries = relators
        .iter()
        .map(|w| {
            let value = eval_word(w, &images);
            RelatorCheck { set, relator: w.display(names).to_string(), value, identity: value == Mat3::IDENTITY }
        })
        .collect();
    Ok(ThetaReport { entries })
}

/// Checks every relator of `R_Z`, `R_X` and `R_Y` under Θ.
pub fn verify_theta_relators() -> ThetaReport {
    let z = catalog("Zstar").expect("built in").presentation;
    let x = catalog("Xstar").expect("built in").presentation;
    let y = catalog("Ystar").expect("built in").presentation;
    let nz = z.relators().len();
    let mut report = check_relators("R_Z", &z, z.relators()).expect("Θ covers Z*");
    for (set, p) in [("R_X", &x), ("R_Y", &y)] {
        report.entries.extend(check_relators(set, p, &p.relators()[nz..]).expect("Θ covers the amalgam").entries);
    }
    report
}

fn normalize(v: [u8; 3]) -> Option<[u8; 3]> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    // 2 is its own inverse mod 3.
    Some(v.map(|x| (x * lead) % 3))
}

/// The 13 normalized triples, in lexicographic order. They serve as both
/// point and line coordinates.
pub fn projective_triples() -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                let v = [a, b, c];
                if normalize(v) == Some(v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

pub fn triple_index(v: [u8; 3]) -> Option<usize> {
    let v = normalize(v)?;
    projective_triples().iter().position(|&w| w == v)
}

pub fn incident(point: [u8; 3], line: [u8; 3]) -> bool {
    (point[0] * line[0] + point[1] * line[1] + point[2] * line[2]).is_multiple_of(3)
}

/// Incidence lists: `lines_through[i]` and `points_on[j]`, both sorted.
pub fn incidences() -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let t = projective_triples();
    let through = t.iter().map(|&p| (0..13).filter(|&j| incident(p, t[j])).collect()).collect();
    let on = t.iter().map(|&l| (0..13).filter(|&i| incident(t[i], l)).collect()).collect();
    (through, on)
}

/// The action `⟨v⟩ ↦ ⟨v·M⟩` on the 13 points.
pub fn point_perm(m: &Mat3) -> Perm {
    let t = projective_triples();
    let images = t.iter().map(|&v| triple_index(m.apply(v)).expect("invertible") as u32).collect();
    Perm::from_images(images).expect("invertible matrix permutes points")
}

/// The induced action on lines: `l ↦ M⁻¹·l`.
pub fn line_perm(m: &Mat3) -> Perm {
    let inv = m.inverse().expect("invertible");
    let t = projective_triples();
    let images = t
        .iter()
        .map(|&l| {
            let col: [u8; 3] = std::array::from_fn(|i| ((0..3).map(|j| inv.0[i][j] * l[j]).sum::<u8>()) % 3);
            triple_index(col).expect("invertible") as u32
        })
        .collect();
    Perm::from_images(images).expect("invertible matrix permutes lines")
}

/// Breadth-first closure of a set of invertible matrices, sorted.
pub fn closure(gens: &[Mat3]) -> Vec<Mat3> {
    let mut seen: HashSet<Mat3> = HashSet::from([Mat3::IDENTITY]);
    let mut queue = VecDeque::from([Mat3::IDENTITY]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let n = m.mul(g);
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    let mut out: Vec<Mat3> = seen.into_iter().collect();
    out.sort();
    out
}

pub struct Sl33 {
    pub elements: Vec<Mat3>,
    pub group: PermGroup,
}

impl Sl33 {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Matrices acting trivially on the 13 points.
    pub fn kernel(&self) -> Vec<Mat3> {
        self.elements.iter().filter(|m| point_perm(m).is_identity()).copied().collect()
    }
}

/// `⟨Θ(a), …, Θ(u)⟩` as matrices and as a group of degree 13.
pub fn generate_sl33() -> Sl33 {
    let gens: Vec<Mat3> = THETA_NAMES.iter().map(|n| theta(n).expect("known name")).collect();
    let elements = closure(&gens);
    let group = PermGroup::new(13, gens.iter().map(point_perm).collect());
    Sl33 { elements, group }
}

pub struct Stabilizer {
    pub matrices: Vec<Mat3>,
    pub group: PermGroup,
}

pub struct Stabilizers {
    pub a1: Stabilizer,
    pub b1: Stabilizer,
    pub c1: Stabilizer,
}

pub const A1_POINT: [u8; 3] = [1, 0, 0];
/// The line through `⟨(1,0,0)⟩` and `⟨(0,1,0)⟩`.
pub const B1_LINE: [u8; 3] = [0, 0, 1];

/// `A1 = Stab(⟨(1,0,0)⟩)`, `B1 = Stab(⟨(1,0,0),(0,1,0)⟩)` and `C1 = A1 ∩ B1`.
pub fn stabilizers(sl: &Sl33) -> Stabilizers {
    let p = triple_index(A1_POINT).expect("point");
    let l = triple_index(B1_LINE).expect("line");
    let a: Vec<Mat3> = sl.elements.iter().filter(|m| point_perm(m).image(p) == p).copied().collect();
    let b: Vec<Mat3> = sl.elements.iter().filter(|m| line_perm(m).image(l) == l).copied().collect();
    let c: Vec<Mat3> = a.iter().filter(|m| b.binary_search(m).is_ok()).copied().collect();
    let make = |matrices: Vec<Mat3>| {
        let mut group = PermGroup::trivial(13);
        for p in matrices.iter().map(point_perm) {
            if !group.contains(&p) {
                group = group.join(&[p]);
            }
        }
        Stabilizer { matrices, group }
    };
    Stabilizers { a1: make(a), b1: make(b), c1: make(c) }
}
