//! Structural checks on concrete groups: Burnside's commutator identities,
//! the Feit–Thompson conclusion, AGL2(3) facts and the two-Q8 lemma.

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use super::structure::{is_isomorphic_to, is_simple, o_p, p_group_prime, product_of_o_p, sylow, Quotient, SmallGroup};
use super::table::TableGroup;
use super::{GroupError, Perm, PermGroup, ELEMENT_CAP};
use crate::words::parse_word;

/// Exhaustive pair checks up to this group order; sampled above it.
pub const BURNSIDE_EXHAUSTIVE: u64 = 1 << 12;
const BURNSIDE_SAMPLES: usize = 100_000;
const BURNSIDE_SEED: u64 = 0x6d31_3273_6c33;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("group of order {0} is not a p-group")]
    NotPGroup(u64),
    #[error("zeta does not induce an automorphism of order 3")]
    ZetaNotOrderThree,
    #[error("zeta fixes {0} nontrivial elements")]
    ZetaFixedPoints(usize),
    #[error("expected a group of order {expected}, got {got}")]
    WrongOrder { expected: u64, got: u64 },
    #[error("X is not a self-centralizing subgroup of order 3")]
    NotSelfCentralizing,
    #[error("no Feit-Thompson branch matches (order {order}, |N| = {witness})")]
    NoBranch { order: u64, witness: u64 },
    #[error("missing generator label `{0}`")]
    MissingLabel(String),
    #[error("cannot evaluate `{0}`")]
    BadWord(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub clauses: Vec<Clause>,
}

impl CheckReport {
    pub fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.clauses.push(Clause { name: name.to_string(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, prefix: &str, other: CheckReport) {
        for c in other.clauses {
            self.clauses.push(Clause { name: format!("{prefix}{}", c.name), ..c });
        }
    }
}

/// Burnside's identities for a fixed-point-free automorphism of order 3,
/// given as conjugation by `zeta` (a permutation normalizing `q`).
pub fn burnside_check(q: &PermGroup, zeta: &Perm) -> Result<CheckReport, CheckError> {
    if q.order() > 1 && p_group_prime(q).is_none() {
        return Err(CheckError::NotPGroup(q.order()));
    }
    let z = |x: &Perm| x.conjugate(zeta);
    let gens = q.generators();
    let acts_on_q = gens.iter().all(|g| q.contains(&z(g)));
    let cube_trivial = gens.iter().all(|g| &z(&z(&z(g))) == g);
    let nontrivial = gens.iter().any(|g| &z(g) != g);
    if !(acts_on_q && cube_trivial && nontrivial) {
        return Err(CheckError::ZetaNotOrderThree);
    }
    let elems = q.elements(ELEMENT_CAP)?;
    let fixed = elems.iter().filter(|x| !x.is_identity() && &z(x) == *x).count();
    if fixed > 0 {
        return Err(CheckError::ZetaFixedPoints(fixed));
    }

    let mut report = CheckReport::default();
    let class = q.nilpotency_class();
    report.push(
        "class at most two",
        matches!(class, Some(c) if c <= 2),
        format!("nilpotency class {}", class.map_or("none".into(), |c| c.to_string())),
    );

    let check_pair = |v: &Perm, w: &Perm| -> (bool, bool) {
        let lhs = Perm::commutator(v, &z(w));
        let mid = Perm::commutator(&z(v), w);
        let rhs = z(&z(&Perm::commutator(v, w)));
        (lhs == mid, lhs == rhs)
    };
    let n = elems.len();
    let (mut bad1, mut bad2, mut tried) = (0usize, 0usize, 0usize);
    let mut tally = |v: &Perm, w: &Perm| {
        let (a, b) = check_pair(v, w);
        bad1 += usize::from(!a);
        bad2 += usize::from(!b);
        tried += 1;
    };
    let mode = if q.order() <= BURNSIDE_EXHAUSTIVE {
        for v in &elems {
            for w in &elems {
                tally(v, w);
            }
        }
        "exhaustive"
    } else {
        let mut rng = StdRng::seed_from_u64(BURNSIDE_SEED);
        for _ in 0..BURNSIDE_SAMPLES {
            let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
            tally(&elems[i], &elems[j]);
        }
        "sampled"
    };
    report.push("[v,w^z] = [v^z,w]", bad1 == 0, format!("{mode}: {tried} pairs, {bad1} failures"));
    report.push("[v,w^z] = [v,w]^(z^2)", bad2 == 0, format!("{mode}: {tried} pairs, {bad2} failures"));
    Ok(report)
}

fn gamma4(g: &PermGroup) -> PermGroup {
    let lcs = g.lower_central_series();
    lcs[3.min(lcs.len() - 1)].clone()
}

fn triple_product(a: &Perm, b: &Perm, c: &Perm) -> Perm {
    let t = |x: &Perm, y: &Perm, z: &Perm| Perm::commutator(&Perm::commutator(x, y), z);
    t(a, b, c).mul(&t(b, c, a)).mul(&t(c, a, b))
}

/// `[[a,b],c][[b,c],a][[c,a],b] ∈ γ4(G)` for all triples drawn from `pool`.
pub fn triple_commutator_congruence_over(g: &PermGroup, pool: &[Perm]) -> Result<bool, CheckError> {
    if g.order() > 1 && p_group_prime(g).is_none() {
        return Err(CheckError::NotPGroup(g.order()));
    }
    let g4 = gamma4(g);
    Ok(pool
        .iter()
        .all(|a| pool.iter().all(|b| pool.iter().all(|c| g4.contains(&triple_product(a, b, c))))))
}

pub fn verify_triple_commutator_congruence(g: &PermGroup) -> Result<bool, CheckError> {
    triple_commutator_congruence_over(g, g.generators())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FtBranch {
    /// Nilpotent normal N with H/N ≅ C3 or Sym(3).
    I,
    /// Normal 2-subgroup N with H/N ≅ Alt(5).
    II,
    /// H ≅ PSL2(7).
    III,
}

#[derive(Clone, Debug)]
pub struct FtOutcome {
    pub branch: FtBranch,
    pub witness: PermGroup,
    pub quotient: SmallGroup,
}

/// Which conclusion of the Feit–Thompson theorem holds for `h` with the
/// self-centralizing subgroup `x` of order 3.
pub fn feit_thompson_branch(h: &PermGroup, x: &PermGroup) -> Result<FtOutcome, CheckError> {
    if x.order() != 3 || !x.is_subgroup_of(h) || h.centralizer(x).order() != 3 {
        return Err(CheckError::NotSelfCentralizing);
    }
    let n = product_of_o_p(h, &[3])?;
    let no_branch = || CheckError::NoBranch { order: h.order(), witness: n.order() };
    if !n.is_normal_in(h) || !n.is_nilpotent() {
        return Err(no_branch());
    }
    if h.order() == 168 && is_simple(h)? {
        return Ok(FtOutcome { branch: FtBranch::III, witness: n, quotient: SmallGroup::PSL27 });
    }
    let q = if n.is_trivial() { h.clone() } else { Quotient::new(h, &n)?.group().clone() };
    let outcome = |branch, quotient| Ok(FtOutcome { branch, witness: n.clone(), quotient });
    match q.order() {
        3 => outcome(FtBranch::I, SmallGroup::C3),
        6 if is_isomorphic_to(&q, SmallGroup::Sym3)? => outcome(FtBranch::I, SmallGroup::Sym3),
        60 if is_isomorphic_to(&q, SmallGroup::Alt5)? && (n.order() == 1 || p_group_prime(&n) == Some(2)) => {
            outcome(FtBranch::II, SmallGroup::Alt5)
        }
        _ => Err(no_branch()),
    }
}

fn is_elementary_abelian(g: &PermGroup, p: u64) -> bool {
    g.is_abelian() && g.generators().iter().all(|x| x.order() == p || x.is_identity())
}

/// Index-4 maximality: every element outside `z` generates `g` together with `z`.
fn is_maximal(g: &PermGroup, z: &PermGroup) -> bool {
    g.iter_elements().all(|x| z.contains(&x) || z.join(&[x]).order() == g.order())
}

/// Clauses (i)-(v) of the standard facts about a group isomorphic to AGL2(3).
pub fn verify_agl23_facts(g: &PermGroup) -> Result<CheckReport, CheckError> {
    if g.order() != 432 {
        return Err(CheckError::WrongOrder { expected: 432, got: g.order() });
    }
    let mut r = CheckReport::default();

    // (i)
    let o3 = o_p(g, 3)?;
    let elem_ab = o3.order() == 9 && is_elementary_abelian(&o3, 3);
    r.push("(i) O3 elementary abelian of order 9", elem_ab, format!("|O3| = {}", o3.order()));
    let self_cent = g.centralizer(&o3).same_group(&o3);
    r.push("(i) O3 self-centralizing", self_cent, format!("|C(O3)| = {}", g.centralizer(&o3).order()));
    let quotient = Quotient::new(g, &o3)?;
    let gbar_gl = is_isomorphic_to(quotient.group(), SmallGroup::GL23)?;
    r.push("(i) G/O3 isomorphic to GL2(3)", gbar_gl, format!("|G/O3| = {}", quotient.group().order()));
    let nontrivial = o3.generators().first().cloned();
    let orbit_len = nontrivial.map_or(0, |x| g.stabilizer(x, |y, h| y.conjugate(h)).1.len());
    r.push(
        "(i) transitive on nontrivial O3 elements",
        orbit_len as u64 + 1 == o3.order() && o3.order() > 1,
        format!("orbit length {orbit_len}"),
    );

    // (ii)
    let zbar = quotient.group().center();
    let involutions: Vec<Perm> = g
        .iter_elements()
        .filter(|x| x.order() == 2)
        .filter(|x| {
            let xb = quotient.image(x);
            !xb.is_identity() && zbar.contains(&xb)
        })
        .collect();
    let mut complement_ok = !involutions.is_empty();
    for t in &involutions {
        let c = g.centralizer_of(t);
        let complement = c.order() * o3.order() == g.order() && c.intersection(&o3)?.order() == 1;
        complement_ok &= complement && is_isomorphic_to(&c, SmallGroup::GL23)?;
    }
    r.push(
        "(ii) C(t) is a GL2(3) complement to O3",
        complement_ok,
        format!("{} central involutions mod O3", involutions.len()),
    );

    // (iii)
    let s = sylow(g, 3)?;
    let zs = s.center();
    let extraspecial = s.order() == 27 && zs.order() == 3 && s.derived_subgroup().same_group(&zs);
    let exponent3 = s.iter_elements().all(|x| x.order() <= 3);
    r.push("(iii) S extraspecial of order 27", extraspecial, format!("|S| = {}, |Z(S)| = {}", s.order(), zs.order()));
    r.push("(iii) S has exponent 3", exponent3, "");
    let z = g.normalizer(&s)?;
    let czs = z.centralizer(&s);
    let cxs = g.centralizer(&s);
    r.push(
        "(iii) C_Z(S) = C_X(S) = Z(S) cyclic of order 3",
        czs.same_group(&zs) && cxs.same_group(&zs) && zs.order() == 3,
        format!("|C_Z(S)| = {}, |C_X(S)| = {}", czs.order(), cxs.order()),
    );

    // (iv)
    let nzs = g.normalizer(&zs)?;
    r.push(
        "(iv) Z = N(Z(S)) of index 4",
        nzs.same_group(&z) && g.order() == 4 * z.order(),
        format!("|Z| = {}, |N(Z(S))| = {}", z.order(), nzs.order()),
    );
    r.push("(iv) Z maximal", is_maximal(g, &z), "");

    // (v)
    let tz = TableGroup::new(&z)?;
    let aut_z = tz.automorphism_group();
    let inn_z = tz.inner_automorphism_group();
    r.push(
        "(v) Inn(Z) isomorphic to Z",
        inn_z.order() == z.order() && z.center().order() == 1,
        format!("|Inn(Z)| = {}", inn_z.order()),
    );
    r.push("(v) |Aut(Z)/Inn(Z)| = 2", aut_z.order() == 2 * inn_z.order(), format!("|Aut(Z)| = {}", aut_z.order()));
    let tg = TableGroup::new(g)?;
    let aut_x = tg.automorphism_maps().len() as u64;
    r.push(
        "(v) Aut(X) = Inn(X) isomorphic to X",
        aut_x == g.order() && g.center().order() == 1,
        format!("|Aut(X)| = {aut_x}"),
    );
    let nz = g.normalizer(&z)?;
    r.push("(v) N(Z) = Z", nz.same_group(&z), format!("|N(Z)| = {}", nz.order()));
    Ok(r)
}

/// A permutation group with named generator images.
#[derive(Clone, Debug)]
pub struct LabeledGroup {
    degree: usize,
    labels: Vec<(String, Perm)>,
}

impl LabeledGroup {
    pub fn new(degree: usize, labels: Vec<(String, Perm)>) -> LabeledGroup {
        LabeledGroup { degree, labels }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn labels(&self) -> &[(String, Perm)] {
        &self.labels
    }

    pub fn get(&self, name: &str) -> Result<&Perm, CheckError> {
        self.labels.iter().find(|(n, _)| n == name).map(|(_, p)| p).ok_or_else(|| CheckError::MissingLabel(name.into()))
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.labels.iter().map(|(_, p)| p.clone()).collect())
    }

    /// Evaluates a word in the labels, e.g. `r^(p r)`.
    pub fn eval(&self, text: &str) -> Result<Perm, CheckError> {
        let names: Vec<String> = self.labels.iter().map(|(n, _)| n.clone()).collect();
        let w = parse_word(text, &names).map_err(|_| CheckError::BadWord(text.into()))?;
        let mut acc = Perm::identity(self.degree);
        for &l in w.letters() {
            let p = &self.labels[l.unsigned_abs() as usize - 1].1;
            acc = if l > 0 { acc.mul(p) } else { acc.mul(&p.inverse()) };
        }
        Ok(acc)
    }

    pub fn subgroup(&self, words: &[&str]) -> Result<PermGroup, CheckError> {
        Ok(PermGroup::new(self.degree, words.iter().map(|w| self.eval(w)).collect::<Result<_, _>>()?))
    }

    /// Same group with two labels' images exchanged.
    pub fn swapped(&self, a: &str, b: &str) -> Result<LabeledGroup, CheckError> {
        let (pa, pb) = (self.get(a)?.clone(), self.get(b)?.clone());
        let labels = self
            .labels
            .iter()
            .map(|(n, p)| {
                let q = if n == a {
                    pb.clone()
                } else if n == b {
                    pa.clone()
                } else {
                    p.clone()
                };
                (n.clone(), q)
            })
            .collect();
        Ok(LabeledGroup { degree: self.degree, labels })
    }
}

fn normalizes(k: &PermGroup, h: &PermGroup) -> bool {
    k.generators().iter().all(|g| h.generators().iter().all(|x| h.contains(&x.conjugate(g))))
}

/// The two-Q8 lemma in a completion with generators `a, b, p, q, r, s, t, u`.
pub fn verify_2q8_lemma(g: &LabeledGroup) -> Result<CheckReport, CheckError> {
    for l in ["a", "b", "p", "q", "r", "s", "t", "u"] {
        g.get(l)?;
    }
    let mut r = CheckReport::default();
    let p = g.subgroup(&["p", "q"])?;
    let rr = g.subgroup(&["r^(p r)", "s^(p r)"])?;
    let k = g.subgroup(&["b", "u"])?;
    r.push("P isomorphic to Q8", is_isomorphic_to(&p, SmallGroup::Q8)?, format!("|P| = {}", p.order()));
    r.push("R isomorphic to Q8", is_isomorphic_to(&rr, SmallGroup::Q8)?, format!("|R| = {}", rr.order()));
    r.push("K isomorphic to Sym(3)", is_isomorphic_to(&k, SmallGroup::Sym3)?, format!("|K| = {}", k.order()));
    r.push("K normalizes P", normalizes(&k, &p), "");
    r.push("K normalizes R", normalizes(&k, &rr), "");
    let t = g.get("t")?;
    let in_ct = p.generators().iter().chain(rr.generators()).chain(k.generators()).all(|x| x.mul(t) == t.mul(x));
    r.push("<P,R>K centralizes t", in_ct, "");
    let pk = p.join(k.generators());
    let rk = rr.join(k.generators());
    r.push("PK isomorphic to GL2(3)", is_isomorphic_to(&pk, SmallGroup::GL23)?, format!("|PK| = {}", pk.order()));
    r.push("RK isomorphic to GL2(3)", is_isomorphic_to(&rk, SmallGroup::GL23)?, format!("|RK| = {}", rk.order()));
    r.push("u^(pr) = t", &g.eval("u^(p r)")? == t, "");
    r.push("a^(pr) = b", g.eval("a^(p r)")? == *g.get("b")?, "");
    r.push("(ut)^(pr) = u", g.eval("(u t)^(p r)")? == *g.get("u")?, "");
    Ok(r)
}

/// The involution-centralizer facts in a completion: `C_H(b) = <b,t>`,
/// `W = <P,R>` a 2-group normalized by `K` with `C_W(b) = <t>`, and `O3(G) = 1`.
pub fn verify_involution_centralizer(g: &LabeledGroup) -> Result<CheckReport, CheckError> {
    let mut r = CheckReport::default();
    let gg = g.group();
    let (t, b) = (g.get("t")?.clone(), g.get("b")?.clone());
    let h = gg.centralizer_of(&t);
    let chb = h.centralizer_of(&b);
    let bt = g.subgroup(&["b", "t"])?;
    r.push(
        "C_H(b) = <b,t> of order 6",
        chb.order() == 6 && chb.same_group(&bt),
        format!("|H| = {}, |C_H(b)| = {}", h.order(), chb.order()),
    );
    let w = g.subgroup(&["p", "q", "r^(p r)", "s^(p r)"])?;
    let k = g.subgroup(&["b", "u"])?;
    r.push("W is a 2-group", p_group_prime(&w) == Some(2), format!("|W| = {}", w.order()));
    r.push("W <= H", w.is_subgroup_of(&h), "");
    r.push("K normalizes W", normalizes(&k, &w), "");
    let cwb = w.centralizer_of(&b);
    let tt = PermGroup::new(g.degree(), vec![t]);
    r.push("C_W(b) = <t>", cwb.same_group(&tt), format!("|C_W(b)| = {}", cwb.order()));
    let o3 = o_p(&gg, 3)?;
    r.push("O3(G) = 1", o3.order() == 1, format!("|O3(G)| = {}", o3.order()));
    Ok(r)
}

/// `W/<t>` with conjugation by `b^2`, as inputs to [`burnside_check`].
pub fn w_mod_t(g: &LabeledGroup) -> Result<(PermGroup, Perm), CheckError> {
    let w = g.subgroup(&["p", "q", "r^(p r)", "s^(p r)"])?;
    let t = PermGroup::new(g.degree(), vec![g.get("t")?.clone()]);
    let q = Quotient::new(&w, &t)?;
    let zeta = q.conjugation_by(&g.eval("b^2")?).ok_or(CheckError::ZetaNotOrderThree)?;
    Ok((q.group().clone(), zeta))
}

/// `C_G(t)/<t>` and the image of `<b>`, as inputs to [`feit_thompson_branch`].
pub fn centralizer_mod_t(g: &LabeledGroup) -> Result<(PermGroup, PermGroup, Quotient), CheckError> {
    let t = g.get("t")?.clone();
    let h = g.group().centralizer_of(&t);
    let q = Quotient::new(&h, &PermGroup::new(g.degree(), vec![t]))?;
    let x = PermGroup::new(q.group().degree(), vec![q.image(g.get("b")?)]);
    Ok((q.group().clone(), x, q))
}
