use crate::designs::{self, automorphism_group, build_steiner, golay_codewords, points_of, subsets, weight, SteinerSystem};
use crate::gf3::{self, generate_sl33, stabilizers};
use crate::graphs::{self, coset_graph, gamma1, gamma1_action, gamma2, gamma2_action, isomorphic, verify_theorem_b_hypotheses};
use crate::graphs::{BipartiteGraph, IsoOutcome};
use crate::models::{self, completion_image, order_by_enumeration, regular_image, xstar_affine_image, XSTAR_WORDS, YSTAR_WORDS};
use crate::perm::checks::{
    burnside_check, centralizer_mod_t, feit_thompson_branch, verify_2q8_lemma, verify_agl23_facts, verify_involution_centralizer,
    w_mod_t, CheckReport, LabeledGroup,
};
use crate::perm::{is_isomorphic_to, named, o_p, sylow, Perm, PermGroup, Quotient, SmallGroup, TableGroup};
use crate::words::verify_free_identities;

use super::{Basis, Claim, ScenarioError, Settings};

type Outcome = Result<Vec<Claim>, ScenarioError>;

fn clauses(prefix: &str, r: CheckReport, basis: Basis) -> impl Iterator<Item = Claim> + '_ {
    r.clauses.into_iter().map(move |c| Claim::holds(format!("{prefix}{}", c.name), c.pass, basis).with_detail(c.detail))
}

fn images(settings: &Settings) -> Result<[(&'static str, LabeledGroup); 2], ScenarioError> {
    let limits = settings.limits();
    Ok([("F1: ", completion_image(1, &limits)?), ("F3: ", completion_image(3, &limits)?)])
}

pub(super) fn presentation_orders(settings: &Settings) -> Outcome {
    let limits = settings.limits();
    let mut out = Vec::new();
    for (name, label, expected) in [("Zstar", "|Z*|", 108usize), ("Xstar", "|X*|", 432), ("Ystar", "|Y*|", 432)] {
        out.push(match order_by_enumeration(name, &limits) {
            Ok(n) => Claim::equal(label, expected, n, Basis::Computed),
            Err(e) => Claim::failed(label, expected, e, Basis::Computed),
        });
    }
    Ok(out)
}

pub(super) fn theorem_a_orders(settings: &Settings) -> Outcome {
    let limits = settings.limits();
    let mut out = Vec::new();
    for (i, expected) in [(1, 95040usize), (2, 1), (3, 5616), (4, 1)] {
        let label = format!("|F{i}|");
        out.push(match models::enumerate_over(&format!("F{i}"), &[], &limits) {
            Ok(t) => {
                let s = t.stats();
                Claim::equal(label, expected, t.live_count(), Basis::Literature)
                    .with_detail(format!("{}, peak {} rows, {} defined", limits.strategy, s.max_rows, s.total_defined))
            }
            Err(e) => Claim::failed(label, expected, e, Basis::Literature),
        });
    }
    Ok(out)
}

pub(super) fn theta_check(_: &Settings) -> Outcome {
    let report = gf3::verify_theta_relators();
    let mut out = Vec::new();
    for (set, count) in [("R_Z", 12usize), ("R_X", 11), ("R_Y", 12)] {
        let entries: Vec<_> = report.entries.iter().filter(|e| e.set == set).collect();
        let bad: Vec<&str> = entries.iter().filter(|e| !e.identity).map(|e| e.relator.as_str()).collect();
        out.push(Claim::equal(format!("{set} relators checked"), count, entries.len(), Basis::Immediate));
        out.push(Claim::equal(format!("{set} relators mapping to I"), entries.len(), entries.len() - bad.len(), Basis::Literature).with_detail(bad.join("; ")));
    }
    let sl = generate_sl33();
    out.push(Claim::equal("|<Θ>| as matrices", 5616, sl.order(), Basis::Literature));
    out.push(Claim::equal("|<Θ>| on 13 points", 5616, sl.group.order(), Basis::Computed));
    let a = gf3::theta("a").expect("known");
    out.push(Claim::holds("control: Θ(a)^2 ≠ I", a.pow(2) != gf3::Mat3::IDENTITY, Basis::Immediate));
    Ok(out)
}

pub(super) fn amalgam_two_classes(settings: &Settings) -> Outcome {
    let z = regular_image("Zstar", &settings.limits())?.group();
    let tz = TableGroup::new(&z)?;
    let aut = tz.automorphism_group();
    let inn = tz.inner_automorphism_group();
    Ok(vec![
        Claim::equal("|Z|", 108, z.order(), Basis::Computed),
        Claim::equal("|Aut(Z)|", 216, aut.order(), Basis::Literature),
        Claim::equal("|Inn(Z)|", 108, inn.order(), Basis::Computed),
        Claim::holds("Inn(Z) normal in Aut(Z)", inn.is_normal_in(&aut), Basis::Immediate),
        Claim::equal("double cosets Inn(Z) \\ Aut(Z) / Inn(Z)", 2, aut.double_coset_count(&inn, &inn)?, Basis::Literature),
    ])
}

pub(super) fn agl23_facts(settings: &Settings) -> Outcome {
    let abstract_g = named::agl23();
    let x = xstar_affine_image(&settings.limits())?.group();
    let mut out = vec![Claim::holds("X* image ≅ AGL2(3)", is_isomorphic_to(&x, SmallGroup::AGL23)?, Basis::Literature)];
    out.extend(clauses("AGL2(3): ", verify_agl23_facts(&abstract_g)?, Basis::Literature));
    out.extend(clauses("X* image: ", verify_agl23_facts(&x)?, Basis::Literature));
    let s = sylow(&x, 3)?;
    let z = x.normalizer(&s)?;
    out.push(Claim::equal("|Aut(N(S))| in X* image", 216, TableGroup::new(&z)?.automorphism_group().order(), Basis::Literature));
    let o3 = o_p(&abstract_g, 3)?;
    out.push(Claim::equal("|O3(AGL2(3))|", 9, o3.order(), Basis::Immediate));
    Ok(out)
}

pub(super) fn q8_lemma(settings: &Settings) -> Outcome {
    let mut out = Vec::new();
    for (prefix, g) in images(settings)? {
        out.extend(clauses(prefix, verify_2q8_lemma(&g)?, Basis::Literature));
    }
    Ok(out)
}

pub(super) fn centralizer_checks(settings: &Settings) -> Outcome {
    let mut out = Vec::new();
    for (prefix, g) in images(settings)? {
        out.extend(clauses(prefix, verify_involution_centralizer(&g)?, Basis::Literature));
    }
    Ok(out)
}

pub(super) fn burnside_w(settings: &Settings) -> Outcome {
    let mut out = Vec::new();
    for (prefix, g) in images(settings)? {
        let (w, zeta) = w_mod_t(&g)?;
        out.push(Claim::holds(format!("{prefix}W/<t> is a 2-group"), w.order().is_power_of_two(), Basis::Literature).with_detail(format!("|W/<t>| = {}", w.order())));
        out.extend(clauses(prefix, burnside_check(&w, &zeta)?, Basis::Literature));
    }
    Ok(out)
}

fn three_cycle(n: usize) -> Perm {
    Perm::from_cycles(n, &[&[1, 2, 3]]).expect("valid cycle")
}

/// The branch, and whether the witness `N` is a normal nilpotent 3'-subgroup
/// with `H/N` of the reported type.
fn branch_claims(label: &str, h: &PermGroup, x: &PermGroup, expected: &str, basis: Basis) -> Result<Vec<Claim>, ScenarioError> {
    let out = feit_thompson_branch(h, x)?;
    let n = &out.witness;
    let q = if n.is_trivial() { h.clone() } else { Quotient::new(h, n)?.group().clone() };
    let ok = n.is_normal_in(h) && n.is_nilpotent() && n.order() % 3 != 0 && is_isomorphic_to(&q, out.quotient)?;
    Ok(vec![
        Claim::equal(format!("{label}: branch"), expected.to_string(), format!("{:?} {:?}", out.branch, out.quotient), basis),
        Claim::holds(format!("{label}: witness verified"), ok, Basis::Immediate).with_detail(format!("|N| = {}", n.order())),
    ])
}

pub(super) fn feit_thompson(settings: &Settings) -> Outcome {
    let mut out = Vec::new();
    let s3 = named::symmetric(3);
    out.extend(branch_claims("Sym(3)", &s3, &PermGroup::new(3, vec![three_cycle(3)]), "I Sym3", Basis::Immediate)?);
    let a5 = named::alternating(5);
    out.extend(branch_claims("Alt(5)", &a5, &PermGroup::new(5, vec![three_cycle(5)]), "II Alt5", Basis::Immediate)?);
    let l = named::psl27();
    let y = l.iter_elements().find(|g| g.order() == 3).expect("PSL2(7) has elements of order 3");
    out.extend(branch_claims("PSL2(7)", &l, &PermGroup::new(l.degree(), vec![y]), "III PSL27", Basis::Immediate)?);
    for (prefix, g) in images(settings)? {
        let (h, x, _) = centralizer_mod_t(&g)?;
        let label = format!("{}C(t)/<t>", prefix);
        out.extend(branch_claims(&label, &h, &x, "I Sym3", Basis::Computed)?);
    }
    Ok(out)
}

pub(super) fn sl3_geometry(_: &Settings) -> Outcome {
    let sl = generate_sl33();
    let (points, lines) = gf3::incidences();
    let pts = gf3::projective_triples();
    let pair_ok = (0..13).all(|i| {
        (i + 1..13).all(|j| pts.iter().filter(|&&l| gf3::incident(pts[i], l) && gf3::incident(pts[j], l)).count() == 1)
    });
    let st = stabilizers(&sl);
    let (a1, b1, c1) = (&st.a1.group, &st.b1.group, &st.c1.group);
    let zs = sylow(c1, 3)?.center();
    Ok(vec![
        Claim::equal("|SL3(3)|", 5616, sl.order(), Basis::Literature),
        Claim::equal("kernel on points", 1, sl.kernel().len(), Basis::Immediate),
        Claim::holds("4 lines on each point", points.iter().all(|l| l.len() == 4), Basis::Immediate),
        Claim::holds("4 points on each line", lines.iter().all(|l| l.len() == 4), Basis::Immediate),
        Claim::holds("two points on exactly one line", pair_ok, Basis::Immediate),
        Claim::equal("|A1|", 432, a1.order(), Basis::Literature),
        Claim::equal("|B1|", 432, b1.order(), Basis::Literature),
        Claim::equal("|C1|", 108, c1.order(), Basis::Literature),
        Claim::holds("A1 ≅ AGL2(3)", is_isomorphic_to(a1, SmallGroup::AGL23)?, Basis::Literature),
        Claim::holds("B1 ≅ AGL2(3)", is_isomorphic_to(b1, SmallGroup::AGL23)?, Basis::Literature),
        Claim::holds("C1 = N(Z(S)) for S Sylow in C1", c1.same_group(&sl.group.normalizer(&zs)?), Basis::Computed),
        Claim::equal("|O3(C1)|", 27, o_p(c1, 3)?.order(), Basis::Computed),
    ])
}

fn m12(s: &SteinerSystem) -> Result<PermGroup, ScenarioError> {
    Ok(automorphism_group(s)?.0)
}

pub(super) fn steiner_build(_: &Settings) -> Outcome {
    let words = golay_codewords();
    let mut dist = [0usize; 13];
    for w in &words {
        dist[weight(w)] += 1;
    }
    let s = build_steiner()?;
    let mut out = vec![
        Claim::equal("Golay codewords", 729, words.len(), Basis::Immediate),
        Claim::equal("weights 0/6/9/12", "1/264/440/24".to_string(), format!("{}/{}/{}/{}", dist[0], dist[6], dist[9], dist[12]), Basis::Computed),
        Claim::equal("hexads", 132, s.blocks().len(), Basis::Literature),
    ];
    let once = subsets(12, 5).iter().all(|&f| s.blocks_containing(f) == 1);
    out.push(Claim::holds("each 5-subset in exactly one hexad", once, Basis::Literature));
    let counts: Vec<String> = (1..=5)
        .map(|k| {
            let c: Vec<usize> = subsets(12, k).iter().map(|&m| s.blocks_containing(m)).collect();
            if c.iter().all(|&x| x == c[0]) { c[0].to_string() } else { "uneven".into() }
        })
        .collect();
    out.push(Claim::equal("hexads through 1..5 points", "66/30/12/4/1".to_string(), counts.join("/"), Basis::Computed));
    let g = m12(&s)?;
    out.push(Claim::equal("|Aut(S)|", 95040, g.order(), Basis::Literature));
    out.push(Claim::holds("Aut(S) preserves S", g.generators().iter().all(|p| s.preserves(p)), Basis::Immediate));
    let t = designs::triples()[0];
    let stab = g.set_stabilizer(&points_of(t));
    out.push(Claim::equal("|triple stabilizer|", 432, stab.order(), Basis::Literature));
    out.push(Claim::holds("triple stabilizer ≅ AGL2(3)", is_isomorphic_to(&stab, SmallGroup::AGL23)?, Basis::Literature));
    Ok(out)
}

pub(super) fn linked_threes(_: &Settings) -> Outcome {
    let s = build_steiner()?;
    let lts = designs::linked_threes(&s);
    let triples = designs::triples();
    let per_triple: Vec<usize> = triples.iter().map(|&t| lts.iter().filter(|l| l.contains(t)).count()).collect();
    let g = m12(&s)?;
    let (stab, orbit) = g.stabilizer(lts[0], |l, p| l.image(p));
    let both = stab.set_stabilizer(&lts[0].parts()[0]);
    Ok(vec![
        Claim::equal("partitions into four triples", 15400, designs::partition_count(), Basis::Computed),
        Claim::equal("linked threes", 220, lts.len(), Basis::Literature),
        Claim::holds("each triple in 4 linked threes", per_triple.iter().all(|&c| c == 4), Basis::Computed),
        Claim::equal("Aut(S)-orbit of a linked three", 220, orbit.len(), Basis::Computed),
        Claim::equal("|linked-three stabilizer|", 432, stab.order(), Basis::Literature),
        Claim::holds("linked-three stabilizer ≅ AGL2(3)", is_isomorphic_to(&stab, SmallGroup::AGL23)?, Basis::Literature),
        Claim::equal("|stabilizer of a linked three and one part|", 108, both.order(), Basis::Literature),
    ])
}

fn iso_claim(label: &str, a: &BipartiteGraph, b: &BipartiteGraph, cap: u64) -> Claim {
    match isomorphic(a, b, cap) {
        Ok(IsoOutcome::Isomorphic(map)) => {
            Claim::holds(label, graphs::verify_isomorphism(a, b, &map), Basis::Literature).with_detail("bijection checked edge by edge")
        }
        Ok(IsoOutcome::NotIsomorphic) => Claim::holds(label, false, Basis::Literature),
        Err(e) => Claim::failed(label, true, e, Basis::Literature),
    }
}

fn shape(name: &str, g: &BipartiteGraph, vertices: usize, degree: usize) -> Vec<Claim> {
    vec![
        Claim::equal(format!("{name} vertices"), vertices, g.vertex_count(), Basis::Literature),
        Claim::equal(format!("{name} degree"), degree.to_string(), g.regular_degree().map_or("irregular".into(), |d| d.to_string()), Basis::Computed),
    ]
}

pub(super) fn gamma1_iso(settings: &Settings) -> Outcome {
    let sl = generate_sl33();
    let st = stabilizers(&sl);
    let model = gamma1();
    let (cg, _) = coset_graph(&sl.group, &st.a1.group, &st.b1.group)?;
    let mut out = shape("Γ1", &model, 26, 4);
    out.extend(shape("coset graph", &cg, 26, 4));
    out.push(iso_claim("Γ1 ≅ Γ(SL3(3), A1, B1)", &model, &cg, settings.iso_step_cap));
    Ok(out)
}

pub(super) fn gamma2_iso(settings: &Settings) -> Outcome {
    let g = completion_image(1, &settings.limits())?;
    let group = g.group();
    let x = g.subgroup(&XSTAR_WORDS)?;
    let y = g.subgroup(&YSTAR_WORDS)?;
    let mut out = vec![
        Claim::equal("|F1 image|", 95040, group.order(), Basis::Literature),
        Claim::equal("|X* image|", 432, x.order(), Basis::Computed),
        Claim::equal("|Y* image|", 432, y.order(), Basis::Computed),
        Claim::equal("|X* ∩ Y*|", 108, x.intersection(&y)?.order(), Basis::Computed),
    ];
    let (cg, _) = coset_graph(&group, &x, &y)?;
    let model = gamma2(&build_steiner()?);
    out.extend(shape("Γ2", &model, 440, 4));
    out.extend(shape("coset graph", &cg, 440, 4));
    out.push(iso_claim("Γ2 ≅ Γ(F1, X*, Y*)", &model, &cg, settings.iso_step_cap));
    Ok(out)
}

pub(super) fn theorem_b(_: &Settings) -> Outcome {
    let mut out = Vec::new();
    let g1 = gamma1();
    let a1 = gamma1_action(&g1)?;
    out.push(Claim::equal("Γ1: |G|", 5616, a1.order(), Basis::Literature));
    out.extend(shape("Γ1", &g1, 26, 4));
    out.extend(clauses("Γ1: ", verify_theorem_b_hypotheses(&g1, &a1)?, Basis::Literature));
    let s = build_steiner()?;
    let g2 = gamma2(&s);
    let a2 = gamma2_action(&s, &g2, &m12(&s)?)?;
    out.push(Claim::equal("Γ2: |G|", 95040, a2.order(), Basis::Literature));
    out.extend(shape("Γ2", &g2, 440, 4));
    out.extend(clauses("Γ2: ", verify_theorem_b_hypotheses(&g2, &a2)?, Basis::Literature));
    Ok(out)
}

pub(super) fn free_identities(_: &Settings) -> Outcome {
    Ok(verify_free_identities()
        .into_iter()
        .map(|c| {
            let expected = !c.name.starts_with("perturbed");
            Claim::equal(format!("{}: holds", c.name), expected, c.pass, Basis::Immediate).with_detail(format!("{} = {}", c.lhs, c.rhs))
        })
        .collect())
}
