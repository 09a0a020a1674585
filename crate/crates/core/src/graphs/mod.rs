//! Bipartite graphs with a group action: coset graphs Γ(G, X, Y), the two
//! model graphs Γ1 and Γ2, fixed subgraphs, and isomorphism testing.
//!
//! Vertices are numbered left side first: left `i` is vertex `i`, right `j`
//! is vertex `left_count + j`.

mod iso;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::designs::{self, mask_image, points_of, LinkedThree, SteinerSystem};
use crate::gf3::{self, line_perm, point_perm, projective_triples, Mat3, THETA_NAMES};
use crate::perm::checks::CheckReport;
use crate::perm::{is_isomorphic_to, o_p, orbit_of, GroupError, Perm, PermGroup, SmallGroup};

pub use iso::{isomorphic, verify_isomorphism, IsoError, IsoOutcome, DEFAULT_STEP_CAP};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is out of range")]
    EdgeOutOfRange(usize, usize),
    #[error("expected {expected} vertex images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("generator {0} does not act on the vertices as an automorphism")]
    NotAutomorphism(usize),
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("bad graph text: {0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: Vec<String>,
    right: Vec<String>,
    /// `(left, right)` pairs, sorted and distinct.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphDump {
    format: String,
    version: u32,
    left: Vec<String>,
    right: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: Vec<String>, right: Vec<String>, mut edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for &(i, j) in &edges {
            if i >= left.len() || j >= right.len() {
                return Err(GraphError::EdgeOutOfRange(i, j));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let n = left.len();
        let mut adj = vec![Vec::new(); n + right.len()];
        for &(i, j) in &edges {
            adj[i].push(n + j);
            adj[n + j].push(i);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(BipartiteGraph { left, right, edges, adj })
    }

    /// Unlabelled graph with numeric labels.
    pub fn from_edges(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let l = (0..left).map(|i| format!("L{}", i + 1)).collect();
        let r = (0..right).map(|j| format!("R{}", j + 1)).collect();
        BipartiteGraph::new(l, r, edges)
    }

    pub fn left_count(&self) -> usize {
        self.left.len()
    }

    pub fn right_count(&self) -> usize {
        self.right.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges as vertex pairs.
    pub fn vertex_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.left.len();
        self.edges.iter().map(move |&(i, j)| (i, n + j))
    }

    pub fn label(&self, v: usize) -> &str {
        if v < self.left.len() {
            &self.left[v]
        } else {
            &self.right[v - self.left.len()]
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn has_degree_one(&self) -> bool {
        self.adj.iter().any(|a| a.len() == 1)
    }

    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued");
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Connected with `|E| = |V| - 1`.
    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    /// Length of a shortest cycle, by breadth-first search from every vertex.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.vertex_count() {
            let mut dist = vec![usize::MAX; self.vertex_count()];
            let mut parent = vec![usize::MAX; self.vertex_count()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let c = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }

    /// The subgraph induced on `keep`, which must be sorted.
    pub fn induced(&self, keep: &[usize]) -> BipartiteGraph {
        let n = self.left.len();
        let mut lmap = HashMap::new();
        let mut rmap = HashMap::new();
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for &v in keep {
            if v < n {
                lmap.insert(v, left.len());
                left.push(self.left[v].clone());
            } else {
                rmap.insert(v - n, right.len());
                right.push(self.right[v - n].clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|(i, j)| Some((*lmap.get(i)?, *rmap.get(j)?)))
            .collect();
        BipartiteGraph::new(left, right, edges).expect("indices in range")
    }

    /// Whether `p` maps edges to edges.
    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.vertex_count() && self.vertex_edges().all(|(u, v)| self.adjacent(p.image(u), p.image(v)))
    }

    pub fn to_json(&self) -> String {
        let dump = GraphDump {
            format: "bipartite-graph".into(),
            version: 1,
            left: self.left.clone(),
            right: self.right.clone(),
            edges: self.edges.clone(),
        };
        serde_json::to_string(&dump).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<BipartiteGraph, GraphError> {
        let dump: GraphDump = serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))?;
        if dump.format != "bipartite-graph" || dump.version != 1 {
            return Err(GraphError::Format("unsupported format or version".into()));
        }
        BipartiteGraph::new(dump.left, dump.right, dump.edges)
    }
}

/// A group acting on a graph.
///
/// Stored as one permutation group on the group's own points followed by the
/// vertices, so any element's vertex image is its tail.
#[derive(Clone, Debug)]
pub struct GraphAction {
    points: usize,
    vertices: usize,
    combined: PermGroup,
}

impl GraphAction {
    /// `images[i]` is the vertex permutation induced by the `i`-th generator.
    pub fn new(graph: &BipartiteGraph, group: &PermGroup, images: &[Perm]) -> Result<GraphAction, GraphError> {
        if images.len() != group.generators().len() {
            return Err(GraphError::ImageCount { expected: group.generators().len(), got: images.len() });
        }
        let (n, v) = (group.degree(), graph.vertex_count());
        let mut gens = Vec::new();
        for (k, (g, img)) in group.generators().iter().zip(images).enumerate() {
            if !graph.is_automorphism(img) {
                return Err(GraphError::NotAutomorphism(k));
            }
            let joined: Vec<u32> = g.images().iter().copied().chain(img.images().iter().map(|&x| x + n as u32)).collect();
            gens.push(Perm::from_images(joined).expect("disjoint union"));
        }
        Ok(GraphAction { points: n, vertices: v, combined: PermGroup::new(n + v, gens) })
    }

    pub fn group(&self) -> &PermGroup {
        &self.combined
    }

    pub fn order(&self) -> u64 {
        self.combined.order()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// The permutation an element of the combined group induces on vertices.
    pub fn vertex_perm(&self, g: &Perm) -> Perm {
        let n = self.points;
        Perm::from_images(g.images()[n..].iter().map(|&x| x - n as u32).collect()).expect("vertex block is invariant")
    }

    pub fn vertex_generators(&self) -> Vec<Perm> {
        self.combined.generators().iter().map(|g| self.vertex_perm(g)).collect()
    }

    pub fn vertex_point(&self, v: usize) -> usize {
        self.points + v
    }

    pub fn vertex_stabilizer(&self, v: usize) -> PermGroup {
        self.combined.point_stabilizer(self.vertex_point(v))
    }

    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        vertex_orbits(self.vertices, &self.vertex_generators())
    }

    pub fn edge_orbit_count(&self, graph: &BipartiteGraph) -> usize {
        edge_orbits(graph, &self.vertex_generators()).len()
    }

    pub fn is_edge_transitive(&self, graph: &BipartiteGraph) -> bool {
        is_edge_transitive(graph, &self.vertex_generators())
    }
}

pub fn vertex_orbits(n: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for v in 0..n {
        if !seen[v] {
            let mut orbit = orbit_of(v, gens, |&x, g| g.image(x));
            orbit.sort_unstable();
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit);
        }
    }
    out
}

/// Orbits on undirected edges, each edge written as a sorted vertex pair.
pub fn edge_orbits(graph: &BipartiteGraph, gens: &[Perm]) -> Vec<Vec<(usize, usize)>> {
    let key = |u: usize, v: usize| if u < v { (u, v) } else { (v, u) };
    let mut seen: HashMap<(usize, usize), bool> = graph.vertex_edges().map(|e| (e, false)).collect();
    let mut out = Vec::new();
    for e in graph.vertex_edges() {
        if seen[&e] {
            continue;
        }
        let mut orbit = orbit_of(e, gens, |&(u, v), g| key(g.image(u), g.image(v)));
        orbit.sort_unstable();
        for x in &orbit {
            seen.insert(*x, true);
        }
        out.push(orbit);
    }
    out
}

pub fn is_edge_transitive(graph: &BipartiteGraph, gens: &[Perm]) -> bool {
    graph.edge_count() > 0 && edge_orbits(graph, gens).len() == 1
}

/// `Γ^H`: the subgraph induced on vertices fixed by every generator of `H`.
pub fn fixed_subgraph(graph: &BipartiteGraph, gens: &[Perm]) -> BipartiteGraph {
    let keep: Vec<usize> = (0..graph.vertex_count()).filter(|&v| gens.iter().all(|g| g.image(v) == v)).collect();
    graph.induced(&keep)
}

/// Right cosets `Xg` of `x` in `g`, keyed by their least element, with the
/// action of each generator of `g` on coset indices.
fn right_cosets(g: &PermGroup, x: &PermGroup) -> Result<(Vec<Perm>, Vec<Perm>), GraphError> {
    let elems = x.sorted_elements(crate::perm::ELEMENT_CAP)?;
    let key = |h: &Perm| elems.iter().map(|e| e.mul(h)).min().expect("nonempty");
    let start = key(&g.identity());
    let mut keys = vec![start.clone()];
    let mut index: HashMap<Perm, usize> = HashMap::from([(start, 0)]);
    let mut reps = vec![g.identity()];
    let mut i = 0;
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
    while i < keys.len() {
        for (k, s) in g.generators().iter().enumerate() {
            let moved = keys[i].mul(s);
            let kk = key(&moved);
            let j = match index.get(&kk) {
                Some(&j) => j,
                None => {
                    let j = keys.len();
                    index.insert(kk.clone(), j);
                    keys.push(kk);
                    reps.push(reps[i].mul(s));
                    j
                }
            };
            action[k].push(j as u32);
        }
        i += 1;
    }
    let perms = action.into_iter().map(|a| Perm::from_images(a).expect("coset action")).collect();
    Ok((reps, perms))
}

/// Γ(G, X, Y): right cosets of `x` and `y`, adjacent when they meet. Every
/// edge `{Xk, Yk}` is the image of `{X, Y}` under `k`, so the edges form one
/// orbit.
pub fn coset_graph(g: &PermGroup, x: &PermGroup, y: &PermGroup) -> Result<(BipartiteGraph, GraphAction), GraphError> {
    let (xreps, xact) = right_cosets(g, x)?;
    let (yreps, yact) = right_cosets(g, y)?;
    let (nx, ny) = (xreps.len(), yreps.len());
    let edges = orbit_of((0usize, 0usize), g.generators(), |&(i, j), s| {
        let k = g.generators().iter().position(|t| t == s).expect("generator");
        (xact[k].image(i), yact[k].image(j))
    });
    let left = (0..nx).map(|i| format!("X{}", i + 1)).collect();
    let right = (0..ny).map(|j| format!("Y{}", j + 1)).collect();
    let graph = BipartiteGraph::new(left, right, edges)?;
    let images: Vec<Perm> = xact
        .iter()
        .zip(&yact)
        .map(|(a, b)| {
            let imgs = a.images().iter().copied().chain(b.images().iter().map(|&j| j + nx as u32)).collect();
            Perm::from_images(imgs).expect("disjoint union")
        })
        .collect();
    let action = GraphAction::new(&graph, g, &images)?;
    Ok((graph, action))
}

fn triple_label(v: [u8; 3]) -> String {
    format!("({},{},{})", v[0], v[1], v[2])
}

/// Point/line incidence graph of PG(2,3); points on the left.
pub fn gamma1() -> BipartiteGraph {
    let t = projective_triples();
    let left = t.iter().map(|&v| triple_label(v)).collect();
    let right = t.iter().map(|&v| format!("[{},{},{}]", v[0], v[1], v[2])).collect();
    let mut edges = Vec::new();
    for (i, &p) in t.iter().enumerate() {
        for (j, &l) in t.iter().enumerate() {
            if gf3::incident(p, l) {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::new(left, right, edges).expect("13 + 13 vertices")
}

/// SL3(3) acting on Γ1, generated by the Θ matrices.
pub fn gamma1_action(graph: &BipartiteGraph) -> Result<GraphAction, GraphError> {
    let mats: Vec<Mat3> = THETA_NAMES.iter().map(|n| gf3::theta(n).expect("known")).collect();
    let group = PermGroup::new(13, mats.iter().map(point_perm).collect());
    let images: Vec<Perm> = mats
        .iter()
        .map(|m| {
            let (p, l) = (point_perm(m), line_perm(m));
            let imgs = p.images().iter().copied().chain(l.images().iter().map(|&x| x + 13)).collect();
            Perm::from_images(imgs).expect("disjoint union")
        })
        .collect();
    GraphAction::new(graph, &group, &images)
}

/// Triples on the left, linked threes on the right, each linked three joined
/// to its four parts.
pub fn gamma2(s: &SteinerSystem) -> BipartiteGraph {
    let triples = designs::triples();
    let lts = designs::linked_threes(s);
    let index: HashMap<u16, usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut edges = Vec::new();
    for (j, l) in lts.iter().enumerate() {
        for part in l.0 {
            edges.push((index[&part], j));
        }
    }
    let label = |m: u16| points_of(m).iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",");
    let left = triples.iter().map(|&t| format!("{{{}}}", label(t))).collect();
    let right = lts.iter().map(|l| l.0.iter().map(|&m| format!("{{{}}}", label(m))).collect::<Vec<_>>().join("|")).collect();
    BipartiteGraph::new(left, right, edges).expect("220 + 220 vertices")
}

/// A degree-12 group preserving `s`, acting on Γ2.
pub fn gamma2_action(s: &SteinerSystem, graph: &BipartiteGraph, group: &PermGroup) -> Result<GraphAction, GraphError> {
    let triples = designs::triples();
    let lts = designs::linked_threes(s);
    let tindex: HashMap<u16, usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let lindex: HashMap<LinkedThree, usize> = lts.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let n = triples.len() as u32;
    let images: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| {
            let left = triples.iter().map(|&t| tindex[&mask_image(t, g)] as u32);
            let right = lts.iter().map(|l| n + lindex[&l.image(g)] as u32);
            Perm::from_images(left.chain(right).collect()).expect("bijection")
        })
        .collect();
    GraphAction::new(graph, group, &images)
}

/// Checks the hypotheses of the amalgam-to-graph identification: connected,
/// edge-transitive, two vertex orbits, vertex stabilizers ≅ AGL2(3), and for
/// one vertex per orbit every nontrivial `z` in `O3` of its stabilizer fixes
/// a tree with at least one edge.
pub fn verify_theorem_b_hypotheses(graph: &BipartiteGraph, act: &GraphAction) -> Result<CheckReport, GraphError> {
    let mut r = CheckReport::default();
    r.push("connected", graph.is_connected(), format!("{} vertices, {} edges", graph.vertex_count(), graph.edge_count()));
    r.push("no vertex of degree one", !graph.has_degree_one(), "");
    let gens = act.vertex_generators();
    let eorbits = edge_orbits(graph, &gens).len();
    r.push("edge-transitive", graph.edge_count() > 0 && eorbits == 1, format!("{eorbits} edge orbits"));
    let vorbits = act.vertex_orbits();
    let sizes: Vec<usize> = vorbits.iter().map(Vec::len).collect();
    r.push("two vertex orbits", vorbits.len() == 2, format!("orbit sizes {sizes:?}"));

    let mut stab_ok = true;
    let mut stab_detail = Vec::new();
    let mut tree_ok = true;
    let mut tree_detail = Vec::new();
    for orbit in &vorbits {
        let alpha = orbit[0];
        let stab = act.vertex_stabilizer(alpha);
        let iso = stab.order() == 432 && is_isomorphic_to(&stab, SmallGroup::AGL23)?;
        stab_ok &= iso;
        stab_detail.push(format!("|G_{}| = {}{}", graph.label(alpha), stab.order(), if iso { " ≅ AGL2(3)" } else { "" }));

        let o3 = o_p(&stab, 3)?;
        let elems = o3.elements(crate::perm::ELEMENT_CAP)?;
        let mut count = 0;
        for z in elems.iter().filter(|z| !z.is_identity()) {
            let fixed = fixed_subgraph(graph, &[act.vertex_perm(z)]);
            let ok = fixed.is_tree() && fixed.edge_count() >= 1;
            tree_ok &= ok;
            count += 1;
            if !ok {
                tree_detail.push(format!("z fixing {} vertices, {} edges at {}", fixed.vertex_count(), fixed.edge_count(), graph.label(alpha)));
            }
        }
        tree_ok &= count > 0;
        tree_detail.push(format!("{count} elements at {}", graph.label(alpha)));
    }
    r.push("vertex stabilizers ≅ AGL2(3)", stab_ok && vorbits.len() == 2, stab_detail.join("; "));
    r.push("fixed subgraphs of O3 elements are trees", tree_ok, tree_detail.join("; "));
    Ok(r)
}
