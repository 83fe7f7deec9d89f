//! The bipartite link graphs generated by a sequence: `S_N` has vertex set
//! `Z/2N` and, for every even vertex `v` and every term `a_r`, an edge from
//! `v` to `v + 2a_r - 1`. Girth, colourings, polarities, automorphism
//! extension from tripods, and graph isomorphism live here.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::sidon::Sequence;

pub type Vertex = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub label: Option<u8>,
}

/// An undirected multigraph with optional vertex colours and edge labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    colours: Option<Vec<u8>>,
    edges: Vec<Edge>,
    adj: Vec<Vec<(Vertex, u32)>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            colours: None,
            edges: Vec::new(),
            adj: vec![Vec::new(); vertex_count],
        }
    }

    pub fn with_colours(colours: Vec<u8>) -> Self {
        let n = colours.len();
        Self {
            colours: Some(colours),
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, label: Option<u8>) {
        let id = self.edges.len() as u32;
        self.edges.push(Edge { u, v, label });
        self.adj[u as usize].push((v, id));
        if u != v {
            self.adj[v as usize].push((u, id));
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    /// Neighbours of `v` as `(vertex, edge id)` pairs, in insertion order.
    pub fn neighbours(&self, v: Vertex) -> &[(Vertex, u32)] {
        &self.adj[v as usize]
    }

    pub fn colour(&self, v: Vertex) -> Option<u8> {
        self.colours.as_ref().map(|c| c[v as usize])
    }

    pub fn colours(&self) -> Option<&[u8]> {
        self.colours.as_deref()
    }

    /// Sorted multiset of labels on edges between `u` and `v`.
    pub fn labels_between(&self, u: Vertex, v: Vertex) -> Vec<Option<u8>> {
        let mut out: Vec<Option<u8>> = self.adj[u as usize]
            .iter()
            .filter(|(w, _)| *w == v)
            .map(|(_, e)| self.edges[*e as usize].label)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize].iter().any(|(w, _)| *w == v)
    }

    /// The unique neighbour of `u` reached along an edge with the given
    /// label, when exactly one such edge exists.
    pub fn neighbour_via_label(&self, u: Vertex, label: u8) -> Option<Vertex> {
        let mut found = None;
        for &(w, e) in &self.adj[u as usize] {
            if self.edges[e as usize].label == Some(label) {
                if found.is_some() {
                    return None;
                }
                found = Some(w);
            }
        }
        found
    }

    /// True when every edge is labelled and no vertex has two incident
    /// edges with the same label. Label-preserving maps of such graphs are
    /// determined by the image of a single vertex.
    pub fn is_label_rigid(&self) -> bool {
        if self.edges.iter().any(|e| e.label.is_none()) {
            return false;
        }
        for v in 0..self.vertex_count() as Vertex {
            let mut labels: Vec<u8> = self.adj[v as usize]
                .iter()
                .map(|(_, e)| self.edges[*e as usize].label.unwrap())
                .collect();
            labels.sort_unstable();
            if labels.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0 as Vertex);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adj[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Length of the shortest cycle: loops count 1, parallel edges 2.
    /// `None` for forests.
    pub fn girth(&self) -> Option<u32> {
        if self.edges.iter().any(|e| e.u == e.v) {
            return Some(1);
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Some(2);
            }
        }
        let n = self.vertex_count();
        let mut best = u32::MAX;
        let mut dist = vec![u32::MAX; n];
        let mut via = vec![u32::MAX; n];
        for s in 0..n as Vertex {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            let mut queue = VecDeque::new();
            dist[s as usize] = 0;
            via[s as usize] = u32::MAX;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if dist[u as usize].saturating_mul(2) >= best {
                    continue;
                }
                for &(v, e) in &self.adj[u as usize] {
                    if e == via[u as usize] {
                        continue;
                    }
                    if dist[v as usize] == u32::MAX {
                        dist[v as usize] = dist[u as usize] + 1;
                        via[v as usize] = e;
                        queue.push_back(v);
                    } else {
                        best = best.min(dist[u as usize] + dist[v as usize] + 1);
                    }
                }
            }
        }
        (best != u32::MAX).then_some(best)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    ModulusTooSmall(u64),
    /// The requested graph does not fit the vertex index type.
    TooLarge,
    BadSigma,
    BadTau,
    IndexOutOfRange(usize),
    SizeLimit(usize),
    Disconnected,
    NotATree,
    GirthTooSmall,
    /// The tripod map is inconsistent with the labelling, or no
    /// automorphism extends it.
    NoExtension,
    /// More than one extension exists (impossible on connected rigid
    /// graphs; reported rather than silently picking one).
    AmbiguousExtension,
    /// The operation needs an edge- and vertex-coloured graph.
    Uncoloured,
    MalformedPath,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::ModulusTooSmall(n) => write!(f, "modulus {n} is smaller than 2"),
            GraphError::TooLarge => write!(f, "graph too large for vertex index type"),
            GraphError::BadSigma => write!(f, "sigma is not a bijection onto 0..=n"),
            GraphError::BadTau => write!(f, "tau is not injective"),
            GraphError::IndexOutOfRange(p) => write!(f, "label index {p} out of range"),
            GraphError::SizeLimit(n) => write!(f, "graph with {n} vertices exceeds the size limit"),
            GraphError::Disconnected => write!(f, "graph is disconnected"),
            GraphError::NotATree => write!(f, "subgraph is not a tree containing a tripod"),
            GraphError::GirthTooSmall => write!(f, "graph girth is below 6"),
            GraphError::NoExtension => write!(f, "no automorphism extends the given map"),
            GraphError::AmbiguousExtension => write!(f, "more than one automorphism extends the map"),
            GraphError::Uncoloured => write!(f, "operation requires a coloured graph"),
            GraphError::MalformedPath => write!(f, "path is not a simple path of the required length"),
        }
    }
}

impl core::error::Error for GraphError {}

/// The graph `S_N(a_0..a_n)` on residues mod `2N`, optionally coloured:
/// edge labels via a bijection `sigma` from term indices, vertex colours
/// via `tau` from parity.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    sequence: Sequence,
    modulus: u64,
    sigma: Option<Vec<u8>>,
    tau: Option<[u8; 2]>,
    graph: Multigraph,
    edge_term: Vec<u16>,
}

/// Builds `S_N`: for every even `v` and term index `r`, an edge
/// `{v, v + 2a_r - 1 mod 2N}`. Non-Sidon inputs are allowed and produce
/// multigraphs.
pub fn build_link(
    seq: &Sequence,
    modulus: u64,
    sigma: Option<Vec<u8>>,
    tau: Option<[u8; 2]>,
) -> Result<LinkGraph, GraphError> {
    if modulus < 2 {
        return Err(GraphError::ModulusTooSmall(modulus));
    }
    let two_n = 2u64.checked_mul(modulus).ok_or(GraphError::TooLarge)?;
    if two_n > u32::MAX as u64 / 4 {
        return Err(GraphError::TooLarge);
    }
    let k = seq.len();
    if let Some(s) = &sigma {
        let mut seen = vec![false; k];
        if s.len() != k || k > 256 {
            return Err(GraphError::BadSigma);
        }
        for &x in s {
            if (x as usize) >= k || seen[x as usize] {
                return Err(GraphError::BadSigma);
            }
            seen[x as usize] = true;
        }
    }
    if let Some([a, b]) = tau {
        if a == b {
            return Err(GraphError::BadTau);
        }
    }

    let mut graph = match tau {
        Some([c0, c1]) => {
            let colours = (0..two_n).map(|v| if v % 2 == 0 { c0 } else { c1 }).collect();
            Multigraph::with_colours(colours)
        }
        None => Multigraph::new(two_n as usize),
    };
    let mut edge_term = Vec::new();
    for v in (0..two_n).step_by(2) {
        for (r, &a) in seq.terms().iter().enumerate() {
            let inc = (2 * (a % two_n) + two_n - 1) % two_n;
            let w = (v + inc) % two_n;
            let label = sigma.as_ref().map(|s| s[r]);
            graph.add_edge(v as Vertex, w as Vertex, label);
            edge_term.push(r as u16);
        }
    }
    Ok(LinkGraph {
        sequence: seq.clone(),
        modulus,
        sigma,
        tau,
        graph,
        edge_term,
    })
}

impl LinkGraph {
    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn sequence(&self) -> &Sequence {
        &self.sequence
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn sigma(&self) -> Option<&[u8]> {
        self.sigma.as_deref()
    }

    pub fn tau(&self) -> Option<[u8; 2]> {
        self.tau
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Term index behind each edge, parallel to `graph().edges()`.
    pub fn edge_terms(&self) -> &[u16] {
        &self.edge_term
    }

    pub fn is_coloured(&self) -> bool {
        self.sigma.is_some() && self.tau.is_some()
    }

    pub fn girth(&self) -> Option<u32> {
        self.graph.girth()
    }
}

/// An automorphism of a link graph, with the properties the polarity and
/// tripod lemmas care about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAutomorphism {
    pub mapping: Vec<Vertex>,
    pub preserves_edge_labels: bool,
    pub swaps_parity: bool,
}

impl GraphAutomorphism {
    pub fn is_involution(&self) -> bool {
        (0..self.mapping.len())
            .all(|k| self.mapping[self.mapping[k] as usize] as usize == k)
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.mapping[v as usize]
    }
}

/// Checks that `mapping` carries edges to edges with equal multiplicity,
/// and whether labels are preserved along the way.
fn verify_automorphism(g: &Multigraph, mapping: &[Vertex]) -> Option<bool> {
    let mut original: Vec<(Vertex, Vertex, Option<u8>)> = Vec::with_capacity(g.edge_count());
    let mut mapped = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        original.push((e.u.min(e.v), e.u.max(e.v), e.label));
        let (mu, mv) = (mapping[e.u as usize], mapping[e.v as usize]);
        mapped.push((mu.min(mv), mu.max(mv), e.label));
    }
    original.sort_unstable();
    mapped.sort_unstable();
    if original == mapped {
        return Some(true);
    }
    // Edges may still correspond with labels scrambled.
    let strip = |v: &mut Vec<(Vertex, Vertex, Option<u8>)>| {
        v.iter_mut().for_each(|t| t.2 = None);
        v.sort_unstable();
    };
    strip(&mut original);
    strip(&mut mapped);
    (original == mapped).then_some(false)
}

/// The polarity `k -> -k + 2a_p - 1` of `S_N`: an involution that swaps the
/// parity classes, preserves edge labels, and exchanges the endpoints of
/// the edge `{0, 2a_p - 1}`.
pub fn polarity(g: &LinkGraph, p: usize) -> Result<GraphAutomorphism, GraphError> {
    let terms = g.sequence().terms();
    if p >= terms.len() {
        return Err(GraphError::IndexOutOfRange(p));
    }
    let two_n = 2 * g.modulus();
    let inc = (2 * (terms[p] % two_n) + two_n - 1) % two_n;
    let mapping: Vec<Vertex> = (0..two_n)
        .map(|k| ((inc + two_n - k) % two_n) as Vertex)
        .collect();
    let preserves_edge_labels =
        verify_automorphism(g.graph(), &mapping).ok_or(GraphError::NoExtension)?;
    let auto = GraphAutomorphism {
        swaps_parity: mapping[0] % 2 == 1,
        mapping,
        preserves_edge_labels,
    };
    debug_assert!(auto.is_involution());
    Ok(auto)
}

/// Options for the isomorphism search.
#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    pub respect_edge_labels: bool,
    pub respect_vertex_colours: bool,
    pub cap: usize,
}

/// Backtracking search for isomorphisms `g1 -> g2` extending `partial`,
/// assigning vertices in id order with ascending candidates, so the first
/// witness found is the lexicographically least mapping.
pub fn search_isomorphisms(
    g1: &Multigraph,
    g2: &Multigraph,
    partial: &BTreeMap<Vertex, Vertex>,
    opts: IsoOptions,
) -> Vec<Vec<Vertex>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() || opts.cap == 0 {
        return Vec::new();
    }
    let pair_labels = |g: &Multigraph| {
        let mut m: BTreeMap<(Vertex, Vertex), Vec<Option<u8>>> = BTreeMap::new();
        for e in g.edges() {
            m.entry((e.u.min(e.v), e.u.max(e.v)))
                .or_default()
                .push(if opts.respect_edge_labels { e.label } else { None });
        }
        m.values_mut().for_each(|v| v.sort_unstable());
        m
    };
    let p1 = pair_labels(g1);
    let p2 = pair_labels(g2);
    let colours_ok = |a: Vertex, b: Vertex| {
        !opts.respect_vertex_colours
            || match (g1.colour(a), g2.colour(b)) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            }
    };

    let mut map: Vec<Option<Vertex>> = vec![None; n];
    let mut used = vec![false; n];
    for (&a, &b) in partial {
        if a as usize >= n || b as usize >= n || used[b as usize] {
            return Vec::new();
        }
        map[a as usize] = Some(b);
        used[b as usize] = true;
    }

    let mut out: Vec<Vec<Vertex>> = Vec::new();
    fn rec(
        v: usize,
        n: usize,
        g1: &Multigraph,
        g2: &Multigraph,
        p1: &BTreeMap<(Vertex, Vertex), Vec<Option<u8>>>,
        p2: &BTreeMap<(Vertex, Vertex), Vec<Option<u8>>>,
        colours_ok: &dyn Fn(Vertex, Vertex) -> bool,
        map: &mut Vec<Option<Vertex>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Vertex>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if v == n {
            out.push(map.iter().map(|m| m.unwrap()).collect());
            return;
        }
        let consistent = |map: &[Option<Vertex>], cand: Vertex| {
            for w in 0..v {
                let img = match map[w] {
                    Some(i) => i,
                    None => continue,
                };
                let key1 = ((v as Vertex).min(w as Vertex), (v as Vertex).max(w as Vertex));
                let key2 = (cand.min(img), cand.max(img));
                if p1.get(&key1) != p2.get(&key2) {
                    return false;
                }
            }
            true
        };
        if let Some(fixed) = map[v] {
            if g1.degree(v as Vertex) == g2.degree(fixed)
                && colours_ok(v as Vertex, fixed)
                && consistent(map, fixed)
            {
                rec(v + 1, n, g1, g2, p1, p2, colours_ok, map, used, out, cap);
            }
            return;
        }
        for cand in 0..n as Vertex {
            if used[cand as usize]
                || g1.degree(v as Vertex) != g2.degree(cand)
                || !colours_ok(v as Vertex, cand)
                || !consistent(map, cand)
            {
                continue;
            }
            map[v] = Some(cand);
            used[cand as usize] = true;
            rec(v + 1, n, g1, g2, p1, p2, colours_ok, map, used, out, cap);
            map[v] = None;
            used[cand as usize] = false;
            if out.len() >= cap {
                return;
            }
        }
    }
    rec(
        0, n, g1, g2, &p1, &p2, &colours_ok, &mut map, &mut used, &mut out, opts.cap,
    );
    out
}

/// Label-preserving maps of rigid graphs are determined by the image of one
/// vertex; enumerate all of them by propagating each candidate image.
pub fn rigid_label_isomorphisms(
    g1: &Multigraph,
    g2: &Multigraph,
    respect_vertex_colours: bool,
    cap: usize,
) -> Vec<Vec<Vertex>> {
    let n = g1.vertex_count();
    let mut out = Vec::new();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() || n == 0 {
        return out;
    }
    'cand: for start in 0..n as Vertex {
        if out.len() >= cap {
            break;
        }
        let mut map: Vec<Option<Vertex>> = vec![None; n];
        let mut used = vec![false; n];
        map[0] = Some(start);
        used[start as usize] = true;
        let mut queue = VecDeque::new();
        queue.push_back(0 as Vertex);
        let mut assigned = 1;
        while let Some(u) = queue.pop_front() {
            let iu = map[u as usize].unwrap();
            for &(w, e) in g1.neighbours(u) {
                let label = match g1.edges()[e as usize].label {
                    Some(l) => l,
                    None => continue 'cand,
                };
                let iw = match g2.neighbour_via_label(iu, label) {
                    Some(x) => x,
                    None => continue 'cand,
                };
                match map[w as usize] {
                    Some(prev) if prev != iw => continue 'cand,
                    Some(_) => {}
                    None => {
                        if used[iw as usize] {
                            continue 'cand;
                        }
                        map[w as usize] = Some(iw);
                        used[iw as usize] = true;
                        assigned += 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        if assigned != n {
            continue; // g1 disconnected; this path cannot decide
        }
        let full: Vec<Vertex> = map.iter().map(|m| m.unwrap()).collect();
        if respect_vertex_colours {
            let ok = (0..n).all(|v| match (g1.colour(v as Vertex), g2.colour(full[v])) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            });
            if !ok {
                continue;
            }
        }
        // Propagation guarantees g1 edges map onto g2 edges; equality of
        // edge counts then makes it onto.
        let mut mapped: Vec<(Vertex, Vertex, Option<u8>)> = g1
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (full[e.u as usize], full[e.v as usize]);
                (a.min(b), a.max(b), e.label)
            })
            .collect();
        let mut target: Vec<(Vertex, Vertex, Option<u8>)> = g2
            .edges()
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v), e.label))
            .collect();
        mapped.sort_unstable();
        target.sort_unstable();
        if mapped == target {
            out.push(full);
        }
    }
    out
}

/// A witness isomorphism `g1 -> g2` (respecting edge labels if asked),
/// or `None`. Deterministic: returns the lexicographically least witness.
pub fn is_isomorphic(
    g1: &Multigraph,
    g2: &Multigraph,
    respect_labels: bool,
) -> Option<Vec<Vertex>> {
    if respect_labels && g1.is_label_rigid() && g2.is_label_rigid() && g1.is_connected() {
        return rigid_label_isomorphisms(g1, g2, false, 1).into_iter().next();
    }
    search_isomorphisms(
        g1,
        g2,
        &BTreeMap::new(),
        IsoOptions {
            respect_edge_labels: respect_labels,
            respect_vertex_colours: false,
            cap: 1,
        },
    )
    .into_iter()
    .next()
}

/// All edge-label-preserving automorphisms of a coloured connected link
/// graph. For `S_N` this is the order-2N group of shifts and polarities.
pub fn label_preserving_automorphisms(g: &LinkGraph) -> Vec<Vec<Vertex>> {
    if g.graph().is_label_rigid() && g.graph().is_connected() {
        rigid_label_isomorphisms(g.graph(), g.graph(), false, usize::MAX)
    } else {
        search_isomorphisms(
            g.graph(),
            g.graph(),
            &BTreeMap::new(),
            IsoOptions {
                respect_edge_labels: true,
                respect_vertex_colours: false,
                cap: usize::MAX,
            },
        )
    }
}

fn subtree_vertices(edges: &[(Vertex, Vertex)]) -> Result<BTreeSet<Vertex>, GraphError> {
    let mut verts = BTreeSet::new();
    for &(u, v) in edges {
        verts.insert(u);
        verts.insert(v);
    }
    // connected and acyclic: |V| = |E| + 1, plus reachability
    if verts.len() != edges.len() + 1 {
        return Err(GraphError::NotATree);
    }
    let start = *verts.first().ok_or(GraphError::NotATree)?;
    let mut seen = BTreeSet::new();
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &(a, b) in edges {
            let w = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    if seen.len() != verts.len() {
        return Err(GraphError::NotATree);
    }
    // must contain a tripod
    let has_tripod = verts
        .iter()
        .any(|&v| edges.iter().filter(|&&(a, b)| a == v || b == v).count() >= 3);
    if !has_tripod {
        return Err(GraphError::NotATree);
    }
    Ok(verts)
}

/// Extends a label-preserving isomorphism between two subtrees of `g`
/// (each containing a tripod) to the unique edge-label-preserving
/// automorphism of `g`. Uniqueness is established by exhausting all
/// label-preserving automorphisms.
pub fn extend_tripod(
    g: &LinkGraph,
    tree: &[(Vertex, Vertex)],
    tree_image: &[(Vertex, Vertex)],
    phi0: &[(Vertex, Vertex)],
) -> Result<GraphAutomorphism, GraphError> {
    if g.sigma().is_none() {
        return Err(GraphError::Uncoloured);
    }
    if !g.graph().is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.girth().is_some_and(|girth| girth < 6) {
        return Err(GraphError::GirthTooSmall);
    }
    let tv = subtree_vertices(tree)?;
    let tv2 = subtree_vertices(tree_image)?;
    let map: BTreeMap<Vertex, Vertex> = phi0.iter().copied().collect();
    let image: BTreeSet<Vertex> = map.values().copied().collect();
    if map.len() != phi0.len()
        || image.len() != map.len()
        || map.keys().copied().collect::<BTreeSet<_>>() != tv
        || image != tv2
    {
        return Err(GraphError::NoExtension);
    }
    let edge_set: BTreeSet<(Vertex, Vertex)> = tree_image
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    for &(u, v) in tree {
        let (iu, iv) = (map[&u], map[&v]);
        if !edge_set.contains(&(iu.min(iv), iu.max(iv)))
            || g.graph().labels_between(u, v) != g.graph().labels_between(iu, iv)
        {
            return Err(GraphError::NoExtension);
        }
    }

    let mut found = None;
    for auto in label_preserving_automorphisms(g) {
        if map.iter().all(|(&a, &b)| auto[a as usize] == b) {
            if found.is_some() {
                return Err(GraphError::AmbiguousExtension);
            }
            found = Some(auto);
        }
    }
    let mapping = found.ok_or(GraphError::NoExtension)?;
    Ok(GraphAutomorphism {
        swaps_parity: mapping[0] % 2 == 1,
        preserves_edge_labels: true,
        mapping,
    })
}

/// True iff the full automorphism group is transitive on directed paths of
/// length 2. Brute-force; limited to 64 vertices.
pub fn two_arc_transitive(g: &Multigraph) -> Result<bool, GraphError> {
    if g.vertex_count() > 64 {
        return Err(GraphError::SizeLimit(g.vertex_count()));
    }
    if !g.is_connected() {
        return Ok(false);
    }
    let mut arcs = BTreeSet::new();
    for v in 0..g.vertex_count() as Vertex {
        for &(a, _) in g.neighbours(v) {
            for &(b, _) in g.neighbours(v) {
                if a != b {
                    arcs.insert((a, v, b));
                }
            }
        }
    }
    if arcs.is_empty() {
        return Ok(true);
    }
    let autos = search_isomorphisms(
        g,
        g,
        &BTreeMap::new(),
        IsoOptions {
            respect_edge_labels: false,
            respect_vertex_colours: false,
            cap: usize::MAX,
        },
    );
    let &(a, v, b) = arcs.first().unwrap();
    let orbit: BTreeSet<(Vertex, Vertex, Vertex)> = autos
        .iter()
        .map(|m| (m[a as usize], m[v as usize], m[b as usize]))
        .collect();
    Ok(orbit.len() == arcs.len())
}

/// The Moebius--Kantor graph as the generalized Petersen graph GP(8,3):
/// outer vertices 0..8, inner 8..16.
pub fn canonical_mk() -> Multigraph {
    let mut g = Multigraph::new(16);
    for i in 0..8u32 {
        g.add_edge(i, (i + 1) % 8, None);
        g.add_edge(i, 8 + i, None);
        g.add_edge(8 + i, 8 + (i + 3) % 8, None);
    }
    g
}

/// The Heawood graph as the incidence graph of the Fano plane: points
/// 0..7, lines 7..14, line `i` containing points `{i, i+1, i+3}` mod 7.
pub fn canonical_heawood() -> Multigraph {
    let mut g = Multigraph::new(14);
    for i in 0..7u32 {
        for d in [0, 1, 3] {
            g.add_edge((i + d) % 7, 7 + i, None);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sidon::verify_sidon_mod;
    use alloc::vec;

    fn seq(terms: &[u64]) -> Sequence {
        Sequence::from_slice(terms).unwrap()
    }

    fn s8_013() -> LinkGraph {
        build_link(&seq(&[0, 1, 3]), 8, Some(vec![0, 1, 2]), Some([2, 3])).unwrap()
    }

    #[test]
    fn build_link_basic_shape() {
        let g = s8_013();
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.graph().edge_count(), 24);
        assert!((0..16).all(|v| g.graph().degree(v) == 3));
        // bipartite by parity: every edge joins an even and an odd residue
        assert!(g
            .graph()
            .edges()
            .iter()
            .all(|e| (e.u % 2 == 0) != (e.v % 2 == 0)));
    }

    #[test]
    fn build_link_single_term() {
        let g = build_link(&seq(&[0]), 2, None, None).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.graph().edge_count(), 2);
        assert!(g.graph().has_edge(0, 3));
        assert!(g.graph().has_edge(2, 1));
        assert_eq!(g.girth(), None);
    }

    #[test]
    fn build_link_validates_input() {
        assert_eq!(
            build_link(&seq(&[0, 1]), 1, None, None),
            Err(GraphError::ModulusTooSmall(1)).map(|_: ()| unreachable!())
        );
        assert!(matches!(
            build_link(&seq(&[0, 1]), 4, Some(vec![0, 0]), None),
            Err(GraphError::BadSigma)
        ));
        assert!(matches!(
            build_link(&seq(&[0, 1]), 4, None, Some([2, 2])),
            Err(GraphError::BadTau)
        ));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(s8_013().girth(), Some(6));
        let non_sidon = build_link(&seq(&[0, 1, 2]), 9, None, None).unwrap();
        assert_eq!(non_sidon.girth(), Some(4));
    }

    #[test]
    fn girth_matches_sidon_condition() {
        for (terms, n) in [
            (&[0u64, 1, 3][..], 7),
            (&[0, 1, 3], 8),
            (&[0, 1, 3], 6),
            (&[0, 2, 7], 8),
            (&[0, 1, 2], 9),
            (&[0, 1], 2),
        ] {
            let s = seq(terms);
            let sidon = verify_sidon_mod(&s, n).unwrap();
            let g = build_link(&s, n, None, None).unwrap();
            let girth_ok = g.girth().map_or(true, |x| x >= 6);
            assert_eq!(sidon, girth_ok, "mismatch for {terms:?} mod {n}");
        }
    }

    #[test]
    fn polarity_examples() {
        let g = s8_013();
        let p0 = polarity(&g, 0).unwrap();
        assert_eq!(p0.apply(0), 15);
        let p2 = polarity(&g, 2).unwrap();
        assert_eq!(p2.apply(0), 5);
        for p in 0..3 {
            let auto = polarity(&g, p).unwrap();
            assert!(auto.is_involution());
            assert!(auto.swaps_parity);
            assert!(auto.preserves_edge_labels);
        }
        assert!(matches!(
            polarity(&g, 3),
            Err(GraphError::IndexOutOfRange(3))
        ));
    }

    #[test]
    fn canonical_graphs_shape() {
        let mk = canonical_mk();
        assert_eq!(mk.vertex_count(), 16);
        assert_eq!(mk.edge_count(), 24);
        assert_eq!(mk.girth(), Some(6));
        let hw = canonical_heawood();
        assert_eq!(hw.vertex_count(), 14);
        assert_eq!(hw.edge_count(), 21);
        assert_eq!(hw.girth(), Some(6));
        assert!((0..16).all(|v| mk.degree(v) == 3));
        assert!((0..14).all(|v| hw.degree(v) == 3));
    }

    #[test]
    fn link_identification() {
        let s8 = s8_013();
        assert!(is_isomorphic(s8.graph(), &canonical_mk(), false).is_some());
        let s7 = build_link(&seq(&[0, 1, 3]), 7, None, None).unwrap();
        assert!(is_isomorphic(s7.graph(), &canonical_heawood(), false).is_some());
        assert!(is_isomorphic(s8.graph(), s7.graph(), false).is_none());
    }

    #[test]
    fn two_arc_transitivity() {
        assert_eq!(two_arc_transitive(&canonical_mk()), Ok(true));
        assert_eq!(two_arc_transitive(&canonical_heawood()), Ok(true));
        let matching = build_link(&seq(&[0]), 2, None, None).unwrap();
        assert_eq!(two_arc_transitive(matching.graph()), Ok(false));
    }

    #[test]
    fn label_preserving_group_order() {
        // shifts and polarities only: order 2N
        let g = s8_013();
        assert_eq!(label_preserving_automorphisms(&g).len(), 16);
    }

    #[test]
    fn extend_tripod_identity_and_translation() {
        let g = s8_013();
        let star = |v: Vertex| -> Vec<(Vertex, Vertex)> {
            g.graph().neighbours(v).iter().map(|&(w, _)| (v, w)).collect()
        };
        let t0 = star(0);
        let phi_id: Vec<(Vertex, Vertex)> = [0, 15, 1, 5].iter().map(|&v| (v, v)).collect();
        let id = extend_tripod(&g, &t0, &t0, &phi_id).unwrap();
        assert!((0..16).all(|v| id.apply(v) == v));

        let t2 = star(2);
        let shift: Vec<(Vertex, Vertex)> =
            [0u32, 15, 1, 5].iter().map(|&v| (v, (v + 2) % 16)).collect();
        let tr = extend_tripod(&g, &t0, &t2, &shift).unwrap();
        assert!((0..16).all(|v| tr.apply(v) == (v + 2) % 16));
        assert!(!tr.swaps_parity);
    }

    #[test]
    fn extend_tripod_rejects_label_mismatch() {
        let g = s8_013();
        let t0: Vec<(Vertex, Vertex)> = g
            .graph()
            .neighbours(0)
            .iter()
            .map(|&(w, _)| (0, w))
            .collect();
        // swap two legs of the tripod: labels no longer match
        let bad = vec![(0, 0), (15, 1), (1, 15), (5, 5)];
        assert_eq!(extend_tripod(&g, &t0, &t0, &bad), Err(GraphError::NoExtension));
    }
}
