//! Finite reflexive graphs with labelled vertices, their components, vertex
//! deletion, quotients, and checkers for the homomorphism classes used by
//! the rest of the crate.
//!
//! Every vertex carries an implicit loop. Loops are never stored: the
//! adjacency lists hold proper edges only, and the checkers apply the
//! reflexive convention where it matters (a proper edge may map onto a loop
//! under a homomorphism, and closed neighbourhoods contain their centre).

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::{self, Display};
use std::hash::Hash;

use crate::error::{parse_err, Error, Result};

/// A finite simple reflexive graph whose vertices are dense ids `0..k`, each
/// carrying a distinct label.
#[derive(Clone)]
pub struct LabeledGraph<L> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
    adjacency: Vec<Vec<u32>>,
    edge_count: usize,
}

impl<L: Clone + Eq + Hash> LabeledGraph<L> {
    /// Builds a graph from labels and proper edges given as index pairs.
    /// Repeated edges collapse; loops and dangling endpoints are rejected.
    pub fn new(labels: Vec<L>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vertex label at index {i}")));
            }
        }
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::MissingVertex(u));
            }
            if v >= n {
                return Err(Error::MissingVertex(v));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop on vertex {u}: loops are implicit")));
            }
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(LabeledGraph {
            labels,
            index,
            adjacency,
            edge_count: edge_count / 2,
        })
    }

    /// Builds a graph from proper edges given by label.
    pub fn from_labeled_edges<'e>(labels: Vec<L>, edges: impl IntoIterator<Item = (&'e L, &'e L)>) -> Result<Self>
    where
        L: 'e,
    {
        let index: HashMap<&L, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (Some(&u), Some(&v)) = (index.get(a), index.get(b)) else {
                return Err(Error::InvalidInput("edge endpoint is not a vertex label".into()));
            };
            pairs.push((u, v));
        }
        LabeledGraph::new(labels, pairs)
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Relabels every vertex, keeping the edges.
    pub fn map_labels<M: Clone + Eq + Hash>(&self, f: impl Fn(&L) -> M) -> Result<LabeledGraph<M>> {
        LabeledGraph::new(self.labels.iter().map(f).collect(), self.edges())
    }
}

impl<L> LabeledGraph<L> {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of proper edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self, v: usize) -> &L {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    /// Proper neighbours of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&u| u as usize)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Whether `{u, v}` is a proper edge.
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Whether `{u, v}` is an edge, loops included.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u == v || self.is_adjacent(u, v)
    }

    /// Proper edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }
}

impl<L: Display> LabeledGraph<L> {
    /// Serializes to the exchange format: `vertices k`, `edges m`, then one
    /// label per line, then one `i j` line per proper edge.
    pub fn to_exchange_format(&self) -> String {
        let mut out = format!("vertices {}\nedges {}\n", self.vertex_count(), self.edge_count());
        for l in &self.labels {
            out.push_str(&l.to_string());
            out.push('\n');
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl<L: fmt::Debug> fmt::Debug for LabeledGraph<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("vertices", &self.labels.len())
            .field("edges", &self.edge_count)
            .finish()
    }
}

/// Parses the exchange format written by [`LabeledGraph::to_exchange_format`].
pub fn parse_exchange_format(text: &str) -> Result<LabeledGraph<String>> {
    let mut lines = text.lines();
    let mut header = |key: &'static str| -> Result<usize> {
        let line = lines.next().ok_or_else(|| parse_err("graph", text, format!("missing {key:?} header")))?;
        line.trim()
            .strip_prefix(key)
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| parse_err("graph", line, format!("expected \"{key} <count>\"")))
    };
    let k = header("vertices")?;
    let m = header("edges")?;
    let mut labels = Vec::with_capacity(k);
    for _ in 0..k {
        let line = lines.next().ok_or_else(|| parse_err("graph", text, "fewer labels than declared"))?;
        labels.push(line.trim().to_string());
    }
    let mut edges = Vec::with_capacity(m);
    for line in lines.by_ref().filter(|l| !l.trim().is_empty()) {
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(parse_err("graph", line, "expected an edge \"i j\"")),
        }
    }
    if edges.len() != m {
        return Err(parse_err("graph", text, format!("declared {m} edges, found {}", edges.len())));
    }
    LabeledGraph::new(labels, edges)
}

/// Writes a vertex map as `i -> j` lines.
pub fn map_to_text(assignment: &[usize]) -> String {
    assignment
        .iter()
        .enumerate()
        .map(|(i, j)| format!("{i} -> {j}\n"))
        .collect()
}

/// Parses `i -> j` lines into a total map on `0..source_len`.
pub fn parse_map_text(text: &str, source_len: usize) -> Result<Vec<usize>> {
    let mut assignment = vec![None; source_len];
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (a, b) = line
            .split_once("->")
            .ok_or_else(|| parse_err("vertex map", line, "expected \"i -> j\""))?;
        let (Ok(i), Ok(j)) = (a.trim().parse::<usize>(), b.trim().parse::<usize>()) else {
            return Err(parse_err("vertex map", line, "indices must be non-negative integers"));
        };
        if i >= source_len {
            return Err(parse_err("vertex map", line, format!("source index {i} out of range")));
        }
        if assignment[i].replace(j).is_some() {
            return Err(parse_err("vertex map", line, format!("source index {i} assigned twice")));
        }
    }
    assignment
        .into_iter()
        .enumerate()
        .map(|(i, j)| j.ok_or_else(|| parse_err("vertex map", text, format!("source index {i} unassigned"))))
        .collect()
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// One connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component<K> {
    /// Vertex ids, ascending.
    pub vertices: Vec<usize>,
    pub size: usize,
    /// Every pair of distinct vertices is joined by a proper edge.
    pub is_complete: bool,
    /// Vertex count per census key.
    pub census: BTreeMap<K, usize>,
}

/// The components of a graph, ordered by least contained vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport<K> {
    pub components: Vec<Component<K>>,
    pub count: usize,
    component_of: Vec<usize>,
}

impl<K> ComponentReport<K> {
    /// Index of the component containing `v`.
    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }
}

/// Connected components over proper edges, with an empty census key.
pub fn components<L>(g: &LabeledGraph<L>) -> ComponentReport<()> {
    components_with(g, |_| ())
}

/// Connected components, counting the vertices of each component by `key`.
pub fn components_with<L, K: Ord>(g: &LabeledGraph<L>, key: impl Fn(usize) -> K) -> ComponentReport<K> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for (u, v) in g.edges() {
        uf.union(u, v);
    }
    let mut root_to_comp: HashMap<usize, usize> = HashMap::new();
    let mut component_of = vec![0; n];
    let mut comps: Vec<Component<K>> = Vec::new();
    let mut degree_sums: Vec<usize> = Vec::new();
    for v in 0..n {
        let root = uf.find(v);
        let c = *root_to_comp.entry(root).or_insert_with(|| {
            comps.push(Component {
                vertices: Vec::new(),
                size: 0,
                is_complete: false,
                census: BTreeMap::new(),
            });
            degree_sums.push(0);
            comps.len() - 1
        });
        component_of[v] = c;
        let comp = &mut comps[c];
        comp.vertices.push(v);
        comp.size += 1;
        *comp.census.entry(key(v)).or_insert(0) += 1;
        degree_sums[c] += g.degree(v);
    }
    for (comp, sum) in comps.iter_mut().zip(degree_sums) {
        comp.is_complete = sum == comp.size * (comp.size - 1);
    }
    ComponentReport {
        count: comps.len(),
        components: comps,
        component_of,
    }
}

/// The subgraph induced on `vertices` (kept in the given order).
pub fn induced_subgraph<L: Clone + Eq + Hash>(g: &LabeledGraph<L>, vertices: &[usize]) -> Result<LabeledGraph<L>> {
    let mut position = HashMap::with_capacity(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        if v >= g.vertex_count() {
            return Err(Error::MissingVertex(v));
        }
        position.insert(v, i);
    }
    let labels = vertices.iter().map(|&v| g.label(v).clone()).collect();
    let mut edges = Vec::new();
    for (i, &v) in vertices.iter().enumerate() {
        for u in g.neighbors(v) {
            if let Some(&j) = position.get(&u) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    LabeledGraph::new(labels, edges)
}

/// Vertices without proper edges.
pub fn isolated_vertices<L>(g: &LabeledGraph<L>) -> Vec<usize> {
    (0..g.vertex_count()).filter(|&v| g.degree(v) == 0).collect()
}

/// The `v`-deleted subgraph.
pub fn delete_vertex<L: Clone + Eq + Hash>(g: &LabeledGraph<L>, v: usize) -> Result<LabeledGraph<L>> {
    if v >= g.vertex_count() {
        return Err(Error::MissingVertex(v));
    }
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let labels = g
        .labels()
        .iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, l)| l.clone())
        .collect();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(a, b)| a != v && b != v)
        .map(|(a, b)| (shift(a), shift(b)))
        .collect();
    LabeledGraph::new(labels, edges)
}

/// For every vertex `v`, the number of components of the `v`-deleted
/// subgraph. Linear time (articulation points via an iterative DFS).
pub fn deletion_component_counts<L>(g: &LabeledGraph<L>) -> Vec<usize> {
    let n = g.vertex_count();
    let total = components(g).count;
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    // pieces of the component split off by deleting each vertex, not
    // counting the piece that still holds its DFS parent
    let mut pieces = vec![0usize; n];
    let mut is_root = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, position in adjacency list)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
            if let Some(&w) = g.adjacency[v].get(*pos) {
                *pos += 1;
                let w = w as usize;
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        pieces[parent] += 1;
                    }
                    // a non-root vertex also keeps the piece holding its parent
                    if parent == root {
                        continue;
                    }
                }
            }
        }
        is_root[root] = true;
    }
    (0..n)
        .map(|v| total - 1 + pieces[v] + usize::from(!is_root[v]))
        .collect()
}

/// Whether deleting any single vertex leaves a connected graph (a graph
/// with no vertices counts as connected).
pub fn is_two_connected<L>(g: &LabeledGraph<L>) -> bool {
    deletion_component_counts(g).into_iter().all(|c| c <= 1)
}

/// Quotient of `g` by a partition of its vertices. Distinct classes are
/// adjacent iff some cross pair is a proper edge of `g`. Returns the
/// quotient and the projection.
pub fn quotient<L, Q: Clone + Eq + Hash>(
    g: &LabeledGraph<L>,
    classes: &[Vec<usize>],
    label: impl Fn(&[usize]) -> Q,
) -> Result<(LabeledGraph<Q>, Vec<usize>)> {
    let n = g.vertex_count();
    let mut projection = vec![usize::MAX; n];
    for (c, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::NotAPartition(format!("class {c} is empty")));
        }
        for &v in class {
            if v >= n {
                return Err(Error::NotAPartition(format!("vertex {v} does not exist")));
            }
            if projection[v] != usize::MAX {
                return Err(Error::NotAPartition(format!("vertex {v} lies in two classes")));
            }
            projection[v] = c;
        }
    }
    if let Some(v) = projection.iter().position(|&c| c == usize::MAX) {
        return Err(Error::NotAPartition(format!("vertex {v} lies in no class")));
    }
    let labels = classes.iter().map(|c| label(c)).collect();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (projection[u], projection[v]))
        .filter(|(a, b)| a != b)
        .collect();
    Ok((LabeledGraph::new(labels, edges)?, projection))
}

/// Quotient by the fibers of `key`; classes are ordered by key.
pub fn quotient_by_key<L, Q: Clone + Eq + Hash + Ord>(
    g: &LabeledGraph<L>,
    key: impl Fn(usize) -> Q,
) -> Result<(LabeledGraph<Q>, Vec<usize>)> {
    let mut fibers: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        fibers.entry(key(v)).or_default().push(v);
    }
    let keys: Vec<Q> = fibers.keys().cloned().collect();
    let classes: Vec<Vec<usize>> = fibers.into_values().collect();
    quotient(g, &classes, |c| {
        let first = c[0];
        keys.iter().find(|k| **k == key(first)).cloned().expect("fiber key exists")
    })
}

/// A vertex map between two graphs, i.e. a candidate homomorphism.
#[derive(Debug, Clone)]
pub struct GraphMap<'a, S, T> {
    pub source: &'a LabeledGraph<S>,
    pub target: &'a LabeledGraph<T>,
    assignment: Cow<'a, [usize]>,
}

impl<'a, S, T> GraphMap<'a, S, T> {
    /// Checks totality and that every image exists.
    pub fn new(source: &'a LabeledGraph<S>, target: &'a LabeledGraph<T>, assignment: impl Into<Cow<'a, [usize]>>) -> Result<Self> {
        let assignment = assignment.into();
        if assignment.len() != source.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "map assigns {} vertices, source has {}",
                assignment.len(),
                source.vertex_count()
            )));
        }
        if let Some(&j) = assignment.iter().find(|&&j| j >= target.vertex_count()) {
            return Err(Error::TargetOutOfRange(j));
        }
        Ok(GraphMap {
            source,
            target,
            assignment,
        })
    }

    pub fn image(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Preimages of every target vertex (empty for vertices not hit).
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.target.vertex_count()];
        for (v, &j) in self.assignment.iter().enumerate() {
            out[j].push(v);
        }
        out
    }

    fn first_broken_edge(&self) -> Option<(usize, usize)> {
        self.source
            .edges()
            .find(|&(u, v)| !self.target.has_edge(self.image(u), self.image(v)))
    }

    /// Every proper edge maps to an edge (possibly a loop).
    pub fn is_homomorphism(&self) -> bool {
        self.first_broken_edge().is_none()
    }

    /// A homomorphism under which no proper edge collapses to a loop.
    pub fn is_two_homomorphism(&self) -> bool {
        self.source
            .edges()
            .all(|(u, v)| self.target.is_adjacent(self.image(u), self.image(v)))
    }

    fn require_homomorphism(&self) -> Result<()> {
        match self.first_broken_edge() {
            Some((u, v)) => Err(Error::NotHomomorphism(u, v)),
            None => Ok(()),
        }
    }

    /// Surjective on vertices and on proper edges. Loops are covered by
    /// reflexivity once the vertex map is onto.
    pub fn is_complete_map(&self) -> Result<bool> {
        self.require_homomorphism()?;
        let mut hit = vec![false; self.target.vertex_count()];
        for &j in self.assignment.iter() {
            hit[j] = true;
        }
        if hit.iter().any(|h| !h) {
            return Ok(false);
        }
        let covered: HashSet<(usize, usize)> = self
            .source
            .edges()
            .map(|(u, v)| (self.image(u), self.image(v)))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        Ok(covered.len() == self.target.edge_count())
    }

    /// Each fiber lies inside a single component of the source.
    pub fn is_tame(&self) -> Result<bool> {
        self.require_homomorphism()?;
        let report = components(self.source);
        Ok(self.fibers().iter().all(|fiber| {
            fiber
                .windows(2)
                .all(|w| report.component_of(w[0]) == report.component_of(w[1]))
        }))
    }

    /// The closed neighbourhood of every source vertex maps onto the closed
    /// neighbourhood of its image.
    pub fn is_locally_surjective(&self) -> Result<bool> {
        self.require_homomorphism()?;
        for v in 0..self.source.vertex_count() {
            let fv = self.image(v);
            let mut images: Vec<usize> = self.source.neighbors(v).map(|u| self.image(u)).collect();
            images.push(fv);
            images.sort_unstable();
            images.dedup();
            // for a homomorphism the image already sits inside N[f(v)]
            if images.len() != self.target.degree(fv) + 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Locally surjective and complete.
    pub fn is_pseudo_covering(&self) -> Result<bool> {
        Ok(self.is_locally_surjective()? && self.is_complete_map()?)
    }

    /// Whether the fibers coincide with the orbits of the group generated
    /// by `generators`, each a vertex bijection of the source that must be
    /// a graph automorphism.
    pub fn is_orbit_map(&self, generators: &[Vec<usize>]) -> Result<bool> {
        let n = self.source.vertex_count();
        for (i, gen) in generators.iter().enumerate() {
            if !is_automorphism(self.source, gen) {
                return Err(Error::NotAutomorphism(i));
            }
        }
        // orbit representative (least vertex) by breadth-first closure
        let mut orbit_rep = vec![usize::MAX; n];
        for start in 0..n {
            if orbit_rep[start] != usize::MAX {
                continue;
            }
            orbit_rep[start] = start;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for gen in generators {
                    let w = gen[v];
                    if orbit_rep[w] == usize::MAX {
                        orbit_rep[w] = start;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut fiber_rep: HashMap<usize, usize> = HashMap::new();
        Ok((0..n).all(|v| {
            let rep = *fiber_rep.entry(self.image(v)).or_insert(v);
            rep == orbit_rep[v]
        }))
    }
}

/// Whether `map` is a bijection of the vertices preserving proper edges.
pub fn is_automorphism<L>(g: &LabeledGraph<L>, map: &[usize]) -> bool {
    let n = g.vertex_count();
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &j in map {
        if j >= n || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    g.edges().all(|(u, v)| g.is_adjacent(map[u], map[v]))
}

/// Exhaustive isomorphism test for small graphs (backtracking with degree
/// pruning). Labels are ignored.
pub fn are_isomorphic_small<A, B>(a: &LabeledGraph<A>, b: &LabeledGraph<B>) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    fn extend<A, B>(a: &LabeledGraph<A>, b: &LabeledGraph<B>, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == a.vertex_count() {
            return true;
        }
        for w in 0..b.vertex_count() {
            if used[w] || a.degree(v) != b.degree(w) {
                continue;
            }
            if (0..v).all(|u| a.is_adjacent(u, v) == b.is_adjacent(map[u], w)) {
                used[w] = true;
                map.push(w);
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    extend(a, b, &mut Vec::with_capacity(n), &mut vec![false; n])
}
