//! Simple undirected graphs with string labels, the square operation, and
//! square-root checks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid vertex label {0:?}: labels must be non-empty and contain no whitespace")]
    InvalidLabel(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("self-loop at {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(String, String),
    #[error("vertex sets differ: {only_left} label(s) only in the first graph, {only_right} only in the second")]
    VertexSetMismatch { only_left: usize, only_right: usize },
    #[error("edge {0} {1} of the candidate root is not an edge of the target graph")]
    NotSubgraph(String, String),
}

/// An unordered pair of distinct labels, stored with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexPair {
    u: String,
    v: String,
}

impl VertexPair {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Result<Self, GraphError> {
        let (a, b) = (a.into(), b.into());
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(VertexPair { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(VertexPair { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(a)),
        }
    }

    pub fn u(&self) -> &str {
        &self.u
    }

    pub fn v(&self) -> &str {
        &self.v
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

pub(crate) fn valid_label(label: &str) -> bool {
    !label.is_empty() && !label.chars().any(char::is_whitespace)
}

/// Incremental construction with eager validation.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize, GraphError> {
        let label = label.into();
        if !valid_label(&label) {
            return Err(GraphError::InvalidLabel(label));
        }
        if self.index.contains_key(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        Ok(id)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let ia = *self.index.get(a).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
        let ib = *self.index.get(b).ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
        self.add_edge_by_index(ia, ib)
    }

    pub fn add_edge_by_index(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(self.labels[a].clone()));
        }
        let key = (a.min(b), a.max(b));
        if !self.edges.insert(key) {
            return Err(GraphError::DuplicateEdge(
                self.labels[key.0].clone(),
                self.labels[key.1].clone(),
            ));
        }
        Ok(())
    }

    pub fn contains_vertex(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn build(self) -> Graph {
        let n = self.labels.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Graph { labels: self.labels, index: self.index, adj, m: self.edges.len() }
    }
}

/// Immutable simple undirected graph. Vertices keep their insertion order;
/// equality compares label sets and edge sets only.
#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<FixedBitSet>,
    m: usize,
}

impl Graph {
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (S, S)>,
    {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.add_vertex(v)?;
        }
        for (x, y) in edges {
            let (x, y) = (x.into(), y.into());
            b.add_edge(&x, &y)?;
        }
        Ok(b.build())
    }

    /// Builds from labels plus index pairs. Pairs must be valid and distinct.
    pub(crate) fn from_index_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Graph {
        let n = labels.len();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        let mut m = 0;
        for (a, b) in edges {
            debug_assert!(a != b);
            if !adj[a].put(b) {
                m += 1;
            }
            adj[b].insert(a);
        }
        Graph { labels, index, adj, m }
    }

    fn from_adjacency(labels: Vec<String>, index: HashMap<String, usize>, adj: Vec<FixedBitSet>) -> Graph {
        let m = adj.iter().map(|row| row.count_ones(..)).sum::<usize>() / 2;
        Graph { labels, index, adj, m }
    }

    pub fn edgeless<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Self, GraphError> {
        Graph::new(vertices, std::iter::empty::<(S, S)>())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones(..)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].ones()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn has_edge_labels(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(x), Some(y)) => self.has_edge(x, y),
            _ => false,
        }
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().filter(move |&b| b > a).map(move |b| (a, b)))
    }

    pub fn edge_pairs(&self) -> BTreeSet<VertexPair> {
        self.edges()
            .map(|(a, b)| VertexPair::new(self.labels[a].clone(), self.labels[b].clone()).unwrap())
            .collect()
    }

    pub fn label_set(&self) -> BTreeSet<&str> {
        self.labels.iter().map(String::as_str).collect()
    }

    /// Subgraph induced by all vertices except `removed`. Unknown labels are ignored.
    pub fn without_vertices<S: AsRef<str>>(&self, removed: &[S]) -> Graph {
        let drop: BTreeSet<usize> = removed.iter().filter_map(|l| self.index_of(l.as_ref())).collect();
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|i| !drop.contains(i)).collect();
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let edges = self
            .edges()
            .filter(|(a, b)| remap[*a] != usize::MAX && remap[*b] != usize::MAX)
            .map(|(a, b)| (remap[a], remap[b]))
            .collect::<Vec<_>>();
        Graph::from_index_edges(labels, edges)
    }

    /// Same graph with vertices listed in sorted label order.
    pub fn canonicalized(&self) -> Graph {
        let mut labels = self.labels.clone();
        labels.sort();
        self.reindexed(labels)
    }

    fn reindexed(&self, labels: Vec<String>) -> Graph {
        let index: HashMap<String, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let edges: Vec<(usize, usize)> = self
            .edges()
            .map(|(a, b)| (index[&self.labels[a]], index[&self.labels[b]]))
            .collect();
        Graph::from_index_edges(labels, edges)
    }

    /// Re-expresses `self` in `other`'s vertex order when the label sets agree.
    pub(crate) fn aligned_to(&self, other: &Graph) -> Result<Graph, GraphError> {
        check_same_vertices(self, other)?;
        Ok(self.reindexed(other.labels.clone()))
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.m == other.m
            && self.labels.iter().all(|l| other.contains(l))
            && self.edges().all(|(a, b)| other.has_edge_labels(&self.labels[a], &self.labels[b]))
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.edges().map(|(a, b)| (&self.labels[a], &self.labels[b])).collect::<Vec<_>>())
            .finish()
    }
}

fn check_same_vertices(a: &Graph, b: &Graph) -> Result<(), GraphError> {
    let only_left = a.labels.iter().filter(|l| !b.contains(l)).count();
    let only_right = b.labels.iter().filter(|l| !a.contains(l)).count();
    if only_left == 0 && only_right == 0 {
        Ok(())
    } else {
        Err(GraphError::VertexSetMismatch { only_left, only_right })
    }
}

/// The square: same vertices, `uv` an edge iff their distance is 1 or 2.
pub fn square(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let adj = (0..n)
        .map(|v| {
            let mut row = g.adj[v].clone();
            for w in g.adj[v].ones() {
                row.union_with(&g.adj[w]);
            }
            row.set(v, false);
            row
        })
        .collect();
    Graph::from_adjacency(g.labels.clone(), g.index.clone(), adj)
}

/// Pairs where `square(h)` and `g` disagree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SquareDiscrepancy {
    /// Edges of `g` that `h` leaves at distance three or more.
    pub uncovered: Vec<VertexPair>,
    /// Pairs at distance at most two in `h` that are not edges of `g`.
    pub extra: Vec<VertexPair>,
}

impl SquareDiscrepancy {
    pub fn is_empty(&self) -> bool {
        self.uncovered.is_empty() && self.extra.is_empty()
    }
}

pub fn square_discrepancy(h: &Graph, g: &Graph) -> Result<SquareDiscrepancy, GraphError> {
    let h = h.aligned_to(g)?;
    let sq = square(&h);
    let pair = |a: usize, b: usize| VertexPair::new(g.label(a), g.label(b)).unwrap();
    let uncovered = g.edges().filter(|&(a, b)| !sq.has_edge(a, b)).map(|(a, b)| pair(a, b)).collect();
    let extra = sq.edges().filter(|&(a, b)| !g.has_edge(a, b)).map(|(a, b)| pair(a, b)).collect();
    Ok(SquareDiscrepancy { uncovered, extra })
}

/// True iff `square(h) == g`.
pub fn verify_square_root(h: &Graph, g: &Graph) -> Result<bool, GraphError> {
    let h = h.aligned_to(g)?;
    Ok(square(&h).adj == g.adj)
}

/// Equal vertex sets and `E(h) ⊆ E(g)`.
pub fn is_subgraph(h: &Graph, g: &Graph) -> bool {
    h.vertex_count() == g.vertex_count()
        && h.labels.iter().all(|l| g.contains(l))
        && h.edges().all(|(a, b)| g.has_edge_labels(&h.labels[a], &h.labels[b]))
}

/// Checks that every neighborhood of `h` is a clique in `g`.
///
/// For `h ⊆ g ⊆ square(h)` this is equivalent to `square(h) == g`: every
/// distance-two pair of `h` shares a neighbor, so it lies inside some
/// neighborhood.
pub fn neighborhood_clique_check(h: &Graph, g: &Graph) -> Result<bool, GraphError> {
    let h = h.aligned_to(g)?;
    if let Some((a, b)) = h.edges().find(|&(a, b)| !g.has_edge(a, b)) {
        return Err(GraphError::NotSubgraph(g.label(a).to_string(), g.label(b).to_string()));
    }
    for v in 0..h.vertex_count() {
        let nbrs: Vec<usize> = h.adj[v].ones().collect();
        for (k, &a) in nbrs.iter().enumerate() {
            if !nbrs[k + 1..].iter().all(|&b| g.has_edge(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn path(labels: &[&str]) -> Graph {
        Graph::new(labels.iter().copied(), labels.windows(2).map(|w| (w[0], w[1]))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> =
            (0..n).map(|i| (labels[i].clone(), labels[(i + 1) % n].clone())).collect();
        Graph::new(labels, edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        Graph::new(labels, edges).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        let labels: Vec<String> = (0..=leaves).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> =
            (1..=leaves).map(|i| (labels[0].clone(), labels[i].clone())).collect();
        Graph::new(labels, edges).unwrap()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn builder_rejects_invalid_input() {
        let mut b = GraphBuilder::new();
        b.add_vertex("a").unwrap();
        assert_eq!(b.add_vertex("a"), Err(GraphError::DuplicateVertex("a".into())));
        assert!(matches!(b.add_vertex("has space"), Err(GraphError::InvalidLabel(_))));
        assert!(matches!(b.add_vertex(""), Err(GraphError::InvalidLabel(_))));
        b.add_vertex("b").unwrap();
        assert_eq!(b.add_edge("a", "a"), Err(GraphError::SelfLoop("a".into())));
        assert_eq!(b.add_edge("a", "z"), Err(GraphError::UnknownVertex("z".into())));
        b.add_edge("a", "b").unwrap();
        assert!(matches!(b.add_edge("b", "a"), Err(GraphError::DuplicateEdge(..))));
    }

    #[test]
    fn equality_ignores_insertion_order() {
        let g1 = Graph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let g2 = Graph::new(["c", "a", "b"], [("c", "b"), ("b", "a")]).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(g1.canonicalized().labels(), ["a", "b", "c"]);
    }

    #[test]
    fn vertex_pair_is_canonical() {
        assert_eq!(VertexPair::new("b", "a").unwrap(), VertexPair::new("a", "b").unwrap());
        assert!(VertexPair::new("a", "a").is_err());
    }

    #[test]
    fn square_examples() {
        let p3 = path(&["a", "b", "c"]);
        assert_eq!(square(&p3), Graph::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap());
        assert_eq!(square(&cycle(5)), complete(5));
        let k5_star = star(4).aligned_to(&complete(5)).unwrap();
        assert_eq!(square(&k5_star), complete(5));
        let empty = Graph::edgeless(["a", "b", "c", "d"]).unwrap();
        assert_eq!(square(&empty), empty);
        assert_eq!(square(&complete(6)), complete(6));
    }

    #[test]
    fn verify_square_root_examples() {
        assert!(verify_square_root(&cycle(5), &complete(5)).unwrap());
        let p3 = path(&["a", "b", "c"]);
        assert!(!verify_square_root(&p3, &p3).unwrap());
        let e = path(&["a", "b"]);
        assert!(verify_square_root(&e, &e).unwrap());
        assert!(matches!(
            verify_square_root(&e, &p3),
            Err(GraphError::VertexSetMismatch { only_left: 0, only_right: 1 })
        ));
    }

    #[test]
    fn neighborhood_clique_examples() {
        let p3 = path(&["a", "b", "c"]);
        let k3 = square(&p3);
        assert!(neighborhood_clique_check(&p3, &k3).unwrap());
        let star = path(&["a", "z", "c"]);
        assert!(!neighborhood_clique_check(&star, &star).unwrap());
        assert!(matches!(neighborhood_clique_check(&k3, &p3), Err(GraphError::NotSubgraph(..))));
    }

    #[test]
    fn subgraph_examples() {
        assert!(is_subgraph(&cycle(5), &complete(5)));
        let p3 = path(&["a", "b", "c"]);
        assert!(!is_subgraph(&square(&p3), &p3));
        assert!(is_subgraph(&Graph::edgeless(["a", "b"]).unwrap(), &path(&["a", "b"])));
        assert!(!is_subgraph(&Graph::edgeless(["a"]).unwrap(), &path(&["a", "b"])));
    }

    #[test]
    fn discrepancy_names_missing_edges() {
        let mut h = GraphBuilder::new();
        for l in ["v0", "v1", "v2", "v3", "v4"] {
            h.add_vertex(l).unwrap();
        }
        for (a, b) in [("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v4")] {
            h.add_edge(a, b).unwrap();
        }
        let d = square_discrepancy(&h.build(), &complete(5)).unwrap();
        assert_eq!(d.uncovered, vec![VertexPair::new("v0", "v3").unwrap(), VertexPair::new("v0", "v4").unwrap(), VertexPair::new("v1", "v4").unwrap()]);
        assert!(d.extra.is_empty());
    }

    #[test]
    fn without_vertices_drops_incident_edges() {
        let g = complete(5).without_vertices(&["v0", "nope"]);
        assert_eq!(g, complete(5).without_vertices(&["v0"]));
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
    }

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_index_edges(labels, edges)
            })
        })
    }

    fn arb_pair(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
        arb_graph(max_n).prop_flat_map(|g| {
            let n = g.vertex_count();
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                (g.clone(), Graph::from_index_edges(g.labels().to_vec(), edges))
            })
        })
    }

    proptest! {
        #[test]
        fn graph_is_subgraph_of_its_square(g in arb_graph(9)) {
            prop_assert!(is_subgraph(&g, &square(&g)));
        }

        #[test]
        fn square_is_monotone((h, g) in arb_pair(8)) {
            let union = Graph::from_index_edges(g.labels().to_vec(), h.edges().chain(g.edges()).collect::<Vec<_>>());
            prop_assert!(is_subgraph(&square(&h), &square(&union)));
        }

        #[test]
        fn roots_are_subgraphs((h, g) in arb_pair(7)) {
            if verify_square_root(&h, &g).unwrap() {
                prop_assert!(is_subgraph(&h, &g));
            }
        }
    }

    /// Clique check agrees with exact verification whenever h ⊆ g ⊆ h².
    #[test]
    fn clique_check_equivalence_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        let mut disagreements_possible = 0;
        while checked < 1500 {
            let n = rng.gen_range(2..=7);
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut h_edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.35) {
                        h_edges.push((i, j));
                    }
                }
            }
            let h = Graph::from_index_edges(labels.clone(), h_edges.clone());
            let sq = square(&h);
            // g: h plus a random subset of the distance-two pairs
            let g_edges: Vec<(usize, usize)> = sq
                .edges()
                .filter(|&(a, b)| h.has_edge(a, b) || rng.gen_bool(0.7))
                .collect();
            let g = Graph::from_index_edges(labels, g_edges);
            let exact = verify_square_root(&h, &g).unwrap();
            let clique = neighborhood_clique_check(&h, &g).unwrap();
            assert_eq!(exact, clique, "h={h:?} g={g:?}");
            if !exact {
                disagreements_possible += 1;
            }
            checked += 1;
        }
        assert!(disagreements_possible > 100);
    }
}
