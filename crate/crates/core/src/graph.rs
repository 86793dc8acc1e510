//! Colored simple graphs, atomic types, and bipartite views.
//!
//! A [`ColoredGraph`] stores sorted adjacency lists for neighborhood iteration
//! and, on demand, bit-packed adjacency rows for constant-time pair queries and
//! word-parallel set algebra. Rows are only materialized for graphs up to
//! [`DENSE_LIMIT`] vertices; larger graphs answer pair queries by binary search.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

pub type Vertex = usize;
pub type Color = u64;

/// Largest order for which dense adjacency rows are built.
pub const DENSE_LIMIT: usize = 1 << 14;

pub struct ColoredGraph {
    adj: Vec<Vec<Vertex>>,
    colors: Vec<Color>,
    m: usize,
    rows: OnceLock<Vec<FixedBitSet>>,
}

impl Clone for ColoredGraph {
    fn clone(&self) -> Self {
        Self {
            adj: self.adj.clone(),
            colors: self.colors.clone(),
            m: self.m,
            rows: OnceLock::new(),
        }
    }
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.colors == other.colors
    }
}

impl Eq for ColoredGraph {}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .field("colors", &self.colors)
            .finish()
    }
}

impl ColoredGraph {
    /// Edgeless graph on `n` vertices, all of color 0.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            colors: vec![0; n],
            m: 0,
            rows: OnceLock::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { v: x, n });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self {
            adj,
            colors: vec![0; n],
            m,
            rows: OnceLock::new(),
        })
    }

    /// Builds a graph from edges that are known to be valid; panics otherwise.
    pub fn from_edges_unchecked<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::from_edges(n, edges).expect("invalid edge list")
    }

    pub fn with_colors(mut self, colors: Vec<Color>) -> Result<Self, GraphError> {
        if colors.len() != self.n() {
            return Err(GraphError::ColorLength {
                got: colors.len(),
                expected: self.n(),
            });
        }
        self.colors = colors;
        Ok(self)
    }

    pub fn set_color(&mut self, v: Vertex, color: Color) {
        self.colors[v] = color;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if self.n() <= DENSE_LIMIT {
            self.rows()[u].contains(v)
        } else {
            self.adj[u].binary_search(&v).is_ok()
        }
    }

    /// Bit-packed adjacency rows. Panics above [`DENSE_LIMIT`] vertices.
    pub fn rows(&self) -> &[FixedBitSet] {
        assert!(
            self.n() <= DENSE_LIMIT,
            "dense rows requested for a graph with {} vertices",
            self.n()
        );
        self.rows.get_or_init(|| {
            let n = self.n();
            self.adj
                .iter()
                .map(|list| {
                    let mut row = FixedBitSet::with_capacity(n);
                    for &w in list {
                        row.insert(w);
                    }
                    row
                })
                .collect()
        })
    }

    #[inline]
    pub fn row(&self, v: Vertex) -> &FixedBitSet {
        &self.rows()[v]
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Sorted list of the distinct colors in use.
    pub fn palette(&self) -> Vec<Color> {
        let set: BTreeSet<Color> = self.colors.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn complement(&self) -> ColoredGraph {
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n {
            let mut it = self.adj[u].iter().peekable();
            for v in u + 1..n {
                while it.peek().is_some_and(|&&w| w < v) {
                    it.next();
                }
                if it.peek() != Some(&&v) {
                    edges.push((u, v));
                }
            }
        }
        ColoredGraph::from_edges_unchecked(n, edges)
            .with_colors(self.colors.clone())
            .unwrap()
    }

    /// Subgraph induced by the sorted vertex list `set`. Returns the graph and
    /// the index map from new ids to old ids.
    pub fn induced_subgraph(&self, set: &[Vertex]) -> (ColoredGraph, Vec<Vertex>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in set.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); set.len()];
        let mut m = 0;
        for (i, &v) in set.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if i < j {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        let colors = set.iter().map(|&v| self.colors[v]).collect();
        (
            ColoredGraph {
                adj,
                colors,
                m,
                rows: OnceLock::new(),
            },
            set.to_vec(),
        )
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> ColoredGraph {
        let n = self.n();
        let mut colors = vec![0; n];
        for v in 0..n {
            colors[perm[v]] = self.colors[v];
        }
        ColoredGraph::from_edges_unchecked(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
            .with_colors(colors)
            .unwrap()
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &ColoredGraph) -> ColoredGraph {
        let off = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)));
        let mut colors = self.colors.clone();
        colors.extend_from_slice(&other.colors);
        ColoredGraph::from_edges_unchecked(off + other.n(), edges)
            .with_colors(colors)
            .unwrap()
    }

    /// Checks whether `map` (a bijection from `self` to `other`) preserves
    /// edges, non-edges and colors.
    pub fn is_isomorphism(&self, other: &ColoredGraph, map: &[Vertex]) -> bool {
        let n = self.n();
        if other.n() != n || map.len() != n || self.m != other.m {
            return false;
        }
        let mut seen = vec![false; n];
        for &x in map {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        (0..n).all(|v| self.colors[v] == other.colors[map[v]])
            && self.edges().all(|(u, v)| other.has_edge(map[u], map[v]))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Isomorphism type of an ordered colored tuple of vertices.
///
/// Two tuples get equal values iff `v_i -> w_i` is a color-preserving
/// isomorphism of the induced ordered subgraphs. The equality pattern stores,
/// for every position, the first position holding the same vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicType {
    pub equality: Vec<u8>,
    /// Adjacency of positions `i < j`, row-major over the strict upper triangle.
    pub adjacency: Vec<bool>,
    pub colors: Vec<Color>,
}

impl AtomicType {
    pub fn arity(&self) -> usize {
        self.colors.len()
    }

    /// Edge type of arity two.
    pub fn edge(cu: Color, cv: Color) -> Self {
        AtomicType {
            equality: vec![0, 1],
            adjacency: vec![true],
            colors: vec![cu, cv],
        }
    }

    /// Non-edge type of arity two.
    pub fn non_edge(cu: Color, cv: Color) -> Self {
        AtomicType {
            equality: vec![0, 1],
            adjacency: vec![false],
            colors: vec![cu, cv],
        }
    }
}

pub fn atomic_type(g: &ColoredGraph, tuple: &[Vertex]) -> AtomicType {
    let k = tuple.len();
    let equality = (0..k)
        .map(|i| (0..=i).find(|&j| tuple[j] == tuple[i]).unwrap() as u8)
        .collect();
    let mut adjacency = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            adjacency.push(tuple[i] != tuple[j] && g.has_edge(tuple[i], tuple[j]));
        }
    }
    AtomicType {
        equality,
        adjacency,
        colors: tuple.iter().map(|&v| g.color(v)).collect(),
    }
}

/// Bipartite graph between two disjoint vertex sets of a parent graph. Only
/// edges between `left` and `right` are visible.
#[derive(Debug, Clone, Copy)]
pub struct BipartiteView<'a> {
    graph: &'a ColoredGraph,
    left: &'a [Vertex],
    right: &'a [Vertex],
}

impl<'a> BipartiteView<'a> {
    pub fn new(
        graph: &'a ColoredGraph,
        left: &'a [Vertex],
        right: &'a [Vertex],
    ) -> Result<Self, GraphError> {
        let l: BTreeSet<_> = left.iter().collect();
        if right.iter().any(|v| l.contains(v)) {
            return Err(GraphError::Overlap);
        }
        for &v in left.iter().chain(right) {
            if v >= graph.n() {
                return Err(GraphError::OutOfRange { v, n: graph.n() });
            }
        }
        Ok(Self { graph, left, right })
    }

    pub fn graph(&self) -> &'a ColoredGraph {
        self.graph
    }

    pub fn left(&self) -> &'a [Vertex] {
        self.left
    }

    pub fn right(&self) -> &'a [Vertex] {
        self.right
    }

    pub fn adjacent(&self, l: Vertex, r: Vertex) -> bool {
        self.graph.has_edge(l, r)
    }

    /// Neighborhood of the `i`-th left vertex as sorted indices into `right`.
    pub fn left_neighborhood(&self, i: usize) -> Vec<usize> {
        let l = self.left[i];
        (0..self.right.len())
            .filter(|&j| self.graph.has_edge(l, self.right[j]))
            .collect()
    }

    /// Neighborhood of the `j`-th right vertex as sorted indices into `left`.
    pub fn right_neighborhood(&self, j: usize) -> Vec<usize> {
        let r = self.right[j];
        (0..self.left.len())
            .filter(|&i| self.graph.has_edge(self.left[i], r))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.left.len())
            .map(|i| self.left_neighborhood(i).len())
            .sum()
    }
}
