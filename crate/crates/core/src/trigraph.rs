//! Trigraphs, quotients and contraction-sequence replay.
//!
//! Parts are addressed by [`PartId`]s. The initial singleton parts carry the
//! ids `0..n` of their vertices; the `i`-th merge of a sequence creates the
//! fresh id `n + i`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::ContractionError;
use crate::graph::{ColoredGraph, Vertex};

pub type PartId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Black,
    Red,
}

#[derive(Debug, Clone)]
pub struct Trigraph {
    n: usize,
    members: Vec<Option<Vec<Vertex>>>,
    adj: Vec<BTreeMap<PartId, EdgeKind>>,
    red_degree: Vec<usize>,
    live: usize,
    red_edges: usize,
}

/// Id-independent description of a trigraph: parts sorted by their smallest
/// vertex, edges given as pairs of indices into `parts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigraphShape {
    pub parts: Vec<Vec<Vertex>>,
    pub black: Vec<(usize, usize)>,
    pub red: Vec<(usize, usize)>,
}

impl Trigraph {
    /// The graph itself as a trigraph: singleton parts, all edges black.
    pub fn from_graph(g: &ColoredGraph) -> Self {
        let n = g.n();
        let adj = (0..n)
            .map(|v| g.neighbors(v).iter().map(|&w| (w, EdgeKind::Black)).collect())
            .collect();
        Self {
            n,
            members: (0..n).map(|v| Some(vec![v])).collect(),
            adj,
            red_degree: vec![0; n],
            live: n,
            red_edges: 0,
        }
    }

    /// Order of the underlying graph.
    pub fn base_order(&self) -> usize {
        self.n
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn is_live(&self, p: PartId) -> bool {
        self.members.get(p).is_some_and(|m| m.is_some())
    }

    pub fn live_parts(&self) -> impl Iterator<Item = PartId> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(p, m)| m.as_ref().map(|_| p))
    }

    pub fn members(&self, p: PartId) -> Option<&[Vertex]> {
        self.members.get(p)?.as_deref()
    }

    pub fn edge(&self, p: PartId, q: PartId) -> Option<EdgeKind> {
        self.adj.get(p)?.get(&q).copied()
    }

    pub fn neighbors(&self, p: PartId) -> impl Iterator<Item = (PartId, EdgeKind)> + '_ {
        self.adj[p].iter().map(|(&q, &k)| (q, k))
    }

    pub fn red_degree(&self, p: PartId) -> usize {
        self.red_degree[p]
    }

    pub fn max_red_degree(&self) -> usize {
        self.live_parts()
            .map(|p| self.red_degree[p])
            .max()
            .unwrap_or(0)
    }

    pub fn red_edge_count(&self) -> usize {
        self.red_edges
    }

    pub fn edges_of_kind(&self, kind: EdgeKind) -> Vec<(PartId, PartId)> {
        let mut out = Vec::new();
        for p in self.live_parts() {
            for (&q, &k) in &self.adj[p] {
                if p < q && k == kind {
                    out.push((p, q));
                }
            }
        }
        out
    }

    fn check_live(&self, step: usize, p: PartId) -> Result<(), ContractionError> {
        if self.is_live(p) {
            Ok(())
        } else {
            Err(ContractionError::DeadPart { step, part: p })
        }
    }

    /// Merges two live parts in place and returns the id of the new part.
    pub fn merge(&mut self, a: PartId, b: PartId) -> Result<PartId, ContractionError> {
        let step = self.members.len() - self.n;
        self.check_live(step, a)?;
        self.check_live(step, b)?;
        if a == b {
            return Err(ContractionError::SamePart { step, part: a });
        }
        let z = self.members.len();
        let adj_a = std::mem::take(&mut self.adj[a]);
        let adj_b = std::mem::take(&mut self.adj[b]);
        let ab_red = adj_a.get(&b) == Some(&EdgeKind::Red);
        let mut merged = BTreeMap::new();
        let mut keys: Vec<PartId> = adj_a.keys().chain(adj_b.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for x in keys {
            if x == a || x == b {
                continue;
            }
            let ka = adj_a.get(&x).copied();
            let kb = adj_b.get(&x).copied();
            let kind = match (ka, kb) {
                (Some(EdgeKind::Black), Some(EdgeKind::Black)) => EdgeKind::Black,
                _ => EdgeKind::Red,
            };
            let row = &mut self.adj[x];
            row.remove(&a);
            row.remove(&b);
            row.insert(z, kind);
            let lost = usize::from(ka == Some(EdgeKind::Red)) + usize::from(kb == Some(EdgeKind::Red));
            self.red_degree[x] = self.red_degree[x] - lost + usize::from(kind == EdgeKind::Red);
            merged.insert(x, kind);
        }
        let z_red = merged.values().filter(|&&k| k == EdgeKind::Red).count();
        self.red_edges =
            self.red_edges + usize::from(ab_red) + z_red - self.red_degree[a] - self.red_degree[b];
        self.red_degree[a] = 0;
        self.red_degree[b] = 0;
        let mut mem = self.members[a].take().unwrap();
        mem.extend(self.members[b].take().unwrap());
        mem.sort_unstable();
        self.members.push(Some(mem));
        self.adj.push(merged);
        self.red_degree.push(z_red);
        self.live -= 1;
        Ok(z)
    }

    /// Functional form of [`Trigraph::merge`].
    pub fn contract(&self, a: PartId, b: PartId) -> Result<Trigraph, ContractionError> {
        let mut t = self.clone();
        t.merge(a, b)?;
        Ok(t)
    }

    pub fn shape(&self) -> TrigraphShape {
        let mut ids: Vec<PartId> = self.live_parts().collect();
        ids.sort_by_key(|&p| self.members[p].as_ref().unwrap()[0]);
        let index: HashMap<PartId, usize> = ids.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut black = Vec::new();
        let mut red = Vec::new();
        for &p in &ids {
            for (&q, &k) in &self.adj[p] {
                let (i, j) = (index[&p], index[&q]);
                if i < j {
                    match k {
                        EdgeKind::Black => black.push((i, j)),
                        EdgeKind::Red => red.push((i, j)),
                    }
                }
            }
        }
        black.sort_unstable();
        red.sort_unstable();
        TrigraphShape {
            parts: ids
                .iter()
                .map(|&p| self.members[p].clone().unwrap())
                .collect(),
            black,
            red,
        }
    }
}

/// Quotient of `g` by `partition`; part `i` receives id `i`.
pub fn quotient(g: &ColoredGraph, partition: &[Vec<Vertex>]) -> Result<Trigraph, ContractionError> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (i, part) in partition.iter().enumerate() {
        if part.is_empty() {
            return Err(ContractionError::NotAPartition(format!("part {i} is empty")));
        }
        for &v in part {
            if v >= n {
                return Err(ContractionError::NotAPartition(format!("vertex {v} out of range")));
            }
            if owner[v] != usize::MAX {
                return Err(ContractionError::NotAPartition(format!("vertex {v} appears twice")));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(ContractionError::NotAPartition(format!("vertex {v} is uncovered")));
    }
    let k = partition.len();
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    for (u, v) in g.edges() {
        let (p, q) = (owner[u], owner[v]);
        if p != q {
            *count.entry((p.min(q), p.max(q))).or_default() += 1;
        }
    }
    let mut adj = vec![BTreeMap::new(); k];
    let mut red_degree = vec![0; k];
    let mut red_edges = 0;
    for (&(p, q), &c) in &count {
        let kind = if c == partition[p].len() * partition[q].len() {
            EdgeKind::Black
        } else {
            red_degree[p] += 1;
            red_degree[q] += 1;
            red_edges += 1;
            EdgeKind::Red
        };
        adj[p].insert(q, kind);
        adj[q].insert(p, kind);
    }
    Ok(Trigraph {
        n,
        members: partition
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.sort_unstable();
                Some(p)
            })
            .collect(),
        adj,
        red_degree,
        live: k,
        red_edges,
    })
}

/// Connected components of the red edges, each sorted, ordered by smallest id.
pub fn red_components(t: &Trigraph) -> Vec<Vec<PartId>> {
    let mut seen: HashMap<PartId, bool> = t.live_parts().map(|p| (p, false)).collect();
    let mut out = Vec::new();
    for p in t.live_parts() {
        if seen[&p] {
            continue;
        }
        seen.insert(p, true);
        let mut comp = vec![p];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for (y, k) in t.neighbors(x) {
                if k == EdgeKind::Red && !seen[&y] {
                    seen.insert(y, true);
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn max_red_component(t: &Trigraph) -> usize {
    red_components(t).iter().map(Vec::len).max().unwrap_or(0)
}

/// Ordered list of merges over part ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionSequence {
    merges: Vec<(PartId, PartId)>,
}

impl ContractionSequence {
    pub fn new(merges: Vec<(PartId, PartId)>) -> Self {
        Self { merges }
    }

    pub fn merges(&self) -> &[(PartId, PartId)] {
        &self.merges
    }

    pub fn len(&self) -> usize {
        self.merges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.merges.is_empty()
    }

    pub fn push(&mut self, a: PartId, b: PartId) {
        self.merges.push((a, b));
    }

    pub fn prefix(&self, len: usize) -> ContractionSequence {
        Self::new(self.merges[..len].to_vec())
    }

    /// Whether the sequence contracts an order-`n` graph to a single part.
    pub fn is_complete(&self, n: usize) -> bool {
        self.merges.len() + 1 == n.max(1)
    }
}

/// Builds sequences by naming original vertices instead of part ids.
#[derive(Debug, Clone)]
pub struct SequenceBuilder {
    owner: Vec<PartId>,
    members: Vec<Vec<Vertex>>,
    seq: ContractionSequence,
}

impl SequenceBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            owner: (0..n).collect(),
            members: (0..n).map(|v| vec![v]).collect(),
            seq: ContractionSequence::default(),
        }
    }

    pub fn part_of(&self, v: Vertex) -> PartId {
        self.owner[v]
    }

    /// Merges the parts containing `a` and `b`; a no-op if they coincide.
    pub fn merge_vertices(&mut self, a: Vertex, b: Vertex) -> PartId {
        let (pa, pb) = (self.owner[a], self.owner[b]);
        if pa == pb {
            return pa;
        }
        let z = self.members.len();
        let mut mem = std::mem::take(&mut self.members[pa]);
        mem.append(&mut std::mem::take(&mut self.members[pb]));
        for &v in &mem {
            self.owner[v] = z;
        }
        self.members.push(mem);
        self.seq.push(pa, pb);
        z
    }

    pub fn finish(self) -> ContractionSequence {
        self.seq
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub max_red_degree: usize,
    pub max_red_component: usize,
    pub red_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthReport {
    pub width: usize,
    pub max_red_component: usize,
    pub steps: Vec<StepReport>,
    /// Original-vertex sets of the parts created by the merges.
    pub parts: BTreeMap<PartId, Vec<Vertex>>,
}

/// Replays `seq` on `g`, reporting the maximum red degree and red-component
/// order over all intermediate trigraphs.
pub fn verify_sequence(
    g: &ColoredGraph,
    seq: &ContractionSequence,
) -> Result<WidthReport, ContractionError> {
    replay(g, seq, |_, _| {}).map(|(report, _)| report)
}

/// Replays `seq`, calling `visit(step, trigraph)` after every merge, and
/// returns the report together with the final trigraph.
pub fn replay<F>(
    g: &ColoredGraph,
    seq: &ContractionSequence,
    mut visit: F,
) -> Result<(WidthReport, Trigraph), ContractionError>
where
    F: FnMut(usize, &Trigraph),
{
    let mut t = Trigraph::from_graph(g);
    let mut steps = Vec::with_capacity(seq.len());
    let mut parts = BTreeMap::new();
    for (step, &(a, b)) in seq.merges().iter().enumerate() {
        let z = t.merge(a, b)?;
        parts.insert(z, t.members(z).unwrap().to_vec());
        steps.push(StepReport {
            max_red_degree: t.max_red_degree(),
            max_red_component: max_red_component(&t),
            red_edges: t.red_edge_count(),
        });
        visit(step, &t);
    }
    let width = steps.iter().map(|s| s.max_red_degree).max().unwrap_or(0);
    let max_red_component = steps
        .iter()
        .map(|s| s.max_red_component)
        .max()
        .unwrap_or(0)
        .max(usize::from(g.n() > 0));
    Ok((
        WidthReport {
            width,
            max_red_component,
            steps,
            parts,
        },
        t,
    ))
}
