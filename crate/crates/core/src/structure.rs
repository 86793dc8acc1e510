//! Structural checks on bipartite cuts: biadjacency rank over GF(2),
//! partial half-graphs, induced half-graphs, matchings, bicliques,
//! rank-connectivity and the audit of red cuts along 1-sequences.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::StructureError;
use crate::graph::{BipartiteView, ColoredGraph, Vertex};
use crate::trigraph::{replay, ContractionSequence, Trigraph};

/// Bit-packed matrix over the two-element field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<Vec<u64>>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![vec![0; cols.div_ceil(64)]; rows],
            cols,
        }
    }

    /// Biadjacency matrix with rows `a` and columns `b`.
    pub fn biadjacency(g: &ColoredGraph, a: &[Vertex], b: &[Vertex]) -> Self {
        let mut m = Self::zeros(a.len(), b.len());
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if g.has_edge(x, y) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn from_view(view: &BipartiteView<'_>) -> Self {
        Self::biadjacency(view.graph(), view.left(), view.right())
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.rows[i][j / 64];
        if bit {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }
}

/// Rank over GF(2) by Gaussian elimination on packed rows.
pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    let mut rows = m.rows.clone();
    let mut rank = 0;
    for col in 0..m.cols {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of [`is_partial_half_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfGraphCheck {
    /// Injective positions into `H_size` (1-based): left vertex `left[i]` of
    /// the view goes to `v_{p[i]}`, right vertex `right[j]` to `w_{q[j]}`,
    /// with `left[i] ~ right[j]` iff `p[i] <= q[j]`.
    Embedding { size: usize, p: Vec<usize>, q: Vec<usize> },
    /// Two left vertices with incomparable neighborhoods, and right vertices
    /// `r1 ~ l1`, `r2 ~ l2` with `r1 !~ l2`, `r2 !~ l1` (an induced `2K2`).
    Counterexample {
        l1: Vertex,
        l2: Vertex,
        r1: Vertex,
        r2: Vertex,
    },
}

impl HalfGraphCheck {
    pub fn is_embedding(&self) -> bool {
        matches!(self, HalfGraphCheck::Embedding { .. })
    }
}

/// Left indices sorted by neighborhood size, descending (ties by index).
fn nested_order(view: &BipartiteView<'_>) -> (Vec<usize>, Vec<Vec<usize>>) {
    let nbs: Vec<Vec<usize>> = (0..view.left().len())
        .map(|i| view.left_neighborhood(i))
        .collect();
    let mut order: Vec<usize> = (0..nbs.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(nbs[i].len()), i));
    (order, nbs)
}

fn subset(a: &[usize], b: &[usize]) -> Option<usize> {
    a.iter().copied().find(|x| b.binary_search(x).is_err())
}

/// Whether the view is an induced subgraph of a half-graph, i.e. whether the
/// left neighborhoods form a chain under inclusion. Runs in `O(n^2)`.
pub fn is_partial_half_graph(view: &BipartiteView<'_>) -> HalfGraphCheck {
    let (order, nbs) = nested_order(view);
    for w in order.windows(2) {
        let (big, small) = (w[0], w[1]);
        if let Some(r2) = subset(&nbs[small], &nbs[big]) {
            let r1 = subset(&nbs[big], &nbs[small]).expect("larger set has an extra element");
            return HalfGraphCheck::Counterexample {
                l1: view.left()[big],
                l2: view.left()[small],
                r1: view.right()[r1],
                r2: view.right()[r2],
            };
        }
    }
    let (nl, nr) = (view.left().len(), view.right().len());
    let block = nr + 1;
    let mut p = vec![0; nl];
    for (rank, &i) in order.iter().enumerate() {
        p[i] = (rank + 1) * block;
    }
    // right vertex r sees exactly the first deg(r) left vertices of the order
    let mut q = vec![0; nr];
    let mut by_deg: Vec<(usize, usize)> = (0..nr)
        .map(|j| (view.right_neighborhood(j).len(), j))
        .collect();
    by_deg.sort_unstable();
    for (rank, &(d, j)) in by_deg.iter().enumerate() {
        q[j] = d * block + rank + 1;
    }
    HalfGraphCheck::Embedding {
        size: (nl + 1) * block,
        p,
        q,
    }
}

/// Largest induced half-graph: `t` and its vertices `(v_i, w_i)` as graph ids
/// with `v_i ~ w_j` iff `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfGraphWitness {
    pub t: usize,
    pub pairs: Vec<(Vertex, Vertex)>,
}

/// Largest `t` such that the view contains `H_t` with the `v`'s on the left.
/// On a partial half-graph this is the number of distinct nonempty left
/// neighborhoods.
pub fn max_induced_half_graph(view: &BipartiteView<'_>) -> Result<HalfGraphWitness, StructureError> {
    if !is_partial_half_graph(view).is_embedding() {
        return Err(StructureError::NotPartialHalfGraph);
    }
    let (order, nbs) = nested_order(view);
    let mut chain: Vec<usize> = Vec::new();
    for &i in &order {
        if nbs[i].is_empty() {
            break;
        }
        if chain.last().is_none_or(|&j| nbs[j] != nbs[i]) {
            chain.push(i);
        }
    }
    let t = chain.len();
    let pairs = (0..t)
        .map(|a| {
            let next: &[usize] = if a + 1 < t { &nbs[chain[a + 1]] } else { &[] };
            let w = subset(&nbs[chain[a]], next).unwrap();
            (view.left()[chain[a]], view.right()[w])
        })
        .collect();
    Ok(HalfGraphWitness { t, pairs })
}

/// Rank of the biadjacency matrix after deleting isolated vertices and
/// merging twins on both sides.
pub fn reduced_rank(view: &BipartiteView<'_>) -> usize {
    let mut rows: Vec<Vec<usize>> = (0..view.left().len())
        .map(|i| view.left_neighborhood(i))
        .filter(|nb| !nb.is_empty())
        .collect();
    rows.sort();
    rows.dedup();
    let mut cols: Vec<Vec<usize>> = (0..view.right().len())
        .map(|j| {
            let nb = view.right_neighborhood(j);
            nb.into_iter()
                .filter_map(|i| rows.binary_search(&view.left_neighborhood(i)).ok())
                .collect::<Vec<_>>()
        })
        .filter(|nb: &Vec<usize>| !nb.is_empty())
        .collect();
    cols.sort();
    cols.dedup();
    let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
    for (j, col) in cols.iter().enumerate() {
        for &i in col {
            m.set(i, j, true);
        }
    }
    gf2_rank(&m)
}

/// Maximum matching of the view as `(left, right)` graph-id pairs.
pub fn max_matching(view: &BipartiteView<'_>) -> Vec<(Vertex, Vertex)> {
    let adj: Vec<Vec<usize>> = (0..view.left().len())
        .map(|i| view.left_neighborhood(i))
        .collect();
    crate::matching::max_matching(view.right().len(), &adj)
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| r.map(|j| (view.left()[i], view.right()[j])))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueWitness {
    pub t: usize,
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

/// Largest balanced biclique `K_{t,t}` of a partial half-graph: the maximum
/// over `i` of `min(i, |N(l_i)|)` along the inclusion-descending order.
pub fn max_balanced_biclique_chain(
    view: &BipartiteView<'_>,
) -> Result<BicliqueWitness, StructureError> {
    if !is_partial_half_graph(view).is_embedding() {
        return Err(StructureError::NotPartialHalfGraph);
    }
    let (order, nbs) = nested_order(view);
    let mut best = BicliqueWitness {
        t: 0,
        left: Vec::new(),
        right: Vec::new(),
    };
    for (i, &l) in order.iter().enumerate() {
        let t = (i + 1).min(nbs[l].len());
        if t > best.t {
            best = BicliqueWitness {
                t,
                left: order[..t].iter().map(|&x| view.left()[x]).collect(),
                right: nbs[l][..t].iter().map(|&j| view.right()[j]).collect(),
            };
        }
    }
    Ok(best)
}

/// Largest order accepted by [`rank_connectivity`].
pub const RANK_CONNECTIVITY_LIMIT: usize = 20;

/// Minimum of `rk(X, V \ X)` over all `X` with `A ⊆ X ⊆ V \ B`.
pub fn rank_connectivity(
    g: &ColoredGraph,
    a: &[Vertex],
    b: &[Vertex],
) -> Result<usize, StructureError> {
    let n = g.n();
    if n > RANK_CONNECTIVITY_LIMIT {
        return Err(StructureError::TooLarge {
            n,
            limit: RANK_CONNECTIVITY_LIMIT,
        });
    }
    let mut side = vec![0u8; n];
    for &v in a {
        side[v] = 1;
    }
    for &v in b {
        if side[v] == 1 {
            return Err(StructureError::Overlap);
        }
        side[v] = 2;
    }
    let free: Vec<Vertex> = (0..n).filter(|&v| side[v] == 0).collect();
    let best = (0u32..1 << free.len())
        .into_par_iter()
        .map(|mask| {
            let mut x: Vec<Vertex> = a.to_vec();
            let mut y: Vec<Vertex> = b.to_vec();
            for (i, &v) in free.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x.push(v);
                } else {
                    y.push(v);
                }
            }
            gf2_rank(&Gf2Matrix::biadjacency(g, &x, &y))
        })
        .min()
        .unwrap_or(0);
    Ok(best)
}

/// A pair of parts whose cut is not a partial half-graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutViolation {
    pub step: usize,
    pub p: Vec<Vertex>,
    pub q: Vec<Vertex>,
    pub witness: HalfGraphCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub steps: usize,
    pub pairs_checked: usize,
    pub violations: Vec<CutViolation>,
}

fn audit_partition(g: &ColoredGraph, t: &Trigraph, step: usize) -> (usize, Vec<CutViolation>) {
    let parts: Vec<&[Vertex]> = t.live_parts().map(|p| t.members(p).unwrap()).collect();
    let mut checked = 0;
    let mut bad = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            checked += 1;
            let view = BipartiteView::new(g, parts[i], parts[j]).unwrap();
            let check = is_partial_half_graph(&view);
            if !check.is_embedding() {
                bad.push(CutViolation {
                    step,
                    p: parts[i].to_vec(),
                    q: parts[j].to_vec(),
                    witness: check,
                });
            }
        }
    }
    (checked, bad)
}

/// Checks that every pair of parts at every step of a width-1 sequence
/// induces a partial half-graph.
pub fn audit_red_cuts(
    g: &ColoredGraph,
    seq: &ContractionSequence,
) -> Result<AuditReport, StructureError> {
    let mut states = vec![Trigraph::from_graph(g)];
    let (report, _) = replay(g, seq, |_, t| states.push(t.clone()))?;
    if report.width > 1 {
        return Err(StructureError::WidthTooLarge(report.width));
    }
    let results: Vec<(usize, Vec<CutViolation>)> = states
        .par_iter()
        .enumerate()
        .map(|(step, t)| audit_partition(g, t, step))
        .collect();
    let mut out = AuditReport {
        steps: states.len(),
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for (c, v) in results {
        out.pairs_checked += c;
        out.violations.extend(v);
    }
    Ok(out)
}
