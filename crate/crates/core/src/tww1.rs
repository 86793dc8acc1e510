//! Canonical contraction sequences of prime twin-width-1 graphs, the lex-min
//! invariant built from them, isomorphism reconstruction, recognition of
//! twin-width at most 1 and a canonical form for all such graphs.
//!
//! The procedure starts by contracting a vertex pair `u, v`. At every stage
//! the trigraph has a single red edge between the `u`-part and the `v`-part;
//! every other part is an original vertex. A red step contracts the two
//! endpoints, which must leave exactly one vertex `w` seeing only one of them;
//! `w` becomes the new `v`-part. A contraction phase then folds in all
//! near-twins: vertices whose contraction into an endpoint only deletes them.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CanonError;
use crate::graph::{Color, ColoredGraph, Vertex};
use crate::modular::{mod_tree, module_quotient, ModLabel, ModTree};
use crate::trigraph::{ContractionSequence, EdgeKind, PartId, SequenceBuilder, Trigraph};

/// Endpoint of the red edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    ToU,
    ToV,
}

/// Tokens of a contraction string. The derived order ranks kinds as
/// `Init < PhaseCounts < RedStep < Leaf`, then compares fields.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CsToken {
    Init { edge: bool, cu: Color, cv: Color },
    /// Near-twin class sizes of one contraction round, laid out side-major
    /// (`u` then `v`), then by color in palette order, then by the type pair
    /// `(nonedge,nonedge), (nonedge,edge), (edge,nonedge), (edge,edge)` of
    /// the vertex towards the `u`- and `v`-part.
    PhaseCounts(Vec<u32>),
    RedStep { side: Side, color: Color },
    Leaf(Color),
}

/// Description of a canonical contraction sequence, or `Failure`, which
/// compares greater than every sequence. The palette fixes the meaning of the
/// color positions in [`CsToken::PhaseCounts`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CsString {
    Sequence {
        palette: Vec<Color>,
        tokens: Vec<CsToken>,
    },
    Failure,
}

impl CsString {
    pub fn is_failure(&self) -> bool {
        matches!(self, CsString::Failure)
    }

    pub fn tokens(&self) -> &[CsToken] {
        match self {
            CsString::Sequence { tokens, .. } => tokens,
            CsString::Failure => &[],
        }
    }
}

/// Selects one near-twin class: the adjacency of `w` to the `u`- and
/// `v`-part, the endpoint `x` it would be contracted into, and its color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NearTwinQuery {
    pub u_edge: bool,
    pub v_edge: bool,
    pub x: Side,
    pub color: Color,
}

/// Near-twins in a trigraph whose only red edge is `uv`: parts `w` other
/// than `u, v` whose members all have color `q.color`, with the requested
/// adjacency to `u` and `v`, such that contracting `w` into `q.x` yields the
/// trigraph with `w` deleted.
pub fn near_twins(
    g: &ColoredGraph,
    t: &Trigraph,
    u: PartId,
    v: PartId,
    q: NearTwinQuery,
) -> Result<Vec<PartId>, CanonError> {
    let red = t.edges_of_kind(EdgeKind::Red);
    if red != vec![(u.min(v), u.max(v))] {
        return Err(CanonError::InvariantViolation(format!(
            "expected the single red edge {u}-{v}, found {red:?}"
        )));
    }
    let x = match q.x {
        Side::ToU => u,
        Side::ToV => v,
    };
    let mut out = Vec::new();
    for w in t.live_parts() {
        if w == u || w == v {
            continue;
        }
        let members = t.members(w).unwrap();
        if members.iter().any(|&m| g.color(m) != q.color) {
            continue;
        }
        if t.edge(u, w).is_some() != q.u_edge || t.edge(v, w).is_some() != q.v_edge {
            continue;
        }
        let safe = t.live_parts().all(|z| {
            if z == w || z == x {
                return true;
            }
            match t.edge(x, z) {
                Some(EdgeKind::Red) => true,
                kind => t.edge(w, z) == kind,
            }
        });
        if safe {
            out.push(w);
        }
    }
    Ok(out)
}

/// One step of a successful run.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Event {
    /// Contract the `u`- and `v`-part; `w` becomes the new `v`-part.
    RedStep(Vertex),
    /// Contract the listed vertices into the given endpoint.
    Class(Side, Vec<Vertex>),
}

/// A successful run of the procedure from `(u, v)`.
#[derive(Debug, Clone)]
pub struct CsRun {
    pub string: CsString,
    u: Vertex,
    v: Vertex,
    events: Vec<Event>,
}

impl CsRun {
    /// Vertices in the order the run reaches them: `u`, `v`, then each red
    /// step pivot and near-twin in event order.
    pub fn vertex_order(&self) -> Vec<Vertex> {
        let mut order = vec![self.u];
        if self.v != self.u {
            order.push(self.v);
        }
        for e in &self.events {
            match e {
                Event::RedStep(w) => order.push(*w),
                Event::Class(_, members) => order.extend(members),
            }
        }
        order
    }

    /// The contraction sequence performed by the run, ending with a single
    /// part, as merges of the parts containing the named vertices.
    pub fn vertex_merges(&self) -> Vec<(Vertex, Vertex)> {
        if self.v == self.u {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut v_rep = self.v;
        for e in &self.events {
            match e {
                Event::RedStep(w) => {
                    out.push((self.u, v_rep));
                    v_rep = *w;
                }
                Event::Class(side, members) => {
                    let x = if *side == Side::ToU { self.u } else { v_rep };
                    out.extend(members.iter().map(|&m| (x, m)));
                }
            }
        }
        out.push((self.u, v_rep));
        out
    }

    /// [`CsRun::vertex_merges`] as a sequence over part ids.
    pub fn sequence(&self, n: usize) -> ContractionSequence {
        let mut b = SequenceBuilder::new(n);
        for (x, y) in self.vertex_merges() {
            b.merge_vertices(x, y);
        }
        b.finish()
    }
}

fn type_index(u_edge: bool, v_edge: bool) -> usize {
    2 * usize::from(u_edge) + usize::from(v_edge)
}

/// Runs the procedure from `(u, v)`; `None` means failure.
pub fn cs_run(g: &ColoredGraph, u: Vertex, v: Vertex) -> Option<CsRun> {
    let n = g.n();
    let palette = g.palette();
    if n == 1 {
        return Some(CsRun {
            string: CsString::Sequence {
                palette,
                tokens: vec![CsToken::Leaf(g.color(0))],
            },
            u: 0,
            v: 0,
            events: Vec::new(),
        });
    }
    assert!(u != v && u < n && v < n, "cs needs two distinct vertices");
    let color_index: Vec<usize> = g
        .colors()
        .iter()
        .map(|c| palette.binary_search(c).unwrap())
        .collect();
    let width = 8 * palette.len();
    let rows = g.rows();
    let mut rest = FixedBitSet::with_capacity(n);
    rest.insert_range(..);
    rest.set(u, false);
    rest.set(v, false);
    let mut left = n - 2;
    let mut tokens = vec![CsToken::Init {
        edge: g.has_edge(u, v),
        cu: g.color(u),
        cv: g.color(v),
    }];
    let mut events = Vec::new();
    let mut v_rep = v;
    let mut scratch = FixedBitSet::with_capacity(n);

    while left > 0 {
        scratch.clone_from(&rows[u]);
        scratch.symmetric_difference_with(&rows[v_rep]);
        scratch.intersect_with(&rest);
        let mut pivots = scratch.ones();
        let w = pivots.next()?;
        if pivots.next().is_some() {
            return None;
        }
        let side = if rows[v_rep].contains(w) {
            Side::ToV
        } else {
            Side::ToU
        };
        tokens.push(CsToken::RedStep {
            side,
            color: g.color(w),
        });
        events.push(Event::RedStep(w));
        rest.set(w, false);
        left -= 1;
        v_rep = w;

        let mut first = true;
        loop {
            let mut counts = vec![0u32; width];
            let mut classes: Vec<Vec<Vertex>> = vec![Vec::new(); width];
            for w in rest.ones() {
                let ue = rows[u].contains(w);
                let ve = rows[v_rep].contains(w);
                let cell = 4 * color_index[w] + type_index(ue, ve);
                let mut shared = false;
                for (s, x) in [(0, u), (1, v_rep)] {
                    scratch.clone_from(&rows[w]);
                    scratch.symmetric_difference_with(&rows[x]);
                    scratch.intersect_with(&rest);
                    scratch.set(w, false);
                    if scratch.is_clear() {
                        let idx = s * 4 * palette.len() + cell;
                        counts[idx] += 1;
                        if !shared {
                            classes[idx].push(w);
                        }
                        shared = true;
                    }
                }
            }
            let empty = counts.iter().all(|&c| c == 0);
            if empty && !first {
                break;
            }
            tokens.push(CsToken::PhaseCounts(counts));
            if empty {
                break;
            }
            first = false;
            for (idx, members) in classes.into_iter().enumerate() {
                if members.is_empty() {
                    continue;
                }
                for &m in &members {
                    rest.set(m, false);
                    left -= 1;
                }
                let side = if idx < 4 * palette.len() {
                    Side::ToU
                } else {
                    Side::ToV
                };
                events.push(Event::Class(side, members));
            }
        }
    }
    Some(CsRun {
        string: CsString::Sequence { palette, tokens },
        u,
        v,
        events,
    })
}

/// The contraction string of `g` started at `(u, v)`.
pub fn cs(g: &ColoredGraph, u: Vertex, v: Vertex) -> CsString {
    cs_run(g, u, v).map_or(CsString::Failure, |r| r.string)
}

/// Whether `u, v` differ on exactly one other vertex; every other start
/// fails immediately.
fn viable_start(g: &ColoredGraph, u: Vertex, v: Vertex) -> bool {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j, mut diff) = (0, 0, 0);
    while i < a.len() || j < b.len() {
        let x = a.get(i).copied().unwrap_or(usize::MAX);
        let y = b.get(j).copied().unwrap_or(usize::MAX);
        let z = x.min(y);
        if x == y {
            i += 1;
            j += 1;
            continue;
        }
        if x == z {
            i += 1;
        } else {
            j += 1;
        }
        if z != u && z != v {
            diff += 1;
            if diff > 1 {
                return false;
            }
        }
    }
    diff == 1
}

/// Lexicographically least contraction string over all ordered starting
/// pairs, with the least pair attaining it (`None` if all fail).
pub fn cs_invariant_with_pair(g: &ColoredGraph) -> (CsString, Option<(Vertex, Vertex)>) {
    let n = g.n();
    if n == 1 {
        return (cs(g, 0, 0), Some((0, 0)));
    }
    if n == 2 {
        return [(0, 1), (1, 0)]
            .into_iter()
            .map(|(u, v)| (cs(g, u, v), Some((u, v))))
            .min()
            .unwrap();
    }
    (0..n)
        .into_par_iter()
        .flat_map_iter(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && viable_start(g, u, v))
        .filter_map(|(u, v)| cs_run(g, u, v).map(|r| (r.string, Some((u, v)))))
        .min()
        .unwrap_or((CsString::Failure, None))
}

/// Lexicographically least contraction string over all ordered starting pairs.
pub fn cs_invariant(g: &ColoredGraph) -> CsString {
    cs_invariant_with_pair(g).0
}

/// Isomorphism from `g` to `h` mapping `u -> u2` and `v -> v2`, read off two
/// runs with equal strings and checked before it is returned.
pub fn reconstruct_isomorphism(
    g: &ColoredGraph,
    u: Vertex,
    v: Vertex,
    h: &ColoredGraph,
    u2: Vertex,
    v2: Vertex,
) -> Result<Vec<Vertex>, CanonError> {
    for (graph, x) in [(g, u), (g, v), (h, u2), (h, v2)] {
        if x >= graph.n() {
            return Err(CanonError::BadVertex(x));
        }
    }
    if g.n() != h.n() {
        return Err(CanonError::Mismatch);
    }
    let rg = cs_run(g, u, v).ok_or(CanonError::Mismatch)?;
    let rh = cs_run(h, u2, v2).ok_or(CanonError::Mismatch)?;
    if rg.string != rh.string {
        return Err(CanonError::Mismatch);
    }
    let (og, oh) = (rg.vertex_order(), rh.vertex_order());
    if og.len() != g.n() || oh.len() != h.n() {
        return Err(CanonError::InvariantViolation(
            "run does not reach every vertex".into(),
        ));
    }
    let mut map = vec![0; g.n()];
    for (&a, &b) in og.iter().zip(&oh) {
        map[a] = b;
    }
    if g.is_isomorphism(h, &map) {
        Ok(map)
    } else {
        Err(CanonError::InvariantViolation(
            "reconstructed map is not an isomorphism".into(),
        ))
    }
}

/// Outcome of [`is_twinwidth_le1`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tww1Recognition {
    pub accepted: bool,
    /// A complete sequence of width at most 1 when accepted.
    pub certificate: Option<ContractionSequence>,
}

/// Any successful run on `q`, trying viable starts in order.
fn any_run(q: &ColoredGraph) -> Option<CsRun> {
    let n = q.n();
    (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && viable_start(q, u, v))
        .find_map(|(u, v)| cs_run(q, u, v))
}

fn certify(g: &ColoredGraph, node: &ModTree, b: &mut SequenceBuilder) -> bool {
    for child in &node.children {
        if !certify(g, child, b) {
            return false;
        }
    }
    let reps = node.representatives();
    match node.label {
        ModLabel::Single => true,
        ModLabel::Parallel | ModLabel::Series => {
            for &r in &reps[1..] {
                b.merge_vertices(reps[0], r);
            }
            true
        }
        ModLabel::Prime => {
            let modules: Vec<Vec<Vertex>> = node.children.iter().map(|c| c.module.clone()).collect();
            let (sub, _) = g.induced_subgraph(&node.module);
            let local: Vec<Vec<Vertex>> = modules
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|x| node.module.binary_search(x).unwrap())
                        .collect()
                })
                .collect();
            let q = module_quotient(&sub, &local);
            match any_run(&q) {
                Some(run) => {
                    for (x, y) in run.vertex_merges() {
                        b.merge_vertices(reps[x], reps[y]);
                    }
                    true
                }
                None => false,
            }
        }
    }
}

/// Decides twin-width at most 1 through the modular decomposition: accepted
/// iff every prime quotient admits a successful run. Accepted graphs come
/// with a complete sequence of width at most 1.
pub fn is_twinwidth_le1(g: &ColoredGraph) -> Tww1Recognition {
    if g.n() == 0 {
        return Tww1Recognition {
            accepted: true,
            certificate: Some(ContractionSequence::default()),
        };
    }
    let tree = mod_tree(g);
    let mut b = SequenceBuilder::new(g.n());
    if certify(g, &tree, &mut b) {
        Tww1Recognition {
            accepted: true,
            certificate: Some(b.finish()),
        }
    } else {
        Tww1Recognition {
            accepted: false,
            certificate: None,
        }
    }
}

/// Canonical encoding and the vertex order realizing it: `order[i]` is the
/// vertex placed at position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub encoding: Vec<u8>,
    pub order: Vec<Vertex>,
}

impl CanonicalForm {
    /// The input relabeled into canonical position order.
    pub fn canonical_graph(&self, g: &ColoredGraph) -> ColoredGraph {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        g.relabel(&pos)
    }

    pub fn hex(&self) -> String {
        self.encoding.iter().map(|b| format!("{b:02x}")).collect()
    }
}

const TAG_SINGLE: u8 = 0;
const TAG_PARALLEL: u8 = 1;
const TAG_SERIES: u8 = 2;
const TAG_PRIME: u8 = 3;

fn put_u32(out: &mut Vec<u8>, x: usize) {
    out.extend_from_slice(&(x as u32).to_le_bytes());
}

fn put_block(out: &mut Vec<u8>, block: &[u8]) {
    put_u32(out, block.len());
    out.extend_from_slice(block);
}

fn encode(g: &ColoredGraph, node: &ModTree) -> Result<(Vec<u8>, Vec<Vertex>), CanonError> {
    if node.label == ModLabel::Single {
        let v = node.module[0];
        let mut out = vec![TAG_SINGLE];
        out.extend_from_slice(&g.color(v).to_le_bytes());
        return Ok((out, vec![v]));
    }
    let children = node
        .children
        .iter()
        .map(|c| encode(g, c))
        .collect::<Result<Vec<_>, _>>()?;
    if node.label != ModLabel::Prime {
        let mut sorted: Vec<&(Vec<u8>, Vec<Vertex>)> = children.iter().collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let tag = if node.label == ModLabel::Parallel {
            TAG_PARALLEL
        } else {
            TAG_SERIES
        };
        let mut out = vec![tag];
        put_u32(&mut out, sorted.len());
        let mut order = Vec::with_capacity(node.module.len());
        for (enc, ord) in sorted {
            put_block(&mut out, enc);
            order.extend(ord);
        }
        return Ok((out, order));
    }
    let mut distinct: Vec<&Vec<u8>> = children.iter().map(|c| &c.0).collect();
    distinct.sort();
    distinct.dedup();
    let ranks: Vec<u64> = children
        .iter()
        .map(|c| distinct.binary_search(&&c.0).unwrap() as u64)
        .collect();
    let reps = node.representatives();
    let (q, _) = g.induced_subgraph(&reps);
    let q = q.with_colors(ranks.clone()).unwrap();
    let (string, pair) = cs_invariant_with_pair(&q);
    let (a, b) = pair.ok_or(CanonError::NotTwinWidthOne)?;
    debug_assert!(!string.is_failure());
    let run = cs_run(&q, a, b).ok_or_else(|| {
        CanonError::InvariantViolation("least starting pair failed on rerun".into())
    })?;
    let qorder = run.vertex_order();
    if qorder.len() != q.n() {
        return Err(CanonError::InvariantViolation(
            "run does not reach every module".into(),
        ));
    }
    let k = q.n();
    let mut out = vec![TAG_PRIME];
    put_u32(&mut out, k);
    put_u32(&mut out, distinct.len());
    for enc in &distinct {
        put_block(&mut out, enc);
    }
    for &x in &qorder {
        put_u32(&mut out, ranks[x] as usize);
    }
    let mut bits = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            bits.push(q.has_edge(qorder[i], qorder[j]));
        }
    }
    for chunk in bits.chunks(8) {
        out.push(chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << i)));
    }
    let mut order = Vec::with_capacity(node.module.len());
    for &x in &qorder {
        order.extend(&children[x].1);
    }
    Ok((out, order))
}

/// Canonical form of a colored graph of twin-width at most 1: equal
/// encodings exactly for isomorphic inputs.
pub fn canonical_form(g: &ColoredGraph) -> Result<CanonicalForm, CanonError> {
    if g.n() == 0 {
        return Ok(CanonicalForm {
            encoding: vec![TAG_PARALLEL, 0, 0, 0, 0],
            order: Vec::new(),
        });
    }
    let (encoding, order) = encode(g, &mod_tree(g))?;
    Ok(CanonicalForm { encoding, order })
}
