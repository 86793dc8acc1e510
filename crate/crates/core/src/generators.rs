//! Instance families: half-graphs, CFI pairs, subdivisions, cographs, random
//! twin-width-1 graphs and random chain graphs.
//!
//! Every random sampler draws from a `ChaCha8Rng` seeded with the given
//! 64-bit seed, so outputs are reproducible across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GeneratorError;
use crate::graph::{BipartiteView, ColoredGraph, Vertex};
use crate::modular::is_prime;
use crate::trigraph::{ContractionSequence, SequenceBuilder};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Half-graph `H_t` on `v_1..v_t` (ids `0..t`) and `w_1..w_t` (ids `t..2t`)
/// with `v_i ~ w_j` iff `i <= j`. Returns the graph and the two sides.
pub fn half_graph(t: usize) -> (ColoredGraph, Vec<Vertex>, Vec<Vertex>) {
    let edges = (0..t).flat_map(|i| (i..t).map(move |j| (i, t + j)));
    let g = ColoredGraph::from_edges_unchecked(2 * t, edges);
    (g, (0..t).collect(), (t..2 * t).collect())
}

/// Width-1 schedule for [`half_graph`]: for `i = t` down to `2`, merge the
/// `w`-part with `w_{i-1}`, then the `v`-part with `v_{i-1}`. The sequence
/// stops with the two sides as the final parts.
pub fn lemma51_schedule(t: usize) -> ContractionSequence {
    let mut b = SequenceBuilder::new(2 * t);
    for i in (2..=t).rev() {
        b.merge_vertices(t + i - 1, t + i - 2);
        b.merge_vertices(i - 1, i - 2);
    }
    b.finish()
}

/// A pair of CFI graphs over a cubic base.
#[derive(Debug, Clone)]
pub struct CfiPair {
    pub base: ColoredGraph,
    pub even: ColoredGraph,
    pub odd: ColoredGraph,
}

/// CFI construction over a connected 3-regular base graph.
///
/// Each base vertex `v` with incident edges `e_0, e_1, e_2` (ordered by the
/// other endpoint) becomes ten vertices: four inner vertices `m_{v,S}` for
/// the even subsets `S` of `{0,1,2}` and two endpoint vertices `a_{v,e}^0`,
/// `a_{v,e}^1` per incident edge. `m_{v,S}` is joined to `a_{v,e_i}^1` if
/// `i in S` and to `a_{v,e_i}^0` otherwise. For every base edge `vw` the
/// endpoints are joined as `a_{v,e}^b - a_{w,e}^b`; the odd graph twists the
/// first base edge to `a_{v,e}^b - a_{w,e}^{1-b}`. Both graphs are cubic with
/// `10 |V|` vertices and `15 |V|` edges.
pub fn cfi_pair(base: &ColoredGraph) -> Result<CfiPair, GeneratorError> {
    let n = base.n();
    if let Some(v) = base.vertices().find(|&v| base.degree(v) != 3) {
        return Err(GeneratorError::NotCubic(v));
    }
    if !base.is_connected() {
        return Err(GeneratorError::Disconnected);
    }
    const EVEN: [[bool; 3]; 4] = [
        [false, false, false],
        [true, true, false],
        [true, false, true],
        [false, true, true],
    ];
    let inner = |v: Vertex, s: usize| 10 * v + s;
    let endpoint = |v: Vertex, i: usize, b: usize| 10 * v + 4 + 2 * i + b;
    let slot = |v: Vertex, w: Vertex| base.neighbors(v).iter().position(|&x| x == w).unwrap();

    let mut gadget = Vec::new();
    for v in 0..n {
        for (s, subset) in EVEN.iter().enumerate() {
            for (i, &inside) in subset.iter().enumerate() {
                gadget.push((inner(v, s), endpoint(v, i, usize::from(inside))));
            }
        }
    }
    let build = |twist: bool| {
        let mut edges = gadget.clone();
        for (k, (v, w)) in base.edges().enumerate() {
            let (i, j) = (slot(v, w), slot(w, v));
            for b in 0..2 {
                let bw = if twist && k == 0 { 1 - b } else { b };
                edges.push((endpoint(v, i, b), endpoint(w, j, bw)));
            }
        }
        ColoredGraph::from_edges_unchecked(10 * n, edges)
    };
    Ok(CfiPair {
        base: base.clone(),
        even: build(false),
        odd: build(true),
    })
}

/// Complete graph on four vertices.
pub fn k4() -> ColoredGraph {
    ColoredGraph::from_edges_unchecked(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Complete bipartite graph `K_{3,3}`.
pub fn k33() -> ColoredGraph {
    ColoredGraph::from_edges_unchecked(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j))))
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> ColoredGraph {
    let edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
    ColoredGraph::from_edges_unchecked(10, edges)
}

/// Prism over an `r`-cycle (`r >= 3`): two `r`-cycles joined by a matching.
pub fn prism(r: usize) -> ColoredGraph {
    let edges = (0..r).flat_map(|i| [(i, (i + 1) % r), (r + i, r + (i + 1) % r), (i, r + i)]);
    ColoredGraph::from_edges_unchecked(2 * r, edges)
}

/// Möbius ladder on `2r` vertices: the circulant `C_{2r}(1, r)`, cubic for
/// `r >= 2`.
pub fn mobius_ladder(r: usize) -> ColoredGraph {
    let n = 2 * r;
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..r).map(|i| (i, i + r)));
    let mut norm: Vec<_> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    norm.sort_unstable();
    norm.dedup();
    ColoredGraph::from_edges_unchecked(n, norm)
}

/// Cubic base graph by name: `k4`, `k33`, `petersen`, `prism<r>`, `mobius<r>`.
pub fn cubic_base(name: &str) -> Result<ColoredGraph, GeneratorError> {
    let bad = || GeneratorError::Parameter(format!("unknown base graph '{name}'"));
    match name {
        "k4" => Ok(k4()),
        "k33" => Ok(k33()),
        "petersen" => Ok(petersen()),
        _ => {
            if let Some(r) = name.strip_prefix("prism") {
                let r: usize = r.parse().map_err(|_| bad())?;
                if r < 3 {
                    return Err(bad());
                }
                Ok(prism(r))
            } else if let Some(r) = name.strip_prefix("mobius") {
                let r: usize = r.parse().map_err(|_| bad())?;
                if r < 3 {
                    return Err(bad());
                }
                Ok(mobius_ladder(r))
            } else {
                Err(bad())
            }
        }
    }
}

/// `(s,<)`-subdivision. `order` lists the vertices from smallest to largest.
///
/// Original vertices keep their ids and colors. The edges, each written as
/// `(v, w)` with `v < w` in the order, are sorted by the order positions of
/// their endpoints; edge number `k` receives the path vertices
/// `n + k*s .. n + (k+1)*s`, listed from the `v` end. Path vertices get
/// color 0.
pub fn subdivide(
    g: &ColoredGraph,
    s: usize,
    order: &[Vertex],
) -> Result<ColoredGraph, GeneratorError> {
    let n = g.n();
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return Err(GeneratorError::Parameter("order is not a permutation".into()));
        }
        rank[v] = i;
    }
    if order.len() != n {
        return Err(GeneratorError::Parameter("order is not a permutation".into()));
    }
    if s == 0 {
        return Ok(g.clone());
    }
    let mut ordered: Vec<(Vertex, Vertex)> = g
        .edges()
        .map(|(a, b)| if rank[a] < rank[b] { (a, b) } else { (b, a) })
        .collect();
    ordered.sort_unstable_by_key(|&(a, b)| (rank[a], rank[b]));
    let mut edges = Vec::with_capacity(ordered.len() * (s + 1));
    for (k, &(v, w)) in ordered.iter().enumerate() {
        let first = n + k * s;
        edges.push((v, first));
        for i in 0..s - 1 {
            edges.push((first + i, first + i + 1));
        }
        edges.push((first + s - 1, w));
    }
    let mut colors = g.colors().to_vec();
    colors.resize(n + s * ordered.len(), 0);
    Ok(ColoredGraph::from_edges_unchecked(n + s * ordered.len(), edges)
        .with_colors(colors)
        .unwrap())
}

/// `2 * ceil(log2 n)`, the subdivision length used for CFI instances.
pub fn log_subdivision_length(n: usize) -> usize {
    2 * (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize
}

fn shuffle_labels(g: &ColoredGraph, rng: &mut ChaCha8Rng) -> ColoredGraph {
    let mut perm: Vec<Vertex> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// Random cograph. Starting from `n` single vertices, two random components
/// are repeatedly combined by disjoint union or join (each with probability
/// 1/2) until one remains; vertex ids are then shuffled.
pub fn random_cograph(n: usize, seed: u64) -> Result<ColoredGraph, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::Parameter("n must be at least 1".into()));
    }
    let mut rng = rng(seed);
    let mut pieces: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    let mut edges = Vec::new();
    while pieces.len() > 1 {
        let i = rng.gen_range(0..pieces.len());
        let a = pieces.swap_remove(i);
        let j = rng.gen_range(0..pieces.len());
        let b = pieces.swap_remove(j);
        if rng.gen_bool(0.5) {
            for &x in &a {
                for &y in &b {
                    edges.push((x, y));
                }
            }
        }
        let mut merged = a;
        merged.extend(b);
        pieces.push(merged);
    }
    let g = ColoredGraph::from_edges_unchecked(n, edges);
    Ok(shuffle_labels(&g, &mut rng))
}

/// Random graph of twin-width at most 1, grown by reversing contractions.
///
/// The process keeps a trigraph whose only red edge is `ab` and starts from a
/// single red edge. Each step either
/// * adds a near-twin `w` of an endpoint `x`: `w` copies the adjacency of `x`
///   outside `{a, b}` and picks its adjacency to `a` and `b` at random, or
/// * splits an endpoint `z` into `z1, z2` which inherit its black neighbors;
///   the other endpoint `r` becomes adjacent to exactly one of them and the
///   new red edge is `z1 z2`.
///
/// Contracting `w` into `x`, or `z1` with `z2`, undoes the step while keeping
/// a single red edge, so the reversed log is a 1-sequence. The final red edge
/// is resolved at random and vertex ids are shuffled. Splits are chosen with
/// probability 1/2.
pub fn random_tww1(n: usize, seed: u64) -> Result<ColoredGraph, GeneratorError> {
    random_tww1_with(n, seed, 0.5)
}

fn random_tww1_with(n: usize, seed: u64, split_prob: f64) -> Result<ColoredGraph, GeneratorError> {
    if n < 2 {
        return Err(GeneratorError::Parameter("n must be at least 2".into()));
    }
    let mut rng = rng(seed);
    let mut adj: Vec<Vec<bool>> = vec![vec![false; n]; n];
    let (mut a, mut b) = (0usize, 1usize);
    let mut next = 2;
    let link = |adj: &mut Vec<Vec<bool>>, x: usize, y: usize, on: bool| {
        adj[x][y] = on;
        adj[y][x] = on;
    };
    while next < n {
        let w = next;
        next += 1;
        if rng.gen_bool(split_prob) {
            let (z, r) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            for y in 0..w {
                if y != r && y != z && adj[z][y] {
                    link(&mut adj, w, y, true);
                }
            }
            // z keeps its id as z1, w becomes z2
            let (to_z, to_w) = if rng.gen_bool(0.5) { (true, false) } else { (false, true) };
            link(&mut adj, z, r, to_z);
            link(&mut adj, w, r, to_w);
            a = z;
            b = w;
        } else {
            let (x, y) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            for z in 0..w {
                if z != x && z != y && adj[x][z] {
                    link(&mut adj, w, z, true);
                }
            }
            link(&mut adj, w, x, rng.gen_bool(0.5));
            link(&mut adj, w, y, rng.gen_bool(0.5));
        }
    }
    link(&mut adj, a, b, rng.gen_bool(0.5));
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = edges.filter(|&(u, v)| adj[u][v]).collect();
    let g = ColoredGraph::from_edges_unchecked(n, edges);
    Ok(shuffle_labels(&g, &mut rng))
}

/// Random prime graph of twin-width 1 on `n >= 4` vertices.
///
/// Samples [`random_tww1`]-style graphs that favor splits (probability 0.9)
/// and rejects non-prime outputs; attempt `i` uses the seed `seed + i`.
pub fn random_prime_tww1(n: usize, seed: u64) -> Result<ColoredGraph, GeneratorError> {
    if n < 4 {
        return Err(GeneratorError::Parameter("prime graphs need n >= 4".into()));
    }
    for attempt in 0..100_000u64 {
        let g = random_tww1_with(n, seed.wrapping_add(attempt), 0.9)?;
        if is_prime(&g) {
            return Ok(g);
        }
    }
    Err(GeneratorError::Parameter(format!(
        "no prime sample found for n = {n}"
    )))
}

/// Complete multipartite graph with `parts` parts of `size` vertices each;
/// part `i` holds ids `i * size .. (i + 1) * size`.
pub fn complete_multipartite(parts: usize, size: usize) -> ColoredGraph {
    let n = parts * size;
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    ColoredGraph::from_edges_unchecked(n, edges.filter(|&(u, v)| u / size != v / size))
}

/// Disjoint union of complete multipartite graphs given as `(parts, size)`.
pub fn multipartite_union(components: &[(usize, usize)]) -> ColoredGraph {
    components
        .iter()
        .fold(ColoredGraph::empty(0), |acc, &(b, c)| {
            acc.disjoint_union(&complete_multipartite(b, c))
        })
}

/// Replaces vertex `x` of `host` by the module `module`. The other host
/// vertices keep their relative order and come first; every module vertex
/// inherits the host neighbors of `x`.
pub fn substitute(host: &ColoredGraph, x: Vertex, module: &ColoredGraph) -> ColoredGraph {
    let keep = host.n() - 1;
    let id = |v: Vertex| if v < x { v } else { v - 1 };
    let mut edges: Vec<(Vertex, Vertex)> = host
        .edges()
        .filter(|&(u, v)| u != x && v != x)
        .map(|(u, v)| (id(u), id(v)))
        .collect();
    for &y in host.neighbors(x) {
        edges.extend((0..module.n()).map(|m| (id(y), keep + m)));
    }
    edges.extend(module.edges().map(|(a, b)| (keep + a, keep + b)));
    ColoredGraph::from_edges_unchecked(keep + module.n(), edges)
}

/// Components `(parts, size)` of a multipartite union.
pub type Components = Vec<(usize, usize)>;

/// Pairs of distinct multisets of regular complete multipartite components
/// with the same degree and the same total order, at most `max_n`. Each
/// component is `(parts, size)` with degree `(parts - 1) * size`. The two
/// unions of a pair are non-isomorphic cographs that color refinement cannot
/// tell apart.
pub fn regular_union_pairs(max_n: usize) -> Vec<(Components, Components)> {
    fn grow(
        types: &[(usize, usize)],
        from: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in from..types.len() {
            let size = types[i].0 * types[i].1;
            if size <= left {
                cur.push(types[i]);
                grow(types, i, left - size, cur, out);
                cur.pop();
            }
        }
    }
    let mut pairs = Vec::new();
    for d in 1..max_n {
        let types: Vec<(usize, usize)> = (1..=d)
            .filter(|c| d % c == 0 && d + c <= max_n)
            .map(|c| (d / c + 1, c))
            .collect();
        let mut unions = Vec::new();
        grow(&types, 0, max_n, &mut Vec::new(), &mut unions);
        let order = |u: &Vec<(usize, usize)>| u.iter().map(|&(b, c)| b * c).sum::<usize>();
        for i in 0..unions.len() {
            for j in i + 1..unions.len() {
                if order(&unions[i]) == order(&unions[j]) {
                    pairs.push((unions[i].clone(), unions[j].clone()));
                }
            }
        }
    }
    pairs
}

/// How a [`Tww1Pair`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairFamily {
    /// Two unions from [`regular_union_pairs`], possibly both complemented.
    RegularUnion,
    /// One prime twin-width-1 host with either union of a regular pair
    /// substituted for the same vertex.
    Substitution,
    /// A random twin-width-1 graph and a degree-preserving edge switch of
    /// it that still has twin-width at most 1.
    EdgeSwitch,
}

impl PairFamily {
    pub const ALL: [PairFamily; 3] = [
        PairFamily::RegularUnion,
        PairFamily::Substitution,
        PairFamily::EdgeSwitch,
    ];
}

/// Two twin-width-1 graphs on the same number of vertices, each with shuffled
/// vertex ids. Non-isomorphism is not checked here.
#[derive(Debug, Clone)]
pub struct Tww1Pair {
    pub family: PairFamily,
    pub g: ColoredGraph,
    pub h: ColoredGraph,
}

fn edge_switch(g: &ColoredGraph, rng: &mut ChaCha8Rng) -> Option<ColoredGraph> {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    if edges.len() < 2 {
        return None;
    }
    let (a, b) = edges[rng.gen_range(0..edges.len())];
    let (mut c, mut d) = edges[rng.gen_range(0..edges.len())];
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut c, &mut d);
    }
    if [a, b].contains(&c) || [a, b].contains(&d) || g.has_edge(a, c) || g.has_edge(b, d) {
        return None;
    }
    let cd = (c.min(d), c.max(d));
    let mut next: Vec<(Vertex, Vertex)> =
        edges.into_iter().filter(|&e| e != (a, b) && e != cd).collect();
    next.push((a.min(c), a.max(c)));
    next.push((b.min(d), b.max(d)));
    Some(ColoredGraph::from_edges_unchecked(g.n(), next))
}

/// Samples a pair of twin-width-1 graphs with at most `max_n` vertices from
/// the given family. The regular families need `max_n >= 12` and
/// `max_n >= 15` respectively; edge switches need `max_n >= 6`.
pub fn random_tww1_pair(
    family: PairFamily,
    max_n: usize,
    seed: u64,
) -> Result<Tww1Pair, GeneratorError> {
    let mut rng = rng(seed);
    let (g, h) = match family {
        PairFamily::RegularUnion => {
            let pairs = regular_union_pairs(max_n);
            if pairs.is_empty() {
                return Err(GeneratorError::Parameter("regular unions need max_n >= 12".into()));
            }
            let (x, y) = &pairs[rng.gen_range(0..pairs.len())];
            let (g, h) = (multipartite_union(x), multipartite_union(y));
            if rng.gen_bool(0.5) {
                (g.complement(), h.complement())
            } else {
                (g, h)
            }
        }
        PairFamily::Substitution => {
            if max_n < 15 {
                return Err(GeneratorError::Parameter("substitution needs max_n >= 15".into()));
            }
            let pairs = regular_union_pairs(max_n - 3);
            let (x, y) = &pairs[rng.gen_range(0..pairs.len())];
            let (mut mg, mut mh) = (multipartite_union(x), multipartite_union(y));
            if rng.gen_bool(0.5) {
                (mg, mh) = (mg.complement(), mh.complement());
            }
            let host_n = rng.gen_range(4..=max_n + 1 - mg.n());
            let host = random_prime_tww1(host_n, rng.gen())?;
            let x = rng.gen_range(0..host_n);
            (substitute(&host, x, &mg), substitute(&host, x, &mh))
        }
        PairFamily::EdgeSwitch => {
            if max_n < 6 {
                return Err(GeneratorError::Parameter("edge switches need max_n >= 6".into()));
            }
            loop {
                let g = random_tww1(rng.gen_range(6..=max_n), rng.gen())?;
                if let Some(h) = edge_switch(&g, &mut rng) {
                    if crate::tww1::is_twinwidth_le1(&h).accepted && g != h {
                        break (g, h);
                    }
                }
            }
        }
    };
    Ok(Tww1Pair {
        family,
        g: shuffle_labels(&g, &mut rng),
        h: shuffle_labels(&h, &mut rng),
    })
}

/// Bipartite graph with nested neighborhoods, owned together with its sides.
#[derive(Debug, Clone)]
pub struct ChainGraph {
    pub graph: ColoredGraph,
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

impl ChainGraph {
    pub fn view(&self) -> BipartiteView<'_> {
        BipartiteView::new(&self.graph, &self.left, &self.right).unwrap()
    }
}

/// Random chain graph with `a` left vertices (ids `0..a`) and `b` right
/// vertices (ids `a..a+b`). Every vertex draws a uniform score in `[0, 1)`;
/// left `l` and right `r` are adjacent iff `p_l + q_r >= 2 (1 - density)`,
/// so neighborhoods are nested and `density` is the edge probability of a
/// uniform pair for `density = 0.5`.
pub fn random_chain_graph(
    a: usize,
    b: usize,
    density: f64,
    seed: u64,
) -> Result<ChainGraph, GeneratorError> {
    if a == 0 || b == 0 {
        return Err(GeneratorError::Parameter("both sides need a vertex".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(GeneratorError::Parameter("density must lie in [0, 1]".into()));
    }
    let mut rng = rng(seed);
    let p: Vec<f64> = (0..a).map(|_| rng.gen()).collect();
    let q: Vec<f64> = (0..b).map(|_| rng.gen()).collect();
    let threshold = 2.0 * (1.0 - density);
    let mut edges = Vec::new();
    for (l, &pl) in p.iter().enumerate() {
        for (r, &qr) in q.iter().enumerate() {
            if pl + qr >= threshold {
                edges.push((l, a + r));
            }
        }
    }
    Ok(ChainGraph {
        graph: ColoredGraph::from_edges_unchecked(a + b, edges),
        left: (0..a).collect(),
        right: (a..a + b).collect(),
    })
}
