//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's algorithms; only `ColoredGraph` is used as a container.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinwl::{ColoredGraph, Vertex};

/// Isomorphism-invariant summary used to bucket graphs before exact tests.
type Invariant = Vec<(usize, Vec<usize>, usize)>;

/// A strong module with its label and the modules of its children.
pub type ModuleNode = (Vec<Vertex>, &'static str, Vec<Vec<Vertex>>);

/// Sorted `(color, count)` pairs.
pub type Histogram = Vec<(usize, usize)>;

/// Adjacency rows as bit masks (graphs with at most 32 vertices).
pub fn masks(g: &ColoredGraph) -> Vec<u32> {
    assert!(g.n() <= 32);
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> ColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    ColoredGraph::from_edges_unchecked(n, edges)
}

pub fn random_permutation(n: usize, seed: u64) -> Vec<Vertex> {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<Vertex> = (0..n).collect();
    p.shuffle(&mut rng);
    p
}

/// Red degree of the partition into the given part masks, by definition: two
/// parts are joined red when some but not all cross pairs are edges.
pub fn partition_red_degree(adj: &[u32], parts: &[u32]) -> usize {
    let mut red = vec![0usize; parts.len()];
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let (a, b) = (parts[i], parts[j]);
            let mut edges = 0u32;
            let mut bits = a;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                edges += (adj[v as usize] & b).count_ones();
            }
            let full = a.count_ones() * b.count_ones();
            if edges != 0 && edges != full {
                red[i] += 1;
                red[j] += 1;
            }
        }
    }
    red.into_iter().max().unwrap_or(0)
}

/// Twin-width by exhaustive search over every contraction sequence,
/// memoized on the (sorted) partition reached.
pub fn naive_twinwidth(g: &ColoredGraph) -> usize {
    fn go(adj: &[u32], parts: Vec<u32>, memo: &mut HashMap<Vec<u32>, usize>) -> usize {
        if parts.len() <= 1 {
            return 0;
        }
        if let Some(&w) = memo.get(&parts) {
            return w;
        }
        let mut best = usize::MAX;
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let mut next: Vec<u32> = parts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, &p)| p)
                    .collect();
                next.push(parts[i] | parts[j]);
                next.sort_unstable();
                let here = partition_red_degree(adj, &next);
                if here >= best {
                    continue;
                }
                best = best.min(here.max(go(adj, next, memo)));
            }
        }
        memo.insert(parts, best);
        best
    }
    let adj = masks(g);
    let parts: Vec<u32> = (0..g.n()).map(|v| 1u32 << v).collect();
    go(&adj, parts, &mut HashMap::new())
}

/// Width of a sequence of merges given as vertex pairs, by definition.
pub fn sequence_width_by_definition(g: &ColoredGraph, merges: &[(Vertex, Vertex)]) -> usize {
    let adj = masks(g);
    let mut parts: Vec<u32> = (0..g.n()).map(|v| 1u32 << v).collect();
    let mut width = 0;
    for &(a, b) in merges {
        let pa = parts.iter().position(|&p| p >> a & 1 == 1).unwrap();
        let pb = parts.iter().position(|&p| p >> b & 1 == 1).unwrap();
        assert_ne!(pa, pb);
        let merged = parts[pa] | parts[pb];
        parts.retain(|&p| p & merged == 0);
        parts.push(merged);
        width = width.max(partition_red_degree(&adj, &parts));
    }
    width
}

/// Backtracking isomorphism search in the style of VF2: vertices of `g` are
/// mapped in BFS order, each candidate must match color and degree and be
/// consistent with all earlier pairs.
pub fn brute_isomorphism(g: &ColoredGraph, h: &ColoredGraph) -> Option<Vec<Vertex>> {
    let n = g.n();
    if h.n() != n || h.m() != g.m() {
        return None;
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut i = order.len();
        order.push(s);
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    fn extend(
        g: &ColoredGraph,
        h: &ColoredGraph,
        order: &[Vertex],
        depth: usize,
        map: &mut Vec<Option<Vertex>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..h.n() {
            if used[w] || h.color(w) != g.color(v) || h.degree(w) != g.degree(v) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&x| g.has_edge(v, x) == h.has_edge(w, map[x].unwrap()));
            if !consistent {
                continue;
            }
            map[v] = Some(w);
            used[w] = true;
            if extend(g, h, order, depth + 1, map, used) {
                return true;
            }
            map[v] = None;
            used[w] = false;
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    extend(g, h, &order, 0, &mut map, &mut used).then(|| map.into_iter().map(Option::unwrap).collect())
}

/// Checks that `map` is a color-preserving isomorphism from `g` to `h`.
pub fn is_isomorphism(g: &ColoredGraph, h: &ColoredGraph, map: &[Vertex]) -> bool {
    let n = g.n();
    if h.n() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &w in map {
        if w >= n || hit[w] {
            return false;
        }
        hit[w] = true;
    }
    (0..n).all(|v| g.color(v) == h.color(map[v]))
        && (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == h.has_edge(map[u], map[v])))
}

fn vertex_invariant(g: &ColoredGraph) -> Invariant {
    let mut inv: Vec<(usize, Vec<usize>, usize)> = (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            let nb = g.neighbors(v);
            let tri = nb
                .iter()
                .enumerate()
                .map(|(i, &a)| nb[i + 1..].iter().filter(|&&b| g.has_edge(a, b)).count())
                .sum();
            (g.degree(v), nd, tri)
        })
        .collect();
    inv.sort();
    inv
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// built by adding a vertex with every possible neighborhood to each class
/// on `n - 1` vertices and keeping one graph per class.
pub fn all_graphs(n: usize) -> Vec<ColoredGraph> {
    if n == 0 {
        return vec![ColoredGraph::empty(0)];
    }
    let smaller = all_graphs(n - 1);
    let mut buckets: HashMap<Invariant, Vec<ColoredGraph>> = HashMap::new();
    let mut out = Vec::new();
    for base in &smaller {
        for nb in 0u32..1 << (n - 1) {
            let mut edges: Vec<(Vertex, Vertex)> = base.edges().collect();
            edges.extend((0..n - 1).filter(|&v| nb >> v & 1 == 1).map(|v| (v, n - 1)));
            let g = ColoredGraph::from_edges_unchecked(n, edges);
            let bucket = buckets.entry(vertex_invariant(&g)).or_default();
            if bucket.iter().all(|h| brute_isomorphism(&g, h).is_none()) {
                bucket.push(g.clone());
                out.push(g);
            }
        }
    }
    out
}

pub fn is_connected_brute(g: &ColoredGraph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let adj = masks(g);
    let mut seen = 1u32;
    loop {
        let mut next = seen;
        for (v, &row) in adj.iter().enumerate() {
            if seen >> v & 1 == 1 {
                next |= row;
            }
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen.count_ones() as usize == g.n()
}

/// Whether `set` induces a connected subgraph (of `adj` restricted to it).
fn connected_within(adj: &[u32], set: u32) -> bool {
    let start = set.trailing_zeros();
    let mut seen = 1u32 << start;
    loop {
        let mut next = seen;
        let mut bits = seen;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            next |= adj[v as usize] & set;
        }
        if next == seen {
            return seen == set;
        }
        seen = next;
    }
}

/// Strong modules of `g` with their decomposition labels and children, as
/// `(module, label, children)` with vertex lists sorted. Labels use the
/// strings `single`, `parallel`, `series` and `prime`.
pub fn brute_strong_modules(g: &ColoredGraph) -> Vec<ModuleNode> {
    let n = g.n();
    let adj = masks(g);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let is_module = |m: u32| {
        (0..n).all(|x| m >> x & 1 == 1 || adj[x] & m == 0 || adj[x] & m == m)
    };
    let modules: Vec<u32> = (1..=full).filter(|&m| is_module(m)).collect();
    let overlaps = |a: u32, b: u32| a & b != 0 && a & b != a && a & b != b;
    let strong: Vec<u32> = modules
        .iter()
        .copied()
        .filter(|&m| modules.iter().all(|&o| !overlaps(m, o)))
        .collect();
    let bits = |m: u32| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
    let comp: Vec<u32> = adj.iter().enumerate().map(|(v, &a)| !a & full & !(1 << v)).collect();
    strong
        .iter()
        .map(|&m| {
            let children: Vec<u32> = strong
                .iter()
                .copied()
                .filter(|&c| c != m && c & m == c)
                .filter(|&c| !strong.iter().any(|&d| d != c && d != m && d & m == d && c & d == c))
                .collect();
            let label = if m.count_ones() == 1 {
                "single"
            } else if !connected_within(&adj, m) {
                "parallel"
            } else if !connected_within(&comp, m) {
                "series"
            } else {
                "prime"
            };
            let mut ch: Vec<Vec<Vertex>> = children.into_iter().map(bits).collect();
            ch.sort();
            (bits(m), label, ch)
        })
        .collect()
}

/// Whether the bipartite cut between `left` and `right` has nested
/// neighborhoods, by looking for two crossing edges without their diagonals.
pub fn brute_partial_half_graph(g: &ColoredGraph, left: &[Vertex], right: &[Vertex]) -> bool {
    for &l1 in left {
        for &l2 in left {
            for &r1 in right {
                for &r2 in right {
                    if g.has_edge(l1, r1)
                        && g.has_edge(l2, r2)
                        && !g.has_edge(l1, r2)
                        && !g.has_edge(l2, r1)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Largest `t` with `v_1..v_t` on the left and `w_1..w_t` on the right such
/// that `v_i ~ w_j` iff `i <= j`, by trying every sequence of left vertices.
pub fn brute_max_half_graph(g: &ColoredGraph, left: &[Vertex], right: &[Vertex]) -> usize {
    fn grow(g: &ColoredGraph, left: &[Vertex], right: &[Vertex], seq: &mut Vec<Vertex>, best: &mut usize) {
        let t = seq.len();
        if t > *best {
            // w_j must see v_1..v_j and miss v_{j+1}..v_t
            let ok = (0..t).all(|j| {
                right.iter().any(|&w| {
                    (0..t).all(|i| g.has_edge(seq[i], w) == (i <= j))
                })
            });
            if ok {
                *best = t;
            } else {
                return;
            }
        }
        for &v in left {
            if !seq.contains(&v) {
                seq.push(v);
                grow(g, left, right, seq, best);
                seq.pop();
            }
        }
    }
    let mut best = 0;
    grow(g, left, right, &mut Vec::new(), &mut best);
    best
}

/// Largest `t` with a complete bipartite `K_{t,t}` across the cut.
pub fn brute_max_biclique(g: &ColoredGraph, left: &[Vertex], right: &[Vertex]) -> usize {
    let mut best = 0;
    for mask in 1u32..1 << left.len() {
        let chosen: Vec<Vertex> = (0..left.len()).filter(|&i| mask >> i & 1 == 1).map(|i| left[i]).collect();
        let common = right.iter().filter(|&&r| chosen.iter().all(|&l| g.has_edge(l, r))).count();
        best = best.max(chosen.len().min(common));
    }
    best
}

/// Maximum matching across the cut by exhaustive recursion.
pub fn brute_max_matching(g: &ColoredGraph, left: &[Vertex], right: &[Vertex]) -> usize {
    fn go(g: &ColoredGraph, left: &[Vertex], right: &[Vertex], i: usize, used: u32, memo: &mut HashMap<(usize, u32), usize>) -> usize {
        if i == left.len() {
            return 0;
        }
        if let Some(&r) = memo.get(&(i, used)) {
            return r;
        }
        let mut best = go(g, left, right, i + 1, used, memo);
        for (j, &r) in right.iter().enumerate() {
            if used >> j & 1 == 0 && g.has_edge(left[i], r) {
                best = best.max(1 + go(g, left, right, i + 1, used | 1 << j, memo));
            }
        }
        memo.insert((i, used), best);
        best
    }
    go(g, left, right, 0, 0, &mut HashMap::new())
}

/// Rank over GF(2) of the 0/1 matrix given by rows of booleans.
pub fn rank_gf2(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn cut_rank(g: &ColoredGraph, a: &[Vertex], b: &[Vertex]) -> usize {
    rank_gf2(a.iter().map(|&x| b.iter().map(|&y| g.has_edge(x, y)).collect()).collect())
}

/// Rank-connectivity by enumerating every separating cut.
pub fn brute_kappa(g: &ColoredGraph, a: &[Vertex], b: &[Vertex]) -> usize {
    let free: Vec<Vertex> = g.vertices().filter(|v| !a.contains(v) && !b.contains(v)).collect();
    (0u32..1 << free.len())
        .map(|mask| {
            let mut x = a.to_vec();
            let mut y = b.to_vec();
            for (i, &v) in free.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x.push(v);
                } else {
                    y.push(v);
                }
            }
            cut_rank(g, &x, &y)
        })
        .min()
        .unwrap()
}

/// Stable color refinement run jointly on both graphs from the given
/// colorings, with color ids shared between the two.
pub fn joint_refine(g: &ColoredGraph, h: &ColoredGraph, start: [Vec<usize>; 2]) -> [Vec<usize>; 2] {
    let graphs = [g, h];
    let mut colors = start;
    let mut classes = 0;
    loop {
        let sigs: Vec<Vec<(usize, Vec<usize>)>> = graphs
            .iter()
            .zip(&colors)
            .map(|(x, c)| {
                x.vertices()
                    .map(|v| {
                        let mut nb: Vec<usize> = x.neighbors(v).iter().map(|&w| c[w]).collect();
                        nb.sort_unstable();
                        (c[v], nb)
                    })
                    .collect()
            })
            .collect();
        let mut all: Vec<&(usize, Vec<usize>)> = sigs.iter().flatten().collect();
        all.sort();
        all.dedup();
        let id: HashMap<&(usize, Vec<usize>), usize> = all.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let next = [0, 1].map(|i| sigs[i].iter().map(|x| id[x]).collect::<Vec<_>>());
        colors = next;
        if all.len() == classes {
            return colors;
        }
        classes = all.len();
    }
}

fn histogram(c: &[usize]) -> Histogram {
    let mut m: HashMap<usize, usize> = HashMap::new();
    for &x in c {
        *m.entry(x).or_default() += 1;
    }
    let mut v: Vec<(usize, usize)> = m.into_iter().collect();
    v.sort();
    v
}

fn initial_colors(g: &ColoredGraph) -> Vec<usize> {
    g.vertices().map(|v| g.color(v) as usize).collect()
}

/// Stable color refinement run jointly on both graphs; returns the color
/// histograms of `g` and `h` as sorted `(color, count)` lists.
pub fn naive_refinement_histograms(g: &ColoredGraph, h: &ColoredGraph) -> (Histogram, Histogram) {
    let [a, b] = joint_refine(g, h, [initial_colors(g), initial_colors(h)]);
    (histogram(&a), histogram(&b))
}

/// Isomorphism search by individualization and joint refinement without any
/// pruning: the first vertex of a smallest non-singleton class of `g` is
/// matched in turn with every vertex of that class in `h`.
pub fn refined_isomorphism(g: &ColoredGraph, h: &ColoredGraph) -> Option<Vec<Vertex>> {
    fn go(g: &ColoredGraph, h: &ColoredGraph, start: [Vec<usize>; 2]) -> Option<Vec<Vertex>> {
        let [cg, ch] = joint_refine(g, h, start);
        let (hg, hh) = (histogram(&cg), histogram(&ch));
        if hg != hh {
            return None;
        }
        let Some(&(cell, _)) = hg.iter().filter(|&&(_, k)| k > 1).min_by_key(|&&(c, k)| (k, c)) else {
            let mut pos = HashMap::new();
            for w in h.vertices() {
                pos.insert(ch[w], w);
            }
            let map: Vec<Vertex> = g.vertices().map(|v| pos[&cg[v]]).collect();
            return is_isomorphism(g, h, &map).then_some(map);
        };
        let fresh = hg.len();
        let v = g.vertices().find(|&v| cg[v] == cell).unwrap();
        for w in h.vertices().filter(|&w| ch[w] == cell) {
            let (mut ng, mut nh) = (cg.clone(), ch.clone());
            ng[v] = fresh;
            nh[w] = fresh;
            if let Some(map) = go(g, h, [ng, nh]) {
                return Some(map);
            }
        }
        None
    }
    if g.n() != h.n() || g.m() != h.m() {
        return None;
    }
    go(g, h, [initial_colors(g), initial_colors(h)])
}

/// Distinct isomorphism classes among `graphs` (by the backtracking oracle).
pub fn iso_classes(graphs: &[ColoredGraph]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut by_inv: HashMap<Invariant, Vec<usize>> = HashMap::new();
    for (i, g) in graphs.iter().enumerate() {
        let slot = by_inv.entry(vertex_invariant(g)).or_default();
        match slot.iter().find(|&&c| brute_isomorphism(&graphs[classes[c][0]], g).is_some()) {
            Some(&c) => classes[c].push(i),
            None => {
                slot.push(classes.len());
                classes.push(vec![i]);
            }
        }
    }
    classes
}

pub fn distinct<T: std::hash::Hash + Eq + Clone>(items: &[T]) -> usize {
    items.iter().cloned().collect::<HashSet<_>>().len()
}
