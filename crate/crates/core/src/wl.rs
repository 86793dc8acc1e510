//! Weisfeiler-Leman refinement of `k`-tuple colorings, a worklist fast path
//! for `k = 1`, and the bijective pebble game.
//!
//! Tuples of a graph on `n` vertices are indexed by their base-`n` code with
//! the first position most significant.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use rustc_hash::FxHasher;
use serde::{Deserialize, Serialize};

use crate::error::WlError;
use crate::graph::{atomic_type, ColoredGraph, Vertex};
use crate::matching::has_perfect_matching;

/// Largest number of tuples (summed over all graphs) refined in one run.
pub const TUPLE_LIMIT: u128 = 100_000_000;

/// Stable coloring of `V^k`. `colors[code]` is the dense color id of the
/// tuple with base-`n` code `code`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlColoring {
    pub k: usize,
    pub n: usize,
    pub colors: Vec<u32>,
    /// Refinement rounds until stability; for the worklist path, the number
    /// of processed splitter cells.
    pub rounds: usize,
}

impl WlColoring {
    /// Number of tuples per color id.
    pub fn histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for &c in &self.colors {
            *h.entry(c).or_default() += 1;
        }
        h
    }

    pub fn class_count(&self) -> usize {
        self.histogram().len()
    }

    /// Partition of the tuple codes into color classes, each sorted and
    /// ordered by smallest code; independent of the color ids.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut by: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, &c) in self.colors.iter().enumerate() {
            by.entry(c).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by.into_values().collect();
        out.sort();
        out
    }
}

fn check_budget(sizes: &[usize], k: usize) -> Result<(), WlError> {
    if k == 0 {
        return Err(WlError::Dimension { got: 0, min: 1 });
    }
    let mut tuples: u128 = 0;
    for &n in sizes {
        let t = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        tuples = tuples.saturating_add(t);
    }
    if tuples > TUPLE_LIMIT {
        return Err(WlError::Budget {
            tuples,
            limit: TUPLE_LIMIT,
        });
    }
    Ok(())
}

fn decode(mut code: usize, n: usize, k: usize, out: &mut [Vertex]) {
    for i in (0..k).rev() {
        out[i] = code % n;
        code /= n;
    }
}

/// Key of the atomic type of a tuple: pairwise relations (0 equal, 1 edge,
/// 2 non-edge) followed by the colors.
fn atomic_key(g: &ColoredGraph, t: &[Vertex]) -> Vec<u64> {
    let k = t.len();
    let mut key = Vec::with_capacity(k * (k + 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            key.push(if t[i] == t[j] {
                0
            } else if g.has_edge(t[i], t[j]) {
                1
            } else {
                2
            });
        }
    }
    key.extend(t.iter().map(|&v| g.color(v)));
    key
}

struct Layout {
    n: usize,
    k: usize,
    strides: Vec<usize>,
}

impl Layout {
    fn new(n: usize, k: usize) -> Self {
        let strides = (0..k).map(|i| n.pow((k - 1 - i) as u32)).collect();
        Self { n, k, strides }
    }

    fn tuples(&self) -> usize {
        self.n.pow(self.k as u32)
    }
}

/// Refinement signature entries of one tuple, each entry being the relation
/// pattern of `w` to the tuple followed by the colors of the `k`
/// substitutions of `w`. Entries are sorted.
fn entries(
    g: &ColoredGraph,
    lay: &Layout,
    colors: &[u32],
    code: usize,
    t: &mut [Vertex],
    out: &mut Vec<Vec<u32>>,
) {
    let (n, k) = (lay.n, lay.k);
    decode(code, n, k, t);
    out.clear();
    for w in 0..n {
        let mut e = Vec::with_capacity(k + 1);
        let mut pattern = 0u32;
        for &x in t.iter() {
            pattern = pattern * 3
                + if x == w {
                    0
                } else if g.has_edge(x, w) {
                    1
                } else {
                    2
                };
        }
        e.push(pattern);
        for (&ti, &stride) in t.iter().zip(&lay.strides).take(k) {
            let sub = code - ti * stride + w * stride;
            e.push(colors[sub]);
        }
        out.push(e);
    }
    out.sort_unstable();
}

/// Packed variant of [`entries`] when an entry fits in 128 bits.
fn packed_entries(
    g: &ColoredGraph,
    lay: &Layout,
    colors: &[u32],
    bits: u32,
    code: usize,
    t: &mut [Vertex],
    out: &mut Vec<u128>,
) {
    let (n, k) = (lay.n, lay.k);
    decode(code, n, k, t);
    out.clear();
    for w in 0..n {
        let mut pattern = 0u128;
        for &x in t.iter() {
            pattern = pattern * 3
                + if x == w {
                    0
                } else if g.has_edge(x, w) {
                    1
                } else {
                    2
                };
        }
        let mut e = pattern;
        for (&ti, &stride) in t.iter().zip(&lay.strides).take(k) {
            let sub = code - ti * stride + w * stride;
            e = (e << bits) | colors[sub] as u128;
        }
        out.push(e);
    }
    out.sort_unstable();
}

fn bits_for(count: usize) -> u32 {
    (usize::BITS - count.leading_zeros()).max(1)
}

fn pattern_bits(k: usize) -> u32 {
    bits_for(3usize.saturating_pow(k as u32))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Entries {
    Packed(Vec<u128>),
    Wide(Vec<Vec<u32>>),
}

struct Scratch {
    t: Vec<Vertex>,
    entries: Entries,
}

impl Scratch {
    fn new(k: usize, packed: bool) -> Self {
        let entries = if packed {
            Entries::Packed(Vec::new())
        } else {
            Entries::Wide(Vec::new())
        };
        Self {
            t: vec![0; k],
            entries,
        }
    }

    /// Fills `self.entries` with the sorted signature entries of `code`.
    fn fill(&mut self, g: &ColoredGraph, lay: &Layout, colors: &[u32], bits: u32, code: usize) {
        match &mut self.entries {
            Entries::Packed(out) => packed_entries(g, lay, colors, bits, code, &mut self.t, out),
            Entries::Wide(out) => entries(g, lay, colors, code, &mut self.t, out),
        }
    }
}

/// One refinement round for one graph: `(old color, signature hash)` per tuple.
fn round_keys(
    g: &ColoredGraph,
    lay: &Layout,
    colors: &[u32],
    bits: u32,
    packed: bool,
) -> Vec<(u32, u64)> {
    (0..lay.tuples())
        .into_par_iter()
        .map_init(
            || Scratch::new(lay.k, packed),
            |sc, code| {
                sc.fill(g, lay, colors, bits, code);
                let mut h = FxHasher::default();
                sc.entries.hash(&mut h);
                (colors[code], h.finish())
            },
        )
        .collect()
}

/// Joint `k`-WL refinement of several graphs with one shared color
/// dictionary, so color ids are comparable between the outputs.
///
/// Round 0 colors are atomic types. Each round maps a tuple to its old color
/// and the sorted multiset of signature entries; new ids are assigned in
/// sorted order of `(old color, signature hash)` and every class is then
/// checked against the full signature of a representative, falling back to
/// exact grouping if hashes collide. Refinement stops once the joint number
/// of colors stops growing.
pub fn wl_refine_joint(graphs: &[&ColoredGraph], k: usize) -> Result<Vec<WlColoring>, WlError> {
    refine_joint(graphs, k, false)
}

fn refine_joint(
    graphs: &[&ColoredGraph],
    k: usize,
    force_exact: bool,
) -> Result<Vec<WlColoring>, WlError> {
    let sizes: Vec<usize> = graphs.iter().map(|g| g.n()).collect();
    check_budget(&sizes, k)?;
    let layouts: Vec<Layout> = sizes.iter().map(|&n| Layout::new(n, k)).collect();

    // round 0: atomic types
    let mut dict: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut temp: Vec<Vec<u32>> = Vec::new();
    let mut t = vec![0; k];
    for (g, lay) in graphs.iter().zip(&layouts) {
        let mut col = Vec::with_capacity(lay.tuples());
        for code in 0..lay.tuples() {
            decode(code, lay.n, k, &mut t);
            let key = atomic_key(g, &t);
            let next = dict.len() as u32;
            col.push(*dict.entry(key).or_insert(next));
        }
        temp.push(col);
    }
    let mut keys: Vec<(&Vec<u64>, u32)> = dict.iter().map(|(key, &id)| (key, id)).collect();
    keys.sort();
    let mut rank = vec![0u32; keys.len()];
    for (r, (_, id)) in keys.iter().enumerate() {
        rank[*id as usize] = r as u32;
    }
    let mut colors: Vec<Vec<u32>> = temp
        .into_iter()
        .map(|c| c.into_iter().map(|x| rank[x as usize]).collect())
        .collect();
    let mut count = keys.len();
    let mut rounds = 0;

    loop {
        let bits = bits_for(count);
        let packed = (k as u32) * bits + pattern_bits(k) <= 128;
        let per_graph: Vec<Vec<(u32, u64)>> = graphs
            .iter()
            .zip(&layouts)
            .zip(&colors)
            .map(|((g, lay), col)| round_keys(g, lay, col, bits, packed))
            .collect();
        let mut all: Vec<(u32, u64)> = per_graph.iter().flatten().copied().collect();
        all.par_sort_unstable();
        all.dedup();

        // one representative per key, checked against every member
        let mut reps: Vec<Option<(usize, usize)>> = vec![None; all.len()];
        let ids: Vec<Vec<u32>> = per_graph
            .iter()
            .enumerate()
            .map(|(gi, keys)| {
                keys.iter()
                    .enumerate()
                    .map(|(code, key)| {
                        let id = all.binary_search(key).unwrap();
                        reps[id].get_or_insert((gi, code));
                        id as u32
                    })
                    .collect()
            })
            .collect();
        let rep_sigs: Vec<(u32, Entries)> = reps
            .par_iter()
            .map(|r| {
                let (gi, code) = r.unwrap();
                let mut sc = Scratch::new(k, packed);
                sc.fill(graphs[gi], &layouts[gi], &colors[gi], bits, code);
                (colors[gi][code], sc.entries)
            })
            .collect();
        let consistent = graphs.iter().enumerate().all(|(gi, g)| {
            (0..layouts[gi].tuples())
                .into_par_iter()
                .map_init(
                    || Scratch::new(k, packed),
                    |sc, code| {
                        let (old, rep) = &rep_sigs[ids[gi][code] as usize];
                        sc.fill(g, &layouts[gi], &colors[gi], bits, code);
                        *old == colors[gi][code] && sc.entries == *rep
                    },
                )
                .all(|ok| ok)
        });
        let (next, next_count) = if consistent && !force_exact {
            (ids, all.len())
        } else {
            exact_round(graphs, &layouts, &colors, bits, packed)
        };
        rounds += 1;
        colors = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    Ok(colors
        .into_iter()
        .zip(&sizes)
        .map(|(colors, &n)| WlColoring {
            k,
            n,
            colors,
            rounds,
        })
        .collect())
}

/// Collision fallback: groups tuples by their full signatures.
fn exact_round(
    graphs: &[&ColoredGraph],
    layouts: &[Layout],
    colors: &[Vec<u32>],
    bits: u32,
    packed: bool,
) -> (Vec<Vec<u32>>, usize) {
    let sigs: Vec<Vec<(u32, Vec<Vec<u32>>)>> = graphs
        .iter()
        .enumerate()
        .map(|(gi, g)| {
            (0..layouts[gi].tuples())
                .into_par_iter()
                .map(|code| {
                    let mut sc = Scratch::new(layouts[gi].k, packed);
                    sc.fill(g, &layouts[gi], &colors[gi], bits, code);
                    let wide = match sc.entries {
                        Entries::Packed(v) => v
                            .into_iter()
                            .map(|e| (0..4).rev().map(|i| (e >> (32 * i)) as u32).collect())
                            .collect(),
                        Entries::Wide(v) => v,
                    };
                    (colors[gi][code], wide)
                })
                .collect()
        })
        .collect();
    let mut all: Vec<&(u32, Vec<Vec<u32>>)> = sigs.iter().flatten().collect();
    all.sort();
    all.dedup();
    let ids = sigs
        .iter()
        .map(|s| {
            s.iter()
                .map(|x| all.binary_search(&x).unwrap() as u32)
                .collect()
        })
        .collect();
    (ids, all.len())
}

/// Stable `k`-WL coloring of a single graph.
pub fn wl_refine(g: &ColoredGraph, k: usize) -> Result<WlColoring, WlError> {
    Ok(wl_refine_joint(&[g], k)?.pop().unwrap())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WlVerdict {
    /// A color class with different sizes in the two graphs.
    Distinguished {
        color: u32,
        count_g: usize,
        count_h: usize,
    },
    Equivalent,
}

impl WlVerdict {
    pub fn distinguished(&self) -> bool {
        matches!(self, WlVerdict::Distinguished { .. })
    }
}

fn compare_histograms(a: &BTreeMap<u32, usize>, b: &BTreeMap<u32, usize>) -> WlVerdict {
    let mut keys: Vec<u32> = a.keys().chain(b.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    for c in keys {
        let (x, y) = (a.get(&c).copied().unwrap_or(0), b.get(&c).copied().unwrap_or(0));
        if x != y {
            return WlVerdict::Distinguished {
                color: c,
                count_g: x,
                count_h: y,
            };
        }
    }
    WlVerdict::Equivalent
}

/// Whether `k`-WL distinguishes `g` and `h`.
pub fn wl_distinguish(g: &ColoredGraph, h: &ColoredGraph, k: usize) -> Result<WlVerdict, WlError> {
    let col = wl_refine_joint(&[g, h], k)?;
    Ok(compare_histograms(&col[0].histogram(), &col[1].histogram()))
}

/// Coarsest equitable refinement of the vertex coloring by worklist
/// partition refinement, processing all but the largest part of every split.
///
/// Cells are kept as segments of one vertex array and identified by their
/// start position. The worklist is processed in insertion order, touched
/// cells in order of position, and split parts by neighbor count, so the
/// final cell positions (which become the color ids) do not depend on vertex
/// names.
pub fn color_refinement(g: &ColoredGraph) -> WlColoring {
    let n = g.n();
    let mut elems: Vec<Vertex> = (0..n).collect();
    elems.sort_by_key(|&v| (g.color(v), v));
    let mut pos = vec![0usize; n];
    let mut cell = vec![0usize; n];
    let mut end = vec![0usize; n + 1];
    let mut in_work = vec![false; n + 1];
    let mut work = VecDeque::new();
    let mut s = 0;
    while s < n {
        let c = g.color(elems[s]);
        let mut e = s;
        while e < n && g.color(elems[e]) == c {
            e += 1;
        }
        end[s] = e;
        for i in s..e {
            cell[elems[i]] = s;
        }
        work.push_back(s);
        in_work[s] = true;
        s = e;
    }
    for (i, &v) in elems.iter().enumerate() {
        pos[v] = i;
    }

    let mut count = vec![0u32; n];
    let mut touched: Vec<Vertex> = Vec::new();
    let mut splitter: Vec<Vertex> = Vec::new();
    let mut processed = 0;
    while let Some(sc) = work.pop_front() {
        in_work[sc] = false;
        processed += 1;
        splitter.clear();
        splitter.extend_from_slice(&elems[sc..end[sc]]);
        for &v in &splitter {
            for &w in g.neighbors(v) {
                if count[w] == 0 {
                    touched.push(w);
                }
                count[w] += 1;
            }
        }
        touched.sort_unstable_by_key(|&w| (cell[w], count[w]));
        let mut i = 0;
        while i < touched.len() {
            let c = cell[touched[i]];
            let mut j = i;
            while j < touched.len() && cell[touched[j]] == c {
                j += 1;
            }
            split_cell(
                c,
                &touched[i..j],
                &count,
                &mut elems,
                &mut pos,
                &mut cell,
                &mut end,
                &mut in_work,
                &mut work,
            );
            i = j;
        }
        for &w in &touched {
            count[w] = 0;
        }
        touched.clear();
    }

    let mut starts: Vec<usize> = cell.clone();
    starts.sort_unstable();
    starts.dedup();
    let colors = (0..n)
        .map(|v| starts.binary_search(&cell[v]).unwrap() as u32)
        .collect();
    WlColoring {
        k: 1,
        n,
        colors,
        rounds: processed,
    }
}

/// Splits cell `c` by the counts of its touched members (sorted by count).
#[allow(clippy::too_many_arguments)]
fn split_cell(
    c: usize,
    members: &[Vertex],
    count: &[u32],
    elems: &mut [Vertex],
    pos: &mut [usize],
    cell: &mut [usize],
    end: &mut [usize],
    in_work: &mut [bool],
    work: &mut VecDeque<usize>,
) {
    let ce = end[c];
    let size = ce - c;
    let untouched = size - members.len();
    if untouched == 0 && count[members[0]] == count[members[members.len() - 1]] {
        return;
    }
    // move touched members to the tail, ascending by count
    for (i, &v) in members.iter().rev().enumerate() {
        let target = ce - 1 - i;
        let p = pos[v];
        let other = elems[target];
        elems.swap(p, target);
        pos[other] = p;
        pos[v] = target;
    }
    let mut bounds = Vec::new();
    if untouched > 0 {
        bounds.push(c);
    }
    let tail = c + untouched;
    for k in 0..members.len() {
        if k == 0 || count[elems[tail + k]] != count[elems[tail + k - 1]] {
            bounds.push(tail + k);
        }
    }
    bounds.push(ce);
    let parts: Vec<(usize, usize)> = bounds.windows(2).map(|w| (w[0], w[1])).collect();
    for &(s, e) in &parts {
        end[s] = e;
        if s != c {
            for &v in &elems[s..e] {
                cell[v] = s;
            }
        }
    }
    if in_work[c] {
        for &(s, _) in &parts[1..] {
            in_work[s] = true;
            work.push_back(s);
        }
    } else {
        let largest = parts
            .iter()
            .enumerate()
            .max_by_key(|&(i, &(s, e))| (e - s, std::cmp::Reverse(i)))
            .map(|(i, _)| i)
            .unwrap();
        for (i, &(s, _)) in parts.iter().enumerate() {
            if i != largest {
                in_work[s] = true;
                work.push_back(s);
            }
        }
    }
}

/// 1-WL comparison through [`color_refinement`] on the disjoint union.
pub fn color_refinement_distinguish(g: &ColoredGraph, h: &ColoredGraph) -> WlVerdict {
    let col = color_refinement(&g.disjoint_union(h));
    let (a, b) = col.colors.split_at(g.n());
    let hist = |xs: &[u32]| {
        let mut m = BTreeMap::new();
        for &c in xs {
            *m.entry(c).or_insert(0usize) += 1;
        }
        m
    };
    compare_histograms(&hist(a), &hist(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    Spoiler,
    Duplicator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameVerdict {
    pub winner: Player,
    /// Positions surviving in the greatest fixed point.
    pub surviving_positions: usize,
    /// Fixed-point iterations after which the empty position was decided.
    pub rounds: usize,
}

/// Largest position table (`n^(2k)`) the pebble game solver accepts.
pub const GAME_LIMIT: u128 = 20_000_000;

/// Solves the bijective `k`-pebble game on `g` and `h`.
///
/// A position is a pair of equal-length vertex tuples of length at most `k`.
/// Duplicator's winning positions form the greatest set `W` such that every
/// member has matching atomic types and
/// * with fewer than `k` pebbles placed, some bijection `f` keeps
///   `p + (v, f(v))` in `W` for every `v`, and
/// * with all `k` placed, the same holds after lifting any single pair.
///
/// Bijection existence is a perfect matching on the compatibility relation.
pub fn pebble_game(g: &ColoredGraph, h: &ColoredGraph, k: usize) -> Result<GameVerdict, WlError> {
    if k < 2 {
        return Err(WlError::Dimension { got: k, min: 2 });
    }
    let n = g.n();
    if h.n() != n {
        return Ok(GameVerdict {
            winner: Player::Spoiler,
            surviving_positions: 0,
            rounds: 0,
        });
    }
    let total = (n as u128).checked_pow(2 * k as u32).unwrap_or(u128::MAX);
    if total > GAME_LIMIT {
        return Err(WlError::Budget {
            tuples: total,
            limit: GAME_LIMIT,
        });
    }
    // positions of length l: index = code(v) * n^l + code(w)
    let size = |l: usize| n.pow(2 * l as u32);
    let mut alive: Vec<Vec<bool>> = (0..=k)
        .map(|l| {
            let nl = n.pow(l as u32);
            (0..size(l))
                .into_par_iter()
                .map_init(
                    || (vec![0; l], vec![0; l]),
                    |(tv, tw), idx| {
                        decode(idx / nl, n, l, tv);
                        decode(idx % nl, n, l, tw);
                        atomic_type(g, tv) == atomic_type(h, tw)
                    },
                )
                .collect()
        })
        .collect();

    // extending position (cv, cw) of length l by (v, w) gives
    // (cv * n + v) * n^(l+1) + cw * n + w
    let extend = |l: usize, idx: usize, v: usize, w: usize| {
        let nl = n.pow(l as u32);
        let (cv, cw) = (idx / nl, idx % nl);
        (cv * n + v) * nl * n + cw * n + w
    };
    let mut rounds = 0;
    loop {
        rounds += 1;
        let dup: Vec<Vec<bool>> = (0..k)
            .map(|l| {
                let next = &alive[l + 1];
                (0..size(l))
                    .into_par_iter()
                    .map(|idx| {
                        let adj: Vec<Vec<usize>> = (0..n)
                            .map(|v| (0..n).filter(|&w| next[extend(l, idx, v, w)]).collect())
                            .collect();
                        has_perfect_matching(n, &adj)
                    })
                    .collect()
            })
            .collect();
        let mut changed = false;
        for l in 0..=k {
            let nl = n.pow(l as u32);
            let updated: Vec<bool> = (0..size(l))
                .into_par_iter()
                .map(|idx| {
                    if !alive[l][idx] {
                        return false;
                    }
                    if l < k {
                        return dup[l][idx];
                    }
                    // lift pebble pair i
                    let mut tv = vec![0; l];
                    let mut tw = vec![0; l];
                    decode(idx / nl, n, l, &mut tv);
                    decode(idx % nl, n, l, &mut tw);
                    (0..l).all(|i| {
                        let enc = |t: &[usize]| {
                            t.iter()
                                .enumerate()
                                .filter(|&(j, _)| j != i)
                                .fold(0, |acc, (_, &x)| acc * n + x)
                        };
                        dup[l - 1][enc(&tv) * nl / n + enc(&tw)]
                    })
                })
                .collect();
            if updated != alive[l] {
                changed = true;
                alive[l] = updated;
            }
        }
        if !changed || !alive[0][0] {
            break;
        }
    }
    let surviving = alive.iter().map(|a| a.iter().filter(|&&x| x).count()).sum();
    Ok(GameVerdict {
        winner: if alive[0][0] {
            Player::Duplicator
        } else {
            Player::Spoiler
        },
        surviving_positions: surviving,
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cfi_pair, k4};

    fn p4() -> ColoredGraph {
        ColoredGraph::from_edges_unchecked(4, [(0, 1), (1, 2), (2, 3)])
    }

    fn p3_k1() -> ColoredGraph {
        ColoredGraph::from_edges_unchecked(4, [(0, 1), (1, 2)])
    }

    #[test]
    fn refine_examples() {
        let k2 = ColoredGraph::from_edges_unchecked(2, [(0, 1)]);
        assert_eq!(wl_refine(&k2, 1).unwrap().class_count(), 1);
        let c = wl_refine(&p4(), 1).unwrap();
        assert_eq!(c.partition(), vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(color_refinement(&p4()).partition(), c.partition());
        let pair = cfi_pair(&k4()).unwrap();
        let col = wl_refine_joint(&[&pair.even, &pair.odd], 1).unwrap();
        assert_eq!(col[0].histogram(), col[1].histogram());
    }

    #[test]
    fn exact_grouping_matches_hashed_grouping() {
        let pair = cfi_pair(&k4()).unwrap();
        let c6 = ColoredGraph::from_edges_unchecked(6, (0..6).map(|i| (i, (i + 1) % 6)));
        for k in 1..=2 {
            let hashed = wl_refine_joint(&[&pair.even, &c6], k).unwrap();
            let exact = refine_joint(&[&pair.even, &c6], k, true).unwrap();
            // ids differ between the two paths; the joint partitions must not
            let mut forward: HashMap<u32, u32> = HashMap::new();
            let mut backward: HashMap<u32, u32> = HashMap::new();
            for (a, b) in hashed.iter().zip(&exact) {
                assert_eq!(a.rounds, b.rounds);
                for (&x, &y) in a.colors.iter().zip(&b.colors) {
                    assert_eq!(*forward.entry(x).or_insert(y), y);
                    assert_eq!(*backward.entry(y).or_insert(x), x);
                }
            }
        }
    }

    #[test]
    fn refine_rejects_large_inputs() {
        let g = ColoredGraph::empty(1000);
        assert!(matches!(wl_refine(&g, 3), Err(WlError::Budget { .. })));
        assert!(matches!(wl_refine(&g, 0), Err(WlError::Dimension { .. })));
    }

    #[test]
    fn distinguish_examples() {
        assert!(wl_distinguish(&p4(), &p3_k1(), 1).unwrap().distinguished());
        assert!(color_refinement_distinguish(&p4(), &p3_k1()).distinguished());
        let pair = cfi_pair(&k4()).unwrap();
        assert_eq!(wl_distinguish(&pair.even, &pair.odd, 1).unwrap(), WlVerdict::Equivalent);
        assert_eq!(
            color_refinement_distinguish(&pair.even, &pair.odd),
            WlVerdict::Equivalent
        );
    }

    #[test]
    fn pebble_examples() {
        for k in 2..=3 {
            assert_eq!(pebble_game(&p4(), &p4(), k).unwrap().winner, Player::Duplicator);
        }
        assert_eq!(pebble_game(&p4(), &p3_k1(), 2).unwrap().winner, Player::Spoiler);
        let k3 = ColoredGraph::from_edges_unchecked(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(pebble_game(&p4(), &k3, 2).unwrap().winner, Player::Spoiler);
        // C6 versus two triangles: 1-WL equivalent, 2-WL distinguishes
        let c6 = ColoredGraph::from_edges_unchecked(6, (0..6).map(|i| (i, (i + 1) % 6)));
        let two_c3 =
            ColoredGraph::from_edges_unchecked(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(pebble_game(&c6, &two_c3, 2).unwrap().winner, Player::Duplicator);
        assert_eq!(pebble_game(&c6, &two_c3, 3).unwrap().winner, Player::Spoiler);
        assert!(!wl_distinguish(&c6, &two_c3, 1).unwrap().distinguished());
        assert!(wl_distinguish(&c6, &two_c3, 2).unwrap().distinguished());
        let pair = cfi_pair(&k4()).unwrap();
        assert_eq!(pebble_game(&pair.even, &pair.odd, 2).unwrap().winner, Player::Duplicator);
    }
}
