//! General isomorphism test by canonical labeling with individualization,
//! refinement and automorphism pruning.
//!
//! Each graph is labeled separately. The search tree individualizes a vertex
//! of the first smallest non-singleton cell and refines to an equitable
//! partition; every discrete leaf yields a relabeled graph, and the greatest
//! relabeling is the canonical one. Two leaves with the same relabeled graph
//! expose an automorphism. Children of a node that lie in one orbit of the
//! automorphisms found so far that fix the node's prefix pointwise have
//! isomorphic subtrees, so only one of them is explored. This module shares
//! no code with the twin-width-1 canonization and serves as its reference.

use std::collections::HashMap;

use crate::graph::{ColoredGraph, Vertex};

/// Refines `colors` to the coarsest equitable partition below it. Colors are
/// renumbered by sorted signature, so the result commutes with relabeling.
fn refine(g: &ColoredGraph, mut colors: Vec<u64>) -> Vec<u64> {
    let n = g.n();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(u64, Vec<u64>)> = sigs.iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        let index: HashMap<&(u64, Vec<u64>), u64> =
            sorted.iter().enumerate().map(|(i, &s)| (s, i as u64)).collect();
        colors = sigs.iter().map(|s| index[s]).collect();
        if sorted.len() == classes {
            return colors;
        }
        classes = sorted.len();
    }
}

/// Relabeled graph of a leaf: colors and sorted edges in canonical ids.
type Certificate = (Vec<u64>, Vec<(Vertex, Vertex)>);

struct Leaf {
    /// `label[v]` is the canonical id of `v`.
    label: Vec<Vertex>,
    cert: Certificate,
}

fn certificate(g: &ColoredGraph, label: &[Vertex]) -> Certificate {
    let mut colors = vec![0; g.n()];
    for v in g.vertices() {
        colors[label[v]] = g.color(v);
    }
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (label[u], label[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    (colors, edges)
}

struct Canonizer<'a> {
    g: &'a ColoredGraph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<Vertex>>,
    nodes: u64,
}

fn find(parent: &mut [Vertex], mut x: Vertex) -> Vertex {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Canonizer<'_> {
    fn record_automorphism(&mut self, leaf: &[Vertex], other: &[Vertex]) {
        // leaf and other label the same relabeled graph, so v -> other^-1(leaf(v))
        let mut inv = vec![0; other.len()];
        for (v, &l) in other.iter().enumerate() {
            inv[l] = v;
        }
        let gamma: Vec<Vertex> = leaf.iter().map(|&l| inv[l]).collect();
        if gamma.iter().enumerate().any(|(v, &w)| v != w) {
            self.generators.push(gamma);
        }
    }

    fn leaf(&mut self, colors: &[u64]) {
        let label: Vec<Vertex> = colors.iter().map(|&c| c as Vertex).collect();
        let cert = certificate(self.g, &label);
        let twin = [&self.first, &self.best]
            .into_iter()
            .flatten()
            .find(|stored| stored.cert == cert)
            .map(|stored| stored.label.clone());
        if let Some(other) = twin {
            self.record_automorphism(&label, &other);
            return;
        }
        if self.first.is_none() {
            self.first = Some(Leaf {
                label: label.clone(),
                cert: cert.clone(),
            });
        }
        if self.best.as_ref().is_none_or(|b| cert > b.cert) {
            self.best = Some(Leaf { label, cert });
        }
    }

    /// Orbit representatives under the generators that fix `prefix`.
    fn orbits(&self, prefix: &[Vertex]) -> Vec<Vertex> {
        let mut parent: Vec<Vertex> = (0..self.g.n()).collect();
        for gamma in &self.generators {
            if prefix.iter().all(|&p| gamma[p] == p) {
                for (v, &w) in gamma.iter().enumerate() {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..self.g.n()).map(|v| find(&mut parent, v)).collect()
    }

    fn search(&mut self, colors: Vec<u64>, prefix: &mut Vec<Vertex>) {
        self.nodes += 1;
        let colors = refine(self.g, colors);
        let mut size: HashMap<u64, usize> = HashMap::new();
        for &c in &colors {
            *size.entry(c).or_default() += 1;
        }
        let Some((&cell, _)) = size.iter().filter(|(_, &s)| s > 1).min_by_key(|(&c, &s)| (s, c))
        else {
            self.leaf(&colors);
            return;
        };
        let fresh = size.len() as u64;
        let members: Vec<Vertex> = (0..colors.len()).filter(|&v| colors[v] == cell).collect();
        let mut done: Vec<Vertex> = Vec::new();
        for &v in &members {
            let orbit = self.orbits(prefix);
            if done.iter().any(|&d| orbit[d] == orbit[v]) {
                continue;
            }
            done.push(v);
            let mut next = colors.clone();
            // keep ids below `fresh` for the rest; the chosen vertex gets a new top id
            next[v] = fresh;
            prefix.push(v);
            self.search(next, prefix);
            prefix.pop();
        }
    }
}

/// Canonical labeling of `g` (`label[v]` is the canonical id of `v`) and the
/// number of search nodes visited.
pub fn canonical_labeling(g: &ColoredGraph) -> (Vec<Vertex>, u64) {
    let mut c = Canonizer {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
        nodes: 0,
    };
    // colors are arbitrary u64 values; rank them so ids stay dense
    let mut palette: Vec<u64> = g.colors().to_vec();
    palette.sort_unstable();
    palette.dedup();
    let start: Vec<u64> = g
        .colors()
        .iter()
        .map(|c| palette.binary_search(c).unwrap() as u64)
        .collect();
    c.search(start, &mut Vec::new());
    let best = c.best.expect("search reaches a leaf");
    (best.label, c.nodes)
}

/// An isomorphism `g -> h` (`map[v]` is the image of `v`), if one exists.
pub fn find_isomorphism(g: &ColoredGraph, h: &ColoredGraph) -> Option<Vec<Vertex>> {
    find_isomorphism_counted(g, h).0
}

/// [`find_isomorphism`] together with the number of search nodes visited.
pub fn find_isomorphism_counted(g: &ColoredGraph, h: &ColoredGraph) -> (Option<Vec<Vertex>>, u64) {
    let n = g.n();
    if h.n() != n || h.m() != g.m() {
        return (None, 0);
    }
    let mut dg: Vec<(u64, usize)> = g.vertices().map(|v| (g.color(v), g.degree(v))).collect();
    let mut dh: Vec<(u64, usize)> = h.vertices().map(|v| (h.color(v), h.degree(v))).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return (None, 0);
    }
    let (lg, ng) = canonical_labeling(g);
    let (lh, nh) = canonical_labeling(h);
    if certificate(g, &lg) != certificate(h, &lh) {
        return (None, ng + nh);
    }
    let mut inv = vec![0; n];
    for (v, &l) in lh.iter().enumerate() {
        inv[l] = v;
    }
    let map: Vec<Vertex> = lg.iter().map(|&l| inv[l]).collect();
    debug_assert!(g.is_isomorphism(h, &map));
    (Some(map), ng + nh)
}

pub fn are_isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    find_isomorphism(g, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cfi_pair, k4, petersen};

    #[test]
    fn small_cases() {
        let p4 = ColoredGraph::from_edges_unchecked(4, [(0, 1), (1, 2), (2, 3)]);
        let q = p4.relabel(&[3, 1, 0, 2]);
        let map = find_isomorphism(&p4, &q).unwrap();
        assert!(p4.is_isomorphism(&q, &map));
        let star = ColoredGraph::from_edges_unchecked(4, [(0, 1), (0, 2), (0, 3)]);
        assert!(!are_isomorphic(&p4, &star));
        let c6 = ColoredGraph::from_edges_unchecked(6, (0..6).map(|i| (i, (i + 1) % 6)));
        let two_c3 =
            ColoredGraph::from_edges_unchecked(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(!are_isomorphic(&c6, &two_c3));
        let colored = p4.clone().with_colors(vec![1, 0, 0, 0]).unwrap();
        let flipped = p4.clone().with_colors(vec![0, 0, 0, 1]).unwrap();
        assert!(are_isomorphic(&colored, &flipped));
        let inner = p4.clone().with_colors(vec![0, 1, 0, 0]).unwrap();
        assert!(!are_isomorphic(&colored, &inner));
        assert!(are_isomorphic(&ColoredGraph::empty(0), &ColoredGraph::empty(0)));
    }

    #[test]
    fn canonical_labeling_is_invariant() {
        let g = petersen();
        let perm: Vec<Vertex> = (0..10).map(|v| (v * 3 + 1) % 10).collect();
        let h = g.relabel(&perm);
        let (lg, _) = canonical_labeling(&g);
        let (lh, _) = canonical_labeling(&h);
        assert_eq!(certificate(&g, &lg), certificate(&h, &lh));
    }

    #[test]
    fn cfi_pairs_are_not_isomorphic() {
        for base in [k4(), petersen()] {
            let pair = cfi_pair(&base).unwrap();
            assert!(!are_isomorphic(&pair.even, &pair.odd));
            let n = pair.even.n();
            let perm: Vec<Vertex> = (0..n).map(|v| (v * 7 + 3) % n).collect();
            assert!(are_isomorphic(&pair.even, &pair.even.relabel(&perm)));
        }
    }
}
