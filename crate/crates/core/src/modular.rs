//! Modular decomposition: maximal strong modules, the decomposition tree,
//! twin classes and the colored prime quotient.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{CanonError, ModuleError};
use crate::graph::{ColoredGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModLabel {
    Prime,
    Series,
    Parallel,
    Single,
}

/// Node of the modular decomposition tree. Children are ordered by their
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModTree {
    pub module: Vec<Vertex>,
    pub label: ModLabel,
    pub children: Vec<ModTree>,
}

impl ModTree {
    /// All nodes in preorder.
    pub fn nodes(&self) -> Vec<&ModTree> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let node = out[i];
            out.extend(node.children.iter());
            i += 1;
        }
        out
    }

    /// One representative (the smallest vertex) per child.
    pub fn representatives(&self) -> Vec<Vertex> {
        self.children.iter().map(|c| c.module[0]).collect()
    }
}

fn co_components(g: &ColoredGraph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let rows = g.rows();
    let mut unvisited = FixedBitSet::with_capacity(n);
    unvisited.insert_range(..);
    let mut out = Vec::new();
    while let Some(s) = unvisited.ones().next() {
        unvisited.set(s, false);
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            let mut fresh = unvisited.clone();
            fresh.difference_with(&rows[v]);
            for w in fresh.ones() {
                unvisited.set(w, false);
                comp.push(w);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

/// Smallest module containing `v` and `w`, or `None` if it is all of `V`.
fn closure(rows: &[FixedBitSet], v: Vertex, w: Vertex) -> Option<FixedBitSet> {
    let n = rows.len();
    let mut set = FixedBitSet::with_capacity(n);
    set.insert(v);
    set.insert(w);
    let mut size = 2;
    let mut queue = vec![w];
    while let Some(a) = queue.pop() {
        let mut split = rows[a].clone();
        split.symmetric_difference_with(&rows[v]);
        split.difference_with(&set);
        for z in split.ones() {
            set.insert(z);
            queue.push(z);
            size += 1;
        }
        if size == n {
            return None;
        }
    }
    Some(set)
}

/// The maximal strong modules of a connected and co-connected graph, each
/// sorted, ordered by smallest vertex.
pub fn maximal_modules(g: &ColoredGraph) -> Result<Vec<Vec<Vertex>>, ModuleError> {
    let n = g.n();
    if n < 2 {
        return Err(ModuleError::TooSmall);
    }
    if !g.is_connected() {
        return Err(ModuleError::Disconnected);
    }
    if co_components(g).len() > 1 {
        return Err(ModuleError::CoDisconnected);
    }
    Ok(maximal_modules_unchecked(g))
}

fn maximal_modules_unchecked(g: &ColoredGraph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let rows = g.rows();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let mut module = FixedBitSet::with_capacity(n);
        module.insert(v);
        for w in 0..n {
            if w == v || module.contains(w) {
                continue;
            }
            if let Some(c) = closure(rows, v, w) {
                module.union_with(&c);
            }
        }
        let members: Vec<Vertex> = module.ones().collect();
        for &x in &members {
            assigned[x] = true;
        }
        out.push(members);
    }
    out
}

/// Modular decomposition tree of `g` (`n >= 1`).
pub fn mod_tree(g: &ColoredGraph) -> ModTree {
    let all: Vec<Vertex> = g.vertices().collect();
    build(g, &all)
}

fn build(g: &ColoredGraph, set: &[Vertex]) -> ModTree {
    if set.len() == 1 {
        return ModTree {
            module: set.to_vec(),
            label: ModLabel::Single,
            children: Vec::new(),
        };
    }
    let (h, map) = g.induced_subgraph(set);
    let lift = |parts: Vec<Vec<Vertex>>| -> Vec<Vec<Vertex>> {
        parts
            .into_iter()
            .map(|p| p.into_iter().map(|i| map[i]).collect())
            .collect()
    };
    let comps = h.components();
    let (label, parts) = if comps.len() > 1 {
        (ModLabel::Parallel, lift(comps))
    } else {
        let co = co_components(&h);
        if co.len() > 1 {
            (ModLabel::Series, lift(co))
        } else {
            (ModLabel::Prime, lift(maximal_modules_unchecked(&h)))
        }
    };
    ModTree {
        module: set.to_vec(),
        label,
        children: parts.iter().map(|p| build(g, p)).collect(),
    }
}

/// Whether `g` has at least three vertices and only trivial modules.
pub fn is_prime(g: &ColoredGraph) -> bool {
    g.n() >= 3
        && maximal_modules(g).is_ok_and(|mods| mods.iter().all(|m| m.len() == 1))
}

/// Classes of the twin relation `N(u) \ {v} = N(v) \ {u}`, each sorted,
/// ordered by smallest vertex. A vertex cannot have both a true and a false
/// twin, so classes are cliques or independent sets.
pub fn twins_partition(g: &ColoredGraph) -> Vec<Vec<Vertex>> {
    let mut open: HashMap<&[Vertex], Vec<Vertex>> = HashMap::new();
    for v in g.vertices() {
        open.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut closed: HashMap<Vec<Vertex>, Vec<Vertex>> = HashMap::new();
    for v in g.vertices() {
        let mut key = g.neighbors(v).to_vec();
        let pos = key.partition_point(|&w| w < v);
        key.insert(pos, v);
        closed.entry(key).or_default().push(v);
    }
    let mut out: Vec<Vec<Vertex>> = Vec::new();
    let mut placed = vec![false; g.n()];
    for class in open.into_values().chain(closed.into_values()) {
        if class.len() > 1 {
            for &v in &class {
                placed[v] = true;
            }
            out.push(class);
        }
    }
    out.extend(g.vertices().filter(|&v| !placed[v]).map(|v| vec![v]));
    out.sort();
    out
}

/// Quotient of `g` by the given modules, one vertex per module in order.
/// Vertex colors are left at 0.
pub fn module_quotient(g: &ColoredGraph, modules: &[Vec<Vertex>]) -> ColoredGraph {
    let reps: Vec<Vertex> = modules.iter().map(|m| m[0]).collect();
    let (q, _) = g.induced_subgraph(&reps);
    q.with_colors(vec![0; reps.len()]).unwrap()
}

/// The prime quotient with module colors: vertices are the maximal modules
/// (ordered by smallest vertex) and each is colored by the rank of its
/// canonical encoding among the distinct encodings of all modules.
pub fn quotient_star(g: &ColoredGraph) -> Result<(ColoredGraph, Vec<Vec<Vertex>>), CanonError> {
    let modules = maximal_modules(g)?;
    let encodings = modules
        .iter()
        .map(|m| {
            let (sub, _) = g.induced_subgraph(m);
            crate::tww1::canonical_form(&sub).map(|c| c.encoding)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut distinct = encodings.clone();
    distinct.sort();
    distinct.dedup();
    let colors = encodings
        .iter()
        .map(|e| distinct.binary_search(e).unwrap() as u64)
        .collect();
    let q = module_quotient(g, &modules).with_colors(colors).unwrap();
    Ok((q, modules))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> ColoredGraph {
        ColoredGraph::from_edges_unchecked(4, [(0, 1), (1, 2), (2, 3)])
    }

    /// P4 `0-1-2-3` plus a true twin `4` of the endpoint `0`.
    fn p4_with_twin() -> ColoredGraph {
        ColoredGraph::from_edges_unchecked(5, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 1)])
    }

    #[test]
    fn maximal_module_examples() {
        let singles: Vec<Vec<Vertex>> = (0..4).map(|v| vec![v]).collect();
        assert_eq!(maximal_modules(&p4()).unwrap(), singles);
        let mods = maximal_modules(&p4_with_twin()).unwrap();
        assert_eq!(mods, vec![vec![0, 4], vec![1], vec![2], vec![3]]);
        assert!(is_prime(&module_quotient(&p4_with_twin(), &mods)));
        let two_k2 = ColoredGraph::from_edges_unchecked(4, [(0, 1), (2, 3)]);
        assert_eq!(maximal_modules(&two_k2), Err(ModuleError::Disconnected));
        assert_eq!(maximal_modules(&two_k2.complement()), Err(ModuleError::CoDisconnected));
    }

    #[test]
    fn mod_tree_examples() {
        let t = mod_tree(&ColoredGraph::empty(1));
        assert_eq!(t.label, ModLabel::Single);
        assert!(t.children.is_empty());

        let two_k2 = ColoredGraph::from_edges_unchecked(4, [(0, 1), (2, 3)]);
        let t = mod_tree(&two_k2);
        assert_eq!(t.label, ModLabel::Parallel);
        assert_eq!(t.children.len(), 2);
        for c in &t.children {
            assert_eq!(c.label, ModLabel::Series);
            assert!(c.children.iter().all(|l| l.label == ModLabel::Single));
        }
        assert_eq!(t.nodes().len(), 7);

        let t = mod_tree(&p4());
        assert_eq!(t.label, ModLabel::Prime);
        assert_eq!(t.children.len(), 4);
    }

    #[test]
    fn twins_examples() {
        let k3 = ColoredGraph::from_edges_unchecked(3, [(0, 1), (0, 2), (1, 2)]);
        assert_eq!(twins_partition(&k3), vec![vec![0, 1, 2]]);
        assert_eq!(twins_partition(&p4()).len(), 4);
        let c4 = ColoredGraph::from_edges_unchecked(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(twins_partition(&c4), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn quotient_star_examples() {
        let (q, mods) = quotient_star(&p4()).unwrap();
        assert_eq!(mods.len(), 4);
        assert_eq!(q.palette(), vec![0]);
        let (q, _) = quotient_star(&p4_with_twin()).unwrap();
        assert_eq!(q.n(), 4);
        assert_ne!(q.colors()[0], q.colors()[1]);
        assert_eq!(q.colors()[1], q.colors()[2]);
    }
}
