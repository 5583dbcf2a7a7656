//! Exact detection of the two forbidden structures: stars (a degree
//! threshold) and paths (longest-path computation by depth-first
//! branch-and-bound, exact per component).

use crate::graph::{bits_to_vec, Graph};

/// Order of a longest path and a witness sequence achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathReport {
    pub p: usize,
    pub witness_path: Vec<usize>,
}

/// Exact longest-path order of `g`, computed independently per component.
/// Edgeless nonempty graphs have `p = 1`; the empty graph has `p = 0`.
pub fn longest_path_order(g: &Graph) -> PathReport {
    let mut best = 0usize;
    let mut witness = Vec::new();
    for comp in g.connected_components() {
        if comp.len() <= best {
            continue; // cannot beat current optimum
        }
        let (p, path) = longest_path_in_component(g, &comp, comp.len());
        if p > best {
            best = p;
            witness = path;
        }
    }
    PathReport {
        p: best,
        witness_path: witness,
    }
}

/// True iff `g` has a path of order at least `m`. Early-exits on the first
/// path found; `m = 1` holds for any nonempty graph.
pub fn contains_path(g: &Graph, m: usize) -> bool {
    assert!(m >= 1);
    if m == 1 {
        return g.order() >= 1;
    }
    for comp in g.connected_components() {
        if comp.len() < m {
            continue;
        }
        if component_has_path(g, &comp, m) {
            return true;
        }
    }
    false
}

/// True iff some vertex has degree at least `t` (i.e. `g` contains `K_{1,t}`).
pub fn contains_star(g: &Graph, t: usize) -> bool {
    assert!(t >= 1);
    g.max_degree() >= t
}

/// True iff the subgraph induced on the vertex bitset `mask` contains a path
/// of order `m`, reading adjacency from raw neighbor bitsets. Used by the
/// search engine for incremental per-component rechecks.
pub fn mask_has_path(adj: &[u64], mask: u64, m: usize) -> bool {
    if m <= 1 {
        return m == 0 || mask != 0;
    }
    if (mask.count_ones() as usize) < m {
        return false;
    }
    for start in bits_to_vec(mask) {
        if extend_path(adj, mask, start, 1u64 << start, 1, m) {
            return true;
        }
    }
    false
}

fn extend_path(adj: &[u64], mask: u64, v: usize, visited: u64, len: usize, m: usize) -> bool {
    if len >= m {
        return true;
    }
    let mut next = adj[v] & mask & !visited;
    while next != 0 {
        let w = next.trailing_zeros() as usize;
        next &= next - 1;
        if extend_path(adj, mask, w, visited | (1u64 << w), len + 1, m) {
            return true;
        }
    }
    false
}

fn component_has_path(g: &Graph, comp: &[usize], m: usize) -> bool {
    let mask = comp.iter().fold(0u64, |acc, &v| acc | (1u64 << v));
    let adj: Vec<u64> = (0..g.order()).map(|v| g.neighbors(v)).collect();
    comp.iter()
        .any(|&start| extend_path(&adj, mask, start, 1u64 << start, 1, m))
}

fn longest_path_in_component(g: &Graph, comp: &[usize], bound: usize) -> (usize, Vec<usize>) {
    let adj: Vec<u64> = (0..g.order()).map(|v| g.neighbors(v)).collect();
    let mut best = 0usize;
    let mut best_path: Vec<usize> = Vec::new();
    let mut path: Vec<usize> = Vec::new();
    for &start in comp {
        if best == bound {
            break;
        }
        path.clear();
        path.push(start);
        dfs_longest(&adj, 1u64 << start, &mut path, &mut best, &mut best_path, bound);
    }
    (best, best_path)
}

fn dfs_longest(
    adj: &[u64],
    visited: u64,
    path: &mut Vec<usize>,
    best: &mut usize,
    best_path: &mut Vec<usize>,
    bound: usize,
) {
    if path.len() > *best {
        *best = path.len();
        *best_path = path.clone();
    }
    if *best == bound {
        return; // spanning path found, nothing longer exists
    }
    let v = *path.last().unwrap();
    let mut next = adj[v] & !visited;
    while next != 0 {
        let w = next.trailing_zeros() as usize;
        next &= next - 1;
        path.push(w);
        dfs_longest(adj, visited | (1u64 << w), path, best, best_path, bound);
        path.pop();
        if *best == bound {
            return;
        }
    }
}
