//! Hamiltonian decompositions of equal-part complete multipartite graphs:
//! a partition of the edge set into spanning cycles, plus one perfect
//! matching when the regular degree is odd.
//!
//! The construction works in a rotational (circulant) labeling where parts
//! are residue classes, so each difference class is a rotation orbit:
//! differences coprime to the order give spanning cycles directly, and the
//! rest are paired and split by a small search.

use thiserror::Error;

use crate::graph::{complete_multipartite, Graph, MultipartiteSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HamError {
    #[error("hamiltonian decomposition requires all parts of equal size (got {0:?})")]
    UnequalParts(Vec<usize>),
    #[error("odd regular degree on an odd number of vertices admits no perfect matching")]
    ImpossibleParity,
    #[error("failed to decompose the graph into Hamilton cycles")]
    DecompositionFailed,
    #[error("cycle {0} is not a spanning cycle")]
    BadCycle(usize),
    #[error("decomposition does not partition the edge set")]
    NotAPartition,
    #[error("stored one-factor is not a perfect matching")]
    BadOneFactor,
}

/// Edge-disjoint spanning cycles (as vertex sequences) plus an optional
/// perfect matching, together covering the base edge set exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamDecomposition {
    base: Graph,
    cycles: Vec<Vec<usize>>,
    one_factor: Option<Vec<(usize, usize)>>,
}

impl HamDecomposition {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn one_factor(&self) -> Option<&[(usize, usize)]> {
        self.one_factor.as_deref()
    }

    /// Edges of cycle `i` with `u < v`.
    pub fn cycle_edges(&self, i: usize) -> Vec<(usize, usize)> {
        cycle_edge_list(&self.cycles[i])
    }

    /// Structural check: each cycle spans all vertices, everything is
    /// pairwise edge-disjoint, and the union is exactly the base edge set.
    pub fn verify(&self) -> Result<(), HamError> {
        let n = self.base.order();
        let mut covered = std::collections::HashSet::new();
        for (i, cycle) in self.cycles.iter().enumerate() {
            if cycle.len() != n {
                return Err(HamError::BadCycle(i));
            }
            let mut seen = vec![false; n];
            for &v in cycle {
                if v >= n || seen[v] {
                    return Err(HamError::BadCycle(i));
                }
                seen[v] = true;
            }
            for (u, v) in cycle_edge_list(cycle) {
                if !self.base.has_edge(u, v) || !covered.insert((u, v)) {
                    return Err(HamError::NotAPartition);
                }
            }
        }
        if let Some(matching) = &self.one_factor {
            if matching.len() * 2 != n {
                return Err(HamError::BadOneFactor);
            }
            let mut matched = vec![false; n];
            for &(u, v) in matching {
                if u == v || u >= n || v >= n || matched[u] || matched[v] {
                    return Err(HamError::BadOneFactor);
                }
                matched[u] = true;
                matched[v] = true;
                let key = (u.min(v), u.max(v));
                if !self.base.has_edge(key.0, key.1) || !covered.insert(key) {
                    return Err(HamError::NotAPartition);
                }
            }
        }
        if covered.len() != self.base.edge_count() {
            return Err(HamError::NotAPartition);
        }
        Ok(())
    }
}

fn cycle_edge_list(cycle: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(cycle.len());
    for i in 0..cycle.len() {
        let u = cycle[i];
        let v = cycle[(i + 1) % cycle.len()];
        edges.push((u.min(v), u.max(v)));
    }
    edges
}

/// Decomposes the complete multipartite graph with `n` equal parts of size
/// `r` into `floor(degree/2)` Hamilton cycles, plus a perfect matching when
/// the regular degree `(n-1)r` is odd.
pub fn hamiltonian_decomposition(spec: &MultipartiteSpec) -> Result<HamDecomposition, HamError> {
    let r = spec
        .equal_part_size()
        .ok_or_else(|| HamError::UnequalParts(spec.part_sizes().to_vec()))?;
    let parts = spec.part_sizes().len();
    let order = parts * r;
    let degree = (parts - 1) * r;
    let base = complete_multipartite(spec);

    if degree == 0 {
        return Ok(HamDecomposition {
            base,
            cycles: Vec::new(),
            one_factor: None,
        });
    }
    if degree % 2 == 1 && order % 2 == 1 {
        // unreachable for equal parts (odd degree forces even order)
        return Err(HamError::ImpossibleParity);
    }

    // differences of the circulant labeling (parts = residue classes mod `parts`)
    let mut diffs: Vec<usize> = (1..=order / 2).filter(|d| d % parts != 0).collect();
    let one_factor_circ = if degree % 2 == 1 {
        let half = order / 2;
        debug_assert!(diffs.contains(&half));
        diffs.retain(|&d| d != half);
        Some(half)
    } else {
        // for odd order, order/2 rounds down to an ordinary difference
        debug_assert!(order % 2 == 1 || !diffs.contains(&(order / 2)));
        None
    };

    let circ_cycles = decompose_differences(order, &diffs)
        .or_else(|| generic_peel(&base, degree / 2, one_factor_circ.is_some()))
        .ok_or(HamError::DecompositionFailed)?;

    // map circulant labels onto the contiguous-part labeling
    let relabel = |x: usize| (x % parts) * r + x / parts;
    let cycles: Vec<Vec<usize>> = circ_cycles
        .iter()
        .map(|cyc| cyc.iter().map(|&x| relabel(x)).collect())
        .collect();
    let one_factor = one_factor_circ.map(|half| {
        (0..half)
            .map(|x| {
                let (a, b) = (relabel(x), relabel(x + half));
                (a.min(b), a.max(b))
            })
            .collect()
    });

    let decomposition = HamDecomposition {
        base,
        cycles,
        one_factor,
    };
    decomposition.verify().map_err(|_| HamError::DecompositionFailed)?;
    Ok(decomposition)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// Backtracking over the difference classes: a difference coprime to the
// order yields a rotation cycle directly; otherwise it is paired with
// another difference and the 4-regular union is split into two spanning
// cycles by search.
fn decompose_differences(order: usize, diffs: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut remaining: Vec<usize> = diffs.to_vec();
    let mut cycles = Vec::new();
    if solve_differences(order, &mut remaining, &mut cycles) {
        Some(cycles)
    } else {
        None
    }
}

fn solve_differences(
    order: usize,
    remaining: &mut Vec<usize>,
    cycles: &mut Vec<Vec<usize>>,
) -> bool {
    let Some(&d) = remaining.first() else {
        return true;
    };
    remaining.remove(0);
    if gcd(d, order) == 1 {
        let cycle: Vec<usize> = (0..order).map(|i| (i * d) % order).collect();
        cycles.push(cycle);
        if solve_differences(order, remaining, cycles) {
            return true;
        }
        cycles.pop();
    }
    for idx in 0..remaining.len() {
        let d2 = remaining[idx];
        if gcd(gcd(d, d2), order) != 1 {
            continue;
        }
        if let Some((c1, c2)) = split_pair_into_cycles(order, d, d2) {
            remaining.remove(idx);
            cycles.push(c1);
            cycles.push(c2);
            if solve_differences(order, remaining, cycles) {
                return true;
            }
            cycles.pop();
            cycles.pop();
            remaining.insert(idx, d2);
        }
    }
    remaining.insert(0, d);
    false
}

// Splits the 4-regular circulant with differences {d1, d2} into two
// spanning cycles: enumerate Hamilton cycles until the leftover 2-factor
// is itself a single spanning cycle.
fn split_pair_into_cycles(
    order: usize,
    d1: usize,
    d2: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let neighbors: Vec<Vec<usize>> = (0..order)
        .map(|x| {
            let mut ns = vec![
                (x + d1) % order,
                (x + order - d1) % order,
                (x + d2) % order,
                (x + order - d2) % order,
            ];
            ns.sort_unstable();
            ns.dedup();
            ns
        })
        .collect();
    let mut path = vec![0usize];
    let mut visited = vec![false; order];
    visited[0] = true;
    let mut result = None;
    enumerate_ham_cycles(&neighbors, &mut path, &mut visited, &mut |cycle| {
        let complement_ok = leftover_is_spanning_cycle(&neighbors, cycle);
        if let Some(rest) = complement_ok {
            result = Some((cycle.to_vec(), rest));
            true
        } else {
            false
        }
    });
    result
}

fn enumerate_ham_cycles(
    neighbors: &[Vec<usize>],
    path: &mut Vec<usize>,
    visited: &mut Vec<bool>,
    accept: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let n = neighbors.len();
    if path.len() == n {
        let last = *path.last().unwrap();
        // skip the reversed orientation of each cycle
        if neighbors[last].contains(&path[0]) && path[1] < last {
            return accept(path);
        }
        return false;
    }
    let v = *path.last().unwrap();
    for &w in &neighbors[v] {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        path.push(w);
        if enumerate_ham_cycles(neighbors, path, visited, accept) {
            return true;
        }
        path.pop();
        visited[w] = false;
    }
    false
}

fn leftover_is_spanning_cycle(neighbors: &[Vec<usize>], cycle: &[usize]) -> Option<Vec<usize>> {
    let n = neighbors.len();
    let mut used = std::collections::HashSet::new();
    for i in 0..n {
        let (u, v) = (cycle[i], cycle[(i + 1) % n]);
        used.insert((u.min(v), u.max(v)));
    }
    // leftover adjacency (2-regular by construction)
    let mut rest: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        for &v in &neighbors[u] {
            if u < v && !used.contains(&(u, v)) {
                rest[u].push(v);
                rest[v].push(u);
            }
        }
    }
    if rest.iter().any(|ns| ns.len() != 2) {
        return None;
    }
    // follow the leftover from 0; spanning iff it closes after n steps
    let mut seq = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0usize;
    loop {
        let next = if rest[cur][0] != prev {
            rest[cur][0]
        } else {
            rest[cur][1]
        };
        if next == 0 {
            break;
        }
        seq.push(next);
        prev = cur;
        cur = next;
        if seq.len() > n {
            return None;
        }
    }
    (seq.len() == n).then_some(seq)
}

// Last-resort decomposition: peel Hamilton cycles off the remaining graph
// with backtracking across levels.
fn generic_peel(base: &Graph, target_cycles: usize, leave_matching: bool) -> Option<Vec<Vec<usize>>> {
    fn residual_ok(g: &Graph, leave_matching: bool) -> bool {
        if leave_matching {
            g.degree_profile().0 == 1 && g.degree_profile().1 == 1
        } else {
            g.edge_count() == 0
        }
    }

    fn peel(g: &Graph, target: usize, leave_matching: bool, acc: &mut Vec<Vec<usize>>) -> bool {
        if acc.len() == target {
            return residual_ok(g, leave_matching);
        }
        let n = g.order();
        let neighbors: Vec<Vec<usize>> = (0..n)
            .map(|v| crate::graph::bits_to_vec(g.neighbors(v)))
            .collect();
        let mut path = vec![0usize];
        let mut visited = vec![false; n];
        visited[0] = true;
        let mut found = false;
        enumerate_ham_cycles(&neighbors, &mut path, &mut visited, &mut |cycle| {
            let mut next = g.clone();
            for i in 0..n {
                next.remove_edge(cycle[i], cycle[(i + 1) % n]);
            }
            acc.push(cycle.to_vec());
            if peel(&next, target, leave_matching, acc) {
                found = true;
                return true;
            }
            acc.pop();
            false
        });
        found
    }

    let mut acc = Vec::new();
    peel(base, target_cycles, leave_matching, &mut acc).then_some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equal_spec(parts: usize, size: usize) -> MultipartiteSpec {
        MultipartiteSpec::new(vec![size; parts]).unwrap()
    }

    #[test]
    fn three_parts_of_three() {
        // 6-regular: three Hamilton cycles, no matching
        let d = hamiltonian_decomposition(&equal_spec(3, 3)).unwrap();
        assert_eq!(d.cycles().len(), 3);
        assert!(d.one_factor().is_none());
        d.verify().unwrap();
    }

    #[test]
    fn four_cycle_is_its_own_decomposition() {
        let d = hamiltonian_decomposition(&equal_spec(2, 2)).unwrap();
        assert_eq!(d.cycles().len(), 1);
        assert!(d.one_factor().is_none());
        d.verify().unwrap();
    }

    #[test]
    fn k44_two_cycles() {
        let d = hamiltonian_decomposition(&equal_spec(2, 4)).unwrap();
        assert_eq!(d.cycles().len(), 2);
        assert!(d.one_factor().is_none());
        d.verify().unwrap();
    }

    #[test]
    fn odd_degree_produces_matching() {
        // K_{3,3}: 3-regular, one cycle plus a perfect matching
        let d = hamiltonian_decomposition(&equal_spec(2, 3)).unwrap();
        assert_eq!(d.cycles().len(), 1);
        assert_eq!(d.one_factor().unwrap().len(), 3);
        d.verify().unwrap();
    }

    #[test]
    fn complete_graph_k7() {
        let d = hamiltonian_decomposition(&equal_spec(7, 1)).unwrap();
        assert_eq!(d.cycles().len(), 3);
        assert!(d.one_factor().is_none());
        d.verify().unwrap();
    }

    #[test]
    fn complete_graph_k8_with_matching() {
        let d = hamiltonian_decomposition(&equal_spec(8, 1)).unwrap();
        assert_eq!(d.cycles().len(), 3);
        assert_eq!(d.one_factor().unwrap().len(), 4);
        d.verify().unwrap();
    }

    #[test]
    fn unequal_parts_rejected() {
        let spec = MultipartiteSpec::new(vec![3, 2]).unwrap();
        assert_eq!(
            hamiltonian_decomposition(&spec),
            Err(HamError::UnequalParts(vec![3, 2]))
        );
    }

    #[test]
    fn single_part_is_empty_decomposition() {
        let d = hamiltonian_decomposition(&equal_spec(1, 4)).unwrap();
        assert!(d.cycles().is_empty());
        assert!(d.one_factor().is_none());
        d.verify().unwrap();
    }
}
