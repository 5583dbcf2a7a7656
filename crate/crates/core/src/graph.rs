//! Small undirected simple graphs on labeled vertices `0..n`, stored as
//! neighbor bitsets. Orders are capped at [`MAX_ORDER`]; the toolkit targets
//! desk-scale instances and refuses anything larger.

use std::fmt;

use thiserror::Error;

/// Hard cap on the number of vertices. One `u64` bitset per vertex.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("multipartite spec must have at least one part")]
    EmptySpec,
    #[error("part sizes must be positive (got a zero-size part)")]
    ZeroPart,
    #[error("clique size list must be nonempty")]
    EmptySizes,
    #[error("vertex {0} out of range for order {1}")]
    VertexOutOfRange(usize, usize),
    #[error("edge list parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Undirected simple graph: symmetric, irreflexive adjacency on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        Ok(Graph {
            n,
            adj: vec![0u64; n],
        })
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Adds the edge `{u, v}`. Panics on self-loops or out-of-range vertices;
    /// callers construct graphs from validated specs.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop {u}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u] & (1u64 << v) != 0
    }

    /// Neighbor bitset of `v`.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            ((u + 1)..self.n).filter_map(move |v| self.has_edge(u, v).then_some((u, v)))
        })
    }

    /// (min degree, max degree, per-vertex degrees). Empty graph: (0, 0, []).
    pub fn degree_profile(&self) -> (usize, usize, Vec<usize>) {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let delta = degrees.iter().copied().min().unwrap_or(0);
        let big_delta = degrees.iter().copied().max().unwrap_or(0);
        (delta, big_delta, degrees)
    }

    pub fn min_degree(&self) -> usize {
        self.degree_profile().0
    }

    pub fn max_degree(&self) -> usize {
        self.degree_profile().1
    }

    /// `|E| > floor(n/2) * Delta`. Edgeless graphs are not overfull.
    pub fn is_overfull(&self) -> bool {
        let delta = self.max_degree();
        if delta == 0 {
            return false;
        }
        self.edge_count() > (self.n / 2) * delta
    }

    pub fn complement(&self) -> Graph {
        let full = mask_below(self.n);
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for v in 0..self.n {
            g.adj[v] = full & !self.adj[v] & !(1u64 << v);
        }
        g
    }

    /// Bitset of the connected component containing `v`.
    pub fn component_of(&self, v: usize) -> u64 {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Vertex sets of the connected components, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut comps = Vec::new();
        for v in 0..self.n {
            if seen & (1u64 << v) != 0 {
                continue;
            }
            let comp = self.component_of(v);
            seen |= comp;
            comps.push(bits_to_vec(comp));
        }
        comps
    }

    pub fn count_odd_degree_vertices(&self) -> usize {
        (0..self.n).filter(|&v| self.degree(v) % 2 == 1).count()
    }

    /// Edge-list text format: first line `N`, then one `u v` line per edge
    /// with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (line_no, first) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            reason: "missing order line".into(),
        })?;
        let n: usize = first.trim().parse().map_err(|_| GraphError::Parse {
            line: line_no + 1,
            reason: format!("invalid order {first:?}"),
        })?;
        let mut g = Graph::empty(n).map_err(|_| GraphError::Parse {
            line: line_no + 1,
            reason: format!("order {n} exceeds maximum {MAX_ORDER}"),
        })?;
        for (idx, line) in lines {
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize, GraphError> {
                tok.and_then(|t| t.parse().ok()).ok_or(GraphError::Parse {
                    line: idx + 1,
                    reason: format!("expected `u v`, got {line:?}"),
                })
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    reason: format!("trailing tokens in {line:?}"),
                });
            }
            if u >= v || v >= n {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    reason: format!("edge ({u},{v}) must satisfy u < v < {n}"),
                });
            }
            if g.has_edge(u, v) {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    reason: format!("duplicate edge ({u},{v})"),
                });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

pub fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn bits_to_vec(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Part sizes of a complete multipartite graph. Parts occupy contiguous
/// vertex ranges in listed order, so vertex labels (and hence certificates)
/// are reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteSpec {
    part_sizes: Vec<usize>,
}

impl MultipartiteSpec {
    pub fn new(part_sizes: Vec<usize>) -> Result<MultipartiteSpec, GraphError> {
        if part_sizes.is_empty() {
            return Err(GraphError::EmptySpec);
        }
        if part_sizes.iter().any(|&s| s == 0) {
            return Err(GraphError::ZeroPart);
        }
        let order: usize = part_sizes.iter().sum();
        if order > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(order));
        }
        Ok(MultipartiteSpec { part_sizes })
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn order(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    /// Part index of each vertex under the contiguous-range labeling.
    pub fn part_of_vertex(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.order());
        for (i, &s) in self.part_sizes.iter().enumerate() {
            out.extend(std::iter::repeat(i).take(s));
        }
        out
    }

    pub fn equal_part_size(&self) -> Option<usize> {
        let r = self.part_sizes[0];
        self.part_sizes.iter().all(|&s| s == r).then_some(r)
    }
}

/// `u ~ v` iff `u`, `v` lie in different parts.
pub fn complete_multipartite(spec: &MultipartiteSpec) -> Graph {
    let n = spec.order();
    let part = spec.part_of_vertex();
    let mut g = Graph::empty(n).expect("spec order validated at construction");
    for u in 0..n {
        for v in (u + 1)..n {
            if part[u] != part[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Disjoint cliques of the given sizes on contiguous ranges. The complement
/// of `complete_multipartite` with the same size list.
pub fn disjoint_union_cliques(sizes: &[usize]) -> Result<Graph, GraphError> {
    if sizes.is_empty() {
        return Err(GraphError::EmptySizes);
    }
    if sizes.iter().any(|&s| s == 0) {
        return Err(GraphError::ZeroPart);
    }
    let n: usize = sizes.iter().sum();
    let mut g = Graph::empty(n)?;
    let mut base = 0;
    for &s in sizes {
        for u in base..base + s {
            for v in (u + 1)..base + s {
                g.add_edge(u, v);
            }
        }
        base += s;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multipartite_333() {
        let spec = MultipartiteSpec::new(vec![3, 3, 3]).unwrap();
        let g = complete_multipartite(&spec);
        assert_eq!(g.order(), 9);
        assert_eq!(g.edge_count(), 27);
        let (min, max, _) = g.degree_profile();
        assert_eq!((min, max), (6, 6));
    }

    #[test]
    fn multipartite_433() {
        // 45 total pairs minus 6+3+3 within-part pairs
        let spec = MultipartiteSpec::new(vec![4, 3, 3]).unwrap();
        let g = complete_multipartite(&spec);
        assert_eq!(g.order(), 10);
        assert_eq!(g.edge_count(), 33);
        let (min, max, _) = g.degree_profile();
        assert_eq!((min, max), (6, 7));
    }

    #[test]
    fn multipartite_single_part_is_edgeless() {
        let spec = MultipartiteSpec::new(vec![5]).unwrap();
        let g = complete_multipartite(&spec);
        assert_eq!(g.order(), 5);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn multipartite_rejects_bad_specs() {
        assert_eq!(MultipartiteSpec::new(vec![]), Err(GraphError::EmptySpec));
        assert_eq!(MultipartiteSpec::new(vec![3, 0]), Err(GraphError::ZeroPart));
        assert_eq!(
            MultipartiteSpec::new(vec![40, 40]),
            Err(GraphError::OrderTooLarge(80))
        );
    }

    #[test]
    fn cliques_433() {
        let g = disjoint_union_cliques(&[4, 3, 3]).unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(g.edge_count(), 12);
        let sizes: Vec<usize> = g.connected_components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
    }

    #[test]
    fn cliques_3k3_is_2_regular() {
        let g = disjoint_union_cliques(&[3, 3, 3]).unwrap();
        let (min, max, _) = g.degree_profile();
        assert_eq!((min, max), (2, 2));
    }

    #[test]
    fn clique_k1() {
        let g = disjoint_union_cliques(&[1]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.edge_count(), 0);
        assert!(disjoint_union_cliques(&[]).is_err());
        assert!(disjoint_union_cliques(&[2, 0]).is_err());
    }

    #[test]
    fn complement_duality_with_cliques() {
        let sizes = [4usize, 3, 3];
        let spec = MultipartiteSpec::new(sizes.to_vec()).unwrap();
        assert_eq!(
            disjoint_union_cliques(&sizes).unwrap().complement(),
            complete_multipartite(&spec)
        );
    }

    #[test]
    fn complement_edgeless_and_bipartite() {
        let edgeless = Graph::empty(5).unwrap();
        assert_eq!(edgeless.complement(), Graph::complete(5).unwrap());
        let k33 = complete_multipartite(&MultipartiteSpec::new(vec![3, 3]).unwrap());
        assert_eq!(k33.complement(), disjoint_union_cliques(&[3, 3]).unwrap());
    }

    #[test]
    fn overfull_examples() {
        assert!(Graph::complete(3).unwrap().is_overfull()); // 3 > 1*2
        let k33 = complete_multipartite(&MultipartiteSpec::new(vec![3, 3]).unwrap());
        assert!(!k33.is_overfull()); // 9 > 3*3 fails
        // regular with odd order: 27 > 4*6, class 2
        let m333 = complete_multipartite(&MultipartiteSpec::new(vec![3, 3, 3]).unwrap());
        assert!(m333.is_overfull());
        assert!(!Graph::empty(4).unwrap().is_overfull());
    }

    #[test]
    fn degree_profile_examples() {
        let k4 = Graph::complete(4).unwrap();
        let (min, max, degs) = k4.degree_profile();
        assert_eq!((min, max), (3, 3));
        assert_eq!(degs, vec![3; 4]);
        let e3 = Graph::empty(3).unwrap();
        assert_eq!(e3.degree_profile().0, 0);
        assert_eq!(e3.degree_profile().1, 0);
    }

    #[test]
    fn components_examples() {
        let k33 = complete_multipartite(&MultipartiteSpec::new(vec![3, 3]).unwrap());
        assert_eq!(k33.connected_components().len(), 1);
        let u = disjoint_union_cliques(&[4, 3, 3]).unwrap();
        let sizes: Vec<usize> = u.connected_components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
    }

    #[test]
    fn odd_degree_count_is_even() {
        for spec in [vec![3, 3, 3], vec![4, 3, 3], vec![2, 2], vec![5, 1]] {
            let g = complete_multipartite(&MultipartiteSpec::new(spec).unwrap());
            assert_eq!(g.count_odd_degree_vertices() % 2, 0);
        }
    }

    #[test]
    fn edge_count_is_half_degree_sum() {
        let g = complete_multipartite(&MultipartiteSpec::new(vec![4, 3, 3]).unwrap());
        let sum: usize = (0..g.order()).map(|v| g.degree(v)).sum();
        assert_eq!(g.edge_count() * 2, sum);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = complete_multipartite(&MultipartiteSpec::new(vec![2, 2, 1]).unwrap());
        let text = g.to_edge_list();
        let back = Graph::from_edge_list(&text).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn edge_list_rejects_malformed_input() {
        assert!(Graph::from_edge_list("").is_err());
        assert!(Graph::from_edge_list("x\n").is_err());
        assert!(Graph::from_edge_list("3\n0 0\n").is_err()); // self loop
        assert!(Graph::from_edge_list("3\n1 0\n").is_err()); // u >= v
        assert!(Graph::from_edge_list("3\n0 3\n").is_err()); // out of range
        assert!(Graph::from_edge_list("3\n0 1\n0 1\n").is_err()); // duplicate
        assert!(Graph::from_edge_list("3\n0 1 2\n").is_err()); // trailing token
        assert!(Graph::from_edge_list("100\n").is_err()); // over the cap
    }
}
