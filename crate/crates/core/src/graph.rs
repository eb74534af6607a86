//! Simple undirected graphs with loops.
//!
//! A loop at `v` lives on the adjacency diagonal, so `N(v)` contains `v`
//! exactly when `v` carries a loop and twin detection is a plain row
//! comparison.

use std::collections::BTreeMap;
use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Default vertex cap for automorphism enumeration.
pub const AUTOMORPHISM_CAP: usize = 10;
/// Default host-size cap for subgraph monomorphism search.
pub const MONOMORPHISM_CAP: usize = 12;

/// A simple undirected graph on vertices `1..=n` with an explicit loop set.
///
/// Constructors and [`Graph::neighbors`] take 1-based labels. Row accessors
/// suffixed `0` work on 0-based indices and are meant for algorithms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
        }
    }

    /// Builds a graph from 1-based endpoint pairs; `(v, v)` is a loop and
    /// duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Reads a symmetric 0/1 adjacency matrix (diagonal = loops).
    pub fn from_adjacency(rows: &[&[u8]]) -> Result<Self> {
        let n = rows.len();
        let mut g = Graph::new(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::arg("adjacency matrix is not square"));
            }
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    if rows[j][i] == 0 {
                        return Err(Error::arg("adjacency matrix is not symmetric"));
                    }
                    g.set0(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(Error::arg(format!(
                "edge {{{u},{v}}} has an endpoint outside 1..={}",
                self.n
            )));
        }
        self.set0(u - 1, v - 1);
        Ok(())
    }

    #[inline]
    pub(crate) fn set0(&mut self, i: usize, j: usize) {
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    #[inline]
    pub(crate) fn unset0(&mut self, i: usize, j: usize) {
        self.adj[i].remove(j);
        self.adj[j].remove(i);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Adjacency test on 0-based indices (`i == j` asks for a loop).
    #[inline]
    pub fn adjacent0(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    /// Neighbourhood row of the 0-based vertex `i`.
    #[inline]
    pub fn row0(&self, i: usize) -> &VertexSet {
        &self.adj[i]
    }

    #[inline]
    pub fn has_loop0(&self, i: usize) -> bool {
        self.adj[i].contains(i)
    }

    /// `N_G(v)` for the 1-based vertex `v`.
    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        if v == 0 || v > self.n {
            return Err(Error::arg(format!("vertex {v} outside 1..={}", self.n)));
        }
        Ok(self.adj[v - 1].clone())
    }

    /// Number of neighbours other than the vertex itself.
    pub fn degree0(&self, i: usize) -> usize {
        self.adj[i].len() - usize::from(self.has_loop0(i))
    }

    /// Isolated means no incident edge at all, loops included.
    pub fn is_isolated0(&self, i: usize) -> bool {
        self.adj[i].is_empty()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|i| self.has_loop0(i))
    }

    /// Edges as 0-based pairs `(i, j)` with `i <= j`, sorted.
    pub fn edges0(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.adj[i].iter().filter(|&j| j >= i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Edges as 1-based pairs `(u, v)` with `u <= v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges0()
            .into_iter()
            .map(|(i, j)| (i + 1, j + 1))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges0().len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|r| r.is_empty())
    }

    /// Vertex sets of the connected components (isolated vertices included).
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for w in self.adj[v].iter() {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Induced subgraph on `keep`; also returns the new-to-old index map.
    pub fn induced0(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().collect();
        let mut g = Graph::new(map.len());
        for (a, &i) in map.iter().enumerate() {
            for (b, &j) in map.iter().enumerate().skip(a) {
                if self.adjacent0(i, j) {
                    g.set0(a, b);
                }
            }
        }
        (g, map)
    }

    /// Removes every edge incident to the 0-based vertex `w` (its loop too).
    pub fn without_edges_at0(&self, w: usize) -> Graph {
        let mut g = self.clone();
        let nb: Vec<usize> = g.adj[w].iter().collect();
        for v in nb {
            g.unset0(w, v);
        }
        g
    }

    /// Relabels vertices: vertex `i` of `self` becomes `perm.apply0(i)`.
    pub fn permuted(&self, perm: &Permutation) -> Graph {
        let mut g = Graph::new(self.n);
        for (i, j) in self.edges0() {
            g.set0(perm.apply0(i), perm.apply0(j));
        }
        g
    }

    /// Keeps one representative per twin class (`N(v) = N(w)`).
    ///
    /// Classes are listed in order of their smallest member, which is also
    /// the representative; vertex `c` of the returned graph stands for
    /// class `c`.
    pub fn twin_free_reduce(&self) -> (Graph, TwinPartition) {
        let mut by_row: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; self.n];
        for v in 0..self.n {
            let key: Vec<usize> = self.adj[v].iter().collect();
            let c = *by_row.entry(key).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(v);
            class_of[v] = c;
        }
        let reps = VertexSet::from_iter_width(self.n, classes.iter().map(|c| c[0]));
        let (g, _) = self.induced0(&reps);
        (g, TwinPartition { classes, class_of })
    }

    pub fn is_twin_free(&self) -> bool {
        let (g, _) = self.twin_free_reduce();
        g.n == self.n
    }

    /// Loopless and acyclic.
    pub fn is_forest(&self) -> bool {
        !self.has_loops() && self.edge_count() + self.connected_components().len() == self.n
    }

    /// Exactly `C_n` for some `n >= 3`.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3
            && !self.has_loops()
            && self.is_connected()
            && (0..self.n).all(|v| self.degree0(v) == 2)
    }

    /// `K_n` without loops, `n >= 2`.
    pub fn is_complete(&self) -> bool {
        self.n >= 2 && (0..self.n).all(|v| !self.has_loop0(v) && self.degree0(v) == self.n - 1)
    }

    /// `K_n` with a loop at every vertex.
    pub fn is_complete_looped(&self) -> bool {
        self.n >= 1 && self.adj.iter().all(|r| r.len() == self.n)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Twin classes produced by [`Graph::twin_free_reduce`] (0-based members).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl TwinPartition {
    /// Expands a set over class indices back to the original vertices.
    pub fn expand(&self, set: &VertexSet, original_n: usize) -> VertexSet {
        let mut out = VertexSet::new(original_n);
        for c in set.iter() {
            for &v in &self.classes[c] {
                out.insert(v);
            }
        }
        out
    }
}

/// `G ∪ H`: labels of `h` shift by `|V(g)|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let mut out = Graph::new(g.n + h.n);
    for (i, j) in g.edges0() {
        out.set0(i, j);
    }
    for (i, j) in h.edges0() {
        out.set0(g.n + i, g.n + j);
    }
    out
}

/// `G ∨ H`: disjoint union plus every cross edge.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    for i in 0..g.n {
        for j in 0..h.n {
            out.set0(i, g.n + j);
        }
    }
    out
}

/// Co-normal product `G ∗ H` on `V(G) × V(H)`, row-major: `(g, h)` gets
/// index `g·|V(H)| + h`.
pub fn conormal_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.n;
    let mut out = Graph::new(g.n * m);
    for a in 0..g.n * m {
        for b in a..g.n * m {
            let (ga, ha) = (a / m, a % m);
            let (gb, hb) = (b / m, b % m);
            if g.adjacent0(ga, gb) || h.adjacent0(ha, hb) {
                out.set0(a, b);
            }
        }
    }
    out
}

/// A bijection on the vertex set, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// From 1-based images: `labels[i-1]` is where vertex `i` goes.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &l in labels {
            if l == 0 || l > n || seen[l - 1] {
                return Err(Error::arg(format!(
                    "{labels:?} is not a permutation of 1..={n}"
                )));
            }
            seen[l - 1] = true;
            image.push(l - 1);
        }
        Ok(Permutation { image })
    }

    pub(crate) fn from_image0(image: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = image.clone();
            s.sort_unstable();
            s.into_iter().enumerate().all(|(i, x)| i == x)
        });
        Permutation { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply0(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn labels(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x + 1).collect()
    }

    /// `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }

    pub fn apply_set(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_iter_width(set.width(), set.iter().map(|v| self.image[v]))
    }
}

fn vertex_signature(g: &Graph, i: usize) -> (bool, usize) {
    (g.has_loop0(i), g.degree0(i))
}

/// All automorphisms of `g`, in lexicographic order of their images.
pub fn automorphisms(g: &Graph) -> Result<Vec<Permutation>> {
    automorphisms_capped(g, AUTOMORPHISM_CAP)
}

pub fn automorphisms_capped(g: &Graph, cap: usize) -> Result<Vec<Permutation>> {
    if g.n > cap {
        return Err(Error::limit(format!(
            "automorphism search on {} vertices exceeds the cap of {cap}",
            g.n
        )));
    }
    let mut out = Vec::new();
    isomorphisms_into(g, g, &mut |p| {
        out.push(p);
        true
    });
    Ok(out)
}

/// Brute-force isomorphism test with loop/degree pruning.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n != h.n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut sg: Vec<_> = (0..g.n).map(|i| vertex_signature(g, i)).collect();
    let mut sh: Vec<_> = (0..h.n).map(|i| vertex_signature(h, i)).collect();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return false;
    }
    let mut found = false;
    isomorphisms_into(g, h, &mut |_| {
        found = true;
        false
    });
    found
}

/// Enumerates bijections `g → h` preserving adjacency both ways. The
/// callback returns `false` to stop early.
fn isomorphisms_into(g: &Graph, h: &Graph, visit: &mut dyn FnMut(Permutation) -> bool) {
    fn rec(
        g: &Graph,
        h: &Graph,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(Permutation) -> bool,
    ) -> bool {
        let i = image.len();
        if i == g.n {
            return visit(Permutation::from_image0(image.clone()));
        }
        let sig = vertex_signature(g, i);
        for t in 0..h.n {
            if used[t] || vertex_signature(h, t) != sig {
                continue;
            }
            let consistent = image
                .iter()
                .enumerate()
                .all(|(p, &q)| g.adjacent0(p, i) == h.adjacent0(q, t));
            if !consistent {
                continue;
            }
            used[t] = true;
            image.push(t);
            let go_on = rec(g, h, image, used, visit);
            image.pop();
            used[t] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    if g.n != h.n {
        return;
    }
    rec(
        g,
        h,
        &mut Vec::with_capacity(g.n),
        &mut vec![false; h.n],
        visit,
    );
}

/// Is there an injective map `V(pattern) → V(host)` sending edges to edges
/// and loops to loops? The image need not be induced.
pub fn subgraph_monomorphism_exists(pattern: &Graph, host: &Graph) -> Result<bool> {
    subgraph_monomorphism_capped(pattern, host, MONOMORPHISM_CAP)
}

pub fn subgraph_monomorphism_capped(pattern: &Graph, host: &Graph, cap: usize) -> Result<bool> {
    if host.n > cap {
        return Err(Error::limit(format!(
            "monomorphism search on a {}-vertex host exceeds the cap of {cap}",
            host.n
        )));
    }
    if pattern.n > host.n {
        return Ok(false);
    }
    // Place high-degree pattern vertices first; they are the most constrained.
    let mut order: Vec<usize> = (0..pattern.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pattern.adj[v].len()));

    fn rec(
        p: &Graph,
        h: &Graph,
        order: &[usize],
        depth: usize,
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for t in 0..h.n {
            if used[t] || h.degree0(t) < p.degree0(v) || (p.has_loop0(v) && !h.has_loop0(t)) {
                continue;
            }
            let ok = p.adj[v]
                .iter()
                .filter(|&w| w != v)
                .all(|w| image[w].is_none_or(|tw| h.adjacent0(t, tw)));
            if !ok {
                continue;
            }
            used[t] = true;
            image[v] = Some(t);
            if rec(p, h, order, depth + 1, image, used) {
                return true;
            }
            image[v] = None;
            used[t] = false;
        }
        false
    }
    Ok(rec(
        pattern,
        host,
        &order,
        0,
        &mut vec![None; pattern.n],
        &mut vec![false; host.n],
    ))
}

/// Named graph families used throughout the crate and its tests.
pub mod families {
    use super::{disjoint_union, join, Graph};

    pub fn empty(n: usize) -> Graph {
        Graph::new(n)
    }

    /// `K1^ℓ`: a single vertex with a loop.
    pub fn looped_vertex() -> Graph {
        complete_looped(1)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.set0(i, j);
            }
        }
        g
    }

    /// `K_n^ℓ`: complete graph with every loop.
    pub fn complete_looped(n: usize) -> Graph {
        let mut g = complete(n);
        for i in 0..n {
            g.set0(i, i);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.set0(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut g = path(n);
        g.set0(n - 1, 0);
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        join(&empty(a), &empty(b))
    }

    /// `star(k_1, …, k_t)`: vertex 1 is the centre, arms follow in order.
    pub fn generalized_star(arms: &[usize]) -> Graph {
        let n = 1 + arms.iter().sum::<usize>();
        let mut g = Graph::new(n);
        let mut next = 1;
        for &k in arms {
            let mut prev = 0;
            for _ in 0..k {
                g.set0(prev, next);
                prev = next;
                next += 1;
            }
        }
        g
    }

    /// `T_1 = K1 ∨ K1^ℓ`, `T_{i+1} = (T_i ∪ K1) ∨ K1^ℓ`.
    pub fn threshold_chain(i: usize) -> Graph {
        assert!(i >= 1);
        let mut g = join(&empty(1), &looped_vertex());
        for _ in 1..i {
            g = join(&disjoint_union(&g, &empty(1)), &looped_vertex());
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn labels(s: &VertexSet) -> Vec<usize> {
        s.labels()
    }

    #[test]
    fn neighbors_examples() {
        let p3 = path(3);
        assert_eq!(labels(&p3.neighbors(2).unwrap()), vec![1, 3]);
        assert_eq!(labels(&looped_vertex().neighbors(1).unwrap()), vec![1]);
        assert!(empty(1).neighbors(1).unwrap().is_empty());
        assert!(matches!(p3.neighbors(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(p3.neighbors(4), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn twin_reduction_examples() {
        let (g, part) = complete_bipartite(2, 3).twin_free_reduce();
        assert_eq!(g, path(2));
        assert_eq!(part.classes, vec![vec![0, 1], vec![2, 3, 4]]);

        let (g, part) = complete(6).twin_free_reduce();
        assert_eq!(g, complete(6));
        assert_eq!(part.classes.len(), 6);

        let (g, _) = complete_looped(3).twin_free_reduce();
        assert_eq!(g, looped_vertex());
    }

    #[test]
    fn union_and_join_examples() {
        let g = disjoint_union(&empty(1), &empty(1));
        assert_eq!((g.order(), g.edge_count()), (2, 0));
        let g = disjoint_union(&path(2), &path(2));
        assert_eq!(g.edges(), vec![(1, 2), (3, 4)]);
        let g = disjoint_union(&cycle(3), &looped_vertex());
        assert_eq!(g.edges(), vec![(1, 2), (1, 3), (2, 3), (4, 4)]);

        assert_eq!(join(&empty(1), &empty(1)), path(2));
        let g1 = join(&looped_vertex(), &looped_vertex());
        assert_eq!(g1, complete_looped(2));
        let star = join(
            &disjoint_union(
                &disjoint_union(&looped_vertex(), &looped_vertex()),
                &looped_vertex(),
            ),
            &looped_vertex(),
        );
        assert_eq!(
            star.edges(),
            vec![(1, 1), (1, 4), (2, 2), (2, 4), (3, 3), (3, 4), (4, 4)]
        );
        let g3 = join(&complete(3), &looped_vertex());
        assert_eq!(
            g3.edges(),
            vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 4)]
        );
    }

    #[test]
    fn conormal_examples() {
        assert_eq!(conormal_product(&complete(2), &complete(3)), complete(6));
        assert_eq!(conormal_product(&complete(2), &complete(2)), complete(4));
        let g = generalized_star(&[2, 1, 1]);
        assert_eq!(conormal_product(&g, &empty(1)), g);
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphisms(&cycle(3)).unwrap().len(), 6);
        let p3 = automorphisms(&path(3)).unwrap();
        assert_eq!(p3.len(), 2);
        assert_eq!(p3[1].labels(), vec![3, 2, 1]);
        let g = disjoint_union(&looped_vertex(), &empty(1));
        assert_eq!(automorphisms(&g).unwrap(), vec![Permutation::identity(2)]);
        assert!(matches!(automorphisms(&empty(11)), Err(Error::Limit(_))));
    }

    #[test]
    fn monomorphism_examples() {
        let k2k3 = disjoint_union(&complete(2), &complete(3));
        assert!(subgraph_monomorphism_exists(&k2k3, &complete(6)).unwrap());
        assert!(!subgraph_monomorphism_exists(&cycle(3), &path(4)).unwrap());
        assert!(!subgraph_monomorphism_exists(&looped_vertex(), &cycle(4)).unwrap());
        assert!(subgraph_monomorphism_exists(&path(4), &cycle(4)).unwrap());
        assert!(matches!(
            subgraph_monomorphism_exists(&path(2), &empty(13)),
            Err(Error::Limit(_))
        ));
    }

    #[test]
    fn permutation_from_labels_rejects_non_bijections() {
        assert!(Permutation::from_labels(&[1, 1]).is_err());
        assert!(Permutation::from_labels(&[0, 1]).is_err());
        let p = Permutation::from_labels(&[2, 3, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
    }

    #[test]
    fn generalized_star_shape() {
        let g = generalized_star(&[3, 3, 3]);
        assert_eq!(g.order(), 10);
        assert_eq!(g.degree0(0), 3);
        assert_eq!(threshold_chain(1).edges(), vec![(1, 2), (2, 2)]);
        assert_eq!(threshold_chain(2).order(), 4);
    }

    #[test]
    fn is_isomorphic_distinguishes_loops() {
        let a = Graph::from_edges(2, &[(1, 2), (1, 1)]).unwrap();
        let b = Graph::from_edges(2, &[(1, 2), (2, 2)]).unwrap();
        let c = Graph::from_edges(2, &[(1, 2)]).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &c));
    }
}
