//! Set-joins and set-join covers.
//!
//! A cover stores its distinct components once and its joins as unordered
//! index pairs into that list, so the order `|𝒞|` (the number of distinct
//! components) is just `components.len()`. A join `{a, a}` is a component
//! joined with itself.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::match_sets;

/// A nonempty vertex subset used as one side of a set-join.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Component(VertexSet);

impl Component {
    pub fn new(set: VertexSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::arg("set-join components must be nonempty"));
        }
        Ok(Component(set))
    }

    /// From 1-based labels over a ground set of size `n`.
    pub fn from_labels(n: usize, labels: &[usize]) -> Result<Self> {
        let mut s = VertexSet::new(n);
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::arg(format!("vertex {l} outside 1..={n}")));
            }
            s.insert(l - 1);
        }
        Component::new(s)
    }

    pub fn set(&self) -> &VertexSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.labels()
    }

    pub fn canonical_cmp(&self, other: &Component) -> Ordering {
        self.0.canonical_cmp(&other.0)
    }
}

/// All pairs `{i, j}` with `i ∈ K`, `j ∈ L`, as sorted 1-based pairs
/// `(min, max)`. A vertex of `K ∩ L` yields its loop.
pub fn setjoin_edges(k: &VertexSet, l: &VertexSet, n: usize) -> Result<Vec<(usize, usize)>> {
    if k.is_empty() || l.is_empty() {
        return Err(Error::arg("set-join of an empty set"));
    }
    if k.width() != n || l.width() != n {
        return Err(Error::arg(
            "set-join sides must live on the ground set 1..=n",
        ));
    }
    let mut out = BTreeSet::new();
    for i in k.iter() {
        for j in l.iter() {
            out.insert((i.min(j) + 1, i.max(j) + 1));
        }
    }
    Ok(out.into_iter().collect())
}

/// A set-join cover candidate: distinct components plus joins on indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cover {
    ground_n: usize,
    components: Vec<Component>,
    joins: BTreeSet<(usize, usize)>,
}

impl Cover {
    /// The empty cover (valid exactly for edgeless graphs).
    pub fn empty(ground_n: usize) -> Self {
        Cover {
            ground_n,
            components: Vec::new(),
            joins: BTreeSet::new(),
        }
    }

    /// Checks every structural invariant: components nonempty, on the
    /// ground set and pairwise distinct; join indices in range; every
    /// component used by some join.
    pub fn from_parts(
        ground_n: usize,
        components: Vec<Component>,
        joins: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, c) in components.iter().enumerate() {
            if c.0.width() != ground_n {
                return Err(Error::arg(format!(
                    "component {i} is not a subset of 1..={ground_n}"
                )));
            }
            if let Some(j) = seen.insert(c.0.clone(), i) {
                return Err(Error::arg(format!("components {j} and {i} are equal")));
            }
        }
        let mut js = BTreeSet::new();
        let mut used = vec![false; components.len()];
        for (a, b) in joins {
            if a >= components.len() || b >= components.len() {
                return Err(Error::arg(format!(
                    "join ({a},{b}) refers to a missing component"
                )));
            }
            used[a] = true;
            used[b] = true;
            js.insert((a.min(b), a.max(b)));
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::arg(format!("component {i} takes part in no join")));
        }
        Ok(Cover {
            ground_n,
            components,
            joins: js,
        })
    }

    pub fn ground_n(&self) -> usize {
        self.ground_n
    }

    /// `|𝒞|`, the number of distinct components.
    pub fn order(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Joins as index pairs `(a, b)` with `a <= b`, sorted.
    pub fn joins(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.joins.iter().copied()
    }

    pub fn join_count(&self) -> usize {
        self.joins.len()
    }

    /// The graph on the ground set covered by the union of all joins.
    pub fn covered_graph(&self) -> Graph {
        let mut g = Graph::new(self.ground_n);
        for &(a, b) in &self.joins {
            let (k, l) = (&self.components[a].0, &self.components[b].0);
            for i in k.iter() {
                for j in l.iter() {
                    g.set0(i, j);
                }
            }
        }
        g
    }

    /// Total order on canonical covers: component lists first, joins second.
    pub fn canonical_cmp(&self, other: &Cover) -> Ordering {
        let by_components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.canonical_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| self.components.len().cmp(&other.components.len()));
        by_components.then_with(|| self.joins.iter().cmp(other.joins.iter()))
    }

    pub fn is_canonical(&self) -> bool {
        self.components
            .windows(2)
            .all(|w| w[0].canonical_cmp(&w[1]) == Ordering::Less)
    }
}

/// Incremental construction with deduplication: adding an existing
/// component returns its index.
#[derive(Clone, Debug)]
pub struct CoverBuilder {
    ground_n: usize,
    components: Vec<Component>,
    index: HashMap<VertexSet, usize>,
    joins: BTreeSet<(usize, usize)>,
}

impl CoverBuilder {
    pub fn new(ground_n: usize) -> Self {
        CoverBuilder {
            ground_n,
            components: Vec::new(),
            index: HashMap::new(),
            joins: BTreeSet::new(),
        }
    }

    pub fn add_component(&mut self, set: VertexSet) -> Result<usize> {
        if set.width() != self.ground_n {
            return Err(Error::arg("component width differs from the ground set"));
        }
        if let Some(&i) = self.index.get(&set) {
            return Ok(i);
        }
        let c = Component::new(set.clone())?;
        self.components.push(c);
        self.index.insert(set, self.components.len() - 1);
        Ok(self.components.len() - 1)
    }

    pub fn add_join(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.components.len() || b >= self.components.len() {
            return Err(Error::arg("join refers to a missing component"));
        }
        self.joins.insert((a.min(b), a.max(b)));
        Ok(())
    }

    /// Adds `K ∨ L`, creating either side if needed.
    pub fn join_sets(&mut self, k: VertexSet, l: VertexSet) -> Result<()> {
        let a = self.add_component(k)?;
        let b = self.add_component(l)?;
        self.add_join(a, b)
    }

    /// Finishes the cover, dropping components that ended up in no join.
    pub fn build(self) -> Cover {
        let mut used = vec![false; self.components.len()];
        for &(a, b) in &self.joins {
            used[a] = true;
            used[b] = true;
        }
        let mut remap = vec![usize::MAX; self.components.len()];
        let mut comps = Vec::new();
        for (i, c) in self.components.into_iter().enumerate() {
            if used[i] {
                remap[i] = comps.len();
                comps.push(c);
            }
        }
        let joins = self
            .joins
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (remap[a], remap[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        Cover {
            ground_n: self.ground_n,
            components: comps,
            joins,
        }
    }
}

/// Outcome of [`validate_cover`]: edges of `G` the cover misses and edges
/// it produces outside `G`, both as sorted 1-based pairs.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CoverReport {
    pub valid: bool,
    pub missing: Vec<(usize, usize)>,
    pub forbidden: Vec<(usize, usize)>,
}

/// Compares the two edge sets directly: missing edges and forbidden edges
/// are collected independently.
pub fn compare_edge_sets(expected: &Graph, produced: &Graph) -> CoverReport {
    let mut missing = Vec::new();
    let mut forbidden = Vec::new();
    for (i, j) in expected.edges0() {
        if !produced.adjacent0(i, j) {
            missing.push((i + 1, j + 1));
        }
    }
    for (i, j) in produced.edges0() {
        if !expected.adjacent0(i, j) {
            forbidden.push((i + 1, j + 1));
        }
    }
    CoverReport {
        valid: missing.is_empty() && forbidden.is_empty(),
        missing,
        forbidden,
    }
}

/// Checks that the union of the cover's set-joins is exactly `E(G)`.
pub fn validate_cover(g: &Graph, cover: &Cover) -> Result<CoverReport> {
    if cover.ground_n != g.order() {
        return Err(Error::arg(format!(
            "cover lives on {} vertices but the graph has {}",
            cover.ground_n,
            g.order()
        )));
    }
    Ok(compare_edge_sets(g, &cover.covered_graph()))
}

/// `G(𝒞)`: one vertex per component, an edge per join, a loop per
/// self-join.
pub fn cover_graph(cover: &Cover) -> Graph {
    let mut g = Graph::new(cover.order());
    for &(a, b) in &cover.joins {
        g.set0(a, b);
    }
    g
}

/// `𝒞[S]`: intersect components with `S`, drop joins with an emptied side,
/// merge equal components and relabel the ground set to `S` in order.
pub fn restrict_cover(cover: &Cover, keep: &VertexSet) -> Result<Cover> {
    if keep.width() != cover.ground_n {
        return Err(Error::arg(
            "restriction set must live on the cover's ground set",
        ));
    }
    let new_n = keep.len();
    let mut b = CoverBuilder::new(new_n);
    let shrunk: Vec<Option<VertexSet>> = cover
        .components
        .iter()
        .map(|c| {
            let s = c.0.intersection(keep);
            if s.is_empty() {
                None
            } else {
                // Order-preserving relabel: rank of each member within `keep`.
                let rank: Vec<usize> = keep.iter().collect();
                let pos = |v: usize| rank.binary_search(&v).expect("member of keep");
                Some(VertexSet::from_iter_width(new_n, s.iter().map(pos)))
            }
        })
        .collect();
    for &(x, y) in &cover.joins {
        if let (Some(k), Some(l)) = (&shrunk[x], &shrunk[y]) {
            b.join_sets(k.clone(), l.clone())?;
        }
    }
    Ok(b.build())
}

/// A system of distinct representatives of `V(𝒞)`, one 0-based vertex per
/// component, if one exists.
pub fn distinct_representatives(cover: &Cover) -> Option<Vec<usize>> {
    let sets: Vec<&VertexSet> = cover.components.iter().map(|c| &c.0).collect();
    match_sets(&sets, cover.ground_n).into_iter().collect()
}

pub fn sdr_exists(cover: &Cover) -> bool {
    distinct_representatives(cover).is_some()
}

/// Sorts components by (cardinality, member order) and rewrites the joins.
pub fn canonical_form(cover: &Cover) -> Cover {
    let mut idx: Vec<usize> = (0..cover.order()).collect();
    idx.sort_by(|&a, &b| cover.components[a].canonical_cmp(&cover.components[b]));
    let mut pos = vec![0; idx.len()];
    for (new, &old) in idx.iter().enumerate() {
        pos[old] = new;
    }
    Cover {
        ground_n: cover.ground_n,
        components: idx.iter().map(|&i| cover.components[i].clone()).collect(),
        joins: cover
            .joins
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (pos[a], pos[b]);
                (x.min(y), x.max(y))
            })
            .collect(),
    }
}
