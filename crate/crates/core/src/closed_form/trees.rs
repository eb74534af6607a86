//! Forests, generalized stars, cycles and unicyclic graphs.

use crate::bitset::VertexSet;
use crate::cover::{Cover, CoverBuilder};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn lowest_leaf(g: &Graph, within: Option<&VertexSet>) -> Option<usize> {
    (0..g.order()).find(|&v| g.degree0(v) == 1 && within.is_none_or(|s| s.contains(v)))
}

/// Adds `{w} ∨ N(w)` for the lowest-labelled leaf's neighbour `w` and
/// deletes the edges at `w`.
fn leaf_step(g: &Graph, b: &mut CoverBuilder, within: Option<&VertexSet>) -> Result<Option<Graph>> {
    let Some(leaf) = lowest_leaf(g, within) else {
        return Ok(None);
    };
    let w = g.row0(leaf).iter().next().expect("a leaf has a neighbour");
    let centre = VertexSet::from_iter_width(g.order(), [w]);
    b.join_sets(centre, g.row0(w).clone())?;
    Ok(Some(g.without_edges_at0(w)))
}

fn require_forest(g: &Graph) -> Result<()> {
    if g.has_loops() {
        return Err(Error::arg("forest formulas need a loopless graph"));
    }
    if !g.is_forest() {
        return Err(Error::arg("graph has a cycle"));
    }
    Ok(())
}

/// `st₊(F) = 2·starc(F)` with a cover of stars `{w} ∨ N(w)` found by
/// repeated leaf reduction.
pub fn snt_rank_forest(g: &Graph) -> Result<(usize, Cover)> {
    require_forest(g)?;
    let mut b = CoverBuilder::new(g.order());
    let mut h = g.clone();
    let mut stars = 0;
    while let Some(next) = leaf_step(&h, &mut b, None)? {
        h = next;
        stars += 1;
    }
    Ok((2 * stars, b.build()))
}

/// Matching number of a forest by greedy leaf matching.
pub fn forest_matching_number(g: &Graph) -> Result<usize> {
    require_forest(g)?;
    let mut h = g.clone();
    let mut m = 0;
    while let Some(leaf) = lowest_leaf(&h, None) {
        let w = h.row0(leaf).iter().next().expect("a leaf has a neighbour");
        h = h.without_edges_at0(w).without_edges_at0(leaf);
        m += 1;
    }
    Ok(m)
}

/// `star(k_1, …, k_t)`: `|V| + 1 - #odd arms`, or `|V| - 1` when every
/// arm is even.
pub fn snt_rank_generalized_star(arms: &[usize]) -> Result<usize> {
    if arms.len() < 3 {
        return Err(Error::arg("a generalized star has at least 3 arms"));
    }
    if arms.contains(&0) {
        return Err(Error::arg("arm lengths must be positive"));
    }
    let v = 1 + arms.iter().sum::<usize>();
    let odd = arms.iter().filter(|&&k| k % 2 == 1).count();
    Ok(if odd > 0 { v + 1 - odd } else { v - 1 })
}

/// Arm lengths if `g` is a generalized star: loopless, acyclic, exactly
/// one vertex of degree at least 3 and none above 2 elsewhere.
pub fn generalized_star_arms(g: &Graph) -> Option<Vec<usize>> {
    if !g.is_connected() || !g.is_forest() {
        return None;
    }
    let hubs: Vec<usize> = (0..g.order()).filter(|&v| g.degree0(v) >= 3).collect();
    let [hub] = hubs[..] else { return None };
    let mut arms = Vec::new();
    for first in g.row0(hub).iter() {
        let (mut prev, mut cur, mut len) = (hub, first, 1);
        while let Some(next) = g.row0(cur).iter().find(|&x| x != prev) {
            prev = cur;
            cur = next;
            len += 1;
        }
        arms.push(len);
    }
    Some(arms)
}

/// `st₊(C_n) = n`, except `st₊(C_4) = 2`.
pub fn snt_rank_cycle(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::arg("cycles need n >= 3"));
    }
    Ok(if n == 4 { 2 } else { n })
}

/// Optimal cover of `C_n` with vertices `1..=n` in cycle order.
pub fn cycle_cover(n: usize) -> Result<Cover> {
    snt_rank_cycle(n)?;
    let mut b = CoverBuilder::new(n);
    let one = |v: usize| VertexSet::from_iter_width(n, [v]);
    if n == 4 {
        b.join_sets(
            VertexSet::from_iter_width(4, [0, 2]),
            VertexSet::from_iter_width(4, [1, 3]),
        )?;
    } else {
        for v in 0..n {
            b.join_sets(one(v), one((v + 1) % n))?;
        }
    }
    Ok(b.build())
}

/// The vertices of a cycle component in cycle order.
fn cycle_order(g: &Graph, comp: &VertexSet) -> Vec<usize> {
    let start = comp.iter().next().expect("nonempty component");
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.row0(start).iter().next().expect("degree 2");
    while cur != start {
        order.push(cur);
        let next = g.row0(cur).iter().find(|&x| x != prev).expect("degree 2");
        prev = cur;
        cur = next;
    }
    order
}

/// Rank and cover of a loopless graph whose components are trees, cycles
/// or unicyclic graphs: leaf reductions inside components that are neither
/// trees nor cycles, then the tree and cycle formulas.
pub(crate) fn unicyclic_cover(g: &Graph) -> Result<(usize, Cover)> {
    if g.has_loops() {
        return Err(Error::arg("unicyclic formulas need a loopless graph"));
    }
    let n = g.order();
    let mut b = CoverBuilder::new(n);
    let mut h = g.clone();
    let mut rank = 0;
    loop {
        let open = h.connected_components().into_iter().find(|c| {
            let (sub, _) = h.induced0(c);
            !sub.is_forest() && !sub.is_cycle()
        });
        let Some(comp) = open else { break };
        let (sub, _) = h.induced0(&comp);
        if sub.edge_count() != sub.order() {
            return Err(Error::arg("a component has more than one cycle"));
        }
        h = leaf_step(&h, &mut b, Some(&comp))?
            .ok_or_else(|| Error::arg("unicyclic component without a leaf"))?;
        rank += 2;
    }
    for comp in h.connected_components() {
        let (sub, map) = h.induced0(&comp);
        if sub.is_edgeless() {
            continue;
        }
        if sub.is_cycle() {
            let ord = cycle_order(&h, &comp);
            let c = cycle_cover(ord.len())?;
            rank += c.order();
            for (x, y) in c.joins() {
                let lift = |i: usize| {
                    VertexSet::from_iter_width(n, c.components()[i].set().iter().map(|v| ord[v]))
                };
                b.join_sets(lift(x), lift(y))?;
            }
        } else {
            let (r, c) = snt_rank_forest(&sub)?;
            rank += r;
            for (x, y) in c.joins() {
                let lift = |i: usize| {
                    VertexSet::from_iter_width(n, c.components()[i].set().iter().map(|v| map[v]))
                };
                b.join_sets(lift(x), lift(y))?;
            }
        }
    }
    Ok((rank, b.build()))
}

/// `st₊` of a connected loopless graph with exactly one cycle.
pub fn snt_rank_unicyclic(g: &Graph) -> Result<usize> {
    if g.has_loops() || !g.is_connected() || g.edge_count() != g.order() || g.order() < 3 {
        return Err(Error::arg("graph is not connected, loopless and unicyclic"));
    }
    Ok(unicyclic_cover(g)?.0)
}
