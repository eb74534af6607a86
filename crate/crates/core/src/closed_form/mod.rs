//! Closed-form ranks, reductions and the dispatcher built on them.

mod katona;
mod trees;

pub use katona::{
    build_complete_cover, complete_cover_factors, katona_plateau_end, katona_recursion_check,
    katona_s, min_factor_sum, product_cover, FactorList, FactorSumTable,
};
pub use trees::{
    cycle_cover, forest_matching_number, generalized_star_arms, snt_rank_cycle, snt_rank_forest,
    snt_rank_generalized_star, snt_rank_unicyclic,
};

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::cover::{canonical_form, Cover, CoverBuilder};
use crate::error::{Error, Result};
use crate::graph::{families, is_isomorphic, Graph};
use crate::solver::{snt_rank_exact, SolveResult, SolverOptions, Status};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum GraphClass {
    Edgeless,
    Forest,
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    CompleteWithAllLoops { n: usize },
    GeneralizedStar { arms: Vec<usize> },
    Unicyclic,
    ThresholdWithLoops { i: usize },
    Other,
}

/// Recognises the classes with a closed form. Paths and generalized stars
/// are reported before the wider forest class; `C_3` is a cycle.
pub fn classify(g: &Graph) -> GraphClass {
    let n = g.order();
    if g.is_edgeless() {
        return GraphClass::Edgeless;
    }
    if g.is_complete_looped() {
        return GraphClass::CompleteWithAllLoops { n };
    }
    if g.is_forest() {
        if g.is_connected() && (0..n).all(|v| g.degree0(v) <= 2) {
            return GraphClass::Path { n };
        }
        if let Some(arms) = generalized_star_arms(g) {
            return GraphClass::GeneralizedStar { arms };
        }
        return GraphClass::Forest;
    }
    if g.is_cycle() {
        return GraphClass::Cycle { n };
    }
    if g.is_complete() {
        return GraphClass::Complete { n };
    }
    if !g.has_loops() && g.is_connected() && g.edge_count() == n {
        return GraphClass::Unicyclic;
    }
    if n.is_multiple_of(2) && n >= 2 && is_isomorphic(g, &families::threshold_chain(n / 2)) {
        return GraphClass::ThresholdWithLoops { i: n / 2 };
    }
    GraphClass::Other
}

/// The `∨ K_1^ℓ` reduction. For a looped vertex `v` adjacent to every
/// vertex (the lowest such label), with `G' = G - v`: returns `(G', 0)` if
/// `G'` has no isolated loopless vertex, otherwise `(H, 2)` where `H` is
/// `G'` without them.
pub fn reduce_vk1(g: &Graph) -> Option<(Graph, usize)> {
    reduce_vk1_with_apex(g).map(|r| (r.reduced, r.delta))
}

struct ApexReduction {
    reduced: Graph,
    delta: usize,
    apex: usize,
    /// Original indices of the reduced graph's vertices.
    kept: Vec<usize>,
    /// Isolated loopless vertices of `G - v`.
    isolated: Vec<usize>,
}

fn reduce_vk1_with_apex(g: &Graph) -> Option<ApexReduction> {
    let n = g.order();
    if n < 2 {
        return None;
    }
    let apex = (0..n).find(|&v| g.row0(v).len() == n)?;
    let mut rest = VertexSet::full(n);
    rest.remove(apex);
    let isolated: Vec<usize> = rest.iter().filter(|&v| g.row0(v).len() == 1).collect();
    for &v in &isolated {
        rest.remove(v);
    }
    let (reduced, kept) = g.induced0(&rest);
    let delta = if isolated.is_empty() { 0 } else { 2 };
    Some(ApexReduction {
        reduced,
        delta,
        apex,
        kept,
        isolated,
    })
}

/// How [`snt_rank`] may resolve a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Closed forms and reductions, then the exact search.
    Auto,
    /// The exact search only.
    Exact,
    /// Closed forms and reductions only; fails when they do not suffice.
    Closed,
}

struct Piece {
    status: Status,
    lower: usize,
    cover: Cover,
    nodes: u64,
}

fn lift_cover(c: &Cover, n: usize, map: impl Fn(usize) -> Vec<usize>) -> Result<CoverBuilder> {
    let mut b = CoverBuilder::new(n);
    let idx: Vec<usize> = c
        .components()
        .iter()
        .map(|k| b.add_component(VertexSet::from_iter_width(n, k.set().iter().flat_map(&map))))
        .collect::<Result<_>>()?;
    for (x, y) in c.joins() {
        b.add_join(idx[x], idx[y])?;
    }
    Ok(b)
}

fn exact_piece(g: &Graph, opts: &SolverOptions) -> Result<Piece> {
    let r: SolveResult = snt_rank_exact(g, opts)?;
    Ok(Piece {
        status: r.status,
        lower: r.lower_bound,
        cover: r.certificate,
        nodes: r.nodes,
    })
}

fn exact(cover: Cover) -> Piece {
    Piece {
        status: Status::Exact,
        lower: cover.order(),
        cover,
        nodes: 0,
    }
}

/// Solves a graph with no isolated loopless vertex.
fn dispatch(g: &Graph, opts: &SolverOptions, method: Method) -> Result<Piece> {
    let n = g.order();
    let comps = g.connected_components();
    if comps.len() > 1 {
        let mut b = CoverBuilder::new(n);
        let mut status = Status::Exact;
        let (mut lower, mut nodes) = (0, 0);
        for comp in comps {
            let (sub, map) = g.induced0(&comp);
            let p = dispatch(&sub, opts, method)?;
            if p.status != Status::Exact {
                status = p.status;
            }
            lower += p.lower;
            nodes += p.nodes;
            let lifted = lift_cover(&p.cover, n, |v| vec![map[v]])?.build();
            for (x, y) in lifted.joins() {
                b.join_sets(
                    lifted.components()[x].set().clone(),
                    lifted.components()[y].set().clone(),
                )?;
            }
        }
        return Ok(Piece {
            status,
            lower,
            cover: b.build(),
            nodes,
        });
    }
    if g.is_edgeless() {
        return Ok(exact(Cover::empty(n)));
    }

    let (tf, part) = g.twin_free_reduce();
    if tf.order() < n {
        let p = dispatch(&tf, opts, method)?;
        let cover = lift_cover(&p.cover, n, |v| part.classes[v].clone())?.build();
        return Ok(Piece { cover, ..p });
    }

    if let Some(r) = reduce_vk1_with_apex(g) {
        let p = dispatch(&r.reduced, opts, method)?;
        let apex = r.apex;
        let mut b = lift_cover(&p.cover, n, |v| {
            let mut out = vec![r.kept[v]];
            out.push(apex);
            out
        })?;
        if r.delta == 2 {
            let single = VertexSet::from_iter_width(n, [apex]);
            let fan = VertexSet::from_iter_width(n, r.isolated.iter().copied().chain([apex]));
            b.join_sets(single, fan)?;
        }
        return Ok(Piece {
            status: p.status,
            lower: p.lower + r.delta,
            cover: b.build(),
            nodes: p.nodes,
        });
    }

    match classify(g) {
        GraphClass::CompleteWithAllLoops { .. } => {
            let mut b = CoverBuilder::new(n);
            b.join_sets(VertexSet::full(n), VertexSet::full(n))?;
            Ok(exact(b.build()))
        }
        GraphClass::Path { .. } | GraphClass::GeneralizedStar { .. } | GraphClass::Forest => {
            Ok(exact(snt_rank_forest(g)?.1))
        }
        GraphClass::Cycle { .. } | GraphClass::Unicyclic => Ok(exact(trees::unicyclic_cover(g)?.1)),
        GraphClass::Complete { n } => Ok(exact(build_complete_cover(n)?)),
        _ if method == Method::Closed => Err(Error::Incomplete(
            "no closed form or reduction applies to a remaining component".into(),
        )),
        _ => exact_piece(g, opts),
    }
}

/// `st₊(G)` through the closed forms: components are solved separately,
/// isolated loopless vertices dropped, twins merged, looped apexes
/// removed, recognised classes answered by formula and the rest by the
/// exact search. The certificate is reassembled for the original graph.
pub fn snt_rank(g: &Graph, opts: &SolverOptions, method: Method) -> Result<SolveResult> {
    if method == Method::Exact {
        return snt_rank_exact(g, opts);
    }
    let n = g.order();
    let keep = VertexSet::from_iter_width(n, (0..n).filter(|&v| !g.is_isolated0(v)));
    let (core, map) = g.induced0(&keep);
    let p = dispatch(&core, opts, method)?;
    let cover = canonical_form(&lift_cover(&p.cover, n, |v| vec![map[v]])?.build());
    let upper = cover.order();
    let mut status = p.status;
    if status == Status::Exact && opts.max_order.is_some_and(|m| upper > m) {
        status = Status::CapReached;
    }
    Ok(SolveResult {
        status,
        rank: (status == Status::Exact).then_some(upper),
        lower_bound: if status == Status::Exact {
            upper
        } else {
            p.lower
        },
        upper_bound: upper,
        certificate: cover,
        enumeration: None,
        nodes: p.nodes,
    })
}
