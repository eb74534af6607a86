//! Uniqueness of optimal covers: unique, unique up to automorphism, or
//! unique only in their cover graph.

use std::collections::HashSet;

use serde::Serialize;

use crate::cover::{canonical_form, cover_graph, Cover, CoverBuilder};
use crate::error::{Error, Result};
use crate::graph::{automorphisms, is_isomorphic, Graph, Permutation};
use crate::solver::{enumerate_optimal_covers, SolverOptions};

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub rank: usize,
    /// Every optimal cover, canonical and sorted.
    pub covers: Vec<Cover>,
    /// Number of covers up to automorphisms of `G`.
    pub orbit_count: usize,
    /// Cover graphs of the optimal covers up to isomorphism.
    pub cover_graphs: Vec<Graph>,
    pub unique: bool,
    pub essentially_unique: bool,
    pub unique_cover_graph: bool,
}

#[derive(Serialize)]
struct ReportJson {
    rank: usize,
    cover_count: usize,
    orbit_count: usize,
    cover_graph_count: usize,
    unique: bool,
    essentially_unique: bool,
    unique_cover_graph: bool,
}

impl UniquenessReport {
    /// Flag summary; covers and cover graphs are serialized by the caller.
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            rank: self.rank,
            cover_count: self.covers.len(),
            orbit_count: self.orbit_count,
            cover_graph_count: self.cover_graphs.len(),
            unique: self.unique,
            essentially_unique: self.essentially_unique,
            unique_cover_graph: self.unique_cover_graph,
        })
        .expect("plain data serializes")
    }
}

/// `σ(𝒞) = {σ(𝒦) ∨ σ(ℒ)}`, canonicalized.
pub fn apply_automorphism(sigma: &Permutation, cover: &Cover) -> Result<Cover> {
    if sigma.len() != cover.ground_n() {
        return Err(Error::arg(format!(
            "permutation of {} points applied to a cover on {}",
            sigma.len(),
            cover.ground_n()
        )));
    }
    let mut b = CoverBuilder::new(cover.ground_n());
    let idx: Vec<usize> = cover
        .components()
        .iter()
        .map(|k| b.add_component(sigma.apply_set(k.set())))
        .collect::<Result<_>>()?;
    for (x, y) in cover.joins() {
        b.add_join(idx[x], idx[y])?;
    }
    Ok(canonical_form(&b.build()))
}

/// Whether some automorphism of `G` maps one cover onto the other.
pub fn covers_equivalent(g: &Graph, c1: &Cover, c2: &Cover) -> Result<bool> {
    let target = canonical_form(c2);
    for sigma in automorphisms(g)? {
        if apply_automorphism(&sigma, c1)? == target {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Least image of a cover under the group, used as its orbit label.
fn orbit_representative(group: &[Permutation], cover: &Cover) -> Result<Cover> {
    let mut best: Option<Cover> = None;
    for sigma in group {
        let img = apply_automorphism(sigma, cover)?;
        if best.as_ref().is_none_or(|b| img.canonical_cmp(b).is_lt()) {
            best = Some(img);
        }
    }
    Ok(best.unwrap_or_else(|| canonical_form(cover)))
}

/// Enumerates every optimal cover and classifies them. Refuses to answer
/// when the enumeration was cut short.
pub fn classify_uniqueness(g: &Graph, opts: &SolverOptions) -> Result<UniquenessReport> {
    let e = enumerate_optimal_covers(g, opts)?;
    if !e.complete {
        return Err(Error::Incomplete(
            "enumeration of optimal covers was cut short; uniqueness not classified".into(),
        ));
    }
    let group = automorphisms(g)?;
    let mut orbits = HashSet::new();
    for c in &e.covers {
        orbits.insert(orbit_representative(&group, c)?);
    }
    let mut cover_graphs: Vec<Graph> = Vec::new();
    for c in &e.covers {
        let h = cover_graph(c);
        if !cover_graphs.iter().any(|x| is_isomorphic(x, &h)) {
            cover_graphs.push(h);
        }
    }
    let orbit_count = orbits.len();
    Ok(UniquenessReport {
        rank: e.rank,
        unique: e.covers.len() == 1,
        essentially_unique: orbit_count == 1,
        unique_cover_graph: cover_graphs.len() == 1,
        covers: e.covers,
        orbit_count,
        cover_graphs,
    })
}
