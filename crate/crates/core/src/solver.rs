//! Exact minimum-order set-join covers.
//!
//! For a fixed component family `F`, the best possible join set is every
//! admissible pair `(K, L)` of `F` with `K × L ⊆ E(G)`. So a family is
//! feasible iff its admissible pairs cover `E(G)`, and the search only has
//! to find a smallest feasible family. Feasibility is monotone in `F`.
//!
//! The search deepens on the order `k`. At each node it takes the smallest
//! uncovered edge `{i, j}`; some pair of the target family covers it and at
//! least one side of that pair is missing from `F`, which gives the moves:
//! one new side next to an existing component (cost 1), or two new sides,
//! or a single looped clique joined with itself.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::closed_form::{forest_matching_number, katona_s, snt_rank_cycle};
use crate::cover::{canonical_form, Cover, CoverBuilder};
use crate::error::{Error, Result};
use crate::graph::{Graph, TwinPartition};
use crate::matching::masks_have_sdr;

/// Largest connected component (after twin reduction) the search accepts.
pub const VERTEX_CAP: usize = 20;
const MEMO_CAP: usize = 1 << 22;

/// Switches for the individual pruning rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pruning {
    /// Fooling-set bound on the components still needed.
    pub bound: bool,
    /// Discard families without a system of distinct representatives.
    pub sdr: bool,
    /// Minimum component size on complete graphs.
    pub complete_size: bool,
    /// Skip families already explored at the current order.
    pub memo: bool,
    /// Solve the twin-free reduction and expand the certificate.
    pub twins: bool,
    /// Start the deepening at the closed-form value for recognised classes.
    pub class_bounds: bool,
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning {
            bound: true,
            sdr: true,
            complete_size: true,
            memo: true,
            twins: true,
            class_bounds: true,
        }
    }
}

impl Pruning {
    pub fn none() -> Self {
        Pruning {
            bound: false,
            sdr: false,
            complete_size: false,
            memo: false,
            twins: false,
            class_bounds: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub max_order: Option<usize>,
    pub time_limit: Option<Duration>,
    pub enumerate_all: bool,
    pub threads: usize,
    pub pruning: Pruning,
    /// Stop enumerating after this many covers (the result is then partial).
    pub max_covers: Option<usize>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_order: None,
            time_limit: None,
            enumerate_all: false,
            threads: 1,
            pruning: Pruning::default(),
            max_covers: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    CapReached,
    Timeout,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::CapReached => "cap_reached",
            Status::Timeout => "timeout",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: Status,
    /// `st₊(G)`; present only when `status` is exact.
    pub rank: Option<usize>,
    pub lower_bound: usize,
    /// Order of `certificate`.
    pub upper_bound: usize,
    /// An optimal cover when exact, otherwise the best cover known.
    pub certificate: Cover,
    pub enumeration: Option<Enumeration>,
    pub nodes: u64,
}

/// All optimal covers, canonical and sorted.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub rank: usize,
    pub covers: Vec<Cover>,
    /// False when a cover cap or the time limit cut the listing short.
    pub complete: bool,
}

struct Limits {
    deadline: Option<Instant>,
    timed_out: AtomicBool,
}

impl Limits {
    fn new(time_limit: Option<Duration>) -> Self {
        Limits {
            deadline: time_limit.map(|d| Instant::now() + d),
            timed_out: AtomicBool::new(false),
        }
    }

    fn expired(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Subsets of `s` that contain `v` (which must be in `s`), largest mask first.
fn subsets_with(s: u32, v: usize) -> impl Iterator<Item = u32> {
    let bit = 1u32 << v;
    let rest = s & !bit;
    let mut sub = Some(rest);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == 0 {
            None
        } else {
            Some((cur - 1) & rest)
        };
        Some(cur | bit)
    })
}

/// A connected graph on at most [`VERTEX_CAP`] vertices as bit rows.
struct Instance {
    n: usize,
    adj: Vec<u32>,
    /// Every component of an optimal cover has more vertices than this.
    min_size: u32,
}

#[derive(Clone)]
struct State {
    fam: Vec<u32>,
    cov: [u32; VERTEX_CAP],
}

impl Instance {
    fn new(g: &Graph, pruning: Pruning) -> Result<Self> {
        let n = g.order();
        if n > VERTEX_CAP {
            return Err(Error::limit(format!(
                "component with {n} vertices exceeds the search cap of {VERTEX_CAP}"
            )));
        }
        let adj = (0..n).map(|v| g.row0(v).to_mask() as u32).collect();
        let mut min_size = 0;
        if pruning.complete_size && g.is_complete() {
            let s = katona_s(n)?;
            let smallest = (1..=n).find(|&t| katona_s(t).ok() == Some(s)).unwrap_or(n);
            min_size = (n - smallest) as u32;
        }
        Ok(Instance { n, adj, min_size })
    }

    fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Common neighbourhood of the vertices in `x`.
    fn cn(&self, x: u32) -> u32 {
        bits(x).fold(self.full(), |m, v| m & self.adj[v])
    }

    fn root(&self) -> State {
        State {
            fam: Vec::new(),
            cov: [0; VERTEX_CAP],
        }
    }

    fn add(&self, st: &mut State, x: u32) {
        st.fam.push(x);
        let cn = self.cn(x);
        for idx in 0..st.fam.len() {
            let y = st.fam[idx];
            if y & !cn == 0 {
                for v in bits(x) {
                    st.cov[v] |= y;
                }
                for v in bits(y) {
                    st.cov[v] |= x;
                }
            }
        }
    }

    fn first_uncovered(&self, cov: &[u32]) -> Option<(usize, usize)> {
        (0..self.n).find_map(|i| {
            let rem = self.adj[i] & !cov[i] & !((1u32 << i) - 1);
            (rem != 0).then(|| (i, rem.trailing_zeros() as usize))
        })
    }

    /// Greedy fooling set over uncovered ordered pairs; stops once it
    /// exceeds `limit`. No set-join inside `E(G)` holds two of its pairs.
    fn fooling(&self, cov: &[u32], limit: usize) -> usize {
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        for u in 0..self.n {
            for v in bits(self.adj[u] & !cov[u]) {
                let fits = chosen
                    .iter()
                    .all(|&(a, b)| self.adj[a] >> v & 1 == 0 || self.adj[u] >> b & 1 == 0);
                if fits {
                    chosen.push((u, v));
                    if chosen.len() > limit {
                        return chosen.len();
                    }
                }
            }
        }
        chosen.len()
    }

    /// Every new component `X` adds at most two rectangles (`X × N` and its
    /// transpose) of uncovered pairs, so `f` fooling pairs need `⌈f/2⌉`
    /// new components; from scratch each component is one rectangle.
    fn bound_allows(&self, st: &State, room: usize) -> bool {
        let limit = if st.fam.is_empty() { room } else { 2 * room };
        let open: usize = (0..self.n)
            .map(|u| (self.adj[u] & !st.cov[u]).count_ones() as usize)
            .sum();
        open <= limit || self.fooling(&st.cov, limit) <= limit
    }

    fn fresh(&self, fam: &[u32], x: u32) -> bool {
        x.count_ones() > self.min_size && !fam.contains(&x)
    }

    fn children(&self, st: &State, i: usize, j: usize, room: usize, sdr: bool) -> Vec<State> {
        let mut out = Vec::new();
        let mut push = |new: &[u32]| {
            let mut c = st.clone();
            for &x in new {
                self.add(&mut c, x);
            }
            if !sdr || masks_have_sdr(&c.fam) {
                out.push(c);
            }
        };
        for (a, b) in [(i, j), (j, i)] {
            for &x in &st.fam {
                if x >> a & 1 == 0 {
                    continue;
                }
                let s = self.cn(x);
                if s >> b & 1 == 0 {
                    continue;
                }
                for l in subsets_with(s, b) {
                    if self.fresh(&st.fam, l) {
                        push(&[l]);
                    }
                }
            }
            if i == j {
                break;
            }
        }
        for k in subsets_with(self.adj[j], i) {
            if !self.fresh(&st.fam, k) {
                continue;
            }
            for l in subsets_with(self.cn(k), j) {
                if l == k {
                    push(&[k]);
                    continue;
                }
                if room < 2 || !self.fresh(&st.fam, l) {
                    continue;
                }
                if k >> j & 1 == 1 && l >> i & 1 == 1 && k > l {
                    continue;
                }
                push(&[k, l]);
            }
        }
        out
    }

    fn singletons(&self) -> Vec<u32> {
        (0..self.n).map(|v| 1u32 << v).collect()
    }

    /// Admissible pairs `(a, b)`, `a <= b`, of a family.
    fn admissible_pairs(&self, fam: &[u32]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..fam.len() {
            let cn = self.cn(fam[a]);
            for b in a..fam.len() {
                if fam[b] & !cn == 0 {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Done,
    Abort,
}

struct Search<'a> {
    inst: &'a Instance,
    k: usize,
    pruning: Pruning,
    limits: &'a Limits,
    /// Abort when a sibling subtree with a smaller index has succeeded.
    cancel: Option<(&'a AtomicUsize, usize)>,
    collect_all: bool,
    memo: HashSet<Vec<u32>>,
    found: Vec<Vec<u32>>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(
        inst: &'a Instance,
        k: usize,
        pruning: Pruning,
        limits: &'a Limits,
        collect_all: bool,
    ) -> Self {
        Search {
            inst,
            k,
            pruning,
            limits,
            cancel: None,
            collect_all,
            memo: HashSet::new(),
            found: Vec::new(),
            nodes: 0,
        }
    }

    fn interrupted(&self) -> bool {
        if let Some((best, me)) = self.cancel {
            if best.load(Ordering::Relaxed) < me {
                return true;
            }
        }
        self.limits.expired()
    }

    /// Returns the edge to branch on, or a verdict for this node.
    fn enter(&mut self, st: &State) -> std::result::Result<(usize, usize), Flow> {
        self.nodes += 1;
        if self.nodes & 1023 == 0 && self.interrupted() {
            return Err(Flow::Abort);
        }
        let Some(edge) = self.inst.first_uncovered(&st.cov) else {
            let mut fam = st.fam.clone();
            fam.sort_unstable();
            self.found.push(fam);
            return Err(if self.collect_all {
                Flow::Continue
            } else {
                Flow::Done
            });
        };
        let room = self.k - st.fam.len();
        if room == 0 || (self.pruning.bound && !self.inst.bound_allows(st, room)) {
            return Err(Flow::Continue);
        }
        if self.pruning.memo {
            let mut key = st.fam.clone();
            key.sort_unstable();
            if self.memo.contains(&key) {
                return Err(Flow::Continue);
            }
            if self.memo.len() < MEMO_CAP {
                self.memo.insert(key);
            }
        }
        Ok(edge)
    }

    fn dfs(&mut self, st: &State) -> Flow {
        let (i, j) = match self.enter(st) {
            Ok(e) => e,
            Err(f) => return f,
        };
        let room = self.k - st.fam.len();
        for child in self.inst.children(st, i, j, room, self.pruning.sdr) {
            match self.dfs(&child) {
                Flow::Continue => {}
                other => return other,
            }
        }
        Flow::Continue
    }
}

struct LevelOutcome {
    flow: Flow,
    families: Vec<Vec<u32>>,
    nodes: u64,
}

/// Explores all families of order at most `k`. With several threads the
/// root's subtrees run in parallel and the lowest-index success wins,
/// which is the subtree a sequential search would have finished first.
fn run_level(
    inst: &Instance,
    k: usize,
    pruning: Pruning,
    limits: &Limits,
    threads: usize,
    collect_all: bool,
) -> LevelOutcome {
    let root = inst.root();
    let mut top = Search::new(inst, k, pruning, limits, collect_all);
    let (i, j) = match top.enter(&root) {
        Ok(e) => e,
        Err(flow) => {
            return LevelOutcome {
                flow,
                families: top.found,
                nodes: top.nodes,
            }
        }
    };
    let children = inst.children(&root, i, j, k, pruning.sdr);
    if threads <= 1 {
        let mut flow = Flow::Continue;
        for c in &children {
            flow = top.dfs(c);
            if flow != Flow::Continue {
                break;
            }
        }
        return LevelOutcome {
            flow,
            families: top.found,
            nodes: top.nodes,
        };
    }

    let best = AtomicUsize::new(usize::MAX);
    let run = || {
        children
            .par_iter()
            .enumerate()
            .map(|(idx, c)| {
                let mut s = Search::new(inst, k, pruning, limits, collect_all);
                if !collect_all {
                    s.cancel = Some((&best, idx));
                }
                let flow = s.dfs(c);
                if flow == Flow::Done {
                    best.fetch_min(idx, Ordering::Relaxed);
                }
                (idx, flow, s.found, s.nodes)
            })
            .collect::<Vec<_>>()
    };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let nodes = top.nodes + results.iter().map(|r| r.3).sum::<u64>();
    if collect_all {
        let aborted = results.iter().any(|r| r.1 == Flow::Abort);
        let families = results.into_iter().flat_map(|r| r.2).collect();
        return LevelOutcome {
            flow: if aborted { Flow::Abort } else { Flow::Continue },
            families,
            nodes,
        };
    }
    let winner = best.load(Ordering::Relaxed);
    if let Some(r) = results.into_iter().find(|r| r.0 == winner) {
        return LevelOutcome {
            flow: Flow::Done,
            families: r.2,
            nodes,
        };
    }
    LevelOutcome {
        flow: if limits.expired() {
            Flow::Abort
        } else {
            Flow::Continue
        },
        families: Vec::new(),
        nodes,
    }
}

/// The graph a component is actually searched on, with the way back.
struct Prepared {
    inst: Instance,
    /// Reduced vertex -> original 0-based vertices.
    members: Vec<Vec<usize>>,
    lower: usize,
}

fn prepare(g: &Graph, comp: &VertexSet, pruning: Pruning) -> Result<Prepared> {
    let (sub, map) = g.induced0(comp);
    let (work, part) = if pruning.twins {
        sub.twin_free_reduce()
    } else {
        let n = sub.order();
        let part = TwinPartition {
            classes: (0..n).map(|v| vec![v]).collect(),
            class_of: (0..n).collect(),
        };
        (sub, part)
    };
    let members = part
        .classes
        .iter()
        .map(|c| c.iter().map(|&v| map[v]).collect())
        .collect();
    let inst = Instance::new(&work, pruning)?;
    let lower = component_lower_bound(&work, pruning.class_bounds)?;
    Ok(Prepared {
        inst,
        members,
        lower,
    })
}

impl Prepared {
    fn lift(&self, x: u32, n: usize) -> VertexSet {
        VertexSet::from_iter_width(n, bits(x).flat_map(|v| self.members[v].iter().copied()))
    }
}

struct ComponentSolve {
    status: Status,
    lower: usize,
    family: Vec<u32>,
    nodes: u64,
}

fn solve_component(
    p: &Prepared,
    cap: usize,
    opts: &SolverOptions,
    limits: &Limits,
) -> ComponentSolve {
    let upper = p.inst.n;
    let mut nodes = 0;
    let mut k = p.lower;
    while k < upper {
        if k > cap {
            return ComponentSolve {
                status: Status::CapReached,
                lower: k,
                family: p.inst.singletons(),
                nodes,
            };
        }
        let out = run_level(&p.inst, k, opts.pruning, limits, opts.threads, false);
        nodes += out.nodes;
        match out.flow {
            Flow::Done => {
                return ComponentSolve {
                    status: Status::Exact,
                    lower: k,
                    family: out.families.into_iter().next().expect("a family"),
                    nodes,
                }
            }
            Flow::Abort => {
                return ComponentSolve {
                    status: Status::Timeout,
                    lower: k,
                    family: p.inst.singletons(),
                    nodes,
                }
            }
            Flow::Continue => k += 1,
        }
    }
    let status = if upper > cap {
        Status::CapReached
    } else {
        Status::Exact
    };
    ComponentSolve {
        status,
        lower: k,
        family: p.inst.singletons(),
        nodes,
    }
}

fn nontrivial_components(g: &Graph) -> Vec<VertexSet> {
    g.connected_components()
        .into_iter()
        .filter(|c| c.len() > 1 || c.iter().any(|v| g.has_loop0(v)))
        .collect()
}

fn add_family(b: &mut CoverBuilder, p: &Prepared, fam: &[u32], n: usize) -> Result<()> {
    let idx: Vec<usize> = fam
        .iter()
        .map(|&x| b.add_component(p.lift(x, n)))
        .collect::<Result<_>>()?;
    for (a, c) in p.inst.admissible_pairs(fam) {
        b.add_join(idx[a], idx[c])?;
    }
    Ok(())
}

/// `st₊(G)` by exhaustive search, with an optimal cover as certificate.
///
/// Connected components are solved independently and summed. Each
/// component (after twin reduction) may have at most [`VERTEX_CAP`]
/// vertices.
pub fn snt_rank_exact(g: &Graph, opts: &SolverOptions) -> Result<SolveResult> {
    let limits = Limits::new(opts.time_limit);
    let n = g.order();
    let comps = nontrivial_components(g);
    let prepared: Vec<Prepared> = comps
        .iter()
        .map(|c| prepare(g, c, opts.pruning))
        .collect::<Result<_>>()?;

    let mut status = Status::Exact;
    let mut lower = 0;
    let mut nodes = 0;
    let mut b = CoverBuilder::new(n);
    let lowers: Vec<usize> = prepared.iter().map(|p| p.lower).collect();
    for (idx, p) in prepared.iter().enumerate() {
        let later: usize = lowers[idx + 1..].iter().sum();
        let solved = if status != Status::Exact {
            ComponentSolve {
                status,
                lower: p.lower,
                family: p.inst.singletons(),
                nodes: 0,
            }
        } else {
            let cap = opts
                .max_order
                .map_or(usize::MAX, |m| m.saturating_sub(lower + later));
            if opts.max_order.is_some_and(|m| m < lower + later) {
                ComponentSolve {
                    status: Status::CapReached,
                    lower: p.lower,
                    family: p.inst.singletons(),
                    nodes: 0,
                }
            } else {
                solve_component(p, cap, opts, &limits)
            }
        };
        nodes += solved.nodes;
        lower += solved.lower;
        if solved.status != Status::Exact {
            status = solved.status;
        }
        add_family(&mut b, p, &solved.family, n)?;
    }
    let certificate = canonical_form(&b.build());
    let upper = certificate.order();
    let mut result = SolveResult {
        status,
        rank: (status == Status::Exact).then_some(upper),
        lower_bound: if status == Status::Exact {
            upper
        } else {
            lower
        },
        upper_bound: upper,
        certificate,
        enumeration: None,
        nodes,
    };
    if opts.enumerate_all && status == Status::Exact {
        result.enumeration = Some(enumerate_with_rank(g, &result, opts, &limits)?);
    }
    Ok(result)
}

type FamilyCover = (Vec<u32>, Vec<(usize, usize)>);

/// Every cover of order `st₊(G)`, including covers that share a component
/// family but differ in their joins.
pub fn enumerate_optimal_covers(g: &Graph, opts: &SolverOptions) -> Result<Enumeration> {
    let mut o = opts.clone();
    o.enumerate_all = true;
    let r = snt_rank_exact(g, &o)?;
    r.enumeration.ok_or_else(|| {
        Error::Incomplete(format!(
            "optimal order not established (status {})",
            r.status.as_str()
        ))
    })
}

/// Join sets over a fixed family: subsets of the admissible pairs that
/// cover `E` exactly and use every component.
fn join_sets(
    inst: &Instance,
    fam: &[u32],
    budget: &mut usize,
    limits: &Limits,
) -> Option<Vec<Vec<(usize, usize)>>> {
    let pairs = inst.admissible_pairs(fam);
    let cover_of = |&(a, b): &(usize, usize)| {
        let mut cov = [0u32; VERTEX_CAP];
        for v in bits(fam[a]) {
            cov[v] |= fam[b];
        }
        for v in bits(fam[b]) {
            cov[v] |= fam[a];
        }
        cov
    };
    let covs: Vec<[u32; VERTEX_CAP]> = pairs.iter().map(cover_of).collect();
    let mut suffix = vec![([0u32; VERTEX_CAP], 0u32); pairs.len() + 1];
    for t in (0..pairs.len()).rev() {
        let (mut c, mut used) = suffix[t + 1];
        for v in 0..inst.n {
            c[v] |= covs[t][v];
        }
        used |= 1 << pairs[t].0 | 1 << pairs[t].1;
        suffix[t] = (c, used);
    }
    let all_used = if fam.len() == 32 {
        u32::MAX
    } else {
        (1u32 << fam.len()) - 1
    };

    struct Walk<'a> {
        inst: &'a Instance,
        pairs: &'a [(usize, usize)],
        covs: &'a [[u32; VERTEX_CAP]],
        suffix: &'a [([u32; VERTEX_CAP], u32)],
        all_used: u32,
        chosen: Vec<usize>,
        out: Vec<Vec<(usize, usize)>>,
        budget: &'a mut usize,
        limits: &'a Limits,
        overflow: bool,
    }
    impl Walk<'_> {
        fn go(&mut self, t: usize, cov: [u32; VERTEX_CAP], used: u32) {
            if self.overflow {
                return;
            }
            let (sc, su) = &self.suffix[t];
            if (used | su) != self.all_used
                || (0..self.inst.n).any(|v| (cov[v] | sc[v]) != self.inst.adj[v])
            {
                return;
            }
            if t == self.pairs.len() {
                if *self.budget == 0 || self.limits.expired() {
                    self.overflow = true;
                    return;
                }
                *self.budget -= 1;
                self.out
                    .push(self.chosen.iter().map(|&p| self.pairs[p]).collect());
                return;
            }
            let mut with = cov;
            for v in 0..self.inst.n {
                with[v] |= self.covs[t][v];
            }
            self.chosen.push(t);
            self.go(
                t + 1,
                with,
                used | 1 << self.pairs[t].0 | 1 << self.pairs[t].1,
            );
            self.chosen.pop();
            self.go(t + 1, cov, used);
        }
    }
    let mut w = Walk {
        inst,
        pairs: &pairs,
        covs: &covs,
        suffix: &suffix,
        all_used,
        chosen: Vec::new(),
        out: Vec::new(),
        budget,
        limits,
        overflow: false,
    };
    w.go(0, [0; VERTEX_CAP], 0);
    (!w.overflow).then_some(w.out)
}

fn enumerate_with_rank(
    g: &Graph,
    solved: &SolveResult,
    opts: &SolverOptions,
    limits: &Limits,
) -> Result<Enumeration> {
    let n = g.order();
    let rank = solved.upper_bound;
    let mut pruning = opts.pruning;
    pruning.twins = false;
    let mut budget = opts.max_covers.unwrap_or(usize::MAX);
    let mut complete = true;

    // Per connected component: the prepared instance and its (family, joins) covers.
    let mut parts: Vec<(Prepared, Vec<FamilyCover>)> = Vec::new();
    for comp in nontrivial_components(g) {
        let p = prepare(g, &comp, pruning)?;
        let (sub, _) = g.induced0(&comp);
        let k = snt_rank_exact(
            &sub,
            &SolverOptions {
                enumerate_all: false,
                ..opts.clone()
            },
        )?
        .rank
        .ok_or_else(|| Error::Incomplete("component rank not established".into()))?;
        let out = run_level(&p.inst, k, pruning, limits, opts.threads, true);
        if out.flow == Flow::Abort {
            complete = false;
        }
        let mut fams: Vec<Vec<u32>> = out
            .families
            .into_iter()
            .filter(|f| f.len() == k)
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        fams.sort();
        let mut local = Vec::new();
        for fam in fams {
            match join_sets(&p.inst, &fam, &mut budget, limits) {
                Some(js) => local.extend(js.into_iter().map(|j| (fam.clone(), j))),
                None => {
                    complete = false;
                    break;
                }
            }
        }
        parts.push((p, local));
    }

    let mut covers: Vec<Cover> = vec![Cover::empty(n)];
    for (p, local) in &parts {
        let mut next = Vec::new();
        'outer: for base in &covers {
            for (fam, joins) in local {
                if next.len() >= opts.max_covers.unwrap_or(usize::MAX) {
                    complete = false;
                    break 'outer;
                }
                let mut b = CoverBuilder::new(n);
                for c in base.components() {
                    b.add_component(c.set().clone())?;
                }
                for (a, c) in base.joins() {
                    b.add_join(a, c)?;
                }
                let idx: Vec<usize> = fam
                    .iter()
                    .map(|&x| b.add_component(p.lift(x, n)))
                    .collect::<Result<_>>()?;
                for &(a, c) in joins {
                    b.add_join(idx[a], idx[c])?;
                }
                next.push(canonical_form(&b.build()));
            }
        }
        covers = next;
    }
    covers.sort_by(|a, b| a.canonical_cmp(b));
    covers.dedup();
    Ok(Enumeration {
        rank,
        covers,
        complete,
    })
}

/// A lower bound on `st₊(G)`, summed over connected components: closed
/// forms for forests, cycles and complete graphs, otherwise 1 or 2 by
/// whether every vertex is looped, raised to a fooling-set bound.
pub fn lower_bound(g: &Graph) -> usize {
    g.connected_components()
        .iter()
        .map(|c| {
            let (sub, _) = g.induced0(c);
            component_lower_bound(&sub, true).unwrap_or(0)
        })
        .sum()
}

fn component_lower_bound(g: &Graph, classes: bool) -> Result<usize> {
    let n = g.order();
    if g.is_edgeless() {
        return Ok(0);
    }
    if n == 1 {
        return Ok(1);
    }
    if classes {
        if g.is_forest() {
            return Ok(2 * forest_matching_number(g)?);
        }
        if g.is_cycle() {
            return snt_rank_cycle(n);
        }
        if g.is_complete() {
            return katona_s(n);
        }
    }
    let base = if (0..n).all(|v| g.has_loop0(v)) { 1 } else { 2 };
    if n > VERTEX_CAP {
        return Ok(base);
    }
    let inst = Instance {
        n,
        adj: (0..n).map(|v| g.row0(v).to_mask() as u32).collect(),
        min_size: 0,
    };
    Ok(base.max(inst.fooling(&[0; VERTEX_CAP], usize::MAX)))
}
