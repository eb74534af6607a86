#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sntrank::graph::{families, join};
use sntrank::Graph;

/// Adjacency rows as bit masks; bit `v` of `rows[v]` is a loop.
pub fn masks(g: &Graph) -> Vec<u32> {
    let n = g.order();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| g.adjacent0(i, j))
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect()
}

pub fn from_masks(rows: &[u32]) -> Graph {
    let n = rows.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i..n {
            if rows[i] >> j & 1 == 1 {
                edges.push((i + 1, j + 1));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Reference `st₊`: tries every family of `k` subsets for `k = 0, 1, …`
/// and accepts the first whose admissible pairs cover every edge.
pub fn naive_rank(g: &Graph) -> usize {
    let adj = masks(g);
    let n = adj.len();
    assert!(n <= 8, "reference search is for tiny graphs");
    let pair = |i: usize, j: usize| {
        let (a, b) = (i.min(j), i.max(j));
        a * n + b
    };
    let mut target: u64 = 0;
    for i in 0..n {
        for j in i..n {
            if adj[i] >> j & 1 == 1 {
                target |= 1 << pair(i, j);
            }
        }
    }
    if target == 0 {
        return 0;
    }
    // A set with no common neighbour cannot sit on either side of a join.
    let candidates: Vec<u32> = (1u32..1 << n)
        .filter(|&s| adj.iter().any(|&row| row & s == s))
        .collect();
    let admissible = |k: u32, l: u32| (0..n).all(|a| k >> a & 1 == 0 || adj[a] & l == l);
    let join_edges = |k: u32, l: u32| {
        let mut e = 0u64;
        for a in 0..n {
            for b in 0..n {
                if k >> a & 1 == 1 && l >> b & 1 == 1 {
                    e |= 1 << pair(a, b);
                }
            }
        }
        e
    };

    fn search(
        cands: &[u32],
        start: usize,
        left: usize,
        family: &mut Vec<u32>,
        covered: u64,
        target: u64,
        add: &dyn Fn(&[u32], u32) -> u64,
    ) -> bool {
        if covered == target {
            return true;
        }
        if left == 0 {
            return false;
        }
        for idx in start..cands.len() {
            let s = cands[idx];
            let gained = add(family, s);
            family.push(s);
            let found = search(
                cands,
                idx + 1,
                left - 1,
                family,
                covered | gained,
                target,
                add,
            );
            family.pop();
            if found {
                return true;
            }
        }
        false
    }

    let add = |family: &[u32], s: u32| {
        let mut e = 0u64;
        for &t in family.iter().chain(std::iter::once(&s)) {
            if admissible(s, t) {
                e |= join_edges(s, t);
            }
        }
        e
    };
    for k in 1..=n {
        if search(&candidates, 0, k, &mut Vec::new(), 0, target, &add) {
            return k;
        }
    }
    unreachable!("singletons give a cover of order at most n")
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn encode(rows: &[u32], perm: &[usize]) -> u64 {
    let n = rows.len();
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i..n {
            if rows[perm[i]] >> perm[j] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

fn canonical_code(rows: &[u32], perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| encode(rows, p)).min().unwrap()
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

fn connected(rows: &[u32]) -> bool {
    let n = rows.len();
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = rows[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen.count_ones() as usize == n
}

/// One graph per isomorphism class on `n` vertices, loops allowed when
/// `loops` is set.
pub fn graphs(n: usize, loops: bool, connected_only: bool) -> Vec<Graph> {
    let perms = all_perms(n);
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| loops || i != j)
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for bits in 0u64..1 << slots.len() {
        let mut rows = vec![0u32; n];
        for (b, &(i, j)) in slots.iter().enumerate() {
            if bits >> b & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        if connected_only && !connected(&rows) {
            continue;
        }
        if seen.insert(canonical_code(&rows, &perms)) {
            out.push(from_masks(&rows));
        }
    }
    out
}

/// Every connected graph with loops allowed on 1 to 5 vertices, up to isomorphism.
pub fn small_connected_corpus() -> Vec<Graph> {
    (1..=5).flat_map(|n| graphs(n, true, true)).collect()
}

/// Seeded random graphs on `n` vertices with loops.
pub fn random_graphs(count: usize, n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p_edge = rng.gen_range(0.25..0.8);
            let p_loop = rng.gen_range(0.0..0.6);
            let mut rows = vec![0u32; n];
            for i in 0..n {
                for j in i..n {
                    let p = if i == j { p_loop } else { p_edge };
                    if rng.gen_bool(p) {
                        rows[i] |= 1 << j;
                        rows[j] |= 1 << i;
                    }
                }
            }
            from_masks(&rows)
        })
        .collect()
}

/// Tree rooted at `root` as a nested-parenthesis string, children sorted.
fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(adj, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn tree_code(adj: &[Vec<usize>]) -> String {
    (0..adj.len())
        .map(|r| rooted_code(adj, r, usize::MAX))
        .min()
        .unwrap()
}

/// One tree per isomorphism class on `n` vertices, grown leaf by leaf.
pub fn trees(n: usize) -> Vec<Graph> {
    let mut level: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size - 1 {
                let mut adj = t.clone();
                adj.push(vec![v]);
                adj[v].push(size - 1);
                if seen.insert(tree_code(&adj)) {
                    next.push(adj);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|adj| {
            let edges: Vec<(usize, usize)> = adj
                .iter()
                .enumerate()
                .flat_map(|(u, ns)| {
                    ns.iter()
                        .filter(move |&&w| u < w)
                        .map(move |&w| (u + 1, w + 1))
                })
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// Whether every pair of leaves is at even distance.
pub fn leaf_distances_even(t: &Graph) -> bool {
    let n = t.order();
    let leaves: Vec<usize> = (0..n).filter(|&v| t.degree0(v) == 1).collect();
    // Parity of distance from vertex 0 is a proper 2-colouring.
    let mut colour = vec![usize::MAX; n];
    colour[0] = 0;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for w in t.row0(v).iter() {
            if colour[w] == usize::MAX {
                colour[w] = 1 - colour[v];
                stack.push(w);
            }
        }
    }
    leaves.windows(2).all(|w| colour[w[0]] == colour[w[1]])
}

pub fn g1() -> Graph {
    from_masks(&[0b1001, 0b1010, 0b1100, 0b1111])
}

pub fn g2() -> Graph {
    Graph::from_adjacency(&[&[1, 1, 1, 1], &[1, 1, 0, 1], &[1, 0, 0, 1], &[1, 1, 1, 0]]).unwrap()
}

pub fn g3() -> Graph {
    join(&families::complete(3), &families::looped_vertex())
}

/// Covered by {1,2} v {2,3} v {3,4} v {4,5} joined along a path.
pub fn looped_band() -> Graph {
    Graph::from_adjacency(&[
        &[0, 1, 1, 0, 0],
        &[1, 1, 1, 1, 0],
        &[1, 1, 1, 1, 1],
        &[0, 1, 1, 1, 1],
        &[0, 0, 1, 1, 0],
    ])
    .unwrap()
}

pub fn paw() -> Graph {
    Graph::from_edges(4, &[(1, 2), (2, 3), (3, 1), (3, 4)]).unwrap()
}

pub fn c4_pendant() -> Graph {
    Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 1), (4, 5)]).unwrap()
}

/// Adds a twin of vertex `v` (0-based): same neighbourhood, and adjacent
/// to `v` exactly when `v` has a loop.
pub fn plant_twin(g: &Graph, v: usize) -> Graph {
    let mut rows = masks(g);
    let n = rows.len();
    let mut row = rows[v];
    if row >> v & 1 == 1 {
        row |= 1 << n;
    }
    for (u, r) in rows.iter_mut().enumerate() {
        if row >> u & 1 == 1 {
            *r |= 1 << n;
        }
    }
    rows.push(row);
    from_masks(&rows)
}

/// `G ∨ K1^ℓ`.
pub fn plant_apex(g: &Graph) -> Graph {
    join(g, &families::looped_vertex())
}

/// A cover as bit masks: sorted components and sorted join pairs.
pub type MaskCover = (Vec<u32>, Vec<(u32, u32)>);

pub fn mask_cover(c: &sntrank::Cover) -> MaskCover {
    let comps: Vec<u32> = c
        .components()
        .iter()
        .map(|k| k.set().iter().fold(0u32, |m, v| m | 1 << v))
        .collect();
    let mut joins: Vec<(u32, u32)> = c
        .joins()
        .map(|(a, b)| (comps[a].min(comps[b]), comps[a].max(comps[b])))
        .collect();
    joins.sort_unstable();
    let mut sorted = comps;
    sorted.sort_unstable();
    (sorted, joins)
}

/// Every cover of order `naive_rank(g)`: all families of that many subsets
/// and all sets of admissible joins that cover exactly `E(G)` and use
/// every component.
pub fn brute_force_optimal_covers(g: &Graph) -> BTreeSet<MaskCover> {
    let adj = masks(g);
    let n = adj.len();
    let k = naive_rank(g);
    let edges = |a: u32, b: u32| {
        let mut e = BTreeSet::new();
        for x in 0..n {
            for y in 0..n {
                if a >> x & 1 == 1 && b >> y & 1 == 1 {
                    e.insert((x.min(y), x.max(y)));
                }
            }
        }
        e
    };
    let target: BTreeSet<(usize, usize)> = g.edges0().into_iter().collect();
    let admissible = |a: u32, b: u32| (0..n).all(|x| a >> x & 1 == 0 || adj[x] & b == b);
    let mut out = BTreeSet::new();
    let subsets: Vec<u32> = (1u32..1 << n).collect();
    let mut family = Vec::new();
    fn families(from: &[u32], k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (i, &s) in from.iter().enumerate() {
            cur.push(s);
            families(&from[i + 1..], k, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    families(&subsets, k, &mut family, &mut all);
    for fam in all {
        let mut pairs = Vec::new();
        for i in 0..k {
            for j in i..k {
                if admissible(fam[i], fam[j]) {
                    pairs.push((fam[i], fam[j]));
                }
            }
        }
        for pick in 0u64..1 << pairs.len() {
            let chosen: Vec<(u32, u32)> = (0..pairs.len())
                .filter(|&b| pick >> b & 1 == 1)
                .map(|b| pairs[b])
                .collect();
            let used = fam
                .iter()
                .all(|&s| chosen.iter().any(|&(a, b)| a == s || b == s));
            if !used {
                continue;
            }
            let covered: BTreeSet<(usize, usize)> =
                chosen.iter().flat_map(|&(a, b)| edges(a, b)).collect();
            if covered == target {
                let mut joins: Vec<(u32, u32)> =
                    chosen.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
                joins.sort_unstable();
                out.insert((fam.clone(), joins));
            }
        }
    }
    out
}
