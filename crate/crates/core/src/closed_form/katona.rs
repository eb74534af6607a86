//! Separating covers and complete graphs: `st₊(K_n) = s(n)`.

use std::collections::HashMap;

use crate::bitset::VertexSet;
use crate::cover::{restrict_cover, Cover, CoverBuilder};
use crate::error::{Error, Result};

/// A list of factors `q_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct FactorList(Vec<usize>);

impl FactorList {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if let Some(q) = factors.iter().find(|&&q| q < 2) {
            return Err(Error::arg(format!("factor {q} is below 2")));
        }
        Ok(FactorList(factors))
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// Product, saturating at `usize::MAX`.
    pub fn product(&self) -> usize {
        self.0.iter().fold(1usize, |p, &q| p.saturating_mul(q))
    }
}

/// Katona's `s(n)`: with `2·3^(i-1) < n <= 2·3^i`, it is `3i`, `3i+1` or
/// `3i+2` as `n` falls up to `3^i`, up to `4·3^(i-1)`, or above.
pub fn katona_s(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::arg("s(n) needs n >= 1"));
    }
    if n == 1 {
        return Ok(0);
    }
    if n == 2 {
        return Ok(2);
    }
    let n = n as u128;
    let mut i = 1usize;
    let mut p: u128 = 3;
    loop {
        let prev = p / 3;
        if n <= p {
            return Ok(3 * i);
        }
        if n <= 4 * prev {
            return Ok(3 * i + 1);
        }
        if n <= 2 * p {
            return Ok(3 * i + 2);
        }
        i += 1;
        p *= 3;
    }
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Smallest `q` for each distinct value of `⌈m/q⌉`, `q` in `2..=m`.
fn block_starts(m: usize) -> impl Iterator<Item = usize> {
    let mut q = 2;
    std::iter::from_fn(move || {
        if q > m {
            return None;
        }
        let cur = q;
        let c = ceil_div(m, q);
        q = if c == 1 {
            m + 1
        } else {
            ceil_div(m, c - 1).max(q + 1)
        };
        Some(cur)
    })
}

/// `f(m) = min{Σ q_i : Π q_i >= m}` for every `m` up to a limit.
pub struct FactorSumTable {
    f: Vec<usize>,
}

impl FactorSumTable {
    pub fn new(limit: usize) -> Self {
        let mut f = vec![0usize; limit.max(1) + 1];
        for m in 2..=limit {
            f[m] = block_starts(m)
                .map(|q| q + f[ceil_div(m, q)])
                .min()
                .expect("m >= 2 has a factor");
        }
        FactorSumTable { f }
    }

    pub fn limit(&self) -> usize {
        self.f.len() - 1
    }

    pub fn get(&self, m: usize) -> Option<usize> {
        (m >= 1).then(|| self.f.get(m).copied()).flatten()
    }

    /// Lexicographically least ascending factor list reaching `f(m)`.
    fn witness(&self, m: usize, memo: &mut HashMap<usize, Vec<usize>>) -> Vec<usize> {
        if m == 1 {
            return Vec::new();
        }
        if let Some(w) = memo.get(&m) {
            return w.clone();
        }
        let best = block_starts(m)
            .filter(|&q| q + self.f[ceil_div(m, q)] == self.f[m])
            .map(|q| {
                let mut w = self.witness(ceil_div(m, q), memo);
                w.push(q);
                w.sort_unstable();
                w
            })
            .min()
            .expect("some factor attains the minimum");
        memo.insert(m, best.clone());
        best
    }
}

/// Minimal factor sum with product at least `n`, and its least witness.
pub fn min_factor_sum(n: usize) -> Result<(usize, FactorList)> {
    if n == 0 {
        return Err(Error::arg("min_factor_sum needs n >= 1"));
    }
    let t = FactorSumTable::new(n);
    let w = t.witness(n, &mut HashMap::new());
    Ok((t.f[n], FactorList(w)))
}

/// `min over k in 2..=5 of k + s(⌈n/k⌉)`.
pub fn katona_recursion_check(n: usize) -> Result<usize> {
    if n < 4 {
        return Err(Error::arg("the recursion is stated for n >= 4"));
    }
    (2..=5)
        .map(|k| Ok(k + katona_s(ceil_div(n, k))?))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().min().expect("four terms"))
}

/// `max{t : s(t) = s(n)}`.
pub fn katona_plateau_end(n: usize) -> Result<usize> {
    let s = katona_s(n)?;
    let mut m = n;
    while katona_s(m + 1)? == s {
        m += 1;
    }
    Ok(m)
}

/// The product cover of `K_N`, `N = Π q_i`, before any restriction.
///
/// Factors are applied in the given order: the first gives `q_1`
/// singletons joined pairwise; each later `q` lifts every component by
/// translation across `q` copies and adds `q` blocks (one per copy)
/// joined pairwise. The cover graph is the disjoint union of `K_{q_i}`.
pub fn product_cover(factors: &[usize]) -> Result<Cover> {
    let Some((&first, rest)) = factors.split_first() else {
        return Err(Error::arg("product cover needs at least one factor"));
    };
    FactorList::new(factors.to_vec())?;
    let total = factors
        .iter()
        .try_fold(1usize, |p, &q| p.checked_mul(q))
        .ok_or_else(|| Error::Overflow("factor product".into()))?;

    // Components as vertex lists plus pairwise joins on component indices.
    let mut comps: Vec<Vec<usize>> = (0..first).map(|v| vec![v]).collect();
    let mut joins: Vec<(usize, usize)> = pairs(0, first);
    let mut n1 = first;
    for &q in rest {
        for c in comps.iter_mut() {
            *c = (0..q)
                .flat_map(|t| c.iter().map(move |&i| i + t * n1))
                .collect();
        }
        let base = comps.len();
        comps.extend((0..q).map(|t| (t * n1..(t + 1) * n1).collect()));
        joins.extend(pairs(base, q));
        n1 *= q;
    }
    let mut b = CoverBuilder::new(total);
    let idx: Vec<usize> = comps
        .into_iter()
        .map(|c| b.add_component(VertexSet::from_iter_width(total, c)))
        .collect::<Result<_>>()?;
    for (x, y) in joins {
        b.add_join(idx[x], idx[y])?;
    }
    Ok(b.build())
}

fn pairs(base: usize, q: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..q {
        for c in a + 1..q {
            out.push((base + a, base + c));
        }
    }
    out
}

/// Factors for the cover of `K_n`: the least witness of the plateau end
/// `m`, largest first so that the factor 2 (if any) makes the big blocks.
pub fn complete_cover_factors(n: usize) -> Result<Vec<usize>> {
    let m = katona_plateau_end(n)?;
    let (_, w) = min_factor_sum(m)?;
    let mut f = w.0;
    f.sort_unstable_by(|a, b| b.cmp(a));
    Ok(f)
}

/// An optimal cover of `K_n` of order `s(n)`: the product cover of
/// `K_m`, `m = max{t : s(t) = s(n)}`, restricted to `1..=n`.
pub fn build_complete_cover(n: usize) -> Result<Cover> {
    if n < 2 {
        return Err(Error::arg("complete-graph covers need n >= 2"));
    }
    let full = product_cover(&complete_cover_factors(n)?)?;
    let keep = VertexSet::from_iter_width(full.ground_n(), 0..n);
    restrict_cover(&full, &keep)
}
