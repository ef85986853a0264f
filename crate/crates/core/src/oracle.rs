//! Brute-force ground truth.
//!
//! Everything here is deliberately naive and shares as little code as
//! possible with the modules it checks: counts come from subset enumeration,
//! graph searches walk isomorphism-class catalogs, and multipartite searches
//! enumerate integer partitions.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::canon::{canonical_form, catalog, Restriction, MAX_CATALOG_VERTICES};
use crate::combin::{binom, BinomRow};
use crate::constructions::PartitionProfile;
use crate::error::{ensure_param, Error, Result};
use crate::graph::Graph;

/// Largest `n` for the exhaustive graph searches.
pub const MAX_BRUTE_VERTICES: usize = MAX_CATALOG_VERTICES;
/// Largest `n` for [`brute_multipartite_ex`].
pub const MAX_PARTITION_VERTICES: usize = 256;

/// A counted or forbidden subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    Clique(usize),
    /// `K_{1,k}`.
    Star(usize),
}

/// `k_t` by checking every `t`-subset.
pub fn naive_cliques(g: &Graph, t: usize) -> u128 {
    let n = g.n();
    assert!(n <= 24, "naive clique count is exponential in n");
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == t)
        .filter(|&s| {
            (0..n)
                .filter(|v| s >> v & 1 == 1)
                .all(|v| (g.neighbors(v) as u32 | 1 << v) & s == s)
        })
        .count() as u128
}

/// `s_t = sum over v of C(deg v, t)`.
pub fn naive_stars(g: &Graph, t: usize) -> u128 {
    (0..g.n())
        .map(|v| binom(g.degree(v) as u64, t as u64).expect("small binomial"))
        .sum()
}

fn count(g: &Graph, p: Pattern) -> u128 {
    match p {
        Pattern::Clique(t) => naive_cliques(g, t),
        Pattern::Star(t) => naive_stars(g, t),
    }
}

fn restriction(forbid: Pattern) -> Restriction {
    match forbid {
        Pattern::Clique(k) => Restriction::CliqueFree(k),
        Pattern::Star(k) => Restriction::MaxDegree(k - 1),
    }
}

fn check_pattern(p: Pattern) -> Result<()> {
    let (Pattern::Clique(k) | Pattern::Star(k)) = p;
    ensure_param!(k >= 1, "pattern size must be positive");
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_BRUTE_VERTICES {
        return Err(Error::Capacity(format!(
            "exhaustive search supports 1 <= n <= {MAX_BRUTE_VERTICES}, got {n}"
        )));
    }
    Ok(())
}

/// Exact extremal value with every maximizer up to isomorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalCertificate {
    pub n: usize,
    pub value: u128,
    /// Canonically labelled, in canonical-form order.
    pub witnesses: Vec<Graph>,
}

/// Maximum number of copies of `target` over `forbid`-free graphs on `n`
/// vertices.
pub fn brute_ex(n: usize, target: Pattern, forbid: Pattern) -> Result<ExtremalCertificate> {
    check_n(n)?;
    check_pattern(target)?;
    check_pattern(forbid)?;
    let graphs = catalog(n, restriction(forbid))?;
    let counts: Vec<u128> = graphs.par_iter().map(|g| count(g, target)).collect();
    let value = counts.iter().copied().max().unwrap_or(0);
    let witnesses = graphs
        .iter()
        .zip(&counts)
        .filter(|&(_, &c)| c == value)
        .map(|(g, _)| g.clone())
        .collect();
    Ok(ExtremalCertificate { n, value, witnesses })
}

/// Every graph in `graphs` up to isomorphism on `n` vertices with the given
/// restriction; thin wrapper used by verification drivers.
pub fn all_graphs(n: usize, forbid: Option<Pattern>) -> Result<std::sync::Arc<Vec<Graph>>> {
    check_n(n)?;
    if let Some(p) = forbid {
        check_pattern(p)?;
    }
    catalog(n, forbid.map_or(Restriction::None, restriction))
}

/// True iff every maximizer of `s_t` among `K_{r+1}`-free graphs on `n`
/// vertices is complete multipartite.
pub fn check_multipartite_theorem(n: usize, r: usize, t: usize) -> Result<bool> {
    ensure_param!(n > t, "need n >= t + 1 (n = {n}, t = {t})");
    ensure_param!(r >= 1 && t >= 1, "need r, t >= 1");
    let cert = brute_ex(n, Pattern::Star(t), Pattern::Clique(r + 1))?;
    Ok(cert.witnesses.iter().all(is_multipartite_naive))
}

/// Non-adjacency is an equivalence relation, checked on all triples.
fn is_multipartite_naive(g: &Graph) -> bool {
    let n = g.n();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if u != v && v != w && u != w && !g.has_edge(u, v) && !g.has_edge(v, w) && g.has_edge(u, w) {
                    return false;
                }
            }
        }
    }
    true
}

/// Minimum of `s_{r+1}` over graphs on `n` vertices with `k_t >= kt_min`.
pub fn min_stars_given_cliques(n: usize, r: usize, t: usize, kt_min: u128) -> Result<u128> {
    check_n(n)?;
    ensure_param!(t >= 1, "need t >= 1");
    let total = binom(n as u64, t as u64).expect("small binomial");
    if kt_min > total {
        return Err(Error::Inapplicable(format!(
            "k_{t} >= {kt_min} is infeasible on {n} vertices (at most {total})"
        )));
    }
    let graphs = catalog(n, Restriction::None)?;
    Ok(graphs
        .par_iter()
        .filter(|g| naive_cliques(g, t) >= kt_min)
        .map(|g| naive_stars(g, r + 1))
        .min()
        .expect("the complete graph is feasible"))
}

/// Best complete multipartite graph for `s_t` with at most `r` parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipartiteOptimum {
    pub profile: PartitionProfile,
    pub value: u128,
}

/// Exhaustive search over partitions of `n` into at most `r` parts. Ties go
/// to the partition that comes first in reverse lexicographic order.
pub fn brute_multipartite_ex(n: usize, r: usize, t: usize) -> Result<MultipartiteOptimum> {
    if n == 0 || n > MAX_PARTITION_VERTICES {
        return Err(Error::Capacity(format!(
            "partition search supports 1 <= n <= {MAX_PARTITION_VERTICES}, got {n}"
        )));
    }
    ensure_param!(r >= 1, "need r >= 1");
    let row = BinomRow::new(n as u64, t as u64).ok_or(Error::Overflow("partition star count"))?;
    // Any profile's count is at most n * C(n - 1, t).
    row.get(n - 1)
        .checked_mul(n as u128)
        .ok_or(Error::Overflow("partition star count"))?;
    let r = r.min(n);
    let min_first = n.div_ceil(r);
    let best = (min_first..=n)
        .into_par_iter()
        .map(|first| {
            let mut parts = vec![first];
            let mut best: Option<(u128, Vec<usize>)> = None;
            let head = first as u128 * row.get(n - first);
            descend(n, r, &row, n - first, first, head, &mut parts, &mut best);
            best.expect("a partition with this first part exists")
        })
        .reduce_with(|a, b| match a.0.cmp(&b.0) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                if a.1 >= b.1 {
                    a
                } else {
                    b
                }
            }
        })
        .expect("nonempty range");
    Ok(MultipartiteOptimum {
        profile: PartitionProfile::new(best.1)?,
        value: best.0,
    })
}

#[allow(clippy::too_many_arguments)]
fn descend(
    n: usize,
    r: usize,
    row: &BinomRow,
    remaining: usize,
    cap: usize,
    acc: u128,
    parts: &mut Vec<usize>,
    best: &mut Option<(u128, Vec<usize>)>,
) {
    if remaining == 0 {
        if best.as_ref().is_none_or(|b| acc > b.0) {
            *best = Some((acc, parts.clone()));
        }
        return;
    }
    let slots = r - parts.len();
    if slots == 0 || cap * slots < remaining {
        return;
    }
    for p in (1..=cap.min(remaining)).rev() {
        if p * slots < remaining {
            break;
        }
        parts.push(p);
        descend(n, r, row, remaining - p, p, acc + p as u128 * row.get(n - p), parts, best);
        parts.pop();
    }
}

/// Maximum of the two-level family over a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptimum {
    pub value: f64,
    pub alpha: f64,
}

/// Maximize `(r-1) f(alpha) + f(1 - (r-1) alpha)` over `points` evenly spaced
/// `alpha` in `[0, 1/(r-1)]`, with `f(x) = x (1-x)^t`.
pub fn grid_search_skew(r: u32, t: u32, points: usize) -> Result<GridOptimum> {
    ensure_param!(r >= 2, "need r >= 2");
    ensure_param!(points >= 2, "need at least two grid points");
    let m = f64::from(r - 1);
    let tt = t as i32;
    let f = |x: f64| if x <= 0.0 { 0.0 } else { x * (1.0 - x).max(0.0).powi(tt) };
    let eval = |i: usize| {
        let alpha = i as f64 / ((points - 1) as f64 * m);
        let beta = (1.0 - m * alpha).max(0.0);
        (m * f(alpha) + f(beta), alpha)
    };
    let (value, alpha) = (0..points)
        .into_par_iter()
        .map(eval)
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("points >= 2");
    Ok(GridOptimum { value, alpha })
}

/// Canonical forms of the witnesses, for comparing certificates.
pub fn witness_forms(cert: &ExtremalCertificate) -> Result<Vec<crate::canon::CanonicalForm>> {
    cert.witnesses.iter().map(canonical_form).collect()
}
