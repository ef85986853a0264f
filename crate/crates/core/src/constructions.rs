//! Extremal and sharpness constructions.
//!
//! Multipartite graphs place their parts on consecutive index ranges, largest
//! part first.

use crate::combin::binom;
use crate::error::{ensure_param, Error, Result};
use crate::graph::{low_bits, Bits, Graph, MAX_VERTICES};

/// Part sizes of a complete multipartite graph: nonincreasing, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionProfile {
    parts: Vec<usize>,
}

impl PartitionProfile {
    /// Sorts `parts` into nonincreasing order; rejects empty input and zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        ensure_param!(!parts.is_empty(), "partition needs at least one part");
        ensure_param!(parts.iter().all(|&p| p >= 1), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// Balanced profile of `n` into `r` parts: the first `n mod r` parts get
    /// `ceil(n/r)`.
    pub fn balanced(n: usize, r: usize) -> Result<Self> {
        ensure_param!(r >= 1 && r <= n, "balanced profile needs 1 <= r <= n (r = {r}, n = {n})");
        let (q, extra) = (n / r, n % r);
        Ok(Self {
            parts: (0..r).map(|i| q + usize::from(i < extra)).collect(),
        })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl TryFrom<&[usize]> for PartitionProfile {
    type Error = Error;

    fn try_from(parts: &[usize]) -> Result<Self> {
        Self::new(parts.to_vec())
    }
}

/// `T(n, r)`: the balanced complete `r`-partite graph.
pub fn turan_graph(n: usize, r: usize) -> Result<Graph> {
    if n > MAX_VERTICES {
        return Err(Error::Capacity(format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    complete_multipartite(&PartitionProfile::balanced(n, r)?)
}

pub fn complete_multipartite(profile: &PartitionProfile) -> Result<Graph> {
    let n = profile.n();
    if n > MAX_VERTICES {
        return Err(Error::Capacity(format!("profile has {n} vertices")));
    }
    let mut rows = vec![0u64; n];
    let mut start = 0;
    for &size in profile.parts() {
        let part = low_bits(start + size) & !low_bits(start);
        for row in &mut rows[start..start + size] {
            *row = low_bits(n) & !part;
        }
        start += size;
    }
    Ok(Graph::from_rows(n, &rows))
}

/// `k` disjoint copies of `K_{clique}`.
pub fn disjoint_cliques(k: usize, clique: usize) -> Result<Graph> {
    ensure_param!(k >= 1 && clique >= 1, "need k >= 1 and clique order >= 1");
    let n = k
        .checked_mul(clique)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| Error::Capacity(format!("{k} copies of K_{clique}")))?;
    let mut rows = vec![0u64; n];
    for c in 0..k {
        let block = low_bits((c + 1) * clique) & !low_bits(c * clique);
        for (v, row) in rows.iter_mut().enumerate().skip(c * clique).take(clique) {
            *row = block & !(1u64 << v);
        }
    }
    Ok(Graph::from_rows(n, &rows))
}

/// `G(b)`: vertex `v` becomes the independent set `v*b .. v*b + b`.
pub fn blowup(g: &Graph, b: usize) -> Result<Graph> {
    ensure_param!(b >= 1, "blowup factor must be positive");
    let n = g
        .n()
        .checked_mul(b)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| Error::Capacity(format!("blowup of {} vertices by {b}", g.n())))?;
    let block = |v: usize| low_bits((v + 1) * b) & !low_bits(v * b);
    let mut rows = vec![0u64; n];
    for v in 0..g.n() {
        let row = Bits(g.neighbors(v)).fold(0, |acc, u| acc | block(u));
        rows[v * b..(v + 1) * b].fill(row);
    }
    Ok(Graph::from_rows(n, &rows))
}

/// Exact `s_t` of the complete multipartite graph with this profile:
/// `sum_i p_i * C(n - p_i, t)`.
pub fn multipartite_star_count(profile: &PartitionProfile, t: usize) -> Result<u128> {
    let n = profile.n() as u64;
    profile.parts().iter().try_fold(0u128, |acc, &p| {
        let c = binom(n - p as u64, t as u64).ok_or(Error::Overflow("multipartite star count"))?;
        c.checked_mul(p as u128)
            .and_then(|term| acc.checked_add(term))
            .ok_or(Error::Overflow("multipartite star count"))
    })
}

/// Recover the part profile of a complete multipartite graph.
pub fn multipartite_profile(g: &Graph) -> Option<PartitionProfile> {
    if !g.is_complete_multipartite() {
        return None;
    }
    let mut unassigned = low_bits(g.n());
    let mut parts = Vec::new();
    while unassigned != 0 {
        let v = unassigned.trailing_zeros() as usize;
        let class = low_bits(g.n()) & !g.neighbors(v);
        parts.push(class.count_ones() as usize);
        unassigned &= !class;
    }
    PartitionProfile::new(parts).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn profile(p: &[usize]) -> PartitionProfile {
        PartitionProfile::try_from(p).unwrap()
    }

    #[test]
    fn turan_examples() {
        let t = turan_graph(6, 3).unwrap();
        assert_eq!(t, complete_multipartite(&profile(&[2, 2, 2])).unwrap());
        assert_eq!(t.edge_count(), 12);
        assert_eq!(turan_graph(5, 2).unwrap(), complete_multipartite(&profile(&[3, 2])).unwrap());
        assert_eq!(turan_graph(7, 7).unwrap(), Graph::complete(7).unwrap());
        assert_eq!(PartitionProfile::balanced(7, 3).unwrap().parts(), &[3, 2, 2]);
        assert!(turan_graph(3, 4).is_err());
        assert!(turan_graph(65, 2).is_err());
        assert!(turan_graph(4, 0).is_err());
    }

    #[test]
    fn multipartite_examples() {
        assert_eq!(complete_multipartite(&profile(&[1, 1, 1])).unwrap(), Graph::complete(3).unwrap());
        let k33 = complete_multipartite(&profile(&[3, 3])).unwrap();
        assert_eq!(k33.edge_count(), 9);
        assert!(!k33.has_edge(0, 2) && k33.has_edge(2, 3));
        // Parts are sorted largest first.
        let g = complete_multipartite(&profile(&[1, 3])).unwrap();
        assert_eq!(g.degree_sequence(), vec![3, 1, 1, 1]);
        assert_eq!(g.degree(0), 1);
        assert!(complete_multipartite(&profile(&[40, 30])).is_err());
        assert!(PartitionProfile::new(vec![2, 0]).is_err());
        assert!(PartitionProfile::new(vec![]).is_err());
    }

    #[test]
    fn base_case_profile() {
        // n = t + 1 vertices, r parts: one part of t - r + 2 and r - 1 singletons.
        for (r, t) in [(2, 3), (3, 3), (3, 5), (4, 6)] {
            let mut parts = vec![t - r + 2];
            parts.extend(std::iter::repeat_n(1, r - 1));
            let g = complete_multipartite(&profile(&parts)).unwrap();
            assert_eq!(g.n(), t + 1);
            assert!(g.is_kr1_free(r));
            assert_eq!(g.count_stars(t), (r - 1) as u128);
        }
    }

    #[test]
    fn disjoint_clique_examples() {
        let g = disjoint_cliques(2, 4).unwrap();
        assert_eq!(g.count_cliques(3), 8);
        assert_eq!(g.max_degree(), 3);
        assert_eq!(disjoint_cliques(1, 3).unwrap(), Graph::complete(3).unwrap());
        let m = disjoint_cliques(3, 2).unwrap();
        assert_eq!(m.edge_count(), 3);
        assert!(m.degree_sequence().iter().all(|&d| d == 1));
        assert!(disjoint_cliques(9, 8).is_err());
    }

    #[test]
    fn blowup_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(blowup(&k2, 3).unwrap(), complete_multipartite(&profile(&[3, 3])).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(blowup(&c5, 1).unwrap(), c5);
        assert_eq!(blowup(&Graph::complete(3).unwrap(), 2).unwrap(), turan_graph(6, 3).unwrap());
        assert!(blowup(&c5, 13).is_err());
        let b = blowup(&Graph::complete(4).unwrap(), 3).unwrap();
        assert!(b.find_blowup(4, 3).is_some());
    }

    #[test]
    fn star_count_examples() {
        assert_eq!(multipartite_star_count(&profile(&[2, 2, 2]), 2).unwrap(), 36);
        assert_eq!(multipartite_star_count(&profile(&[7]), 3).unwrap(), 0);
        assert_eq!(multipartite_star_count(&profile(&[1, 1, 1, 1]), 3).unwrap(), 4);
        assert!(multipartite_star_count(&profile(&[300, 300]), 150).is_err());
    }

    #[test]
    fn profile_roundtrip() {
        let p = profile(&[4, 2, 2, 1]);
        let g = complete_multipartite(&p).unwrap();
        assert_eq!(multipartite_profile(&g), Some(p));
        assert_eq!(multipartite_profile(&Graph::path(4).unwrap()), None);
    }

    /// All partitions of `n`, parts nonincreasing.
    fn partitions(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            acc.push(p);
            partitions(n - p, p, acc, out);
            acc.pop();
        }
    }

    #[test]
    fn star_count_matches_graph_count_exhaustively() {
        for n in 1..=20 {
            let mut all = Vec::new();
            partitions(n, n, &mut Vec::new(), &mut all);
            for parts in all {
                let p = profile(&parts);
                let g = complete_multipartite(&p).unwrap();
                for t in 1..=4 {
                    assert_eq!(multipartite_star_count(&p, t).unwrap(), g.count_stars(t), "{parts:?} t={t}");
                }
            }
        }
    }

    #[test]
    fn turan_maximizes_cliques_among_r_partite_profiles() {
        for n in 2..=12 {
            for r in 2..=n.min(5) {
                let mut all = Vec::new();
                partitions(n, n, &mut Vec::new(), &mut all);
                for t in 2..=r {
                    let best = turan_graph(n, r).unwrap().count_cliques(t);
                    for parts in all.iter().filter(|p| p.len() <= r) {
                        let g = complete_multipartite(&profile(parts)).unwrap();
                        assert!(g.count_cliques(t) <= best);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn disjoint_cliques_meet_degree_bound(k in 1usize..6, r in 1usize..8, t in 2usize..6) {
            prop_assume!(k * (r + 1) <= 64);
            let g = disjoint_cliques(k, r + 1).unwrap();
            prop_assert_eq!(g.max_degree(), r);
            let n = (k * (r + 1)) as u128;
            // k_t * t == n * C(r, t - 1)
            prop_assert_eq!(g.count_cliques(t) * t as u128, n * binom(r as u64, (t - 1) as u64).unwrap());
        }

        #[test]
        fn blowup_of_clique_contains_its_blowup(r in 1usize..5, b in 1usize..4) {
            let g = blowup(&Graph::complete(r + 1).unwrap(), b).unwrap();
            let classes = g.find_blowup(r + 1, b).unwrap();
            prop_assert_eq!(classes.len(), r + 1);
            prop_assert!(g.is_kr1_free(r + 1));
        }
    }
}
