//! Small dense simple graphs stored as one adjacency word per vertex.
//!
//! Everything here is exact integer arithmetic. Clique and star counts are
//! returned as `u128`; for `n <= 64` neither can overflow (`C(64, t)` fits in
//! 61 bits and a star count is at most `64 * C(63, 31)`).

use rand::Rng;

use crate::combin::binom_small;
use crate::error::{Error, Result};

/// Largest supported vertex count: one `u64` row per vertex.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterate the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// A simple undirected graph on vertices `0..n` with `1 <= n <= 64`.
///
/// Rows are kept symmetric, loop-free and confined to the low `n` bits by
/// every constructor and mutator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

/// Change in the star count `s_t` caused by cloning (`b_plus`) or deleting
/// (`b_minus`) one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexDelta {
    pub b_plus: u128,
    pub b_minus: u128,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "vertex count {n} outside 1..={MAX_VERTICES}"
            )));
        }
        Ok(Self {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = low_bits(n);
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    /// Cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
        }
        let mut g = Self::path(n)?;
        g.add_edge(0, n - 1)?;
        Ok(g)
    }

    /// Path on `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    /// Star `S_leaves = K_{1,leaves}` with center `0`.
    pub fn star(leaves: usize) -> Result<Self> {
        let mut g = Self::empty(leaves + 1)?;
        for v in 1..=leaves {
            g.add_edge(0, v)?;
        }
        Ok(g)
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("edge probability {p}")));
        }
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    g.set_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Build from raw rows. Rows must already be symmetric and loop-free.
    pub(crate) fn from_rows(n: usize, rows: &[u64]) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&n) && rows.len() == n);
        let mut adj = [0; MAX_VERTICES];
        adj[..n].copy_from_slice(rows);
        let g = Self { n, adj };
        debug_assert!(g.check_invariants());
        g
    }

    fn check_invariants(&self) -> bool {
        let mask = low_bits(self.n);
        (0..self.n).all(|v| {
            self.adj[v] & !mask == 0
                && self.adj[v] & bit(v) == 0
                && Bits(self.adj[v]).all(|u| self.adj[u] & bit(v) != 0)
        }) && self.adj[self.n..].iter().all(|&r| r == 0)
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
        }
        self.set_edge(u, v);
        Ok(())
    }

    #[inline]
    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbourhood of `v` as a bitset. Panics if `v >= 64`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_bits(u + 1)).map(move |v| (u, v)))
    }

    /// Degrees in nonincreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Number of complete `t`-vertex subsets, `k_t`. `k_0 = 1`, and `k_t = 0`
    /// once `t > n`.
    pub fn count_cliques(&self, t: usize) -> u128 {
        count_in(&self.adj, low_bits(self.n), t)
    }

    /// Number of `t`-cliques through `v`, i.e. `k_{t-1}` of the neighbourhood.
    pub fn count_cliques_at(&self, v: usize, t: usize) -> Result<u128> {
        self.check_vertex(v)?;
        if t == 0 {
            return Ok(0);
        }
        Ok(count_in(&self.adj, self.adj[v], t - 1))
    }

    /// Number of stars `S_r = K_{1,r}`: `sum_v C(d(v), r)`.
    pub fn count_stars(&self, r: usize) -> u128 {
        (0..self.n).map(|v| binom_small(self.degree(v), r)).sum()
    }

    /// True iff the graph has no `K_{r+1}`.
    pub fn is_kr1_free(&self, r: usize) -> bool {
        !has_clique_in(&self.adj, low_bits(self.n), r + 1)
    }

    /// Remove `x`; vertices above `x` shift down by one.
    pub fn delete_vertex(&self, x: usize) -> Result<Self> {
        self.check_vertex(x)?;
        if self.n == 1 {
            return Err(Error::Capacity("cannot delete the only vertex".into()));
        }
        let below = low_bits(x);
        let mut adj = [0; MAX_VERTICES];
        for (i, v) in (0..self.n).filter(|&v| v != x).enumerate() {
            let row = self.adj[v];
            adj[i] = (row & below) | ((row >> 1) & !below);
        }
        Ok(Self {
            n: self.n - 1,
            adj,
        })
    }

    /// Append a twin `x'` of `x` (same neighbourhood, `x' !~ x`) as vertex `n`.
    pub fn clone_vertex(&self, x: usize) -> Result<Self> {
        self.check_vertex(x)?;
        if self.n >= MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "cloning would exceed {MAX_VERTICES} vertices"
            )));
        }
        let mut g = self.clone();
        let new = self.n;
        g.n += 1;
        g.adj[new] = self.adj[x];
        for u in Bits(self.adj[x]) {
            g.adj[u] |= bit(new);
        }
        Ok(g)
    }

    /// `B+` and `B-` for vertex `x` and star size `t`.
    pub fn vertex_delta(&self, x: usize, t: usize) -> Result<VertexDelta> {
        self.check_vertex(x)?;
        let own = binom_small(self.degree(x), t);
        let (mut plus, mut minus) = (own, own);
        if t >= 1 {
            for v in Bits(self.adj[x]) {
                let d = self.degree(v);
                plus += binom_small(d, t - 1);
                minus += binom_small(d - 1, t - 1);
            }
        }
        Ok(VertexDelta {
            b_plus: plus,
            b_minus: minus,
        })
    }

    /// True iff non-adjacency is an equivalence relation, i.e. the graph is
    /// complete multipartite.
    pub fn is_complete_multipartite(&self) -> bool {
        (0..self.n).all(|u| {
            let non = low_bits(self.n) & !self.adj[u] & !bit(u);
            Bits(non).all(|v| self.adj[v] == self.adj[u])
        })
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length".into()));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & bit(p) != 0 {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen |= bit(p);
        }
        let mut adj = [0; MAX_VERTICES];
        for v in 0..self.n {
            adj[perm[v]] = Bits(self.adj[v]).fold(0, |acc, u| acc | bit(perm[u]));
        }
        Ok(Self { n: self.n, adj })
    }

    /// Search for `K_s(b)`: `s` disjoint `b`-sets, every cross pair adjacent.
    ///
    /// Classes are returned in increasing order of their smallest vertex.
    /// Exhaustive; meant for `s * b` up to about 16.
    pub fn find_blowup(&self, s: usize, b: usize) -> Option<Vec<Vec<usize>>> {
        if s == 0 || b == 0 || s * b > self.n {
            return None;
        }
        let mut classes = Vec::with_capacity(s);
        if self.blowup_search(s, b, low_bits(self.n), 0, &mut classes) {
            Some(classes.into_iter().map(|m| Bits(m).collect()).collect())
        } else {
            None
        }
    }

    /// `allowed`: vertices joined to every chosen class; `floor`: the next
    /// class must have its minimum at or above this vertex.
    fn blowup_search(
        &self,
        remaining: usize,
        b: usize,
        allowed: u64,
        floor: usize,
        classes: &mut Vec<u64>,
    ) -> bool {
        if remaining == 0 {
            return true;
        }
        if (allowed.count_ones() as usize) < remaining * b {
            return false;
        }
        for first in Bits(allowed & !low_bits(floor)) {
            let rest = allowed & !low_bits(first + 1);
            let mut found = false;
            choose_subsets(rest, b - 1, bit(first), &mut |class| {
                let mut joined = allowed & !class;
                for v in Bits(class) {
                    joined &= self.adj[v];
                }
                classes.push(class);
                if self.blowup_search(remaining - 1, b, joined, first + 1, classes) {
                    found = true;
                    return true;
                }
                classes.pop();
                false
            });
            if found {
                return true;
            }
        }
        false
    }
}

/// Visit `k`-subsets of `pool`, each OR-ed into `base`. Stops when `visit`
/// returns true; the return value reports whether it did.
fn choose_subsets(pool: u64, k: usize, base: u64, visit: &mut dyn FnMut(u64) -> bool) -> bool {
    if k == 0 {
        return visit(base);
    }
    if (pool.count_ones() as usize) < k {
        return false;
    }
    for v in Bits(pool) {
        let higher = pool & !low_bits(v + 1);
        if choose_subsets(higher, k - 1, base | bit(v), visit) {
            return true;
        }
    }
    false
}

/// Number of `t`-cliques inside the vertex set `cand`.
fn count_in(adj: &[u64; MAX_VERTICES], cand: u64, t: usize) -> u128 {
    match t {
        0 => 1,
        1 => u128::from(cand.count_ones()),
        2 => Bits(cand)
            .map(|v| u128::from((adj[v] & cand & !low_bits(v + 1)).count_ones()))
            .sum(),
        _ => {
            let size = cand.count_ones() as usize;
            if size < t {
                return 0;
            }
            // Dense shortcut: a clique candidate set contributes C(size, t).
            if Bits(cand).all(|v| adj[v] & cand == cand & !bit(v)) {
                return binom_small(size, t);
            }
            Bits(cand)
                .map(|v| count_in(adj, adj[v] & cand & !low_bits(v + 1), t - 1))
                .sum()
        }
    }
}

fn has_clique_in(adj: &[u64; MAX_VERTICES], cand: u64, t: usize) -> bool {
    if t == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < t {
        return false;
    }
    if t == 1 {
        return true;
    }
    Bits(cand).any(|v| has_clique_in(adj, adj[v] & cand & !low_bits(v + 1), t - 1))
}
