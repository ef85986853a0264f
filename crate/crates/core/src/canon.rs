//! Canonical labelling of small graphs and isomorphism-class catalogs.
//!
//! The canonical form is the lexicographically smallest upper-triangle
//! adjacency string over all labellings reachable by individualization and
//! refinement from the degree partition. Refinement is label-invariant, so
//! the minimum is an isomorphism invariant; twins within a cell are explored
//! once since swapping them is an automorphism fixing the partition.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

/// Largest vertex count for [`canonical_form`]: the key must fit in 64 bits.
pub const MAX_CANON_VERTICES: usize = 11;

/// Upper triangle of the canonically relabelled adjacency matrix, read row by
/// row (`(0,1), (0,2), ..., (n-2,n-1)`), most significant bit first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    bits: u64,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut rows = vec![0u64; n];
        let mut pos = n * (n - 1) / 2;
        for i in 0..n {
            for j in (i + 1)..n {
                pos -= 1;
                if self.bits >> pos & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        Graph::from_rows(n, &rows)
    }
}

type Cells = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Cells) -> Cells {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let mut next = Vec::with_capacity(g.n());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let row = g.neighbors(v);
                    (masks.iter().map(|m| (row & m).count_ones()).collect(), v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|k| k.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn leaf_key(g: &Graph, order: &[usize]) -> u64 {
    let mut key = 0u64;
    for (i, &u) in order.iter().enumerate() {
        let row = g.neighbors(u);
        for &v in &order[i + 1..] {
            key = key << 1 | (row >> v & 1);
        }
    }
    key
}

fn search(g: &Graph, cells: Cells, best: &mut Option<u64>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let key = leaf_key(g, &order);
        if best.is_none_or(|b| key < b) {
            *best = Some(key);
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        let twin = tried.iter().any(|&u| {
            let (ru, rv) = (g.neighbors(u), g.neighbors(v));
            ru & !(1 << v) == rv & !(1 << u)
        });
        if twin {
            continue;
        }
        tried.push(v);
        let mut split = cells[..target].to_vec();
        split.push(vec![v]);
        split.push(cell.iter().copied().filter(|&u| u != v).collect());
        split.extend_from_slice(&cells[target + 1..]);
        search(g, refine(g, split), best);
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::Capacity(format!(
            "canonical form supports n <= {MAX_CANON_VERTICES}, got {n}"
        )));
    }
    let mut by_degree: Vec<(usize, usize)> = (0..n).map(|v| (g.degree(v), v)).collect();
    by_degree.sort();
    let mut cells: Cells = Vec::new();
    for (d, v) in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == d => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = None;
    search(g, refine(g, cells), &mut best);
    Ok(CanonicalForm {
        n: n as u8,
        bits: best.expect("search always reaches a leaf"),
    })
}

/// Hereditary restriction applied while building a catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Restriction {
    None,
    /// Every degree at most this value.
    MaxDegree(usize),
    /// No clique of this order.
    CliqueFree(usize),
}

impl Restriction {
    fn admits(self, g: &Graph) -> bool {
        match self {
            Restriction::None => true,
            Restriction::MaxDegree(d) => g.max_degree() <= d,
            Restriction::CliqueFree(k) => !has_clique(g, (1u64 << g.n()) - 1, k),
        }
    }
}

fn has_clique(g: &Graph, cand: u64, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < k {
        return false;
    }
    Bits(cand).any(|v| has_clique(g, cand & g.neighbors(v) & !((2u64 << v) - 1), k - 1))
}

/// Largest `n` accepted by [`catalog`].
pub const MAX_CATALOG_VERTICES: usize = 9;

type CatalogCache = Mutex<HashMap<(usize, Restriction), Arc<Vec<Graph>>>>;

fn cache() -> &'static CatalogCache {
    static CACHE: OnceLock<CatalogCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// One representative (in canonical labelling) of every isomorphism class of
/// graphs on `n` vertices satisfying `restriction`, sorted by canonical form.
///
/// Built by adding a vertex in every possible way to each class on `n - 1`
/// vertices; valid because every restriction is closed under deleting a
/// vertex.
pub fn catalog(n: usize, restriction: Restriction) -> Result<Arc<Vec<Graph>>> {
    if n == 0 || n > MAX_CATALOG_VERTICES {
        return Err(Error::Capacity(format!(
            "catalog supports 1 <= n <= {MAX_CATALOG_VERTICES}, got {n}"
        )));
    }
    if let Some(hit) = cache().lock().expect("catalog cache").get(&(n, restriction)) {
        return Ok(Arc::clone(hit));
    }
    let built = if n == 1 {
        vec![Graph::empty(1)?]
    } else {
        let prev = catalog(n - 1, restriction)?;
        let mut forms: Vec<CanonicalForm> = prev
            .par_iter()
            .flat_map_iter(|g| {
                let base: Vec<u64> = g.rows().to_vec();
                (0u64..1 << (n - 1)).filter_map(move |nbrs| {
                    let mut rows = base.clone();
                    for u in Bits(nbrs) {
                        rows[u] |= 1 << (n - 1);
                    }
                    rows.push(nbrs);
                    let h = Graph::from_rows(n, &rows);
                    if restriction.admits(&h) {
                        Some(canonical_form(&h).expect("n within canonical range"))
                    } else {
                        None
                    }
                })
            })
            .collect();
        forms.par_sort_unstable();
        forms.dedup();
        forms.iter().map(CanonicalForm::to_graph).collect()
    };
    let built = Arc::new(built);
    cache()
        .lock()
        .expect("catalog cache")
        .insert((n, restriction), Arc::clone(&built));
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn class_counts_match_known_sequence() {
        let known = [1, 2, 4, 11, 34, 156, 1044, 12346];
        for (i, &k) in known.iter().enumerate() {
            assert_eq!(catalog(i + 1, Restriction::None).unwrap().len(), k, "n = {}", i + 1);
        }
    }

    #[test]
    fn restricted_counts() {
        // Triangle-free graphs on 1..=7 vertices.
        let tri_free = [1, 2, 3, 7, 14, 38, 107];
        for (i, &k) in tri_free.iter().enumerate() {
            assert_eq!(catalog(i + 1, Restriction::CliqueFree(3)).unwrap().len(), k);
        }
        // Graphs with maximum degree at most 2 on 1..=7 vertices.
        let deg2 = [1, 2, 4, 7, 11, 19, 29];
        for (i, &k) in deg2.iter().enumerate() {
            assert_eq!(catalog(i + 1, Restriction::MaxDegree(2)).unwrap().len(), k);
        }
    }

    #[test]
    fn forms_are_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=MAX_CANON_VERTICES {
            for _ in 0..40 {
                let g = Graph::random(n, 0.5, &mut rng).unwrap();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                let h = g.permute(&perm).unwrap();
                let (cg, ch) = (canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
                assert_eq!(cg, ch);
                assert_eq!(canonical_form(&cg.to_graph()).unwrap(), cg);
                assert_eq!(cg.to_graph().edge_count(), g.edge_count());
            }
        }
    }

    #[test]
    fn distinct_classes_get_distinct_forms() {
        let p4 = Graph::path(4).unwrap();
        let star = Graph::star(3).unwrap();
        assert_ne!(canonical_form(&p4).unwrap(), canonical_form(&star).unwrap());
        let c6 = Graph::cycle(6).unwrap();
        let two_triangles = crate::constructions::disjoint_cliques(2, 3).unwrap();
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&two_triangles).unwrap());
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        for n in 1..=MAX_CANON_VERTICES {
            let k = Graph::complete(n).unwrap();
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_form(&k).unwrap().to_graph(), k);
            assert_eq!(canonical_form(&e).unwrap().to_graph(), e);
        }
        assert!(canonical_form(&Graph::empty(12).unwrap()).is_err());
    }
}
