//! Verification suites: every check compares a module against brute force or
//! an identity that must hold exactly.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use turan_core::bounds::{jensen_star_lower_bound, moon_moser_check, supersat_delta};
use turan_core::combin::binom;
use turan_core::constructions::{complete_multipartite, PartitionProfile};
use turan_core::graphon::{is_legal, solve, OptParams};
use turan_core::oracle::{
    all_graphs, brute_ex, check_multipartite_theorem, grid_search_skew, min_stars_given_cliques,
    Pattern,
};
use turan_core::realfn::{compose, GenBinomial};
use turan_core::{canon::canonical_form, Error, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Moonmoser,
    Convexity,
    Multipartite,
    Supersat,
    Deltas,
    OptimizerOracle,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub pass: bool,
    pub name: &'static str,
    pub instance: String,
    pub detail: String,
}

impl Check {
    fn new(pass: bool, name: &'static str, instance: String, detail: String) -> Self {
        Self {
            pass,
            name,
            instance,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} {}", self.name, self.instance)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

/// Largest `n` any exhaustive suite accepts.
pub const MAX_EXHAUSTIVE_N: usize = 8;

/// `(r, t)` pairs exercised by the supersaturation suites.
pub const SUPERSAT_PAIRS: [(u32, u32); 5] = [(2, 2), (3, 2), (3, 3), (4, 3), (5, 3)];

pub fn run(suite: Suite, max_n: usize, seed: u64) -> Result<Vec<Check>, Error> {
    if max_n == 0 || max_n > MAX_EXHAUSTIVE_N {
        return Err(Error::InvalidParameter(format!(
            "--max-n must be in 1..={MAX_EXHAUSTIVE_N}, got {max_n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Moonmoser {
        out.extend(moonmoser_exhaustive(max_n)?);
        out.push(moonmoser_random(500, 24, &mut rng));
        out.push(moonmoser_complete(10));
    }
    if all || suite == Suite::Convexity {
        out.extend(convexity(10, 1000)?);
    }
    if all || suite == Suite::Multipartite {
        out.extend(multipartite(max_n)?);
        out.extend(multipartite_base_case(max_n)?);
    }
    if all || suite == Suite::Supersat {
        out.extend(supersat_exhaustive(max_n)?);
        out.push(supersat_random(1000, 24, &mut rng)?);
        out.extend(supersat_min_stars(max_n, &[0.1, 0.5, 1.0])?);
    }
    if all || suite == Suite::Deltas {
        out.push(deltas(200, 24, &mut rng)?);
    }
    if all || suite == Suite::OptimizerOracle {
        out.extend(optimizer_oracle(12, 40)?);
    }
    Ok(out)
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.random_range(2..=max_n);
    let p = rng.random::<f64>();
    Graph::random(n, p, rng).expect("n within capacity")
}

/// Smallest Moon–Moser residual over all applicable `s`, or `None` when no
/// `s` applies.
fn min_moon_moser(g: &Graph) -> Result<Option<f64>, Error> {
    let mut worst: Option<f64> = None;
    for s in 2..=g.n() {
        match moon_moser_check(g, s) {
            Ok(res) => worst = Some(worst.map_or(res, |w| w.min(res))),
            Err(Error::Inapplicable(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

pub fn moonmoser_exhaustive(max_n: usize) -> Result<Vec<Check>, Error> {
    (1..=max_n)
        .map(|n| {
            let graphs = all_graphs(n, None)?;
            let residuals = graphs
                .par_iter()
                .map(min_moon_moser)
                .collect::<Result<Vec<_>, _>>()?;
            let violations = residuals.iter().flatten().filter(|&&r| r < -1e-12).count();
            let worst = residuals.iter().flatten().copied().fold(f64::INFINITY, f64::min);
            Ok(Check::new(
                violations == 0,
                "moonmoser-exhaustive",
                format!("n={n}"),
                format!("{} classes, {violations} violations, min residual {worst:e}", graphs.len()),
            ))
        })
        .collect()
}

pub fn moonmoser_random(count: usize, max_n: usize, rng: &mut ChaCha8Rng) -> Check {
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..count {
        let g = random_graph(rng, max_n);
        if let Ok(Some(r)) = min_moon_moser(&g) {
            worst = worst.min(r);
            if r < -1e-12 {
                violations += 1;
            }
        }
    }
    Check::new(
        violations == 0,
        "moonmoser-random",
        format!("count={count} max_n={max_n}"),
        format!("{violations} violations, min residual {worst:e}"),
    )
}

/// Equality on complete graphs for `2 <= s < n <= max_n`.
pub fn moonmoser_complete(max_n: usize) -> Check {
    let mut worst = 0.0f64;
    for n in 3..=max_n {
        let k = Graph::complete(n).expect("n within capacity");
        for s in 2..n {
            let r = moon_moser_check(&k, s).expect("complete graph is applicable");
            worst = worst.max(r.abs());
        }
    }
    Check::new(
        worst <= 1e-12,
        "moonmoser-equality",
        format!("K_n n<={max_n}"),
        format!("max |residual| {worst:e}"),
    )
}

/// Second differences of `f_s o f_t^{-1}` on `points` interior grid points
/// of `(0, f_t(100))`, for `1 <= t < s <= max_s`.
pub fn convexity(max_s: u32, points: usize) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for s in 2..=max_s {
        for t in 1..s {
            let top = GenBinomial::new(t)?.eval(100.0)?;
            let hinge = binom(u64::from(s - 1), u64::from(t)).expect("small binomial") as f64;
            let step = top / (points + 1) as f64;
            let xs: Vec<f64> = (0..=points + 1).map(|i| step * i as f64).collect();
            let fx = xs.iter().map(|&x| compose(s, t, x)).collect::<Result<Vec<_>, _>>()?;
            let mut bad = 0;
            let mut flat = 0;
            for i in 1..=points {
                let d2 = fx[i - 1] - 2.0 * fx[i] + fx[i + 1];
                let local = fx[i - 1].abs().max(fx[i].abs()).max(fx[i + 1].abs());
                if d2 < -1e-9 * (1.0 + local) {
                    bad += 1;
                }
                if xs[i - 1] > hinge && d2 <= 0.0 {
                    flat += 1;
                }
            }
            out.push(Check::new(
                bad == 0 && flat == 0,
                "convexity",
                format!("t={t} s={s}"),
                format!("{bad} negative, {flat} non-positive beyond {hinge}"),
            ));
        }
    }
    Ok(out)
}

/// Every `s_t` maximizer among `K_{r+1}`-free graphs on `n <= max_n` vertices
/// is complete multipartite, for `2 <= r <= 6` and `2 <= t <= n - 1`.
pub fn multipartite(max_n: usize) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        let cases: Vec<(usize, usize)> = (2..=6)
            .flat_map(|r| (2..n).map(move |t| (r, t)))
            .collect();
        let mut failures = Vec::new();
        for &(r, t) in &cases {
            if !check_multipartite_theorem(n, r, t)? {
                failures.push(format!("r={r},t={t}"));
            }
        }
        out.push(Check::new(
            failures.is_empty(),
            "multipartite",
            format!("n={n}"),
            if failures.is_empty() {
                format!("{} (r,t) pairs", cases.len())
            } else {
                format!("failing {}", failures.join(" "))
            },
        ));
    }
    Ok(out)
}

/// On `n = t + 1` vertices with `t >= r`, the unique maximizer is
/// `K_{t-r+2, 1, ..., 1}`.
pub fn multipartite_base_case(max_n: usize) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for t in 2..max_n {
        for r in 2..=t {
            let cert = brute_ex(t + 1, Pattern::Star(t), Pattern::Clique(r + 1))?;
            let mut parts = vec![t + 2 - r];
            parts.extend(std::iter::repeat_n(1, r - 1));
            let expected = complete_multipartite(&PartitionProfile::new(parts)?)?;
            let unique = cert.witnesses.len() == 1
                && canonical_form(&cert.witnesses[0])? == canonical_form(&expected)?;
            out.push(Check::new(
                unique,
                "multipartite-base",
                format!("r={r} t={t}"),
                format!("{} witnesses, value {}", cert.witnesses.len(), cert.value),
            ));
        }
    }
    Ok(out)
}

fn jensen_holds(g: &Graph, r: u32, t: u32) -> Result<bool, Error> {
    let bound = jensen_star_lower_bound(g, r, t)?;
    let stars = g.count_stars(r as usize + 1) as f64;
    Ok(bound <= stars + 1e-9 * stars.max(1.0))
}

pub fn supersat_exhaustive(max_n: usize) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for &(r, t) in &SUPERSAT_PAIRS {
        let mut violations = 0;
        let mut total = 0;
        for n in 1..=max_n.min(7) {
            let graphs = all_graphs(n, None)?;
            total += graphs.len();
            violations += graphs
                .par_iter()
                .map(|g| jensen_holds(g, r, t).map(|ok| usize::from(!ok)))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .sum::<usize>();
        }
        out.push(Check::new(
            violations == 0,
            "jensen-exhaustive",
            format!("r={r} t={t}"),
            format!("{total} classes, {violations} violations"),
        ));
    }
    Ok(out)
}

pub fn supersat_random(count: usize, max_n: usize, rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let mut violations = 0;
    for _ in 0..count {
        let g = random_graph(rng, max_n);
        for &(r, t) in &SUPERSAT_PAIRS {
            if !jensen_holds(&g, r, t)? {
                violations += 1;
            }
        }
    }
    Ok(Check::new(
        violations == 0,
        "jensen-random",
        format!("count={count} max_n={max_n}"),
        format!("{violations} violations"),
    ))
}

/// Brute-force minimum of `s_{r+1}` at the supersaturation hypothesis level
/// is at least `delta * n`, on every `n <= max_n` where the level is feasible.
pub fn supersat_min_stars(max_n: usize, epsilons: &[f64]) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for &(r, t) in &SUPERSAT_PAIRS {
        let mut solved = 0;
        let mut failures = Vec::new();
        for &eps in epsilons {
            let bound = supersat_delta(r, t, eps)?;
            for n in (t as usize)..=max_n {
                let kt_min = bound.min_cliques(n);
                if kt_min > binom(n as u64, u64::from(t)).expect("small binomial") {
                    continue;
                }
                let min = min_stars_given_cliques(n, r as usize, t as usize, kt_min)? as f64;
                let need = bound.guaranteed_stars(n);
                solved += 1;
                if min < need - 1e-9 * need.max(1.0) {
                    failures.push(format!("eps={eps},n={n}:{min}<{need}"));
                }
            }
        }
        out.push(Check::new(
            failures.is_empty(),
            "supersat-min-stars",
            format!("r={r} t={t}"),
            if failures.is_empty() {
                format!("{solved} instances")
            } else {
                failures.join(" ")
            },
        ));
    }
    Ok(out)
}

/// Clone/delete changes of `s_t` match `b_plus`/`b_minus` exactly, for
/// `1 <= t <= 4` and every vertex.
pub fn deltas(count: usize, max_n: usize, rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let mut mismatches = 0;
    let mut order = 0;
    let mut checked = 0;
    for _ in 0..count {
        let g = random_graph(rng, max_n);
        for x in 0..g.n() {
            let (plus, minus) = (g.clone_vertex(x)?, g.delete_vertex(x)?);
            for t in 1..=4 {
                let d = g.vertex_delta(x, t)?;
                let base = g.count_stars(t);
                checked += 1;
                if plus.count_stars(t) - base != d.b_plus || base - minus.count_stars(t) != d.b_minus {
                    mismatches += 1;
                }
                if d.b_plus < d.b_minus {
                    order += 1;
                }
            }
        }
    }
    Ok(Check::new(
        mismatches == 0 && order == 0,
        "deltas",
        format!("count={count} max_n={max_n}"),
        format!("{checked} (graph, vertex, t) cases, {mismatches} mismatches, {order} with b_plus < b_minus"),
    ))
}

/// Grid maximum of the `(r-1, 1)` family agrees with `solve` on all legal
/// pairs with `r <= max_r`, `t <= max_t`.
pub fn optimizer_oracle(max_r: u32, max_t: u32) -> Result<Vec<Check>, Error> {
    let pairs: Vec<(u32, u32)> = (2..=max_r)
        .flat_map(|r| (2..=max_t).map(move |t| (r, t)))
        .filter(|&(r, t)| is_legal(r, t))
        .collect();
    let worst = pairs
        .par_iter()
        .map(|&(r, t)| {
            let sol = solve(&OptParams::new(r, t)?)?;
            let grid = grid_search_skew(r, t, 1_000_000)?;
            Ok(((grid.value - sol.winner().value).abs(), r, t))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut by_r = Vec::new();
    for r in 2..=max_r {
        let diffs: Vec<&(f64, u32, u32)> = worst.iter().filter(|w| w.1 == r).collect();
        if diffs.is_empty() {
            continue;
        }
        let max = diffs.iter().map(|w| w.0).fold(0.0, f64::max);
        by_r.push(Check::new(
            max <= 1e-8,
            "optimizer-oracle",
            format!("r={r} t<={max_t}"),
            format!("{} legal t, max |grid - winner| {max:e}", diffs.len()),
        ));
    }
    Ok(by_r)
}
