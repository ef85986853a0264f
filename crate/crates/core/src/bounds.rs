//! Closed-form extremal numbers and supersaturation certificates for cliques
//! and stars.

use num_rational::Ratio;

use crate::combin::{binom, binom_small};
use crate::error::{ensure_param, Error, Result};
use crate::graph::Graph;
use crate::realfn::{composite, GenBinomial};

const THETA_BISECTION_STEPS: usize = 200;

/// Upper bound on `k_t` over graphs with maximum degree at most `r`:
/// `(n / t) * C(r, t - 1)`, exact. Attained by disjoint `K_{r+1}`s when
/// `(r + 1) | n`.
pub fn ex_cliques_no_star(n: u64, r: u64, t: u64) -> Result<Ratio<u128>> {
    ensure_param!(r >= 1 && r <= n, "need 1 <= r <= n (r = {r}, n = {n})");
    ensure_param!(t >= 2, "clique order t must be at least 2");
    let c = binom(r, t - 1).ok_or(Error::Overflow("C(r, t-1)"))?;
    let num = c
        .checked_mul(u128::from(n))
        .ok_or(Error::Overflow("n * C(r, t-1)"))?;
    Ok(Ratio::new(num, u128::from(t)))
}

/// Maximum number of `S_t` over graphs with maximum degree at most `r`.
pub fn ex_stars_no_star(n: u64, r: u64, t: u64) -> Result<u128> {
    ensure_param!(n > r, "need n >= r + 1 (n = {n}, r = {r})");
    ensure_param!(t >= 2, "star size t must be at least 2");
    let full = binom(r, t).ok_or(Error::Overflow("C(r, t)"))?;
    let value = if (n * r).is_multiple_of(2) {
        full.checked_mul(u128::from(n))
    } else {
        // One vertex of degree r - 1, the rest r-regular.
        let short = binom(r - 1, t).ok_or(Error::Overflow("C(r-1, t)"))?;
        full.checked_mul(u128::from(n - 1)).and_then(|v| v.checked_add(short))
    };
    value.ok_or(Error::Overflow("star extremal number"))
}

/// Guaranteed number of `S_{r+1}` once a degree-bounded graph exceeds the
/// star extremal number by `eps * n * C(r, t)` copies of `S_t`:
/// `eps * n * (r - t + 1) / t`.
pub fn star_star_supersat(n: u64, r: u64, t: u64, eps: f64) -> Result<f64> {
    ensure_param!(t >= 1 && t <= r, "need 1 <= t <= r (r = {r}, t = {t})");
    ensure_param!(eps >= 0.0 && eps.is_finite(), "eps must be finite and nonnegative");
    Ok(eps * n as f64 * (r - t + 1) as f64 / t as f64)
}

/// Certificate that a graph with `k_t >= threshold * n` has at least
/// `delta * n` copies of `S_{r+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupersatBound {
    pub r: u32,
    pub t: u32,
    pub epsilon: f64,
    /// Per-vertex clique level `(1 + eps) * C(r + 1, t) / (r + 1)`.
    pub threshold: f64,
    pub delta: f64,
}

impl SupersatBound {
    /// Smallest integer `k_t` meeting the hypothesis on `n` vertices.
    pub fn min_cliques(&self, n: usize) -> u128 {
        (self.threshold * n as f64).ceil() as u128
    }

    pub fn hypothesis_holds(&self, g: &Graph) -> bool {
        g.count_cliques(self.t as usize) as f64 >= self.threshold * g.n() as f64
    }

    pub fn guaranteed_stars(&self, n: usize) -> f64 {
        self.delta * n as f64
    }
}

/// `delta = f_{r+1}(f_{t-1}^{-1}(C(r, t-1) * (1 + eps)))`.
pub fn supersat_delta(r: u32, t: u32, eps: f64) -> Result<SupersatBound> {
    ensure_param!(t >= 2 && t <= r, "need 2 <= t <= r (r = {r}, t = {t})");
    ensure_param!(eps > 0.0 && eps.is_finite(), "eps must be positive and finite");
    let level = binom_small(r as usize, t as usize - 1) as f64;
    let per_vertex = binom_small(r as usize + 1, t as usize) as f64 / f64::from(r + 1);
    Ok(SupersatBound {
        r,
        t,
        epsilon: eps,
        threshold: (1.0 + eps) * per_vertex,
        delta: composite(r, t, level * (1.0 + eps))?,
    })
}

/// Convexity lower bound `n * F(mean_v C(d(v), t - 1))` on `s_{r+1}(g)`,
/// where `F = f_{r+1} o f_{t-1}^{-1}`. Valid for every graph.
pub fn jensen_star_lower_bound(g: &Graph, r: u32, t: u32) -> Result<f64> {
    ensure_param!(t >= 2 && t <= r, "need 2 <= t <= r (r = {r}, t = {t})");
    let n = g.n();
    let total: u128 = (0..n).map(|v| binom_small(g.degree(v), t as usize - 1)).sum();
    let mean = total as f64 / n as f64;
    Ok(n as f64 * composite(r, t, mean)?)
}

/// Lower bound on `k_s` from `k_t`: find real `theta` with
/// `C(theta, t) (n / theta)^t = kt` and return `C(theta, s) (n / theta)^s`.
///
/// Returns `0` when no `theta >= s - 1` solves the equation, and rejects `kt`
/// above `C(n, t)`.
pub fn theta_clique_bound(n: u64, kt: u128, t: u32, s: u32) -> Result<f64> {
    ensure_param!(t >= 2 && t <= s, "need 2 <= t <= s (t = {t}, s = {s})");
    ensure_param!(n >= 1, "need n >= 1");
    let max = binom(n, u64::from(t)).ok_or(Error::Overflow("C(n, t)"))?;
    ensure_param!(kt <= max, "k_{t} = {kt} exceeds C({n}, {t}) = {max}");
    if kt == 0 {
        return Ok(0.0);
    }
    let (ft, fs) = (GenBinomial::new(t)?, GenBinomial::new(s)?);
    let nf = n as f64;
    let level = |theta: f64| ft.eval_unchecked(theta) * (nf / theta).powi(t as i32);
    let target = kt as f64;
    let mut lo = f64::from(s - 1).max(f64::from(t - 1));
    let mut hi = nf;
    if lo >= hi || level(lo) >= target {
        return Ok(0.0);
    }
    for _ in 0..THETA_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if level(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta = 0.5 * (lo + hi);
    Ok(fs.eval_unchecked(theta) * (nf / theta).powi(s as i32))
}

/// `k_{s+1}/k_s - (s^2 k_s / k_{s-1} - n) / (s^2 - 1)`, which is nonnegative
/// for every graph.
pub fn moon_moser_check(g: &Graph, s: usize) -> Result<f64> {
    ensure_param!(s >= 2, "Moon-Moser needs s >= 2");
    let below = g.count_cliques(s - 1);
    let at = g.count_cliques(s);
    if at == 0 || below == 0 {
        return Err(Error::Inapplicable(format!(
            "k_{s} = {at}, k_{} = {below}; ratios undefined",
            s - 1
        )));
    }
    let above = g.count_cliques(s + 1);
    let sf = s as f64;
    let lhs = above as f64 / at as f64;
    let rhs = (sf * sf * at as f64 / below as f64 - g.n() as f64) / (sf * sf - 1.0);
    Ok(lhs - rhs)
}
