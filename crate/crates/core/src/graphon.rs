//! Part proportions maximizing the star density of complete multipartite
//! `K_{r+1}`-free graphs.
//!
//! Maximize `F(rho) = sum_i rho_i (1 - rho_i)^t` over the simplex
//! `rho_1 + ... + rho_r = 1`, `rho_i >= 0`. With `f(rho) = rho (1 - rho)^t`,
//! `g = f'` and `h = f''`, interior critical points have `g(rho_i)` constant.
//! Besides the uniform (Turán) point, these are the skew points with `a`
//! coordinates `alpha < 2/(t+1)` and `b` coordinates `beta > 2/(t+1)` sharing
//! `g(alpha) = g(beta) = phi` for some `phi` in `(phi_min, 0]`, where
//! `phi_min = g(2/(t+1))`.
//!
//! For a fixed split `(a, b)`, `alpha` and `beta` are functions of `phi`, and
//! the simplex constraint becomes the scalar equation `L_ab(phi) = 1` with
//! `L_ab = a alpha + b beta`. On the legal region of `(r, t)` the optimum is
//! the Turán point or the `a = r - 1, b = 1` skew point with the largest root.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure_param, Error, Result};
use crate::oracle;

/// Largest supported `t`.
pub const MAX_T: u32 = 100_000;
/// Above this `t`, `(1 - rho)^e` goes through `exp(e * ln(1 - rho))`.
const LOG_POW_T: u32 = 500;
/// Uniform grid used to bracket roots of `L_ab(phi) = 1`.
pub const ROOT_SCAN_POINTS: usize = 10_000;
/// A largest root this close to `phi_min` is reported as degenerate.
pub const COALESCENCE_GAP: f64 = 1e-9;
/// Skew and Turán values closer than this are flagged.
pub const TIE_MARGIN: f64 = 1e-10;
/// Grid size used for the degenerate-case fallback value.
pub const FALLBACK_GRID_POINTS: usize = 1_000_000;

const BISECTION_STEPS: usize = 200;
/// Below this `|phi|` the equation `g(rho) = phi` is solved for `ln(-g)`.
const LOG_SPACE_PHI: f64 = 1e-200;

#[inline]
fn one_minus_pow(rho: f64, e: u32, t: u32) -> f64 {
    if e == 0 {
        return 1.0;
    }
    if rho >= 1.0 {
        return 0.0;
    }
    if t >= LOG_POW_T {
        (f64::from(e) * (-rho).ln_1p()).exp()
    } else {
        (1.0 - rho).powi(e as i32)
    }
}

#[inline]
fn f_raw(t: u32, rho: f64) -> f64 {
    one_minus_pow(rho, t, t) * rho
}

#[inline]
fn g_raw(t: u32, rho: f64) -> f64 {
    one_minus_pow(rho, t - 1, t) * (1.0 - f64::from(t + 1) * rho)
}

#[inline]
fn h_raw(t: u32, rho: f64) -> f64 {
    f64::from(t) * one_minus_pow(rho, t - 2, t) * (f64::from(t + 1) * rho - 2.0)
}

fn check_rho(t: u32, rho: f64) -> Result<()> {
    ensure_param!((2..=MAX_T).contains(&t), "t = {t} outside 2..={MAX_T}");
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Domain(format!("rho = {rho} outside [0, 1]")));
    }
    Ok(())
}

/// `f(rho) = rho (1 - rho)^t`.
pub fn f_rho(t: u32, rho: f64) -> Result<f64> {
    check_rho(t, rho)?;
    Ok(f_raw(t, rho))
}

/// `g(rho) = f'(rho) = (1 - rho)^(t-1) (1 - (t+1) rho)`.
pub fn g_rho(t: u32, rho: f64) -> Result<f64> {
    check_rho(t, rho)?;
    Ok(g_raw(t, rho))
}

/// `h(rho) = f''(rho) = t (1 - rho)^(t-2) ((t+1) rho - 2)`.
pub fn h_rho(t: u32, rho: f64) -> Result<f64> {
    check_rho(t, rho)?;
    Ok(h_raw(t, rho))
}

/// `f^(k)(rho) = (-1)^k t(t-1)...(t-k+2) (1 - rho)^(t-k) ((t+1) rho - k)`.
pub fn f_deriv_k(t: u32, k: u32, rho: f64) -> Result<f64> {
    check_rho(t, rho)?;
    ensure_param!(k >= 1 && k <= t, "derivative order k = {k} outside 1..={t}");
    let falling: f64 = (0..k - 1).map(|i| f64::from(t - i)).product();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * falling * one_minus_pow(rho, t - k, t) * (f64::from(t + 1) * rho - f64::from(k)))
}

/// Problem parameters with the two reference levels of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptParams {
    pub r: u32,
    pub t: u32,
    /// `g(2/(t+1))`, the minimum of `g` on `[0, 1]`.
    pub phi_min: f64,
    /// `g(3/(t+1))`; `L` is convex in `phi` above this level.
    pub phi_star: f64,
}

impl OptParams {
    pub fn new(r: u32, t: u32) -> Result<Self> {
        ensure_param!(r >= 2, "need r >= 2, got {r}");
        ensure_param!((2..=MAX_T).contains(&t), "t = {t} outside 2..={MAX_T}");
        let tp1 = f64::from(t + 1);
        Ok(Self {
            r,
            t,
            phi_min: g_raw(t, 2.0 / tp1),
            phi_star: g_raw(t, (3.0 / tp1).min(1.0)),
        })
    }

    pub fn legal(&self) -> bool {
        is_legal(self.r, self.t)
    }

    fn check_phi(&self, phi: f64) -> Result<()> {
        if phi > self.phi_min && phi <= 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "phi = {phi} outside ({}, 0]",
                self.phi_min
            )))
        }
    }

    fn check_split(&self, a: u32, b: u32) -> Result<()> {
        ensure_param!(
            a >= 1 && b >= 1 && a + b == self.r,
            "split (a, b) = ({a}, {b}) must be positive and sum to r = {}",
            self.r
        );
        Ok(())
    }

    /// `ln(-g(rho))` for `rho` in `(1/(t+1), 1)`; `-inf` at both ends.
    fn log_neg_g(&self, rho: f64) -> f64 {
        let t = self.t;
        f64::from(t - 1) * (-rho).ln_1p() + (f64::from(t + 1) * rho - 1.0).ln()
    }

    /// `d/drho ln(-g(rho))`.
    fn log_neg_g_slope(&self, rho: f64) -> f64 {
        let tp1 = f64::from(self.t + 1);
        tp1 / (tp1 * rho - 1.0) - f64::from(self.t - 1) / (1.0 - rho)
    }

    /// Solve `ln(-g(rho)) = psi` on the `alpha` side (`up`) or the `beta`
    /// side. Only used below [`LOG_SPACE_PHI`], where `g` itself loses
    /// relative precision or underflows.
    fn solve_log(&self, psi: f64, up: bool) -> f64 {
        let tp1 = f64::from(self.t + 1);
        let (lo, hi) = if up { (1.0 / tp1, 2.0 / tp1) } else { (2.0 / tp1, 1.0) };
        let sign = if up { 1.0 } else { -1.0 };
        newton_bracketed(lo, hi, |rho| {
            (
                sign * (self.log_neg_g(rho) - psi),
                sign * self.log_neg_g_slope(rho),
            )
        })
    }

    /// Solve `g(rho) = phi` on the `alpha` side (`g` decreasing) or the
    /// `beta` side (`g` increasing).
    fn solve_g(&self, phi: f64, alpha_side: bool) -> f64 {
        let tp1 = f64::from(self.t + 1);
        if phi == 0.0 {
            return if alpha_side { 1.0 / tp1 } else { 1.0 };
        }
        if -phi < LOG_SPACE_PHI {
            return self.solve_log((-phi).ln(), alpha_side);
        }
        let (lo, hi) = if alpha_side { (1.0 / tp1, 2.0 / tp1) } else { (2.0 / tp1, 1.0) };
        let sign = if alpha_side { -1.0 } else { 1.0 };
        newton_bracketed(lo, hi, |rho| {
            let (g, h) = g_and_h(self.t, rho);
            (sign * (g - phi), sign * h)
        })
    }

    /// `alpha` as a function of `psi = ln(-phi)`.
    fn alpha_log(&self, psi: f64) -> f64 {
        if psi < LOG_SPACE_PHI.ln() {
            self.solve_log(psi, true)
        } else {
            self.solve_g(-psi.exp(), true)
        }
    }

    /// `beta` as a function of `psi = ln(-phi)`.
    fn beta_log(&self, psi: f64) -> f64 {
        if psi < LOG_SPACE_PHI.ln() {
            self.solve_log(psi, false)
        } else {
            self.solve_g(-psi.exp(), false)
        }
    }

    fn alpha_raw(&self, phi: f64) -> f64 {
        self.solve_g(phi, true)
    }

    fn beta_raw(&self, phi: f64) -> f64 {
        self.solve_g(phi, false)
    }

    /// Root of `g(rho) = phi` in `[1/(t+1), 2/(t+1))`.
    pub fn alpha_of_phi(&self, phi: f64) -> Result<f64> {
        self.check_phi(phi)?;
        Ok(self.alpha_raw(phi))
    }

    /// Root of `g(rho) = phi` in `(2/(t+1), 1]`.
    pub fn beta_of_phi(&self, phi: f64) -> Result<f64> {
        self.check_phi(phi)?;
        Ok(self.beta_raw(phi))
    }

    fn l_raw(&self, a: u32, b: u32, phi: f64) -> f64 {
        f64::from(a) * self.alpha_raw(phi) + f64::from(b) * self.beta_raw(phi)
    }

    fn l_log(&self, a: u32, b: u32, psi: f64) -> f64 {
        f64::from(a) * self.alpha_log(psi) + f64::from(b) * self.beta_log(psi)
    }

    /// `L_ab(phi) = a alpha(phi) + b beta(phi)`.
    pub fn l_ab(&self, a: u32, b: u32, phi: f64) -> Result<f64> {
        self.check_split(a, b)?;
        self.check_phi(phi)?;
        Ok(self.l_raw(a, b, phi))
    }

    /// `F_ab(phi) = a f(alpha(phi)) + b f(beta(phi))`.
    pub fn f_ab(&self, a: u32, b: u32, phi: f64) -> Result<f64> {
        self.check_split(a, b)?;
        self.check_phi(phi)?;
        let (al, be) = (self.alpha_raw(phi), self.beta_raw(phi));
        Ok(f64::from(a) * f_raw(self.t, al) + f64::from(b) * f_raw(self.t, be))
    }

    /// `dL_ab/dphi = a / h(alpha) + b / h(beta)` on the open interval.
    pub fn dl_dphi(&self, a: u32, b: u32, phi: f64) -> Result<f64> {
        self.check_split(a, b)?;
        if !(phi > self.phi_min && phi < 0.0) {
            return Err(Error::Domain(format!(
                "dL/dphi needs phi strictly inside ({}, 0), got {phi}",
                self.phi_min
            )));
        }
        let (ha, hb) = (
            h_raw(self.t, self.alpha_raw(phi)),
            h_raw(self.t, self.beta_raw(phi)),
        );
        if ha == 0.0 || hb == 0.0 {
            return Err(Error::Domain(format!("h vanishes at phi = {phi}")));
        }
        Ok(f64::from(a) / ha + f64::from(b) / hb)
    }

    /// All roots of `L_ab(phi) = 1` in `(phi_min, 0)`, largest first.
    ///
    /// Roots too close to zero to be represented come back as `-0.0`; see
    /// [`Self::find_skew_roots_log`].
    pub fn find_skew_roots(&self, a: u32, b: u32) -> Result<Vec<f64>> {
        Ok(self
            .find_skew_roots_log(a, b)?
            .into_iter()
            .map(|psi| -psi.exp())
            .collect())
    }

    /// Roots of `L_ab = 1` as `psi = ln(-phi)`, smallest `psi` (largest
    /// `phi`) first.
    ///
    /// Brackets come from sign changes on a uniform grid of
    /// [`ROOT_SCAN_POINTS`] points in `phi` over `[phi_min + 1e-9, -1e-12]`,
    /// continued by [`ROOT_SCAN_POINTS`] uniform points in `psi` down to the
    /// level where `beta = 1 - 1/((r-1)(t+1))`. No root lies beyond that:
    /// `b (1 - beta) = a alpha >= a/(t+1)`. For large `t` the largest root
    /// is far inside `(-1e-12, 0)`, often below the smallest `f64`.
    pub fn find_skew_roots_log(&self, a: u32, b: u32) -> Result<Vec<f64>> {
        self.check_split(a, b)?;
        Ok(self.roots_on_grid(&self.scan_grid(), a, b))
    }

    /// [`Self::find_skew_roots_log`] for every split `a = 1, ..., r - 1`,
    /// sharing one grid of `(alpha, beta)` values.
    pub fn find_skew_roots_log_all(&self) -> Vec<Vec<f64>> {
        let grid = self.scan_grid();
        (1..self.r).map(|a| self.roots_on_grid(&grid, a, self.r - a)).collect()
    }

    /// `(psi, alpha, beta)` along the scan, in decreasing `psi`.
    fn scan_grid(&self) -> Vec<(f64, f64, f64)> {
        let lo = self.phi_min + 1e-9;
        let hi = -1e-12;
        if lo >= hi {
            return Vec::new();
        }
        let step = (hi - lo) / (ROOT_SCAN_POINTS - 1) as f64;
        let mut psis: Vec<f64> = (0..ROOT_SCAN_POINTS)
            .map(|i| {
                let phi = if i + 1 == ROOT_SCAN_POINTS { hi } else { lo + step * i as f64 };
                (-phi).ln()
            })
            .collect();
        let tp1 = f64::from(self.t + 1);
        let beta_cap = 1.0 - 1.0 / (f64::from(self.r - 1) * tp1);
        let psi_hi = (-hi).ln();
        if beta_cap > 2.0 / tp1 {
            let psi_lo = self.log_neg_g(beta_cap) - 1.0;
            if psi_lo < psi_hi {
                let dpsi = (psi_hi - psi_lo) / ROOT_SCAN_POINTS as f64;
                psis.extend((1..=ROOT_SCAN_POINTS).map(|i| psi_hi - dpsi * i as f64));
            }
        }
        psis.into_iter()
            .map(|psi| (psi, self.alpha_log(psi), self.beta_log(psi)))
            .collect()
    }

    fn roots_on_grid(&self, grid: &[(f64, f64, f64)], a: u32, b: u32) -> Vec<f64> {
        let (fa, fb) = (f64::from(a), f64::from(b));
        let excess = |&(_, alpha, beta): &(f64, f64, f64)| fa * alpha + fb * beta - 1.0;
        let mut roots = Vec::new();
        for (i, cur) in grid.iter().enumerate() {
            let v = excess(cur);
            if v == 0.0 {
                roots.push(cur.0);
                continue;
            }
            if let Some(next) = grid.get(i + 1) {
                let v2 = excess(next);
                if v2 != 0.0 && (v < 0.0) != (v2 < 0.0) {
                    // psi decreases along the grid; bisect on [next, cur].
                    let below2 = v2 < 0.0;
                    roots.push(bisect(next.0, cur.0, |p| (self.l_log(a, b, p) < 1.0) == below2));
                }
            }
        }
        roots.sort_by(|x, y| x.total_cmp(y));
        roots
    }

    /// The uniform point `(1/r, ..., 1/r)`.
    pub fn turan_point(&self) -> CriticalPoint {
        let x = 1.0 / f64::from(self.r);
        CriticalPoint {
            kind: PointKind::Turan,
            a: self.r,
            b: 0,
            alpha: x,
            beta: x,
            phi: g_raw(self.t, x),
            value: one_minus_pow(x, self.t, self.t),
            degenerate: false,
        }
    }

    /// Skew critical point for split `(a, b)` at a root `phi` of `L_ab = 1`.
    pub fn skew_point(&self, a: u32, b: u32, phi: f64) -> Result<CriticalPoint> {
        self.check_phi(phi)?;
        self.skew_point_log(a, b, (-phi).ln())
    }

    /// As [`Self::skew_point`], with the root given as `psi = ln(-phi)`.
    pub fn skew_point_log(&self, a: u32, b: u32, psi: f64) -> Result<CriticalPoint> {
        self.check_split(a, b)?;
        if psi.is_nan() || psi > (-self.phi_min).ln() {
            return Err(Error::Domain(format!("ln(-phi) = {psi} outside the skew range")));
        }
        let (alpha, beta) = (self.alpha_log(psi), self.beta_log(psi));
        let value = f64::from(a) * f_raw(self.t, alpha) + f64::from(b) * f_raw(self.t, beta);
        Ok(CriticalPoint {
            kind: PointKind::Skew,
            a,
            b,
            alpha,
            beta,
            phi: -psi.exp(),
            value,
            degenerate: false,
        })
    }
}

/// Bisection on `[lo, hi]` where `left(x)` holds on the left part of the
/// interval and fails on the right. Returns the midpoint of the final bracket.
fn bisect(mut lo: f64, mut hi: f64, left: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if left(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of an increasing function on `[lo, hi]` with `f(lo) <= 0 <= f(hi)`.
/// `f` returns the value and the derivative. A Newton step that leaves the
/// bracket or fails to halve `|f|` is replaced by bisection.
fn newton_bracketed(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> (f64, f64)) -> f64 {
    let mut x = 0.5 * (lo + hi);
    let mut last = f64::INFINITY;
    for _ in 0..BISECTION_STEPS {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return x;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if fx.abs() <= 0.5 * last && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        last = fx.abs();
        if next <= lo || next >= hi || (next - x).abs() <= f64::EPSILON * x.abs() {
            return next.clamp(lo, hi);
        }
        x = next;
    }
    x
}

/// `(g(rho), h(rho))` sharing one power.
#[inline]
fn g_and_h(t: u32, rho: f64) -> (f64, f64) {
    let p = one_minus_pow(rho, t - 2, t);
    let tp1 = f64::from(t + 1);
    (
        p * (1.0 - rho) * (1.0 - tp1 * rho),
        f64::from(t) * p * (tp1 * rho - 2.0),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Turan,
    Skew,
}

impl PointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PointKind::Turan => "turan",
            PointKind::Skew => "skew",
        }
    }
}

/// An interior critical point: `a` coordinates equal to `alpha`, `b` equal
/// to `beta`, all with `g = phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub kind: PointKind,
    pub a: u32,
    pub b: u32,
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
    pub value: f64,
    /// The root sat within [`COALESCENCE_GAP`] of `phi_min`; `value` then
    /// comes from the grid search.
    pub degenerate: bool,
}

impl CriticalPoint {
    pub fn profile(&self) -> DensityProfile {
        let mut rho = vec![self.alpha; self.a as usize];
        rho.extend(std::iter::repeat_n(self.beta, self.b as usize));
        DensityProfile { rho }
    }
}

/// A point of the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    rho: Vec<f64>,
}

impl DensityProfile {
    pub const SUM_TOLERANCE: f64 = 1e-12;

    pub fn new(rho: Vec<f64>) -> Result<Self> {
        ensure_param!(!rho.is_empty(), "empty profile");
        ensure_param!(rho.iter().all(|&x| x >= 0.0 && x.is_finite()), "negative coordinate");
        let sum: f64 = rho.iter().sum();
        ensure_param!((sum - 1.0).abs() <= Self::SUM_TOLERANCE, "coordinates sum to {sum}");
        Ok(Self { rho })
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn objective(&self, t: u32) -> f64 {
        self.rho.iter().map(|&x| f_raw(t, x)).sum()
    }

    /// `max_i |g(rho_i) - g(rho_0)|`; zero at a critical point.
    pub fn kkt_residual(&self, t: u32) -> f64 {
        let g0 = g_raw(t, self.rho[0]);
        self.rho
            .iter()
            .map(|&x| (g_raw(t, x) - g0).abs())
            .fold(0.0, f64::max)
    }

    /// Replace one zero coordinate and one positive coordinate `p` by two
    /// copies of `p / 2`. Strictly increases `F` for `t >= 1`.
    pub fn redistribute_boundary(&self) -> Option<Self> {
        let zero = self.rho.iter().position(|&x| x == 0.0)?;
        let (pos, &p) = self
            .rho
            .iter()
            .enumerate()
            .find(|&(_, &x)| x > 0.0)?;
        let mut rho = self.rho.clone();
        rho[zero] = p / 2.0;
        rho[pos] = p / 2.0;
        Some(Self { rho })
    }
}

/// Which `(r, t)` the optimum classification covers.
pub fn is_legal(r: u32, t: u32) -> bool {
    match r {
        0..=5 => false,
        6 => t >= 37,
        7 => t >= 5,
        8 => t >= 4,
        _ => t >= 3,
    }
}

/// `(1 + (1 + (r-3)/(r-1)) / (t-2))^(t-1) <= r - 1`, evaluated in `f64`.
pub fn monotone_inequality_holds(r: u32, t: u32) -> Result<bool> {
    ensure_param!(t >= 3, "inequality needs t >= 3, got {t}");
    ensure_param!(r >= 2, "inequality needs r >= 2, got {r}");
    let (rf, tf) = (f64::from(r), f64::from(t));
    let base = 1.0 + (1.0 + (rf - 3.0) / (rf - 1.0)) / (tf - 2.0);
    Ok(base.powi(t as i32 - 1) <= rf - 1.0)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolveFlags {
    /// `(r, t)` is outside the legal region.
    pub not_covered_by_theorem: bool,
    /// Skew and Turán values are within [`TIE_MARGIN`].
    pub near_tie: bool,
    /// The skew point came from a root next to `phi_min`.
    pub degenerate: bool,
    /// `L_{r-1,1} = 1` had more than two roots.
    pub extra_roots: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub params: OptParams,
    pub legal: bool,
    pub turan: CriticalPoint,
    pub skew: Option<CriticalPoint>,
    /// Roots of `L_{r-1,1} = 1`, largest first.
    pub roots: Vec<f64>,
    /// The same roots as `ln(-phi)`, exact even where `phi` underflows.
    pub log_roots: Vec<f64>,
    pub flags: SolveFlags,
}

impl Solution {
    /// Turán wins ties.
    pub fn winner(&self) -> &CriticalPoint {
        match &self.skew {
            Some(s) if s.value > self.turan.value => s,
            _ => &self.turan,
        }
    }

    /// `skew - turan`, if a skew point exists.
    pub fn margin(&self) -> Option<f64> {
        self.skew.map(|s| s.value - self.turan.value)
    }
}

/// Compare the Turán point with the `(r-1, 1)` skew point at the largest root.
pub fn solve(params: &OptParams) -> Result<Solution> {
    let (r, t) = (params.r, params.t);
    let legal = params.legal();
    let turan = params.turan_point();
    let log_roots = params.find_skew_roots_log(r - 1, 1)?;
    let roots: Vec<f64> = log_roots.iter().map(|psi| -psi.exp()).collect();
    let mut flags = SolveFlags {
        not_covered_by_theorem: !legal,
        extra_roots: roots.len() > 2,
        ..Default::default()
    };
    let skew = match log_roots.first() {
        None => None,
        Some(&psi) => {
            let mut point = params.skew_point_log(r - 1, 1, psi)?;
            if point.phi - params.phi_min < COALESCENCE_GAP {
                point.degenerate = true;
                point.value = oracle::grid_search_skew(r, t, FALLBACK_GRID_POINTS)?.value;
                flags.degenerate = true;
            }
            Some(point)
        }
    };
    if let Some(s) = &skew {
        flags.near_tie = (s.value - turan.value).abs() <= TIE_MARGIN;
    }
    Ok(Solution {
        params: *params,
        legal,
        turan,
        skew,
        roots,
        log_roots,
        flags,
    })
}

/// One row of a crossover scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub t: u32,
    pub winner: PointKind,
    pub turan_value: f64,
    pub skew: Option<CriticalPoint>,
    pub legal: bool,
    pub flags: SolveFlags,
}

/// Solve for every `t` in `t_lo..=t_hi`. Rows are in increasing `t`.
pub fn crossover_scan(r: u32, t_lo: u32, t_hi: u32) -> Result<Vec<ScanRow>> {
    ensure_param!(t_lo <= t_hi, "empty range {t_lo}..={t_hi}");
    (t_lo..=t_hi)
        .into_par_iter()
        .map(|t| {
            let sol = solve(&OptParams::new(r, t)?)?;
            Ok(ScanRow {
                t,
                winner: sol.winner().kind,
                turan_value: sol.turan.value,
                skew: sol.skew,
                legal: sol.legal,
                flags: sol.flags,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: u32, t: u32) -> OptParams {
        OptParams::new(r, t).unwrap()
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_rho(5, 0.0).unwrap(), 0.0);
        assert_eq!(f_rho(5, 1.0).unwrap(), 0.0);
        let v = f_rho(6, 1.0 / 7.0).unwrap();
        assert!((v - (6.0f64 / 7.0).powi(6) / 7.0).abs() < 1e-16);
        assert!((v - 0.056_652_78).abs() < 1e-8);
        assert!(f_rho(6, 1.5).is_err());
        assert!(f_rho(1, 0.5).is_err());
    }

    #[test]
    fn g_h_examples() {
        for t in 2..30 {
            assert_eq!(g_rho(t, 1.0 / f64::from(t + 1)).unwrap().abs(), 0.0);
            assert!(h_rho(t, 2.0 / f64::from(t + 1)).unwrap().abs() < 1e-15);
        }
        let g = g_rho(6, 2.0 / 7.0).unwrap();
        assert!((g + (5.0f64 / 7.0).powi(5)).abs() < 1e-15);
        assert!((g + 0.185_934_43).abs() < 1e-8);
        assert!(g_rho(6, -0.1).is_err());
    }

    #[test]
    fn derivative_family_matches_g_and_h() {
        for t in 2..12u32 {
            for i in 0..=20 {
                let rho = f64::from(i) / 20.0;
                assert!((f_deriv_k(t, 1, rho).unwrap() - g_rho(t, rho).unwrap()).abs() < 1e-14);
                assert!((f_deriv_k(t, 2, rho).unwrap() - h_rho(t, rho).unwrap()).abs() < 1e-12);
            }
        }
        assert!(f_deriv_k(4, 5, 0.5).is_err());
        assert!(f_deriv_k(4, 0, 0.5).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let step = 1e-5;
        for t in 3..9u32 {
            for k in 1..t {
                for i in 1..10 {
                    let rho = f64::from(i) / 10.0;
                    let lower = |x: f64| if k == 1 { f_rho(t, x).unwrap() } else { f_deriv_k(t, k - 1, x).unwrap() };
                    let fd = (lower(rho + step) - lower(rho - step)) / (2.0 * step);
                    let d = f_deriv_k(t, k, rho).unwrap();
                    assert!((fd - d).abs() <= 1e-5 * d.abs().max(1.0), "t={t} k={k} rho={rho}: {fd} vs {d}");
                }
            }
        }
    }

    #[test]
    fn log_pow_branch_agrees() {
        for &rho in &[0.0, 1e-4, 0.003, 0.2, 0.9, 1.0] {
            for e in [0u32, 1, 7, 499] {
                let a = one_minus_pow(rho, e, 10);
                let b = one_minus_pow(rho, e, 600);
                assert!((a - b).abs() <= 1e-13 * a.max(1e-300), "rho={rho} e={e}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn params_levels() {
        for t in 2..60 {
            let p = params(7, t);
            assert!(p.phi_min <= p.phi_star && p.phi_star <= 0.0);
        }
        assert!(OptParams::new(1, 5).is_err());
        assert!(OptParams::new(3, 1).is_err());
        assert!(OptParams::new(3, MAX_T + 1).is_err());
        assert!(OptParams::new(3, MAX_T).is_ok());
    }

    #[test]
    fn alpha_beta_examples() {
        for t in [2u32, 5, 13, 40] {
            let p = params(7, t);
            assert!((p.alpha_of_phi(0.0).unwrap() - 1.0 / f64::from(t + 1)).abs() < 1e-15);
            assert_eq!(p.beta_of_phi(0.0).unwrap(), 1.0);
            let near = p.phi_min + 1e-14;
            let mid = 2.0 / f64::from(t + 1);
            assert!((p.alpha_of_phi(near).unwrap() - mid).abs() < 1e-5);
            assert!((p.beta_of_phi(near).unwrap() - mid).abs() < 1e-5);
            assert!(p.alpha_of_phi(p.phi_min).is_err());
            assert!(p.alpha_of_phi(0.01).is_err());
        }
        let p = params(7, 6);
        let a = p.alpha_of_phi(-0.1).unwrap();
        let b = p.beta_of_phi(-0.1).unwrap();
        assert!((1.0 / 7.0..2.0 / 7.0).contains(&a));
        assert!(b > 2.0 / 7.0 && b <= 1.0);
        assert!((g_rho(6, a).unwrap() + 0.1).abs() < 1e-12);
        assert!((g_rho(6, b).unwrap() + 0.1).abs() < 1e-12);
    }

    #[test]
    fn l_and_f_at_zero() {
        let p = params(7, 9);
        let tp1 = 10.0;
        assert!((p.l_ab(4, 3, 0.0).unwrap() - (4.0 / tp1 + 3.0)).abs() < 1e-14);
        let f_al = f_rho(9, 1.0 / tp1).unwrap();
        assert!((p.f_ab(4, 3, 0.0).unwrap() - 4.0 * f_al).abs() < 1e-14);
        assert!(p.l_ab(4, 4, -0.1).is_err());
        assert!(p.l_ab(7, 0, -0.1).is_err());
    }

    #[test]
    fn f_derivative_identity() {
        // dF/dphi = phi dL/dphi via the quotient of central differences.
        for (r, t) in [(7, 13), (9, 5), (12, 30)] {
            let p = params(r, t);
            for k in 1..10 {
                let phi = p.phi_min * f64::from(k) / 10.0;
                let eps = 1e-5 * p.phi_min.abs();
                let df = p.f_ab(r - 1, 1, phi + eps).unwrap() - p.f_ab(r - 1, 1, phi - eps).unwrap();
                let dl = p.l_ab(r - 1, 1, phi + eps).unwrap() - p.l_ab(r - 1, 1, phi - eps).unwrap();
                assert!((df / dl - phi).abs() < 1e-6 * phi.abs().max(1e-3), "r={r} t={t} phi={phi}");
            }
        }
    }

    #[test]
    fn dl_matches_finite_differences() {
        for (r, t) in [(7, 13), (9, 3), (6, 40), (20, 8)] {
            let p = params(r, t);
            for k in 1..20 {
                let phi = p.phi_min * f64::from(k) / 20.0;
                let eps = 1e-6 * p.phi_min.abs();
                let fd = (p.l_ab(r - 1, 1, phi + eps).unwrap() - p.l_ab(r - 1, 1, phi - eps).unwrap())
                    / (2.0 * eps);
                let d = p.dl_dphi(r - 1, 1, phi).unwrap();
                assert!((fd - d).abs() <= 1e-5 * d.abs().max(1.0), "r={r} t={t} phi={phi}: {fd} vs {d}");
            }
            assert!(p.dl_dphi(r - 1, 1, 0.0).is_err());
            assert!(p.dl_dphi(r - 1, 1, p.phi_min).is_err());
        }
    }

    #[test]
    fn phi_zero_is_never_a_root() {
        for r in 2..10 {
            for t in [2u32, 5, 20] {
                let p = params(r, t);
                for a in 1..r {
                    assert!(p.l_ab(a, r - a, 0.0).unwrap() > 1.0);
                }
            }
        }
    }

    #[test]
    fn turan_examples() {
        assert!((params(2, 2).turan_point().value - 0.25).abs() < 1e-16);
        let v = params(7, 13).turan_point().value;
        assert!((v - (6.0f64 / 7.0).powi(13)).abs() < 1e-15);
        assert!((v - 0.134_80).abs() < 1e-5);
        for r in 2..10 {
            let p = params(r, 4).turan_point();
            assert_eq!((p.a, p.b), (r, 0));
            assert!((p.value - (1.0 - 1.0 / f64::from(r)).powi(4)).abs() < 1e-15);
        }
    }

    #[test]
    fn skew_wins_at_r7_t13() {
        let p = params(7, 13);
        assert!(!p.find_skew_roots(6, 1).unwrap().is_empty());
        let sol = solve(&p).unwrap();
        assert_eq!(sol.winner().kind, PointKind::Skew);
        assert!(sol.legal && !sol.flags.not_covered_by_theorem);
    }

    #[test]
    fn turan_wins_for_small_t_at_r7() {
        for t in 5..=10 {
            let sol = solve(&params(7, t)).unwrap();
            assert_eq!(sol.winner().kind, PointKind::Turan, "t = {t}");
            if let Some(m) = sol.margin() {
                assert!(m < 0.0);
            }
        }
    }

    #[test]
    fn r7_crossover_is_at_t11() {
        // Frozen from a 40-digit reference optimization of the (6, 1) family:
        // skew minus Turán is 0.0087793 at t = 11 and 0.019413 at t = 12.
        let s11 = solve(&params(7, 11)).unwrap();
        assert_eq!(s11.winner().kind, PointKind::Skew);
        assert!((s11.margin().unwrap() - 0.008_779_3).abs() < 1e-6);
        assert!((s11.winner().value - 0.192_257_815_287_587).abs() < 1e-12);
        let s12 = solve(&params(7, 12)).unwrap();
        assert_eq!(s12.winner().kind, PointKind::Skew);
        assert!((s12.margin().unwrap() - 0.019_413).abs() < 1e-6);
    }

    #[test]
    fn winner_dominates_turan() {
        for (r, t) in [(9, 3), (2, 2), (3, 7), (6, 40), (12, 25)] {
            let sol = solve(&params(r, t)).unwrap();
            assert!(sol.winner().value >= sol.turan.value);
            if sol.winner().kind == PointKind::Turan {
                assert_eq!(sol.winner().value, sol.turan.value);
            } else {
                assert!(sol.winner().value > sol.turan.value);
            }
        }
        let sol = solve(&params(9, 3)).unwrap();
        assert!(sol.winner().value >= (8.0f64 / 9.0).powi(3));
    }

    #[test]
    fn non_legal_pairs_are_flagged() {
        let sol = solve(&params(2, 2)).unwrap();
        assert!(!sol.legal && sol.flags.not_covered_by_theorem);
        assert!(!solve(&params(6, 36)).unwrap().legal);
    }

    #[test]
    fn legal_table() {
        assert!(is_legal(6, 37) && !is_legal(6, 36));
        assert!(is_legal(9, 3) && !is_legal(9, 2));
        assert!(!is_legal(5, 1000));
        assert!(is_legal(7, 5) && !is_legal(7, 4));
        assert!(is_legal(8, 4) && !is_legal(8, 3));
    }

    #[test]
    fn monotone_inequality_examples() {
        assert!(monotone_inequality_holds(9, 3).unwrap());
        assert!(!monotone_inequality_holds(6, 36).unwrap());
        assert!(monotone_inequality_holds(6, 37).unwrap());
        assert!(monotone_inequality_holds(6, 2).is_err());
        // Large-t limit exp(1 + (r-3)/(r-1)) <= r - 1 from r = 6 on.
        for r in 6..30u32 {
            let rf = f64::from(r);
            assert!((1.0 + (rf - 3.0) / (rf - 1.0)).exp() <= rf - 1.0);
            assert!(monotone_inequality_holds(r, 100_000).unwrap());
        }
        assert!((1.0 + 2.0 / 4.0f64).exp() > 4.0);
    }

    #[test]
    fn scan_rows_in_order() {
        let rows = crossover_scan(9, 3, 3).unwrap();
        assert_eq!(rows.len(), 1);
        let rows = crossover_scan(6, 30, 40).unwrap();
        assert_eq!(rows.iter().map(|r| r.t).collect::<Vec<_>>(), (30..=40).collect::<Vec<_>>());
        assert!(rows.iter().all(|r| r.legal == (r.t >= 37)));
        assert!(crossover_scan(7, 5, 4).is_err());
    }

    #[test]
    fn boundary_redistribution_improves() {
        let p = DensityProfile::new(vec![0.0, 0.25, 0.75]).unwrap();
        let q = p.redistribute_boundary().unwrap();
        assert_eq!(q.rho(), &[0.125, 0.125, 0.75]);
        for t in 1..10 {
            assert!(q.objective(t) > p.objective(t));
        }
        assert!(DensityProfile::new(vec![0.5, 0.5]).unwrap().redistribute_boundary().is_none());
        assert!(DensityProfile::new(vec![0.5, 0.6]).is_err());
        assert!(DensityProfile::new(vec![1.5, -0.5]).is_err());
    }

    #[test]
    fn skew_profile_is_critical() {
        let sol = solve(&params(7, 13)).unwrap();
        let s = sol.skew.unwrap();
        let prof = DensityProfile::new(s.profile().rho().to_vec()).unwrap();
        assert!(prof.kkt_residual(13) <= 1e-10);
        assert!((prof.objective(13) - s.value).abs() < 1e-14);
    }
}
