//! JSON payloads. Field order is declaration order, so output is stable.

use serde::Serialize;
use turan_core::graphon::{CriticalPoint, Solution};

#[derive(Debug, Serialize)]
pub struct TuranValue {
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct SkewReport {
    pub a: u32,
    pub b: u32,
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
    pub value: f64,
    pub degenerate: bool,
}

impl From<&CriticalPoint> for SkewReport {
    fn from(p: &CriticalPoint) -> Self {
        Self {
            a: p.a,
            b: p.b,
            alpha: p.alpha,
            beta: p.beta,
            phi: p.phi,
            value: p.value,
            degenerate: p.degenerate,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub r: u32,
    pub t: u32,
    pub legal: bool,
    pub turan: TuranValue,
    pub skew: Option<SkewReport>,
    pub winner: &'static str,
    pub flags: Vec<&'static str>,
}

impl From<&Solution> for SolveReport {
    fn from(sol: &Solution) -> Self {
        let mut flags = Vec::new();
        if sol.flags.not_covered_by_theorem {
            flags.push("not_covered_by_theorem");
        }
        if sol.flags.near_tie {
            flags.push("near_tie");
        }
        if sol.flags.degenerate {
            flags.push("degenerate");
        }
        if sol.flags.extra_roots {
            flags.push("extra_roots");
        }
        Self {
            r: sol.params.r,
            t: sol.params.t,
            legal: sol.legal,
            turan: TuranValue {
                value: sol.turan.value,
            },
            skew: sol.skew.as_ref().map(SkewReport::from),
            winner: sol.winner().kind.as_str(),
            flags,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "bound", rename_all = "kebab-case")]
pub enum BoundReport {
    CliquesNoStar {
        n: u64,
        r: u64,
        t: u64,
        /// Exact rational, `"p"` or `"p/q"`.
        value: String,
    },
    StarsNoStar {
        n: u64,
        r: u64,
        t: u64,
        value: u128,
    },
    SupersatDelta {
        r: u32,
        t: u32,
        eps: f64,
        threshold: f64,
        delta: f64,
    },
    Theta {
        n: u64,
        kt: u128,
        t: u32,
        s: u32,
        value: f64,
    },
    StarStarSupersat {
        n: u64,
        r: u64,
        t: u64,
        eps: f64,
        value: f64,
    },
}
