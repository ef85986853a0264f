//! Binomial coefficients with a real upper argument.
//!
//! `f_s(x) = x(x-1)...(x-s+1) / s!` for `x >= s - 1` and `0` below the hinge
//! `s - 1`. On `[s - 1, inf)` the function is strictly increasing, so it has
//! an inverse there.

use crate::combin::binom;
use crate::error::{ensure_param, Error, Result};

const MAX_BISECTION_STEPS: usize = 200;

/// `f_s` for a fixed order `s >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenBinomial {
    s: u32,
}

impl GenBinomial {
    pub fn new(s: u32) -> Result<Self> {
        ensure_param!(s >= 1, "binomial order must be at least 1");
        Ok(Self { s })
    }

    pub fn order(self) -> u32 {
        self.s
    }

    /// Left end of the increasing branch, `s - 1`.
    pub fn hinge(self) -> f64 {
        f64::from(self.s - 1)
    }

    pub fn eval(self, x: f64) -> Result<f64> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("f_{}({x}) needs finite x >= 0", self.s)));
        }
        Ok(self.eval_unchecked(x))
    }

    /// Integer arguments up to 2^20 go through exact integer binomials so
    /// that `f_s(m)` is the correctly rounded `C(m, s)`.
    pub(crate) fn eval_unchecked(self, x: f64) -> f64 {
        if x < self.hinge() {
            return 0.0;
        }
        if x.fract() == 0.0 && x <= 1_048_576.0 {
            if let Some(c) = binom(x as u64, u64::from(self.s)) {
                return c as f64;
            }
        }
        (0..self.s).fold(1.0, |acc, i| acc * (x - f64::from(i)) / f64::from(i + 1))
    }

    /// First or second derivative, for `x > s - 1`.
    pub fn eval_deriv(self, x: f64, order: u8) -> Result<f64> {
        if !(x > self.hinge()) || !x.is_finite() {
            return Err(Error::Domain(format!(
                "derivative of f_{} at {x} needs x > {}",
                self.s,
                self.hinge()
            )));
        }
        match order {
            1 => Ok(self.first_deriv(x)),
            2 => Ok(self.second_deriv(x)),
            _ => Err(Error::InvalidParameter(format!("derivative order {order}"))),
        }
    }

    fn factorial(self) -> f64 {
        (1..=self.s).map(f64::from).product()
    }

    /// Product of `(x - j)` over `j in 0..s` skipping the indices in `skip`.
    fn partial_product(self, x: f64, skip: &[u32]) -> f64 {
        (0..self.s)
            .filter(|j| !skip.contains(j))
            .map(|j| x - f64::from(j))
            .product()
    }

    fn first_deriv(self, x: f64) -> f64 {
        let sum: f64 = (0..self.s).map(|i| self.partial_product(x, &[i])).sum();
        sum / self.factorial()
    }

    fn second_deriv(self, x: f64) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.s {
            for j in (i + 1)..self.s {
                sum += self.partial_product(x, &[i, j]);
            }
        }
        2.0 * sum / self.factorial()
    }

    /// The unique `x >= s - 1` with `f_s(x) = y`.
    ///
    /// Bisection: the derivative is small just above the hinge for large `s`,
    /// where Newton steps overshoot.
    pub fn inverse(self, y: f64) -> Result<f64> {
        if !(y >= 0.0) || !y.is_finite() {
            return Err(Error::Domain(format!("f_{}^-1({y}) needs finite y >= 0", self.s)));
        }
        let lo0 = self.hinge();
        if y == 0.0 {
            return Ok(lo0);
        }
        let mut hi = lo0.max(1.0) * 2.0;
        while self.eval_unchecked(hi) < y {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::Domain(format!("f_{}^-1({y}) overflows", self.s)));
            }
        }
        let mut lo = lo0;
        for _ in 0..MAX_BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval_unchecked(mid) < y {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-14 * hi.max(1.0) {
                break;
            }
        }
        // Prefer an endpoint that reproduces y exactly (integer round trips).
        Ok(if self.eval_unchecked(lo) == y { lo } else { hi })
    }
}

/// `f_outer(f_inner^{-1}(x))` for `1 <= inner < outer`. Convex on `[0, inf)`,
/// zero up to `C(outer - 1, inner)`.
pub fn compose(outer: u32, inner: u32, x: f64) -> Result<f64> {
    ensure_param!(
        inner >= 1 && inner < outer,
        "composition needs 1 <= inner < outer (inner = {inner}, outer = {outer})"
    );
    let u = GenBinomial::new(inner)?.inverse(x)?;
    GenBinomial::new(outer)?.eval(u)
}

/// The supersaturation composite `f_{r+1}(f_{t-1}^{-1}(x))`, defined for
/// `2 <= t <= r`. It vanishes exactly when `x <= C(r, t - 1)`.
pub fn composite(r: u32, t: u32, x: f64) -> Result<f64> {
    ensure_param!(t >= 2 && t <= r, "composite needs 2 <= t <= r (r = {r}, t = {t})");
    compose(r + 1, t - 1, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(s: u32) -> GenBinomial {
        GenBinomial::new(s).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1.0)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(f(2).eval(3.0).unwrap(), 3.0);
        assert_eq!(f(3).eval(1.5).unwrap(), 0.0);
        assert!((f(3).eval(2.5).unwrap() - 0.3125).abs() < 1e-15);
        assert_eq!(f(1).eval(0.0).unwrap(), 0.0);
        assert!(f(2).eval(-0.5).is_err());
        assert!(f(2).eval(f64::NAN).is_err());
        assert!(GenBinomial::new(0).is_err());
    }

    #[test]
    fn continuous_at_hinge() {
        for s in 1..12 {
            let h = f(s).hinge();
            assert_eq!(f(s).eval(h).unwrap(), 0.0);
            assert!(f(s).eval(h + 1e-9).unwrap() < 1e-8);
        }
    }

    #[test]
    fn derivative_examples() {
        assert!((f(2).eval_deriv(4.0, 1).unwrap() - 3.5).abs() < 1e-14);
        assert!((f(2).eval_deriv(4.0, 2).unwrap() - 1.0).abs() < 1e-14);
        assert!((f(3).eval_deriv(4.0, 1).unwrap() - 13.0 / 3.0).abs() < 1e-14);
        assert!(f(3).eval_deriv(2.0, 1).is_err());
        assert!(f(3).eval_deriv(5.0, 3).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert!(close(f(2).inverse(3.0).unwrap(), 3.0, 1e-12));
        assert_eq!(f(4).inverse(0.0).unwrap(), 3.0);
        assert!(close(f(3).inverse(10.0).unwrap(), 5.0, 1e-12));
        assert!(close(f(1).inverse(7.25).unwrap(), 7.25, 1e-13));
        assert!(f(3).inverse(-1.0).is_err());
    }

    #[test]
    fn composite_examples() {
        assert!(close(composite(2, 2, 3.0).unwrap(), 1.0, 1e-12));
        assert!(composite(5, 3, 10.0).unwrap().abs() < 1e-12);
        assert!(close(composite(5, 3, 21.0).unwrap(), 7.0, 1e-11));
        assert!(composite(2, 3, 1.0).is_err());
        assert!(composite(3, 1, 1.0).is_err());
        assert!(compose(3, 3, 1.0).is_err());
    }

    #[test]
    fn composite_vanishes_up_to_its_hinge() {
        for r in 2..8u32 {
            for t in 2..=r {
                let edge = binom(u64::from(r), u64::from(t - 1)).unwrap() as f64;
                assert!(composite(r, t, edge * 0.999).unwrap() == 0.0);
                assert!(composite(r, t, edge * 1.01).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn integer_agreement_is_exact() {
        for s in 1..=30u32 {
            for m in 0..=60u64 {
                let exact = binom(m, u64::from(s)).unwrap();
                assert_eq!(f(s).eval(m as f64).unwrap(), exact as f64, "C({m}, {s})");
            }
        }
    }

    #[test]
    fn derivative_matches_central_differences() {
        let step = 1e-6;
        for s in 1..=10u32 {
            let fs = f(s);
            let mut x = fs.hinge() + 0.1;
            while x <= f64::from(s) + 20.0 {
                let fd = (fs.eval(x + step).unwrap() - fs.eval(x - step).unwrap()) / (2.0 * step);
                let d = fs.eval_deriv(x, 1).unwrap();
                assert!((fd - d).abs() <= 1e-5 * d.abs().max(1.0), "s={s} x={x} fd={fd} d={d}");
                let fd2 = (fs.eval_deriv(x + step, 1).unwrap() - fs.eval_deriv(x - step, 1).unwrap())
                    / (2.0 * step);
                let d2 = fs.eval_deriv(x, 2).unwrap();
                assert!((fd2 - d2).abs() <= 1e-5 * d2.abs().max(1.0), "s={s} x={x}");
                x += 0.37;
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip(s in 1u32..12, dx in 0.0f64..200.0) {
            let fs = f(s);
            let x = fs.hinge() + dx;
            let back = fs.inverse(fs.eval(x).unwrap()).unwrap();
            prop_assert!(close(back, x, 1e-10), "s={} x={} back={}", s, x, back);
        }

        #[test]
        fn monotone(s in 1u32..12, a in 0.0f64..100.0, b in 0.0f64..100.0) {
            let fs = f(s);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(fs.eval(lo).unwrap() <= fs.eval(hi).unwrap());
            if lo >= fs.hinge() && hi - lo > 1e-9 * hi.max(1.0) {
                prop_assert!(fs.eval(lo).unwrap() < fs.eval(hi).unwrap());
            }
        }
    }
}
