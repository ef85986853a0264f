//! Exact integer binomials.

/// `C(n, k)` in `u128`, or `None` on overflow. `C(n, k) = 0` for `k > n`.
pub fn binom(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) since acc = C(n, i).
        let num = u128::from(n - i);
        let den = u128::from(i + 1);
        let g = gcd(acc, den);
        let (acc_r, den_r) = (acc / g, den / g);
        acc = acc_r.checked_mul(num / den_r)?;
    }
    Some(acc)
}

/// Binomial for arguments known to be small enough never to overflow.
#[inline]
pub(crate) fn binom_small(n: usize, k: usize) -> u128 {
    binom(n as u64, k as u64).expect("binomial overflow for n <= 64")
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Row-cached `C(m, k)` for `m <= max_n` and fixed `k`.
#[derive(Debug, Clone)]
pub struct BinomRow {
    k: u64,
    values: Vec<u128>,
}

impl BinomRow {
    pub fn new(max_n: u64, k: u64) -> Option<Self> {
        let values = (0..=max_n).map(|m| binom(m, k)).collect::<Option<Vec<_>>>()?;
        Some(Self { k, values })
    }

    #[inline]
    pub fn get(&self, m: usize) -> u128 {
        self.values[m]
    }

    pub fn k(&self) -> u64 {
        self.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_rule() {
        for n in 1..80u64 {
            for k in 1..=n {
                assert_eq!(
                    binom(n, k).unwrap(),
                    binom(n - 1, k - 1).unwrap() + binom(n - 1, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn edge_values() {
        assert_eq!(binom(5, 7), Some(0));
        assert_eq!(binom(0, 0), Some(1));
        assert_eq!(binom(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binom(130, 65), Some(95_067_625_827_960_698_145_584_333_020_095_113_100));
        assert!(binom(200, 100).is_none());
    }
}
