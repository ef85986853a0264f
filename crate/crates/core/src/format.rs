//! Deterministic text output: `%.17g`-style floats and the scan CSV.

use std::fmt::Write as _;

use crate::graphon::ScanRow;

/// Shortest-trailing-zero rendering with 17 significant digits, like C's
/// `%.17g`: fixed notation for exponents in `-5..17`, scientific otherwise.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub const SCAN_HEADER: &str = "t,winner,turan_value,skew_alpha,skew_beta,skew_phi,skew_value,legal";

/// CSV with LF endings; skew columns are empty when there is no skew root.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{},{},{},", row.t, row.winner.as_str(), fmt_g17(row.turan_value));
        match &row.skew {
            Some(s) => {
                let _ = write!(
                    out,
                    "{},{},{},{},",
                    fmt_g17(s.alpha),
                    fmt_g17(s.beta),
                    fmt_g17(s.phi),
                    fmt_g17(s.value)
                );
            }
            None => out.push_str(",,,,"),
        }
        let _ = writeln!(out, "{}", row.legal);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::crossover_scan;

    #[test]
    fn g17_examples() {
        assert_eq!(fmt_g17(1.0), "1");
        assert_eq!(fmt_g17(0.1), "0.10000000000000001");
        assert_eq!(fmt_g17(0.25), "0.25");
        assert_eq!(fmt_g17(-2.5e-7), "-2.4999999999999999e-07");
        assert_eq!(fmt_g17(1e20), "1e+20");
        assert_eq!(fmt_g17(123456.0), "123456");
        assert_eq!(fmt_g17(0.0), "0");
    }

    #[test]
    fn g17_round_trips() {
        for &x in &[0.1348005719238555, 1.0 / 3.0, 2.0f64.sqrt() * 1e-9, 6.02e23, -0.000123] {
            assert_eq!(fmt_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_shape() {
        let csv = scan_csv(&crossover_scan(9, 3, 4).unwrap());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SCAN_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.split(',').count() == 8));
        assert!(lines[1].starts_with("3,"));
        assert!(!csv.contains('\r') && csv.ends_with('\n'));
    }
}
