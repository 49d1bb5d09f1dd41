//! Post-processing of linear complexity profiles.
//!
//! Profiles are `L(1..=N)` slices (index `n - 1` holds `L(n)`).

use std::cmp::Ordering;
use std::fmt;

use crate::bdm::expected_complexity;
use crate::error::{Error, Result};
use crate::rational::{ceil_i64, int, ratio, Rational};
use crate::regions::near_region;

/// `d(n) = L(n) - ceil(nM/(M+1))`.
pub fn deviation_profile(profile: &[usize], m: usize) -> Vec<i64> {
    profile
        .iter()
        .enumerate()
        .map(|(i, &l)| l as i64 - expected_complexity(i as i64 + 1, m as i64))
        .collect()
}

fn cmp_ratio(a: (usize, usize), b: (usize, usize)) -> Ordering {
    (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128))
}

/// Exact min and max of `L(n)/n` for `n` in `start..=end` (1-based).
pub fn window_extrema(profile: &[usize], start: usize, end: usize) -> Result<(Rational, Rational)> {
    let start = start.max(1);
    if start > end || end > profile.len() {
        return Err(Error::invalid(format!("empty or out-of-range window {start}..={end}")));
    }
    let points = (start..=end).map(|n| (profile[n - 1], n));
    let lo = points.clone().min_by(|&a, &b| cmp_ratio(a, b)).unwrap();
    let hi = points.max_by(|&a, &b| cmp_ratio(a, b)).unwrap();
    Ok((ratio(lo.0 as i64, lo.1 as i64), ratio(hi.0 as i64, hi.1 as i64)))
}

/// First position of the trailing window covering `tail_fraction` of `n`.
pub fn tail_start(n: usize, tail_fraction: &Rational) -> usize {
    let start = (int(1) - tail_fraction) * int(n as i64);
    (ceil_i64(&start).max(1)) as usize
}

/// `(I_hat, S_hat)`: min and max of `L(n)/n` over `n` in
/// `[ceil((1 - tail_fraction) N), N]`.
pub fn tail_extrema(profile: &[usize], tail_fraction: &Rational) -> Result<(Rational, Rational)> {
    if *tail_fraction <= int(0) || *tail_fraction > int(1) {
        return Err(Error::invalid("tail fraction must lie in (0, 1]"));
    }
    let n = profile.len();
    if n == 0 {
        return Err(Error::invalid("empty profile"));
    }
    window_extrema(profile, tail_start(n, tail_fraction), n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub n: usize,
    pub m: usize,
    /// First `n` with `L(n) > n`.
    pub exceeds_length_at: Option<usize>,
    /// First `n` with `L(n) < L(n-1)`.
    pub decreases_at: Option<usize>,
    pub tail_fraction: Rational,
    pub i_hat: Rational,
    pub s_hat: Rational,
    pub slack: Rational,
    /// Active counts `K <= M` whose region contains `(I_hat, S_hat)` up to `slack`.
    pub region_ks: Vec<usize>,
}

impl AuditReport {
    pub fn bounds_ok(&self) -> bool {
        self.exceeds_length_at.is_none()
    }

    pub fn monotone(&self) -> bool {
        self.decreases_at.is_none()
    }

    pub fn in_region(&self) -> bool {
        !self.region_ks.is_empty()
    }
}

/// `key=value` lines.
impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<usize>| v.map_or_else(|| "none".to_string(), |n| n.to_string());
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "M={}", self.m)?;
        writeln!(f, "bounds_ok={}", self.bounds_ok())?;
        writeln!(f, "exceeds_length_at={}", opt(self.exceeds_length_at))?;
        writeln!(f, "monotone={}", self.monotone())?;
        writeln!(f, "decreases_at={}", opt(self.decreases_at))?;
        writeln!(f, "tail_fraction={}", self.tail_fraction)?;
        writeln!(f, "I_hat={}", self.i_hat)?;
        writeln!(f, "S_hat={}", self.s_hat)?;
        writeln!(f, "slack={}", self.slack)?;
        writeln!(f, "in_region={}", self.in_region())?;
        let ks: Vec<String> = self.region_ks.iter().map(|k| k.to_string()).collect();
        writeln!(f, "region_K={}", if ks.is_empty() { "none".to_string() } else { ks.join(",") })
    }
}

/// Checks `L(n) <= n` and monotonicity everywhere, and locates the tail
/// extrema relative to the admissible region.
pub fn audit_bounds(profile: &[usize], m: usize, tail_fraction: &Rational, slack: &Rational) -> Result<AuditReport> {
    let exceeds_length_at = profile.iter().enumerate().find(|(i, &l)| l > i + 1).map(|(i, _)| i + 1);
    let decreases_at = profile.windows(2).position(|w| w[1] < w[0]).map(|i| i + 2);
    let (i_hat, s_hat) = tail_extrema(profile, tail_fraction)?;
    let region_ks = (0..=m).filter(|&k| near_region(&i_hat, &s_hat, k, slack)).collect();
    Ok(AuditReport {
        n: profile.len(),
        m,
        exceeds_length_at,
        decreases_at,
        tail_fraction: tail_fraction.clone(),
        i_hat,
        s_hat,
        slack: slack.clone(),
        region_ks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn deviation_examples() {
        let avg: Vec<usize> = (1..=12).map(|n| expected_complexity(n, 2) as usize).collect();
        assert!(deviation_profile(&avg, 2).iter().all(|&d| d == 0));
        assert_eq!(deviation_profile(&[1, 2, 2], 2)[2], 0);
        let zero = vec![0; 6];
        assert_eq!(deviation_profile(&zero, 1), vec![-1, -1, -2, -2, -3, -3]);
    }

    #[test]
    fn tail_of_the_average_profile() {
        let n = 3000;
        let avg: Vec<usize> = (1..=n).map(|t| expected_complexity(t as i64, 2) as usize).collect();
        let (lo, hi) = tail_extrema(&avg, &ratio(1, 2)).unwrap();
        let target = ratio(2, 3);
        // ceil(2n/3) - 2n/3 <= 2/3 and n >= N/2 in the window.
        let tol = ratio(4, 3 * n as i64);
        assert!((&lo - &target).abs() <= tol && (&hi - &target).abs() <= tol);
    }

    #[test]
    fn tail_of_zero_profile_and_errors() {
        assert_eq!(tail_extrema(&[0; 10], &ratio(1, 2)).unwrap(), (int(0), int(0)));
        assert!(tail_extrema(&[0; 10], &int(0)).is_err());
        assert!(tail_extrema(&[], &int(1)).is_err());
        assert!(tail_extrema(&[0; 10], &ratio(3, 2)).is_err());
    }

    #[test]
    fn audit_flags_malformed_profiles() {
        let r = audit_bounds(&[1, 2, 1, 3], 1, &int(1), &ratio(1, 100)).unwrap();
        assert_eq!(r.decreases_at, Some(3));
        assert!(!r.monotone());
        let r = audit_bounds(&[2, 2], 1, &int(1), &ratio(1, 100)).unwrap();
        assert_eq!(r.exceeds_length_at, Some(1));
        let text = r.to_string();
        assert!(text.contains("bounds_ok=false\n"));
        assert!(text.contains("exceeds_length_at=1\n"));
    }

    use num::Signed;

    proptest! {
        #[test]
        fn shrinking_the_tail_tightens(steps in prop::collection::vec(0usize..2, 1..300), a in 1i64..=20, b in 1i64..=20) {
            let mut l = 0;
            let profile: Vec<usize> = steps.iter().enumerate().map(|(i, &s)| { l = (l + s).min(i + 1); l }).collect();
            let (small, large) = (ratio(a.min(b), 20), ratio(a.max(b), 20));
            let (lo_s, hi_s) = tail_extrema(&profile, &small).unwrap();
            let (lo_l, hi_l) = tail_extrema(&profile, &large).unwrap();
            prop_assert!(lo_l <= lo_s && hi_s <= hi_l);
        }
    }
}
