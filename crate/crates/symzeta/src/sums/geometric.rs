//! Geometric-weight double sums over q₁ < q₂ with weight 2^(−q₂), and the
//! alternating double sum Σ_{n₁<n₂} (−1)^(n₁+n₂)/(n₁n₂(n₁+n₂)).
//!
//! The geometric sums truncate at q₂ ≤ Q with the tail bound H_Q²·2^(1−Q)
//! (valid because the inner weights are dominated by H_{q₂}² and the
//! geometric factor halves every step); Q is chosen so the bound drops
//! below 10^(−digits).

use rug::{Assign, Float};

use crate::numerics::{prec_bits, Real, SumResult, MIN_DIGITS};

/// The four geometric-weight double sums:
///
/// * `Sigma1` — Σ_{1≤n<q₁<q₂} 1/(n·q₁·q₂·2^(q₂))       → log³2/6
/// * `Sigma2` — Σ_{q₁<q₂} 1/(q₁²·q₂·2^(q₂))             → −ζ(3)/4 + ζ(2)log2/2 − log³2/6
/// * `Sigma3` — Σ_{q₁<q₂} 1/(q₁·q₂²·2^(q₂))             → ζ(3)/8 − log³2/6
/// * `Triha`  — Σ_{q₁<q₂} (H_{q₂}/(q₁·q₂))·2^(−q₂)      → −ζ(3)/8 + ζ(2)log2/2
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometricKind {
    Sigma1,
    Sigma2,
    Sigma3,
    Triha,
}

impl GeometricKind {
    pub fn parse(s: &str) -> Option<GeometricKind> {
        match s {
            "sigma1" => Some(GeometricKind::Sigma1),
            "sigma2" => Some(GeometricKind::Sigma2),
            "sigma3" => Some(GeometricKind::Sigma3),
            "triha" => Some(GeometricKind::Triha),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeometricKind::Sigma1 => "sigma1",
            GeometricKind::Sigma2 => "sigma2",
            GeometricKind::Sigma3 => "sigma3",
            GeometricKind::Triha => "triha",
        }
    }
}

/// Cutoff with H_Q²·2^(1−Q) ≤ 10^(−digits).
fn cutoff_for(digits: u32) -> u64 {
    let target = -(digits as f64) * std::f64::consts::LN_10;
    let mut q = 16u64;
    loop {
        let h = (q as f64).ln() + 0.5772;
        let log_bound = 2.0 * h.ln() + ((1 - q as i64) as f64) * std::f64::consts::LN_2;
        if log_bound <= target {
            return q;
        }
        q += 8;
    }
}

/// Evaluates one geometric-weight double sum at `digits` decimal digits,
/// truncated with a sound tail bound.
pub fn geometric_double_sum(kind: GeometricKind, digits: u32) -> SumResult {
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    let wp = prec_bits(digits + 5);
    let q_max = cutoff_for(digits);

    let mut acc = Float::new(wp);
    let mut term = Float::new(wp);
    let mut r = Float::new(wp);
    // Prefix sums over q₁ < q₂, updated incrementally.
    let mut h = Float::new(wp); // Σ 1/q₁ = H_{q₂−1}
    let mut h2 = Float::new(wp); // Σ 1/q₁²
    let mut hh = Float::new(wp); // Σ H_{q₁−1}/q₁ (for Sigma1's inner double sum)
    let mut weight = Float::with_val(wp, 1u32); // 2^(−q₂+1) before the halving below
    let mut terms = 0u64;
    for q2 in 2..=q_max {
        // Move the prefixes from q₂−1 to q₂: add q₁ = q₂−1.
        let q1 = q2 - 1;
        r.assign(q1);
        r.recip_mut();
        hh += Float::with_val(wp, &h) * &r;
        h += &r;
        r.square_mut();
        h2 += &r;
        weight /= 2u32;
        if q2 == 2 {
            weight /= 2u32; // weight now 2^(−q₂)
        }

        match kind {
            GeometricKind::Sigma1 => {
                term.assign(&hh);
                term /= q2;
            }
            GeometricKind::Sigma2 => {
                term.assign(&h2);
                term /= q2;
            }
            GeometricKind::Sigma3 => {
                term.assign(&h);
                r.assign(q2);
                r.square_mut();
                term /= &r;
            }
            GeometricKind::Triha => {
                // H_{q₂} = H_{q₂−1} + 1/q₂
                term.assign(&h);
                r.assign(q2);
                r.recip_mut();
                term += &r;
                term *= &h;
                term /= q2;
            }
        }
        term *= &weight;
        acc += &term;
        terms += 1;
    }

    let h_q = Real::from_float(harmonic_approx(q_max, wp));
    let tail = &h_q.square() * &Real::from_float(Float::with_val(wp, 2u32).pow_int01(1 - q_max as i64));
    SumResult {
        value: Real::from_float(acc).with_digits(digits),
        terms_used: terms,
        tail_bound: Some(tail.with_digits(digits)),
    }
}

fn harmonic_approx(q: u64, wp: u32) -> Float {
    super::harmonic_float(q, wp)
}

trait PowSmall {
    fn pow_int01(self, e: i64) -> Float;
}

impl PowSmall for Float {
    fn pow_int01(self, e: i64) -> Float {
        use rug::ops::Pow;
        let prec = self.prec();
        Float::with_val(prec, (&self).pow(e as i32))
    }
}

/// Σ_{1≤n₁<n₂} (−1)^(n₁+n₂)/(n₁n₂(n₁+n₂)) = −ζ(3)/8, evaluated through the
/// reduction to T − ζ(3)/4 with T = Σ_{n₁<n₂} (−1)^(n₂)/(n₁n₂²)
/// = Σ_{n≥2} (−1)ⁿ·H_{n−1}/n².
///
/// T's alternating series is summed with consecutive terms paired, so every
/// paired term is positive and the alternating-series bound
/// a_(N+1) = H_N/(N+1)² is a sound tail estimate.
pub fn alternating_double_sum(digits: u32) -> SumResult {
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    alternating_double_sum_with_cutoff(digits, 2_000_000)
}

pub(crate) fn alternating_double_sum_with_cutoff(digits: u32, n_max: u64) -> SumResult {
    let wp = prec_bits(digits + 5);
    let zeta3 = crate::specials::zeta_int(3, digits + 5).expect("3 >= 2");

    let (t, tail, terms) = alternating_t(wp, n_max);
    let value = Real::from_float(t) - Real::from_float(zeta3.into_float()) / 4u32;
    SumResult {
        value: value.with_digits(digits),
        terms_used: terms,
        tail_bound: Some(Real::from_float(tail).with_digits(digits)),
    }
}

/// T = Σ_{n≥2} (−1)ⁿ·H_{n−1}/n² by consecutive-term pairing; returns
/// (value, tail bound, terms).
pub(crate) fn alternating_t(wp: u32, n_max: u64) -> (Float, Float, u64) {
    let mut acc = Float::new(wp);
    let mut h = Float::new(wp); // H_{n−1}
    let mut r = Float::new(wp);
    let mut a_even = Float::new(wp);
    let mut a_odd = Float::new(wp);
    let mut n = 1u64;
    let mut terms = 0u64;
    // Pair (n even, n+1 odd): both a_n computed from the running H walker.
    while n + 2 <= n_max {
        // even n
        n += 1;
        h += {
            r.assign(n - 1);
            r.recip_mut();
            &r
        };
        a_even.assign(&h);
        r.assign(n);
        r.square_mut();
        a_even /= &r;
        // odd n+1
        n += 1;
        h += {
            r.assign(n - 1);
            r.recip_mut();
            &r
        };
        a_odd.assign(&h);
        r.assign(n);
        r.square_mut();
        a_odd /= &r;

        a_even -= &a_odd;
        acc += &a_even;
        terms += 2;
    }
    // Alternating-series tail: first omitted magnitude H_n/(n+1)².
    let mut tail = h.clone();
    r.assign(n + 1);
    r.square_mut();
    tail /= &r;
    (acc, tail, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{log2_const, Rat, Real};
    use crate::specials::SpecialValueTable;

    fn closed_form(kind: GeometricKind, t: &SpecialValueTable) -> Real {
        let log2cubed_over6 = t.log2.pow_int(3) / 6u32;
        let zl = &t.zeta2 * &t.log2 / 2u32;
        match kind {
            GeometricKind::Sigma1 => log2cubed_over6,
            GeometricKind::Sigma2 => &zl - &(&t.zeta3 / 4u32) - &log2cubed_over6,
            GeometricKind::Sigma3 => &t.zeta3 / 8u32 - &log2cubed_over6,
            GeometricKind::Triha => &zl - &(&t.zeta3 / 8u32),
        }
    }

    #[test]
    fn geometric_sums_match_their_closed_forms() {
        let digits = 40;
        let t = SpecialValueTable::new(digits);
        let tol = Real::pow10(digits as i32 - 4, digits).recip();
        for kind in [
            GeometricKind::Sigma1,
            GeometricKind::Sigma2,
            GeometricKind::Sigma3,
            GeometricKind::Triha,
        ] {
            let got = geometric_double_sum(kind, digits);
            let want = closed_form(kind, &t);
            let err = (&got.value - &want).abs();
            assert!(err < tol, "{}: err = {err}", kind.name());
            assert!(got.tail_bound.unwrap() < tol);
        }
        // Decimal spot values derived from the oracles.
        assert!(geometric_double_sum(GeometricKind::Sigma1, digits)
            .value
            .to_decimal_string()
            .starts_with("0.0555041086"));
        assert!(geometric_double_sum(GeometricKind::Sigma3, digits)
            .value
            .to_decimal_string()
            .starts_with("0.0947530054"));
        assert!(geometric_double_sum(GeometricKind::Triha, digits)
            .value
            .to_decimal_string()
            .starts_with("0.419833"));
    }

    #[test]
    fn doubling_the_cutoff_stays_within_the_tail_bound() {
        // Run at two precisions: the higher one forces a larger cutoff; the
        // observed change must stay below the smaller run's tail bound.
        for kind in [
            GeometricKind::Sigma1,
            GeometricKind::Sigma2,
            GeometricKind::Sigma3,
            GeometricKind::Triha,
        ] {
            let lo = geometric_double_sum(kind, 20);
            let hi = geometric_double_sum(kind, 44);
            let change = (&lo.value.with_digits(44) - &hi.value).abs();
            assert!(
                change <= lo.tail_bound.unwrap().with_digits(44),
                "{} moved more than its tail bound",
                kind.name()
            );
        }
    }

    #[test]
    fn alternating_sum_spot_values() {
        let digits = 40;
        let got = alternating_double_sum_with_cutoff(digits, 400_000);
        let t = SpecialValueTable::new(digits);
        let want = -(&t.zeta3 / 8u32);
        let err = (&got.value - &want).abs();
        assert!(err < Real::from_f64(1e-10, digits), "err = {err}");
        assert!(got.value.to_decimal_string().starts_with("-0.15025711"));
        // The reported tail bound dominates the actual error.
        assert!(err <= got.tail_bound.clone().unwrap() * 2u32);

        // Intermediate series T → +ζ(3)/8.
        let (tv, _, _) = alternating_t(crate::numerics::prec_bits(digits), 400_000);
        let t_err = (&Real::from_float(tv) - &(&t.zeta3 / 8u32)).abs();
        assert!(t_err < Real::from_f64(1e-10, digits));
    }

    #[test]
    fn alternating_partial_sum_over_n2_at_most_two() {
        // Only (n₁,n₂) = (1,2) contributes: (−1)³/(1·2·3) = −1/6.
        let partial = Rat::from((-1, 6));
        let direct: Rat = {
            let mut acc = Rat::new();
            for n2 in 2..=2u64 {
                for n1 in 1..n2 {
                    let sign = if (n1 + n2) % 2 == 0 { 1i64 } else { -1 };
                    acc += Rat::from((sign, n1 * n2 * (n1 + n2)));
                }
            }
            acc
        };
        assert_eq!(direct, partial);
    }

    #[test]
    fn log2_constant_feeds_the_closed_forms() {
        // log³2/6 from the oracle, printed: 0.05550410866…
        let digits = 40;
        let v = log2_const(digits).pow_int(3) / 6u32;
        assert!(v.to_decimal_string().starts_with("0.05550410866"));
    }
}
