//! Special constants and functions behind the closed-form identities:
//! ζ(n) for integer n ≥ 2, the Euler constant γ, and the dilogarithm Li₂ on
//! [0, 1/2], plus a table of the derived constants used everywhere else.
//!
//! ζ and γ are computed by truncated series with Euler–Maclaurin tail
//! corrections, so arithmetic precision (not truncation) limits accuracy.
//! The Bernoulli numbers feeding those corrections are generated exactly as
//! rationals from the defining recurrence and cached.

use std::sync::Mutex;
use std::sync::OnceLock;

use rug::ops::Pow;
use rug::{Assign, Float};

use crate::numerics::{log2_const, pi_const, prec_bits, Int, Rat, Real, MIN_DIGITS};
use crate::{Error, Result};

/// Exact Bernoulli number B_m (B₁ = −1/2 convention).
///
/// Generated by the recurrence Σ_{j=0}^{m} C(m+1, j)·B_j = 0 and cached.
pub fn bernoulli(m: usize) -> Rat {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rat::from(1)]));
    let mut cache = cache.lock().expect("bernoulli cache poisoned");
    while cache.len() <= m {
        let k = cache.len();
        let mut acc = Rat::new();
        for (j, b) in cache.iter().enumerate() {
            let c = Int::from(k as u32 + 1).binomial(j as u32);
            acc += b.clone() * c;
        }
        acc /= -Rat::from(k as u32 + 1);
        cache.push(acc);
    }
    cache[m].clone()
}

/// ζ(n) for integer n ≥ 2 at `digits` decimal digits.
///
/// Truncated series over m ≤ N plus the Euler–Maclaurin tail
/// N^(1−n)/(n−1) − N^(−n)/2 + Σ_j B_{2j}/(2j)!·n(n+1)⋯(n+2j−2)·N^(−n−2j+1),
/// with the correction series cut once terms fall below the target or stop
/// shrinking (the series is asymptotic).
pub fn zeta_int(n: u32, digits: u32) -> Result<Real> {
    if n < 2 {
        return Err(Error::Domain(format!("zeta_int requires n >= 2, got {n}")));
    }
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    Ok(Real::from_float(zeta_em(n, digits, (digits as u64) + 10)).with_digits(digits))
}

/// Euler–Maclaurin evaluation with explicit cutoff, exposed for the
/// doubled-cutoff stability check.
pub(crate) fn zeta_em(n: u32, digits: u32, cutoff: u64) -> Float {
    let wp = prec_bits(digits + 10);
    let big_n = cutoff;

    let mut acc = Float::new(wp);
    let mut term = Float::new(wp);
    for m in 1..=big_n {
        term.assign(Int::from(m).pow(n));
        term.recip_mut();
        acc += &term;
    }

    let nf = Float::with_val(wp, big_n);
    // N^(1-n)/(n-1) - N^(-n)/2
    acc += Float::with_val(wp, (&nf).pow(1 - n as i32)) / (n - 1);
    acc -= Float::with_val(wp, (&nf).pow(-(n as i32))) / 2u32;

    let eps = Float::with_val(wp, 10).pow(-((digits as i32) + 8));
    let mut pochhammer = Int::from(1); // n(n+1)…(n+2j-2)
    let mut factorial = Int::from(1); // (2j)!
    let mut prev_mag = Float::with_val(wp, f64::INFINITY);
    for j in 1..=400u32 {
        let lo = 2 * j - 2; // extend (2j-2)! -> (2j)!
        for i in [lo + 1, lo + 2] {
            factorial *= i.max(1);
        }
        if j == 1 {
            pochhammer.assign(n);
        } else {
            pochhammer *= n + 2 * j - 3;
            pochhammer *= n + 2 * j - 2;
        }
        let b = bernoulli(2 * j as usize);
        let coeff = Rat::from((b.numer() * &pochhammer, b.denom() * &factorial));
        term.assign((&nf).pow(-(n as i32) - 2 * (j as i32) + 1));
        term *= Float::with_val(wp, &coeff);
        let mag = term.clone().abs();
        if mag > prev_mag {
            break; // asymptotic turning point
        }
        acc += &term;
        if mag < eps {
            break;
        }
        prev_mag = mag;
    }
    acc
}

/// The Euler constant γ at `digits` decimal digits, via
/// γ = H_N − log N − 1/(2N) + Σ_j B_{2j}/(2j)·N^(−2j) with exact H_N.
pub fn euler_gamma(digits: u32) -> Real {
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    let wp = prec_bits(digits + 10);
    // 2πN controls the best reachable accuracy (~e^(−2πN)); N = 64 covers
    // anything up to ~170 digits.
    let big_n: u32 = if digits <= 90 { 64 } else { digits * 2 };

    let mut h = Rat::new();
    for m in 1..=big_n {
        h += Rat::from((1u32, m));
    }
    let mut acc = Float::with_val(wp, &h);
    acc -= Float::with_val(wp, big_n).ln();
    acc -= Rat::from((1u32, 2 * big_n));

    let eps = Float::with_val(wp, 10).pow(-((digits as i32) + 8));
    let nf = Float::with_val(wp, big_n);
    let mut term = Float::new(wp);
    let mut prev_mag = Float::with_val(wp, f64::INFINITY);
    for j in 1..=400u32 {
        let coeff = bernoulli(2 * j as usize) / Rat::from(2 * j);
        term.assign((&nf).pow(-2 * (j as i32)));
        term *= Float::with_val(wp, &coeff);
        let mag = term.clone().abs();
        if mag > prev_mag {
            break;
        }
        acc += &term;
        if mag < eps {
            break;
        }
        prev_mag = mag;
    }
    Real::from_float(acc).with_digits(digits)
}

/// Li₂(x) = Σ_{l≥1} x^l/l² for x ∈ [0, 1/2]; no analytic continuation.
///
/// The series is truncated once the tail bound x^(L+1)/((1−x)(L+1)²) drops
/// below the target precision.
pub fn li2(x: &Real, digits: u32) -> Result<Real> {
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    let half = Real::from_ratio(1, 2, digits);
    if x < &Real::zero(digits) || x > &half {
        return Err(Error::Domain(format!(
            "li2 supports x in [0, 1/2], got {x}"
        )));
    }
    if x.is_zero() {
        return Ok(Real::zero(digits));
    }
    let wp = prec_bits(digits + 10);
    let xf = Float::with_val(wp, x.as_float());
    let one_minus_x = Float::with_val(wp, 1u32) - &xf;
    let eps = Float::with_val(wp, 10).pow(-((digits as i32) + 6));

    let mut acc = Float::new(wp);
    let mut xpow = Float::with_val(wp, 1u32);
    let mut l = 0u64;
    loop {
        l += 1;
        xpow *= &xf;
        acc += Float::with_val(wp, &xpow) / Float::with_val(wp, l).square();
        let tail = Float::with_val(wp, &xpow) * &xf
            / (Float::with_val(wp, &one_minus_x) * Float::with_val(wp, l + 1).square());
        if tail < eps {
            break;
        }
    }
    Ok(Real::from_float(acc).with_digits(digits))
}

/// The constants every identity in the crate references, all derived from
/// the π/log 2 oracles and the series implementations above — no literal
/// decimal constants.
#[derive(Clone, Debug)]
pub struct SpecialValueTable {
    pub zeta2: Real,
    pub zeta3: Real,
    pub gamma: Real,
    pub log2: Real,
    pub li2_half: Real,
    pub pi2_over_24: Real,
    pub pi2_over_4: Real,
    pub pi2_over_12: Real,
    pub digits: u32,
}

impl SpecialValueTable {
    pub fn new(digits: u32) -> SpecialValueTable {
        assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
        let pi2 = pi_const(digits).square();
        let pi2_over_24 = &pi2 / 24u32;
        let half = Real::from_ratio(1, 2, digits);
        SpecialValueTable {
            zeta2: zeta_int(2, digits).expect("n = 2 is in range"),
            zeta3: zeta_int(3, digits).expect("n = 3 is in range"),
            gamma: euler_gamma(digits),
            log2: log2_const(digits),
            li2_half: li2(&half, digits).expect("1/2 is in range"),
            pi2_over_4: &pi2_over_24 * 6u32,
            pi2_over_12: &pi2_over_24 * 2u32,
            pi2_over_24,
            digits,
        }
    }

    /// Absolute tolerance 10^(4−digits) used by the table's consistency
    /// invariants.
    pub fn consistency_tol(&self) -> Real {
        Real::pow10(self.digits as i32 - 4, self.digits).recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::DEFAULT_DIGITS;

    const GAMMA_PREFIX: &str = "0.57721566490153286060651209008240243";
    const ZETA3_PREFIX: &str = "1.20205690315959428539973816151144999";

    fn tol(digits: u32, off: i32) -> Real {
        Real::pow10(digits as i32 - off, digits).recip()
    }

    #[test]
    fn zeta_two_matches_closed_form() {
        let z = zeta_int(2, 16).unwrap();
        assert_eq!(z.to_decimal_string(), "1.644934066848226");
        let digits = DEFAULT_DIGITS;
        let z40 = zeta_int(2, digits).unwrap();
        let closed = pi_const(digits).square() / 6u32;
        assert!((&z40 - &closed).abs() < tol(digits, 4));
    }

    #[test]
    fn zeta_three_is_stable_under_doubled_cutoff() {
        let z = zeta_int(3, 16).unwrap();
        assert_eq!(z.to_decimal_string(), "1.202056903159594");
        let digits = DEFAULT_DIGITS;
        let a = Real::from_float(zeta_em(3, digits, 50)).with_digits(digits);
        let b = Real::from_float(zeta_em(3, digits, 100)).with_digits(digits);
        assert!((&a - &b).abs() < tol(digits, 2));
        assert!(a.to_decimal_string().starts_with(ZETA3_PREFIX));
    }

    #[test]
    fn zeta_matches_mpfr_oracle() {
        let digits = DEFAULT_DIGITS;
        for n in [2u32, 3, 4, 5, 7, 12] {
            let mine = zeta_int(n, digits).unwrap();
            let oracle = Real::from_float(Float::with_val(
                prec_bits(digits),
                Float::with_val(prec_bits(digits), n).zeta_ref(),
            ));
            assert!(
                (&mine - &oracle).abs() < tol(digits, 2),
                "zeta({n}) disagrees with oracle"
            );
        }
    }

    #[test]
    fn zeta_rejects_small_argument() {
        assert!(zeta_int(1, 16).is_err());
        assert!(zeta_int(0, 16).is_err());
    }

    #[test]
    fn gamma_matches_published_digits_and_oracle() {
        let g = euler_gamma(16);
        assert_eq!(g.to_decimal_string(), "0.5772156649015329");
        let digits = DEFAULT_DIGITS;
        let g40 = euler_gamma(digits);
        assert!(g40.to_decimal_string().starts_with(GAMMA_PREFIX));
        let oracle = Real::from_float(Float::with_val(
            prec_bits(digits),
            rug::float::Constant::Euler,
        ));
        assert!((&g40 - &oracle).abs() < tol(digits, 2));
    }

    #[test]
    fn gamma_defining_limit_converges_like_half_over_k() {
        let digits = 24;
        let k = 1_000_000u32;
        let wp = prec_bits(digits);
        let mut h = Float::new(wp);
        let mut r = Float::new(wp);
        for m in 1..=k {
            r.assign(1u32);
            r /= m;
            h += &r;
        }
        let h = Real::from_float(h);
        let gamma = euler_gamma(digits);

        let err_log_k = (&h - &Real::from_u64(k as u64, digits).ln() - &gamma).abs();
        assert!(err_log_k < Real::from_f64(1e-6, digits));
        // The error is Θ(1/(2k)): pin it inside [0.9, 1.1]·1/(2k).
        assert!(err_log_k.to_f64() > 0.9 / (2.0 * k as f64));
        assert!(err_log_k.to_f64() < 1.1 / (2.0 * k as f64));

        // Second defining form, log(k+1) instead of log k.
        let err_log_k1 = (&h - &Real::from_u64(k as u64 + 1, digits).ln() - &gamma).abs();
        assert!(err_log_k1 < Real::from_f64(1e-6, digits));
    }

    #[test]
    fn gamma_defining_sequence_is_increasing() {
        // H_{k+1} − log(k+2) > H_k − log(k+1) reduces, after exponentiating,
        // to e^(1/(k+1))·(k+1) > k+2, i.e. e^x > 1+x; check the computed
        // sequence on a doubling sample.
        let digits = 32;
        let mut prev = Real::from_u64(1, digits) - Real::from_u64(2, digits).ln();
        let mut h = Real::one(digits);
        let mut next_probe = 2u64;
        for k in 2..=10_000u64 {
            h = h + Real::from_ratio(1, k, digits);
            if k == next_probe {
                let cur = &h - &Real::from_u64(k + 1, digits).ln();
                assert!(cur > prev, "sequence not increasing at k = {k}");
                prev = cur;
                next_probe *= 2;
            }
        }
    }

    #[test]
    fn li2_agrees_with_series_oracle_and_mpfr() {
        let digits = DEFAULT_DIGITS;
        assert!(li2(&Real::zero(digits), digits).unwrap().is_zero());

        let quarter = Real::from_ratio(1, 4, digits);
        let mine = li2(&quarter, digits).unwrap();
        // Direct series oracle at a fixed higher cutoff.
        let wp = prec_bits(digits + 10);
        let x = Float::with_val(wp, 0.25f64);
        let mut acc = Float::new(wp);
        let mut xpow = Float::with_val(wp, 1u32);
        for l in 1..=200u32 {
            xpow *= &x;
            acc += Float::with_val(wp, &xpow) / Float::with_val(wp, l).square();
        }
        let oracle = Real::from_float(acc).with_digits(digits);
        assert!((&mine - &oracle).abs() < tol(digits, 2));

        let half = Real::from_ratio(1, 2, digits);
        let mine_half = li2(&half, digits).unwrap();
        assert!(mine_half
            .to_decimal_string()
            .starts_with("0.5822405264650125"));
        let mpfr = Real::from_float(Float::with_val(
            prec_bits(digits),
            Float::with_val(prec_bits(digits), 0.5f64).li2_ref(),
        ));
        assert!((&mine_half - &mpfr).abs() < tol(digits, 2));
    }

    #[test]
    fn li2_rejects_out_of_range() {
        let digits = 16;
        assert!(li2(&Real::from_f64(0.6, digits), digits).is_err());
        assert!(li2(&Real::from_f64(-0.1, digits), digits).is_err());
    }

    #[test]
    fn table_consistency_invariants() {
        let digits = DEFAULT_DIGITS;
        let t = SpecialValueTable::new(digits);
        let tol = t.consistency_tol();

        // π²/4 = 6·(π²/24) exactly at working precision.
        assert_eq!(t.pi2_over_4, &t.pi2_over_24 * 6u32);
        // π²/4 = (3/2)·ζ(2).
        let three_halves_zeta2 = &t.zeta2 * 3u32 / 2u32;
        assert!((&t.pi2_over_4 - &three_halves_zeta2).abs() < tol);
        // Li₂(1/2) = π²/12 − log²2/2.
        let closed = &t.pi2_over_12 - &(t.log2.square() / 2u32);
        assert!((&t.li2_half - &closed).abs() < tol);
        // Decomposition of the 2-D integral: ½(½log²2 + Li₂(1/2)) = π²/24.
        let sum = (&(t.log2.square() / 2u32) + &t.li2_half) / 2u32;
        assert!((&sum - &t.pi2_over_24).abs() < tol);
    }
}
