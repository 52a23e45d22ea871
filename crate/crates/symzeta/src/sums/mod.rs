//! Finite and geometric-weight series: harmonic numbers, Euler–Maclaurin
//! power-sum bounds, the nested sums M(k), N₁(k), N₂(k), N₃(k), H(k), N(k),
//! the triple lattice sum S(k), the 2^(−q)-weighted double sums, and the
//! alternating double sum.

mod geometric;
mod nested;
mod power;

pub use geometric::{alternating_double_sum, geometric_double_sum, GeometricKind};
pub use nested::{
    h_decomposition_exact, nested_sum, nested_sum_exact, nested_sum_literal, triple_sum_s,
    triple_sum_s_brute, triple_sum_s_brute_exact, triple_sum_s_exact, NestedSumKind,
};
pub use power::{
    check_power_sum_bounds, power_sum, power_sum_suite, PowerSumBoundCheck, PowerSuiteOutcome,
};

use rug::{Assign, Float};

use crate::numerics::{prec_bits, Rat, Real, MIN_DIGITS};
use crate::{Error, Result};

/// Harmonic numbers H_1 … H_n at working precision, with an exact rational
/// prefix H_1 … H_min(n,200) for identity tests.
#[derive(Clone, Debug)]
pub struct HarmonicTable {
    pub limit: u64,
    pub values: Vec<Real>,
    pub exact_prefix: Vec<Rat>,
}

/// Length of the exact rational prefix kept by [`harmonic_table`].
pub const EXACT_PREFIX_LIMIT: u64 = 200;

/// Builds the harmonic table in O(n).
pub fn harmonic_table(n: u64, digits: u32) -> Result<HarmonicTable> {
    if n == 0 {
        return Err(Error::Domain("harmonic_table requires n >= 1".into()));
    }
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    let wp = prec_bits(digits);
    let mut values = Vec::with_capacity(n as usize);
    let mut h = Float::new(wp);
    let mut r = Float::new(wp);
    for m in 1..=n {
        r.assign(1u32);
        r /= Float::with_val(wp, m);
        h += &r;
        values.push(Real::from_float(h.clone()));
    }
    let prefix_len = n.min(EXACT_PREFIX_LIMIT);
    let mut exact_prefix = Vec::with_capacity(prefix_len as usize);
    let mut hq = Rat::new();
    for m in 1..=prefix_len {
        hq += Rat::from((1u64, m));
        exact_prefix.push(hq.clone());
    }
    Ok(HarmonicTable {
        limit: n,
        values,
        exact_prefix,
    })
}

/// H_k as a bare MPFR float; shared by the streaming kernels.
pub(crate) fn harmonic_float(k: u64, wp: u32) -> Float {
    let mut h = Float::new(wp);
    let mut r = Float::new(wp);
    for m in 1..=k {
        r.assign(1u32);
        r /= Float::with_val(wp, m);
        h += &r;
    }
    h
}

/// Exact H_k.
pub(crate) fn harmonic_exact(k: u64) -> Rat {
    let mut h = Rat::new();
    for m in 1..=k {
        h += Rat::from((1u64, m));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_table_basics() {
        let t = harmonic_table(10, 40).unwrap();
        assert_eq!(t.values.len(), 10);
        assert_eq!(t.exact_prefix.len(), 10);
        assert_eq!(t.exact_prefix[0], Rat::from(1));
        assert_eq!(t.exact_prefix[3], Rat::from((25, 12)));
        assert!(harmonic_table(0, 40).is_err());
    }

    #[test]
    fn harmonic_table_real_agrees_with_exact_prefix() {
        let digits = 40;
        let t = harmonic_table(250, digits).unwrap();
        assert_eq!(t.exact_prefix.len(), EXACT_PREFIX_LIMIT as usize);
        let tol = Real::pow10(digits as i32 - 4, digits).recip();
        for (i, exact) in t.exact_prefix.iter().enumerate() {
            let err = (&t.values[i] - &Real::from_rat(exact, digits)).abs();
            assert!(err < tol, "H_{} drifted", i + 1);
        }
        // Successive differences are 1/(j+1) exactly in the prefix.
        for j in 1..t.exact_prefix.len() {
            let diff = t.exact_prefix[j].clone() - &t.exact_prefix[j - 1];
            assert_eq!(diff, Rat::from((1u64, j as u64 + 1)));
        }
    }

    #[test]
    fn harmonic_at_one_million_prefix() {
        let digits = 24;
        let h = harmonic_float(1_000_000, prec_bits(digits));
        let h = Real::from_float(h).with_digits(digits);
        assert!(h.to_decimal_string().starts_with("14.39272672"));
    }
}
