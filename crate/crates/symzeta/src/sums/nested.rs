//! Nested harmonic sums and the triple lattice sum
//!
//! ```text
//! S(k) = Σ_{1≤mᵢ≤k} 1/((m₁+m₂)(m₂+m₃)(m₃+m₁))
//! ```
//!
//! Each sum has two routes: an O(k) reduction through harmonic-number
//! walkers, and the literal definition (O(k²)–O(k³)) kept as an exact
//! rational oracle. The reductions:
//!
//! ```text
//! M(k)  = Σ_{m₂≤k} (H_{k+m₂} − H_k)/m₂
//! N₁(k) = Σ_{m₂<k} H_{m₂}²/m₂
//! N₂(k) = Σ_{m₂<k} H_{m₂}(H_{k+m₂} − H_k)/m₂
//! N₃(k) = Σ_{m₂<k} (H_{k+m₂} − H_k)²/m₂
//! H(k)  = Σ_{m₂≤k} (H_{k+m₂} − H_{m₂})²/m₂
//! N(k)  = N₁(k) − 2N₂(k) + N₃(k)
//! S(k)  = ½·H_k³ − (3/2)·H(k)        (exact identity)
//! ```

use rug::{Assign, Float};

use super::{harmonic_exact, harmonic_float};
use crate::numerics::{prec_bits, Rat, Real, SumResult, MIN_DIGITS};
use crate::{Error, Result};

/// Which nested sum to evaluate. `M` and `H` sum over m₂ ≤ k; `N1`, `N2`,
/// `N3` (and their combination `N`) over m₂ < k and need k ≥ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NestedSumKind {
    M,
    N1,
    N2,
    N3,
    H,
    N,
}

impl NestedSumKind {
    pub fn parse(s: &str) -> Option<NestedSumKind> {
        match s {
            "M" => Some(NestedSumKind::M),
            "N1" => Some(NestedSumKind::N1),
            "N2" => Some(NestedSumKind::N2),
            "N3" => Some(NestedSumKind::N3),
            "H" => Some(NestedSumKind::H),
            "N" => Some(NestedSumKind::N),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NestedSumKind::M => "M",
            NestedSumKind::N1 => "N1",
            NestedSumKind::N2 => "N2",
            NestedSumKind::N3 => "N3",
            NestedSumKind::H => "H",
            NestedSumKind::N => "N",
        }
    }

    fn check_domain(&self, k: u64) -> Result<()> {
        let min_k = match self {
            NestedSumKind::M | NestedSumKind::H => 1,
            _ => 2,
        };
        if k < min_k {
            return Err(Error::Domain(format!(
                "nested sum {} requires k >= {min_k}, got {k}",
                self.name()
            )));
        }
        Ok(())
    }
}

/// O(k) evaluation at working precision.
pub fn nested_sum(kind: NestedSumKind, k: u64, digits: u32) -> Result<SumResult> {
    kind.check_domain(k)?;
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    let wp = prec_bits(digits + 5);
    let h_k = harmonic_float(k, wp);
    let value = stream_nested(kind, k, wp, &h_k);
    Ok(SumResult::exact(
        Real::from_float(value).with_digits(digits),
        k,
    ))
}

/// Streaming kernel shared with the verification harness; `h_k` must be H_k
/// at precision `wp`.
pub(crate) fn stream_nested(kind: NestedSumKind, k: u64, wp: u32, h_k: &Float) -> Float {
    let mut acc = Float::new(wp);
    let mut acc2 = Float::new(wp); // N2 part when kind == N
    let mut acc3 = Float::new(wp); // N3 part when kind == N
    let mut lo = Float::new(wp); // H_{m2}
    let mut hi = h_k.clone(); // H_{k+m2}
    let mut r = Float::new(wp);
    let mut term = Float::new(wp);
    let upper = match kind {
        NestedSumKind::M | NestedSumKind::H => k,
        _ => k - 1,
    };
    for m2 in 1..=upper {
        r.assign(k + m2);
        r.recip_mut();
        hi += &r;
        r.assign(m2);
        r.recip_mut();
        lo += &r;
        match kind {
            NestedSumKind::M => {
                term.assign(&hi);
                term -= h_k;
            }
            NestedSumKind::N1 => {
                term.assign(&lo);
                term.square_mut();
            }
            NestedSumKind::N2 => {
                term.assign(&hi);
                term -= h_k;
                term *= &lo;
            }
            NestedSumKind::N3 => {
                term.assign(&hi);
                term -= h_k;
                term.square_mut();
            }
            NestedSumKind::H => {
                term.assign(&hi);
                term -= &lo;
                term.square_mut();
            }
            NestedSumKind::N => {
                // N1 − 2·N2 + N3 accumulated separately for readability.
                term.assign(&lo);
                term.square_mut();
                term /= m2;
                acc += &term;
                term.assign(&hi);
                term -= h_k;
                term *= &lo;
                term /= m2;
                acc2 += &term;
                term.assign(&hi);
                term -= h_k;
                term.square_mut();
                term /= m2;
                acc3 += &term;
                continue;
            }
        }
        term /= m2;
        acc += &term;
    }
    if kind == NestedSumKind::N {
        acc2 *= 2u32;
        acc -= &acc2;
        acc += &acc3;
    }
    acc
}

/// O(k) evaluation in exact rationals (practical for k up to a few hundred).
pub fn nested_sum_exact(kind: NestedSumKind, k: u64) -> Result<Rat> {
    kind.check_domain(k)?;
    let h_k = harmonic_exact(k);
    let mut acc = Rat::new();
    let mut acc2 = Rat::new();
    let mut acc3 = Rat::new();
    let mut lo = Rat::new();
    let mut hi = h_k.clone();
    let upper = match kind {
        NestedSumKind::M | NestedSumKind::H => k,
        _ => k - 1,
    };
    for m2 in 1..=upper {
        hi += Rat::from((1u64, k + m2));
        lo += Rat::from((1u64, m2));
        let term = match kind {
            NestedSumKind::M => hi.clone() - &h_k,
            NestedSumKind::N1 => lo.clone() * &lo,
            NestedSumKind::N2 => (hi.clone() - &h_k) * &lo,
            NestedSumKind::N3 => {
                let d = hi.clone() - &h_k;
                d.clone() * d
            }
            NestedSumKind::H => {
                let d = hi.clone() - &lo;
                d.clone() * d
            }
            NestedSumKind::N => {
                acc += lo.clone() * &lo / Rat::from(m2);
                acc2 += (hi.clone() - &h_k) * &lo / Rat::from(m2);
                let d = hi.clone() - &h_k;
                acc3 += d.clone() * d / Rat::from(m2);
                continue;
            }
        };
        acc += term / Rat::from(m2);
    }
    if kind == NestedSumKind::N {
        acc -= acc2 * Rat::from(2);
        acc += acc3;
    }
    Ok(acc)
}

/// Literal-definition oracle in exact rationals: follows each index set as
/// written, O(k²) for M and O(k³) for the rest. Independent of the
/// reductions above.
pub fn nested_sum_literal(kind: NestedSumKind, k: u64) -> Result<Rat> {
    kind.check_domain(k)?;
    let mut acc = Rat::new();
    match kind {
        NestedSumKind::M => {
            for m2 in 1..=k {
                for m3 in 1..=m2 {
                    acc += Rat::from((1u64, m2 * (k + m3)));
                }
            }
        }
        NestedSumKind::N1 => {
            for m2 in 1..k {
                for m3 in 1..=m2 {
                    for m4 in 1..=m2 {
                        acc += Rat::from((1u64, m2 * m3 * m4));
                    }
                }
            }
        }
        NestedSumKind::N2 => {
            for m2 in 1..k {
                for m3 in 1..=m2 {
                    for m4 in 1..=m2 {
                        acc += Rat::from((1u64, m2 * (k + m3) * m4));
                    }
                }
            }
        }
        NestedSumKind::N3 => {
            for m2 in 1..k {
                for m3 in 1..=m2 {
                    for m4 in 1..=m2 {
                        acc += Rat::from((1u64, m2 * (k + m3) * (k + m4)));
                    }
                }
            }
        }
        NestedSumKind::H => {
            for m1 in 1..=k {
                for m2 in 1..=k {
                    for m3 in 1..=k {
                        acc += Rat::from((1u64, m2 * (m1 + m2) * (m2 + m3)));
                    }
                }
            }
        }
        NestedSumKind::N => {
            let k2 = k * k;
            for m2 in 1..k {
                for m3 in 1..=m2 {
                    for m4 in 1..=m2 {
                        acc += Rat::from((k2, m2 * m3 * m4))
                            / Rat::from(((k + m3) * (k + m4), 1u64));
                    }
                }
            }
        }
    }
    Ok(acc)
}

/// Largest k accepted by the exact brute-force lattice sum.
pub const BRUTE_EXACT_LIMIT: u64 = 60;
/// Largest k accepted by the floating brute-force lattice sum.
pub const BRUTE_FLOAT_LIMIT: u64 = 200;

/// S(k) by the exact identity ½H_k³ − (3/2)H(k), at working precision.
pub fn triple_sum_s(k: u64, digits: u32) -> Result<SumResult> {
    if k < 1 {
        return Err(Error::Domain("triple sum requires k >= 1".into()));
    }
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    let wp = prec_bits(digits + 5);
    let h_k = harmonic_float(k, wp);
    let value = stream_triple_s(k, wp, &h_k);
    Ok(SumResult::exact(
        Real::from_float(value).with_digits(digits),
        k,
    ))
}

pub(crate) fn stream_triple_s(k: u64, wp: u32, h_k: &Float) -> Float {
    let h = stream_nested(NestedSumKind::H, k, wp, h_k);
    let mut cube = h_k.clone();
    cube.square_mut();
    cube *= h_k;
    cube /= 2u32;
    let mut out = h;
    out *= 3u32;
    out /= 2u32;
    let mut value = cube;
    value -= &out;
    value
}

/// S(k) by the exact identity, in exact rationals.
pub fn triple_sum_s_exact(k: u64) -> Result<Rat> {
    if k < 1 {
        return Err(Error::Domain("triple sum requires k >= 1".into()));
    }
    let h_k = harmonic_exact(k);
    let h = nested_sum_exact(NestedSumKind::H, k)?;
    let cube = h_k.clone() * &h_k * &h_k;
    Ok(cube / Rat::from(2) - h * Rat::from((3, 2)))
}

/// Literal O(k³) lattice sum in exact rationals, k ≤ 60. Iterates unordered
/// triples with multiplicity; the summand is fully symmetric.
pub fn triple_sum_s_brute_exact(k: u64) -> Result<Rat> {
    if k < 1 || k > BRUTE_EXACT_LIMIT {
        return Err(Error::Domain(format!(
            "exact brute force supports 1 <= k <= {BRUTE_EXACT_LIMIT}, got {k}"
        )));
    }
    let mut acc = Rat::new();
    for a in 1..=k {
        for b in a..=k {
            for c in b..=k {
                let mult: u64 = if a == c {
                    1
                } else if a == b || b == c {
                    3
                } else {
                    6
                };
                let den = (a + b) * (b + c) * (c + a);
                acc += Rat::from((mult, den));
            }
        }
    }
    Ok(acc)
}

/// Literal lattice sum at working precision, k ≤ 200.
pub fn triple_sum_s_brute(k: u64, digits: u32) -> Result<SumResult> {
    if k < 1 || k > BRUTE_FLOAT_LIMIT {
        return Err(Error::Domain(format!(
            "brute force supports 1 <= k <= {BRUTE_FLOAT_LIMIT}, got {k}"
        )));
    }
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    let wp = prec_bits(digits + 5);
    let mut acc = Float::new(wp);
    let mut r = Float::new(wp);
    for a in 1..=k {
        for b in a..=k {
            for c in b..=k {
                let mult: u32 = if a == c {
                    1
                } else if a == b || b == c {
                    3
                } else {
                    6
                };
                r.assign((a + b) * (b + c) * (c + a));
                r.recip_mut();
                r *= mult;
                acc += &r;
            }
        }
    }
    Ok(SumResult::exact(
        Real::from_float(acc).with_digits(digits),
        k * k * k,
    ))
}

/// Exact check data for the expansion of H(k) in powers of the harmonic sum:
///
/// ```text
/// H(k) = H_k³ + 2H_k·Σ_{m₃≤m₂≤k} (1/m₂)(1/(k+m₃) − 1/m₃)
///             + Σ_{m₂≤k} (1/m₂)·(Σ_{m₃≤m₂} (1/(k+m₃) − 1/m₃))²
/// ```
///
/// Returns (literal H(k), right side), both exact.
pub fn h_decomposition_exact(k: u64) -> Result<(Rat, Rat)> {
    if k < 1 {
        return Err(Error::Domain("decomposition requires k >= 1".into()));
    }
    let lhs = nested_sum_literal(NestedSumKind::H, k)?;

    let h_k = harmonic_exact(k);
    let mut middle = Rat::new(); // Σ (1/m2)·inner
    let mut last = Rat::new(); // Σ (1/m2)·inner²
    let mut inner = Rat::new(); // Σ_{m3≤m2} (1/(k+m3) − 1/m3)
    for m2 in 1..=k {
        inner += Rat::from((1u64, k + m2));
        inner -= Rat::from((1u64, m2));
        middle += inner.clone() / Rat::from(m2);
        last += inner.clone() * &inner / Rat::from(m2);
    }
    let rhs = h_k.clone() * &h_k * &h_k + Rat::from(2) * &h_k * middle + last;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values_from_the_definitions() {
        assert_eq!(
            nested_sum_literal(NestedSumKind::M, 1).unwrap(),
            Rat::from((1, 2))
        );
        assert_eq!(
            nested_sum_literal(NestedSumKind::H, 1).unwrap(),
            Rat::from((1, 4))
        );
        assert_eq!(
            nested_sum_literal(NestedSumKind::H, 2).unwrap(),
            Rat::from((83, 96))
        );
        assert_eq!(nested_sum_literal(NestedSumKind::N1, 2).unwrap(), Rat::from(1));
        assert_eq!(triple_sum_s_brute_exact(1).unwrap(), Rat::from((1, 8)));
        assert_eq!(triple_sum_s_brute_exact(2).unwrap(), Rat::from((25, 64)));
    }

    #[test]
    fn reductions_match_literal_oracles_exactly() {
        for k in 1..=20u64 {
            for kind in [
                NestedSumKind::M,
                NestedSumKind::N1,
                NestedSumKind::N2,
                NestedSumKind::N3,
                NestedSumKind::H,
                NestedSumKind::N,
            ] {
                if k < 2 && !matches!(kind, NestedSumKind::M | NestedSumKind::H) {
                    continue;
                }
                let reduced = nested_sum_exact(kind, k).unwrap();
                let literal = nested_sum_literal(kind, k).unwrap();
                assert_eq!(reduced, literal, "kind {} at k = {k}", kind.name());
            }
        }
    }

    #[test]
    fn lattice_identity_matches_brute_force_exactly() {
        for k in 1..=25u64 {
            assert_eq!(
                triple_sum_s_exact(k).unwrap(),
                triple_sum_s_brute_exact(k).unwrap(),
                "S({k})"
            );
        }
    }

    #[test]
    fn identity_check_at_an_awkward_k() {
        // S(2) through the reduction: ½(3/2)³ − (3/2)(83/96) = 25/64.
        let s2 = triple_sum_s_exact(2).unwrap();
        assert_eq!(s2, Rat::from((25, 64)));
    }

    #[test]
    fn float_paths_agree_with_exact() {
        let digits = 40;
        let tol = Real::pow10(digits as i32 - 5, digits).recip();
        for k in [1u64, 2, 7, 17] {
            let exact = Real::from_rat(&triple_sum_s_exact(k).unwrap(), digits);
            let reduced = triple_sum_s(k, digits).unwrap().value;
            assert!((&reduced - &exact).abs() < tol, "reduced S({k})");
            let brute = triple_sum_s_brute(k, digits).unwrap().value;
            assert!((&brute - &exact).abs() < tol, "brute S({k})");
        }
        for kind in [
            NestedSumKind::M,
            NestedSumKind::N1,
            NestedSumKind::N2,
            NestedSumKind::N3,
            NestedSumKind::H,
            NestedSumKind::N,
        ] {
            let k = 17;
            let exact = Real::from_rat(&nested_sum_exact(kind, k).unwrap(), digits);
            let float = nested_sum(kind, k, digits).unwrap().value;
            assert!((&float - &exact).abs() < tol, "kind {}", kind.name());
        }
    }

    #[test]
    fn h_decomposition_holds_exactly() {
        for k in 1..=12u64 {
            let (lhs, rhs) = h_decomposition_exact(k).unwrap();
            assert_eq!(lhs, rhs, "decomposition at k = {k}");
        }
    }

    #[test]
    fn domains_are_enforced() {
        assert!(nested_sum_literal(NestedSumKind::N1, 1).is_err());
        assert!(nested_sum(NestedSumKind::N2, 1, 40).is_err());
        assert!(nested_sum(NestedSumKind::M, 0, 40).is_err());
        assert!(triple_sum_s_brute_exact(61).is_err());
        assert!(triple_sum_s_brute(201, 40).is_err());
    }
}
