//! Exact power sums Σ m^l and the Euler–Maclaurin bound checks around them.
//!
//! Everything here is integer/rational arithmetic: each inequality is
//! multiplied through by its denominators so a pass/fail decision is exact,
//! never a float comparison. The admissible constant is M = 2, derived from
//! sup|B₁(x−[x])| = 1/2 and sup|B₂(x−[x])| = 1/6.

use rug::ops::Pow;
use rug::{Assign, Complete};

use crate::numerics::{Int, Rat, Real};

/// Exact Σ_{m=1..n} m^l.
pub fn power_sum(l: u32, n: u64) -> Int {
    let mut acc = Int::new();
    let mut t = Int::new();
    for m in 1..=n {
        t.assign(m);
        t.pow_assign(l);
        acc += &t;
    }
    acc
}

trait PowAssign {
    fn pow_assign(&mut self, l: u32);
}

impl PowAssign for Int {
    fn pow_assign(&mut self, l: u32) {
        let v = self.clone().pow(l);
        *self = v;
    }
}

/// One exact inequality: |lhs_deviation| ≤ bound, with the slack bound − |dev|.
#[derive(Clone, Debug)]
pub struct IneqCheck {
    pub deviation: Rat,
    pub bound: Rat,
    pub slack: Rat,
    pub pass: bool,
}

fn ineq(deviation: Rat, bound: Rat) -> IneqCheck {
    let slack = bound.clone() - deviation.clone().abs();
    let pass = slack >= 0;
    IneqCheck {
        deviation,
        bound,
        slack,
        pass,
    }
}

/// The three power-sum inequalities at one (l, n), checked exactly:
///
/// 1. |Σ_{m≤n} m^l − n^(l+1)/(l+1)| ≤ M·n^l
/// 2. |Σ_{m<n} m^l − n^(l+1)/(l+1)| ≤ M·n^l
/// 3. |Σ_{m≤n} m^l − n^(l+1)/(l+1) − n^l/2| ≤ M·l·n^(l−1)
///    (equal, as an identity, to the m<n form with +n^l/2)
#[derive(Clone, Debug)]
pub struct PowerSumBoundCheck {
    pub l: u32,
    pub n: u64,
    pub m_bound: Rat,
    pub inclusive: IneqCheck,
    pub exclusive: IneqCheck,
    pub centered: IneqCheck,
    pub pass: bool,
}

pub fn check_power_sum_bounds(l: u32, n: u64, m_bound: &Real) -> PowerSumBoundCheck {
    assert!(l >= 1 && n >= 1, "check_power_sum_bounds needs l, n >= 1");
    let m = m_bound
        .as_float()
        .to_rational()
        .expect("finite bound constant");
    let s_n = power_sum(l, n);
    let n_l = Int::from(n).pow(l);
    let n_l1 = Int::from(n).pow(l + 1);
    let target = Rat::from((n_l1, Int::from(l + 1)));

    let inclusive = ineq(
        Rat::from(&s_n) - &target,
        m.clone() * Rat::from(&n_l),
    );
    let exclusive = ineq(
        Rat::from((&s_n - &n_l).complete()) - &target,
        m.clone() * Rat::from(&n_l),
    );
    let centered_dev = Rat::from(&s_n) - &target - Rat::from((&n_l, Int::from(2)));
    // Identity: the m<n form with +n^l/2 is the same quantity.
    let centered_alt =
        Rat::from((&s_n - &n_l).complete()) - &target + Rat::from((&n_l, Int::from(2)));
    debug_assert_eq!(centered_dev, centered_alt);
    let centered = ineq(
        centered_dev,
        m.clone() * Rat::from(l) * Rat::from(Int::from(n).pow(l.saturating_sub(1))),
    );

    let pass = inclusive.pass && exclusive.pass && centered.pass;
    PowerSumBoundCheck {
        l,
        n,
        m_bound: m,
        inclusive,
        exclusive,
        centered,
        pass,
    }
}

/// Outcome of the full grid: the three base inequalities on
/// (l ≤ l_max, n ≤ n_max) and the derived bounds (difference-quotient sums,
/// the bilinear form, the double sum, and the two-sided partial-range bound)
/// on (l, p, q ≤ cons_max, k ≤ k_max), all with the same M.
#[derive(Clone, Debug)]
pub struct PowerSuiteOutcome {
    pub m_bound: u32,
    pub l_max: u32,
    pub n_max: u64,
    pub cons_max: u32,
    pub k_max: u64,
    pub checks_run: u64,
    pub violations: u64,
}

impl PowerSuiteOutcome {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

/// Prefix power sums P_l(n) for l ≤ l_max, n ≤ n_max; P[l][n], P[l][0] = 0.
fn prefix_power_table(l_max: u32, n_max: u64) -> Vec<Vec<Int>> {
    let mut table = Vec::with_capacity(l_max as usize + 1);
    for l in 0..=l_max {
        let mut row = Vec::with_capacity(n_max as usize + 1);
        row.push(Int::new());
        let mut acc = Int::new();
        let mut t = Int::new();
        for m in 1..=n_max {
            t.assign(m);
            t.pow_assign(l);
            acc += &t;
            row.push(acc.clone());
        }
        table.push(row);
    }
    table
}

fn harmonic_rationals(up_to: u32) -> Vec<Rat> {
    let mut hs = Vec::with_capacity(up_to as usize + 1);
    hs.push(Rat::new());
    let mut h = Rat::new();
    for m in 1..=up_to {
        h += Rat::from((1u32, m));
        hs.push(h.clone());
    }
    hs
}

/// Runs the whole exact inequality grid. All comparisons are
/// denominator-cleared integer comparisons.
pub fn power_sum_suite(
    l_max: u32,
    n_max: u64,
    cons_max: u32,
    k_max: u64,
    m_bound: u32,
) -> PowerSuiteOutcome {
    let mut checks_run = 0u64;
    let mut violations = 0u64;
    let m = Int::from(m_bound);

    let table_l_max = l_max.max(2 * cons_max);
    let table = prefix_power_table(table_l_max, n_max.max(k_max));
    let hs = harmonic_rationals(2 * cons_max + 2);

    // Base inequalities.
    for l in 1..=l_max {
        for n in 1..=n_max {
            let s_n = &table[l as usize][n as usize];
            let n_l = Int::from(n).pow(l);
            let n_l1 = Int::from(n).pow(l + 1);
            let l1 = Int::from(l + 1);

            // (l+1)·S_n − n^(l+1) vs (l+1)·M·n^l
            let dev1 = (s_n * &l1).complete() - &n_l1;
            let bound1 = (&l1 * &m).complete() * &n_l;
            // exclusive: subtract (l+1)·n^l from dev1
            let dev2 = dev1.clone() - (&l1 * &n_l).complete();
            // centered, cleared by 2(l+1): vs 2(l+1)·M·l·n^(l−1)
            let dev3 = dev1.clone() * Int::from(2) - (&l1 * &n_l).complete();
            let bound3 =
                Int::from(2) * &l1 * &m * Int::from(l) * Int::from(n).pow(l - 1);

            checks_run += 3;
            if dev1.clone().abs() > bound1 {
                violations += 1;
            }
            if dev2.abs() > bound1 {
                violations += 1;
            }
            if dev3.abs() > bound3 {
                violations += 1;
            }
        }
    }

    // Partial-range bound (both-ends form), for 1 ≤ m2 ≤ m3 < k:
    // |Σ_{m2≤m3<k} m3^l − (k^(l+1)/(l+1) − k^l/2 − m2^(l+1)/(l+1) + m2^l/2)|
    //   ≤ 2·M·l·k^(l−1), cleared by 2(l+1).
    for l in 1..=cons_max {
        let pl = &table[l as usize];
        let pl1 = &table[l as usize + 1];
        for k in 2..=k_max {
            let ku = k as usize;
            let k_l = Int::from(k).pow(l);
            let k_l1 = Int::from(k).pow(l + 1);
            let bound = Int::from(4) * Int::from(l + 1) * &m * Int::from(l)
                * Int::from(k).pow(l - 1);
            for m2 in 1..k {
                let m2u = m2 as usize;
                let range_sum = (&pl[ku - 1] - &pl[m2u - 1]).complete();
                let m2_l = (&pl[m2u] - &pl[m2u - 1]).complete();
                let m2_l1 = (&pl1[m2u] - &pl1[m2u - 1]).complete();
                let mut dev = range_sum * Int::from(2 * (l + 1));
                dev -= &k_l1 * Int::from(2);
                dev += &k_l * Int::from(l + 1);
                dev += m2_l1 * Int::from(2);
                dev -= m2_l * Int::from(l + 1);
                checks_run += 1;
                if dev.abs() > bound {
                    violations += 1;
                }
            }
        }
    }

    // Difference-quotient sum: Σ_{m<k} (k^(l+1)−m^(l+1))/(k−m) vs
    // H_{l+1}·k^(l+1), bound (M+1)·l·k^l.
    for l in 1..=cons_max {
        let h = &hs[l as usize + 1];
        let den = Rat::from(h).into_numer_denom().1;
        let num = Rat::from(h).into_numer_denom().0;
        for k in 2..=k_max {
            let ku = k as usize;
            let mut lhs = Int::new();
            let mut kpow = Int::from(1);
            // Σ_{j=0..l} k^j · P_{l−j}(k−1)
            for j in 0..=l {
                lhs += (&kpow * &table[(l - j) as usize][ku - 1]).complete();
                kpow *= k;
            }
            // kpow is now k^(l+1)
            let dev = lhs * &den - (&num * &kpow).complete();
            let bound = (&den * (m_bound + 1)).complete() * Int::from(l)
                * Int::from(k).pow(l);
            checks_run += 1;
            if dev.abs() > bound {
                violations += 1;
            }
        }
    }

    // Bilinear form: Σ_{m<k} (k^p−m^p)(k^q−m^q)/(k−m) vs
    // (H_p + H_q − H_{p+q})·k^(p+q), bound 2·M·p·k^(p+q−1).
    for p in 1..=cons_max {
        for q in 1..=cons_max {
            let hcombo = (&hs[p as usize]).clone() + &hs[q as usize] - &hs[(p + q) as usize];
            let (num, den) = hcombo.into_numer_denom();
            for k in 2..=k_max {
                let ku = k as usize;
                let k_q = Int::from(k).pow(q);
                let mut lhs = Int::new();
                let mut kpow = Int::from(1);
                for j in 0..p {
                    let inner = (&k_q * &table[(p - 1 - j) as usize][ku - 1]).complete()
                        - &table[(p + q - 1 - j) as usize][ku - 1];
                    lhs += inner * &kpow;
                    kpow *= k;
                }
                let k_pq = Int::from(k).pow(p + q);
                let dev = lhs * &den - (&num * &k_pq).complete();
                let bound = Int::from(2) * &m * Int::from(p) * Int::from(k).pow(p + q - 1)
                    * &den;
                checks_run += 1;
                if dev.abs() > bound {
                    violations += 1;
                }
            }
        }
    }

    // Double sum: Σ_{m1≤m2<k} (k^(l+1)−m1^(l+1))/((k−m1)(k−m2)) vs
    // (H_{l+1}·H_{k−1} − Σ_{p≤l} H_{p+1}/(p+1))·k^(l+1),
    // bound M·l·k^l·H_{k−1} + (M+1)(l+1)·k^l.
    {
        // D_l = Σ_{p=0..l} H_{p+1}/(p+1), prefix for every l ≤ cons_max.
        let mut d = Vec::with_capacity(cons_max as usize + 1);
        let mut acc = Rat::new();
        for p in 0..=cons_max {
            acc += hs[p as usize + 1].clone() / Rat::from(p + 1);
            d.push(acc.clone());
        }

        let mut lambda = Int::from(1); // lcm(1..k−1)
        let mut a = Int::new(); // H_{k−1}·lambda
        for k in 2..=k_max {
            let t = k - 1;
            let g = Int::from(t) / lambda.clone().gcd(&Int::from(t));
            if g != 1 {
                lambda *= &g;
                a *= &g;
            }
            a += &lambda / Int::from(t);
            // w[m2] = lambda/(k−m2), exact divisions.
            let w: Vec<Int> = (1..k)
                .map(|m2| &lambda / Int::from(k - m2))
                .collect();

            for l in 1..=cons_max {
                // LHS·lambda = Σ_{m2<k} Q_l(m2)·lambda/(k−m2),
                // Q_l(m2) = Σ_j k^j·P_{l−j}(m2) (Horner).
                let mut lhs = Int::new();
                for m2 in 1..k {
                    let m2u = m2 as usize;
                    // Q_l(m2) = Σ_j k^j·P_{l−j}(m2); Horner from P_0 pairs
                    // the high k-powers with the low prefix sums.
                    let mut q_val = table[0][m2u].clone();
                    for j in 1..=l {
                        q_val *= k;
                        q_val += &table[j as usize][m2u];
                    }
                    lhs += q_val * &w[m2u - 1];
                }

                let h_l1 = &hs[l as usize + 1];
                let d_l = &d[l as usize];
                let e = h_l1.denom().clone().lcm(d_l.denom());
                let k_l1 = Int::from(k).pow(l + 1);
                let k_l = Int::from(k).pow(l);

                // |e·Λ·LHS − e·Λ·RHS| ≤ e·Λ·bound, all integers.
                let lhs_i = (&lhs * &e).complete();
                let c1 = h_l1.numer() * (&e / h_l1.denom()).complete();
                let c2 = d_l.numer() * (&e / d_l.denom()).complete();
                let rhs_i = (&c1 * &a).complete() * &k_l1 - (&c2 * &lambda).complete() * &k_l1;
                let bound_i = (&m * Int::from(l)) * &k_l * &a * &e
                    + Int::from(m_bound + 1) * Int::from(l + 1) * &k_l * &lambda * &e;
                checks_run += 1;
                if (lhs_i - rhs_i).abs() > bound_i {
                    violations += 1;
                }
            }
        }
    }

    PowerSuiteOutcome {
        m_bound,
        l_max,
        n_max,
        cons_max,
        k_max,
        checks_run,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sum_small_values() {
        assert_eq!(power_sum(1, 100), Int::from(5050));
        assert_eq!(power_sum(2, 3), Int::from(14));
        // Closed form for l = 5: n²(n+1)²(2n²+2n−1)/12.
        assert_eq!(power_sum(5, 10), Int::from(220825));
    }

    #[test]
    fn bound_check_examples() {
        let m = Real::from_u64(2, 16);
        let c = check_power_sum_bounds(1, 10, &m);
        assert!(c.pass);
        assert_eq!(c.inclusive.deviation, Rat::from(5)); // 55 − 100/2
        assert_eq!(c.inclusive.bound, Rat::from(20));

        let c = check_power_sum_bounds(1, 1, &m);
        assert!(c.pass);
        assert_eq!(c.centered.deviation, Rat::new()); // 1 − 1/2 − 1/2
        assert_eq!(c.centered.slack, c.centered.bound);

        let c = check_power_sum_bounds(3, 100, &m);
        assert!(c.pass);
        // B₂ term exactly: l/12·n^(l−1) = 2500.
        assert_eq!(c.centered.deviation, Rat::from(2500));
    }

    #[test]
    fn suite_passes_on_a_small_grid() {
        let out = power_sum_suite(6, 60, 4, 40, 2);
        assert_eq!(out.violations, 0, "violations on {} checks", out.checks_run);
        assert!(out.checks_run > 1000);
    }

    #[test]
    fn suite_detects_an_inadmissible_constant() {
        // M = 0 cannot dominate the Euler–Maclaurin remainders.
        let out = power_sum_suite(3, 20, 2, 10, 0);
        assert!(out.violations > 0);
    }
}
