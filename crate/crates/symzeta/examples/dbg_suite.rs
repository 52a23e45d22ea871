// localize which consequence family fails: run with families isolated by
// tweaking grids (cons grid produces formula4+dpow+bipow+ddpow together, so
// reproduce each inequality inline for small params instead)
use rug::ops::Pow;
use rug::{Complete, Integer as Int, Rational as Rat};

fn p_table(l_max: u32, n_max: u64) -> Vec<Vec<Int>> {
    let mut t = Vec::new();
    for l in 0..=l_max {
        let mut row = vec![Int::new()];
        let mut acc = Int::new();
        for m in 1..=n_max {
            acc += Int::from(m).pow(l);
            row.push(acc.clone());
        }
        t.push(row);
    }
    t
}

fn hs_list(n: u32) -> Vec<Rat> {
    let mut v = vec![Rat::new()];
    let mut h = Rat::new();
    for m in 1..=n {
        h += Rat::from((1u32, m));
        v.push(h.clone());
    }
    v
}

fn main() {
    let cons = 4u32;
    let kmax = 40u64;
    let m = 2u32;
    let table = p_table(2 * cons, kmax);
    let hs = hs_list(2 * cons + 2);

    let mut v4 = 0;
    let mut vd = 0;
    let mut vb = 0;
    let mut vdd = 0;

    // formula (4), rational route
    for l in 1..=cons {
        for k in 2..=kmax {
            for m2 in 1..k {
                let r = Rat::from(&table[l as usize][(k - 1) as usize] - &table[l as usize][(m2 - 1) as usize]);
                let target = Rat::from(Int::from(k).pow(l + 1)) / Rat::from(l + 1)
                    - Rat::from(Int::from(k).pow(l)) / Rat::from(2)
                    - Rat::from(Int::from(m2).pow(l + 1)) / Rat::from(l + 1)
                    + Rat::from(Int::from(m2).pow(l)) / Rat::from(2);
                let bound = Rat::from(2 * m) * Rat::from(l) * Rat::from(Int::from(k).pow(l - 1));
                if (r - target).abs() > bound {
                    v4 += 1;
                }
            }
        }
    }

    // dpow rational
    for l in 1..=cons {
        for k in 2..=kmax {
            let mut lhs = Rat::new();
            for mm in 1..k {
                let num = Int::from(k).pow(l + 1) - Int::from(mm).pow(l + 1);
                lhs += Rat::from((num, Int::from(k - mm)));
            }
            let rhs = hs[(l + 1) as usize].clone() * Rat::from(Int::from(k).pow(l + 1));
            let bound = Rat::from((m + 1) * l) * Rat::from(Int::from(k).pow(l));
            if (lhs - rhs).abs() > bound {
                vd += 1;
            }
        }
    }

    // bipow rational
    for p in 1..=cons {
        for q in 1..=cons {
            for k in 2..=kmax {
                let mut lhs = Rat::new();
                for mm in 1..k {
                    let f1 = Int::from(k).pow(p) - Int::from(mm).pow(p);
                    let f2 = Int::from(k).pow(q) - Int::from(mm).pow(q);
                    lhs += Rat::from((f1 * f2, Int::from(k - mm)));
                }
                let combo = hs[p as usize].clone() + &hs[q as usize] - &hs[(p + q) as usize];
                let rhs = combo * Rat::from(Int::from(k).pow(p + q));
                let bound = Rat::from(2 * m * p) * Rat::from(Int::from(k).pow(p + q - 1));
                if (lhs - rhs).abs() > bound {
                    vb += 1;
                }
            }
        }
    }

    // ddpow rational (literal double sum)
    for l in 1..=cons {
        for k in 2..=kmax {
            let mut lhs = Rat::new();
            for m2 in 1..k {
                for m1 in 1..=m2 {
                    let num = Int::from(k).pow(l + 1) - Int::from(m1).pow(l + 1);
                    lhs += Rat::from((num, Int::from((k - m1) * (k - m2))));
                }
            }
            let hk1: Rat = (1..k).map(|mm| Rat::from((1u64, mm))).sum();
            let c1: Rat = (0..=l).map(|p| Rat::from((1u32, p + 1))).sum();
            let c2: Rat = (0..=l)
                .map(|p| hs[(p + 1) as usize].clone() / Rat::from(p + 1))
                .sum();
            let rhs = (c1 * &hk1 - c2) * Rat::from(Int::from(k).pow(l + 1));
            let bound = Rat::from(m * l) * Rat::from(Int::from(k).pow(l)) * &hk1
                + Rat::from((m + 1) * (l + 1)) * Rat::from(Int::from(k).pow(l));
            if (lhs - rhs).abs() > bound {
                vdd += 1;
            }
        }
    }

    println!("formula4: {v4}  dpow: {vd}  bipow: {vb}  ddpow: {vdd}");
}
