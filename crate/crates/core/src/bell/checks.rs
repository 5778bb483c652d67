//! Symbolic verification of Bell polynomial identities.
//!
//! Every suite works with the generic arguments `x1, x2, …` and evaluates
//! Bell polynomials through the integer-partition closed form.

use crate::exactalg::{binomial_q, factorial_q, frac, rat, Polynomial};
use crate::report::Report;
use crate::series::{Kind, Series};

use super::{BellArgs, BellTable};

fn closed_table(n_max: usize) -> (BellArgs, BellTable) {
    let x = BellArgs::symbolic(n_max + 1);
    let table = BellTable::from_integer_partitions(x.as_slice(), n_max);
    (x, table)
}

/// `exp(u X(t))` with `X = sum_m x_m t^m / m!` has coefficient `B_{n,k}` at `t^n/n! u^k`.
///
/// The coefficient of `u^k` in the exponential is `X^k / k!`, expanded here
/// with truncated EGF products and compared against the recurrence table.
pub fn check_genfunc_definition(n_max: usize, k_max: usize) -> Report {
    let mut report = Report::new("genfunc");
    let x = BellArgs::symbolic(n_max.max(1));
    let mut coeffs = vec![Polynomial::zero()];
    coeffs.extend(x.as_slice()[..n_max].iter().cloned());
    let big_x = Series::new(Kind::Egf, coeffs);
    let fast = BellTable::new(x.as_slice(), n_max);

    let mut power = big_x.pow(0);
    for k in 0..=k_max {
        if k > 0 {
            power = power.mul(&big_x).expect("both EGF");
        }
        let inv_kfact = factorial_q(k as u32).recip();
        for n in 0..=n_max {
            let lhs = power.coeff(n).expect("within order").scale(&inv_kfact);
            report.push_eq(format!("n={n} k={k}"), &lhs, fast.get(n, k));
        }
    }
    report
}

/// Both rooted-partition identities, for `1 <= k <= n <= n_max`:
/// `k B_{n,k} = sum_s C(n,s) x_s B_{n-s,k-1}` and
/// `n B_{n,k} = sum_s C(n,s) s x_s B_{n-s,k-1}`.
pub fn check_lemma_localization(n_max: usize) -> Report {
    let mut report = Report::new("localization");
    let (x, b) = closed_table(n_max);
    for n in 1..=n_max {
        for k in 1..=n {
            let mut by_part = Polynomial::zero();
            let mut by_element = Polynomial::zero();
            for s in 1..=n {
                let t = (x.get(s) * b.get(n - s, k - 1)).scale(&binomial_q(n as u32, s as u32));
                by_element += t.scale(&rat(s as i64));
                by_part += t;
            }
            report.push_eq(
                format!("part n={n} k={k}"),
                &b.get(n, k).scale(&rat(k as i64)),
                &by_part,
            );
            report.push_eq(
                format!("element n={n} k={k}"),
                &b.get(n, k).scale(&rat(n as i64)),
                &by_element,
            );
        }
    }
    report
}

/// `B_{n+1,k+1} = sum_{a=0}^{n-k} C(n,a) x_{a+1} B_{n-a,k}` for `0 <= k <= n <= n_max`.
pub fn check_starter(n_max: usize) -> Report {
    let mut report = Report::new("starter");
    let (x, b) = closed_table(n_max + 1);
    for n in 0..=n_max {
        for k in 0..=n {
            let rhs: Polynomial = (0..=n - k)
                .map(|a| (x.get(a + 1) * b.get(n - a, k)).scale(&binomial_q(n as u32, a as u32)))
                .sum();
            report.push_eq(format!("n={n} k={k}"), b.get(n + 1, k + 1), &rhs);
        }
    }
    report
}

/// The three Cvijović identities, one report each.
///
/// The first identity divides by `x_1 (n - k)`; it is checked in the cleared
/// form `(n-k) x_1 B_{n,k} = sum_a C(n,a) [(k+1) - (n+1)/(a+1)] x_{a+1} B_{n-a,k}`
/// for `1 <= k < n`.
pub fn check_cvijovic(n_max: usize) -> Vec<Report> {
    let (x, b) = closed_table(n_max);

    let mut first = Report::new("cvijovic-5");
    for n in 2..=n_max {
        for k in 1..n {
            let lhs = (x.get(1) * b.get(n, k)).scale(&rat((n - k) as i64));
            let rhs: Polynomial = (1..=n - k)
                .map(|a| {
                    let w = rat(k as i64 + 1) - frac(n as i64 + 1, a as i64 + 1);
                    (x.get(a + 1) * b.get(n - a, k)).scale(&(w * binomial_q(n as u32, a as u32)))
                })
                .sum();
            first.push_eq(format!("n={n} k={k}"), &lhs, &rhs);
        }
    }

    let mut second = Report::new("cvijovic-6");
    for n in 0..=n_max {
        for k1 in 0..=n {
            for k2 in 0..=n - k1 {
                let w =
                    factorial_q(k1 as u32) * factorial_q(k2 as u32) / factorial_q((k1 + k2) as u32);
                let rhs: Polynomial = (0..=n)
                    .map(|a| {
                        (b.get(a, k1) * b.get(n - a, k2)).scale(&binomial_q(n as u32, a as u32))
                    })
                    .sum();
                second.push_eq(
                    format!("n={n} k1={k1} k2={k2}"),
                    b.get(n, k1 + k2),
                    &rhs.scale(&w),
                );
            }
        }
    }

    let mut third = Report::new("cvijovic-7");
    for n in 1..=n_max {
        for k in 0..n {
            let rhs = nested_chain_sum(n, k, &x).scale(&factorial_q(k as u32 + 1).recip());
            third.push_eq(format!("n={n} k={k}"), b.get(n, k + 1), &rhs);
        }
    }

    vec![first, second, third]
}

/// `sum C(n,a_1) C(a_1,a_2) … C(a_{k-1},a_k) x_{n-a_1} x_{a_1-a_2} … x_{a_{k-1}-a_k} x_{a_k}`
/// over `n > a_1 > … > a_k >= 1` with `a_i >= k - i + 1`.
fn nested_chain_sum(n: usize, k: usize, x: &BellArgs) -> Polynomial {
    fn go(
        prev: usize,
        depth: usize,
        k: usize,
        x: &BellArgs,
        acc: Polynomial,
        out: &mut Polynomial,
    ) {
        if depth == k {
            *out += &acc * x.get(prev);
            return;
        }
        let lo = k - depth;
        for a in lo..prev {
            let next = (&acc * x.get(prev - a)).scale(&binomial_q(prev as u32, a as u32));
            go(a, depth + 1, k, x, next, out);
        }
    }
    let mut out = Polynomial::zero();
    go(n, 0, k, x, Polynomial::one(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn genfunc_small_and_trivial() {
        let r = check_genfunc_definition(6, 6);
        assert!(r.all_passed(), "{r}");
        let r0 = check_genfunc_definition(0, 0);
        assert_eq!(r0.checks.len(), 1);
        assert!(r0.all_passed());
    }

    #[test]
    fn localization_and_starter() {
        assert!(check_lemma_localization(8).all_passed());
        assert!(check_starter(8).all_passed());
    }

    #[test]
    fn cvijovic_all_pass() {
        for r in check_cvijovic(8) {
            assert!(r.all_passed(), "{r}");
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn identity_six_worked_example() {
        // B_{3,2} = 1/2 (C(3,1) B_{1,1} B_{2,1} + C(3,2) B_{2,1} B_{1,1}) = 3 x1 x2
        let x = BellArgs::symbolic(3);
        let b = BellTable::from_integer_partitions(x.as_slice(), 3);
        let rhs =
            (b.get(1, 1) * b.get(2, 1)).scale(&rat(3)) + (b.get(2, 1) * b.get(1, 1)).scale(&rat(3));
        assert_eq!(rhs.scale(&frac(1, 2)), p("3*x1*x2"));
    }

    #[test]
    fn chain_sum_top_case_is_power() {
        let x = BellArgs::symbolic(6);
        for n in 1..=6 {
            let s = nested_chain_sum(n, n - 1, &x).scale(&factorial_q(n as u32).recip());
            assert_eq!(s, p(&format!("x1^{n}")));
        }
    }
}
