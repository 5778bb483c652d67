//! A free theory with extra `λ_s φ^s / s!` vertices, transformed by `F`.
//!
//! All quantities are real-normalized: the factor `-i` that the usual
//! vertex and amplitude conventions carry is dropped, so the tree sums satisfy
//! `W_n^{(s)} = λ_s [n = s]`.

use std::collections::BTreeMap;

use crate::amplitudes::b_closed_table;
use crate::bell::BellTable;
use crate::exactalg::{factorial_q, Polynomial, Var};
use crate::report::Report;
use crate::series::Diffeomorphism;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractingTheory {
    couplings: BTreeMap<u32, Polynomial>,
    diffeo: Diffeomorphism,
}

impl InteractingTheory {
    /// Every `λ_s` left as the indeterminate `l{s}`.
    pub fn new(diffeo: Diffeomorphism) -> Self {
        InteractingTheory {
            couplings: BTreeMap::new(),
            diffeo,
        }
    }

    /// Fixes `λ_s`. Panics for `s < 3`.
    pub fn with_coupling(mut self, s: u32, value: impl Into<Polynomial>) -> Self {
        assert!(s >= 3, "interaction vertices have degree at least 3");
        self.couplings.insert(s, value.into());
        self
    }

    pub fn coupling(&self, s: u32) -> Polynomial {
        assert!(s >= 3, "interaction vertices have degree at least 3");
        self.couplings
            .get(&s)
            .cloned()
            .unwrap_or_else(|| Polynomial::var(Var::L(s)))
    }

    pub fn diffeo(&self) -> &Diffeomorphism {
        &self.diffeo
    }
}

/// `1! a_0, 2! a_1, 3! a_2, …` up to `m!·a_{m-1}`.
fn derivative_args(diffeo: &Diffeomorphism, m: usize) -> Vec<Polynomial> {
    (1..=m as u32)
        .map(|i| diffeo.coeff(i - 1).scale(&factorial_q(i)))
        .collect()
}

/// `w_n^{(s)} = λ_s B_{n,s}(1! a_0, 2! a_1, …)`, zero for `n < s`.
pub fn w_coeff(theory: &InteractingTheory, s: u32, n: u32) -> Polynomial {
    let lambda = theory.coupling(s);
    if n < s {
        return Polynomial::zero();
    }
    let table = BellTable::new(&derivative_args(theory.diffeo(), n as usize), n as usize);
    &lambda * table.get(n as usize, s as usize)
}

/// `w_n^{(s)}` as `λ_s n!/s! [t^n] F(t)^s`.
pub fn w_coeff_oracle(theory: &InteractingTheory, s: u32, n: u32) -> Polynomial {
    let lambda = theory.coupling(s);
    let f = theory.diffeo().to_series(n as usize);
    let power = f.pow(s);
    let c = power.coeff(n as usize).expect("within order");
    (&lambda * c).scale(&(factorial_q(n) / factorial_q(s)))
}

/// `W_n^{(s)} = λ_s sum_{k=s}^n B_{k,s}(1!, 2! a_1, …) B_{n,k}(b_1, b_2, …)` with `b` from the closed form.
pub fn big_w_coeff(theory: &InteractingTheory, s: u32, n: u32) -> Polynomial {
    let lambda = theory.coupling(s);
    if n < s {
        return Polynomial::zero();
    }
    let b = b_closed_table(theory.diffeo(), n);
    w_sum(theory.diffeo(), &lambda, s, n, &b)
}

fn w_sum(
    diffeo: &Diffeomorphism,
    lambda: &Polynomial,
    s: u32,
    n: u32,
    b: &[Polynomial],
) -> Polynomial {
    let outer = BellTable::new(&derivative_args(diffeo, n as usize), n as usize);
    let inner = BellTable::new(&b[1..=n as usize], n as usize);
    let sum: Polynomial = (s..=n)
        .map(|k| outer.get(k as usize, s as usize) * inner.get(n as usize, k as usize))
        .sum();
    lambda * &sum
}

/// `W_n^{(s)} = λ_s [n = s]` for each `s` in `degrees` and `1 <= n <= n_max`,
/// plus `w` against its power-series oracle.
pub fn check_smatrix(theory: &InteractingTheory, degrees: &[u32], n_max: u32) -> Report {
    let mut report = Report::new("smatrix");
    let b = b_closed_table(theory.diffeo(), n_max);
    for &s in degrees {
        let lambda = theory.coupling(s);
        for n in 1..=n_max {
            let expected = if n == s {
                lambda.clone()
            } else {
                Polynomial::zero()
            };
            let got = if n < s {
                Polynomial::zero()
            } else {
                w_sum(theory.diffeo(), &lambda, s, n, &b)
            };
            report.push_eq(format!("W s={s} n={n}"), &got, &expected);
            report.push_eq(
                format!("w s={s} n={n} bell = power"),
                &w_coeff(theory, s, n),
                &w_coeff_oracle(theory, s, n),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn theory() -> InteractingTheory {
        InteractingTheory::new(Diffeomorphism::generic())
    }

    #[test]
    fn w_examples() {
        let t = theory();
        assert_eq!(w_coeff(&t, 3, 3), p("l3"));
        assert_eq!(w_coeff(&t, 3, 4), p("12*a1*l3"));
        assert!(w_coeff(&t, 3, 2).is_zero());
        assert_eq!(w_coeff(&t, 5, 5), p("l5"));
    }

    #[test]
    fn w_sum_is_kronecker() {
        let t = theory();
        for s in 3..=5 {
            for n in 1..=7 {
                let want = if n == s {
                    t.coupling(s)
                } else {
                    Polynomial::zero()
                };
                assert_eq!(big_w_coeff(&t, s, n), want, "s={s} n={n}");
            }
        }
    }

    #[test]
    fn fixed_coupling() {
        let t = theory().with_coupling(4, Polynomial::int(7));
        assert_eq!(big_w_coeff(&t, 4, 4), Polynomial::int(7));
        assert_eq!(t.coupling(3), p("l3"));
    }

    #[test]
    fn suite_passes() {
        let r = check_smatrix(&theory(), &[3, 4], 6);
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    #[should_panic]
    fn rejects_low_degree() {
        theory().coupling(2);
    }
}
