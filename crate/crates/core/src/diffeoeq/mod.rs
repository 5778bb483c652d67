//! Generating-function form of the split recurrences for `b_n`.
//!
//! With `Q = (F^2)'/2` and `P = ∫ (F')^2`, the EGF `G = sum b_n t^n/n!`
//! satisfies the first recurrence iff `t (P∘G)' - Q∘G = 0` and the second iff
//! `(P∘G)'' + G'' (P'∘G) = 0`. Both are checked for `G = F^{-1}`, and the
//! coefficient-level equivalence with the recurrences is checked on a
//! sequence that is not a solution.

mod smatrix;

use crate::amplitudes::b_closed_table;
use crate::bell::BellTable;
use crate::exactalg::{factorial_q, frac, rat, Polynomial};
use crate::report::Report;
use crate::series::{compose, invert, Diffeomorphism, Kind, Series, SeriesError};

pub use smatrix::{big_w_coeff, check_smatrix, w_coeff, w_coeff_oracle, InteractingTheory};

/// `F` together with `P` and `Q`, all as EGFs of the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQPack {
    pub f: Series,
    pub q: Series,
    pub p: Series,
}

impl PQPack {
    pub fn order(&self) -> usize {
        self.f.order()
    }
}

/// `q_k = k! (k+1)/2 sum_{j<k} a_j a_{k-1-j}`.
pub fn q_coeff(diffeo: &Diffeomorphism, k: u32) -> Polynomial {
    if k == 0 {
        return Polynomial::zero();
    }
    let sum: Polynomial = (0..k)
        .map(|j| &diffeo.coeff(j) * &diffeo.coeff(k - 1 - j))
        .sum();
    sum.scale(&(factorial_q(k) * frac(k as i64 + 1, 2)))
}

/// `p_k = (k-1)! sum_{j<k} a_j a_{k-1-j} (j+1)(k-j)`.
pub fn p_coeff(diffeo: &Diffeomorphism, k: u32) -> Polynomial {
    if k == 0 {
        return Polynomial::zero();
    }
    let sum: Polynomial = (0..k)
        .map(|j| {
            (&diffeo.coeff(j) * &diffeo.coeff(k - 1 - j)).scale_int(((j + 1) * (k - j)) as i64)
        })
        .sum();
    sum.scale(&factorial_q(k - 1))
}

/// `Q` and `P` by differentiating and integrating `F` as a series.
pub fn pq_by_calculus(diffeo: &Diffeomorphism, order: usize) -> (Series, Series) {
    // one extra order so that the derivative still reaches t^order
    let f = diffeo.to_series(order + 1).to_egf();
    let q = f
        .mul(&f)
        .and_then(|sq| sq.derive())
        .expect("EGF arithmetic")
        .scale_q(&frac(1, 2));
    let df = f.derive().expect("order >= 1");
    let p = df.mul(&df).expect("EGF arithmetic").integrate();
    (
        q.truncate(order).expect("order fits"),
        p.truncate(order).expect("order fits"),
    )
}

/// Builds `F`, `Q`, `P` to order `order` from the closed-form coefficients,
/// checking against the calculus route in debug builds.
pub fn build_pq(diffeo: &Diffeomorphism, order: usize) -> PQPack {
    let n = order as u32;
    let q = Series::new(Kind::Egf, (0..=n).map(|k| q_coeff(diffeo, k)).collect());
    let p = Series::new(Kind::Egf, (0..=n).map(|k| p_coeff(diffeo, k)).collect());
    let (q_calc, p_calc) = pq_by_calculus(diffeo, order);
    debug_assert_eq!(q, q_calc, "closed-form Q disagrees with (F^2)'/2");
    debug_assert_eq!(
        p, p_calc,
        "closed-form P disagrees with the integral of F'^2"
    );
    PQPack {
        f: diffeo.to_series(order).to_egf(),
        q,
        p,
    }
}

fn check_candidate(g: &Series, pack: &PQPack) -> Result<Series, SeriesError> {
    let g = g.to_egf();
    if g.order() != pack.order() {
        return Err(SeriesError::OrderMismatch(g.order(), pack.order()));
    }
    Ok(g)
}

/// `t (P∘G)' - Q∘G`, EGF, same order as `G`.
pub fn ode1_residual(g: &Series, pack: &PQPack) -> Result<Series, SeriesError> {
    let g = check_candidate(g, pack)?;
    let pg = compose(&pack.p, &g)?;
    let qg = compose(&pack.q, &g)?;
    pg.derive()?.mul_t().sub(&qg)
}

/// `(P∘G)'' + G'' (P'∘G)`, EGF, order two below that of `G`.
pub fn ode2_residual(g: &Series, pack: &PQPack) -> Result<Series, SeriesError> {
    let g = check_candidate(g, pack)?;
    let pg = compose(&pack.p, &g)?;
    let dp = pack.p.derive()?;
    let dpg = compose(&dp, &g.truncate(dp.order())?)?;
    let ddg = g.derive()?.derive()?;
    pg.derive()?.derive()?.add(&ddg.mul(&dpg)?)
}

/// Right-hand side of the first recurrence,
/// `sum_k B_{n,k}(b) (k-1)!/2 sum_j a_j a_{k-1-j} [2n(j+1)(k-j) - k(k+1)]`.
///
/// `b[0]` is ignored (it is `b_0 = 0`); `b` must reach index `n`.
pub fn recurrence2_lhs(diffeo: &Diffeomorphism, b: &[Polynomial], n: u32) -> Polynomial {
    let table = BellTable::new(&b[1..], n as usize);
    let nn = n as i64;
    (1..=n)
        .map(|k| {
            let kk = k as i64;
            let inner: Polynomial = (0..k)
                .map(|j| {
                    let w = 2 * nn * (j as i64 + 1) * (kk - j as i64) - kk * (kk + 1);
                    (&diffeo.coeff(j) * &diffeo.coeff(k - 1 - j)).scale_int(w)
                })
                .sum();
            (table.get(n as usize, k as usize) * &inner).scale(&(factorial_q(k - 1) * frac(1, 2)))
        })
        .sum()
}

/// Right-hand side of the second recurrence,
/// `sum_k sum_j a_j a_{k-1-j} (j+1)(k-j) (k-1)!/(2k) sum_{s=1}^n b_s/(s!(n-s)!) B_{n-s,k-1}(b) (k s(s-1) + n(n-1))`.
///
/// The inner sum runs over `1 <= s <= n`; terms with `k - 1 > n - s` vanish
/// with their Bell polynomial, so the tighter bound `s <= n - k + 1` gives
/// the same value.
pub fn recurrence3_lhs(diffeo: &Diffeomorphism, b: &[Polynomial], n: u32) -> Polynomial {
    let table = BellTable::new(&b[1..], n as usize);
    let nn = n as i64;
    let mut total = Polynomial::zero();
    for k in 1..=n {
        let kk = k as i64;
        let a_part: Polynomial = (0..k)
            .map(|j| {
                (&diffeo.coeff(j) * &diffeo.coeff(k - 1 - j)).scale_int(((j + 1) * (k - j)) as i64)
            })
            .sum();
        if a_part.is_zero() {
            continue;
        }
        let mut s_part = Polynomial::zero();
        for s in 1..=n {
            let bell = table.get((n - s) as usize, k as usize - 1);
            if bell.is_zero() || b[s as usize].is_zero() {
                continue;
            }
            let ss = s as i64;
            let w = rat(kk * ss * (ss - 1) + nn * (nn - 1)) / (factorial_q(s) * factorial_q(n - s));
            s_part += (&b[s as usize] * bell).scale(&w);
        }
        total += (&a_part * &s_part).scale(&(factorial_q(k - 1) / rat(2 * kk)));
    }
    total
}

/// `b_n = n! a_{n-1}`, the EGF of `F` itself: a sequence violating both recurrences.
pub fn negative_control(diffeo: &Diffeomorphism, n_max: u32) -> Vec<Polynomial> {
    let mut b = vec![Polynomial::zero()];
    b.extend((1..=n_max).map(|n| diffeo.coeff(n - 1).scale(&factorial_q(n))));
    b
}

fn push_nonzero(report: &mut Report, name: String, s: &Series) {
    let zero = s.is_zero();
    report.push(name, !zero, zero.then(|| "residual vanished".to_string()));
}

fn push_zero(report: &mut Report, name: String, s: &Series) {
    let first = s.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero());
    report.push(
        name,
        first.is_none(),
        first.map(|(n, c)| format!("coefficient of t^{n}/{n}! is {c}")),
    );
}

/// Both differential equations for `G = F^{-1}` with residuals checked
/// modulo `t^{order+1}`, the negative control `G = F`, the identity case and
/// agreement of the two constructions of `P`, `Q`.
pub fn check_ode(diffeo: &Diffeomorphism, order: usize) -> Report {
    let mut report = Report::new("ode");
    // the second equation loses two orders to the derivatives
    let wide = order + 2;
    let pack = build_pq(diffeo, wide);
    let (q_calc, p_calc) = pq_by_calculus(diffeo, wide);
    for k in 1..=wide {
        report.push_eq(
            format!("q_{k} closed = calculus"),
            pack.q.coeff(k).unwrap(),
            q_calc.coeff(k).unwrap(),
        );
        report.push_eq(
            format!("p_{k} closed = calculus"),
            pack.p.coeff(k).unwrap(),
            p_calc.coeff(k).unwrap(),
        );
    }
    let g = invert(&pack.f).expect("F is tangent to the identity");

    let r1 =
        ode1_residual(&g.truncate(order).unwrap(), &build_pq(diffeo, order)).expect("orders match");
    push_zero(&mut report, format!("ode1 G=F^-1 mod t^{}", order + 1), &r1);
    let r2 = ode2_residual(&g, &pack).expect("orders match");
    push_zero(&mut report, format!("ode2 G=F^-1 mod t^{}", order + 1), &r2);

    push_nonzero(
        &mut report,
        "ode1 negative control G=F".into(),
        &ode1_residual(&pack.f, &pack).unwrap(),
    );
    push_nonzero(
        &mut report,
        "ode2 negative control G=F".into(),
        &ode2_residual(&pack.f, &pack).unwrap(),
    );

    let id = build_pq(&Diffeomorphism::identity(), order.max(2));
    let t = Series::t(Kind::Egf, order.max(2));
    push_zero(
        &mut report,
        "ode1 identity".into(),
        &ode1_residual(&t, &id).unwrap(),
    );
    push_zero(
        &mut report,
        "ode2 identity".into(),
        &ode2_residual(&t, &id).unwrap(),
    );
    report
}

/// First recurrence with `b = b_closed` for `1 <= n <= n_max`, and the
/// identity `[t^n/n!] (t (P∘G)' - Q∘G) = recurrence` on the negative control.
pub fn check_recurrence2(diffeo: &Diffeomorphism, n_max: u32) -> Report {
    let mut report = Report::new("recurrence2");
    let b = b_closed_table(diffeo, n_max);
    for n in 1..=n_max {
        report.push_eq(
            format!("n={n}"),
            &recurrence2_lhs(diffeo, &b, n),
            &Polynomial::zero(),
        );
    }
    let control = negative_control(diffeo, n_max);
    let pack = build_pq(diffeo, n_max as usize);
    let g = Series::new(Kind::Egf, control.clone());
    let r1 = ode1_residual(&g, &pack).expect("orders match");
    for n in 1..=n_max {
        report.push_eq(
            format!("ode1 coefficient = recurrence n={n}"),
            r1.coeff(n as usize).unwrap(),
            &recurrence2_lhs(diffeo, &control, n),
        );
    }
    report
}

/// Second recurrence with `b = b_closed` for `1 <= n <= n_max`, and the
/// identity `[t^{n-2}/(n-2)!] ((P∘G)'' + G'' P'∘G) = 2 (n-2)! recurrence` on the
/// negative control for `2 <= n <= n_max`.
pub fn check_recurrence3(diffeo: &Diffeomorphism, n_max: u32) -> Report {
    let mut report = Report::new("recurrence3");
    let b = b_closed_table(diffeo, n_max);
    for n in 1..=n_max {
        report.push_eq(
            format!("n={n}"),
            &recurrence3_lhs(diffeo, &b, n),
            &Polynomial::zero(),
        );
    }
    let control = negative_control(diffeo, n_max);
    let pack = build_pq(diffeo, n_max as usize);
    let g = Series::new(Kind::Egf, control.clone());
    let r2 = ode2_residual(&g, &pack).expect("orders match");
    for n in 2..=n_max {
        let scaled = recurrence3_lhs(diffeo, &control, n).scale(&(rat(2) * factorial_q(n - 2)));
        report.push_eq(
            format!("ode2 coefficient = recurrence n={n}"),
            r2.coeff(n as usize - 2).unwrap(),
            &scaled,
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn low_coefficients() {
        let f = Diffeomorphism::generic();
        assert_eq!(q_coeff(&f, 1), p("1"));
        assert_eq!(p_coeff(&f, 1), p("1"));
        assert_eq!(q_coeff(&f, 2), p("6*a1"));
        assert_eq!(p_coeff(&f, 2), p("4*a1"));
    }

    #[test]
    fn routes_agree() {
        for n in [1, 2, 5, 15] {
            build_pq(&Diffeomorphism::generic(), n);
        }
    }

    #[test]
    fn identity_pack() {
        let pack = build_pq(&Diffeomorphism::identity(), 4);
        assert_eq!(pack.q, Series::t(Kind::Egf, 4));
        assert_eq!(pack.p, Series::t(Kind::Egf, 4));
    }

    #[test]
    fn ode_suite_small() {
        let r = check_ode(&Diffeomorphism::generic(), 6);
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn recurrences_small() {
        let f = Diffeomorphism::generic();
        let r = check_recurrence2(&f, 6);
        assert!(r.all_passed(), "{r}");
        let r = check_recurrence3(&f, 6);
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn first_recurrence_at_n1_has_vanishing_bracket() {
        let f = Diffeomorphism::generic();
        let b = vec![Polynomial::zero(), p("x1")];
        assert!(recurrence2_lhs(&f, &b, 1).is_zero());
    }

    #[test]
    fn control_violates_recurrences() {
        let f = Diffeomorphism::generic();
        let c = negative_control(&f, 3);
        assert!(!recurrence2_lhs(&f, &c, 2).is_zero());
        assert!(!recurrence3_lhs(&f, &c, 3).is_zero());
    }

    #[test]
    fn residual_order_mismatch() {
        let pack = build_pq(&Diffeomorphism::generic(), 4);
        assert_eq!(
            ode1_residual(&Series::t(Kind::Egf, 3), &pack),
            Err(SeriesError::OrderMismatch(3, 4))
        );
    }
}
