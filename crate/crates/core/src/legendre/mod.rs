//! Combinatorial Legendre transform and the tree formula for inverse coefficients.
//!
//! Sign convention (frozen): with `h = (-A')^{-1}`,
//!
//! ```text
//! (LA)(y) = A(h(y)) + y h(y)
//! ```
//!
//! which is `A∘A'^{-1} - x A'^{-1}` evaluated at `x = -y`. Under this
//! convention the action `A = -(t^2/2 + a_1 t^3/3 + a_2 t^4/4 + …)` of a
//! diffeomorphism `F = -A'` has `LA` with EGF coefficients `b_{n-1}`. The
//! transform is not an involution: applying it twice gives `A(-z)`.

mod trees;

use num_traits::One;

use crate::amplitudes::b_closed_table;
use crate::exactalg::{frac, rat, Polynomial, Rational};
use crate::report::Report;
use crate::series::{compose, invert, Diffeomorphism, Kind, Series, SeriesError};

pub use trees::{count_plane_trees, plane_trees, PlaneTree, RootedTreeProfile};

/// A series with zero constant and linear term and quadratic coefficient `±1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSeries(Series);

impl ActionSeries {
    pub fn new(series: Series) -> Result<Self, SeriesError> {
        let s = series.to_ogf();
        if s.order() < 2 {
            return Err(SeriesError::OrderUnderflow);
        }
        if !s.coeff(0).unwrap().is_zero() || !s.coeff(1).unwrap().is_zero() {
            return Err(SeriesError::Malformed(
                "constant and linear terms must vanish".into(),
            ));
        }
        let quad = s.coeff(2).unwrap();
        let half = frac(1, 2);
        match quad.as_constant() {
            Some(c) if c == half || c == -half.clone() => Ok(ActionSeries(s)),
            _ => Err(SeriesError::NotInvertible(quad.to_string())),
        }
    }

    pub fn series(&self) -> &Series {
        &self.0
    }

    pub fn into_series(self) -> Series {
        self.0
    }
}

/// `A = -sum_{j>=0} a_j t^{j+2}/(j+2)`, so that `-A' = F`; OGF of order `order`.
pub fn build_a(diffeo: &Diffeomorphism, order: usize) -> ActionSeries {
    let mut coeffs = vec![Polynomial::zero(); order.max(2) + 1];
    for (k, c) in coeffs.iter_mut().enumerate().skip(2) {
        *c = diffeo.coeff(k as u32 - 2).scale(&-frac(1, k as i64));
    }
    ActionSeries::new(Series::new(Kind::Ogf, coeffs)).expect("quadratic term is -1/2")
}

/// Compositional inverse of a series whose linear coefficient is `1` or `-1`.
pub fn invert_signed(u: &Series) -> Result<Series, SeriesError> {
    let u = u.to_ogf();
    let lin = u.coeff(1).and_then(|c| c.as_constant());
    match lin {
        Some(c) if c.is_one() => invert(&u),
        Some(c) if c == -Rational::one() => {
            // u = -v with v(t) = t + …, so u^{-1}(y) = v^{-1}(-y)
            let vinv = invert(&u.neg())?;
            let minus_t = Series::t(Kind::Ogf, u.order()).neg();
            compose(&vinv, &minus_t)
        }
        _ => Err(SeriesError::NotInvertible(
            u.coeff(1).map(|c| c.to_string()).unwrap_or_default(),
        )),
    }
}

/// `(LA)(y) = A(h(y)) + y h(y)` with `h = (-A')^{-1}`, as an EGF of order `order`.
///
/// Needs `A` known through `t^{order+1}`.
pub fn legendre_transform(a: &ActionSeries, order: usize) -> Result<Series, SeriesError> {
    let a = a.series();
    if a.order() < order + 1 {
        return Err(SeriesError::OrderUnderflow);
    }
    let a = a.truncate(order + 1)?;
    let u = a.derive()?.neg();
    let h = invert_signed(&u)?;
    let ah = compose(&a.truncate(order)?, &h)?;
    let yh = h.mul_t().truncate(order)?;
    Ok(ah.add(&yh)?.to_egf())
}

/// `x + r_1 x^2 + r_2 x^3 + …` with `r_n = sum (-1)^{#vertices} a_1^{m_1} a_2^{m_2} …`
/// over plane rooted trees with `n + 1` leaves, `m_j` counting vertices with
/// `j + 1` children. OGF of order `order`.
pub fn loday_inverse(diffeo: &Diffeomorphism, order: usize) -> Series {
    let mut coeffs = vec![Polynomial::zero(); order + 1];
    if order >= 1 {
        coeffs[1] = Polynomial::one();
    }
    for (n, c) in coeffs.iter_mut().enumerate().skip(2) {
        *c = loday_coefficient(diffeo, n as u32 - 1);
    }
    Series::new(Kind::Ogf, coeffs)
}

/// `r_n` from the tree enumeration.
pub fn loday_coefficient(diffeo: &Diffeomorphism, n: u32) -> Polynomial {
    let mut out = Polynomial::zero();
    for (profile, count) in RootedTreeProfile::tally(n + 1) {
        let monomial = profile.iter().fold(Polynomial::one(), |acc, (j, m)| {
            &acc * &diffeo.coeff(j).pow(m)
        });
        let sign = if profile.vertex_count() % 2 == 0 {
            1
        } else {
            -1
        };
        out += monomial.scale(&rat(sign * count as i64));
    }
    out
}

/// EGF coefficient `n` of `L(build_a(F))` against `b_{n-1}` for `3 <= n <= n_max`,
/// the quadratic term `y^2/2`, and the tree formula against series inversion
/// for `order <= loday_max`.
pub fn check_legendre_b_relation(diffeo: &Diffeomorphism, n_max: u32, loday_max: usize) -> Report {
    let mut report = Report::new("legendre");
    let a = build_a(diffeo, n_max as usize + 1);
    let la = legendre_transform(&a, n_max as usize).expect("A has quadratic term -1/2");
    let b = b_closed_table(diffeo, n_max);
    if n_max >= 2 {
        report.push_eq("n=2 y^2/2", la.coeff(2).unwrap(), &Polynomial::one());
    }
    for n in 3..=n_max as usize {
        report.push_eq(
            format!("n={n} L_n = b_{}", n - 1),
            la.coeff(n).unwrap(),
            &b[n - 1],
        );
    }
    let inverse = invert(&diffeo.to_series(loday_max)).expect("F is tangent to the identity");
    let trees = loday_inverse(diffeo, loday_max);
    for n in 2..=loday_max {
        report.push_eq(
            format!("r_{} trees = inversion", n - 1),
            trees.coeff(n).unwrap(),
            inverse.coeff(n).unwrap(),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_action() {
        let a = build_a(&Diffeomorphism::identity(), 5);
        let la = legendre_transform(&a, 4).unwrap();
        // y^2/2 as an EGF has coefficient 1 at n = 2
        let mut want = vec![Polynomial::zero(); 5];
        want[2] = Polynomial::one();
        assert_eq!(la, Series::new(Kind::Egf, want));
    }

    #[test]
    fn build_a_generic() {
        let a = build_a(&Diffeomorphism::generic(), 4);
        assert_eq!(
            a.series().to_string(),
            "(-1/2)*t^2 + (-1/3*a1)*t^3 + (-1/4*a2)*t^4 + O(t^5)"
        );
        let f = Diffeomorphism::generic().to_series(3);
        assert_eq!(a.series().derive().unwrap(), f.neg());
    }

    #[test]
    fn low_coefficients_match_b() {
        let f = Diffeomorphism::generic();
        let la = legendre_transform(&build_a(&f, 5), 4).unwrap();
        assert_eq!(la.coeff(3).unwrap(), &p("-2*a1"));
        assert_eq!(la.coeff(4).unwrap(), &p("12*a1^2 - 6*a2"));
    }

    #[test]
    fn needs_one_more_order() {
        let a = build_a(&Diffeomorphism::generic(), 4);
        assert_eq!(legendre_transform(&a, 4), Err(SeriesError::OrderUnderflow));
    }

    #[test]
    fn rejects_degenerate_quadratic() {
        let s = Series::new(
            Kind::Ogf,
            vec![Polynomial::zero(), Polynomial::zero(), Polynomial::int(3)],
        );
        assert!(matches!(
            ActionSeries::new(s),
            Err(SeriesError::NotInvertible(_))
        ));
    }

    #[test]
    fn signed_inverse() {
        let u = Series::new(Kind::Ogf, vec![p("0"), p("-1"), p("3"), p("1/2")]);
        let h = invert_signed(&u).unwrap();
        assert_eq!(compose(&u, &h).unwrap(), Series::t(Kind::Ogf, 3));
    }

    #[test]
    fn loday_examples() {
        let f = Diffeomorphism::generic();
        assert_eq!(loday_coefficient(&f, 1), p("-a1"));
        assert_eq!(loday_coefficient(&f, 2), p("2*a1^2 - a2"));
        assert_eq!(
            loday_inverse(&Diffeomorphism::identity(), 5),
            Series::t(Kind::Ogf, 5)
        );
    }

    #[test]
    fn loday_matches_inversion() {
        let f = Diffeomorphism::generic();
        assert_eq!(loday_inverse(&f, 8), invert(&f.to_series(8)).unwrap());
    }

    #[test]
    fn b_relation_report() {
        let r = check_legendre_b_relation(&Diffeomorphism::generic(), 7, 6);
        assert!(r.all_passed(), "{r}");
    }

    fn random_action(rng: &mut ChaCha8Rng, order: usize) -> ActionSeries {
        let mut coeffs = vec![
            Polynomial::zero(),
            Polynomial::zero(),
            Polynomial::constant(-frac(1, 2)),
        ];
        for _ in 3..=order {
            coeffs.push(Polynomial::constant(frac(
                rng.gen_range(-50..=50),
                rng.gen_range(1..=9),
            )));
        }
        ActionSeries::new(Series::new(Kind::Ogf, coeffs)).unwrap()
    }

    #[test]
    fn double_transform_reflects_argument() {
        // the frozen convention gives L(L A)(z) = A(-z) rather than A(z)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for order in 4..=8 {
            let a = random_action(&mut rng, order + 2);
            let la = ActionSeries::new(legendre_transform(&a, order + 1).unwrap()).unwrap();
            let lla = legendre_transform(&la, order).unwrap();
            let reflected = compose(
                &a.series().truncate(order).unwrap(),
                &Series::t(Kind::Ogf, order).neg(),
            )
            .unwrap();
            assert_eq!(lla.to_ogf(), reflected, "order {order}");
            assert_ne!(lla.to_ogf(), a.series().truncate(order).unwrap());
        }
    }
}
