//! Truncated formal power series in one variable `t` with polynomial coefficients.
//!
//! A [`Series`] of truncation order `N` stores exactly the coefficients of
//! `t^0 ..= t^N`; everything above is unknown, never implicitly zero. Binary
//! operations that combine two series keep the smaller of the two orders.

mod diffeo;
mod json;

use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::bell::BellTable;
use crate::exactalg::{binomial_q, factorial_q, rat, Polynomial, Rational};

pub use diffeo::Diffeomorphism;
pub use json::{SeriesJson, SeriesTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("series kinds differ")]
    KindMismatch,
    #[error("linear coefficient is {0}, expected 1")]
    NotInvertible(String),
    #[error("truncation order would become negative")]
    OrderUnderflow,
    #[error("malformed series: {0}")]
    Malformed(String),
}

/// How coefficient `c_n` is read: `c_n t^n / n!` (EGF) or `c_n t^n` (OGF).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Egf,
    Ogf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    kind: Kind,
    coeffs: Vec<Polynomial>,
}

impl Series {
    /// Series from `c_0 ..= c_N`; the truncation order is `coeffs.len() - 1`.
    pub fn new(kind: Kind, coeffs: Vec<Polynomial>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant coefficient"
        );
        Series { kind, coeffs }
    }

    pub fn zero(kind: Kind, order: usize) -> Self {
        Series::new(kind, vec![Polynomial::zero(); order + 1])
    }

    /// The series `t`.
    pub fn t(kind: Kind, order: usize) -> Self {
        let mut s = Series::zero(kind, order);
        if order >= 1 {
            s.coeffs[1] = Polynomial::one();
        }
        s
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&Polynomial> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    /// Drops coefficients above `order`. Raising the order is not possible.
    pub fn truncate(&self, order: usize) -> Result<Series, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::OrderMismatch(order, self.order()));
        }
        Ok(Series::new(self.kind, self.coeffs[..=order].to_vec()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn to_kind(&self, kind: Kind) -> Series {
        match (self.kind, kind) {
            (a, b) if a == b => self.clone(),
            (Kind::Ogf, Kind::Egf) => Series::new(
                kind,
                self.coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, c)| c.scale(&factorial_q(n as u32)))
                    .collect(),
            ),
            _ => Series::new(
                kind,
                self.coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, c)| c.scale(&factorial_q(n as u32).recip()))
                    .collect(),
            ),
        }
    }

    pub fn to_egf(&self) -> Series {
        self.to_kind(Kind::Egf)
    }

    pub fn to_ogf(&self) -> Series {
        self.to_kind(Kind::Ogf)
    }

    fn check_kind(&self, other: &Series) -> Result<(), SeriesError> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(SeriesError::KindMismatch)
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_kind(other)?;
        let n = self.order().min(other.order());
        Ok(Series::new(
            self.kind,
            (0..=n)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_kind(other)?;
        let n = self.order().min(other.order());
        Ok(Series::new(
            self.kind,
            (0..=n)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
        ))
    }

    pub fn neg(&self) -> Series {
        Series::new(self.kind, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Polynomial) -> Series {
        Series::new(self.kind, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_q(&self, c: &Rational) -> Series {
        Series::new(self.kind, self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    /// Cauchy product for OGFs, binomial convolution for EGFs.
    pub fn mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_kind(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = Polynomial::zero();
                for i in 0..=n {
                    let (x, y) = (&self.coeffs[i], &other.coeffs[n - i]);
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let term = x * y;
                    acc += match self.kind {
                        Kind::Ogf => term,
                        Kind::Egf => term.scale(&binomial_q(n as u32, i as u32)),
                    };
                }
                acc
            })
            .collect();
        Ok(Series::new(self.kind, coeffs))
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::one_like(self);
        for _ in 0..k {
            acc = acc.mul(self).expect("same kind");
        }
        acc
    }

    fn one_like(s: &Series) -> Series {
        let mut one = Series::zero(s.kind, s.order());
        one.coeffs[0] = Polynomial::one();
        one
    }

    /// Term-wise derivative; the order drops by one.
    pub fn derive(&self) -> Result<Series, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderUnderflow);
        }
        let coeffs = (1..=self.order())
            .map(|n| match self.kind {
                Kind::Ogf => self.coeffs[n].scale(&rat(n as i64)),
                Kind::Egf => self.coeffs[n].clone(),
            })
            .collect();
        Ok(Series::new(self.kind, coeffs))
    }

    /// Antiderivative with zero constant term; the order rises by one.
    pub fn integrate(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Polynomial::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(match self.kind {
                Kind::Ogf => c.scale(&Rational::new(1.into(), (n as i64 + 1).into())),
                Kind::Egf => c.clone(),
            });
        }
        Series::new(self.kind, coeffs)
    }

    /// Multiplication by `t`, which is exact and raises the order by one.
    pub fn mul_t(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Polynomial::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(match self.kind {
                Kind::Ogf => c.clone(),
                Kind::Egf => c.scale(&rat(n as i64 + 1)),
            });
        }
        Series::new(self.kind, coeffs)
    }
}

fn check_compose_args(f: &Series, g: &Series) -> Result<(), SeriesError> {
    f.check_kind(g)?;
    if f.order() != g.order() {
        return Err(SeriesError::OrderMismatch(f.order(), g.order()));
    }
    if !g.coeffs[0].is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    Ok(())
}

/// `f(g(t))` by Faà di Bruno: `h_n = sum_k f_k B_{n,k}(g_1, g_2, …)` on EGF coefficients.
pub fn compose(f: &Series, g: &Series) -> Result<Series, SeriesError> {
    check_compose_args(f, g)?;
    let (fe, ge) = (f.to_egf(), g.to_egf());
    let n = f.order();
    let table = BellTable::new(&ge.coeffs[1..], n);
    let h = (0..=n)
        .map(|m| {
            (0..=m)
                .filter(|&k| !fe.coeffs[k].is_zero())
                .map(|k| &fe.coeffs[k] * table.get(m, k))
                .sum()
        })
        .collect();
    Ok(Series::new(Kind::Egf, h).to_kind(f.kind))
}

/// `f(g(t))` by Horner evaluation with truncated products.
pub fn compose_naive(f: &Series, g: &Series) -> Result<Series, SeriesError> {
    check_compose_args(f, g)?;
    let (fo, go) = (f.to_ogf(), g.to_ogf());
    let n = f.order();
    let mut acc = Series::zero(Kind::Ogf, n);
    for k in (0..=n).rev() {
        acc = acc.mul(&go)?;
        acc.coeffs[0] += &fo.coeffs[k];
    }
    Ok(acc.to_kind(f.kind))
}

/// Compositional inverse `g` with `f(g(t)) = g(f(t)) = t` up to the order of `f`.
///
/// Solves `sum_k g_k [t^n] f^k = [n = 1]` for `g_n` one order at a time; the
/// system is unit lower triangular because `[t^n] f^n = 1`.
pub fn invert(f: &Series) -> Result<Series, SeriesError> {
    let u = f.to_ogf();
    let order = u.order();
    if !u.coeffs[0].is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    if order >= 1 && !u.coeffs[1].as_constant().is_some_and(|c| c.is_one()) {
        return Err(SeriesError::NotInvertible(u.coeffs[1].to_string()));
    }
    let mut powers = Vec::with_capacity(order + 1);
    powers.push(Series::one_like(&u));
    for k in 1..=order {
        let next = powers[k - 1].mul(&u)?;
        powers.push(next);
    }
    let mut g = Series::zero(Kind::Ogf, order);
    if order >= 1 {
        g.coeffs[1] = Polynomial::one();
    }
    for n in 2..=order {
        let mut acc = Polynomial::zero();
        for (gk, pk) in g.coeffs[1..n].iter().zip(&powers[1..n]) {
            if !gk.is_zero() {
                acc += gk * &pk.coeffs[n];
            }
        }
        g.coeffs[n] = -acc;
    }
    Ok(g.to_kind(f.kind))
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let scale = match (self.kind, n) {
                (Kind::Egf, n) if n >= 2 => format!("/{n}!"),
                _ => String::new(),
            };
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t{scale}")?,
                _ => write!(f, "({c})*t^{n}{scale}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn ogf(cs: &[&str]) -> Series {
        Series::new(Kind::Ogf, cs.iter().map(|c| p(c)).collect())
    }

    fn egf(cs: &[&str]) -> Series {
        Series::new(Kind::Egf, cs.iter().map(|c| p(c)).collect())
    }

    #[test]
    fn compose_identity_outer() {
        let g = egf(&["0", "a1", "a2", "a3*a1"]);
        assert_eq!(compose(&Series::t(Kind::Egf, 3), &g).unwrap(), g);
    }

    #[test]
    fn compose_half_square() {
        // (t + t^2)^2 / 2 = t^2/2 + t^3 + t^4/2, expanded by hand
        let f = egf(&["0", "0", "1", "0", "0"]);
        let g = egf(&["0", "1", "2", "0", "0"]);
        let h = compose(&f, &g).unwrap();
        assert_eq!(h, egf(&["0", "0", "1", "6", "12"]));
        assert_eq!(h.to_ogf(), ogf(&["0", "0", "1/2", "1", "1/2"]));
    }

    #[test]
    fn compose_errors() {
        let f = egf(&["0", "1", "0"]);
        assert_eq!(
            compose(&f, &egf(&["1", "1", "0"])),
            Err(SeriesError::NonzeroConstantTerm)
        );
        assert_eq!(
            compose(&f, &egf(&["0", "1"])),
            Err(SeriesError::OrderMismatch(2, 1))
        );
        assert_eq!(
            compose(&f, &ogf(&["0", "1", "0"])),
            Err(SeriesError::KindMismatch)
        );
    }

    #[test]
    fn invert_examples() {
        assert_eq!(
            invert(&Series::t(Kind::Ogf, 5)).unwrap(),
            Series::t(Kind::Ogf, 5)
        );
        let f = ogf(&["0", "1", "a1", "a2"]);
        let b = invert(&f).unwrap().to_egf();
        assert_eq!(b.coeff(1).unwrap(), &p("1"));
        assert_eq!(b.coeff(2).unwrap(), &p("-2*a1"));
        assert_eq!(b.coeff(3).unwrap(), &p("12*a1^2 - 6*a2"));
        let back = compose(&f, &invert(&f).unwrap()).unwrap();
        assert_eq!(back, Series::t(Kind::Ogf, 3));
    }

    #[test]
    fn invert_rejects_bad_linear_term() {
        assert!(matches!(
            invert(&ogf(&["0", "2", "1"])),
            Err(SeriesError::NotInvertible(_))
        ));
        assert!(matches!(
            invert(&ogf(&["0", "a1", "1"])),
            Err(SeriesError::NotInvertible(_))
        ));
        assert_eq!(
            invert(&ogf(&["1", "1"])),
            Err(SeriesError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn calculus() {
        let t2 = ogf(&["0", "0", "1"]);
        assert_eq!(t2.derive().unwrap(), ogf(&["0", "2"]));
        assert_eq!(ogf(&["0", "2"]).integrate(), t2);
        assert_eq!(ogf(&["5"]).derive(), Err(SeriesError::OrderUnderflow));
        let e = egf(&["1", "a1", "M"]);
        assert_eq!(e.integrate().derive().unwrap(), e);
        assert_eq!(e.mul_t(), egf(&["0", "1", "2*a1", "3*M"]));
    }

    #[test]
    fn min_order_rule() {
        let a = ogf(&["1", "1", "1", "1"]);
        let b = ogf(&["1", "1"]);
        assert_eq!(a.add(&b).unwrap().order(), 1);
        assert_eq!(a.mul(&b).unwrap(), ogf(&["1", "2"]));
    }

    #[test]
    fn egf_product_matches_ogf_product() {
        let a = ogf(&["1", "a1", "a2", "a3"]);
        let b = ogf(&["0", "1", "M", "a1"]);
        let via_egf = a.to_egf().mul(&b.to_egf()).unwrap().to_ogf();
        assert_eq!(via_egf, a.mul(&b).unwrap());
    }
}
