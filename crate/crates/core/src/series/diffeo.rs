use std::collections::BTreeMap;

use crate::exactalg::{Polynomial, Var};

use super::{Kind, Series};

/// A formal field diffeomorphism `F(t) = sum_{j>=0} a_j t^{j+1}` with `a_0 = 1`.
///
/// Coefficients not set explicitly default either to the indeterminate `a_j`
/// (generic) or to zero (identity / polynomial diffeomorphisms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diffeomorphism {
    overrides: BTreeMap<u32, Polynomial>,
    symbolic_tail: bool,
}

impl Diffeomorphism {
    /// All `a_j` symbolic.
    pub fn generic() -> Self {
        Diffeomorphism {
            overrides: BTreeMap::new(),
            symbolic_tail: true,
        }
    }

    /// `F(t) = t`.
    pub fn identity() -> Self {
        Diffeomorphism {
            overrides: BTreeMap::new(),
            symbolic_tail: false,
        }
    }

    /// `a_1, a_2, …` taken from `coeffs`, zero beyond.
    pub fn polynomial(coeffs: impl IntoIterator<Item = Polynomial>) -> Self {
        let mut d = Diffeomorphism::identity();
        for (j, c) in coeffs.into_iter().enumerate() {
            d = d.with_coeff(j as u32 + 1, c);
        }
        d
    }

    /// Fixes `a_j` to a value. Panics for `j == 0` since `a_0 = 1` always.
    pub fn with_coeff(mut self, j: u32, value: impl Into<Polynomial>) -> Self {
        assert!(j >= 1, "a_0 is fixed to 1");
        self.overrides.insert(j, value.into());
        self
    }

    pub fn coeff(&self, j: u32) -> Polynomial {
        if j == 0 {
            return Polynomial::one();
        }
        match self.overrides.get(&j) {
            Some(p) => p.clone(),
            None if self.symbolic_tail => Polynomial::var(Var::A(j)),
            None => Polynomial::zero(),
        }
    }

    /// OGF `t + a_1 t^2 + … + a_{N-1} t^N`.
    pub fn to_series(&self, order: usize) -> Series {
        let mut coeffs = vec![Polynomial::zero(); order + 1];
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c = self.coeff(n as u32 - 1);
        }
        Series::new(Kind::Ogf, coeffs)
    }
}

impl Default for Diffeomorphism {
    fn default() -> Self {
        Diffeomorphism::generic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn series_from_diffeo() {
        assert_eq!(
            Diffeomorphism::identity().to_series(4),
            Series::t(Kind::Ogf, 4)
        );
        let generic = Diffeomorphism::generic().to_series(3);
        let cs: Vec<String> = generic.coeffs().iter().map(|c| c.to_string()).collect();
        assert_eq!(cs, ["0", "1", "a1", "a2"]);
        let numeric = Diffeomorphism::generic().with_coeff(1, rat(2)).to_series(2);
        let cs: Vec<String> = numeric.coeffs().iter().map(|c| c.to_string()).collect();
        assert_eq!(cs, ["0", "1", "2"]);
    }

    #[test]
    fn polynomial_tail_is_zero() {
        let d = Diffeomorphism::polynomial([Polynomial::int(3)]);
        assert_eq!(d.coeff(1), Polynomial::int(3));
        assert!(d.coeff(2).is_zero());
        assert_eq!(d.coeff(0), Polynomial::one());
    }
}
