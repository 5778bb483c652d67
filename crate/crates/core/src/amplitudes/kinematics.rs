use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::exactalg::{rat, Polynomial, Rational, Var};

/// A nonempty set of external legs, bit `i - 1` standing for leg `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentumSubset(u32);

impl MomentumSubset {
    pub fn from_bits(bits: u32) -> Self {
        assert!(bits != 0, "momentum subsets are nonempty");
        MomentumSubset(bits)
    }

    pub fn leg(i: u32) -> Self {
        assert!((1..=32).contains(&i));
        MomentumSubset(1 << (i - 1))
    }

    /// Legs `1..=n`.
    pub fn all(n: u32) -> Self {
        assert!((1..=31).contains(&n));
        MomentumSubset((1 << n) - 1)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: MomentumSubset) -> MomentumSubset {
        MomentumSubset(self.0 | other.0)
    }

    /// Leg labels in increasing order.
    pub fn legs(self) -> impl Iterator<Item = u32> {
        (0..32)
            .filter(move |b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
    }
}

/// `(sum_{i in P} p_i)^2 = |P| M + 2 sum_{i<j in P} s_i_j` with every external leg on shell.
pub fn square_momentum(legs: MomentumSubset) -> Polynomial {
    let mut out = Polynomial::var(Var::M).scale_int(legs.len() as i64);
    let ls: Vec<u32> = legs.legs().collect();
    for (x, &i) in ls.iter().enumerate() {
        for &j in &ls[x + 1..] {
            out += Polynomial::var(Var::S(i, j)).scale_int(2);
        }
    }
    out
}

/// Exact values for `M` and every `s_i_j` of an `n`-leg process, with the
/// squared momentum of each leg subset precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KinematicPoint {
    n: u32,
    mass_sq: Rational,
    dots: BTreeMap<(u32, u32), Rational>,
    squares: Vec<Rational>,
}

/// Numerators of sampled values are uniform in `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub const SAMPLE_RANGE: i64 = 1_000_000;

impl KinematicPoint {
    /// `dots` must contain every pair `i < j <= n`.
    pub fn new(n: u32, mass_sq: Rational, dots: BTreeMap<(u32, u32), Rational>) -> Self {
        assert!((1..=20).contains(&n), "leg count out of range");
        for i in 1..=n {
            for j in i + 1..=n {
                assert!(dots.contains_key(&(i, j)), "missing s_{i}_{j}");
            }
        }
        let size = 1usize << n;
        let mut squares = vec![Rational::zero(); size];
        for bits in 1..size as u32 {
            // add the lowest leg to the square of the remaining legs
            let low = bits.trailing_zeros() + 1;
            let rest = bits & (bits - 1);
            let mut v = &squares[rest as usize] + &mass_sq;
            let mut r = rest;
            while r != 0 {
                let j = r.trailing_zeros() + 1;
                v += rat(2) * &dots[&(low, j)];
                r &= r - 1;
            }
            squares[bits as usize] = v;
        }
        KinematicPoint {
            n,
            mass_sq,
            dots,
            squares,
        }
    }

    /// Draws integer-valued `M` and `s_i_j` until every propagator `P^2 - M`
    /// with `|P| >= 2` is nonzero.
    pub fn sample<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Self {
        loop {
            let mut draw = || rat(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE));
            let mass_sq = draw();
            let mut dots = BTreeMap::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    dots.insert((i, j), draw());
                }
            }
            let pt = KinematicPoint::new(n, mass_sq, dots);
            if pt.is_valid() {
                return pt;
            }
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mass_sq(&self) -> &Rational {
        &self.mass_sq
    }

    pub fn square(&self, legs: MomentumSubset) -> &Rational {
        &self.squares[legs.bits() as usize]
    }

    /// `P^2 - M`, the denominator of the propagator carrying the legs `P`.
    pub fn propagator_denominator(&self, legs: MomentumSubset) -> Rational {
        self.square(legs) - &self.mass_sq
    }

    /// No multi-leg subset puts its propagator on its pole.
    pub fn is_valid(&self) -> bool {
        (1..self.squares.len() as u32)
            .filter(|b| b.count_ones() >= 2)
            .all(|b| !self.propagator_denominator(MomentumSubset(b)).is_zero())
    }

    /// Assignment of `M` and all `s_i_j`, suitable for [`Polynomial::eval`].
    pub fn assignment(&self) -> BTreeMap<Var, Rational> {
        let mut out: BTreeMap<Var, Rational> = self
            .dots
            .iter()
            .map(|(&(i, j), v)| (Var::S(i, j), v.clone()))
            .collect();
        out.insert(Var::M, self.mass_sq.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn square_momentum_examples() {
        assert_eq!(square_momentum(MomentumSubset::leg(1)).to_string(), "M");
        assert_eq!(
            square_momentum(MomentumSubset::all(2)).to_string(),
            "2*M + 2*s_1_2"
        );
        assert_eq!(
            square_momentum(MomentumSubset::all(3)).to_string(),
            "3*M + 2*s_1_2 + 2*s_1_3 + 2*s_2_3"
        );
    }

    #[test]
    fn table_agrees_with_symbolic_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pt = KinematicPoint::sample(5, &mut rng);
        let asg = pt.assignment();
        for bits in 1..32u32 {
            let legs = MomentumSubset::from_bits(bits);
            assert_eq!(&square_momentum(legs).eval(&asg).unwrap(), pt.square(legs));
        }
    }

    #[test]
    fn detects_pole() {
        // 2M + 2 s_1_2 - M = 0 when s_1_2 = -M/2
        let dots: BTreeMap<_, _> = [((1, 2), rat(-3))].into();
        let pt = KinematicPoint::new(2, rat(6), dots);
        assert!(!pt.is_valid());
        assert!(pt.propagator_denominator(MomentumSubset::all(2)).is_zero());
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = KinematicPoint::sample(4, &mut ChaCha8Rng::seed_from_u64(42));
        let b = KinematicPoint::sample(4, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);
        assert!(a.is_valid());
    }
}
