//! Partial Bell polynomials `B_{n,k}(x_1, x_2, …)`.
//!
//! Three independent evaluation routes are provided:
//!
//! * [`bell_oracle`] enumerates the set partitions of `{1..n}` into `k` blocks;
//! * [`BellTable::new`] (and [`bell_fast`]) uses the rooted-block recurrence
//!   `k B_{n,k} = sum_s C(n,s) x_s B_{n-s,k-1}` with a memo table;
//! * [`BellTable::from_integer_partitions`] sums the multinomial closed form
//!   over integer partitions of `n` with `k` parts.
//!
//! The identity suites in [`checks`] evaluate through the third route so that
//! none of them is a restatement of the recurrence used by the fast path.

pub mod checks;
mod partitions;

use std::collections::HashMap;

use num_traits::Zero;

use crate::exactalg::{binomial_q, factorial, rat, Polynomial, Rational, Var};

pub use checks::{
    check_cvijovic, check_genfunc_definition, check_lemma_localization, check_starter,
};
pub use partitions::{integer_partitions, set_partitions, RestrictedGrowth, SetPartition};

/// Arguments `x_1, x_2, …` of a Bell polynomial; `get(i)` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellArgs(Vec<Polynomial>);

impl BellArgs {
    /// `x_1 ..= x_m` as the indeterminates `x1 … xm`.
    pub fn symbolic(m: usize) -> Self {
        BellArgs((1..=m as u32).map(|i| Polynomial::var(Var::X(i))).collect())
    }

    pub fn ones(m: usize) -> Self {
        BellArgs(vec![Polynomial::one(); m])
    }

    pub fn new(xs: Vec<Polynomial>) -> Self {
        BellArgs(xs)
    }

    /// `x_i` for `i >= 1`. Panics when the argument list is too short.
    pub fn get(&self, i: usize) -> &Polynomial {
        assert!(i >= 1, "Bell arguments are 1-based");
        self.0.get(i - 1).unwrap_or_else(|| {
            panic!(
                "Bell argument x{i} requested but only {} given",
                self.0.len()
            )
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Polynomial] {
        &self.0
    }
}

/// All `B_{n,k}` for `0 <= k <= n <= n_max` over one fixed argument list.
#[derive(Clone, Debug)]
pub struct BellTable {
    rows: Vec<Vec<Polynomial>>,
    zero: Polynomial,
}

impl BellTable {
    /// Memoized recurrence `k B_{n,k} = sum_{s=1}^{n-k+1} C(n,s) x_s B_{n-s,k-1}`.
    ///
    /// `args[i]` is `x_{i+1}`; at least `n_max` arguments are required.
    pub fn new(args: &[Polynomial], n_max: usize) -> Self {
        let args = BellArgs(args.to_vec());
        let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut row = vec![Polynomial::zero(); n + 1];
            if n == 0 {
                row[0] = Polynomial::one();
            }
            for k in 1..=n {
                let mut acc = Polynomial::zero();
                for s in 1..=n - k + 1 {
                    let prev = &rows[n - s][k - 1];
                    let x = args.get(s);
                    if prev.is_zero() || x.is_zero() {
                        continue;
                    }
                    acc += (x * prev).scale(&binomial_q(n as u32, s as u32));
                }
                row[k] = acc.scale(&Rational::new(1.into(), (k as i64).into()));
            }
            rows.push(row);
        }
        BellTable {
            rows,
            zero: Polynomial::zero(),
        }
    }

    /// Closed form `sum_lambda n! / prod(j_i! (i!)^{j_i}) prod x_i^{j_i}` over
    /// integer partitions `lambda = 1^{j_1} 2^{j_2} …` of `n` with `k` parts.
    pub fn from_integer_partitions(args: &[Polynomial], n_max: usize) -> Self {
        let args = BellArgs(args.to_vec());
        let rows = (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        integer_partitions(n as u32, k as u32)
                            .into_iter()
                            .map(|parts| {
                                let mut mult: HashMap<u32, u32> = HashMap::new();
                                for p in parts {
                                    *mult.entry(p).or_default() += 1;
                                }
                                let mut denom = num_bigint::BigInt::from(1);
                                let mut term = Polynomial::one();
                                for (&i, &j) in &mult {
                                    denom *=
                                        factorial(j) * num_traits::pow(factorial(i), j as usize);
                                    term = &term * &args.get(i as usize).pow(j);
                                }
                                term.scale(&Rational::new(factorial(n as u32), denom))
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        BellTable {
            rows,
            zero: Polynomial::zero(),
        }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `B_{n,k}`; zero whenever `k > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> &Polynomial {
        let row = &self.rows[n];
        row.get(k).unwrap_or(&self.zero)
    }
}

/// `B_{n,k}` by direct enumeration of set partitions into `k` blocks.
pub fn bell_oracle(n: usize, k: usize, args: &BellArgs) -> Polynomial {
    let mut shapes: HashMap<Vec<usize>, u64> = HashMap::new();
    for rgs in RestrictedGrowth::new(n, Some(k)) {
        let mut sizes = vec![0usize; k];
        for b in rgs {
            sizes[b] += 1;
        }
        sizes.sort_unstable();
        *shapes.entry(sizes).or_default() += 1;
    }
    let mut out = Polynomial::zero();
    for (sizes, count) in shapes {
        let term = sizes
            .iter()
            .fold(Polynomial::one(), |acc, &s| &acc * args.get(s));
        out += term.scale(&rat(count as i64));
    }
    out
}

/// `B_{n,k}` through the memoized recurrence.
pub fn bell_fast(n: usize, k: usize, args: &BellArgs) -> Polynomial {
    if k > n {
        return Polynomial::zero();
    }
    BellTable::new(args.as_slice(), n).get(n, k).clone()
}

/// Stirling numbers of the second kind from `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: usize, k: usize) -> Rational {
    let mut row = vec![Rational::zero(); k + 1];
    row[0] = rat(1);
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = &row[j] * rat(j as i64) + &row[j - 1];
        }
        row[0] = Rational::zero();
    }
    row[k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn oracle_examples() {
        let x = BellArgs::symbolic(6);
        assert_eq!(bell_oracle(3, 2, &x), p("3*x1*x2"));
        assert_eq!(bell_oracle(5, 5, &x), p("x1^5"));
        assert_eq!(bell_oracle(5, 1, &x), p("x5"));
        assert_eq!(bell_oracle(0, 0, &x), p("1"));
        assert!(bell_oracle(3, 0, &x).is_zero());
        assert!(bell_oracle(2, 3, &x).is_zero());
    }

    #[test]
    fn fast_examples() {
        let x = BellArgs::symbolic(6);
        assert_eq!(bell_fast(4, 2, &x), p("4*x1*x3 + 3*x2^2"));
        assert_eq!(bell_fast(6, 6, &x), p("x1^6"));
        assert!(bell_fast(3, 5, &x).is_zero());
    }

    #[test]
    fn three_routes_agree_symbolically() {
        let n_max = 10;
        let x = BellArgs::symbolic(n_max);
        let fast = BellTable::new(x.as_slice(), n_max);
        let closed = BellTable::from_integer_partitions(x.as_slice(), n_max);
        for n in 0..=n_max {
            for k in 0..=n {
                let oracle = bell_oracle(n, k, &x);
                assert_eq!(fast.get(n, k), &oracle, "fast B({n},{k})");
                assert_eq!(closed.get(n, k), &oracle, "closed B({n},{k})");
            }
        }
    }

    fn partition_count(n: i64, k: i64) -> usize {
        // p(n,k) = p(n-1,k-1) + p(n-k,k)
        match (n, k) {
            (0, 0) => 1,
            _ if n <= 0 || k <= 0 || k > n => 0,
            _ => partition_count(n - 1, k - 1) + partition_count(n - k, k),
        }
    }

    #[test]
    fn monomial_count_is_partition_count() {
        let x = BellArgs::symbolic(12);
        let table = BellTable::new(x.as_slice(), 12);
        for n in 1..=12 {
            for k in 1..=n {
                assert_eq!(
                    table.get(n, k).num_terms(),
                    partition_count(n as i64, k as i64),
                    "B({n},{k})"
                );
            }
        }
    }

    #[test]
    fn ones_give_stirling_numbers() {
        let table = BellTable::new(BellArgs::ones(12).as_slice(), 12);
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(
                    table.get(n, k).as_constant().unwrap(),
                    stirling2(n, k),
                    "S({n},{k})"
                );
            }
        }
        assert_eq!(stirling2(10, 4), rat(34105));
    }

    proptest! {
        #[test]
        fn numeric_routes_agree(xs in proptest::collection::vec(-20i64..20, 8), n in 0usize..=8, k in 0usize..=8) {
            let args = BellArgs::new(xs.iter().map(|&v| Polynomial::int(v)).collect());
            prop_assert_eq!(bell_fast(n, k, &args), bell_oracle(n, k, &args));
        }
    }
}
