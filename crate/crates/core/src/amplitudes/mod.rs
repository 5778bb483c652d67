//! Tree amplitudes of the transformed free theory with one off-shell edge.
//!
//! `b_n` is the sum over all trees with `n` on-shell legs hanging below a
//! distinguished edge `e`, propagator of `e` included. Kinematics are
//! evaluated at exact rational points while the `a_j` stay symbolic, so
//! every amplitude is a polynomial in the `a_j` and momentum independence
//! shows up as equality across sample points.
//!
//! Factors of `i` are removed throughout: a tree with `V` vertices has `V`
//! propagators, so its `i`-power is `i^{2V} = (-1)^V` and each vertex carries
//! a real sign of `-1`.

mod kinematics;
mod trees;

use std::collections::HashMap;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bell::{BellTable, RestrictedGrowth};
use crate::exactalg::{factorial, factorial_q, frac, rat, Polynomial, Rational};
use crate::report::Report;
use crate::series::{invert, Diffeomorphism};

pub use kinematics::{square_momentum, KinematicPoint, MomentumSubset, SAMPLE_RANGE};
pub use trees::{enumerate_trees, Node, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmpError {
    #[error("propagator on its pole for legs {0:?}")]
    ZeroDenominator(Vec<u32>),
}

/// `d_r = r! sum_{j=0}^r (j+1)(r-j+1) a_j a_{r-j}`, the kinematic vertex coefficient.
pub fn d_coeff(diffeo: &Diffeomorphism, r: u32) -> Polynomial {
    let sum: Polynomial = (0..=r)
        .map(|j| {
            (&diffeo.coeff(j) * &diffeo.coeff(r - j)).scale_int(((j + 1) * (r - j + 1)) as i64)
        })
        .sum();
    sum.scale(&factorial_q(r))
}

/// `c_n = (n+2)! sum_{j=0}^n a_j a_{n-j}`, the massive vertex coefficient.
pub fn c_coeff(diffeo: &Diffeomorphism, n: u32) -> Polynomial {
    let sum: Polynomial = (0..=n)
        .map(|j| &diffeo.coeff(j) * &diffeo.coeff(n - j))
        .sum();
    sum.scale(&factorial_q(n + 2))
}

/// Vertex coefficients `d_r`, `c_r` for vertices of degree `3 ..= max_degree`.
#[derive(Clone, Debug)]
pub struct FeynmanRules {
    diffeo: Diffeomorphism,
    half_d: Vec<Polynomial>,
    half_c: Vec<Polynomial>,
}

impl FeynmanRules {
    pub fn new(diffeo: &Diffeomorphism, max_degree: u32) -> Self {
        let top = max_degree.saturating_sub(2);
        let half = frac(1, 2);
        FeynmanRules {
            diffeo: diffeo.clone(),
            half_d: (0..=top).map(|r| d_coeff(diffeo, r).scale(&half)).collect(),
            half_c: (0..=top).map(|r| c_coeff(diffeo, r).scale(&half)).collect(),
        }
    }

    /// Rules good for every tree with `n` legs below `e` (vertex degree up to `n + 1`).
    pub fn for_legs(diffeo: &Diffeomorphism, n: u32) -> Self {
        FeynmanRules::new(diffeo, n + 1)
    }

    pub fn diffeo(&self) -> &Diffeomorphism {
        &self.diffeo
    }

    pub fn max_degree(&self) -> u32 {
        self.half_d.len() as u32 + 1
    }

    /// Kinematic plus massive vertex, `d_{k-2}/2 sum p^2 - M c_{k-2}/2`, for degree `k >= 3`.
    pub fn vertex(&self, degree: u32, sum_sq: &Rational, mass_sq: &Rational) -> Polynomial {
        assert!(degree >= 3, "vertices have degree at least 3");
        assert!(
            degree <= self.max_degree(),
            "rules built for degree <= {}",
            self.max_degree()
        );
        let r = (degree - 2) as usize;
        self.half_d[r].scale(sum_sq) - self.half_c[r].scale(mass_sq)
    }
}

fn pole(legs: MomentumSubset) -> AmpError {
    AmpError::ZeroDenominator(legs.legs().collect())
}

/// Value of one tree: the product over vertices of `-vertex / (P^2 - M)`,
/// where `P` is the momentum on the edge above the vertex. A bare leg is 1.
pub fn tree_value(
    tree: &Tree,
    rules: &FeynmanRules,
    pt: &KinematicPoint,
) -> Result<Polynomial, AmpError> {
    fn go(
        node: &Node,
        rules: &FeynmanRules,
        pt: &KinematicPoint,
    ) -> Result<(Polynomial, MomentumSubset), AmpError> {
        match node {
            Node::Leaf(i) => Ok((Polynomial::one(), MomentumSubset::leg(*i))),
            Node::Vertex(children) => {
                let mut value = Polynomial::one();
                let mut legs: Option<MomentumSubset> = None;
                let mut sum_sq = Rational::zero();
                for c in children {
                    let (v, l) = go(c, rules, pt)?;
                    value = &value * &v;
                    sum_sq += pt.square(l);
                    legs = Some(legs.map_or(l, |x| x.union(l)));
                }
                let legs = legs.expect("vertices have children");
                sum_sq += pt.square(legs);
                let denom = pt.propagator_denominator(legs);
                if denom.is_zero() {
                    return Err(pole(legs));
                }
                let vertex = rules.vertex(children.len() as u32 + 1, &sum_sq, pt.mass_sq());
                Ok((&value * &vertex.scale(&(-denom.recip())), legs))
            }
        }
    }
    Ok(go(tree.root(), rules, pt)?.0)
}

/// `b_n` as the explicit sum over all trees.
pub fn b_direct(n: u32, rules: &FeynmanRules, pt: &KinematicPoint) -> Result<Polynomial, AmpError> {
    enumerate_trees(n)
        .par_bridge()
        .map(|t| tree_value(&t, rules, pt))
        .try_reduce(Polynomial::zero, |a, b| Ok(a + b))
}

/// `b_n` by the recursion over the edges directly below `e`:
///
/// ```text
/// b_S = - sum_{P_1 ⊔ … ⊔ P_k = S, k >= 2} prod b_{P_i}
///         (k-1)!/2 sum_j a_j a_{k-1-j} (-M (k+1) k + (j+1)(k-j)(sum_i P_i^2 + S^2))
///         / (S^2 - M)
/// ```
///
/// Sub-amplitudes are memoized per leg subset, so nothing here assumes they
/// are momentum independent.
pub fn b_recurrence(
    n: u32,
    rules: &FeynmanRules,
    pt: &KinematicPoint,
) -> Result<Polynomial, AmpError> {
    let diffeo = rules.diffeo();
    // coefficient pairs of the numerator for each number k of children
    let pairs: Vec<Vec<(Polynomial, i64)>> = (0..=n)
        .map(|k| {
            (0..k)
                .map(|j| {
                    (
                        &diffeo.coeff(j) * &diffeo.coeff(k - 1 - j),
                        ((j + 1) * (k - j)) as i64,
                    )
                })
                .collect()
        })
        .collect();
    let mut memo: HashMap<MomentumSubset, Polynomial> = HashMap::new();
    recurse(MomentumSubset::all(n), &pairs, pt, &mut memo)
}

fn recurse(
    set: MomentumSubset,
    pairs: &[Vec<(Polynomial, i64)>],
    pt: &KinematicPoint,
    memo: &mut HashMap<MomentumSubset, Polynomial>,
) -> Result<Polynomial, AmpError> {
    if set.len() == 1 {
        return Ok(Polynomial::one());
    }
    if let Some(v) = memo.get(&set) {
        return Ok(v.clone());
    }
    let labels: Vec<u32> = set.legs().collect();
    let total_sq = pt.square(set).clone();
    let denom = pt.propagator_denominator(set);
    if denom.is_zero() {
        return Err(pole(set));
    }
    let m = pt.mass_sq();
    let mut total = Polynomial::zero();
    for rgs in RestrictedGrowth::new(labels.len(), None) {
        let k = rgs.iter().max().map_or(0, |x| x + 1);
        if k < 2 {
            continue;
        }
        let mut bits = vec![0u32; k];
        for (i, &b) in rgs.iter().enumerate() {
            bits[b] |= 1 << (labels[i] - 1);
        }
        let mut product = Polynomial::one();
        let mut child_sq = Rational::zero();
        for &b in &bits {
            let block = MomentumSubset::from_bits(b);
            product = &product * &recurse(block, pairs, pt, memo)?;
            child_sq += pt.square(block);
        }
        let kk = k as i64;
        let momenta = &child_sq + &total_sq;
        let mass_part = -(m * rat(kk * (kk + 1)));
        let mut numerator = Polynomial::zero();
        for (aa, w) in &pairs[k] {
            numerator += aa.scale(&(&mass_part + &momenta * rat(*w)));
        }
        let numerator = numerator.scale(&(factorial_q(k as u32 - 1) * frac(1, 2)));
        total += &product * &numerator;
    }
    let value = total.scale(&(-denom.recip()));
    memo.insert(set, value.clone());
    Ok(value)
}

/// `b_0 ..= b_{n_max}` from `b_{m+1} = sum_{k=1}^m (m+k)!/m! B_{m,k}(-1! a_1, -2! a_2, …)`,
/// with `b_0 = 0` and `b_1 = 1`.
pub fn b_closed_table(diffeo: &Diffeomorphism, n_max: u32) -> Vec<Polynomial> {
    let m_max = n_max.saturating_sub(1) as usize;
    let args: Vec<Polynomial> = (1..=m_max.max(1) as u32)
        .map(|j| diffeo.coeff(j).scale(&-factorial_q(j)))
        .collect();
    let table = BellTable::new(&args, m_max);
    let mut out = vec![Polynomial::zero(); n_max as usize + 1];
    if n_max >= 1 {
        out[1] = Polynomial::one();
    }
    for m in 1..=m_max {
        out[m + 1] = (1..=m)
            .map(|k| {
                let w = Rational::new(factorial((m + k) as u32), factorial(m as u32));
                table.get(m, k).scale(&w)
            })
            .sum();
    }
    out
}

/// `b_n` from the Bell polynomial closed form; no kinematics involved.
pub fn b_closed(diffeo: &Diffeomorphism, n: u32) -> Polynomial {
    b_closed_table(diffeo, n)
        .pop()
        .expect("table has n + 1 entries")
}

/// `n!` times the coefficient of `t^n` in the compositional inverse of `F`.
pub fn b_inverse(diffeo: &Diffeomorphism, n: u32) -> Polynomial {
    let inverse = invert(&diffeo.to_series(n as usize)).expect("F is tangent to the identity");
    inverse
        .to_egf()
        .coeff(n as usize)
        .cloned()
        .expect("within order")
}

/// `trials` seeded kinematic points for `n` legs, drawn in sequence from one stream.
pub fn sample_points(n: u32, trials: usize, seed: u64) -> Vec<KinematicPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| KinematicPoint::sample(n, &mut rng))
        .collect()
}

/// On-shell vanishing of the `n`-point amplitude `(p_e^2 - M) b_{n-1}`: checks
/// that `b_{n-1}` is the same polynomial at every sampled point (so the
/// amplitude vanishes at `p_e^2 = M`) and that it matches the closed form.
pub fn onshell_amplitude_check(
    diffeo: &Diffeomorphism,
    n: u32,
    trials: usize,
    seed: u64,
) -> Report {
    assert!(n >= 3, "on-shell amplitudes start at three legs");
    let legs = n - 1;
    let mut report = Report::new("onshell");
    let rules = FeynmanRules::for_legs(diffeo, legs);
    let points = sample_points(legs, trials, seed);
    let values: Vec<Result<Polynomial, AmpError>> = points
        .par_iter()
        .map(|pt| b_direct(legs, &rules, pt))
        .collect();
    let mut reference: Option<Polynomial> = None;
    for (i, v) in values.into_iter().enumerate() {
        let name = format!("n={n} point={i}");
        match v {
            Err(e) => report.push(name, false, Some(e.to_string())),
            Ok(v) => match &reference {
                None => {
                    report.push(name, true, None);
                    reference = Some(v);
                }
                Some(r) => {
                    report.push_eq(name, &v, r);
                }
            },
        }
    }
    if let Some(r) = reference {
        report.push_eq(format!("n={n} closed form"), &r, &b_closed(diffeo, legs));
    }
    report
}

/// Agreement of the tree sum, the recursion, the closed form and series
/// inversion for `1 <= n <= n_tree` (tree routes at one sampled point) and of
/// closed form and inversion for `n <= n_closed`.
pub fn four_way_check(diffeo: &Diffeomorphism, n_tree: u32, n_closed: u32, seed: u64) -> Report {
    let mut report = Report::new("four-way");
    let closed = b_closed_table(diffeo, n_closed.max(n_tree));
    let inverse = invert(&diffeo.to_series(n_closed.max(n_tree) as usize))
        .expect("F is tangent to the identity")
        .to_egf();
    for n in 1..=n_tree {
        let rules = FeynmanRules::for_legs(diffeo, n);
        let pt = &sample_points(n, 1, seed ^ u64::from(n))[0];
        match (b_direct(n, &rules, pt), b_recurrence(n, &rules, pt)) {
            (Ok(direct), Ok(rec)) => {
                report.push_eq(format!("n={n} direct=recurrence"), &direct, &rec);
                report.push_eq(format!("n={n} direct=closed"), &direct, &closed[n as usize]);
            }
            (Err(e), _) | (_, Err(e)) => report.push(format!("n={n}"), false, Some(e.to_string())),
        }
    }
    for n in 1..=n_closed {
        report.push_eq(
            format!("n={n} closed=inverse"),
            &closed[n as usize],
            inverse.coeff(n as usize).expect("within order"),
        );
    }
    report
}
