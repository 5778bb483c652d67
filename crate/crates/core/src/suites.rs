//! Named verification suites, run with one shared configuration.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplitudes::{four_way_check, onshell_amplitude_check};
use crate::bell::{
    bell_fast, bell_oracle, check_cvijovic, check_genfunc_definition, check_lemma_localization,
    check_starter, BellArgs,
};
use crate::diffeoeq::{
    check_ode, check_recurrence2, check_recurrence3, check_smatrix, InteractingTheory,
};
use crate::legendre::check_legendre_b_relation;
use crate::report::Report;
use crate::series::Diffeomorphism;

/// Largest leg count for which trees are enumerated one by one.
pub const TREE_ORDER_CAP: u32 = 6;
/// Largest order for the plane-tree inverse formula.
pub const LODAY_ORDER_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Genfunc,
    Localization,
    Starter,
    Cvijovic,
    Oracle,
    Ode,
    Recurrences,
    Smatrix,
    Amplitudes,
    Legendre,
    All,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Genfunc,
        Suite::Localization,
        Suite::Starter,
        Suite::Cvijovic,
        Suite::Oracle,
        Suite::Ode,
        Suite::Recurrences,
        Suite::Smatrix,
        Suite::Amplitudes,
        Suite::Legendre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Genfunc => "genfunc",
            Suite::Localization => "localization",
            Suite::Starter => "starter",
            Suite::Cvijovic => "cvijovic",
            Suite::Oracle => "oracle",
            Suite::Ode => "ode",
            Suite::Recurrences => "recurrences",
            Suite::Smatrix => "smatrix",
            Suite::Amplitudes => "amplitudes",
            Suite::Legendre => "legendre",
            Suite::All => "all",
        }
    }

    /// The Bell polynomial identity suites.
    pub fn is_bell(self) -> bool {
        matches!(
            self,
            Suite::Genfunc | Suite::Localization | Suite::Starter | Suite::Cvijovic | Suite::Oracle
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Inputs shared by all suites.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Truncation order / largest `n` checked.
    pub order: u32,
    /// Kinematic points per amplitude.
    pub trials: usize,
    pub seed: u64,
    pub theory: InteractingTheory,
}

impl SuiteConfig {
    pub fn new(order: u32, trials: usize, seed: u64) -> Self {
        SuiteConfig {
            order,
            trials,
            seed,
            theory: InteractingTheory::new(Diffeomorphism::generic()),
        }
    }

    pub fn diffeo(&self) -> &Diffeomorphism {
        self.theory.diffeo()
    }
}

/// Partition oracle against the recurrence for `0 <= k <= n <= n_max`.
pub fn check_oracle(n_max: usize) -> Report {
    let mut report = Report::new("oracle");
    let x = BellArgs::symbolic(n_max.max(1));
    for n in 0..=n_max {
        for k in 0..=n {
            report.push_eq(
                format!("n={n} k={k}"),
                &bell_oracle(n, k, &x),
                &bell_fast(n, k, &x),
            );
        }
    }
    report
}

/// Kinematic independence of `b_n` for `2 <= n <= n_max` over `trials` points.
pub fn check_kinematics(
    diffeo: &Diffeomorphism,
    n_max: u32,
    trials: usize,
    seed: u64,
) -> Vec<Report> {
    (2..=n_max)
        .map(|n| {
            let mut r =
                onshell_amplitude_check(diffeo, n + 1, trials, seed.wrapping_add(u64::from(n)));
            r.suite = format!("kinematics-{n}");
            r
        })
        .collect()
}

/// Runs one suite (or all of them) and returns its reports in a fixed order.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<Report> {
    let n = cfg.order as usize;
    let f = cfg.diffeo();
    match suite {
        Suite::Genfunc => vec![check_genfunc_definition(n, n)],
        Suite::Localization => vec![check_lemma_localization(n)],
        Suite::Starter => vec![check_starter(n)],
        Suite::Cvijovic => check_cvijovic(n),
        Suite::Oracle => vec![check_oracle(n)],
        Suite::Ode => vec![check_ode(f, n)],
        Suite::Recurrences => vec![
            check_recurrence2(f, cfg.order),
            check_recurrence3(f, cfg.order),
        ],
        Suite::Smatrix => vec![check_smatrix(&cfg.theory, &[3, 4, 5], cfg.order)],
        Suite::Amplitudes => {
            let tree_n = cfg.order.min(TREE_ORDER_CAP);
            let mut out = vec![four_way_check(f, tree_n, cfg.order, cfg.seed)];
            out.extend(check_kinematics(f, tree_n, cfg.trials, cfg.seed));
            out
        }
        Suite::Legendre => vec![check_legendre_b_relation(
            f,
            cfg.order,
            n.min(LODAY_ORDER_CAP),
        )],
        Suite::All => Suite::ALL
            .par_iter()
            .map(|&s| run_suite(s, cfg))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn all_small() {
        let reports = run_suite(Suite::All, &SuiteConfig::new(4, 3, 1));
        for r in &reports {
            assert!(r.all_passed(), "{r}");
        }
        let again = run_suite(Suite::All, &SuiteConfig::new(4, 3, 1));
        assert_eq!(reports, again);
    }
}
