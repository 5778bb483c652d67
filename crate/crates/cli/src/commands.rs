use std::collections::BTreeMap;
use std::fmt::Write;

use diffeo_core::amplitudes::{
    b_closed, b_direct, b_inverse, b_recurrence, sample_points, FeynmanRules,
};
use diffeo_core::bell::{bell_fast, BellArgs};
use diffeo_core::diffeoeq::{big_w_coeff, build_pq, check_smatrix, w_coeff};
use diffeo_core::exactalg::factorial_q;
use diffeo_core::legendre::{build_a, check_legendre_b_relation};
use diffeo_core::series::SeriesJson;
use diffeo_core::suites::LODAY_ORDER_CAP;
use diffeo_core::{
    invert, legendre, run_suite, Polynomial, Report, Series, Suite, SuiteConfig, Var,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::config::Settings;
use crate::{CliError, Export, Method};

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

/// Output for a run that includes verification reports: exit code 1 and a
/// diagnostic on stderr for every failed check.
fn finish(out: String, reports: &[Report]) -> Result<String, CliError> {
    let mut failed = false;
    for r in reports {
        for c in r.failures() {
            failed = true;
            eprintln!(
                "FAIL {} {}: {}",
                r.suite,
                c.name,
                c.detail.as_deref().unwrap_or("check failed")
            );
        }
    }
    if failed {
        Err(CliError::Failed(out))
    } else {
        Ok(out)
    }
}

fn reports_table(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        write!(out, "{r}").unwrap();
    }
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let passed: usize = reports.iter().map(Report::passed).sum();
    writeln!(out, "summary: {passed}/{total} checks passed").unwrap();
    out
}

fn reports_json(reports: &[Report]) -> serde_json::Value {
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let passed: usize = reports.iter().map(Report::passed).sum();
    json!({
        "passed": passed == total,
        "checks": total,
        "failed": total - passed,
        "reports": reports,
    })
}

pub fn bn(n: u32, method: Method, settings: &Settings) -> Result<String, CliError> {
    if n < 1 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let diffeo = settings.diffeo();
    let (name, poly, trials, independent) = match method {
        Method::Closed => ("closed", b_closed(&diffeo, n), 0, true),
        Method::Inverse => ("inverse", b_inverse(&diffeo, n), 0, true),
        Method::Direct | Method::Recurrence => {
            let rules = FeynmanRules::for_legs(&diffeo, n);
            let points = sample_points(n, settings.trials, settings.seed);
            let values: Vec<Polynomial> = points
                .par_iter()
                .map(|pt| match method {
                    Method::Direct => b_direct(n, &rules, pt),
                    _ => b_recurrence(n, &rules, pt),
                })
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Failed(format!("{e}\n")))?;
            let independent = values.iter().all(|v| v == &values[0]);
            let name = if method == Method::Direct {
                "direct"
            } else {
                "recurrence"
            };
            (name, values[0].clone(), settings.trials, independent)
        }
    };
    let out = if settings.json() {
        to_json(&json!({
            "n": n,
            "method": name,
            "poly": poly.to_string(),
            "trials": trials,
            "point_independent": independent,
        }))
    } else {
        format!("{poly}\n")
    };
    if independent {
        Ok(out)
    } else {
        eprintln!("FAIL b_{n} differs between kinematic points");
        Err(CliError::Failed(out))
    }
}

fn bell_args(n: usize, subst: &[String], settings: &Settings) -> Result<BellArgs, CliError> {
    let m = n.max(1);
    let diffeo = settings.diffeo();
    let args = match subst {
        [] => BellArgs::symbolic(m),
        [k] if k == "stirling" => BellArgs::ones(m),
        // arguments of the closed form for b_{n+1}
        [k] if k == "closed" => BellArgs::new(
            (1..=m as u32)
                .map(|i| diffeo.coeff(i).scale(&-factorial_q(i)))
                .collect(),
        ),
        // arguments of the interaction vertices w_n^{(s)}
        [k] if k == "smatrix" => BellArgs::new(
            (1..=m as u32)
                .map(|i| diffeo.coeff(i - 1).scale(&factorial_q(i)))
                .collect(),
        ),
        list => {
            let mut map = BTreeMap::new();
            for item in list {
                let (name, value) = item.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!("expected xi=<poly> or a keyword, got `{item}`"))
                })?;
                let var: Var = name
                    .trim()
                    .parse()
                    .map_err(|e| CliError::Usage(format!("{e}")))?;
                if !matches!(var, Var::X(_)) {
                    return Err(CliError::Usage(format!(
                        "only x_i can be substituted, not `{name}`"
                    )));
                }
                let poly: Polynomial = value
                    .trim()
                    .parse()
                    .map_err(|e| CliError::Usage(format!("{e}")))?;
                map.insert(var, poly);
            }
            let x = BellArgs::symbolic(m);
            BellArgs::new(x.as_slice().iter().map(|p| p.substitute(&map)).collect())
        }
    };
    Ok(args)
}

pub fn bell(n: usize, k: usize, subst: &[String], settings: &Settings) -> Result<String, CliError> {
    let args = bell_args(n, subst, settings)?;
    let poly = bell_fast(n, k, &args);
    Ok(if settings.json() {
        to_json(&json!({ "n": n, "k": k, "poly": poly.to_string() }))
    } else {
        format!("{poly}\n")
    })
}

pub fn verify(suite: Suite, settings: &Settings) -> Result<String, CliError> {
    let mut cfg = SuiteConfig::new(settings.order, settings.trials, settings.seed);
    cfg.theory = settings.theory();
    let reports = run_suite(suite, &cfg);
    let out = if settings.json() {
        to_json(&reports_json(&reports))
    } else {
        reports_table(&reports)
    };
    finish(out, &reports)
}

pub fn legendre(settings: &Settings) -> Result<String, CliError> {
    let diffeo = settings.diffeo();
    let n = settings.order as usize;
    let la = legendre::legendre_transform(&build_a(&diffeo, n + 1), n)
        .map_err(|e| CliError::Failed(format!("{e}\n")))?;
    let report = check_legendre_b_relation(&diffeo, settings.order, n.min(LODAY_ORDER_CAP));
    let out = if settings.json() {
        to_json(&json!({ "series": SeriesJson::from(&la), "report": report }))
    } else {
        let mut out = String::new();
        for (i, c) in la.coeffs().iter().enumerate() {
            writeln!(out, "L_{i} = {c}").unwrap();
        }
        write!(out, "{report}").unwrap();
        out
    };
    finish(out, &[report])
}

pub fn smatrix(degrees: &[u32], settings: &Settings) -> Result<String, CliError> {
    if let Some(s) = degrees.iter().find(|&&s| s < 3) {
        return Err(CliError::Usage(format!("vertex degree {s} is below 3")));
    }
    let theory = settings.theory();
    let mut values = Vec::new();
    for &s in degrees {
        for n in 1..=settings.order {
            values.push((s, n, big_w_coeff(&theory, s, n), w_coeff(&theory, s, n)));
        }
    }
    let report = check_smatrix(&theory, degrees, settings.order);
    let out = if settings.json() {
        let rows: Vec<_> = values
            .iter()
            .map(|(s, n, big, small)| json!({ "s": s, "n": n, "W": big.to_string(), "w": small.to_string() }))
            .collect();
        to_json(&json!({ "values": rows, "report": report }))
    } else {
        let mut out = String::new();
        for (s, n, big, small) in &values {
            writeln!(out, "s={s} n={n} W = {big} ; w = {small}").unwrap();
        }
        write!(out, "{report}").unwrap();
        out
    };
    finish(out, &[report])
}

fn inverse_series(settings: &Settings) -> Series {
    invert(&settings.diffeo().to_series(settings.order as usize))
        .expect("F is tangent to the identity")
        .to_egf()
}

pub fn inverse(settings: &Settings) -> Result<String, CliError> {
    let g = inverse_series(settings);
    Ok(if settings.json() {
        to_json(&SeriesJson::from(&g))
    } else {
        let mut out = String::new();
        for (n, c) in g.coeffs().iter().enumerate().skip(1) {
            writeln!(out, "b_{n} = {c}").unwrap();
        }
        out
    })
}

pub fn export(what: Export, settings: &Settings) -> Result<String, CliError> {
    let diffeo = settings.diffeo();
    let n = settings.order as usize;
    let series = match what {
        Export::Diffeo => diffeo.to_series(n),
        Export::Inverse => inverse_series(settings),
        Export::P => build_pq(&diffeo, n).p,
        Export::Q => build_pq(&diffeo, n).q,
        Export::Action => build_a(&diffeo, n).into_series(),
        Export::Legendre => legendre::legendre_transform(&build_a(&diffeo, n + 1), n)
            .map_err(|e| CliError::Failed(format!("{e}\n")))?,
    };
    Ok(to_json(&SeriesJson::from(&series)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_check_is_a_failure() {
        let mut r = Report::new("demo");
        r.push_eq("n=2 k=1", &Polynomial::int(1), &Polynomial::int(2));
        match finish("out".into(), &[r]) {
            Err(CliError::Failed(out)) => assert_eq!(out, "out"),
            other => panic!("expected failure, got {other:?}"),
        }
        assert!(finish("ok".into(), &[Report::new("empty")]).is_ok());
    }
}
