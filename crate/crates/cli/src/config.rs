use std::collections::BTreeMap;
use std::path::Path;

use diffeo_core::diffeoeq::InteractingTheory;
use diffeo_core::exactalg::parse_rational;
use diffeo_core::{Diffeomorphism, Polynomial, Rational, Suite, Var};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_ORDER: u32 = 8;
pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    #[default]
    Table,
    Json,
}

/// Contents of a `--config` file. Every field is optional; flags given on
/// the command line take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub order: Option<u32>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    /// Variable name to exact rational, e.g. `{"a1": "2", "l3": "-1/2"}`.
    #[serde(default)]
    pub coeffs: BTreeMap<String, String>,
    pub output: Option<Output>,
    pub suite: Option<Suite>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Fully resolved settings for one run.
#[derive(Clone, Debug)]
pub struct Settings {
    pub order: u32,
    pub trials: usize,
    pub seed: u64,
    pub output: Output,
    pub coeffs: Vec<(Var, Rational)>,
}

impl Settings {
    pub fn resolve(
        config: &RunConfig,
        order: Option<u32>,
        trials: Option<usize>,
        seed: Option<u64>,
        coeffs: &[String],
        json: bool,
    ) -> Result<Self, CliError> {
        let order = order.or(config.order).unwrap_or(DEFAULT_ORDER);
        let trials = trials.or(config.trials).unwrap_or(DEFAULT_TRIALS);
        if order < 1 {
            return Err(CliError::Usage("order must be at least 1".into()));
        }
        if trials < 1 {
            return Err(CliError::Usage("trials must be at least 1".into()));
        }
        let mut map: BTreeMap<Var, Rational> = BTreeMap::new();
        for (name, value) in &config.coeffs {
            map.insert(parse_var(name)?, parse_value(name, value)?);
        }
        for item in coeffs {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected name=value, got `{item}`")))?;
            map.insert(parse_var(name.trim())?, parse_value(name, value.trim())?);
        }
        let output = if json {
            Output::Json
        } else {
            config.output.unwrap_or_default()
        };
        Ok(Settings {
            order,
            trials,
            seed: seed.or(config.seed).unwrap_or(DEFAULT_SEED),
            output,
            coeffs: map.into_iter().collect(),
        })
    }

    pub fn json(&self) -> bool {
        self.output == Output::Json
    }

    pub fn diffeo(&self) -> Diffeomorphism {
        let mut d = Diffeomorphism::generic();
        for (v, c) in &self.coeffs {
            if let Var::A(j) = v {
                d = d.with_coeff(*j, Polynomial::constant(c.clone()));
            }
        }
        d
    }

    pub fn theory(&self) -> InteractingTheory {
        let mut t = InteractingTheory::new(self.diffeo());
        for (v, c) in &self.coeffs {
            if let Var::L(s) = v {
                t = t.with_coupling(*s, Polynomial::constant(c.clone()));
            }
        }
        t
    }
}

fn parse_var(name: &str) -> Result<Var, CliError> {
    let v: Var = name.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    match v {
        Var::A(_) | Var::L(_) => Ok(v),
        _ => Err(CliError::Usage(format!(
            "only a_j and l_s can be fixed, not `{name}`"
        ))),
    }
}

fn parse_value(name: &str, value: &str) -> Result<Rational, CliError> {
    parse_rational(value).map_err(|e| CliError::Usage(format!("value for {name}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"order":5,"seed":9,"coeffs":{"a1":"2"},"output":"json"}"#)
                .unwrap();
        let s = Settings::resolve(
            &cfg,
            Some(7),
            None,
            None,
            &["a1=3".into(), "l3=-1/2".into()],
            false,
        )
        .unwrap();
        assert_eq!(s.order, 7);
        assert_eq!(s.seed, 9);
        assert_eq!(s.trials, DEFAULT_TRIALS);
        assert!(s.json());
        assert_eq!(s.diffeo().coeff(1), Polynomial::int(3));
        assert_eq!(s.theory().coupling(3).to_string(), "-1/2");
    }

    #[test]
    fn rejects_bad_input() {
        let cfg = RunConfig::default();
        assert!(Settings::resolve(&cfg, Some(0), None, None, &[], false).is_err());
        assert!(Settings::resolve(&cfg, None, None, None, &["M=1".into()], false).is_err());
        assert!(Settings::resolve(&cfg, None, None, None, &["a1".into()], false).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"orders":1}"#).is_err());
    }
}
