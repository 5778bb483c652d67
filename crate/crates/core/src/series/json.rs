use serde::{Deserialize, Serialize};

use crate::exactalg::Polynomial;

use super::{Kind, Series, SeriesError};

/// Wire form of a [`Series`]:
/// `{"kind":"egf","variable":"t","truncation":N,"coefficients":[{"n":0,"poly":"0"},…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub kind: Kind,
    pub variable: String,
    pub truncation: usize,
    pub coefficients: Vec<SeriesTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub n: usize,
    pub poly: String,
}

impl From<&Series> for SeriesJson {
    fn from(s: &Series) -> Self {
        SeriesJson {
            kind: s.kind,
            variable: "t".to_string(),
            truncation: s.order(),
            coefficients: s
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| SeriesTerm {
                    n,
                    poly: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&SeriesJson> for Series {
    type Error = SeriesError;

    fn try_from(j: &SeriesJson) -> Result<Self, Self::Error> {
        if j.variable != "t" {
            return Err(SeriesError::Malformed(format!(
                "variable must be t, got {}",
                j.variable
            )));
        }
        let mut coeffs: Vec<Option<Polynomial>> = vec![None; j.truncation + 1];
        for term in &j.coefficients {
            let slot = coeffs.get_mut(term.n).ok_or_else(|| {
                SeriesError::Malformed(format!("n = {} beyond truncation", term.n))
            })?;
            if slot.is_some() {
                return Err(SeriesError::Malformed(format!("duplicate n = {}", term.n)));
            }
            let poly = term
                .poly
                .parse()
                .map_err(|e| SeriesError::Malformed(format!("n = {}: {e}", term.n)))?;
            *slot = Some(poly);
        }
        let coeffs = coeffs
            .into_iter()
            .enumerate()
            .map(|(n, c)| c.ok_or_else(|| SeriesError::Malformed(format!("missing n = {n}"))))
            .collect::<Result<_, _>>()?;
        Ok(Series::new(j.kind, coeffs))
    }
}

impl Series {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Series, SeriesError> {
        let j: SeriesJson =
            serde_json::from_str(s).map_err(|e| SeriesError::Malformed(e.to_string()))?;
        Series::try_from(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Diffeomorphism;

    #[test]
    fn wire_format() {
        let s = Diffeomorphism::generic().to_series(2);
        assert_eq!(
            s.to_json(),
            r#"{"kind":"ogf","variable":"t","truncation":2,"coefficients":[{"n":0,"poly":"0"},{"n":1,"poly":"1"},{"n":2,"poly":"a1"}]}"#
        );
        assert_eq!(Series::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn rejects_incomplete() {
        let bad =
            r#"{"kind":"egf","variable":"t","truncation":1,"coefficients":[{"n":0,"poly":"0"}]}"#;
        assert!(Series::from_json(bad).is_err());
        let dup = r#"{"kind":"egf","variable":"t","truncation":0,"coefficients":[{"n":0,"poly":"0"},{"n":0,"poly":"1"}]}"#;
        assert!(Series::from_json(dup).is_err());
        let var =
            r#"{"kind":"egf","variable":"x","truncation":0,"coefficients":[{"n":0,"poly":"0"}]}"#;
        assert!(Series::from_json(var).is_err());
    }
}
