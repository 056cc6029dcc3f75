//! JSON description of a curve model:
//! `{"branches":[{"center":"0","generators":[3,4,5]}]}`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Branch, RationalCurveModel};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSpec {
    /// Exact rational, `"p"` or `"p/q"`.
    pub center: String,
    pub generators: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub branches: Vec<BranchSpec>,
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn from_model(model: &RationalCurveModel) -> Self {
        Self {
            branches: model
                .branches()
                .iter()
                .map(|b| BranchSpec {
                    center: b.center.to_string(),
                    generators: b.semigroup.generators().to_vec(),
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<RationalCurveModel> {
        let branches = self
            .branches
            .iter()
            .map(|b| {
                let center = Rational::from_str(b.center.trim())
                    .map_err(|_| Error::Parse(format!("bad center {:?}", b.center)))?;
                Ok(Branch { center, semigroup: NumericalSemigroup::from_generators(&b.generators)? })
            })
            .collect::<Result<Vec<_>>>()?;
        RationalCurveModel::new(branches)
    }
}

impl FromStr for RationalCurveModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CurveSpec::parse(s)?.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    #[test]
    fn parses_example() {
        let c: RationalCurveModel =
            r#"{"branches":[{"center":"0","generators":[3,4,5]},{"center":"1/2","generators":[2,5]}]}"#
                .parse()
                .unwrap();
        assert_eq!(c.genus(), 4);
        assert_eq!(c.branches()[1].center, Rational::new(1.into(), 2.into()));
        assert_eq!(CurveSpec::from_model(&c).build().unwrap(), c);
        assert_eq!(c.branches()[0].center, rational(0));
    }

    #[test]
    fn reports_position() {
        let err = CurveSpec::parse("{\"branches\": [\n  {\"center\": 0,}\n]}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(RationalCurveModel::from_str(r#"{"branches":[{"center":"x","generators":[2,3]}]}"#).is_err());
    }
}
