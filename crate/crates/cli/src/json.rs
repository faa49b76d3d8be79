//! The on-disk form of an additive representation.

use serde::{Deserialize, Serialize};
use wzforms::{parse_expression, AdditiveRepresentation, IntegerLinearType, UniformPart};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepJson {
    pub vars: Vec<String>,
    pub exact: String,
    pub uniform: Vec<UniformJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformJson {
    #[serde(rename = "type")]
    pub v: Vec<i64>,
    pub r: String,
}

fn z() -> Vec<String> {
    vec!["Z".to_string()]
}

impl RepJson {
    pub fn from_rep(rep: &AdditiveRepresentation, vars: &[String]) -> Self {
        RepJson {
            vars: vars.to_vec(),
            exact: rep.exact_part.display(vars).to_string(),
            uniform: rep
                .uniform
                .iter()
                .map(|u| UniformJson { v: u.v.entries().to_vec(), r: u.r.display(&z()).to_string() })
                .collect(),
        }
    }

    pub fn to_rep(&self) -> Result<AdditiveRepresentation, String> {
        if self.vars.is_empty() {
            return Err("\"vars\" is empty".into());
        }
        let exact = parse_expression(&self.exact, &self.vars).map_err(|e| format!("\"exact\": {e}"))?;
        let mut uniform = Vec::new();
        for (k, u) in self.uniform.iter().enumerate() {
            if u.v.len() != self.vars.len() {
                return Err(format!("uniform[{k}]: type has {} entries, expected {}", u.v.len(), self.vars.len()));
            }
            let v = IntegerLinearType::new(u.v.clone()).map_err(|e| format!("uniform[{k}]: {e}"))?;
            let r = parse_expression(&u.r, &z()).map_err(|e| format!("uniform[{k}].r: {e}"))?;
            uniform.push(UniformPart { v, r });
        }
        AdditiveRepresentation::new(exact, uniform).map_err(|e| e.to_string())
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))
    }

    pub fn to_pretty_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// A tuple of components in one document: `{"vars": [...], "components": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    pub vars: Vec<String>,
    pub components: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_types() {
        let j = RepJson {
            vars: vec!["x".into(), "y".into()],
            exact: "0".into(),
            uniform: vec![UniformJson { v: vec![2, 4], r: "1/Z".into() }],
        };
        assert!(j.to_rep().is_err());
        let j = RepJson { uniform: vec![UniformJson { v: vec![1], r: "1/Z".into() }], ..j };
        assert!(j.to_rep().is_err());
    }

    #[test]
    fn unknown_keys_are_errors() {
        assert!(RepJson::parse(r#"{"vars":["x"],"exact":"0","uniform":[],"extra":1}"#).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn json_round_trip(seed in 0u64..100_000, n in 1usize..=4) {
            let params = wzforms::RandomParams { n, ..wzforms::RandomParams::default() };
            let rep = wzforms::random_additive_rep(seed, &params);
            let vars: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
            let j = RepJson::from_rep(&rep, &vars);
            let back = RepJson::parse(&j.to_pretty_string()).unwrap();
            proptest::prop_assert_eq!(&back, &j);
            proptest::prop_assert_eq!(back.to_rep().unwrap(), rep);
        }
    }
}
