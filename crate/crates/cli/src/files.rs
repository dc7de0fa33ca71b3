//! On-disk formats: instance descriptions and family files.
//!
//! Rationals are always JSON strings (`"p/q"` in lowest terms, or `"p"`).

use std::collections::BTreeSet;

use anyhow::{anyhow, bail, Context, Result};
use gnatfam_core::rational::{format_q, format_vector, parse_q, parse_vector};
use gnatfam_core::{
    build_group, build_lattice, minimal_resolution_2d, BuildOptions, Fan, Generator, GroupSpec,
    Instance, QDivisor, ReductorSet, Q,
};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanSpec {
    Minimal,
    Explicit {
        rays: Vec<Vec<Q>>,
        cones: Vec<Vec<usize>>,
    },
}

/// A parsed instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub group: GroupSpec,
    pub quotient_nonfaithful: bool,
    pub fan: FanSpec,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    dimension: usize,
    group: RawGroup,
    fan: Value,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    #[serde(default)]
    generators: Vec<RawGenerator>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    quotient_nonfaithful: bool,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    order: u64,
    weights: Vec<u64>,
}

fn parse_ray(value: &Value, idx: usize) -> Result<Vec<Q>> {
    let parsed = match value {
        Value::String(s) => parse_vector(s).map_err(|e| anyhow!(e)),
        Value::Array(parts) => parts
            .iter()
            .map(|p| match p {
                Value::String(s) => parse_q(s).map_err(|e| anyhow!(e)),
                Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap())),
                other => Err(anyhow!("expected a rational string, got {other}")),
            })
            .collect(),
        other => Err(anyhow!("expected a string like \"1/2,1/2\", got {other}")),
    };
    parsed.with_context(|| format!("fan ray {idx}"))
}

fn parse_fan(value: &Value, dimension: usize) -> Result<FanSpec> {
    match value {
        Value::String(s) if s == "minimal" => {
            if dimension != 2 {
                bail!("fan \"minimal\" is only available in dimension 2, got {dimension}");
            }
            Ok(FanSpec::Minimal)
        }
        Value::String(s) => bail!("unknown fan {s:?}; use \"minimal\" or {{\"rays\", \"cones\"}}"),
        Value::Object(obj) => {
            if let Some(key) = obj.keys().find(|k| *k != "rays" && *k != "cones") {
                bail!("unknown fan field {key:?}");
            }
            let rays = obj
                .get("rays")
                .and_then(Value::as_array)
                .context("fan.rays must be a list")?
                .iter()
                .enumerate()
                .map(|(i, r)| parse_ray(r, i))
                .collect::<Result<Vec<_>>>()?;
            let cones =
                serde_json::from_value(obj.get("cones").cloned().context("fan.cones is missing")?)
                    .context("fan.cones must be a list of ray index lists")?;
            Ok(FanSpec::Explicit { rays, cones })
        }
        other => bail!("fan must be \"minimal\" or an object, got {other}"),
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        let raw: RawInstance = serde_json::from_str(text).context("malformed instance file")?;
        if raw.dimension == 0 {
            bail!("dimension must be positive");
        }
        let generators = raw
            .group
            .generators
            .into_iter()
            .map(|g| Generator::new(g.order, g.weights))
            .collect();
        Ok(InstanceFile {
            group: GroupSpec::new(raw.dimension, generators),
            quotient_nonfaithful: raw.group.quotient_nonfaithful,
            fan: parse_fan(&raw.fan, raw.dimension)?,
        })
    }

    /// Canonical JSON form; `parse(to_json())` returns `self`.
    pub fn to_json(&self) -> Value {
        let fan = match &self.fan {
            FanSpec::Minimal => Value::from("minimal"),
            FanSpec::Explicit { rays, cones } => serde_json::json!({
                "rays": rays.iter().map(|r| format_vector(r)).collect::<Vec<_>>(),
                "cones": cones,
            }),
        };
        let raw = RawInstance {
            dimension: self.group.dimension,
            group: RawGroup {
                generators: self
                    .group
                    .generators
                    .iter()
                    .map(|g| RawGenerator {
                        order: g.order,
                        weights: g.weights.clone(),
                    })
                    .collect(),
                quotient_nonfaithful: self.quotient_nonfaithful,
            },
            fan,
        };
        serde_json::to_value(raw).expect("instance serializes")
    }

    /// Builds the group and the fan without validating the fan.
    pub fn build_parts(&self) -> Result<(gnatfam_core::AbelianGroup, Fan)> {
        let opts = BuildOptions {
            quotient_nonfaithful: self.quotient_nonfaithful,
            ..BuildOptions::default()
        };
        let group = build_group(&self.group, &opts)?;
        let fan = match &self.fan {
            FanSpec::Minimal => minimal_resolution_2d(&build_lattice(&group))?,
            FanSpec::Explicit { rays, cones } => {
                Fan::new(self.group.dimension, rays.clone(), cones.clone())?
            }
        };
        Ok((group, fan))
    }
}

/// Serializes a reductor set as `{character label -> {ray id -> "p/q"}}`.
///
/// Every character appears, in table order; zero coefficients are omitted and
/// ray ids are listed in increasing numeric order.
pub fn family_to_json(inst: &Instance, set: &ReductorSet) -> Value {
    let mut out = Map::new();
    for (chi, c) in inst.characters().characters().iter().enumerate() {
        let coeffs: Map<String, Value> = set
            .divisor(chi)
            .iter()
            .map(|(ray, q)| (ray.to_string(), Value::from(format_q(&q))))
            .collect();
        out.insert(c.label(), Value::Object(coeffs));
    }
    Value::Object(out)
}

fn parse_label(label: &str) -> Result<Vec<i64>> {
    label
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| {
            format!("character label {label:?} is not a comma separated exponent vector")
        })
}

fn parse_coeff(value: &Value) -> Result<Q> {
    match value {
        Value::String(s) => parse_q(s).map_err(|e| anyhow!(e)),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap())),
        other => bail!("expected a rational string, got {other}"),
    }
}

/// Parses a family file against `inst`. Labels may be any exponent vector of
/// the right length; absent characters get the zero divisor.
pub fn family_from_json(inst: &Instance, text: &str) -> Result<ReductorSet> {
    let value: Value = serde_json::from_str(text).context("malformed family file")?;
    let obj = value
        .as_object()
        .context("family file must be a JSON object")?;
    let group = inst.group();
    let table = inst.characters();
    let nrays = inst.rays().len();
    let mut divisors = vec![QDivisor::zero(); table.len()];
    let mut seen = BTreeSet::new();
    for (label, coeffs) in obj {
        let m = parse_label(label)?;
        if m.len() != inst.dimension() {
            bail!(
                "character label {label:?} has {} entries, expected {}",
                m.len(),
                inst.dimension()
            );
        }
        let chi = table
            .index_of(&group.reduce(&m))
            .expect("every reduced exponent is a character");
        if !seen.insert(chi) {
            bail!("character {label:?} appears more than once");
        }
        let coeffs = coeffs
            .as_object()
            .with_context(|| format!("entry for {label:?} must be an object"))?;
        for (ray, q) in coeffs {
            let r: usize = ray
                .trim()
                .parse()
                .with_context(|| format!("ray id {ray:?} under {label:?} is not an integer"))?;
            if r >= nrays {
                bail!("ray id {r} under {label:?} is out of range (the fan has {nrays} rays)");
            }
            let q = parse_coeff(q).with_context(|| format!("coefficient at {label:?}, ray {r}"))?;
            divisors[chi].set(r, q);
        }
    }
    Ok(ReductorSet::new(divisors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gnatfam_core::maxshift_set;

    const A2: &str = r#"{"dimension": 2, "group": {"generators": [{"order": 3, "weights": [1, 2]}]}, "fan": "minimal"}"#;

    #[test]
    fn instance_round_trip() {
        let doc = InstanceFile::parse(A2).unwrap();
        assert_eq!(
            InstanceFile::parse(&doc.to_json().to_string()).unwrap(),
            doc
        );

        let explicit = r#"{"dimension": 2, "group": {"generators": [{"order": 2, "weights": [1, 1]}]},
            "fan": {"rays": [["1", "0"], "1/2,1/2", "0,1"], "cones": [[0, 1], [1, 2]]}}"#;
        let doc = InstanceFile::parse(explicit).unwrap();
        let json = doc.to_json();
        assert_eq!(json["fan"]["rays"][1], "1/2,1/2");
        assert_eq!(InstanceFile::parse(&json.to_string()).unwrap(), doc);
    }

    #[test]
    fn instance_errors() {
        assert!(InstanceFile::parse("{").is_err());
        assert!(InstanceFile::parse(&A2.replace("minimal", "maximal")).is_err());
        let three = A2.replace("\"dimension\": 2", "\"dimension\": 3");
        assert!(InstanceFile::parse(&three).is_err());
        let unreduced = r#"{"dimension": 2, "group": {"generators": []},
            "fan": {"rays": ["2/2,0", "0,1"], "cones": [[0, 1]]}}"#;
        assert!(InstanceFile::parse(unreduced).is_err());
    }

    #[test]
    fn family_round_trip() {
        let doc = InstanceFile::parse(A2).unwrap();
        let (g, f) = doc.build_parts().unwrap();
        let inst = Instance::new(g, f).unwrap();
        let set = maxshift_set(&inst);
        let json = family_to_json(&inst, &set);
        assert_eq!(json["1,0"]["1"], "1/3");
        let back = family_from_json(&inst, &json.to_string()).unwrap();
        assert_eq!(back, set);
        assert_eq!(family_to_json(&inst, &back).to_string(), json.to_string());
    }

    #[test]
    fn family_labels_are_reduced() {
        let doc = InstanceFile::parse(A2).unwrap();
        let (g, f) = doc.build_parts().unwrap();
        let inst = Instance::new(g, f).unwrap();
        // y has the same weight as x^2
        let set = family_from_json(&inst, r#"{"0,1": {"1": "2/3"}}"#).unwrap();
        assert_eq!(set.coeff(2, 1), Q::new(2, 3));
        assert!(family_from_json(&inst, r#"{"0,1": {}, "2,0": {}}"#).is_err());
        assert!(family_from_json(&inst, r#"{"1,0": {"9": "1"}}"#).is_err());
        assert!(family_from_json(&inst, r#"{"1": {}}"#).is_err());
    }
}
