use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use gnatfam_core::rational::{format_q, format_vector};
use gnatfam_core::{
    build_lattice, canonical_set, check_reductor, classify_rays, enumerate_all, linear_equivalence,
    maxshift_set, minshift_set, orbits, validate_fan, ConeFailure, FacetFailure, FanReport,
    Instance, InstanceError, ReductorSet, Violation, DEFAULT_MAX_CATALOG,
};
use serde_json::{json, Map, Value};

use crate::files::{family_from_json, family_to_json, InstanceFile};

/// Settings shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub jobs: Option<usize>,
    pub max_catalog: u128,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            jobs: None,
            max_catalog: DEFAULT_MAX_CATALOG,
        }
    }
}

/// JSON written to stdout, plus whether the mathematical check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: Value,
    pub pass: bool,
}

impl Report {
    fn ok(body: Value) -> Report {
        Report { body, pass: true }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            2
        }
    }
}

/// An error that means the input was well formed but mathematically
/// unusable (exit code 2 rather than 1).
#[derive(Debug)]
pub struct MathFailure(pub String);

impl fmt::Display for MathFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for MathFailure {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Canonical,
    Maxshift,
    Minshift,
}

pub fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).context("reading stdin");
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path, opts: &Options) -> Result<Instance> {
    let doc = InstanceFile::parse(&read_input(path)?)?;
    let (group, fan) = doc.build_parts()?;
    match Instance::with_jobs(group, fan, opts.jobs) {
        Ok(inst) => Ok(inst),
        Err(InstanceError::InvalidFan(report)) => Err(MathFailure(format!(
            "the fan is not a smooth resolution: {}",
            failure_lines(&report).join("; ")
        ))
        .into()),
        Err(e) => Err(e.into()),
    }
}

fn failure_lines(report: &FanReport) -> Vec<String> {
    let mut out = Vec::new();
    for r in &report.non_primitive {
        out.push(format!("primitivity: ray {r} is not primitive in N"));
    }
    for (a, b) in &report.duplicate_rays {
        out.push(format!("primitivity: rays {a} and {b} coincide"));
    }
    for r in &report.outside_orthant {
        out.push(format!("orthant: ray {r} leaves the positive orthant"));
    }
    for c in &report.cone_failures {
        out.push(match c {
            ConeFailure::WrongArity { cone, rays } => {
                format!("smoothness: cone {cone} has {rays} rays")
            }
            ConeFailure::RepeatedRay { cone } => {
                format!("smoothness: cone {cone} repeats a ray")
            }
            ConeFailure::NotUnimodular { cone, det } => format!(
                "smoothness: cone {cone} has lattice determinant {}, not unimodular",
                format_q(det)
            ),
        });
    }
    for f in &report.facet_failures {
        out.push(match f {
            FacetFailure::Unpaired { facet, cones } => {
                format!("properness: interior facet {facet:?} lies in cones {cones:?}")
            }
            FacetFailure::Overlapping { facet, cones } => {
                format!("properness: cones {cones:?} overlap across facet {facet:?}")
            }
            FacetFailure::BoundaryShared { facet, cones } => {
                format!("properness: boundary facet {facet:?} lies in cones {cones:?}")
            }
        });
    }
    out
}

pub fn validate(path: &Path) -> Result<Report> {
    let doc = InstanceFile::parse(&read_input(path)?)?;
    let (group, fan) = doc.build_parts()?;
    let lattice = build_lattice(&group);
    let report = validate_fan(&fan, &lattice);
    let fan = classify_rays(&fan, &lattice);
    let rays: Vec<Value> = fan
        .rays()
        .iter()
        .map(|r| json!({"id": r.id, "vector": format_vector(&r.vector), "kind": r.kind.as_str()}))
        .collect();
    let body = json!({
        "pass": report.pass(),
        "dimension": group.dimension(),
        "group_order": group.order(),
        "checks": {
            "primitivity": report.primitivity_ok(),
            "orthant": report.orthant_ok(),
            "smoothness": report.smoothness_ok(),
            "properness": report.properness_ok(),
        },
        "failures": failure_lines(&report),
        "rays": rays,
        "cones": fan.cones(),
    });
    Ok(Report {
        body,
        pass: report.pass(),
    })
}

pub fn families(path: &Path, which: Which, opts: &Options) -> Result<Report> {
    let inst = load_instance(path, opts)?;
    let set = match which {
        Which::Canonical => canonical_set(&inst),
        Which::Maxshift => maxshift_set(&inst),
        Which::Minshift => minshift_set(&inst),
    };
    Ok(Report::ok(family_to_json(&inst, &set)))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumerateArgs {
    pub materialize: Option<PathBuf>,
    pub orbits: bool,
}

pub fn enumerate(path: &Path, args: &EnumerateArgs, opts: &Options) -> Result<Report> {
    let inst = load_instance(path, opts)?;
    let catalog = enumerate_all(&inst, opts.jobs);
    let per_ray: Map<String, Value> = catalog
        .per_ray
        .iter()
        .map(|s| (s.ray.to_string(), Value::from(s.len())))
        .collect();
    let mut body = Map::new();
    body.insert(
        "total".into(),
        Value::Number(catalog.total_count.to_string().parse()?),
    );
    body.insert("per_ray".into(), Value::Object(per_ray));

    if args.materialize.is_none() && !args.orbits {
        return Ok(Report::ok(Value::Object(body)));
    }
    let stream = catalog.families(opts.max_catalog)?;
    let mut kept: Vec<ReductorSet> = Vec::new();
    if let Some(dir) = &args.materialize {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let width = match catalog.total_u128() {
            Some(0) | Some(1) => 1,
            _ => (&catalog.total_count - 1u32).to_string().len(),
        };
        let mut written = 0usize;
        for (i, set) in stream.enumerate() {
            let file = dir.join(format!("family-{i:0width$}.json"));
            let text = serde_json::to_string_pretty(&family_to_json(&inst, &set))? + "\n";
            fs::write(&file, text).with_context(|| format!("writing {}", file.display()))?;
            written += 1;
            if args.orbits {
                kept.push(set);
            }
        }
        body.insert("materialized".into(), Value::from(written));
    } else {
        kept = stream.collect();
    }
    if args.orbits {
        let parts = orbits(&inst, &kept)?;
        body.insert(
            "orbit_sizes".into(),
            parts.iter().map(Vec::len).collect::<Vec<_>>().into(),
        );
        body.insert("orbits".into(), serde_json::to_value(&parts)?);
    }
    Ok(Report::ok(Value::Object(body)))
}

fn violation_json(inst: &Instance, v: &Violation) -> Value {
    let label = |c: usize| inst.characters().character(c).label();
    match v {
        Violation::GWeil {
            ray,
            character,
            coeff,
            expected_fract,
        } => json!({
            "kind": "g-weil",
            "ray": ray,
            "character": label(*character),
            "coefficient": format_q(coeff),
            "expected_fract": format_q(expected_fract),
        }),
        Violation::Inequality {
            ray,
            character,
            generator,
            value,
        } => json!({
            "kind": "inequality",
            "ray": ray,
            "character": label(*character),
            "generator": generator + 1,
            "target": label(inst.characters().successor(*generator, *character)),
            "value": format_q(value),
        }),
    }
}

pub fn check(path: &Path, set_path: &Path, opts: &Options) -> Result<Report> {
    let inst = load_instance(path, opts)?;
    let set = family_from_json(&inst, &read_input(set_path)?)?;
    let violations = check_reductor(&inst, &set);
    let body = json!({
        "pass": violations.is_empty(),
        "normalised": set.is_normalised(),
        "violations": violations.iter().map(|v| violation_json(&inst, v)).collect::<Vec<_>>(),
    });
    Ok(Report {
        body,
        pass: violations.is_empty(),
    })
}

/// Reports whether `b_chi - a_chi = div(x^m)` for one `m` and every
/// character; the witness is that `m`.
pub fn equiv(path: &Path, a: &Path, b: &Path, opts: &Options) -> Result<Report> {
    let inst = load_instance(path, opts)?;
    let a = family_from_json(&inst, &read_input(a)?)?;
    let b = family_from_json(&inst, &read_input(b)?)?;
    let witness = linear_equivalence(&inst, &b, &a);
    Ok(Report::ok(json!({
        "linearly_equivalent": witness.is_some(),
        "witness": witness,
    })))
}
