//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p gnatfam-cli --test acceptance`.

use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gnatfam_core::rational::{ceil_to_residue, fract};
use gnatfam_core::{
    brute_force_per_ray, canonical_set, char_shift, check_reductor, enumerate_all, maxshift_set,
    minshift_set, orbits, per_ray_solutions, reflect, FamilyCatalog, Generator, GroupSpec,
    Instance, QDivisor, RayKind, ReductorSet, DEFAULT_MAX_CATALOG, Q,
};
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Ctx) -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn gnatfam(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gnatfam"))
        .args(args)
        .env_remove("GNATFAM_MAX_CATALOG")
        .output()
        .map_err(|e| format!("spawning gnatfam: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn gnatfam_json(args: &[&str]) -> Result<Value, String> {
    let (code, stdout) = gnatfam(args)?;
    ensure!(code == 0, "gnatfam {args:?} exited with {code}");
    serde_json::from_slice(&stdout).map_err(|e| format!("gnatfam {args:?}: {e}"))
}

fn set_from(rows: Vec<Vec<(usize, Q)>>) -> ReductorSet {
    ReductorSet::new(rows.into_iter().map(QDivisor::from_pairs).collect())
}

struct SweepItem {
    r: u64,
    a: u64,
    inst: Instance,
    catalog: FamilyCatalog,
    file: PathBuf,
}

impl SweepItem {
    fn name(&self) -> String {
        format!("1/{}(1,{})", self.r, self.a)
    }

    fn per_ray_sets(&self) -> Vec<HashSet<&[Q]>> {
        self.catalog
            .per_ray
            .iter()
            .map(|s| s.solutions.iter().map(Vec::as_slice).collect())
            .collect()
    }
}

struct Ctx {
    sweep: Vec<SweepItem>,
    tmp: tempfile::TempDir,
}

fn sweep_pairs() -> Vec<(u64, u64)> {
    (2..=12u64)
        .flat_map(|r| (1..r).filter(move |&a| gcd(r, a) == 1).map(move |a| (r, a)))
        .collect()
}

fn in_catalog(sets: &[HashSet<&[Q]>], family: &ReductorSet) -> bool {
    sets.iter()
        .enumerate()
        .all(|(ray, set)| set.contains(family.column(ray).as_slice()))
}

/// A family supported on one ray, used to apply the symmetries to a single
/// per-ray column.
fn column_family(ray: usize, column: &[Q]) -> ReductorSet {
    ReductorSet::new(
        column
            .iter()
            .map(|&c| QDivisor::from_pairs([(ray, c)]))
            .collect(),
    )
}

fn a1_golden(_: &mut Ctx) -> Outcome {
    let start = Instant::now();
    let inst = Instance::minimal(&GroupSpec::cyclic(2, &[1, 1])).map_err(|e| e.to_string())?;
    let exceptional: Vec<usize> = inst
        .rays()
        .iter()
        .filter(|r| r.kind == RayKind::Exceptional)
        .map(|r| r.id)
        .collect();
    ensure!(exceptional == [1], "exceptional rays {exceptional:?}");
    let expected = set_from(vec![vec![], vec![(1, q(1, 2))]]);
    ensure!(
        maxshift_set(&inst) == expected,
        "maxshift {:?}",
        maxshift_set(&inst)
    );
    ensure!(
        canonical_set(&inst) == expected,
        "canonical {:?}",
        canonical_set(&inst)
    );
    let cat = enumerate_all(&inst, None);
    ensure!(cat.total_u128() == Some(2), "total {}", cat.total_count);
    for r in 0..inst.rays().len() {
        ensure!(
            per_ray_solutions(&inst, r) == brute_force_per_ray(&inst, r),
            "oracle mismatch at ray {r}"
        );
    }
    let fams = cat
        .materialize(DEFAULT_MAX_CATALOG)
        .map_err(|e| e.to_string())?;
    let orb = orbits(&inst, &fams).map_err(|e| e.to_string())?;
    ensure!(orb == vec![vec![0, 1]], "orbits {orb:?}");

    let file = fixtures().join("instances/cyclic_2_1_1.json");
    let file = file.to_str().unwrap();
    let counted = gnatfam_json(&["enumerate", "--count-only", file])?;
    ensure!(counted["total"] == 2, "cli total {}", counted["total"]);
    let ms = gnatfam_json(&["families", "maxshift", file])?;
    let canon = gnatfam_json(&["families", "canonical", file])?;
    let golden = json!({"0,0": {}, "1,0": {"1": "1/2"}});
    ensure!(
        ms == golden && canon == golden,
        "cli families {ms} / {canon}"
    );
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "maxshift = canonical = {{D_x = (1/2)E}}, total 2, one orbit of size 2 ({elapsed:.2?})"
    ))
}

fn a2_golden(_: &mut Ctx) -> Outcome {
    let start = Instant::now();
    let inst = Instance::minimal(&GroupSpec::cyclic(3, &[1, 2])).map_err(|e| e.to_string())?;
    let e1 = &inst.rays()[1].vector;
    let e2 = &inst.rays()[2].vector;
    ensure!(
        e1 == &[q(1, 3), q(2, 3)] && e2 == &[q(2, 3), q(1, 3)],
        "exceptional rays {e1:?} {e2:?}"
    );
    let expected = set_from(vec![
        vec![],
        vec![(1, q(1, 3)), (2, q(2, 3))],
        vec![(1, q(2, 3)), (2, q(1, 3))],
    ]);
    ensure!(
        maxshift_set(&inst) == expected,
        "maxshift {:?}",
        maxshift_set(&inst)
    );
    let cat = enumerate_all(&inst, None);
    let counts: Vec<usize> = cat.per_ray.iter().map(|s| s.len()).collect();
    ensure!(counts == [1, 3, 3, 1], "per-ray counts {counts:?}");
    ensure!(cat.total_u128() == Some(9), "total {}", cat.total_count);
    for r in 0..inst.rays().len() {
        ensure!(
            per_ray_solutions(&inst, r) == brute_force_per_ray(&inst, r),
            "oracle mismatch at ray {r}"
        );
    }
    let file = fixtures().join("instances/cyclic_3_1_2.json");
    let counted = gnatfam_json(&["enumerate", "--count-only", file.to_str().unwrap()])?;
    ensure!(
        counted == json!({"total": 9, "per_ray": {"0": 1, "1": 3, "2": 3, "3": 1}}),
        "cli count {counted}"
    );
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "maxshift = {{(1/3)E1+(2/3)E2, (2/3)E1+(1/3)E2}}, per-ray 3 and 3, total 9 ({elapsed:.2?})"
    ))
}

fn canonical_sweep(ctx: &mut Ctx) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (r, a) in sweep_pairs() {
        let inst = Instance::minimal(&GroupSpec::cyclic(r, &[1, a]))
            .map_err(|e| format!("1/{r}(1,{a}): {e}"))?;
        for (which, set) in [
            ("canonical", canonical_set(&inst)),
            ("maxshift", maxshift_set(&inst)),
        ] {
            let v = check_reductor(&inst, &set);
            ensure!(
                v.is_empty(),
                "1/{r}(1,{a}) {which}: {} violations, first {}",
                v.len(),
                v[0]
            );
            ensure!(
                set.is_normalised(),
                "1/{r}(1,{a}) {which} is not normalised"
            );
        }
        checked += 1;
        let catalog = enumerate_all(&inst, None);
        let file = ctx.tmp.path().join(format!("cyclic_{r}_1_{a}.json"));
        let body = json!({"dimension": 2, "group": {"generators": [{"order": r, "weights": [1, a]}]}, "fan": "minimal"});
        std::fs::write(&file, body.to_string()).map_err(|e| e.to_string())?;
        ctx.sweep.push(SweepItem {
            r,
            a,
            inst,
            catalog,
            file,
        });
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "sweep took {elapsed:?}");
    Ok(format!(
        "{checked} instances, zero violations, all normalised ({elapsed:.2?})"
    ))
}

/// Per-ray search over a box one unit wider than the bounds on each side.
fn widened_solutions(inst: &Instance, ray: usize) -> Vec<Vec<Q>> {
    let t = inst.characters();
    let k = t.len();
    let axes: Vec<Vec<Q>> = (0..k)
        .map(|chi| {
            if chi == 0 {
                return vec![Q::from_integer(0)];
            }
            let lo = -inst.max_shift_coeff(ray, t.inverse(chi)) - 1;
            let hi = inst.max_shift_coeff(ray, chi) + 1;
            let mut v = ceil_to_residue(lo, inst.canonical_coeff(ray, chi));
            let mut out = Vec::new();
            while v <= hi {
                out.push(v);
                v += 1;
            }
            out
        })
        .collect();
    let weights = &inst.rays()[ray].vector;
    let mut idx = vec![0usize; k];
    let mut found = Vec::new();
    loop {
        let point: Vec<Q> = idx.iter().zip(&axes).map(|(&i, a)| a[i]).collect();
        let ok = (0..k).all(|chi| {
            weights
                .iter()
                .enumerate()
                .all(|(i, w)| point[chi] + w >= point[t.successor(i, chi)])
        });
        if ok {
            found.push(point);
        }
        let mut d = k;
        loop {
            if d == 0 {
                return found;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < axes[d].len() {
                break;
            }
            idx[d] = 0;
        }
    }
}

fn bounds_property(ctx: &mut Ctx) -> Outcome {
    let mut columns = 0usize;
    let mut members = 0u128;
    let mut materialized = 0;
    let mut widened = 0;
    for item in &ctx.sweep {
        let inst = &item.inst;
        let t = inst.characters();
        for sols in &item.catalog.per_ray {
            let ray = sols.ray;
            for col in &sols.solutions {
                for (chi, &d) in col.iter().enumerate() {
                    let upper = inst.max_shift_coeff(ray, chi);
                    let lower = -inst.max_shift_coeff(ray, t.inverse(chi));
                    ensure!(
                        lower <= d && d <= upper,
                        "{} ray {ray} character {chi}: {d} outside [{lower}, {upper}]",
                        item.name()
                    );
                }
                columns += 1;
            }
            if item.r <= 7 {
                let mut wide = widened_solutions(inst, ray);
                wide.sort();
                ensure!(
                    wide == sols.solutions,
                    "{} ray {ray}: widened box finds {} solutions, catalog has {}",
                    item.name(),
                    wide.len(),
                    sols.len()
                );
                widened += 1;
            }
        }
        let sets = item.per_ray_sets();
        let (upper, lower) = (maxshift_set(inst), minshift_set(inst));
        ensure!(
            in_catalog(&sets, &upper),
            "{}: maxshift family not in catalog",
            item.name()
        );
        ensure!(
            in_catalog(&sets, &lower),
            "{}: minshift family not in catalog",
            item.name()
        );
        for chi in 0..t.len() {
            for ray in 0..inst.rays().len() {
                ensure!(
                    upper.coeff(chi, ray) == inst.max_shift_coeff(ray, chi)
                        && lower.coeff(chi, ray) == -inst.max_shift_coeff(ray, t.inverse(chi)),
                    "{}: extremal families do not attain the bounds",
                    item.name()
                );
            }
        }
        if let Ok(stream) = item.catalog.families(DEFAULT_MAX_CATALOG) {
            let (mut saw_upper, mut saw_lower) = (false, false);
            for fam in stream {
                for chi in 0..t.len() {
                    for ray in 0..inst.rays().len() {
                        let d = fam.coeff(chi, ray);
                        ensure!(
                            d <= inst.max_shift_coeff(ray, chi)
                                && d >= -inst.max_shift_coeff(ray, t.inverse(chi)),
                            "{}: member violates the bounds at character {chi}, ray {ray}",
                            item.name()
                        );
                    }
                }
                saw_upper |= fam == upper;
                saw_lower |= fam == lower;
                members += 1;
            }
            ensure!(
                saw_upper && saw_lower,
                "{}: bound not attained in stream",
                item.name()
            );
            materialized += 1;
        }
    }
    Ok(format!(
        "{materialized}/{} catalogs materialized ({members} members checked directly), \
         {columns} per-ray columns covering all {} catalogs; maxshift and minshift attain both bounds; \
         widened box finds nothing outside the bounds on {widened} rays (r <= 7)",
        ctx.sweep.len(),
        ctx.sweep.len()
    ))
}

fn symmetry_closure(ctx: &mut Ctx) -> Outcome {
    let mut columns = 0usize;
    let mut members = 0u128;
    let mut materialized = 0;
    for item in &ctx.sweep {
        let inst = &item.inst;
        let t = inst.characters();
        let k = t.len();
        // per-ray: every column, every shift, the reflection and the laws
        for sols in &item.catalog.per_ray {
            let ray = sols.ray;
            let set: HashSet<&[Q]> = sols.solutions.iter().map(Vec::as_slice).collect();
            for col in &sols.solutions {
                let fam = column_family(ray, col);
                let refl = reflect(inst, &fam);
                ensure!(
                    set.contains(refl.column(ray).as_slice()),
                    "{} ray {ray}: reflection leaves the catalog",
                    item.name()
                );
                ensure!(
                    reflect(inst, &refl) == fam,
                    "{}: reflect twice != id",
                    item.name()
                );
                let shifts: Vec<ReductorSet> = (0..k).map(|l| char_shift(inst, &fam, l)).collect();
                for (l, shifted) in shifts.iter().enumerate() {
                    ensure!(
                        set.contains(shifted.column(ray).as_slice()),
                        "{} ray {ray}: shift by character {l} leaves the catalog",
                        item.name()
                    );
                    for m in 0..k {
                        ensure!(
                            char_shift(inst, shifted, m) == shifts[t.mul(l, m)],
                            "{} ray {ray}: shift composition fails for ({l}, {m})",
                            item.name()
                        );
                    }
                }
                columns += 1;
            }
        }
        // whole families, where the catalog fits under the cap
        let sets = item.per_ray_sets();
        if let Ok(stream) = item.catalog.families(DEFAULT_MAX_CATALOG) {
            let small = item.catalog.total_u128().is_some_and(|n| n <= 10_000);
            let mut all = Vec::new();
            for fam in stream {
                let refl = reflect(inst, &fam);
                ensure!(
                    in_catalog(&sets, &refl),
                    "{}: reflection leaves the catalog",
                    item.name()
                );
                ensure!(
                    reflect(inst, &refl) == fam,
                    "{}: reflect twice != id",
                    item.name()
                );
                for l in 0..k {
                    let shifted = char_shift(inst, &fam, l);
                    ensure!(
                        in_catalog(&sets, &shifted),
                        "{}: shift leaves the catalog",
                        item.name()
                    );
                }
                if small {
                    all.push(fam);
                }
                members += 1;
            }
            if small {
                let orb = orbits(inst, &all).map_err(|e| format!("{}: {e}", item.name()))?;
                ensure!(
                    orb.iter().map(Vec::len).sum::<usize>() == all.len(),
                    "{}: orbits do not partition the catalog",
                    item.name()
                );
            }
            materialized += 1;
        }
    }
    Ok(format!(
        "shift and reflection images stay in the catalog for {members} materialized members \
         ({materialized}/{} catalogs) and for all {columns} per-ray columns of every catalog; \
         reflect∘reflect = id and the shift composition law hold",
        ctx.sweep.len()
    ))
}

/// Every point of the full product box (all rays at once) that passes
/// `check_reductor`, in lexicographic order.
fn whole_box(inst: &Instance) -> Vec<ReductorSet> {
    let t = inst.characters();
    let (k, nrays) = (t.len(), inst.rays().len());
    let mut axes: Vec<Vec<Q>> = Vec::new();
    for ray in 0..nrays {
        for chi in 0..k {
            let lo = -inst.max_shift_coeff(ray, t.inverse(chi));
            let hi = inst.max_shift_coeff(ray, chi);
            let mut v = ceil_to_residue(lo, inst.canonical_coeff(ray, chi));
            let mut vals = Vec::new();
            while v <= hi {
                vals.push(v);
                v += 1;
            }
            axes.push(vals);
        }
    }
    let mut found = Vec::new();
    if axes.iter().any(Vec::is_empty) {
        return found;
    }
    let mut idx = vec![0usize; axes.len()];
    loop {
        let set = ReductorSet::new(
            (0..k)
                .map(|chi| {
                    QDivisor::from_pairs(
                        (0..nrays).map(|ray| (ray, axes[ray * k + chi][idx[ray * k + chi]])),
                    )
                })
                .collect(),
        );
        if check_reductor(inst, &set).is_empty() {
            found.push(set);
        }
        let mut d = idx.len();
        loop {
            if d == 0 {
                return found;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < axes[d].len() {
                break;
            }
            idx[d] = 0;
        }
    }
}

fn oracle_equivalence(ctx: &mut Ctx) -> Outcome {
    let start = Instant::now();
    let mut rays = 0;
    for item in &ctx.sweep {
        for sols in &item.catalog.per_ray {
            let brute = brute_force_per_ray(&item.inst, sols.ray);
            ensure!(
                &brute == sols,
                "{} ray {}: search {} vs brute force {}",
                item.name(),
                sols.ray,
                sols.len(),
                brute.len()
            );
            rays += 1;
        }
    }
    let mut small: Vec<(String, Instance)> = ctx
        .sweep
        .iter()
        .filter(|i| i.inst.group().order() <= 4)
        .map(|i| (i.name(), i.inst.clone()))
        .collect();
    let build =
        |spec: GroupSpec, rays: Vec<Vec<Q>>, cones: Vec<Vec<usize>>| -> Result<Instance, String> {
            let group =
                gnatfam_core::build_group(&spec, &Default::default()).map_err(|e| e.to_string())?;
            let fan =
                gnatfam_core::Fan::new(spec.dimension, rays, cones).map_err(|e| e.to_string())?;
            Instance::new(group, fan).map_err(|e| e.to_string())
        };
    let (o, h, l) = (q(0, 1), q(1, 2), q(1, 1));
    small.push((
        "1/2(1,1,0)+1/2(0,1,1)".into(),
        build(
            GroupSpec::new(
                3,
                vec![
                    Generator::new(2, vec![1, 1, 0]),
                    Generator::new(2, vec![0, 1, 1]),
                ],
            ),
            vec![
                vec![l, o, o],
                vec![o, l, o],
                vec![o, o, l],
                vec![h, h, o],
                vec![o, h, h],
                vec![h, o, h],
            ],
            vec![vec![0, 3, 5], vec![1, 3, 4], vec![2, 4, 5], vec![3, 4, 5]],
        )?,
    ));
    small.push((
        "1/2(1,0)+1/2(0,1)".into(),
        Instance::minimal(&GroupSpec::new(
            2,
            vec![Generator::new(2, vec![1, 0]), Generator::new(2, vec![0, 1])],
        ))
        .map_err(|e| e.to_string())?,
    ));
    small.push((
        "1/4(1,2)".into(),
        Instance::minimal(&GroupSpec::cyclic(4, &[1, 2])).map_err(|e| e.to_string())?,
    ));
    let mut names = Vec::new();
    for (name, inst) in &small {
        let fams = enumerate_all(inst, None)
            .materialize(DEFAULT_MAX_CATALOG)
            .map_err(|e| e.to_string())?;
        let boxed = whole_box(inst);
        ensure!(
            boxed == fams,
            "{name}: whole-box brute force finds {} families, catalog has {}",
            boxed.len(),
            fams.len()
        );
        names.push(format!("{name}:{}", fams.len()));
    }
    Ok(format!(
        "{rays} rays across the sweep match element for element; whole-catalog box equals the catalog on {} ({:.2?})",
        names.join(", "),
        start.elapsed()
    ))
}

fn finiteness(ctx: &mut Ctx) -> Outcome {
    let mut totals = HashMap::new();
    for item in &ctx.sweep {
        let file = item.file.to_str().unwrap();
        let (code, base) = gnatfam(&["enumerate", "--count-only", file])?;
        ensure!(code == 0, "{}: exit {code}", item.name());
        for jobs in ["1", "2", "8"] {
            let (code, out) = gnatfam(&["--jobs", jobs, "enumerate", "--count-only", file])?;
            ensure!(
                code == 0 && out == base,
                "{}: output differs with --jobs {jobs}",
                item.name()
            );
        }
        let (_, again) = gnatfam(&["enumerate", "--count-only", file])?;
        ensure!(
            again == base,
            "{}: output differs between runs",
            item.name()
        );
        let v: Value = serde_json::from_slice(&base).map_err(|e| e.to_string())?;
        let total = v["total"].to_string();
        ensure!(
            total == item.catalog.total_count.to_string(),
            "{}: cli total {total} vs library {}",
            item.name(),
            item.catalog.total_count
        );
        totals.insert(item.name(), total);
    }
    let largest = ctx
        .sweep
        .iter()
        .max_by_key(|i| &i.catalog.total_count)
        .map(|i| format!("{} = {}", i.name(), i.catalog.total_count))
        .unwrap_or_default();
    Ok(format!(
        "{} finite totals, byte-identical over 2 runs and --jobs 1/2/8 (largest {largest})",
        totals.len()
    ))
}

fn ghilb_fixture(_: &mut Ctx) -> Outcome {
    let mut formula_mismatches = Vec::new();
    for r in [2u64, 3, 4] {
        let inst_file = fixtures().join(format!("instances/cyclic_{r}_1_{}.json", r - 1));
        let fixture_file = fixtures().join(format!("ghilb/maxshift_r{r}.json"));
        let fixture: Value = serde_json::from_str(
            &std::fs::read_to_string(&fixture_file).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let got = gnatfam_json(&["families", "maxshift", inst_file.to_str().unwrap()])?;
        ensure!(
            got == fixture,
            "r={r}: maxshift {got} differs from fixture {fixture}"
        );

        let inst =
            Instance::minimal(&GroupSpec::cyclic(r, &[1, r - 1])).map_err(|e| e.to_string())?;
        let t = inst.characters();
        let g = inst.group();
        for k in 0..r as i64 {
            let chi = t
                .index_of(&g.monomial_weight(&gnatfam_core::Monomial::new(vec![k, 0])))
                .ok_or("missing character")?;
            for j in 1..r as i64 {
                let coeff = inst.max_shift_coeff(j as usize, chi);
                if coeff != fract(q(k * j, r as i64)) {
                    formula_mismatches.push(format!("r={r} j={j} k={k}: M={coeff}"));
                }
            }
        }
    }
    let note = if formula_mismatches.is_empty() {
        "closed form fract(kj/r) agrees everywhere".to_string()
    } else {
        format!(
            "closed form fract(kj/r) differs where M is a positive integer: {}",
            formula_mismatches.join("; ")
        )
    };
    Ok(format!(
        "maxshift equals the box-search fixture for r = 2, 3, 4; {note}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("A1 golden", a1_golden),
        ("A2 golden", a2_golden),
        ("canonical-validity sweep", canonical_sweep),
        ("bounds property", bounds_property),
        ("symmetry closure", symmetry_closure),
        ("oracle equivalence", oracle_equivalence),
        ("finiteness and reproducibility", finiteness),
        ("G-Hilb cross-check", ghilb_fixture),
    ];
    let mut ctx = Ctx {
        sweep: Vec::new(),
        tmp: tempfile::tempdir().expect("temporary directory"),
    };
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run(&mut ctx) {
            Ok(detail) => println!(
                "PASS [{}] {name}: {detail} [{:.2?}]",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} [{:.2?}]", i + 1, start.elapsed());
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
