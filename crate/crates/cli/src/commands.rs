use crate::config::{build_family, CliError, CliResult, NuValue, Num, Tolerances};
use crate::output::{sink, write_csv, write_csv_records, write_json, Format};
use crate::Common;
use clap::Args;
use hyperbilliards::conditions::{
    elliptic_periodicity_condition, lightlike_condition, periodicity_condition, printed_g,
    proportionality, random_family, verify_discriminant_factorization, ConditionReport, NuArg,
};
use hyperbilliards::dynamics::{
    detect_closure, random_boundary_start, random_interior_start, run, BilliardTable, RunOutcome,
};
use hyperbilliards::exact::poly::RatPoly;
use hyperbilliards::exact::ring::Rational;
use hyperbilliards::exec::{par_map, workers};
use hyperbilliards::extremal::{
    chebyshev_pell_residual, degenerate_caustic_conditions, lightlike_period4_pell,
    pell_from_periodicity, zolotarev_m1_residuals, zolotarev_transverse_period3,
};
use hyperbilliards::minkowski::{caustic_of_plane, ConfocalFamily, HPoint, MVec3, TableKind};
use hyperbilliards::rotation::{
    case_decomposition, find_caustic_for_rotation, homology_residual, rotation_number,
    sturm_zero_count, QuarticSpec, RotationCase,
};
use hyperbilliards::topology::{
    census as census_of, classify_level_set, count_components_numeric, LevelNote,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::PathBuf;

/// Resolved common options.
struct Ctx {
    fam: ConfocalFamily,
    tol: Tolerances,
    format: Format,
    config: Map<String, Value>,
}

impl Ctx {
    fn new(command: &str, c: &Common, default_format: Format) -> CliResult<Ctx> {
        let fam = build_family(
            c.table.as_deref(),
            c.a.as_deref(),
            c.b.as_deref(),
            c.c.as_deref(),
        )?;
        let tol = Tolerances::from_overrides(&c.tolerance)?;
        let format = c.format.unwrap_or(default_format);
        let params = match fam.exact() {
            Some([a, b, c]) => json!([a.to_string(), b.to_string(), c.to_string()]),
            None => json!([fam.a.to_string(), fam.b.to_string(), fam.c.to_string()]),
        };
        let mut config = Map::new();
        config.insert("command".into(), json!(command));
        config.insert("table".into(), json!(fam.kind()));
        config.insert("abc".into(), params);
        config.insert("exact".into(), json!(fam.exact().is_some()));
        config.insert("seed".into(), json!(c.seed));
        config.insert("format".into(), json!(format));
        config.insert(
            "tolerances".into(),
            serde_json::to_value(&tol).expect("plain struct"),
        );
        config.insert("threads".into(), json!(workers()));
        Ok(Ctx {
            fam,
            tol,
            format,
            config,
        })
    }

    fn set(&mut self, key: &str, v: impl Serialize) {
        self.config
            .insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    fn config(&self) -> Value {
        Value::Object(self.config.clone())
    }
}

fn nu_arg(n: &Num) -> NuArg {
    match n {
        Num::Exact(r) => NuArg::Exact(r.clone()),
        Num::Float(v) => NuArg::Float(*v),
    }
}

fn parse_vec(s: &str) -> CliResult<MVec3> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::config(format!("'{s}' is not x,y,z")))?;
    match v.as_slice() {
        [x, y, z] => Ok(MVec3::new(*x, *y, *z)),
        _ => Err(CliError::config(format!("'{s}' is not x,y,z"))),
    }
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if bad {
        Err(CliError::verification(msg()))
    } else {
        Ok(())
    }
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    common: Common,
    /// Caustic parameter: "p/q", a decimal, or "inf".
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Initial velocity x,y,z; the caustic follows from it when --nu is absent.
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    /// Initial point x,y,z on the hyperboloid; a random boundary point otherwise.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    #[arg(long, default_value_t = 20)]
    bounces: usize,
    /// CSV of points sampled along the arcs.
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long, default_value_t = 16)]
    per_arc: usize,
    /// Fail with exit code 4 unless the Cartesian period equals this.
    #[arg(long)]
    expect_period: Option<usize>,
}

pub fn simulate(args: &SimulateArgs) -> CliResult<()> {
    let mut ctx = Ctx::new("simulate", &args.common, Format::Json)?;
    let table = BilliardTable::new(ctx.fam.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
    let nu = args.nu.as_deref().map(NuValue::parse).transpose()?;
    let (p, v) = match (&args.direction, &nu) {
        (Some(d), _) => {
            let p = match &args.start {
                Some(s) => HPoint::project(parse_vec(s)?)?,
                None => table.boundary_point(rng.gen_range(0.0..std::f64::consts::TAU), true),
            };
            let d = parse_vec(d)?;
            let mut v = d - p.v * p.v.dot(d);
            if table.on_boundary(p.v) {
                let probe = HPoint::project(p.v + v * 1e-6)?;
                if !table.contains(probe.v) {
                    v = -v;
                }
            }
            (p, v)
        }
        (None, Some(nu)) => {
            let caustic = nu.caustic();
            random_boundary_start(&table, caustic, &mut rng)
                .or_else(|| random_interior_start(&table, caustic, &mut rng))
                .ok_or_else(|| CliError::runtime(format!("no start realises caustic {nu}")))?
        }
        (None, None) => return Err(CliError::config("simulate needs --nu or --direction")),
    };
    let caustic = caustic_of_plane(p.v.cross(v), &ctx.fam);
    ctx.set(
        "nu",
        nu.as_ref().map_or(caustic.to_string(), |n| n.to_string()),
    );
    ctx.set("bounces", args.bounces);
    ctx.set("start", p.v);
    ctx.set("direction", v);
    let mut traj = match run(&p, v, &table, args.bounces)? {
        RunOutcome::Trajectory(t) => t,
        RunOutcome::NeverHitsBoundary { .. } => {
            return Err(CliError::runtime(format!(
                "the geodesic never reaches the boundary (caustic {caustic} is resonant)"
            )))
        }
    };
    traj.closure = detect_closure(&traj, ctx.tol.closure, ctx.tol.jacobi);
    let mut out = sink(args.common.out.as_deref())?;
    match ctx.format {
        Format::Json => write_json(&mut *out, &ctx.config(), &traj)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = traj
                .bounces
                .iter()
                .zip(&traj.jacobi)
                .enumerate()
                .map(|(k, (b, j))| {
                    let (l1, l2) = j.map_or((String::new(), String::new()), |j| {
                        (j.lambda1.to_string(), j.lambda2.to_string())
                    });
                    let mut r = vec![k.to_string()];
                    r.extend(
                        b.p.to_array()
                            .iter()
                            .chain(&b.v_out.to_array())
                            .map(|x| x.to_string()),
                    );
                    r.extend([l1, l2]);
                    r
                })
                .collect();
            let header = ["k", "x", "y", "z", "vx", "vy", "vz", "lambda1", "lambda2"];
            write_csv_records(&mut *out, &ctx.config(), &header, &rows)?;
        }
    }
    if let Some(path) = &args.plot {
        let per = args.per_arc.max(1);
        let rows: Vec<Vec<String>> = traj
            .polyline(per)
            .iter()
            .enumerate()
            .map(|(i, q)| {
                vec![
                    (i / per).to_string(),
                    q.x.to_string(),
                    q.y.to_string(),
                    q.z.to_string(),
                ]
            })
            .collect();
        let mut f = sink(Some(path))?;
        write_csv_records(&mut *f, &ctx.config(), &["segment", "x", "y", "z"], &rows)?;
    }
    if let Some(n) = args.expect_period {
        fail_if(traj.closure.n != Some(n), || {
            format!(
                "expected period {n}, got {:?} (gap {:e})",
                traj.closure.n, traj.closure.cartesian_gap
            )
        })?;
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    n: usize,
    /// Evaluate at this ν instead of returning the polynomial.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Return the condition polynomial in ν (the default without --nu).
    #[arg(long)]
    symbolic: bool,
    /// The elliptic-periodicity parts instead of the periodic condition.
    #[arg(long)]
    elliptic: bool,
    /// The light-like condition (even n >= 4).
    #[arg(long)]
    lightlike: bool,
    /// Compare the ν-discriminant with its closed form.
    #[arg(long)]
    discriminants: bool,
    /// Random triples for --discriminants, besides the given one.
    #[arg(long, default_value_t = 4)]
    samples: usize,
}

#[derive(Serialize)]
struct RootRow {
    family: String,
    part: String,
    nu: f64,
    multiplicity: usize,
    range: String,
    causal: String,
    in_range: bool,
    note: String,
}

fn root_rows(reports: &[ConditionReport]) -> Vec<RootRow> {
    reports
        .iter()
        .flat_map(|r| {
            r.roots.iter().map(move |x| RootRow {
                family: format!("{:?}", r.family),
                part: r.part.map(String::from).unwrap_or_default(),
                nu: x.nu,
                multiplicity: x.multiplicity,
                range: x.range.clone(),
                causal: serde_json::to_value(x.causal)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default(),
                in_range: x.in_range,
                note: x.note.unwrap_or_default().to_string(),
            })
        })
        .collect()
}

pub fn check(args: &CheckArgs) -> CliResult<()> {
    let mut ctx = Ctx::new("check", &args.common, Format::Json)?;
    ctx.set("n", args.n);
    let mut out = sink(args.common.out.as_deref())?;
    if args.discriminants {
        let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
        let mut triples: Vec<[Rational; 3]> = ctx.fam.exact().cloned().into_iter().collect();
        while triples.len() < args.samples + 1 {
            triples.push(random_family(ctx.fam.kind(), &mut rng));
        }
        ctx.set("samples", triples.len());
        let rep = verify_discriminant_factorization(args.n, &triples)?;
        match ctx.format {
            Format::Json => write_json(&mut *out, &ctx.config(), &rep)?,
            Format::Csv => write_csv(&mut *out, &ctx.config(), &rep.samples)?,
        }
        return fail_if(!rep.pass, || {
            format!("discriminant of G_{} differs from the closed form", args.n)
        });
    }
    let nu = args.nu.as_deref().map(NuValue::parse).transpose()?;
    let arg = match (&nu, args.symbolic) {
        (Some(_), true) => return Err(CliError::config("--symbolic and --nu are exclusive")),
        (Some(n), false) => nu_arg(n.finite()?),
        (None, _) => NuArg::Symbolic,
    };
    ctx.set("nu", nu.as_ref().map(|n| n.to_string()));
    let (reports, kind) = if args.lightlike {
        (
            vec![lightlike_condition(
                args.n,
                &ctx.fam,
                ctx.fam.exact().is_some(),
            )?],
            "lightlike",
        )
    } else if args.elliptic {
        (
            elliptic_periodicity_condition(args.n, &ctx.fam, &arg)?,
            "elliptic",
        )
    } else {
        (
            vec![periodicity_condition(args.n, &ctx.fam, &arg)?],
            "periodic",
        )
    };
    ctx.set("condition", kind);
    let mut doc = Map::new();
    doc.insert(
        "reports".into(),
        serde_json::to_value(&reports).expect("serializable"),
    );
    doc.insert(
        "polynomials".into(),
        json!(reports
            .iter()
            .filter_map(|r| r.poly.as_ref().map(|p| p.display_in("ν")))
            .collect::<Vec<_>>()),
    );
    let mut mismatch = None;
    if kind == "periodic" && matches!(arg, NuArg::Symbolic) && (3..=6).contains(&args.n) {
        if let (Some([a, b, c]), Some(poly)) = (ctx.fam.exact(), reports[0].poly.as_ref()) {
            let printed = printed_g(args.n, a, b, c)?;
            let scalar = proportionality(poly, &printed);
            doc.insert(
                "printed_scalar".into(),
                json!(scalar.as_ref().map(|s| s.to_string())),
            );
            mismatch = scalar
                .is_none()
                .then(|| format!("G_{} differs from the printed form", args.n));
        }
    }
    if !matches!(arg, NuArg::Symbolic) {
        let vanishes: Vec<bool> = reports.iter().map(|r| r.vanishes(ctx.tol.det)).collect();
        doc.insert("vanishes".into(), json!(vanishes));
    }
    match ctx.format {
        Format::Json => write_json(&mut *out, &ctx.config(), &Value::Object(doc))?,
        Format::Csv => write_csv(&mut *out, &ctx.config(), &root_rows(&reports))?,
    }
    mismatch.map_or(Ok(()), |m| Err(CliError::verification(m)))
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    nu_min: String,
    #[arg(long, allow_hyphen_values = true)]
    nu_max: String,
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// Period used for `n1 = round(ρ n)`.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// i, ii or iii on a collared table; inferred otherwise.
    #[arg(long)]
    case: Option<String>,
}

#[derive(Serialize)]
struct ScanRow {
    nu: f64,
    case: RotationCase,
    rho: f64,
    n1: i64,
    n: usize,
    residual: f64,
}

pub fn scan(args: &ScanArgs) -> CliResult<()> {
    let mut ctx = Ctx::new("scan", &args.common, Format::Csv)?;
    let (lo, hi) = (
        Num::parse(&args.nu_min)?.value(),
        Num::parse(&args.nu_max)?.value(),
    );
    if args.steps < 2 || lo >= hi || args.n == 0 {
        return Err(CliError::config(
            "need nu_min < nu_max, steps >= 2 and n >= 1",
        ));
    }
    let case: Option<RotationCase> = args.case.as_deref().map(str::parse).transpose()?;
    ctx.set("nu_range", [lo, hi]);
    ctx.set("steps", args.steps);
    ctx.set("n", args.n);
    ctx.set("case", case);
    let grid: Vec<f64> = (0..args.steps)
        .map(|i| lo + (hi - lo) * i as f64 / (args.steps - 1) as f64)
        .collect();
    let fam = &ctx.fam;
    let n = args.n;
    let rows: Vec<ScanRow> = par_map(&grid, |&nu| {
        let spec = QuarticSpec::for_caustic(fam, nu, case).ok()?;
        let rho = rotation_number(&spec).ok()?;
        let x = rho * n as f64;
        Some(ScanRow {
            nu,
            case: spec.case,
            rho,
            n1: x.round() as i64,
            n,
            residual: (x - x.round()).abs(),
        })
    })
    .into_iter()
    .flatten()
    .collect();
    ctx.set("skipped", grid.len() - rows.len());
    let mut out = sink(args.common.out.as_deref())?;
    match ctx.format {
        Format::Json => write_json(&mut *out, &ctx.config(), &rows)?,
        Format::Csv => write_csv(&mut *out, &ctx.config(), &rows)?,
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct RotationArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Target rotation number "n1/n"; solves for ν.
    #[arg(long)]
    target: Option<String>,
    /// Period to test ρ n against.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    case: Option<String>,
}

pub fn rotation(args: &RotationArgs) -> CliResult<()> {
    let mut ctx = Ctx::new("rotation", &args.common, Format::Json)?;
    let case: Option<RotationCase> = args.case.as_deref().map(str::parse).transpose()?;
    let mut n = args.n;
    let nu_num = match (&args.nu, &args.target) {
        (Some(nu), None) => NuValue::parse(nu)?.finite()?.clone(),
        (None, Some(t)) => {
            let target = Num::parse(t)?;
            if let (Num::Exact(r), None) = (&target, n) {
                n = usize::try_from(r.denom()).ok();
            }
            let v = find_caustic_for_rotation(
                &ctx.fam,
                target.value(),
                case.unwrap_or(RotationCase::I),
            )?;
            ctx.set("target", t);
            Num::Float(v)
        }
        _ => return Err(CliError::config("give exactly one of --nu and --target")),
    };
    let nu = nu_num.value();
    ctx.set("nu", nu_num.to_string());
    ctx.set("n", n);
    ctx.set("case", case);
    let spec = QuarticSpec::for_caustic(&ctx.fam, nu, case)?;
    let rho = rotation_number(&spec)?;
    let mut doc = Map::new();
    doc.insert("nu".into(), json!(nu));
    doc.insert("case".into(), json!(spec.case));
    doc.insert("roots".into(), json!(spec.roots));
    doc.insert("rho".into(), json!(rho));
    if ctx.fam.kind() == TableKind::Transverse {
        doc.insert("label".into(), json!("derived analogue"));
    }
    if spec.case == RotationCase::II {
        doc.insert("homology_residual".into(), json!(homology_residual(&spec)?));
    }
    let mut failure = None;
    if let Some(n) = n {
        let x = rho * n as f64;
        let n1 = x.round() as i64;
        let residual = (x - x.round()).abs();
        doc.insert("n1".into(), json!(n1));
        doc.insert("residual".into(), json!(residual));
        if ctx.fam.kind() == TableKind::Collared {
            let d = case_decomposition(&ctx.fam, nu, n, Some(spec.case))?;
            doc.insert(
                "decomposition".into(),
                serde_json::to_value(&d).expect("serializable"),
            );
        }
        if residual > ctx.tol.rho {
            failure = Some(format!(
                "ρ·{n} = {x} is not an integer to {:e}",
                ctx.tol.rho
            ));
        }
        match pell_from_periodicity(n, &ctx.fam, &nu_arg(&nu_num)) {
            Ok(pair) => {
                let z = sturm_zero_count(&pair);
                doc.insert("sturm_zero_count".into(), json!(z));
                if failure.is_none() && z as i64 != n1 {
                    failure = Some(format!("Sturm count {z} differs from n1 = {n1}"));
                }
            }
            Err(e) => {
                doc.insert("pell".into(), json!(e.to_string()));
            }
        }
    }
    let mut out = sink(args.common.out.as_deref())?;
    match ctx.format {
        Format::Json => write_json(&mut *out, &ctx.config(), &Value::Object(doc))?,
        Format::Csv => {
            let n1 = doc.get("n1").map_or(String::new(), |v| v.to_string());
            let res = doc.get("residual").map_or(String::new(), |v| v.to_string());
            let row = vec![
                nu.to_string(),
                spec.case.to_string(),
                rho.to_string(),
                n1,
                n.map_or(String::new(), |n| n.to_string()),
                res,
            ];
            write_csv_records(
                &mut *out,
                &ctx.config(),
                &["nu", "case", "rho", "n1", "n", "residual"],
                &[row],
            )?;
        }
    }
    failure.map_or(Ok(()), |m| Err(CliError::verification(m)))
}

#[derive(Args, Debug)]
pub struct PellArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Light-like period-4 composition.
    #[arg(long)]
    lightlike: bool,
    /// Degenerate caustic ν = b with the given m.
    #[arg(long)]
    degenerate: Option<usize>,
    /// Transverse period-3 Zolotarev solution.
    #[arg(long)]
    zolotarev: bool,
    /// Chebyshev base case of the given degree.
    #[arg(long)]
    chebyshev: Option<usize>,
}

fn emit<T: Serialize>(ctx: &Ctx, out: &mut dyn Write, doc: &T) -> CliResult<()> {
    match ctx.format {
        Format::Json => write_json(out, &ctx.config(), doc),
        Format::Csv => Err(CliError::config("this output is JSON only")),
    }
}

pub fn pell(args: &PellArgs) -> CliResult<()> {
    let mut common = args.common.clone();
    let no_table =
        common.table.is_none() && common.a.is_none() && common.b.is_none() && common.c.is_none();
    if args.chebyshev.is_some() && no_table {
        common.table = Some("collared".into());
    }
    let mut ctx = Ctx::new("pell", &common, Format::Json)?;
    let mut out = sink(args.common.out.as_deref())?;
    if let Some(m) = args.chebyshev {
        ctx.set("mode", "chebyshev");
        let r = chebyshev_pell_residual(m);
        let ok = r == RatPoly::one();
        emit(
            &ctx,
            &mut *out,
            &json!({"m": m, "lhs": r.coeff_strings(), "holds": ok}),
        )?;
        return fail_if(!ok, || format!("Chebyshev identity fails at m = {m}"));
    }
    if args.lightlike {
        ctx.set("mode", "lightlike");
        let r = lightlike_period4_pell(&ctx.fam)?;
        emit(&ctx, &mut *out, &r)?;
        return fail_if(!r.identity_holds, || {
            "light-like Pell identity fails".into()
        });
    }
    if let Some(m) = args.degenerate {
        ctx.set("mode", "degenerate");
        ctx.set("m", m);
        let r = degenerate_caustic_conditions(&ctx.fam, m)?;
        emit(&ctx, &mut *out, &r)?;
        return fail_if(!r.pell_holds, || "one-interval Pell identity fails".into());
    }
    if args.zolotarev {
        ctx.set("mode", "zolotarev");
        let r = zolotarev_transverse_period3(&ctx.fam)?;
        let m1 = zolotarev_m1_residuals(&ctx.fam);
        let bad = r.caustic_residual > ctx.tol.det || r.sn_residual > ctx.tol.det;
        emit(&ctx, &mut *out, &json!({"solution": r, "m1_residuals": m1}))?;
        return fail_if(bad, || {
            "Zolotarev solution residuals exceed the tolerance".into()
        });
    }
    let (Some(n), Some(nu)) = (args.n, args.nu.as_deref()) else {
        return Err(CliError::config(
            "pell needs --n and --nu, or one of the special modes",
        ));
    };
    let nu = NuValue::parse(nu)?;
    ctx.set("mode", "periodic");
    ctx.set("n", n);
    ctx.set("nu", nu.to_string());
    let pair = pell_from_periodicity(n, &ctx.fam, &nu_arg(nu.finite()?))?;
    let verified = if pair.exact {
        pair.holds_exactly()
    } else {
        pair.residual <= ctx.tol.pell
    };
    let mut doc = serde_json::to_value(&pair).expect("serializable");
    doc["verified"] = json!(verified);
    emit(&ctx, &mut *out, &doc)?;
    fail_if(!verified, || {
        format!("Pell identity fails (residual {:e})", pair.residual)
    })
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[command(flatten)]
    common: Common,
    /// Classify a single level ("inf" allowed).
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Recount every band numerically and compare.
    #[arg(long)]
    numeric: bool,
    #[arg(long, default_value_t = 24)]
    samples: usize,
}

pub fn census(args: &CensusArgs) -> CliResult<()> {
    let mut ctx = Ctx::new("census", &args.common, Format::Json)?;
    let mut doc = serde_json::to_value(census_of(&ctx.fam)).expect("serializable");
    if let Some(l) = &args.lambda {
        let l = NuValue::parse(l)?;
        ctx.set("lambda", l.to_string());
        doc["level"] =
            serde_json::to_value(classify_level_set(&ctx.fam, l.caustic())).expect("serializable");
    }
    let mut failure = None;
    if args.numeric {
        ctx.set("samples", args.samples);
        let table = BilliardTable::new(ctx.fam.clone());
        let c = census_of(&ctx.fam);
        let mut counts = Vec::new();
        for band in c.bands.iter().filter(|b| b.sample.is_some()) {
            let l = band.sample.expect("filtered");
            let r = count_components_numeric(&table, l, args.samples, args.common.seed)?;
            let ok = match band.notes {
                LevelNote::Empty => r.seeded == 0,
                LevelNote::Resonant => r.count == band.tori_count && r.never_hit == r.seeded,
                _ => r.count == band.tori_count && r.never_hit == 0,
            };
            if !ok && failure.is_none() {
                failure = Some(format!(
                    "band {} counted {} components, expected {}",
                    band.range, r.count, band.tori_count
                ));
            }
            counts.push(json!({"range": band.range, "expected": band.tori_count, "numeric": r, "agrees": ok}));
        }
        doc["numeric"] = json!(counts);
    }
    let mut out = sink(args.common.out.as_deref())?;
    match ctx.format {
        Format::Json => write_json(&mut *out, &ctx.config(), &doc)?,
        Format::Csv => {
            let c = census_of(&ctx.fam);
            let rows: Vec<Vec<String>> = c
                .bands
                .iter()
                .map(|b| {
                    let notes = serde_json::to_value(b.notes)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default();
                    let causal = serde_json::to_value(b.causal)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default();
                    vec![b.range.clone(), b.tori_count.to_string(), notes, causal]
                })
                .collect();
            write_csv_records(
                &mut *out,
                &ctx.config(),
                &["range", "tori_count", "notes", "causal"],
                &rows,
            )?;
        }
    }
    failure.map_or(Ok(()), |m| Err(CliError::verification(m)))
}
