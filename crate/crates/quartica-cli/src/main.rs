//! Command-line front end: parse surface documents, run the pipeline,
//! emit deterministic JSON (or plain text) reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use quartica::error::ErrorCode;
use quartica::exactalg::rat::Rat;
use quartica::fibration::pencil::{branch_analysis, residual_cubic_symbolic};
use quartica::fibration::scan::singular_fiber_scan;
use quartica::lattice::gram::{general_gram, quartic_gram};
use quartica::lattice::schubert::{fano_curve_degree, line_count_class};
use quartica::monodromy::{case_analysis, fixed_torsion, kodaira_matrix, PLANE_CUBIC_TYPES};
use quartica::pointgen::qr::{find_free_point, qr_sequence, torsion_precheck, TorsionVerdict};
use quartica::pointgen::threefold::{cone_test, slice_threefold};
use quartica::pointgen::threelines::three_lines_sequence;
use quartica::projgeom::plane::P1;
use quartica::projgeom::point::ProjPoint;
use quartica::report;
use quartica::schema::{self, InputDoc};

#[derive(Parser)]
#[command(
    name = "quartica",
    about = "Exact elliptic-fibration analysis of quartic surfaces with a line",
    version
)]
struct Cli {
    /// Worker threads for the scan and generation paths
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output format
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "text"])]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a surface and report the residual cubic, branch locus and
    /// singular fiber census
    Analyze(InputArg),
    /// The singular fiber census, or a single fiber at --param
    Fibers(FibersArgs),
    /// Generate rational points (JSON lines on stdout)
    Generate(GenerateArgs),
    /// The bundled Fermat regression: census, symbolic residual cubic and
    /// the 2-torsion verification
    FermatDemo,
    /// Intersection tables and their determinants
    Gram(GramArgs),
    /// Line-count classes on the Grassmannian of lines
    Schubert(SchubertArgs),
    /// Monodromy fixed subgroups and the torsion case analysis
    Monodromy(MonodromyArgs),
    /// Slice a quartic threefold along a hyperplane through a line
    Slice(SliceArgs),
}

#[derive(Args)]
struct InputArg {
    /// Input JSON document
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct FibersArgs {
    /// Input JSON document
    #[arg(long)]
    input: PathBuf,
    /// Report only the fiber at this pencil parameter ("inf" allowed)
    #[arg(long, allow_hyphen_values = true)]
    param: Option<String>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    input: PathBuf,
    /// Generation mode
    #[arg(long, default_value = "qr", value_parser = ["qr", "three-lines"])]
    mode: String,
    /// Base point of the line in span coordinates "u:v" (qr mode); when
    /// omitted, small points are scanned for a free one
    #[arg(long)]
    at: Option<String>,
    /// Pencil parameter ("inf" allowed; three-lines mode)
    #[arg(long, allow_hyphen_values = true)]
    param: Option<String>,
    /// Sequence length
    #[arg(long, default_value_t = 5)]
    count: u32,
    /// Torsion search bound
    #[arg(long, default_value_t = quartica::pointgen::qr::DEFAULT_TORSION_BOUND)]
    bound: u32,
}

#[derive(Args)]
struct GramArgs {
    /// Self-intersection of the tautological section (quartic table)
    #[arg(long, allow_hyphen_values = true)]
    sigma_sq: Option<String>,
    /// Covering degree (general table)
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
}

#[derive(Args)]
struct SchubertArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
}

#[derive(Args)]
struct MonodromyArgs {
    /// Torsion order
    #[arg(long)]
    m: u64,
}

#[derive(Args)]
struct SliceArgs {
    #[arg(long)]
    input: PathBuf,
    /// Also run the cone test at this point of the threefold
    /// (comma-separated rational coordinates)
    #[arg(long, allow_hyphen_values = true)]
    cone_at: Option<String>,
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    code: &'a str,
    message: String,
}

struct Failure {
    code: ErrorCode,
    message: String,
}

impl Failure {
    fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<quartica::schema::SchemaError> for Failure {
    fn from(e: quartica::schema::SchemaError) -> Self {
        Failure { code: e.code, message: e.message }
    }
}

fn classify_pointgen_error(e: &quartica::error::PointGenError) -> ErrorCode {
    use quartica::error::{FibrationError, PointGenError};
    match e {
        PointGenError::TorsionObstruction { .. } => ErrorCode::TorsionObstruction,
        PointGenError::SliceSingular => ErrorCode::SliceSingular,
        PointGenError::Fibration(FibrationError::FiberSingularAtBasePoint) => {
            ErrorCode::FiberSingularAtBasePoint
        }
        _ => ErrorCode::BadArguments,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let err = ErrorJson { code: f.code.as_str(), message: f.message };
            eprintln!("{}", serde_json::to_string(&err).expect("error serialization"));
            ExitCode::FAILURE
        }
    }
}

fn load_doc(path: &PathBuf) -> Result<InputDoc, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(ErrorCode::BadArguments, format!("cannot read input: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new(ErrorCode::BadSchema, format!("invalid JSON: {e}")))
}

#[derive(Serialize)]
struct AnalyzeJson {
    surface: report::SurfaceJson,
    residual_cubic: report::ResidualCubicJson,
    branch: report::BranchJson,
    census: report::CensusJson,
}

fn analyze_surface(doc: &InputDoc) -> Result<AnalyzeJson, Failure> {
    let surface = schema::parse_surface(doc)?;
    let rc = residual_cubic_symbolic(&surface, false)
        .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
    let branch = branch_analysis(&surface)
        .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
    let census = singular_fiber_scan(&surface)
        .map_err(|e| Failure::new(ErrorCode::UnresolvedFactors, e.to_string()))?;
    Ok(AnalyzeJson {
        surface: report::surface_json(&surface),
        residual_cubic: report::residual_json(&rc),
        branch: report::branch_json(&branch),
        census: report::census_json(&census),
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze(args) => {
            let doc = load_doc(&args.input)?;
            let out = analyze_surface(&doc)?;
            emit(cli, &out, render_analyze_text)
        }
        Command::Fibers(args) => {
            let doc = load_doc(&args.input)?;
            let surface = schema::parse_surface(&doc)?;
            match &args.param {
                Some(t) => {
                    let param = P1::parse(t)
                        .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
                    let out = single_fiber_report(&surface, &param)?;
                    emit(cli, &out, |o| {
                        format!(
                            "fiber at {}: {}\n",
                            o.param,
                            o.kodaira.clone().unwrap_or_else(|| "smooth".into())
                        )
                    })
                }
                None => {
                    let census = singular_fiber_scan(&surface)
                        .map_err(|e| Failure::new(ErrorCode::UnresolvedFactors, e.to_string()))?;
                    let out = report::census_json(&census);
                    emit(cli, &out, render_census_text)
                }
            }
        }
        Command::Generate(args) => run_generate(args),
        Command::FermatDemo => {
            let doc: InputDoc =
                serde_json::from_str(FERMAT_DOC).expect("bundled document is valid");
            let analyze = analyze_surface(&doc)?;
            let tt = quartica::fermat::fermat_two_torsion_symbolic()
                .map_err(|e| Failure::new(ErrorCode::InternalError, e.to_string()))?;
            let orders = quartica::fermat::fermat_two_torsion_specializations(&[2, 3, 5])
                .map_err(|e| Failure::new(ErrorCode::InternalError, e.to_string()))?;
            let two_torsion = report::TwoTorsionJson {
                verdict: tt.verdict,
                intersection_point: tt.intersection,
                intersection_on_curve: tt.on_curve,
                specialization_orders: orders,
            };
            let out = FermatDemoJson {
                surface: analyze.surface,
                residual_cubic: analyze.residual_cubic,
                branch: analyze.branch,
                census: analyze.census,
                two_torsion,
            };
            emit(cli, &out, |o| {
                let mut s = render_analyze_header(&o.surface);
                s.push_str(&render_census_text(&o.census));
                s.push_str(&format!(
                    "two-torsion: verdict={} at {:?} (on curve: {}), orders {:?}\n",
                    o.two_torsion.verdict,
                    o.two_torsion.intersection_point,
                    o.two_torsion.intersection_on_curve,
                    o.two_torsion.specialization_orders
                ));
                s
            })
        }
        Command::Gram(args) => {
            if let Some(m) = args.m {
                let b = args.b.as_ref().map(|s| parse_rat(s)).transpose()?;
                let c = args.c.as_ref().map(|s| parse_rat(s)).transpose()?;
                let g = general_gram(m, b.as_ref(), c.as_ref())
                    .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
                let at = match (&b, &c) {
                    (Some(bv), Some(cv)) => Some(vec![bv.clone(), cv.clone()]),
                    _ => None,
                };
                let out = report::gram_json(&g, at.as_deref());
                emit(cli, &out, render_gram_text)
            } else {
                let s = args.sigma_sq.as_ref().map(|v| parse_rat(v)).transpose()?;
                let g = quartic_gram(s.as_ref());
                let at = s.map(|v| vec![v]);
                let out = report::gram_json(&g, at.as_deref());
                emit(cli, &out, render_gram_text)
            }
        }
        Command::Schubert(args) => {
            let cls = line_count_class(args.n, args.d)
                .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
            let fano = fano_curve_degree(args.n, args.d).ok().map(|d| d.to_string());
            let out = report::schubert_json(args.n, args.d, &cls, fano);
            emit(cli, &out, |o| {
                let terms: Vec<String> = o
                    .class
                    .iter()
                    .map(|(k, v)| format!("{v}*sigma_{{{k}}}"))
                    .collect();
                format!("c_top(Sym^{} S*) on G(1,{}) = {}\n", o.d, o.n, terms.join(" + "))
            })
        }
        Command::Monodromy(args) => {
            let verdict = case_analysis(args.m)
                .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
            let mut fixed = Vec::new();
            for ty in PLANE_CUBIC_TYPES {
                let mat = kodaira_matrix(ty).expect("table type");
                let f = fixed_torsion(&mat, args.m)
                    .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
                fixed.push(report::fixed_torsion_json(&ty.tag(), &f));
            }
            let out = MonodromyJson {
                fixed_torsion: fixed,
                case_verdict: report::case_verdict_json(&verdict),
            };
            emit(cli, &out, |o| {
                format!(
                    "m = {}: transverse {:?}, non-transverse {:?}, min lines {}\n",
                    o.case_verdict.m,
                    o.case_verdict.allowed_transverse_types,
                    o.case_verdict.required_nontransverse_types,
                    o.case_verdict.min_lines_meeting_l
                )
            })
        }
        Command::Slice(args) => {
            let doc = load_doc(&args.input)?;
            let (threefold, line, hyperplane) = schema::parse_threefold(&doc)?;
            let sliced = slice_threefold(&threefold, &line, &hyperplane)
                .map_err(|e| Failure::new(classify_pointgen_error(&e), e.to_string()))?;
            let branch = branch_analysis(&sliced)
                .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
            let cone = match &args.cone_at {
                Some(coord_list) => {
                    let coords: Result<Vec<Rat>, Failure> =
                        coord_list.split(',').map(|c| parse_rat(c.trim())).collect();
                    let p = ProjPoint::new(quartica::exactalg::rat::RatField, coords?)
                        .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
                    let ct = cone_test(&threefold, &p)
                        .map_err(|e| Failure::new(classify_pointgen_error(&e), e.to_string()))?;
                    Some(report::cone_json(&ct))
                }
                None => None,
            };
            let out = SliceJson {
                surface: report::surface_json(&sliced),
                sliced_quartic: schema::form_to_json(&sliced.quartic),
                branch: report::branch_json(&branch),
                cone_test: cone,
            };
            emit(cli, &out, |o| {
                format!("slice: {}\nbranch total {}\n", o.surface.quartic, o.branch.total)
            })
        }
    }
}

fn run_generate(args: &GenerateArgs) -> Result<(), Failure> {
    let doc = load_doc(&args.input)?;
    let points = match args.mode.as_str() {
        "qr" => {
            let surface = schema::parse_surface(&doc)?;
            let p = match &args.at {
                Some(at) => {
                    let (u, v) = parse_span_param(at)?;
                    let coords =
                        surface.line.point_at(&quartica::exactalg::rat::RatField, &u, &v);
                    ProjPoint::new(quartica::exactalg::rat::RatField, coords)
                        .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?
                }
                None => {
                    find_free_point(&surface, args.bound, 4)
                        .ok_or_else(|| {
                            Failure::new(
                                ErrorCode::TorsionObstruction,
                                "no free base point among small line points",
                            )
                        })?
                        .0
                }
            };
            match torsion_precheck(&surface, &p, args.bound)
                .map_err(|e| Failure::new(classify_pointgen_error(&e), e.to_string()))?
            {
                TorsionVerdict::Torsion { order } => {
                    return Err(Failure::new(
                        ErrorCode::TorsionObstruction,
                        format!("base point class is torsion of order {order}"),
                    ))
                }
                TorsionVerdict::FreeAtBound { .. } => {}
            }
            qr_sequence(&surface, &p, args.count, args.bound)
                .map_err(|e| Failure::new(classify_pointgen_error(&e), e.to_string()))?
        }
        "three-lines" => {
            let cfg = schema::parse_three_lines(&doc)?;
            let param = match &args.param {
                Some(s) => P1::parse(s)
                    .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?,
                None => P1::Finite(Rat::from_int(1)),
            };
            three_lines_sequence(&cfg, &param, args.count, args.bound)
                .map_err(|e| Failure::new(classify_pointgen_error(&e), e.to_string()))?
        }
        _ => unreachable!("clap validates the mode"),
    };
    for gp in &points {
        println!(
            "{}",
            serde_json::to_string(&report::generated_point_json(gp))
                .expect("point serialization")
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct SingleFiberJson {
    param: String,
    cubic: std::collections::BTreeMap<String, String>,
    smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    kodaira: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    euler: Option<u32>,
    trisection_profile: Vec<u32>,
}

fn single_fiber_report(
    surface: &quartica::fibration::surface::QuarticSurfaceWithLine,
    param: &P1,
) -> Result<SingleFiberJson, Failure> {
    use quartica::cubiclaw::classify::classify_kodaira;
    use quartica::cubiclaw::invariants::aronhold_invariants;
    use quartica::exactalg::rat::RatField;
    use quartica::exactalg::ring::Ring;
    use quartica::fibration::pencil::{residual_cubic_at, trisection_coeffs};
    let rc = residual_cubic_at(surface, param)
        .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
    let mut cubic = std::collections::BTreeMap::new();
    for (m, c) in quartica::cubiclaw::cubic::CUBIC_MONOMIALS.iter().zip(&rc.cubic.coeffs) {
        if RatField.is_zero(c) {
            continue;
        }
        let names = ["U", "V", "T"];
        let mut parts = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].to_string()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        cubic.insert(parts.join("*"), c.to_string());
    }
    let smooth = !RatField.is_zero(&aronhold_invariants(&rc.cubic).disc);
    let (kodaira, euler) = if smooth {
        (None, None)
    } else {
        let (ty, _) = classify_kodaira(&rc.cubic)
            .map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))?;
        (Some(ty.tag()), Some(ty.euler()))
    };
    // trisection multiplicities at this fiber
    let tri = trisection_coeffs(&rc.cubic);
    let f = quartica::exactalg::upoly::UPoly::new(
        RatField,
        vec![tri[3].clone(), tri[2].clone(), tri[1].clone(), tri[0].clone()],
    );
    let mut profile: Vec<u32> = Vec::new();
    let inf_mult = 3 - f.degree().unwrap_or(0) as u32;
    if inf_mult > 0 {
        profile.push(inf_mult);
    }
    if !f.is_zero() && f.deg() > 0 {
        for (g, m) in f
            .squarefree_decomposition()
            .map_err(|e| Failure::new(ErrorCode::InternalError, e.to_string()))?
        {
            for _ in 0..g.deg() {
                profile.push(m);
            }
        }
    }
    profile.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SingleFiberJson {
        param: param.to_string(),
        cubic,
        smooth,
        kodaira,
        euler,
        trisection_profile: profile,
    })
}

#[derive(Serialize)]
struct FermatDemoJson {
    surface: report::SurfaceJson,
    residual_cubic: report::ResidualCubicJson,
    branch: report::BranchJson,
    census: report::CensusJson,
    two_torsion: report::TwoTorsionJson,
}

#[derive(Serialize)]
struct MonodromyJson {
    fixed_torsion: Vec<report::FixedTorsionJson>,
    case_verdict: report::CaseVerdictJson,
}

#[derive(Serialize)]
struct SliceJson {
    surface: report::SurfaceJson,
    sliced_quartic: quartica::schema::FormJson,
    branch: report::BranchJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    cone_test: Option<report::ConeJson>,
}

fn parse_rat(s: &str) -> Result<Rat, Failure> {
    Rat::parse(s).map_err(|e| Failure::new(ErrorCode::BadArguments, e.to_string()))
}

fn parse_span_param(s: &str) -> Result<(Rat, Rat), Failure> {
    match s.split_once(':') {
        Some((u, v)) => Ok((parse_rat(u)?, parse_rat(v)?)),
        None => Ok((parse_rat(s)?, Rat::from_int(1))),
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T, text: impl Fn(&T) -> String) -> Result<(), Failure> {
    match cli.format.as_str() {
        "json" => print!("{}", report::to_json_string(value)),
        _ => print!("{}", text(value)),
    }
    Ok(())
}

fn render_analyze_header(s: &report::SurfaceJson) -> String {
    format!("surface: {}\nline: {}\nsmoothness: {}\n", s.quartic, s.line, s.smoothness)
}

fn render_analyze_text(o: &AnalyzeJson) -> String {
    let mut s = render_analyze_header(&o.surface);
    s.push_str("residual cubic:\n");
    for (m, c) in &o.residual_cubic.monomials {
        s.push_str(&format!("  {m}: {c}\n"));
    }
    s.push_str(&format!("branch total: {}\n", o.branch.total));
    s.push_str(&render_census_text(&o.census));
    s
}

fn render_census_text(c: &report::CensusJson) -> String {
    let mut s = format!(
        "census: {} fibers, euler {}, complete {}\n",
        c.fiber_count, c.euler_total, c.complete
    );
    for f in &c.fibers {
        let param = f
            .param
            .value
            .clone()
            .or_else(|| f.param.minpoly.clone())
            .unwrap_or_else(|| f.param.kind.to_string());
        s.push_str(&format!(
            "  {} x{} at {}: euler {}, transverse {}, {} singular point(s)\n",
            f.kodaira,
            f.param.orbit_size,
            param,
            f.euler,
            f.transverse_to_line,
            f.singular_points_per_fiber
        ));
    }
    s
}

fn render_gram_text(g: &report::GramJson) -> String {
    let mut s = format!("classes: {:?}\n", g.labels);
    for row in &g.entries {
        s.push_str(&format!("  {row:?}\n"));
    }
    s.push_str(&format!("det = {}", g.det));
    if let Some(ind) = g.independent {
        s.push_str(&format!(", independent: {ind}"));
    }
    s.push('\n');
    for f in &g.constraint_flags {
        s.push_str(&format!("constraint: {f}\n"));
    }
    s
}

const FERMAT_DOC: &str = include_str!("../fixtures/fermat.json");
