use std::cmp::Ordering;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use polysect_core::body::{sample_section_boundary, Body, Membership, SectionSample, DEFAULT_TAU};
use polysect_core::cones::{mirkil_scan, visual_cone, ConeOracle, ExactConeOracle, MirkilConfig, MirkilVerdict};
use polysect_core::criteria::{
    epsilon_certificate, klee_projection_test, klee_section_test, no_extreme_in_cone, polygonality_detect,
    projection_sample, visual_cone_test, ApexSurface, BodyConeOracle, CertificateCase, CriterionReport, FlatFamily,
    Offset, Polygonality, SampleConfig, SectionFamily, Witness, RATIONAL_BITS,
};
use polysect_core::geometry::{AffineFlat, Point, Scalar, Vector};
use polysect_core::polytope::{project, section, Polytope};
use polysect_core::silhouette::shadow_walk;
use serde::Serialize;

use crate::bodyspec::{load_body, LoadedBody};
use crate::report::{
    curved_dto, exact_list, verdict_name, BodyDto, CriterionDto, CurvedDto, ExactVector, FlatDto, RunReport,
};
use crate::svg::Figure;

#[derive(Parser, Debug)]
#[command(name = "polysect", version, about = "Exact sections, projections and visual cones of convex bodies, and sampling tests for polytopality")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// An .off file, a body-spec JSON file, or inline JSON.
    #[arg(long)]
    pub body: String,
    #[arg(long, env = "POLYSECT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Collinearity tolerance for sampled bodies.
    #[arg(long, default_value_t = DEFAULT_TAU)]
    pub tau: f64,
    /// Where to write the JSON report (standard output if absent).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Where to write an SVG of the planar result.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Section by a flat: `n=a,b,c;c=v` or `p=x,y,z;d=u…;d=w…`.
    Section {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        flat: String,
        /// Boundary samples for non-polytope bodies.
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Orthogonal projection onto a subspace `d=…;d=…` (or `n=…` in 3D).
    Project {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        subspace: String,
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Exact visual cone of a polytope from an exterior apex.
    Cone {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        apex: String,
    },
    /// Central-section test.
    #[command(name = "klee-k1")]
    KleeK1 {
        #[command(flatten)]
        common: Common,
        #[arg(long, visible_alias = "samples", default_value_t = 50)]
        flats: usize,
        #[arg(long, default_value_t = 64)]
        points: usize,
        /// Section dimension.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Projection test on random planes.
    #[command(name = "klee-k2")]
    KleeK2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, visible_alias = "samples", default_value_t = 50)]
        subspaces: usize,
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Shifted-section test: flats at offset `δ(ξ)` from the center.
    T11 {
        #[command(flatten)]
        common: Common,
        #[arg(long, visible_alias = "samples", default_value_t = 50)]
        flats: usize,
        #[arg(long, default_value_t = 64)]
        points: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// `central`, a constant like `0.1`, or `quad:AMP:x,y,z` for
        /// `AMP·(axis·ξ)²`.
        #[arg(long, default_value = "central", allow_hyphen_values = true)]
        delta: String,
        /// Direction every sampled flat contains.
        #[arg(long, allow_hyphen_values = true)]
        bias: Option<String>,
    },
    /// Visual-cone test from apexes on a sphere around the body.
    T12 {
        #[command(flatten)]
        common: Common,
        #[arg(long, visible_alias = "samples", default_value_t = 20)]
        apexes: usize,
        /// Sphere radius (default: three times the body's bounding radius).
        #[arg(long)]
        radius: Option<f64>,
        /// Cross-sections scanned per apex.
        #[arg(long, default_value_t = 16)]
        scans: usize,
        #[arg(long, default_value_t = 48)]
        points: usize,
    },
    /// ε-neighbourhood certificate for the segment from `p` toward `q`.
    Epsilon {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Random hyperplanes tried besides the coordinate ones.
        #[arg(long, default_value_t = 64)]
        family: usize,
    },
    /// Shadow vertices of a 3-polytope on `ξ^⊥`, found by the cone walk.
    Walk {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Chart start point on the shadow boundary.
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
    },
    /// Subspace scan of one visual cone.
    Mirkil {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        apex: String,
        #[arg(long, default_value_t = 16)]
        scans: usize,
        #[arg(long, default_value_t = 48)]
        points: usize,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Section { common, .. }
            | Command::Project { common, .. }
            | Command::Cone { common, .. }
            | Command::KleeK1 { common, .. }
            | Command::KleeK2 { common, .. }
            | Command::T11 { common, .. }
            | Command::T12 { common, .. }
            | Command::Epsilon { common, .. }
            | Command::Walk { common, .. }
            | Command::Mirkil { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Section { .. } => "section",
            Command::Project { .. } => "project",
            Command::Cone { .. } => "cone",
            Command::KleeK1 { .. } => "klee-k1",
            Command::KleeK2 { .. } => "klee-k2",
            Command::T11 { .. } => "t11",
            Command::T12 { .. } => "t12",
            Command::Epsilon { .. } => "epsilon",
            Command::Walk { .. } => "walk",
            Command::Mirkil { .. } => "mirkil",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Consistent,
    NonPolytope,
}

impl Outcome {
    fn name(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Consistent => "polytope-consistent",
            Outcome::NonPolytope => "non-polytope",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::NonPolytope => 2,
            _ => 0,
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

struct Output<T: Serialize> {
    outcome: Outcome,
    result: T,
    figure: Option<Figure>,
}

fn emit<T: Serialize>(cmd: &Command, loaded: &LoadedBody, out: Output<T>) -> anyhow::Result<Outcome> {
    let common = cmd.common();
    let mut warnings = loaded.warnings.clone();
    if common.svg.is_some() && out.figure.is_none() {
        warnings.push("no planar output to render; SVG not written".to_string());
    }
    let report = RunReport {
        command: cmd.name(),
        body: BodyDto {
            source: common.body.clone(),
            kind: loaded.body.kind(),
            dim: loaded.body.dim(),
            exact: loaded.body.is_exact(),
        },
        seed: common.seed,
        tau: common.tau,
        outcome: out.outcome.name(),
        result: out.result,
        warnings,
    };
    let json = report.to_json();
    match &common.report {
        Some(path) => std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{json}"),
    }
    if let (Some(path), Some(fig)) = (&common.svg, &out.figure) {
        std::fs::write(path, fig.render()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(out.outcome)
}

pub fn run(cmd: &Command) -> anyhow::Result<Outcome> {
    let common = cmd.common();
    if !(common.tau > 0.0 && common.tau.is_finite()) {
        bail!("--tau must be positive");
    }
    let loaded = load_body(&common.body)?;
    let body = &loaded.body;
    let d = body.dim();
    let cfg = |samples: usize, points: usize| SampleConfig {
        samples,
        points,
        tau: common.tau,
        seed: common.seed,
    };
    match cmd {
        Command::Section { flat, points, .. } => {
            let flat = parse_flat(flat, d)?;
            emit(cmd, &loaded, run_section(body, &flat, *points, common.tau)?)
        }
        Command::Project { subspace, points, .. } => {
            let sub = parse_flat(subspace, d)?;
            if !sub.passes_through_origin() {
                bail!("projection subspaces pass through the origin");
            }
            emit(cmd, &loaded, run_project(body, &sub, *points, common.tau)?)
        }
        Command::Cone { apex, .. } => {
            let poly = body.exact().ok_or_else(|| anyhow!("cone needs a polytope body; use mirkil for other bodies"))?;
            let apex = parse_exact(apex, d)?;
            let cone = visual_cone(&apex, poly)?;
            let result = ConeResult {
                apex: (&apex).into(),
                dim: cone.dim(),
                rays: exact_list(cone.rays()),
                facet_normals: exact_list(cone.facets()),
                equations: exact_list(cone.equations()),
            };
            emit(cmd, &loaded, Output { outcome: Outcome::Ok, result, figure: None })
        }
        Command::KleeK1 { flats, points, k, .. } => {
            let r = klee_section_test(body, &SectionFamily::central(*k), &cfg(*flats, *points))?;
            emit(cmd, &loaded, criterion_output(&r))
        }
        Command::KleeK2 { subspaces, points, .. } => {
            let r = klee_projection_test(body, 2, &cfg(*subspaces, *points))?;
            emit(cmd, &loaded, criterion_output(&r))
        }
        Command::T11 { flats, points, k, delta, bias, .. } => {
            let family = SectionFamily {
                k: *k,
                offset: parse_offset(delta, d)?,
                bias: bias.as_deref().map(|b| parse_floats(b, d)).transpose()?,
            };
            let r = klee_section_test(body, &family, &cfg(*flats, *points))?;
            emit(cmd, &loaded, criterion_output(&r))
        }
        Command::T12 { apexes, radius, scans, points, .. } => {
            let radius = radius.unwrap_or(3.0 * body.bounding_radius());
            let surface = ApexSurface::Sphere { center: body.center(), radius };
            let r = visual_cone_test(body, &surface, &cfg(*apexes, *points), *scans)?;
            emit(cmd, &loaded, criterion_output(&r))
        }
        Command::Epsilon { p, q, family, .. } => {
            let poly = body.exact().ok_or_else(|| anyhow!("epsilon needs a polytope body"))?;
            let (p, q) = (parse_exact(p, d)?, parse_exact(q, d)?);
            let fam = FlatFamily { random: *family, seed: common.seed };
            let cert = epsilon_certificate(poly, &p, &q, &fam)?;
            let certified = no_extreme_in_cone(poly, &p, &q, cert.epsilon);
            let result = EpsilonResult::new(&cert.case, &p, &q, cert.epsilon, certified);
            emit(cmd, &loaded, Output { outcome: Outcome::Ok, result, figure: None })
        }
        Command::Walk { xi, start, .. } => {
            let poly = body.exact().ok_or_else(|| anyhow!("walk needs a polytope body"))?;
            let xi = parse_exact(xi, 3)?;
            let start = start.as_deref().map(|s| parse_exact(s, 2)).transpose()?;
            let walk = shadow_walk(poly, &xi, start)?;
            let chart_pts: Vec<[f64; 2]> = walk.vertices.iter().map(to_pair).collect();
            let figure = Figure::new("shadow walk")
                .polygon(chart_pts.clone(), "body")
                .dots(chart_pts.clone(), "sample")
                .labels(chart_pts, "v");
            let result = WalkResult {
                direction: (&xi).into(),
                chart: (&walk.chart).into(),
                start: (&walk.start).into(),
                vertices: exact_list(&walk.vertices),
                ambient_vertices: exact_list(&walk.ambient_vertices()),
                angles: walk.angles.clone(),
                steps: walk.steps,
                calls: walk.calls,
            };
            emit(cmd, &loaded, Output { outcome: Outcome::Ok, result, figure: Some(figure) })
        }
        Command::Mirkil { apex, scans, points, .. } => {
            let apex_f = parse_floats(apex, d)?;
            let scan = MirkilConfig {
                samples: *scans,
                points: *points,
                tau: common.tau,
                seed: common.seed,
            };
            let verdict = match body.exact() {
                Some(poly) => {
                    let z = Vector::from_f64_rationalized(&apex_f, RATIONAL_BITS);
                    mirkil_scan(&ExactConeOracle::new(visual_cone(&z, poly)?), &scan)?
                }
                None => {
                    if body.membership(&apex_f, common.tau) != Membership::Outside {
                        bail!("apex is not strictly outside the body");
                    }
                    let oracle = BodyConeOracle::new(body, apex_f.clone());
                    debug_assert_eq!(oracle.dim(), d);
                    mirkil_scan(&oracle, &scan)?
                }
            };
            emit(cmd, &loaded, mirkil_output(apex_f, &verdict))
        }
    }
}

fn to_pair(v: &Vector) -> [f64; 2] {
    let f = v.to_f64();
    [f[0], f[1]]
}

// Counterclockwise order of a convex polygon's vertices in the plane.
fn ccw(points: &[Point]) -> Vec<Point> {
    if points.len() < 3 {
        return points.to_vec();
    }
    let mut c = Vector::zeros(2);
    for p in points {
        c = &c + p;
    }
    let c = c.scale(&Scalar::ratio(1, points.len() as i64));
    let upper = |v: &Vector| v[1].is_positive() || (v[1].is_zero() && v[0].is_positive());
    let mut out = points.to_vec();
    out.sort_by(|a, b| {
        let (va, vb) = (a - &c, b - &c);
        upper(&vb).cmp(&upper(&va)).then_with(|| {
            let s = &va[0] * &vb[1] - &va[1] * &vb[0];
            if s.is_positive() {
                Ordering::Less
            } else if s.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    out
}

#[derive(Serialize)]
struct SectionResult {
    flat: FlatDto,
    empty: bool,
    /// Dimension of the section.
    dim: Option<usize>,
    /// Ambient vertices in lexicographic order.
    vertices: Vec<ExactVector>,
    /// Chart vertices, counterclockwise when the section is planar.
    chart_vertices: Vec<ExactVector>,
    sampled: Option<SampledResult>,
}

#[derive(Serialize)]
struct SampledResult {
    points: usize,
    polygonality: &'static str,
    edges: Option<usize>,
    curved: Option<CurvedDto>,
}

fn sampled_output(sample: &SectionSample, tau: f64) -> anyhow::Result<(Outcome, SampledResult, Figure)> {
    let verdict = polygonality_detect(sample, tau)?;
    let mut fig = Figure::new("sampled boundary").polygon(sample.points.clone(), "body").dots(sample.points.clone(), "sample");
    let (outcome, res) = match &verdict {
        Polygonality::Polygon { edges, .. } => (
            Outcome::Consistent,
            SampledResult {
                points: sample.len(),
                polygonality: "polygon",
                edges: Some(*edges),
                curved: None,
            },
        ),
        Polygonality::Curved(c) => {
            fig = fig.dots(c.points.to_vec(), "witness");
            (
                Outcome::NonPolytope,
                SampledResult {
                    points: sample.len(),
                    polygonality: "curved",
                    edges: None,
                    curved: Some(curved_dto(sample, c)),
                },
            )
        }
    };
    Ok((outcome, res, fig))
}

fn run_section(body: &Body, flat: &AffineFlat, points: usize, tau: f64) -> anyhow::Result<Output<SectionResult>> {
    if let Some(poly) = body.exact() {
        let sec = section(&poly.h_form(), flat)?;
        let Some(sec) = sec else {
            let result = SectionResult {
                flat: flat.into(),
                empty: true,
                dim: None,
                vertices: Vec::new(),
                chart_vertices: Vec::new(),
                sampled: None,
            };
            return Ok(Output { outcome: Outcome::Ok, result, figure: None });
        };
        let planar = sec.chart.dim() == 2 && flat.dim() == 2;
        let chart = if planar { ccw(sec.chart.vertices()) } else { sec.chart.vertices().to_vec() };
        let figure = planar.then(|| {
            let pts: Vec<[f64; 2]> = chart.iter().map(to_pair).collect();
            Figure::new("section").polygon(pts.clone(), "body").labels(pts, "v")
        });
        let mut vertices = sec.ambient_vertices.clone();
        vertices.sort();
        let result = SectionResult {
            flat: flat.into(),
            empty: false,
            dim: Some(sec.chart.dim()),
            vertices: exact_list(&vertices),
            chart_vertices: exact_list(&chart),
            sampled: None,
        };
        return Ok(Output { outcome: Outcome::Ok, result, figure });
    }
    if flat.dim() != 2 {
        bail!("sampled sections need a 2-dimensional flat");
    }
    let sample = sample_section_boundary(body, flat, points)?;
    let (outcome, sampled, figure) = sampled_output(&sample, tau)?;
    let result = SectionResult {
        flat: flat.into(),
        empty: false,
        dim: Some(2),
        vertices: Vec::new(),
        chart_vertices: Vec::new(),
        sampled: Some(sampled),
    };
    Ok(Output { outcome, result, figure: Some(figure) })
}

#[derive(Serialize)]
struct ProjectResult {
    subspace: FlatDto,
    dim: usize,
    /// Shadow vertices in chart coordinates, counterclockwise when planar.
    chart_vertices: Vec<ExactVector>,
    sampled: Option<SampledResult>,
}

fn run_project(body: &Body, sub: &AffineFlat, points: usize, tau: f64) -> anyhow::Result<Output<ProjectResult>> {
    if let Some(poly) = body.exact() {
        let shadow: Polytope = project(poly, sub)?;
        let planar = sub.dim() == 2 && shadow.dim() == 2;
        let chart = if planar { ccw(shadow.vertices()) } else { shadow.vertices().to_vec() };
        let figure = planar.then(|| {
            let pts: Vec<[f64; 2]> = chart.iter().map(to_pair).collect();
            Figure::new("projection").polygon(pts.clone(), "body").labels(pts, "v")
        });
        let result = ProjectResult {
            subspace: sub.into(),
            dim: shadow.dim(),
            chart_vertices: exact_list(&chart),
            sampled: None,
        };
        return Ok(Output { outcome: Outcome::Ok, result, figure });
    }
    if sub.dim() != 2 {
        bail!("sampled projections need a 2-dimensional subspace");
    }
    let sample = projection_sample(body, sub, points, 0.0);
    let (outcome, sampled, figure) = sampled_output(&sample, tau)?;
    let result = ProjectResult {
        subspace: sub.into(),
        dim: 2,
        chart_vertices: Vec::new(),
        sampled: Some(sampled),
    };
    Ok(Output { outcome, result, figure: Some(figure) })
}

#[derive(Serialize)]
struct ConeResult {
    apex: ExactVector,
    dim: usize,
    rays: Vec<ExactVector>,
    facet_normals: Vec<ExactVector>,
    equations: Vec<ExactVector>,
}

fn witness_figure(sample: &SectionSample, triple: [[f64; 2]; 3]) -> Figure {
    Figure::new("witness section")
        .polygon(sample.points.clone(), "body")
        .dots(sample.points.clone(), "sample")
        .dots(triple.to_vec(), "witness")
}

fn criterion_output(r: &CriterionReport) -> Output<CriterionDto> {
    let figure = r.verdict.witness().map(|w| match w {
        Witness::Section { sample, curved, .. } | Witness::Projection { sample, curved, .. } => {
            witness_figure(sample, curved.points)
        }
        Witness::Cone { scan, .. } => witness_figure(&scan.section, scan.curved.points),
    });
    let outcome = if r.verdict.is_consistent() { Outcome::Consistent } else { Outcome::NonPolytope };
    debug_assert_eq!(outcome.name(), verdict_name(&r.verdict));
    Output { outcome, result: r.into(), figure }
}

#[derive(Serialize)]
struct MirkilResult {
    apex: Vec<f64>,
    verdict: &'static str,
    samples: Option<usize>,
    inconclusive: Option<usize>,
    zero_budget: bool,
    scan_index: Option<usize>,
    subspace: Option<Vec<Vec<f64>>>,
    plane_normal: Option<Vec<f64>>,
    curved: Option<CurvedDto>,
}

fn mirkil_output(apex: Vec<f64>, v: &MirkilVerdict) -> Output<MirkilResult> {
    match v {
        MirkilVerdict::Consistent { samples, inconclusive, zero_budget } => Output {
            outcome: Outcome::Consistent,
            result: MirkilResult {
                apex,
                verdict: "polyhedral-consistent",
                samples: Some(*samples),
                inconclusive: Some(*inconclusive),
                zero_budget: *zero_budget,
                scan_index: None,
                subspace: None,
                plane_normal: None,
                curved: None,
            },
            figure: None,
        },
        MirkilVerdict::NonPolyhedral(w) => Output {
            outcome: Outcome::NonPolytope,
            result: MirkilResult {
                apex,
                verdict: "non-polyhedral",
                samples: None,
                inconclusive: None,
                zero_budget: false,
                scan_index: Some(w.sample_index),
                subspace: Some(w.subspace.clone()),
                plane_normal: Some(w.plane_normal.clone()),
                curved: Some(curved_dto(&w.section, &w.curved)),
            },
            figure: Some(witness_figure(&w.section, w.curved.points)),
        },
    }
}

#[derive(Serialize)]
struct EpsilonResult {
    p: ExactVector,
    q: ExactVector,
    case: &'static str,
    epsilon: f64,
    /// No other vertex lies in the certified neighbourhood.
    certified: bool,
    radius: Option<f64>,
    flat: Option<FlatDto>,
    delta: Option<f64>,
    vertices: Vec<ExactVector>,
    interior: Option<ExactVector>,
}

impl EpsilonResult {
    fn new(case: &CertificateCase, p: &Point, q: &Point, epsilon: f64, certified: bool) -> Self {
        let mut r = EpsilonResult {
            p: p.into(),
            q: q.into(),
            case: "",
            epsilon,
            certified,
            radius: None,
            flat: None,
            delta: None,
            vertices: Vec::new(),
            interior: None,
        };
        match case {
            CertificateCase::InteriorCrossing { radius, .. } => {
                r.case = "interior-crossing";
                r.radius = Some(*radius);
            }
            CertificateCase::BoundarySegment { flat, vertices, delta, interior } => {
                r.case = "boundary-segment";
                r.flat = Some(flat.into());
                r.delta = Some(*delta);
                let mut v = vertices.clone();
                v.sort();
                r.vertices = exact_list(&v);
                r.interior = Some(interior.into());
            }
        }
        r
    }
}

#[derive(Serialize)]
struct WalkResult {
    direction: ExactVector,
    chart: FlatDto,
    start: ExactVector,
    /// Chart coordinates, counterclockwise from the first vertex found.
    vertices: Vec<ExactVector>,
    ambient_vertices: Vec<ExactVector>,
    angles: Vec<f64>,
    steps: usize,
    calls: usize,
}

fn parse_exact(text: &str, d: usize) -> anyhow::Result<Vector> {
    let coords: Vec<Scalar> = text
        .split(',')
        .map(|t| t.trim().parse::<Scalar>().map_err(|_| anyhow!("bad number {t:?} in {text:?}")))
        .collect::<anyhow::Result<_>>()?;
    if coords.len() != d {
        bail!("expected {d} coordinates in {text:?}, found {}", coords.len());
    }
    Ok(Vector::new(coords))
}

fn parse_floats(text: &str, d: usize) -> anyhow::Result<Vec<f64>> {
    Ok(parse_exact(text, d)?.to_f64())
}

/// `n=a,b,c;c=v` (hyperplane `n·x = v`) or `p=…;d=…;d=…` (point and
/// directions; `p` defaults to the origin).
pub fn parse_flat(text: &str, d: usize) -> anyhow::Result<AffineFlat> {
    let mut normal = None;
    let mut offset = None;
    let mut point = None;
    let mut dirs = Vec::new();
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| anyhow!("expected key=value in {part:?}"))?;
        match key.trim() {
            "n" => normal = Some(parse_exact(value, d)?),
            "c" => offset = Some(value.trim().parse::<Scalar>().map_err(|_| anyhow!("bad offset {value:?}"))?),
            "p" => point = Some(parse_exact(value, d)?),
            "d" => dirs.push(parse_exact(value, d)?),
            other => bail!("unknown flat key {other:?}"),
        }
    }
    match normal {
        Some(n) => {
            if point.is_some() || !dirs.is_empty() {
                bail!("give either a normal or a point with directions, not both");
            }
            Ok(AffineFlat::hyperplane(&n, &offset.unwrap_or_else(Scalar::zero))?)
        }
        None => {
            if offset.is_some() {
                bail!("an offset needs a normal");
            }
            if dirs.is_empty() {
                bail!("a flat needs a normal or at least one direction");
            }
            let flat = AffineFlat::new(point.unwrap_or_else(|| Vector::zeros(d)), &dirs)?;
            if flat.dim() != dirs.len() {
                bail!("flat directions are linearly dependent");
            }
            Ok(flat)
        }
    }
}

fn parse_offset(text: &str, d: usize) -> anyhow::Result<Offset> {
    let t = text.trim();
    if t == "central" {
        return Ok(Offset::Central);
    }
    if let Some(rest) = t.strip_prefix("quad:") {
        let (amp, axis) = rest.split_once(':').ok_or_else(|| anyhow!("expected quad:AMP:x,y,…"))?;
        return Ok(Offset::Quadratic {
            amplitude: amp.trim().parse().context("bad amplitude")?,
            axis: parse_floats(axis, d)?,
        });
    }
    Ok(Offset::Constant(t.parse().map_err(|_| anyhow!("bad offset {t:?}"))?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flats() {
        let f = parse_flat("n=1,1,1;c=0", 3).unwrap();
        assert_eq!(f.dim(), 2);
        assert!(f.contains(&Vector::from_ints(&[1, -1, 0])));
        let g = parse_flat("p=0,0,1/2; d=1,0,0; d=0,1,0", 3).unwrap();
        assert!(g.contains(&Vector::new(vec![Scalar::from_int(3), Scalar::zero(), Scalar::ratio(1, 2)])));
        assert!(parse_flat("d=1,0,0;d=2,0,0", 3).is_err());
        assert!(parse_flat("n=1,0", 3).is_err());
        assert!(parse_flat("n=1,0,0;d=0,1,0", 3).is_err());
        assert!(parse_flat("x=1", 3).is_err());
    }

    #[test]
    fn offsets() {
        assert_eq!(parse_offset("central", 3).unwrap(), Offset::Central);
        assert_eq!(parse_offset("0.25", 3).unwrap(), Offset::Constant(0.25));
        assert_eq!(
            parse_offset("quad:0.3:0,0,1", 3).unwrap(),
            Offset::Quadratic { amplitude: 0.3, axis: vec![0.0, 0.0, 1.0] }
        );
        assert!(parse_offset("quad:0.3", 3).is_err());
    }

    #[test]
    fn counterclockwise_order() {
        let pts: Vec<Vector> = [[1, 1], [-1, -1], [1, -1], [-1, 1]].iter().map(|p| Vector::from_ints(p)).collect();
        let o = ccw(&pts);
        let want: Vec<Vector> = [[1, 1], [-1, 1], [-1, -1], [1, -1]].iter().map(|p| Vector::from_ints(p)).collect();
        // Same cycle, possibly rotated.
        let k = o.iter().position(|p| *p == want[0]).unwrap();
        for i in 0..4 {
            assert_eq!(o[(k + i) % 4], want[i]);
        }
    }
}
