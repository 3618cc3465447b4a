//! Subcommand implementations. Each returns the JSON document to print and
//! whether the command passed.

use aip_core::counterexample::{certify_with_delta, default_eps, solve_delta, NonInjectivityCertificate};
use aip_core::duality::{
    dual_residual_one, invariance_check, iterate_product, polar_preimage, preimage_residual, product_apply,
    DualityReport,
};
use aip_core::ellipse::{john_ellipse_solve, loewner_ellipse_solve, verify_john_conditions, ContactMode};
use aip_core::geometry::{k_sub_z, polar_body};
use aip_core::random::{random_body, rng};
use aip_core::regions::SetMap;
use aip_core::{Error, PointFunction, Polygon, Vec2};
use serde::Serialize;

use crate::args::{PointJson, Tolerances};
use crate::body::{points, BodyJson, BodySpec};
use crate::svg::Scene;
use crate::{json, parallel, BodyArgs, Cli, Command, EllipseKind, Failure, OptBodyArgs, RegionKind};

pub struct Output {
    pub stdout: Option<String>,
    pub status: Result<bool, Failure>,
}

/// Maps per-body equivariance budgets: relative to `diam(T(K))`.
const CENTROID_INVARIANCE: f64 = 1e-10;
const SOLVER_INVARIANCE: f64 = 1e-6;
/// Random maps per body in the invariance suite.
const MAPS_PER_BODY: usize = 5;

fn core_failure(e: Error) -> Failure {
    match e {
        Error::DegenerateInput
        | Error::PointNotInterior { .. }
        | Error::ShiftOutOfRange { .. }
        | Error::SingularMap { .. }
        | Error::BadParams(_) => Failure::Usage(e.to_string()),
        _ => Failure::Check(e.to_string()),
    }
}

fn xy(v: Vec2) -> [f64; 2] {
    [v.x, v.y]
}

pub fn run(cli: &Cli) -> Output {
    match dispatch(cli) {
        Ok((doc, passed)) => Output {
            stdout: Some(doc),
            status: Ok(passed),
        },
        Err(Reject::Plain(f)) => Output {
            stdout: None,
            status: Err(f),
        },
        Err(Reject::WithReport(doc)) => Output {
            stdout: Some(doc),
            status: Ok(false),
        },
    }
}

enum Reject {
    Plain(Failure),
    /// A failed check that still has a report to print.
    WithReport(String),
}

impl From<Failure> for Reject {
    fn from(f: Failure) -> Reject {
        Reject::Plain(f)
    }
}

impl From<Error> for Reject {
    fn from(e: Error) -> Reject {
        Reject::Plain(core_failure(e))
    }
}

fn load(b: &BodyArgs) -> Result<Polygon, Failure> {
    BodySpec::parse(&b.body, b.map.as_deref())
        .and_then(|s| s.generate())
        .map_err(|e| Failure::Usage(e.to_string()))
}

/// The single `--body` if given, else `--trials` random bodies drawn from `--seed`.
fn suite(cli: &Cli, b: &OptBodyArgs) -> Result<Vec<Polygon>, Failure> {
    match &b.body {
        Some(body) => Ok(vec![load(&BodyArgs {
            body: body.clone(),
            map: b.map.clone(),
        })?]),
        None => {
            let mut r = rng(cli.seed);
            Ok((0..cli.trials).map(|_| random_body(&mut r)).collect())
        }
    }
}

fn write_svg(cli: &Cli, scene: &Scene) -> Result<(), Failure> {
    if let Some(path) = &cli.svg {
        std::fs::write(path, scene.render()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn tolerances(cli: &Cli) -> Result<Tolerances, Failure> {
    Tolerances::new(&cli.tol).map_err(Failure::Usage)
}

fn dispatch(cli: &Cli) -> Result<(String, bool), Reject> {
    let tols = tolerances(cli)?;
    let jobs = cli.jobs as usize;
    match &cli.command {
        Command::Body { body } => {
            let k = load(body)?;
            write_svg(cli, Scene::default().outline(k.vertices(), "black"))?;
            Ok((json::to_string(&BodyJson::from_polygon(&k)), true))
        }
        Command::Point { body, id } => {
            let k = load(body)?;
            let r = id.eval(&k)?;
            write_svg(cli, Scene::default().outline(k.vertices(), "black").point(r.value, "red"))?;
            let doc = PointDoc {
                id: PointJson::from_point(id),
                value: xy(r.value),
                iterations: r.iterations,
                residual: r.residual,
            };
            Ok((json::to_string(&doc), true))
        }
        Command::Polar { body, about } => {
            let k = load(body)?;
            let polar = polar_body(&k, *about)?;
            let mut scene = Scene::default();
            scene.outline(k.vertices(), "black").outline(polar.vertices(), "blue").point(*about, "red");
            write_svg(cli, &scene)?;
            Ok((json::to_string(&BodyJson::from_polygon(&polar)), true))
        }
        Command::Shift { body, z } => {
            let k = load(body)?;
            let shifted = k_sub_z(&k, *z)?;
            write_svg(cli, Scene::default().outline(k.vertices(), "black").outline(shifted.vertices(), "blue"))?;
            Ok((json::to_string(&BodyJson::from_polygon(&shifted)), true))
        }
        Command::Ellipse { kind, body } => ellipse(cli, *kind, &load(body)?),
        Command::Region {
            kind,
            body,
            param,
            rays,
        } => region(cli, *kind, &load(body)?, *param, *rays),
        Command::DualCheck { p, q, body } => {
            let bodies = suite(cli, body)?;
            let both_exact = [p, q].iter().all(|f| matches!(f, PointFunction::Centroid | PointFunction::Santalo));
            let tol = tols.get("dual", if both_exact { 1e-6 } else { 1e-5 });
            let outcomes = parallel::map(&bodies, jobs, |_, k| dual_residual_one(p, q, k));
            report(*p, *q, None, &bodies, outcomes, tol)
        }
        Command::ProductCheck { p, q, r, body } => {
            let rs = if r.is_empty() { vec![PointFunction::Centroid] } else { r.clone() };
            let bodies = suite(cli, body)?;
            let tol = tols.get("product", 1e-5);
            let outcomes = parallel::map(&bodies, jobs, |_, k| {
                let mut worst: f64 = 0.0;
                for rf in &rs {
                    let dev = product_apply(p, q, rf, k)?.dist(rf.point(k)?) / k.diam();
                    worst = worst.max(dev);
                }
                Ok(worst)
            });
            report(*p, *q, Some(&rs), &bodies, outcomes, tol)
        }
        Command::Invariance { id, body } => {
            let single = body.body.is_some();
            let bodies = suite(cli, body)?;
            let maps = if single { cli.trials as usize } else { MAPS_PER_BODY };
            let default = if *id == PointFunction::Centroid { CENTROID_INVARIANCE } else { SOLVER_INVARIANCE };
            let tol = tols.get("invariance", default);
            let outcomes = parallel::map(&bodies, jobs, |i, k| {
                invariance_check(id, k, maps, cli.seed.wrapping_add(i as u64))
            });
            report(*id, *id, None, &bodies, outcomes, tol)
        }
        Command::Preimage { id, body, init } => {
            let c = load(body)?;
            let start = init.unwrap_or_else(|| c.centroid());
            let z = polar_preimage(id, &c, start)?;
            let (f, scale) = preimage_residual(id, &c, z)?;
            let relative = f.norm() / scale;
            let tol = tols.get("preimage", 1e-8);
            write_svg(
                cli,
                Scene::default().outline(c.vertices(), "black").point(start, "gray").point(z, "red"),
            )?;
            let doc = PreimageDoc {
                id: PointJson::from_point(id),
                init: xy(start),
                z: xy(z),
                residual: f.norm(),
                relative_residual: relative,
                threshold: tol,
                passed: relative <= tol,
            };
            Ok((json::to_string(&doc), doc.passed))
        }
        Command::Counterexample { eta, eps, delta } => counterexample(*eta, *eps, *delta),
        Command::IterateProduct { id, body, steps } => {
            let k = load(body)?;
            let pts = iterate_product(id, &k, *steps)?;
            let d = k.diam();
            let doc = IterateDoc {
                id: PointJson::from_point(id),
                iterates: points(&pts),
                increments: pts.windows(2).map(|w| w[1].dist(w[0]) / d).collect(),
            };
            let mut scene = Scene::default();
            scene.outline(k.vertices(), "black");
            for &x in &pts {
                scene.point(x, "red");
            }
            write_svg(cli, &scene)?;
            Ok((json::to_string(&doc), true))
        }
    }
}

#[derive(Serialize)]
struct PointDoc {
    id: PointJson,
    value: [f64; 2],
    iterations: usize,
    residual: f64,
}

#[derive(Serialize)]
struct PreimageDoc {
    id: PointJson,
    init: [f64; 2],
    z: [f64; 2],
    residual: f64,
    relative_residual: f64,
    threshold: f64,
    passed: bool,
}

#[derive(Serialize)]
struct IterateDoc {
    id: PointJson,
    iterates: Vec<[f64; 2]>,
    /// `|r_{i+1}(K) − r_i(K)| / diam(K)`
    increments: Vec<f64>,
}

#[derive(Serialize)]
struct WorstBody {
    index: usize,
    body: BodyJson,
}

#[derive(Serialize)]
struct FailureDoc {
    index: usize,
    error: String,
}

#[derive(Serialize)]
struct ReportDoc {
    pair: [PointJson; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<Vec<PointJson>>,
    bodies_tested: usize,
    max_residual: f64,
    worst_body: Option<WorstBody>,
    failures: Vec<FailureDoc>,
    threshold: f64,
    passed: bool,
}

fn report(
    p: PointFunction,
    q: PointFunction,
    r: Option<&[PointFunction]>,
    bodies: &[Polygon],
    outcomes: Vec<aip_core::Result<f64>>,
    tol: f64,
) -> Result<(String, bool), Reject> {
    let mut rep = DualityReport::new(p, q);
    for (i, o) in outcomes.into_iter().enumerate() {
        rep.record(i, o);
    }
    let passed = rep.passes(tol);
    let doc = ReportDoc {
        pair: [PointJson::from_point(&p), PointJson::from_point(&q)],
        r: r.map(|rs| rs.iter().map(PointJson::from_point).collect()),
        bodies_tested: rep.bodies_tested,
        max_residual: rep.max_residual,
        worst_body: rep.worst_body.map(|i| WorstBody {
            index: i,
            body: BodyJson::from_polygon(&bodies[i]),
        }),
        failures: rep
            .failures
            .iter()
            .map(|(i, e)| FailureDoc {
                index: *i,
                error: e.to_string(),
            })
            .collect(),
        threshold: tol,
        passed,
    };
    Ok((json::to_string(&doc), passed))
}

#[derive(Serialize)]
struct Contact {
    direction: [f64; 2],
    weight: f64,
}

#[derive(Serialize)]
struct EllipseDoc {
    kind: &'static str,
    center: [f64; 2],
    shape: [[f64; 2]; 2],
    area: f64,
    iterations: usize,
    gap: f64,
    contacts: Vec<Contact>,
    certificate_residual: f64,
}

fn ellipse(cli: &Cli, kind: EllipseKind, k: &Polygon) -> Result<(String, bool), Reject> {
    let (solve, mode) = match kind {
        EllipseKind::John => (john_ellipse_solve(k)?, ContactMode::Inscribed),
        EllipseKind::Loewner => (loewner_ellipse_solve(k)?, ContactMode::Enclosing),
    };
    let e = solve.ellipse;
    let cert = verify_john_conditions(k, &e, mode)?;
    let l = e.shape();
    write_svg(
        cli,
        Scene::default()
            .outline(k.vertices(), "black")
            .outline(&e.boundary_points(128), "blue")
            .point(e.center(), "red"),
    )?;
    let doc = EllipseDoc {
        kind: "ellipse",
        center: xy(e.center()),
        shape: [[l.a, l.b], [l.c, l.d]],
        area: e.area(),
        iterations: solve.iterations,
        gap: solve.gap,
        contacts: cert
            .contacts
            .iter()
            .map(|&(u, w)| Contact {
                direction: xy(u),
                weight: w,
            })
            .collect(),
        certificate_residual: cert.max_residual(),
    };
    Ok((json::to_string(&doc), true))
}

#[derive(Serialize)]
struct RegionMeta {
    map: &'static str,
    rays: usize,
    param: f64,
    center: Option<[f64; 2]>,
    grid_error: f64,
}

#[derive(Serialize)]
struct RegionDoc {
    kind: &'static str,
    vertices: Vec<[f64; 2]>,
    meta: RegionMeta,
}

fn region(cli: &Cli, kind: RegionKind, k: &Polygon, param: f64, rays: usize) -> Result<(String, bool), Reject> {
    let map = match kind {
        RegionKind::Floating => SetMap::Floating(param),
        RegionKind::Illumination => SetMap::Illumination(param),
        RegionKind::Santalo => SetMap::Santalo(param),
        RegionKind::John => SetMap::John(param),
        RegionKind::Symcore => SetMap::Symcore(param),
    };
    let reg = map.apply(k, rays)?;
    let mut scene = Scene::default();
    scene.outline(k.vertices(), "black").outline(reg.polygon.vertices(), "blue");
    if let Some(c) = reg.center {
        scene.point(c, "red");
    }
    write_svg(cli, &scene)?;
    let doc = RegionDoc {
        kind: "polygon",
        vertices: points(reg.polygon.vertices()),
        meta: RegionMeta {
            map: map.name(),
            rays: reg.rays,
            param: reg.param,
            center: reg.center.map(xy),
            grid_error: reg.grid_error,
        },
    };
    Ok((json::to_string(&doc), true))
}

#[derive(Serialize)]
struct Witness {
    z: [f64; 2],
    residual: f64,
}

#[derive(Serialize)]
struct CapAreas {
    a: f64,
    a_geometric: f64,
    b: f64,
    b_geometric: f64,
}

#[derive(Serialize)]
struct CertificateDoc {
    passed: bool,
    eta: f64,
    eps: f64,
    delta: f64,
    alpha: f64,
    alpha_geometric: f64,
    residual_sym: f64,
    residual_eta: f64,
    disjoint: bool,
    cap_areas: CapAreas,
    witnesses: [Witness; 2],
    preimage_roots: [[f64; 2]; 2],
    f_eps_at_delta: f64,
    moment_at_delta: f64,
}

#[derive(Serialize)]
struct RejectedDoc {
    passed: bool,
    eta: f64,
    eps: f64,
    delta: f64,
    check: String,
    residual: Option<f64>,
}

fn certificate_doc(c: &NonInjectivityCertificate) -> CertificateDoc {
    let w = |i: usize| Witness {
        z: xy(c.witnesses[i].z),
        residual: c.witnesses[i].residual,
    };
    CertificateDoc {
        passed: true,
        eta: c.eta,
        eps: c.eps,
        delta: c.delta,
        alpha: c.alpha,
        alpha_geometric: c.alpha_geometric,
        residual_sym: c.residual_sym,
        residual_eta: c.residual_eta,
        disjoint: c.disjoint,
        cap_areas: CapAreas {
            a: c.cap_areas.0,
            a_geometric: c.cap_areas.1,
            b: c.cap_areas.2,
            b_geometric: c.cap_areas.3,
        },
        witnesses: [w(0), w(1)],
        preimage_roots: [xy(c.preimage_roots[0]), xy(c.preimage_roots[1])],
        f_eps_at_delta: c.f_eps_at_delta,
        moment_at_delta: c.moment_at_delta,
    }
}

fn counterexample(eta: f64, eps: Option<f64>, delta: Option<f64>) -> Result<(String, bool), Reject> {
    let eps = match eps {
        Some(e) => e,
        None => default_eps(eta)?,
    };
    let delta = match delta {
        Some(d) => d,
        None => solve_delta(eta, eps)?,
    };
    match certify_with_delta(eta, eps, delta) {
        Ok(c) => Ok((json::to_string(&certificate_doc(&c)), true)),
        Err(e) => {
            let (check, residual) = match &e {
                Error::CertificationFailure { check, residual } => (check.to_string(), Some(*residual)),
                _ => match core_failure(e) {
                    Failure::Check(msg) => (msg, None),
                    usage => return Err(usage.into()),
                },
            };
            let doc = RejectedDoc {
                passed: false,
                eta,
                eps,
                delta,
                check,
                residual,
            };
            Err(Reject::WithReport(json::to_string(&doc)))
        }
    }
}
