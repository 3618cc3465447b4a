//! `aip`: command-line front end for affine invariant points and polar duality.

mod args;
mod body;
mod commands;
mod json;
mod parallel;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use aip_core::{PointFunction, Vec2};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Affine invariant points, polar duality and the [p, q] product on convex polygons.
///
/// Randomized suites draw from ChaCha8 seeded with --seed; nothing reads
/// system entropy, so equal arguments give byte-identical output. All floats
/// are written with 17 significant digits.
///
/// Exit status: 0 on success or a passing check, 1 on a failing check or a
/// numerical failure, 2 on a usage error.
#[derive(Parser)]
#[command(name = "aip", version)]
pub struct Cli {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random trials in suites.
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Tolerance override `name=value` (dual, product, invariance, preimage).
    #[arg(long = "tol", global = true, value_parser = args::tol)]
    pub tol: Vec<(String, f64)>,
    /// Worker threads for independent trials; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Also draw the bodies involved to this SVG file.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct BodyArgs {
    /// square, cross, simplex, ngon(m), kab(a,b), beta(eta), random(k,seed) or file:path.
    #[arg(long)]
    pub body: String,
    /// Affine map `a,b,c,d,tx,ty` applied to the body: x ↦ [[a,b],[c,d]]x + t.
    #[arg(long, allow_hyphen_values = true)]
    pub map: Option<String>,
}

#[derive(Args, Clone)]
pub struct OptBodyArgs {
    /// Check this body only instead of a random suite.
    #[arg(long)]
    pub body: Option<String>,
    /// Affine map `a,b,c,d,tx,ty` applied to the body.
    #[arg(long, allow_hyphen_values = true, requires = "body")]
    pub map: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum EllipseKind {
    John,
    Loewner,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RegionKind {
    Floating,
    Illumination,
    Santalo,
    John,
    Symcore,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print a body as JSON.
    Body {
        #[command(flatten)]
        body: BodyArgs,
    },
    /// Evaluate an invariant point.
    Point {
        #[command(flatten)]
        body: BodyArgs,
        /// centroid, santalo, john, loewner, symcore (or g, s, j, l, m),
        /// capfamily(eps,delta), or the point JSON.
        #[arg(long, value_parser = args::point)]
        id: PointFunction,
    },
    /// The polar body K^z = (K − z)° + z.
    Polar {
        #[command(flatten)]
        body: BodyArgs,
        /// Center of polarity; must be interior.
        #[arg(long, value_parser = args::coords, allow_hyphen_values = true, default_value = "0,0")]
        about: Vec2,
    },
    /// The projective shift K_z = (K° − z)°.
    Shift {
        #[command(flatten)]
        body: BodyArgs,
        /// Shift vector; must be interior to K°.
        #[arg(long, value_parser = args::coords, allow_hyphen_values = true)]
        z: Vec2,
    },
    /// John (inscribed) or Löwner (enclosing) ellipse with its contact certificate.
    Ellipse {
        kind: EllipseKind,
        #[command(flatten)]
        body: BodyArgs,
    },
    /// Invariant set map evaluated on a ray or direction grid.
    Region {
        kind: RegionKind,
        #[command(flatten)]
        body: BodyArgs,
        /// delta for floating and illumination bodies, c for the level sets.
        #[arg(long)]
        param: f64,
        /// Grid resolution (at least 64).
        #[arg(long, default_value_t = aip_core::regions::DEFAULT_DIRECTIONS)]
        rays: usize,
    },
    /// Check that q is dual to p: q(K^{p(K)}) = p(K).
    DualCheck {
        #[arg(long, value_parser = args::point)]
        p: PointFunction,
        #[arg(long, value_parser = args::point)]
        q: PointFunction,
        #[command(flatten)]
        body: OptBodyArgs,
    },
    /// Check [p, q](r) = r for the given r (repeatable; default centroid).
    ProductCheck {
        #[arg(long, value_parser = args::point)]
        p: PointFunction,
        #[arg(long, value_parser = args::point)]
        q: PointFunction,
        #[arg(long, value_parser = args::point)]
        r: Vec<PointFunction>,
        #[command(flatten)]
        body: OptBodyArgs,
    },
    /// Check affine equivariance p(TK) = T p(K) under random maps.
    Invariance {
        #[arg(long, value_parser = args::point)]
        id: PointFunction,
        #[command(flatten)]
        body: OptBodyArgs,
    },
    /// Solve p((C − z)°) = 0 for z.
    Preimage {
        #[arg(long, value_parser = args::point)]
        id: PointFunction,
        #[command(flatten)]
        body: BodyArgs,
        /// Starting point (default: centroid of C).
        #[arg(long, value_parser = args::coords, allow_hyphen_values = true)]
        init: Option<Vec2>,
    },
    /// Certify that the cap-family point map is not injective.
    Counterexample {
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
        /// Cap parameter (default |alpha(eta)|/10).
        #[arg(long)]
        eps: Option<f64>,
        /// Use this delta instead of solving the moment balance.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Iterate r ↦ [p, p](r) starting from p and report the points.
    IterateProduct {
        #[arg(long, value_parser = args::point)]
        id: PointFunction,
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
}

/// Why a command did not succeed.
pub enum Failure {
    /// Bad input; exit status 2.
    Usage(String),
    /// A check or a solver failed; exit status 1.
    Check(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = commands::run(&cli);
    if let Some(json) = &out.stdout {
        println!("{json}");
    }
    match out.status {
        Ok(passed) => ExitCode::from(if passed { 0 } else { 1 }),
        Err(Failure::Usage(msg)) => {
            eprintln!("aip: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("aip: {msg}");
            ExitCode::from(1)
        }
    }
}
