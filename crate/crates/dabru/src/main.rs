use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dabru::campaigns::{self, Campaign};
use dabru::commands;
use dabru::core::affine::AffineGround;
use dabru::core::bruhat::order::CoordMagnitude;
use dabru::core::bruhat::Budget;
use dabru::core::ground::FiniteGround;
use dabru::core::Error;
use dabru::grammar::{ParseError, Syntax};
use dabru::report::Report;
use dabru::sample::Sample;

#[derive(Parser)]
#[command(name = "dabru", about = "Exact computations in the double-affine Bruhat order")]
struct Cli {
    /// Write JSON Lines here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct GroundArgs {
    /// Finite ADE type; the ground is its untwisted affinization unless --finite.
    #[arg(long, default_value = "A1")]
    ground: String,
    /// Use the finite root system itself as the ground (single-affine case).
    #[arg(long)]
    finite: bool,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Largest |r| of candidate reflections.
    #[arg(long)]
    budget_r: Option<i64>,
    /// Largest |n| of candidate reflections.
    #[arg(long)]
    budget_n: Option<i64>,
}

impl BudgetArgs {
    fn get(&self) -> Result<Option<Budget>, Failure> {
        match (self.budget_r, self.budget_n) {
            (None, None) => Ok(None),
            (Some(r), Some(n)) if r >= 0 && n >= 0 => Ok(Some(Budget::new(r, n))),
            _ => Err(Failure::Input("--budget-r and --budget-n must be given together and be >= 0".into())),
        }
    }
}

#[derive(Args, Clone)]
struct SampleArgs {
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Length and ε-length of an element.
    Ell {
        #[command(flatten)]
        g: GroundArgs,
        #[arg(long)]
        x: String,
    },
    /// The edge x -- x s_root and its direction.
    Edge {
        #[command(flatten)]
        g: GroundArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        root: String,
    },
    /// Inv++ of the up-edge between x and x s_root.
    Invpp {
        #[command(flatten)]
        g: GroundArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        root: String,
    },
    /// Whether x -> x s_root is a cover.
    Cover {
        #[command(flatten)]
        g: GroundArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        root: String,
    },
    /// A three-step chain below a non-cover up-edge (affine ground).
    Chain {
        #[command(flatten)]
        g: GroundArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        root: String,
    },
    /// Budgeted x <= y with a certificate.
    Leq {
        #[command(flatten)]
        g: GroundArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Windowed Deodhar count: one triple from --x/--y/--z, or a sampled campaign.
    Deodhar {
        #[command(flatten)]
        g: GroundArgs,
        #[arg(long, requires_all = ["y", "z"])]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        z: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Seeded verification campaigns.
    Verify {
        mode: Mode,
        #[command(flatten)]
        g: GroundArgs,
        #[command(flatten)]
        s: SampleArgs,
        /// rotation: grid half-width.
        #[arg(long, default_value_t = 4)]
        grid: i64,
        /// height: largest |r| of affine roots.
        #[arg(long, default_value_t = 3)]
        max_size: i64,
        /// single-affine: largest Coxeter length for the length comparison.
        #[arg(long, default_value_t = 8)]
        ell_length: usize,
        /// single-affine: largest Coxeter length for the order comparison.
        #[arg(long, default_value_t = 6)]
        leq_length: usize,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum Mode {
    LengthDiff,
    Phipsi,
    Height,
    Rotation,
    SingleAffine,
    Covers,
}

enum Failure {
    /// Malformed input: exit 2.
    Input(String),
    /// The computation broke an internal invariant: exit 1.
    Internal(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

enum AnyGround {
    Affine(AffineGround),
    Finite(FiniteGround),
}

fn ground(args: &GroundArgs) -> Result<AnyGround, Failure> {
    Ok(if args.finite {
        AnyGround::Finite(FiniteGround::from_label(&args.ground)?)
    } else {
        AnyGround::Affine(AffineGround::from_label(&args.ground)?)
    })
}

fn affine_only(args: &GroundArgs, what: &str) -> Result<AffineGround, Failure> {
    match ground(args)? {
        AnyGround::Affine(g) => Ok(g),
        AnyGround::Finite(_) => Err(Failure::Input(format!("{what} needs an affine ground (drop --finite)"))),
    }
}

/// Subcommands that make sense over either ground.
fn generic<G: Sample>(g: &G, cmd: &Cmd) -> Result<Report, Failure>
where
    G::Coweight: CoordMagnitude,
    G::Weyl: CoordMagnitude,
{
    Ok(match cmd {
        Cmd::Ell { x, .. } => commands::ell_cmd(g, &g.parse_element(x)?)?,
        Cmd::Edge { x, root, .. } => commands::edge_cmd(g, &g.parse_element(x)?, &g.parse_root(root)?)?,
        Cmd::Invpp { x, root, .. } => commands::invpp_cmd(g, &g.parse_element(x)?, &g.parse_root(root)?)?,
        Cmd::Cover { x, root, .. } => commands::cover_cmd(g, &g.parse_element(x)?, &g.parse_root(root)?)?,
        Cmd::Leq { x, y, budget, .. } => {
            commands::leq_cmd(g, &g.parse_element(x)?, &g.parse_element(y)?, budget.get()?)?
        }
        Cmd::Deodhar { x: Some(x), y: Some(y), z: Some(z), budget, .. } => {
            let (x, y, z) = (g.parse_element(x)?, g.parse_element(y)?, g.parse_element(z)?);
            let mut rep = Report::new(campaigns::DEODHAR, g.label(), None, Vec::new());
            let rec = match budget.get()? {
                Some(b) => campaigns::deodhar_instance_with(g, &x, &y, &z, b, 0),
                None => campaigns::deodhar_instance(g, &x, &y, &z, 0),
            };
            rep.records.push(rec);
            rep
        }
        Cmd::Deodhar { samples, seed, budget, .. } => {
            campaigns::deodhar(g, &Campaign { budget: budget.get()?, ..Campaign::new(*samples, *seed) })
        }
        Cmd::Verify { mode, s, max_size, .. } => {
            let c = Campaign::new(s.samples, s.seed);
            match mode {
                Mode::LengthDiff => campaigns::length_diff(g, &c),
                Mode::Phipsi => campaigns::phipsi(g, &c),
                Mode::Height => campaigns::height(g, *max_size),
                _ => unreachable!("dispatched in run"),
            }
        }
        Cmd::Chain { .. } => unreachable!("dispatched in run"),
    })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.cmd {
        Cmd::Chain { g, x, root } => {
            let g = affine_only(g, "chain")?;
            Ok(commands::chain_cmd(&g, &g.parse_element(x)?, &g.parse_root(root)?)?)
        }
        Cmd::Verify { mode: Mode::Rotation, g, s, grid, .. } => {
            let g = affine_only(g, "verify rotation")?;
            Ok(campaigns::rotation(&g, *grid, s.samples, s.seed))
        }
        Cmd::Verify { mode: Mode::Covers, g, s, .. } => {
            let g = affine_only(g, "verify covers")?;
            Ok(campaigns::covers(&g, &Campaign::new(0, s.seed), s.samples as usize))
        }
        Cmd::Verify { mode: Mode::SingleAffine, g, ell_length, leq_length, .. } => {
            let f = FiniteGround::from_label(&g.ground)?;
            Ok(campaigns::single_affine(&f, *ell_length, *leq_length))
        }
        Cmd::Ell { g, .. }
        | Cmd::Edge { g, .. }
        | Cmd::Invpp { g, .. }
        | Cmd::Cover { g, .. }
        | Cmd::Leq { g, .. }
        | Cmd::Deodhar { g, .. }
        | Cmd::Verify { g, .. } => match ground(g)? {
            AnyGround::Affine(a) => generic(&a, &cli.cmd),
            AnyGround::Finite(f) => generic(&f, &cli.cmd),
        },
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("DABRU_THREADS") else { return Ok(()) };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("DABRU_THREADS={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Internal(e.to_string()))
}

fn emit(report: &Report, path: Option<&PathBuf>) -> io::Result<()> {
    match path {
        Some(p) => report.write_jsonl(BufWriter::new(File::create(p)?)),
        None => report.write_jsonl(BufWriter::new(io::stdout().lock())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|_| run(&cli));
    match outcome {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.output.as_ref()) {
                eprintln!("dabru: cannot write report: {e}");
                return ExitCode::from(2);
            }
            let _ = io::stderr().flush();
            ExitCode::from(report.exit_code() as u8)
        }
        Err(Failure::Input(m)) => {
            eprintln!("dabru: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("dabru: {m}");
            ExitCode::from(1)
        }
    }
}
