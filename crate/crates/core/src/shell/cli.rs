//! The `ktour` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::board::{BoardSpec, Topology};
use crate::construct::{construct, family_tour, Family};
use crate::error::Error;
use crate::lift::{classify, ClassTarget};
use crate::search::{count_tours, find_tour, Budget, Mode, SearchOutcome, SearchProblem};
use crate::theorems::{verify_cells, Method, Source, VerdictRow};
use crate::tour::Tour;

use super::document::{deserialize, serialize, TourDocument};
use super::render::{render, RenderMode, RenderOptions};
use super::store::FixtureStore;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ktour", version, about = "Knight's tours on boards, cylinders and tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a closed tour of a given class.
    Solve(SolveArgs),
    /// Print the homotopy class of a tour document.
    Classify(InputArgs),
    /// Sweep a characterization against search and construction.
    Verify(VerifyArgs),
    /// Build a tour from the inductive families.
    Construct(ConstructArgs),
    /// Count closed tours up to rotation and reversal.
    Count(SolveArgs),
    /// Draw a tour document.
    Render(RenderArgs),
    /// Manage the fixture store.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Args, Debug)]
struct BoardArgs {
    #[arg(long, value_enum, default_value = "regular")]
    topology: TopologyArg,
    #[arg(short = 'm')]
    m: i64,
    #[arg(short = 'n')]
    n: i64,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, default_value_t = 50_000_000)]
    budget_nodes: u64,
    #[arg(long, default_value_t = 600_000)]
    budget_ms: u64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    board: BoardArgs,
    #[arg(long, default_value = "any")]
    target: ClassTarget,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Tour document, `-` for standard input.
    input: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    source: Source,
    /// Values of `m`: `4`, `1-6` or `2,4,6`.
    #[arg(short = 'm')]
    m: String,
    #[arg(short = 'n')]
    n: String,
    #[arg(long, value_enum, default_value = "construct")]
    method: MethodArg,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, value_enum, default_value = "cylinder")]
    topology: TopologyArg,
    #[arg(short = 'm')]
    m: i64,
    #[arg(short = 'n')]
    n: i64,
    #[arg(long, default_value = "identity")]
    target: ClassTarget,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct RenderArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "board")]
    mode: ModeArg,
    #[arg(long)]
    no_domains: bool,
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u32).range(4..))]
    cell_px: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    /// Re-derive every fixture into a directory.
    Rebuild {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check every fixture against the manifest.
    Verify {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TopologyArg {
    Regular,
    Cylinder,
    Torus,
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Self {
        match t {
            TopologyArg::Regular => Topology::Regular,
            TopologyArg::Cylinder => Topology::Cylinder,
            TopologyArg::Torus => Topology::Torus,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Search,
    Construct,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Board,
    Lift,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, dest: &Option<PathBuf>, bytes: &[u8]) -> i32 {
        let res = match dest {
            Some(p) => fs::write(p, bytes),
            None => self.out.write_all(bytes),
        };
        match res {
            Ok(()) => EXIT_OK,
            Err(e) => self.fail(&Error::Io(e)),
        }
    }

    fn fail(&mut self, e: &Error) -> i32 {
        let _ = writeln!(self.err, "ktour: {e}");
        exit_code(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Unsupported(_) => EXIT_NONE,
        _ => EXIT_INVALID,
    }
}

fn budget(b: &BudgetArgs) -> Result<Budget, Error> {
    if b.budget_nodes == 0 || b.budget_ms == 0 {
        return Err(Error::InvalidProblem("budgets must be positive".into()));
    }
    Ok(Budget::new(b.budget_nodes, b.budget_ms))
}

fn spec(b: &BoardArgs) -> Result<BoardSpec, Error> {
    BoardSpec::new(b.topology.into(), b.m, b.n)
}

/// Parses `4`, `1-6`, `1..6`, `1..=6` or `2,4,6`.
fn parse_values(s: &str) -> Result<Vec<i64>, Error> {
    let bad = || Error::InvalidProblem(format!("cannot read `{s}` as a list of sizes"));
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let range = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match range {
            Some((a, b)) => {
                let (a, b): (i64, i64) = (
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                );
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() || out.iter().any(|&v| v < 1) {
        return Err(bad());
    }
    Ok(out)
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, Error> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read(path)?)
    }
}

fn tour_output(tour: &Tour, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut b = serialize(tour);
            b.push(b'\n');
            b
        }
        Format::Text => render(tour, &RenderOptions::new(RenderMode::BoardAscii)).into_bytes(),
        Format::Svg => render(tour, &RenderOptions::new(RenderMode::LiftSvg)).into_bytes(),
    }
}

fn solve(io: &mut Io, a: &SolveArgs) -> Result<i32, Error> {
    let spec = spec(&a.board)?;
    let problem = SearchProblem::new(spec, a.target, Mode::FindOne);
    match find_tour(&problem, budget(&a.budget)?)? {
        SearchOutcome::Found(t) => Ok(io.emit(&a.output.out, &tour_output(&t, a.output.format))),
        SearchOutcome::BudgetExceeded { nodes, ms } => Ok(io.fail(&Error::BudgetExceeded { nodes, ms })),
        _ => {
            let _ = writeln!(io.err, "ktour: no {} tour on {spec}", a.target);
            Ok(EXIT_NONE)
        }
    }
}

fn count(io: &mut Io, a: &SolveArgs) -> Result<i32, Error> {
    let spec = spec(&a.board)?;
    let problem = SearchProblem::new(spec, a.target, Mode::CountAll);
    match count_tours(&problem, budget(&a.budget)?)? {
        SearchOutcome::Exhausted(c) => {
            let text = match a.output.format {
                Format::Json => format!(
                    "{{\"topology\":\"{}\",\"m\":{},\"n\":{},\"target\":\"{}\",\"count\":{c}}}\n",
                    spec.topology(),
                    spec.m(),
                    spec.n(),
                    a.target
                ),
                _ => format!("{spec} {}: {c}\n", a.target),
            };
            Ok(io.emit(&a.output.out, text.as_bytes()))
        }
        SearchOutcome::BudgetExceeded { nodes, ms } => Ok(io.fail(&Error::BudgetExceeded { nodes, ms })),
        other => Err(Error::InvalidProblem(format!("unexpected outcome {other}"))),
    }
}

fn classify_cmd(io: &mut Io, a: &InputArgs) -> Result<i32, Error> {
    let tour = deserialize(&read_input(&a.input)?)?;
    let cls = classify(tour.spec(), &tour)?;
    let _ = writeln!(io.out, "{cls}");
    Ok(EXIT_OK)
}

fn row_json(r: &VerdictRow) -> String {
    let ev = serde_json::to_string(&r.evidence).expect("evidence serializes");
    format!(
        "{{\"source\":\"{}\",\"topology\":\"{}\",\"m\":{},\"n\":{},\"target\":\"{}\",\"predicted\":{},\"evidence\":{ev},\"agree\":{},\"ms\":{}}}",
        r.claim.source,
        r.claim.spec.topology(),
        r.claim.spec.m(),
        r.claim.spec.n(),
        r.claim.target,
        r.claim.predicted,
        r.agree,
        r.ms
    )
}

fn row_text(r: &VerdictRow) -> String {
    format!(
        "{:<10} {:>3} {:>3}  {:<9} {:<5}  {:<28} {:<5} {:>7}ms",
        r.claim.source.name(),
        r.claim.spec.m(),
        r.claim.spec.n(),
        r.claim.target.to_string(),
        r.claim.predicted,
        r.evidence.to_string(),
        if r.agree { "ok" } else { "FAIL" },
        r.ms
    )
}

fn verify(io: &mut Io, a: &VerifyArgs) -> Result<i32, Error> {
    let ms = parse_values(&a.m)?;
    let ns = parse_values(&a.n)?;
    let cells: Vec<(i64, i64)> = ms.iter().flat_map(|&m| ns.iter().map(move |&n| (m, n))).collect();
    let method = match a.method {
        MethodArg::Search => Method::SearchOnly,
        MethodArg::Construct => Method::ConstructThenSearch,
    };
    let rows = verify_cells(a.source, &cells, method, budget(&a.budget)?, a.jobs.max(1))?;
    let mut text = String::new();
    for r in &rows {
        text.push_str(&match a.output.format {
            Format::Json => row_json(r),
            _ => row_text(r),
        });
        text.push('\n');
    }
    let code = io.emit(&a.output.out, text.as_bytes());
    if code != EXIT_OK {
        return Ok(code);
    }
    Ok(if rows.iter().any(|r| !r.agree && !r.evidence.is_skipped()) {
        EXIT_NONE
    } else if rows.iter().any(|r| r.evidence.is_skipped()) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

fn construct_cmd(io: &mut Io, a: &ConstructArgs) -> Result<i32, Error> {
    let tour = match a.family {
        Some(f) => {
            if !f.admits(a.m, a.n) {
                return Err(Error::Unsupported(format!("{f} does not cover {}x{}", a.m, a.n)));
            }
            family_tour(f, a.m, a.n)?
        }
        None => {
            let spec = BoardSpec::new(a.topology.into(), a.m, a.n)?;
            construct(spec, a.target, budget(&a.budget)?)?
        }
    };
    Ok(io.emit(&a.output.out, &tour_output(&tour, a.output.format)))
}

fn render_cmd(io: &mut Io, a: &RenderArgs) -> Result<i32, Error> {
    let tour = deserialize(&read_input(&a.input)?)?;
    let mode = match (a.output.format, a.mode) {
        (Format::Svg, _) => RenderMode::LiftSvg,
        (_, ModeArg::Board) => RenderMode::BoardAscii,
        (_, ModeArg::Lift) => RenderMode::LiftAscii,
    };
    let opts = RenderOptions {
        mode,
        show_fundamental_domains: !a.no_domains,
        cell_px: a.cell_px,
    };
    let bytes = if a.output.format == Format::Json {
        TourDocument::from_tour(&tour).to_bytes()
    } else {
        render(&tour, &opts).into_bytes()
    };
    Ok(io.emit(&a.output.out, &bytes))
}

fn fixtures(io: &mut Io, action: &FixtureAction) -> Result<i32, Error> {
    match action {
        FixtureAction::Rebuild { dir, budget: b } => {
            let manifest = FixtureStore::new(dir).rebuild(budget(b)?)?;
            let _ = writeln!(
                io.out,
                "wrote {} fixtures to {}",
                manifest.fixtures.len(),
                dir.display()
            );
        }
        FixtureAction::Verify { dir } => {
            let count = FixtureStore::new(dir).verify()?;
            let _ = writeln!(io.out, "{count} fixtures match the manifest");
        }
    }
    Ok(EXIT_OK)
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    let res = match &cli.command {
        Command::Solve(a) => solve(&mut io, a),
        Command::Classify(a) => classify_cmd(&mut io, a),
        Command::Verify(a) => verify(&mut io, a),
        Command::Construct(a) => construct_cmd(&mut io, a),
        Command::Count(a) => count(&mut io, a),
        Command::Render(a) => render_cmd(&mut io, a),
        Command::Fixtures { action } => fixtures(&mut io, action),
    };
    match res {
        Ok(code) => code,
        Err(e) => io.fail(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("4").unwrap(), vec![4]);
        assert_eq!(parse_values("1-3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_values("1..=3,7").unwrap(), vec![1, 2, 3, 7]);
        assert!(parse_values("3-1").is_err());
        assert!(parse_values("0").is_err());
        assert!(parse_values("x").is_err());
    }
}
