use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vuf_cli::acceptance;
use vuf_cli::config::{parse_j_flag, parse_list, parse_profile_flag};
use vuf_cli::{render_table, run, CliError, Command, FiberKind, Format, Result, RunConfig};

#[derive(Parser)]
#[command(name = "vuf", version, about = "Nonreduced parabolics, Chow transfer, fiber thickenings and finite-field checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Default)]
struct Common {
    /// Root system, e.g. A4.
    #[arg(long, global = true)]
    system: Option<String>,
    /// Simple roots of the Levi, e.g. "a,c".
    #[arg(long, global = true)]
    levi: Option<String>,
    /// Profile on negative simple roots, e.g. "-b:1,-a:inf".
    #[arg(long, global = true, allow_hyphen_values = true)]
    profile: Option<String>,
    /// Explicit J with exponents, e.g. "-b:1,-a-b:2".
    #[arg(short = 'J', global = true, allow_hyphen_values = true)]
    j: Option<String>,
    /// Characteristic.
    #[arg(short, global = true)]
    p: Option<u64>,
    /// strict or permissive.
    #[arg(long, global = true)]
    validation: Option<String>,
    /// BSDH word, e.g. "sa*sb, sd".
    #[arg(long, global = true)]
    word: Option<String>,
    #[arg(long, global = true)]
    element: Option<String>,
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// TOML or JSON file whose settings override the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Positive roots and Cartan matrix.
    Root,
    /// Minimal coset representatives, or data of one element.
    Weyl,
    /// The parabolic datum and its consistency.
    Parabolic,
    /// Pushforward and pullback coefficients on Schubert classes.
    Chow,
    /// Thickenings of BSDH projections and Schubert cells.
    Fiber {
        #[command(subcommand)]
        kind: FiberCmd,
    },
    /// Geometric Demazure product and dimension of a BSDH word.
    Star,
    /// Q-type test and convolution targets.
    Qtype {
        #[arg(long)]
        levi_q: Option<String>,
        /// 1-based group ends, e.g. "1,3".
        #[arg(long)]
        theta: Option<String>,
    },
    /// Equations, singular loci and point counts of the built-in varieties.
    Variety(VarietyArgs),
    /// Point counts of a built-in variety or of given equations.
    Count {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Variable order, e.g. "x,y,z".
        #[arg(long)]
        vars: Option<String>,
        /// An equation; repeat for several.
        #[arg(long = "eq")]
        equations: Vec<String>,
        #[arg(long)]
        projective: bool,
    },
    /// Run the acceptance suite.
    Accept,
}

#[derive(Subcommand)]
enum FiberCmd {
    First {
        /// A fixed point v, or "all".
        #[arg(long)]
        at: Option<String>,
    },
    Last,
    Cell,
}

#[derive(Args)]
struct VarietyArgs {
    /// incidence, twisted-incidence, schubert, nonnormal-schubert, bsdh-sl3
    kind: Option<String>,
    #[arg(short = 'n')]
    ambient_dim: Option<usize>,
    /// Schubert indices "i,j".
    #[arg(long)]
    indices: Option<String>,
    #[arg(long)]
    untwisted: bool,
    #[arg(long)]
    certify_normality: bool,
    /// Chart by variable names, e.g. "z1,w4".
    #[arg(long)]
    chart: Option<String>,
    /// Field sizes, e.g. "q=2,4".
    #[arg(long)]
    count_points: Option<String>,
}

fn names(text: &Option<String>) -> Result<Option<Vec<String>>> {
    text.as_deref().map(parse_list).transpose()
}

fn flags_config(common: &Common, cmd: &Cmd) -> Result<RunConfig> {
    let mut cfg = RunConfig {
        system: common.system.clone(),
        levi: names(&common.levi)?,
        p: common.p,
        validation: common.validation.clone(),
        word: common.word.clone(),
        element: common.element.clone(),
        budget: common.budget,
        format: common.format,
        output: common.output.clone(),
        ..Default::default()
    };
    if let Some(text) = &common.j {
        let (j, n) = parse_j_flag(text)?;
        cfg.j = Some(j);
        cfg.n = Some(n);
    }
    if let Some(text) = &common.profile {
        cfg.profile = Some(parse_profile_flag(text)?);
    }
    let apply_variety = |cfg: &mut RunConfig, v: &VarietyArgs| -> Result<()> {
        cfg.variety = v.kind.clone();
        cfg.ambient_dim = v.ambient_dim;
        cfg.indices = v.indices.as_deref().map(parse_list).transpose()?;
        cfg.untwisted = v.untwisted.then_some(true);
        cfg.certify_normality = v.certify_normality.then_some(true);
        cfg.chart = names(&v.chart)?;
        cfg.count_points = v.count_points.as_deref().map(parse_list).transpose()?;
        Ok(())
    };
    match cmd {
        Cmd::Fiber { kind: FiberCmd::First { at } } => cfg.at = at.clone(),
        Cmd::Qtype { levi_q, theta } => {
            cfg.levi_q = names(levi_q)?;
            cfg.theta = theta.as_deref().map(parse_list).transpose()?;
        }
        Cmd::Variety(v) => apply_variety(&mut cfg, v)?,
        Cmd::Count { variety, vars, equations, projective } => {
            apply_variety(&mut cfg, variety)?;
            cfg.variables = names(vars)?;
            cfg.equations = (!equations.is_empty()).then(|| equations.clone());
            cfg.projective = projective.then_some(true);
        }
        _ => {}
    }
    Ok(cfg)
}

fn command(cmd: &Cmd) -> Option<Command> {
    Some(match cmd {
        Cmd::Root => Command::Root,
        Cmd::Weyl => Command::Weyl,
        Cmd::Parabolic => Command::Parabolic,
        Cmd::Chow => Command::Chow,
        Cmd::Fiber { kind } => Command::Fiber(match kind {
            FiberCmd::First { .. } => FiberKind::First,
            FiberCmd::Last => FiberKind::Last,
            FiberCmd::Cell => FiberKind::Cell,
        }),
        Cmd::Star => Command::Star,
        Cmd::Qtype { .. } => Command::Qtype,
        Cmd::Variety(_) => Command::Variety,
        Cmd::Count { .. } => Command::Count,
        Cmd::Accept => return None,
    })
}

fn emit(cfg: &RunConfig, text: String) -> Result<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn accept(cfg: &RunConfig) -> Result<bool> {
    let outcomes = acceptance::run_all();
    let all = outcomes.iter().all(|o| o.passed);
    let text = match cfg.format.unwrap_or_default() {
        Format::Table => outcomes.iter().map(|o| o.line() + "\n").collect(),
        Format::Json => {
            let rows: Vec<_> = outcomes
                .iter()
                .map(|o| serde_json::json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}))
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({"passed": all, "rows": rows})).expect("serializable") + "\n"
        }
    };
    emit(cfg, text)?;
    Ok(all)
}

fn main_inner(cli: Cli) -> Result<ExitCode> {
    let mut cfg = flags_config(&cli.common, &cli.command)?;
    if let Some(path) = &cli.common.config {
        cfg = cfg.overlay(RunConfig::load(path)?);
    }
    let Some(cmd) = command(&cli.command) else {
        return Ok(if accept(&cfg)? { ExitCode::SUCCESS } else { ExitCode::FAILURE });
    };
    let report = run(cmd, &cfg)?;
    let text = match cfg.format.unwrap_or_default() {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Table => render_table(&report),
    };
    emit(&cfg, text)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match main_inner(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
