mod source;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stabci::construct::code_to_graph_code;
use stabci::io::{format_graph, format_record, parse_subgroup};
use stabci::library::{builtin, BuiltinKind};
use stabci::oracle::{ci_dense, ci_dense_prep_and_post};
use stabci::random::{random_bipartition, random_state, rng};
use stabci::sweep::{sweep, write_csv, ChannelKind, ChannelTemplate, Grid, StateSpec, SweepOptions, SweepRow};
use stabci::{
    coset_weight_table, syndrome_distribution, Bipartition, Limits, PauliSubgroup, PrepNoise, QubitSubset, Scope,
    SyndromeDistribution,
};

use source::{load_group, load_state, LoadedState, SourceArgs};

const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "stabci", version, about = "Coherent information of stabilizer states under Pauli noise")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep a channel parameter and report S_B, S_AB and the coherent information.
    Ci(CiArgs),
    /// Print the error basis, coset weight tables and syndrome distribution of a group.
    Enumerate(EnumerateArgs),
    /// Turn a stabilizer code into an equivalent graph code.
    Convert(ConvertArgs),
    /// Compare the closed forms with dense density matrices.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScopeArg {
    All,
    Bob,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::All => Scope::All,
            ScopeArg::Bob => Scope::Bob,
        }
    }
}

#[derive(Args, Debug)]
struct NoiseArgs {
    /// Channel, e.g. `depol:{grid}`, `dephase:0.9@B`, `pauli:0.7,0.1,0.1,0.1`.
    #[arg(long)]
    channel: String,
    /// Sweep grid `start:stop:steps`, used for `{grid}` in the channel.
    #[arg(long)]
    grid: Option<String>,
    /// Apply the channel everywhere or on Bob's qubits only.
    #[arg(long, value_enum, default_value = "all")]
    scope: ScopeArg,
    /// Skip the classical-code shortcut for graph states under dephasing.
    #[arg(long)]
    no_reduction: bool,
    /// Depolarizing parameter of the |+> preparation (graph states only).
    #[arg(long)]
    prep_lambda0: Option<f64>,
    /// Dephasing parameter of the |+> preparation (graph states only).
    #[arg(long)]
    prep_p0: Option<f64>,
}

impl NoiseArgs {
    fn template(&self) -> Result<ChannelTemplate> {
        Ok(self.channel.parse()?)
    }

    fn points(&self, template: &ChannelTemplate, default_grid: &str) -> Result<Vec<f64>> {
        match (&self.grid, template.uses_grid()) {
            (Some(g), true) => Ok(g.parse::<Grid>()?.points()),
            (None, true) => Ok(default_grid.parse::<Grid>()?.points()),
            (Some(_), false) => bail!(stabci::Error::Parse(format!(
                "--grid given but `{}` has no {{grid}} placeholder",
                self.channel
            ))),
            (None, false) => Ok(vec![fixed_parameter(template)]),
        }
    }

    fn options(&self) -> SweepOptions {
        let prep = (self.prep_lambda0.is_some() || self.prep_p0.is_some()).then(|| PrepNoise {
            lambda0: self.prep_lambda0.unwrap_or(1.0),
            p0: self.prep_p0.unwrap_or(1.0),
        });
        SweepOptions {
            scope: self.scope.into(),
            use_reduction: !self.no_reduction,
            prep,
        }
    }
}

/// The value written to the `noise_param` column for a channel without a
/// grid: its parameter, or the identity probability of a Pauli channel.
fn fixed_parameter(template: &ChannelTemplate) -> f64 {
    match &template.kind {
        ChannelKind::Depolarizing(p) | ChannelKind::Dephasing(p) => match p {
            stabci::sweep::Param::Value(v) => *v,
            stabci::sweep::Param::Grid => f64::NAN,
        },
        ChannelKind::Pauli(per) => per[0][0],
    }
}

#[derive(Args, Debug)]
struct CiArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Alice's qubits, e.g. "A: 1 2" (1-based).
    #[arg(long)]
    bipartition: Option<String>,
    #[command(flatten)]
    noise: NoiseArgs,
    /// Write the sweep CSV here. Without --csv or --json the CSV goes to stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the full reports, including entropy terms, as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Value of the `state` column; defaults to the built-in name or file stem.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Part {
    /// The group as given.
    Group,
    /// The group with Alice's qubits deleted.
    Deleted,
    /// Elements acting trivially on Alice, restricted to Bob.
    Contracted,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    bipartition: Option<String>,
    /// Which group to take cosets of.
    #[arg(long, value_enum, default_value = "group")]
    part: Part,
    /// Also evaluate the syndrome distribution under this channel.
    #[arg(long)]
    channel: Option<String>,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    /// Code generators, one Pauli string per line.
    #[arg(long, required_unless_present = "builtin", conflicts_with = "builtin")]
    generators: Option<PathBuf>,
    /// Built-in state; its code is the state contracted on Alice.
    #[arg(long)]
    builtin: Option<String>,
    /// Write the graph file here instead of stdout.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    /// Write the local Clifford record here instead of stdout.
    #[arg(long)]
    record_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    bipartition: Option<String>,
    #[command(flatten)]
    noise: NoiseArgs,
    /// Check this many random states instead of a given one.
    #[arg(long, conflicts_with_all = ["builtin", "graph", "generators"])]
    random: Option<usize>,
    /// Register size of the random states.
    #[arg(long, default_value_t = 6)]
    qubits: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failures with their own exit codes.
#[derive(Debug)]
enum Failure {
    Cap(String),
    Verification(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Cap(m) | Failure::Verification(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Failure {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(f) = cause.downcast_ref::<Failure>() {
            return match f {
                Failure::Cap(_) => 3,
                Failure::Verification(_) => 4,
            };
        }
        if let Some(stabci::Error::CapExceeded { .. }) = cause.downcast_ref::<stabci::Error>() {
            return 3;
        }
    }
    2
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut out = output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CiOutput<'a> {
    state: &'a str,
    channel: &'a str,
    scope: Scope,
    rows: &'a [SweepRow],
}

fn cmd_ci(args: &CiArgs, limits: &Limits) -> Result<()> {
    let LoadedState { name, spec } = load_state(&args.source, args.bipartition.as_deref())?;
    let name = args.name.clone().unwrap_or(name);
    let template = args.noise.template()?;
    let points = args.noise.points(&template, "0:1:101")?;
    let options = args.noise.options();
    let rows = sweep(&spec, &template, &options, &points, limits)?;
    if args.csv.is_some() || args.json.is_none() {
        let mut out = output(args.csv.as_deref())?;
        write_csv(&mut out, &name, &rows)?;
        out.flush()?;
    }
    if let Some(path) = &args.json {
        write_json(
            Some(path),
            &CiOutput {
                state: &name,
                channel: &args.noise.channel,
                scope: options.scope,
                rows: &rows,
            },
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct EnumerateOutput {
    part: Part,
    num_qubits: usize,
    rank: usize,
    /// `false` when deleting Alice's qubits lowered the rank.
    #[serde(skip_serializing_if = "Option::is_none")]
    rank_preserved: Option<bool>,
    error_basis: Vec<usize>,
    num_cosets: usize,
    weight_tables: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    channel: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distribution: Option<SyndromeDistribution>,
}

fn cmd_enumerate(args: &EnumerateArgs, limits: &Limits) -> Result<()> {
    let (group, bip) = load_group(&args.source, args.bipartition.as_deref())?;
    let m = group.num_qubits();
    let need_bip = || {
        bip.clone().ok_or_else(|| {
            stabci::Error::InvalidBipartition("--part deleted/contracted needs --bipartition".into())
        })
    };
    let (target, rank_preserved): (PauliSubgroup, Option<bool>) = match args.part {
        Part::Group => (group, None),
        Part::Deleted => {
            let d = group.delete(need_bip()?.alice())?;
            (d.group, Some(d.rank_preserved))
        }
        Part::Contracted => (group.contract(need_bip()?.alice())?, None),
    };
    let table = coset_weight_table(&target, limits)?;
    let distribution = match &args.channel {
        None => None,
        Some(text) => {
            let template: ChannelTemplate = text.parse()?;
            let bip = bip.clone().unwrap_or_else(|| Bipartition::from_alice(QubitSubset::empty(m)));
            let mut channel = template.instantiate(&bip, None)?;
            if !matches!(args.part, Part::Group) {
                channel = channel.restrict(bip.bob())?;
            }
            Some(syndrome_distribution(&target, &channel, limits)?)
        }
    };
    write_json(
        args.json.as_deref(),
        &EnumerateOutput {
            part: args.part,
            num_qubits: target.num_qubits(),
            rank: target.rank(),
            rank_preserved,
            error_basis: table.basis().one_based(),
            num_cosets: table.num_cosets(),
            weight_tables: table.rows(),
            channel: args.channel.clone(),
            distribution,
        },
    )
}

fn cmd_convert(args: &ConvertArgs) -> Result<()> {
    let code = match (&args.generators, &args.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_subgroup(&text)?
        }
        (None, Some(name)) => match builtin(name)?.kind {
            BuiltinKind::Code { code, .. } => code,
            BuiltinKind::Graph { graph, bipartition } => graph.stabilizer_group().contract(bipartition.alice())?,
        },
        (None, None) => unreachable!("clap requires a source"),
    };
    let gc = code_to_graph_code(&code)?;
    let v_prime = Bipartition::from_alice(gc.new_qubits.clone());
    let graph_text = format_graph(&gc.graph, Some(&v_prime));
    let record_text = format_record(&gc.record);
    let mut out = io::stdout().lock();
    match &args.graph_out {
        Some(p) => std::fs::write(p, &graph_text).with_context(|| format!("writing {}", p.display()))?,
        None => write!(out, "# graph\n{graph_text}")?,
    }
    match &args.record_out {
        Some(p) => std::fs::write(p, &record_text).with_context(|| format!("writing {}", p.display()))?,
        None => write!(out, "# local Clifford record\n{record_text}")?,
    }
    let appended: Vec<String> = gc.new_qubits.one_based().iter().map(|q| q.to_string()).collect();
    writeln!(
        out,
        "appended qubits (after the {} code qubits): {}",
        code.num_qubits(),
        appended.join(" ")
    )?;
    if gc.verify(&code)? {
        writeln!(out, "verification: PASS")?;
        Ok(())
    } else {
        writeln!(out, "verification: FAIL")?;
        bail!(Failure::Verification(
            "contracting the mapped graph state does not give the code".into()
        ))
    }
}

fn verify_instance(
    name: &str,
    spec: &StateSpec,
    args: &VerifyArgs,
    limits: &Limits,
    out: &mut impl Write,
) -> Result<f64> {
    let bip = spec.bipartition();
    let template = args.noise.template()?;
    let points = args.noise.points(&template, "0:1:11")?;
    let options = args.noise.options();
    let rows = sweep(spec, &template, &options, &points, limits)?;
    let group = spec.group();
    let mut worst: f64 = 0.0;
    for row in &rows {
        let channel = template.instantiate(bip, Some(row.noise_param))?;
        let dense = match (options.prep, spec) {
            (Some(prep), StateSpec::Graph { graph, .. }) => {
                let channel = match options.scope {
                    Scope::All => channel,
                    Scope::Bob => channel.with_support(bip.bob())?,
                };
                ci_dense_prep_and_post(graph, bip, prep, &channel, limits)?
            }
            _ => ci_dense(&group, bip, &channel, options.scope, limits)?,
        };
        let r = &row.report;
        let d = (r.ci - dense.ci)
            .abs()
            .max((r.s_b - dense.s_b).abs())
            .max((r.s_ab - dense.s_ab).abs());
        worst = worst.max(d);
        writeln!(
            out,
            "{name} x={:.4} method={} ci={:.12} dense={:.12} deviation={d:.2e}",
            row.noise_param, r.method, r.ci, dense.ci
        )?;
    }
    Ok(worst)
}

fn cmd_verify(args: &VerifyArgs, limits: &Limits) -> Result<()> {
    let mut instances = Vec::new();
    match args.random {
        Some(count) => {
            if args.qubits < 2 {
                bail!(stabci::Error::Parse("--qubits must be at least 2".into()));
            }
            let mut r = rng(args.seed);
            while instances.len() < count {
                let state = random_state(&mut r, args.qubits);
                let bip = random_bipartition(&mut r, args.qubits);
                if !state.delete(bip.alice())?.rank_preserved {
                    continue;
                }
                instances.push((
                    format!("random{}", instances.len()),
                    StateSpec::Stabilizer { state, bipartition: bip },
                ));
            }
        }
        None => {
            let loaded = load_state(&args.source, args.bipartition.as_deref())?;
            instances.push((loaded.name, loaded.spec));
        }
    }
    let mut out = io::stdout().lock();
    let mut worst: f64 = 0.0;
    for (name, spec) in &instances {
        let m = spec.bipartition().num_qubits();
        if m > limits.max_dense_qubits {
            bail!(Failure::Cap(format!(
                "{name} has {m} qubits; dense verification handles at most {}",
                limits.max_dense_qubits
            )));
        }
        worst = worst.max(verify_instance(name, spec, args, limits, &mut out)?);
    }
    let verdict = if worst <= VERIFY_TOLERANCE { "PASS" } else { "FAIL" };
    writeln!(out, "max deviation {worst:.3e} (tolerance {VERIFY_TOLERANCE:e}): {verdict}")?;
    if worst > VERIFY_TOLERANCE {
        bail!(Failure::Verification(format!(
            "closed form and dense oracle differ by {worst:e}"
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    let limits = Limits::from_env().map_err(stabci::Error::Parse)?;
    match &cli.command {
        Command::Ci(a) => cmd_ci(a, &limits),
        Command::Enumerate(a) => cmd_enumerate(a, &limits),
        Command::Convert(a) => cmd_convert(a),
        Command::Verify(a) => cmd_verify(a, &limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
