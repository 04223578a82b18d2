//! Command line surface over the crystal library: enumeration, the box
//! peeling correspondence, graph export, statistics, and verification
//! suites.  All structured input and output is JSON on stdin/stdout with
//! sorted keys, so identical invocations produce byte-identical results.

mod verify;

use std::collections::BTreeSet;
use std::io::Read;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use krc_core::bijection::{delta_traced, fill_row, fill_two_rows, left_box_split, phi, phi_inv};
use krc_core::crystal::{self, CrystalElement, CrystalGraph};
use krc_core::kleber;
use krc_core::rc::{enumerate_hw, rc_b1_crystal, TwoRowParams};
use krc_core::statistics::{energy, tensor_elements};
use krc_core::virtualization::{b2_virtualize, rc_virtualize, tableau_virtualize};
use krc_core::{CartanType, KrTableau, RiggedConfig, TensorProduct, TensorShape, Weight};

#[derive(Parser)]
#[command(
    name = "krc",
    version,
    about = "Kirillov-Reshetikhin crystals of affine type D4(3): rigged configurations, tableaux, and their correspondence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate rigged configurations.
    #[command(subcommand)]
    Rc(RcCommand),
    /// Export a crystal graph.
    #[command(subcommand)]
    Crystal(CrystalCommand),
    /// Map between configurations and tensor products of tableaux.
    #[command(subcommand)]
    Phi(PhiCommand),
    /// Box peeling on a rigged configuration.
    #[command(subcommand)]
    Delta(DeltaCommand),
    /// Fill the tableau of a highest weight family member.
    Fill(FillArgs),
    /// Statistics of a single element read from stdin.
    #[command(subcommand)]
    Stats(StatsCommand),
    /// The ambient tree behind the highest weight enumeration.
    Kleber(KleberArgs),
    /// Embed data into the simply laced ambient type.
    #[command(subcommand)]
    Virtualize(VirtualizeCommand),
    /// Run a consistency suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum RcCommand {
    /// List the classically highest weight rigged configurations of a shape.
    Enumerate {
        /// Tensor factors as "r,s;r,s;...". Empty means no factors.
        #[arg(long, default_value = "")]
        factors: String,
        /// Keep only configurations of this classical weight, as "c1,c2".
        #[arg(long)]
        lambda: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphObject {
    Tableau,
    Rc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum CrystalCommand {
    /// Build the full crystal graph of a tensor shape.
    Graph(GraphArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Which model to build the graph on.
    #[arg(long, value_enum, default_value_t = GraphObject::Tableau)]
    object: GraphObject,
    /// Tensor factors as "r,s;r,s;...".
    #[arg(long)]
    factors: String,
    /// Include zero arrows.  Requires single-row factors (tableaux) or a
    /// single row factor (configurations, experimental operators).
    #[arg(long)]
    affine: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Dot)]
    format: OutputFormat,
    /// Abort if the graph would exceed this many nodes.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
}

#[derive(Subcommand)]
enum PhiCommand {
    /// Configuration JSON on stdin to a tensor product of tableaux.
    Apply,
    /// Tensor product JSON on stdin back to a configuration.
    Invert,
}

#[derive(Subcommand)]
enum DeltaCommand {
    /// Peel the leftmost factor off a configuration read from stdin.
    Step {
        /// Include the bookkeeping of every peeling pass.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Args)]
struct FillArgs {
    /// Row count of the factor (1 or 2).
    #[arg(long)]
    r: u8,
    /// Width of the factor.
    #[arg(long)]
    s: u8,
    /// Family parameters: "k" for a single row, "k1,k2,k3,x" for two rows.
    #[arg(long)]
    params: String,
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Cocharge of a configuration read from stdin.
    Cc,
    /// Energy level of a tensor product read from stdin.
    Energy,
}

#[derive(Args)]
struct KleberArgs {
    /// Tensor factors as "r,s;r,s;...".
    #[arg(long)]
    factors: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Dot)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum VirtualizeCommand {
    /// Configuration JSON on stdin to its ambient image.
    Rc,
    /// Single tableau JSON on stdin to its ambient image.
    Tableau,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// One-dimensional sums against fermionic sums.
    Xm,
    /// The correspondence is a weight preserving bijection.
    Bijection,
    /// Combinatorial R matrix identities.
    Rmatrix,
    /// Filling maps against the correspondence.
    Filling,
    /// The ambient embedding of configurations.
    Virtualization,
    /// Classical decomposition of the two-row crystals.
    Decomposition,
    /// Experimental zero arrows against the coordinate ones.
    AffineConjecture,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Tensor factors as "r,s;r,s;...".
    #[arg(long)]
    factors: Option<String>,
    /// Width bound where the suite ranges over widths.
    #[arg(long)]
    s: Option<u8>,
    /// Row count where the suite distinguishes row counts.
    #[arg(long)]
    r: Option<u8>,
    /// Restrict to one classical weight, as "c1,c2".
    #[arg(long)]
    lambda: Option<String>,
}

fn main() -> ExitCode {
    match run(&Cli::parse()) {
        Ok(passed) => {
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Rc(RcCommand::Enumerate { factors, lambda }) => {
            cmd_rc_enumerate(factors, lambda.as_deref())?
        }
        Command::Crystal(CrystalCommand::Graph(args)) => cmd_crystal_graph(args)?,
        Command::Phi(PhiCommand::Apply) => cmd_phi_apply()?,
        Command::Phi(PhiCommand::Invert) => cmd_phi_invert()?,
        Command::Delta(DeltaCommand::Step { trace }) => cmd_delta_step(*trace)?,
        Command::Fill(args) => cmd_fill(args)?,
        Command::Stats(StatsCommand::Cc) => cmd_stats_cc()?,
        Command::Stats(StatsCommand::Energy) => cmd_stats_energy()?,
        Command::Kleber(args) => cmd_kleber(args)?,
        Command::Virtualize(VirtualizeCommand::Rc) => cmd_virtualize_rc()?,
        Command::Virtualize(VirtualizeCommand::Tableau) => cmd_virtualize_tableau()?,
        Command::Verify(args) => return verify::run(args),
    }
    Ok(true)
}

/// Parse "r,s;r,s;..." into factor pairs; the empty string is the empty
/// product.
pub fn parse_factors(spec: &str) -> Result<Vec<(u8, u8)>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in spec.split(';') {
        let (r, s) = part
            .trim()
            .split_once(',')
            .with_context(|| format!("factor {part:?} is not of the form r,s"))?;
        let r: u8 = r
            .trim()
            .parse()
            .with_context(|| format!("bad row count in factor {part:?}"))?;
        let s: u8 = s
            .trim()
            .parse()
            .with_context(|| format!("bad width in factor {part:?}"))?;
        if r != 1 && r != 2 {
            bail!("row count {r} out of range; factors are (1,s) or (2,s)");
        }
        if s == 0 {
            bail!("factor width must be positive");
        }
        out.push((r, s));
    }
    if out.len() > 1 && out.iter().any(|&(r, s)| r == 2 && s > 1) {
        bail!("a (2,s) factor with s > 1 is only supported as a single factor");
    }
    Ok(out)
}

pub fn parse_shape(spec: &str) -> Result<TensorShape> {
    Ok(TensorShape::new(CartanType::G2, parse_factors(spec)?))
}

pub fn parse_lambda(spec: &str) -> Result<Weight> {
    let (a, b) = spec
        .split_once(',')
        .context("a classical weight is written \"c1,c2\"")?;
    let a: i64 = a.trim().parse().context("bad first weight coefficient")?;
    let b: i64 = b.trim().parse().context("bad second weight coefficient")?;
    Ok(Weight::new(CartanType::G2, &[a, b]))
}

fn read_stdin_json() -> Result<Value> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .context("reading stdin")?;
    serde_json::from_str(buf.trim()).context("stdin is not valid JSON")
}

fn rc_from_stdin() -> Result<RiggedConfig> {
    let v = read_stdin_json()?;
    let rc = RiggedConfig::from_json(&v).map_err(anyhow::Error::msg)?;
    check_shape_invariant(rc.shape().factors())?;
    Ok(rc)
}

fn tensor_from_stdin() -> Result<TensorProduct> {
    let v = read_stdin_json()?;
    let tp = TensorProduct::from_json(&v).map_err(anyhow::Error::msg)?;
    check_shape_invariant(&tp.shape())?;
    Ok(tp)
}

fn check_shape_invariant(factors: &[(u8, u8)]) -> Result<()> {
    if factors.len() > 1 && factors.iter().any(|&(r, s)| r == 2 && s > 1) {
        bail!("a (2,s) factor with s > 1 is only supported as a single factor");
    }
    Ok(())
}

fn print_json(v: &Value) -> Result<()> {
    write_stdout(&format!("{}\n", serde_json::to_string_pretty(v)?))
}

/// Write to stdout without panicking when the reader has gone away, as
/// happens whenever output is piped into head.  Quit with the conventional
/// SIGPIPE status in that case.
pub fn write_stdout(s: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(s.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(141),
        r => Ok(r?),
    }
}

fn cmd_rc_enumerate(factors: &str, lambda: Option<&str>) -> Result<()> {
    let shape = parse_shape(factors)?;
    let direct = enumerate_hw(&shape);
    let ambient = kleber::virtual_hw_rcs(&shape);
    if direct != ambient {
        bail!(
            "enumeration mismatch on {shape}: direct search found {} configurations, the ambient tree {}",
            direct.len(),
            ambient.len()
        );
    }
    let lambda = lambda.map(parse_lambda).transpose()?;
    let list: Vec<Value> = direct
        .iter()
        .filter(|rc| lambda.as_ref().map_or(true, |l| &rc.weight() == l))
        .map(|rc| rc.to_json())
        .collect();
    print_json(&Value::Array(list))
}

fn cmd_crystal_graph(args: &GraphArgs) -> Result<()> {
    let shape = parse_shape(&args.factors)?;
    if shape.factors().is_empty() {
        bail!("at least one tensor factor is required");
    }
    match args.object {
        GraphObject::Tableau => {
            if args.affine && shape.factors().iter().any(|&(r, _)| r != 1) {
                bail!("zero arrows on tableaux exist only for single-row factors");
            }
            let nodes: BTreeSet<TensorProduct> = tensor_elements(&shape).into_iter().collect();
            check_cap(nodes.len(), args.cap)?;
            let indices: &[u8] = if args.affine { &[0, 1, 2] } else { &[1, 2] };
            let graph = CrystalGraph::build(nodes, indices, |x, a| x.f(a), &[]);
            emit_graph(&graph, args.format, |t| t.to_string(), |t| t.to_json())
        }
        GraphObject::Rc => {
            if args.affine {
                let &[(1, s)] = shape.factors() else {
                    bail!("experimental zero arrows exist only on a single (1,s) factor");
                };
                let nodes: BTreeSet<RiggedConfig> = rc_b1_crystal(s).as_ref().clone();
                check_cap(nodes.len(), args.cap)?;
                let f = |rc: &RiggedConfig, a: u8| match a {
                    0 => rc.affine_f0(),
                    _ => rc.f(a),
                };
                let graph = CrystalGraph::build(nodes, &[0, 1, 2], f, &[0]);
                emit_graph(&graph, args.format, |rc| rc.to_string(), |rc| rc.to_json())
            } else {
                let nodes = crystal::generate_closure(enumerate_hw(&shape), &[1, 2]);
                check_cap(nodes.len(), args.cap)?;
                let graph = CrystalGraph::build(nodes, &[1, 2], |rc, a| rc.f(a), &[]);
                emit_graph(&graph, args.format, |rc| rc.to_string(), |rc| rc.to_json())
            }
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        bail!("graph has {n} nodes, above the cap of {cap}");
    }
    Ok(())
}

fn emit_graph<T: Clone + Ord>(
    graph: &CrystalGraph<T>,
    format: OutputFormat,
    text: impl Fn(&T) -> String,
    json: impl Fn(&T) -> Value,
) -> Result<()> {
    match format {
        OutputFormat::Dot => write_stdout(&graph.to_dot(text)),
        OutputFormat::Json => print_json(&graph.to_json(json)),
    }
}

fn cmd_phi_apply() -> Result<()> {
    let rc = rc_from_stdin()?;
    if rc.ty() != CartanType::G2 {
        bail!("the correspondence is applied to G2 configurations");
    }
    print_json(&phi(&rc).to_json())
}

fn cmd_phi_invert() -> Result<()> {
    let tp = tensor_from_stdin()?;
    print_json(&phi_inv(&tp).to_json())
}

fn cmd_delta_step(trace: bool) -> Result<()> {
    let rc = rc_from_stdin()?;
    let Some(&(r, s)) = rc.shape().factors().first() else {
        bail!("the configuration has no factors to peel");
    };
    let out = match (r, s) {
        (1, 1) => {
            let (letter, rest, step) = delta_traced(&rc);
            let mut v = json!({"letter": letter.symbol(), "rc": rest.to_json()});
            if trace {
                v["trace"] = Value::Array(vec![step.to_json()]);
            }
            v
        }
        (2, 1) => {
            // A leading two-row column peels through its box split, emitting
            // the bottom cell first.
            let split = left_box_split(&rc);
            let (bottom, rest, first) = delta_traced(&split);
            let (top, rest, second) = delta_traced(&rest);
            let mut v = json!({
                "letter": bottom.symbol(),
                "second_letter": top.symbol(),
                "rc": rest.to_json(),
            });
            if trace {
                v["trace"] = Value::Array(vec![first.to_json(), second.to_json()]);
            }
            v
        }
        _ => bail!("peeling starts at a width one leading factor; split the configuration first"),
    };
    print_json(&out)
}

fn cmd_fill(args: &FillArgs) -> Result<()> {
    let nums: Vec<i64> = args
        .params
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .with_context(|| format!("bad parameter {p:?}"))
        })
        .collect::<Result<_>>()?;
    let s = args.s as i64;
    let tableau = match args.r {
        1 => {
            let [k] = nums[..] else {
                bail!("single-row filling takes one parameter k");
            };
            if !(0..=s).contains(&k) {
                bail!("the box count k must lie in 0..={s}");
            }
            fill_row(args.s, k as u8)
        }
        2 => {
            let [k1, k2, k3, x] = nums[..] else {
                bail!("two-row filling takes parameters k1,k2,k3,x");
            };
            let admissible = k1 >= 0
                && k2 >= 0
                && k3 >= 0
                && 2 * k3 <= k2
                && k1 + k2 <= s
                && (0..=k2 - 2 * k3).contains(&x);
            if !admissible {
                bail!("parameters ({k1},{k2},{k3},{x}) lie outside the width {s} family");
            }
            fill_two_rows(args.s, &TwoRowParams { k1, k2, k3, k4: x })
        }
        r => bail!("unsupported row count {r}; factors are (1,s) or (2,s)"),
    };
    print_json(&json!({"tableau": tableau.to_json(), "text": tableau.to_string()}))
}

fn cmd_stats_cc() -> Result<()> {
    let rc = rc_from_stdin()?;
    print_json(&json!({"cocharge": rc.cocharge()}))
}

fn cmd_stats_energy() -> Result<()> {
    let tp = tensor_from_stdin()?;
    print_json(&json!({"energy": energy(&tp)}))
}

fn cmd_kleber(args: &KleberArgs) -> Result<()> {
    let shape = parse_shape(&args.factors)?;
    let tree = kleber::kleber_tree(CartanType::D4, &kleber::ambient_levels(&shape), true);
    match args.format {
        OutputFormat::Dot => write_stdout(&tree.to_dot()),
        OutputFormat::Json => {
            let configs: Vec<Value> = kleber::virtual_hw_rcs(&shape)
                .iter()
                .map(|rc| rc.to_json())
                .collect();
            print_json(&json!({"tree": tree.to_json(), "configs": configs}))
        }
    }
}

fn cmd_virtualize_rc() -> Result<()> {
    let rc = rc_from_stdin()?;
    if rc.ty() != CartanType::G2 {
        bail!("expected a G2 configuration");
    }
    print_json(&rc_virtualize(&rc).to_json())
}

fn cmd_virtualize_tableau() -> Result<()> {
    let v = read_stdin_json()?;
    let t = KrTableau::from_json(&v).map_err(anyhow::Error::msg)?;
    match (t.r(), t.s()) {
        (1, _) => {
            let image = tableau_virtualize(&t);
            print_json(&json!({"tableau": image.to_json(), "text": image.to_string()}))
        }
        (2, 1) => {
            let image = b2_virtualize(&t);
            print_json(&json!({"factors": image.to_json(), "text": image.to_string()}))
        }
        (r, s) => bail!("no ambient image implemented for a ({r},{s}) tableau"),
    }
}
