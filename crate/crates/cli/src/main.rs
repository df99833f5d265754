use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use motivic_steenrod::charclass::rost_number;
use motivic_steenrod::dual::{bmu_coaction, BmuElement};
use motivic_steenrod::modules::{act, ProjClass, ProjSpaceRing, QuadricClass, QuadricRing};
use motivic_steenrod::qform::{hoffmann_feasible_i1, inq_allowed_dims, WittChain};
use motivic_steenrod::steenrod::parse_element;
use motivic_steenrod::{Mode, Prime, DEFAULT_TRUNCATION};

/// Mod-p Steenrod operations: Adem normal forms, actions on Chow rings,
/// the Bμ_p coaction, Rost numbers and Witt-index bounds.
#[derive(Parser)]
#[command(name = "steenrod", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible normal form of an operation, e.g. "Sq2.Sq2" or "P1.b.P1".
    Adem {
        #[arg(short, long)]
        prime: u64,
        #[arg(long, default_value = "char0")]
        mode: Mode,
        expr: String,
    },
    /// Apply an operation to a class on a quadric or projective space.
    Act(ActArgs),
    /// Image of a class of H^{*,*}(Bμ_p) under the coaction.
    Coaction {
        #[arg(short, long)]
        prime: u64,
        /// v-degree truncation.
        #[arg(short = 'N', long, env = "STEENROD_TRUNCATION", default_value_t = DEFAULT_TRUNCATION)]
        truncation: u32,
        expr: String,
    },
    /// Rost number of the split quadric of dimension n.
    Rost {
        #[arg(short)]
        n: u32,
        #[arg(short, long)]
        prime: u64,
    },
    /// Witt-index bounds for quadratic forms.
    Witt(WittArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "space")]
struct SpaceArgs {
    /// Split quadric of this dimension (p = 2).
    #[arg(long, value_name = "DIM")]
    quadric: Option<u32>,
    /// Projective space of this dimension.
    #[arg(long, value_name = "N")]
    projspace: Option<u32>,
}

#[derive(Args)]
struct ActArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(short, long, default_value_t = 2)]
    prime: u64,
    op: String,
    class: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct WittArgs {
    /// Hoffmann-feasible first Witt indices for this dimension.
    #[arg(long, value_name = "DIM")]
    hoffmann: Option<u64>,
    /// Dimensions of small anisotropic forms in I^n_q.
    #[arg(long, value_name = "N")]
    inq_holes: Option<u32>,
    /// Check the 2-adic bound on comma-separated indices i1,i2,...
    #[arg(long, value_name = "INDICES", value_delimiter = ',')]
    chain: Option<Vec<u64>>,
}

fn prime(p: u64) -> Result<Prime> {
    Ok(Prime::new(p)?)
}

fn json_line<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)?)
}

fn run(cli: Cli) -> Result<String> {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Adem {
            prime: p,
            mode,
            expr,
        } => {
            let e = parse_element(&expr, prime(p)?, mode)
                .with_context(|| format!("cannot parse {expr:?}"))?;
            let r = e.adem_reduce();
            if json {
                json_line(&r)
            } else {
                Ok(r.to_string())
            }
        }
        Command::Act(args) => run_act(args, json),
        Command::Coaction {
            prime: p,
            truncation,
            expr,
        } => {
            let x = BmuElement::parse(&expr, prime(p)?, truncation)
                .with_context(|| format!("cannot parse {expr:?}"))?;
            let img = bmu_coaction(&x);
            if json {
                json_line(&img)
            } else {
                Ok(img.to_string())
            }
        }
        Command::Rost { n, prime: p } => {
            let r = rost_number(n, prime(p)?)?;
            if json {
                json_line(
                    &json!({"n": n, "prime": p, "deg": r.deg, "quotient": r.quotient.value()}),
                )
            } else {
                Ok(format!("deg={} quotient={}", r.deg, r.quotient))
            }
        }
        Command::Witt(args) => run_witt(args, json),
    }
}

fn run_act(args: ActArgs, json: bool) -> Result<String> {
    let p = prime(args.prime)?;
    if args.space.quadric.is_some() && !p.is_two() {
        bail!("quadric actions are only defined at p = 2");
    }
    let op = parse_element(&args.op, p, Mode::CharPChow)
        .with_context(|| format!("cannot parse {:?}", args.op))?;
    match (args.space.quadric, args.space.projspace) {
        (Some(dim), _) => {
            let ring = QuadricRing::new(dim)?;
            let x = QuadricClass::parse(&args.class, ring)
                .with_context(|| format!("cannot parse {:?}", args.class))?;
            let y = act(&op, &x)?;
            if json {
                json_line(&y)
            } else {
                Ok(y.to_string())
            }
        }
        (None, Some(n)) => {
            let ring = ProjSpaceRing::new(n, p)?;
            let x = ProjClass::parse(&args.class, ring)
                .with_context(|| format!("cannot parse {:?}", args.class))?;
            let y = act(&op, &x)?;
            if json {
                json_line(&y)
            } else {
                Ok(y.to_string())
            }
        }
        (None, None) => unreachable!("clap requires one module"),
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_witt(args: WittArgs, json: bool) -> Result<String> {
    if let Some(dim) = args.hoffmann {
        let v = hoffmann_feasible_i1(dim)?;
        return if json { json_line(&v) } else { Ok(join(&v)) };
    }
    if let Some(n) = args.inq_holes {
        let v = inq_allowed_dims(n)?;
        return if json { json_line(&v) } else { Ok(join(&v)) };
    }
    let indices = args.chain.unwrap_or_default();
    let dim = indices.iter().map(|i| 2 * i).sum();
    let ok = WittChain::new(dim, indices)?.v2_chain_ok()?;
    if json {
        json_line(&ok)
    } else {
        Ok(ok.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
