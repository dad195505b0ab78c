//! Command-line front end for Demazure products on `S_n`, `B_n` and `D_n`.
//!
//! Exit status: 0 on success, 1 when `verify` finds a counterexample, 2 on
//! bad input.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use demazure::cayley;
use demazure::demazure::{demazure_hop_traced, HopChain};
use demazure::notation::{format_window, parse_window};
use demazure::verify::{run_suite, Domain, Suite, DEFAULT_SEED};
use demazure::{
    decompose_d, demazure_oracle, demazure_unfolded_b, lift_a, lift_b, lift_d, Element, Family,
    HopList,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "demazure",
    version,
    about = "Demazure products via hopping operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute u ⋆ v (or the plain product uv).
    Product(ProductArgs),
    /// Compute u ⋆ v by hopping and print every hop.
    Trace(PairArgs),
    /// Split an element of D_n into Q_{n-1} .. Q_1.
    Decompose(SingleArgs),
    /// Print the lifted lists w↖i.
    Lift(SingleArgs),
    /// Run a verification suite against the Cayley-graph oracle.
    Verify(VerifyArgs),
    /// List every element of a group with its length and a reduced word.
    Enumerate(GroupArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// a, b or d.
    #[arg(short, long, value_parser = parse_family)]
    family: Family,
    /// Window length.
    #[arg(short = 'n', long)]
    rank: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Left factor, e.g. "[2,-4,-1,5,3]", "2 -4 -1 5 3" or "id".
    #[arg(allow_hyphen_values = true)]
    left: String,
    #[arg(allow_hyphen_values = true)]
    right: String,
}

#[derive(Args)]
struct ProductArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, value_enum, default_value_t = Method::Hopping)]
    method: Method,
    /// Also print the hop chain (hopping method only).
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct SingleArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(allow_hyphen_values = true)]
    window: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    /// Check this many seeded random cases instead of all of them.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Hopping,
    Oracle,
    Unfolded,
    Plain,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Hopping => "hopping",
            Method::Oracle => "oracle",
            Method::Unfolded => "unfolded",
            Method::Plain => "plain",
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: demazure::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: demazure::Error| e.to_string())
}

/// A user-facing failure and the exit status it maps to.
enum Failure {
    Input(String),
    Counterexample,
    Io(io::Error),
}

impl From<demazure::Error> for Failure {
    fn from(e: demazure::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

/// Resolves windows against `-n`, taking the rank from the first explicit
/// window when `-n` is absent.
fn elements(group: &GroupArgs, texts: &[&str]) -> Result<(usize, Vec<Element>), Failure> {
    let specs = texts
        .iter()
        .map(|t| parse_window(t))
        .collect::<Result<Vec<_>, _>>()?;
    let n = match group.rank.or_else(|| specs.iter().find_map(|s| s.rank())) {
        Some(n) => n,
        None => {
            return Err(Failure::Input(
                "-n is required when every window is `id`".into(),
            ))
        }
    };
    let elems = specs
        .iter()
        .map(|s| {
            let w = s.resolve(n);
            if w.len() != n {
                return Err(Failure::Input(format!(
                    "{} has length {}, expected {n}",
                    format_window(&w),
                    w.len()
                )));
            }
            Ok(Element::from_window(group.family, w)?)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok((n, elems))
}

fn family_tag(f: Family) -> String {
    f.to_string().to_lowercase()
}

fn chain_json(chain: &HopChain) -> Value {
    json!({
        "start": chain.start,
        "hops": chain.links.iter().map(|l| json!({
            "t": l.hop.t,
            "list": l.hop.list.items(),
            "result": l.result,
        })).collect::<Vec<_>>(),
    })
}

/// `start --h_{t,L}--> next`, one hop per line. Hops with an empty list
/// change nothing and are left out.
fn print_chain(out: &mut impl Write, chain: &HopChain) -> io::Result<()> {
    writeln!(out, "{}", format_window(&chain.start))?;
    for link in chain.links.iter().filter(|l| !l.hop.list.is_empty()) {
        writeln!(
            out,
            "  --{}--> {}",
            link.hop.operator(),
            format_window(&link.result)
        )?;
    }
    Ok(())
}

fn product(args: &ProductArgs, out: &mut impl Write) -> Outcome {
    let group = &args.pair.group;
    let (n, elems) = elements(group, &[&args.pair.left, &args.pair.right])?;
    let (u, v) = (&elems[0], &elems[1]);
    if args.trace && args.method != Method::Hopping {
        return Err(Failure::Input("--trace needs --method hopping".into()));
    }
    let mut chain = None;
    let result = match args.method {
        Method::Hopping => {
            if group.family == Family::B {
                eprintln!(
                    "note: the type B hopping cascade disagrees with the oracle on some pairs; \
                     --method unfolded or oracle is exact"
                );
            }
            let (p, c) = demazure_hop_traced(u, v)?;
            chain = Some(c);
            p
        }
        Method::Oracle => demazure_oracle(u, v)?,
        Method::Plain => u.compose(v)?,
        Method::Unfolded => match (u, v) {
            (Element::B(a), Element::B(b)) => Element::B(demazure_unfolded_b(a, b)?),
            _ => {
                return Err(Failure::Input(format!(
                    "--method unfolded is only valid for type B, not {}",
                    group.family
                )))
            }
        },
    };
    if group.json {
        let mut doc = json!({
            "family": family_tag(group.family),
            "rank": n,
            "method": args.method.name(),
            "left": u.window(),
            "right": v.window(),
            "product": result.window(),
        });
        if let (true, Some(c)) = (args.trace, &chain) {
            doc["chain"] = chain_json(c);
        }
        writeln!(out, "{doc}")?;
    } else {
        if let (true, Some(c)) = (args.trace, &chain) {
            print_chain(out, c)?;
        }
        writeln!(out, "{}", format_window(result.window()))?;
    }
    Ok(())
}

fn trace(args: &PairArgs, out: &mut impl Write) -> Outcome {
    product(
        &ProductArgs {
            pair: PairArgs {
                group: GroupArgs {
                    family: args.group.family,
                    rank: args.group.rank,
                    json: args.group.json,
                },
                left: args.left.clone(),
                right: args.right.clone(),
            },
            method: Method::Hopping,
            trace: true,
        },
        out,
    )
}

fn decompose(args: &SingleArgs, out: &mut impl Write) -> Outcome {
    if args.group.family != Family::D {
        return Err(Failure::Input(
            "decompose is defined for type D only".into(),
        ));
    }
    let (_, elems) = elements(&args.group, &[&args.window])?;
    let Element::D(w) = &elems[0] else {
        unreachable!("family checked above")
    };
    let dec = decompose_d(w)?;
    if args.group.json {
        writeln!(
            out,
            "{}",
            json!({ "window": w.window(), "factors": dec.records() })
        )?;
    } else {
        for f in dec.factors() {
            writeln!(out, "{f}")?;
        }
    }
    Ok(())
}

fn lift(args: &SingleArgs, out: &mut impl Write) -> Outcome {
    let (n, elems) = elements(&args.group, &[&args.window])?;
    let lists: Vec<(usize, HopList)> = (1..=n)
        .map(|i| {
            let list = match &elems[0] {
                Element::A(w) => lift_a(w, i as i32),
                Element::B(w) => lift_b(w, i as i32),
                Element::D(w) => lift_d(w, i as i32),
            }?;
            Ok((i, list))
        })
        .collect::<Result<_, demazure::Error>>()?;
    if args.group.json {
        let doc: serde_json::Map<String, Value> = lists
            .iter()
            .map(|(i, l)| (i.to_string(), json!(l.items())))
            .collect();
        writeln!(out, "{}", Value::Object(doc))?;
    } else {
        for (i, l) in &lists {
            writeln!(out, "w↖{i} = {l}")?;
        }
    }
    Ok(())
}

fn verify(args: &VerifyArgs, out: &mut impl Write) -> Outcome {
    let n = args
        .group
        .rank
        .ok_or_else(|| Failure::Input("verify needs -n".into()))?;
    let domain = match args.sample {
        Some(count) => Domain::Sampled {
            count,
            seed: args.seed,
        },
        None => Domain::Exhaustive,
    };
    let report = run_suite(args.suite, args.group.family, n, domain)?;
    if args.group.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("plain data")
        )?;
    } else {
        writeln!(out, "{report}")?;
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}

fn enumerate(args: &GroupArgs, out: &mut impl Write) -> Outcome {
    let n = args
        .rank
        .ok_or_else(|| Failure::Input("enumerate needs -n".into()))?;
    let table = cayley::table(args.family, n)?;
    if args.json {
        for idx in 0..table.len() {
            let row = json!({
                "window": table.window(idx),
                "length": table.length(idx),
                "word": table.reduced_word(idx).letters(),
            });
            writeln!(out, "{row}")?;
        }
    } else {
        table.dump(out)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Product(a) => product(a, &mut out),
        Command::Trace(a) => trace(a, &mut out),
        Command::Decompose(a) => decompose(a, &mut out),
        Command::Lift(a) => lift(a, &mut out),
        Command::Verify(a) => verify(a, &mut out),
        Command::Enumerate(a) => enumerate(a, &mut out),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Counterexample), _) => ExitCode::from(1),
        (Err(Failure::Input(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::Io(e)), _) | (Ok(()), Err(e)) => {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
