//! Command-line front end.
//!
//! Exit codes: 0 success, 1 property violation, 2 invalid input,
//! 3 insufficient prefix.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eorder::algebra::{chain_stabilize, inverse_lookup, make_strict_chain, transport};
use eorder::enumerators::{parse_spec, take_prefix};
use eorder::extraction::{
    check_position_bounds, decide_membership, descent_chain, make_paired, perturbation_family,
    predecessor, Membership, PairedListings,
};
use eorder::format::{
    format_chain, format_paired, format_sample, parse_chain, parse_paired, parse_prefix,
    parse_sample,
};
use eorder::oracle::{run_all, run_property_with, Execution, PropertyReport};
use eorder::{
    ascending_listing, equiv_eo, inversions, leq_eo, standardize, Error, Pattern, PrefixListing,
    SetSample,
};

#[derive(Parser)]
#[command(
    name = "eorder",
    version,
    about = "Enumeration-order analysis of listing prefixes"
)]
struct Cli {
    /// Output format. JSON prints one object per line.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Copy)]
struct Materialize {
    /// Prefix length taken from enumerator-spec sources.
    #[arg(long, default_value_t = 32)]
    prefix_len: usize,
    /// Dovetail round budget for halting enumerators.
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
}

/// Prefix sources: `inline "<nats>"`, `inline:<nats>`, `file:<path>`, `-`
/// for stdin, a bare list of naturals or JSON array, or an enumerator spec
/// (`even`, `nminus:<k>`, `asc:<a>,<b>,…`, `halt:<model>`).
#[derive(Args)]
struct Sources {
    #[arg(required = true, num_args = 1..)]
    sources: Vec<String>,
    #[command(flatten)]
    materialize: Materialize,
}

#[derive(Subcommand)]
enum Command {
    /// Check reducibility in both directions and equivalence.
    Compare(Sources),
    /// Standardized permutation of a prefix.
    Pattern(Sources),
    /// Inverted position pairs of a prefix.
    Inversions(Sources),
    /// Position at which a prefix enumerates a value.
    Lookup {
        #[command(flatten)]
        sources: Sources,
        #[arg(long)]
        value: u64,
    },
    /// Transport h through the pair (h', g'): g'(h'^-1(h(i))).
    Transport(Sources),
    /// Find the first repeat in a descending chain file.
    Stabilize {
        /// Chain file path, `file:<path>`, `inline:<text>` or `-`.
        chain: String,
    },
    /// Strict descending chain from the reversal of 1..n to the identity.
    ChainMake {
        #[arg(long)]
        n: usize,
    },
    /// Position bounds of the ascending views of a reducible pair.
    Lemma8(Sources),
    /// Build an aligned pairing from a sample, an extra element and a pattern.
    PairMake {
        /// `elements=<nats>; bound=<nat>` or a file.
        #[arg(long)]
        sample: String,
        #[arg(long)]
        m: u64,
        /// Ranks, e.g. "1 3 2 4".
        #[arg(long)]
        pattern: String,
    },
    /// Predecessor of an enumerated element, read off a pairing.
    Pred {
        /// Pairing file (f line, g line, m=<nat>).
        #[arg(long)]
        paired: String,
        #[arg(long)]
        a: u64,
    },
    /// All smaller elements of A below an enumerated element.
    Descent {
        #[arg(long)]
        paired: String,
        #[arg(long)]
        a: u64,
    },
    /// Decide membership in A from a pairing.
    Decide {
        #[arg(long)]
        paired: String,
        #[arg(long)]
        x: u64,
    },
    /// The n + 1 modifications of A on {1..n}.
    Family {
        #[arg(long)]
        sample: String,
        #[arg(long)]
        n: u64,
    },
    /// Ascending listing of a sample.
    Ascending {
        #[arg(long)]
        sample: String,
    },
    /// Materialize an enumerator prefix.
    Enumerate {
        spec: String,
        #[command(flatten)]
        materialize: Materialize,
    },
    /// Run registered properties exhaustively.
    Verify {
        /// A property id, or `all`.
        #[arg(long, default_value = "all")]
        property: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

enum Failure {
    Invalid(String),
    Violation(String),
    Insufficient(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InsufficientPrefix(_) => Failure::Insufficient(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

struct Out {
    format: Format,
}

impl Out {
    fn emit<T: Serialize>(&self, json: &T, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string(json).expect("serializable")),
            Format::Text => {
                let t = text();
                print!("{t}");
                if !t.ends_with('\n') {
                    println!();
                }
            }
        }
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::Invalid(format!("reading stdin: {e}")))?;
    Ok(s)
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("reading {path}: {e}")))
}

fn looks_literal(tok: &str) -> bool {
    tok.trim()
        .chars()
        .next()
        .is_none_or(|c| c.is_ascii_digit() || c == '[' || c == '{')
}

fn resolve_sources(src: &Sources) -> Result<Vec<PrefixListing>, Failure> {
    let Materialize { prefix_len, budget } = src.materialize;
    let mut out = Vec::new();
    let mut toks = src.sources.iter();
    while let Some(tok) = toks.next() {
        let prefix = if tok == "inline" {
            let text = toks
                .next()
                .ok_or_else(|| Failure::Invalid("`inline` needs a value list".into()))?;
            parse_prefix(text)?
        } else if let Some(text) = tok.strip_prefix("inline:") {
            parse_prefix(text)?
        } else if let Some(path) = tok.strip_prefix("file:") {
            parse_prefix(&read_file(path)?)?
        } else if tok == "-" {
            parse_prefix(&read_stdin()?)?
        } else if looks_literal(tok) {
            parse_prefix(tok)?
        } else {
            let mut e = parse_spec(tok)?;
            take_prefix(e.as_mut(), prefix_len, budget)
        };
        out.push(prefix);
    }
    Ok(out)
}

fn exactly<const N: usize>(src: &Sources) -> Result<[PrefixListing; N], Failure> {
    resolve_sources(src)?.try_into().map_err(|v: Vec<_>| {
        Failure::Invalid(format!("expected {N} prefix sources, got {}", v.len()))
    })
}

/// Reads a document argument: `file:<path>`, `inline:<text>`, `-`, literal
/// text when `is_literal` accepts it, and a file path otherwise.
fn read_document(arg: &str, is_literal: impl Fn(&str) -> bool) -> Result<String, Failure> {
    if let Some(path) = arg.strip_prefix("file:") {
        read_file(path)
    } else if let Some(text) = arg.strip_prefix("inline:") {
        Ok(text.replace(';', "\n"))
    } else if arg == "-" {
        read_stdin()
    } else if is_literal(arg) {
        Ok(arg.to_string())
    } else {
        read_file(arg)
    }
}

fn load_paired(arg: &str) -> Result<PairedListings, Failure> {
    let text = read_document(arg, |a| a.contains("m=") || a.trim_start().starts_with('{'))?;
    Ok(parse_paired(&text)?)
}

fn load_sample(arg: &str) -> Result<SetSample, Failure> {
    let text = read_document(arg, |a| {
        a.contains("elements=") || a.trim_start().starts_with('{')
    })?;
    Ok(parse_sample(&text)?)
}

fn pair_json(pair: Option<(usize, usize)>) -> Option<[usize; 2]> {
    pair.map(|(i, j)| [i, j])
}

#[derive(Serialize)]
struct CompareJson {
    f_le_g: bool,
    g_le_f: bool,
    equiv: bool,
    fail_at: Option<[usize; 2]>,
}

fn cmd_compare(out: &Out, src: &Sources) -> CmdResult {
    let [f, g] = exactly::<2>(src)?;
    let fg = leq_eo(&f, &g)?;
    let gf = leq_eo(&g, &f)?;
    let report = CompareJson {
        f_le_g: fg.holds(),
        g_le_f: gf.holds(),
        equiv: equiv_eo(&f, &g)?,
        fail_at: pair_json(fg.failure().or(gf.failure())),
    };
    out.emit(&report, || {
        let dir = |v: eorder::Verdict| match v.failure() {
            None => "holds".to_string(),
            Some((i, j)) => format!("fails at ({i}, {j})"),
        };
        format!(
            "f <=eo g: {}\ng <=eo f: {}\nequivalent: {}\n",
            dir(fg),
            dir(gf),
            report.equiv
        )
    });
    Ok(())
}

fn cmd_pattern(out: &Out, src: &Sources) -> CmdResult {
    #[derive(Serialize)]
    struct J {
        pattern: Pattern,
    }
    let [p] = exactly::<1>(src)?;
    let pattern = standardize(&p);
    out.emit(
        &J {
            pattern: pattern.clone(),
        },
        || pattern.to_string(),
    );
    Ok(())
}

fn cmd_inversions(out: &Out, src: &Sources) -> CmdResult {
    #[derive(Serialize)]
    struct J {
        inversions: Vec<[usize; 2]>,
        count: usize,
    }
    let [p] = exactly::<1>(src)?;
    let inv = inversions(&p);
    let pairs: Vec<[usize; 2]> = inv.pairs().iter().map(|&(i, j)| [i, j]).collect();
    out.emit(
        &J {
            count: pairs.len(),
            inversions: pairs.clone(),
        },
        || {
            let listed: Vec<String> = pairs.iter().map(|[i, j]| format!("({i},{j})")).collect();
            format!("{} inversions: {}", pairs.len(), listed.join(" "))
        },
    );
    Ok(())
}

fn cmd_lookup(out: &Out, src: &Sources, value: u64) -> CmdResult {
    #[derive(Serialize)]
    struct J {
        value: u64,
        position: usize,
    }
    let [p] = exactly::<1>(src)?;
    let position = inverse_lookup(&p, value)?;
    out.emit(&J { value, position }, || {
        format!("{value} is at position {position}")
    });
    Ok(())
}

fn cmd_transport(out: &Out, src: &Sources) -> CmdResult {
    #[derive(Serialize)]
    struct J<'a> {
        result: &'a PrefixListing,
    }
    let [h, h_prime, g_prime] = exactly::<3>(src)?;
    let result = transport(&h, &h_prime, &g_prime)?;
    out.emit(&J { result: &result }, || result.to_string());
    Ok(())
}

fn cmd_stabilize(out: &Out, arg: &str) -> CmdResult {
    #[derive(Serialize)]
    struct J {
        length: usize,
        repeat: Option<[usize; 2]>,
    }
    let text = read_document(arg, |_| false)?;
    let chain = parse_chain(&text)?;
    let repeat = chain_stabilize(&chain);
    out.emit(
        &J {
            length: chain.len(),
            repeat: pair_json(repeat),
        },
        || match repeat {
            Some((i, j)) => format!("listings {i} and {j} coincide"),
            None => format!("no repeat among {} listings", chain.len()),
        },
    );
    Ok(())
}

fn cmd_chain_make(out: &Out, n: usize) -> CmdResult {
    #[derive(Serialize)]
    struct J<'a> {
        chain: &'a [PrefixListing],
    }
    if n == 0 {
        return Err(Failure::Invalid("n must be at least 1".into()));
    }
    let chain = make_strict_chain(n);
    out.emit(
        &J {
            chain: chain.listings(),
        },
        || format_chain(&chain),
    );
    Ok(())
}

fn cmd_lemma8(out: &Out, src: &Sources) -> CmdResult {
    #[derive(Serialize)]
    struct J<'a> {
        #[serde(flatten)]
        report: &'a eorder::extraction::PositionBoundsReport,
        all_hold: bool,
    }
    let [f, g] = exactly::<2>(src)?;
    let report = check_position_bounds(&f, &g)?;
    let all_hold = report.all_hold();
    out.emit(
        &J {
            report: &report,
            all_hold,
        },
        || {
            let mut s = String::new();
            if let Some(c) = report.first {
                s += &format!(
                    "clause 1: f^-1(a_1) = {} <= g^-1(b_1) = {}: {}\n",
                    c.fpos, c.gpos, c.holds
                );
            }
            for c in &report.steps {
                if c.premise_held {
                    s += &format!(
                        "clause 2, i = {}: {} <= {}: {}\n",
                        c.i, c.fpos, c.gpos, c.holds
                    );
                } else {
                    s += &format!("clause 2, i = {}: premise fails (vacuous)\n", c.i);
                }
            }
            s
        },
    );
    if all_hold {
        Ok(())
    } else {
        Err(Failure::Violation("a position-bound clause failed".into()))
    }
}

fn cmd_pair_make(out: &Out, sample: &str, m: u64, pattern: &str) -> CmdResult {
    let sample = load_sample(sample)?;
    let ranks: Vec<usize> = parse_prefix(pattern)?
        .values()
        .iter()
        .map(|&r| r as usize)
        .collect();
    let paired = make_paired(&sample, m, &Pattern::new(ranks)?)?;
    out.emit(&paired, || format_paired(&paired));
    Ok(())
}

fn cmd_pred(out: &Out, paired: &str, a: u64) -> CmdResult {
    #[derive(Serialize)]
    struct J {
        a: u64,
        predecessor: u64,
    }
    let p = load_paired(paired)?;
    let pred = predecessor(&p, a)?;
    out.emit(
        &J {
            a,
            predecessor: pred,
        },
        || pred.to_string(),
    );
    Ok(())
}

fn cmd_descent(out: &Out, paired: &str, a: u64) -> CmdResult {
    #[derive(Serialize)]
    struct J<'a> {
        a: u64,
        descent: &'a [u64],
    }
    let p = load_paired(paired)?;
    let descent = descent_chain(&p, a)?;
    out.emit(
        &J {
            a,
            descent: &descent,
        },
        || {
            descent
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        },
    );
    Ok(())
}

fn cmd_decide(out: &Out, paired: &str, x: u64) -> CmdResult {
    #[derive(Serialize)]
    struct J<'a> {
        x: u64,
        result: Membership,
        descent: &'a [u64],
    }
    let p = load_paired(paired)?;
    let d = decide_membership(&p, x)?;
    out.emit(
        &J {
            x,
            result: d.result,
            descent: &d.descent,
        },
        || match d.result {
            Membership::InA => format!("{x} is in A"),
            Membership::NotInA => format!(
                "{x} is not in A (elements below the witness: {:?})",
                d.descent
            ),
            Membership::InsufficientPrefix => {
                format!("prefix enumerates nothing above {x}; undecided")
            }
        },
    );
    match d.result {
        Membership::InsufficientPrefix => Err(Failure::Insufficient(format!(
            "no enumerated element above {x}"
        ))),
        _ => Ok(()),
    }
}

fn cmd_family(out: &Out, sample: &str, n: u64) -> CmdResult {
    #[derive(Serialize)]
    struct J<'a> {
        family: &'a [SetSample],
    }
    let sample = load_sample(sample)?;
    let family = perturbation_family(&sample, n)?;
    out.emit(&J { family: &family }, || {
        family
            .iter()
            .map(format_sample)
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(())
}

fn cmd_ascending(out: &Out, sample: &str) -> CmdResult {
    #[derive(Serialize)]
    struct J<'a> {
        prefix: &'a PrefixListing,
    }
    let sample = load_sample(sample)?;
    let prefix = ascending_listing(&sample);
    out.emit(&J { prefix: &prefix }, || prefix.to_string());
    Ok(())
}

fn cmd_enumerate(out: &Out, spec: &str, m: Materialize) -> CmdResult {
    #[derive(Serialize)]
    struct J<'a> {
        spec: String,
        prefix: &'a PrefixListing,
    }
    let mut e = parse_spec(spec)?;
    let prefix = take_prefix(e.as_mut(), m.prefix_len, m.budget);
    out.emit(
        &J {
            spec: e.spec(),
            prefix: &prefix,
        },
        || prefix.to_string(),
    );
    Ok(())
}

fn cmd_verify(out: &Out, property: &str, n: usize) -> CmdResult {
    let reports: Vec<PropertyReport> = if property == "all" {
        run_all(n, Execution::Parallel)
    } else {
        vec![run_property_with(property, n, Execution::Parallel)?]
    };
    for r in &reports {
        match out.format {
            Format::Json => println!("{}", r.to_json()),
            Format::Text => {
                println!(
                    "{} {} n={} instances={} applicable={} ({:.1?})",
                    if r.pass() { "PASS" } else { "FAIL" },
                    r.property,
                    r.n,
                    r.instances,
                    r.applicable,
                    r.elapsed
                );
                if let Some((a, b)) = &r.witness {
                    println!("  witness: [{a}] and [{b}]");
                }
                for v in &r.violations {
                    println!("  {v}");
                }
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.pass()).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Violation(format!("{failed} properties failed")))
    }
}

fn run(cli: &Cli) -> CmdResult {
    let out = Out { format: cli.format };
    match &cli.command {
        Command::Compare(s) => cmd_compare(&out, s),
        Command::Pattern(s) => cmd_pattern(&out, s),
        Command::Inversions(s) => cmd_inversions(&out, s),
        Command::Lookup { sources, value } => cmd_lookup(&out, sources, *value),
        Command::Transport(s) => cmd_transport(&out, s),
        Command::Stabilize { chain } => cmd_stabilize(&out, chain),
        Command::ChainMake { n } => cmd_chain_make(&out, *n),
        Command::Lemma8(s) => cmd_lemma8(&out, s),
        Command::PairMake { sample, m, pattern } => cmd_pair_make(&out, sample, *m, pattern),
        Command::Pred { paired, a } => cmd_pred(&out, paired, *a),
        Command::Descent { paired, a } => cmd_descent(&out, paired, *a),
        Command::Decide { paired, x } => cmd_decide(&out, paired, *x),
        Command::Family { sample, n } => cmd_family(&out, sample, *n),
        Command::Ascending { sample } => cmd_ascending(&out, sample),
        Command::Enumerate { spec, materialize } => cmd_enumerate(&out, spec, *materialize),
        Command::Verify { property, n } => cmd_verify(&out, property, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("eorder: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("eorder: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Insufficient(msg)) => {
            eprintln!("eorder: {msg}");
            ExitCode::from(3)
        }
    }
}
