//! `reeskit`: congruence lattices and Rees-type properties of finite algebras.
//!
//! Exit codes: 0 success or property holds, 1 property fails, 2 usage or
//! parse error, 3 resource guard exceeded, 4 internal consistency failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use reeskit::io::{
    emit_dot, emit_json, parse_algebra, parse_draft, parse_partition, parse_signature, parse_term,
    serialize_algebra, AnalysisReport, LatticeReport,
};
use reeskit::properties::{check_csakany_term, check_p_terms_condition, check_weak_regularity_terms};
use reeskit::search::{run_search, Predicate, SearchQuery};
use reeskit::structures::{GenerationMode, GeneratorSpec};
use reeskit::{
    all_congruences_with, quotient_algebra, satisfies_identity_with, validate, Analyzer, Element,
    Error, FiniteAlgebra, IdentityCheck, Limits, Term,
};

#[derive(Parser)]
#[command(name = "reeskit", version, about = "Congruence lattices and Rees-type properties of finite algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra file against the format and table invariants.
    Validate { file: PathBuf },
    /// List the congruence lattice.
    Conlat {
        file: PathBuf,
        /// Write the Hasse diagram as DOT to this path (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide every property and print the report.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build the quotient by a congruence.
    Quotient {
        file: PathBuf,
        #[arg(long, value_name = "PARTITION")]
        theta: String,
        /// Write the quotient algebra file here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check an identity `lhs ≈ rhs` over all assignments.
    CheckIdentity {
        file: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Check the term conditions behind the closed-class criteria.
    CheckTerms {
        file: PathBuf,
        /// Binary term `p0(x, y)`; `p0(x, x)` is checked as a Csákány term.
        #[arg(long)]
        p0: String,
        #[arg(long = "p", value_name = "TERM")]
        p: Vec<String>,
        /// Element `e` for the weak-regularity condition on the `--p` terms.
        #[arg(long, value_name = "e")]
        constant: Option<Element>,
    },
    /// Scan generated algebras for required and forbidden properties.
    Search(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// `op NAME ARITY` entries separated by `;`.
    #[arg(long)]
    signature: String,
    #[arg(long)]
    size: usize,
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    exhaustive: bool,
    #[arg(long, num_args = 2, value_names = ["SEED", "COUNT"])]
    random: Option<Vec<u64>>,
    /// Only canonical representatives of isomorphism classes.
    #[arg(long)]
    iso: bool,
    #[arg(long, num_args = 1.., value_name = "PRED")]
    require: Vec<Predicate>,
    #[arg(long, num_args = 1.., value_name = "PRED")]
    forbid: Vec<Predicate>,
    /// Maximum number of witnesses listed in the output.
    #[arg(long, default_value_t = 100)]
    limit: usize,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FiniteAlgebra, Failure> {
    parse_algebra(&read(path)?).map_err(|e| match e {
        Error::Syntax { .. } => Failure::Usage(format!("{}:{e}", path.display())),
        other => Failure::Lib(other),
    })
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn validate_cmd(file: &Path) -> CmdResult {
    let draft = parse_draft(&read(file)?).map_err(|e| Failure::Usage(format!("{}:{e}", file.display())))?;
    match validate(&draft) {
        Ok(()) => {
            println!("ok: {} (size {}, {} operations)", draft.name, draft.size, draft.ops.len());
            Ok(ExitCode::SUCCESS)
        }
        Err(violations) => {
            for v in violations {
                println!("{}: {v}", file.display());
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn conlat_cmd(file: &Path, dot: Option<&Path>, json: bool, limits: &Limits) -> CmdResult {
    let alg = load(file)?;
    let lat = all_congruences_with(&alg, limits)?;
    if let Some(path) = dot {
        write(path, &emit_dot(&lat))?;
    }
    if json {
        print!("{}", emit_json(&LatticeReport::new(&alg, &lat)));
    } else if dot != Some(Path::new("-")) {
        println!("{}: {} congruences", alg.name(), lat.len());
        for (i, p) in lat.congruences().iter().enumerate() {
            println!("  {i:>3}  {p}");
        }
        println!("covers:");
        for (i, j) in lat.covers() {
            println!("  {i} < {j}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn analyze_cmd(file: &Path, json: bool, limits: &Limits) -> CmdResult {
    let alg = load(file)?;
    let report = AnalysisReport::build(&Analyzer::with_limits(&alg, limits.clone()))?;
    if json {
        print!("{}", emit_json(&report));
    } else {
        print!("{}", report.to_text());
    }
    Ok(ExitCode::SUCCESS)
}

fn quotient_cmd(file: &Path, theta: &str, out: Option<&Path>) -> CmdResult {
    let alg = load(file)?;
    let theta = parse_partition(theta, alg.size())?;
    let q = quotient_algebra(&alg, &theta)?;
    let text = serialize_algebra(&q.algebra);
    match out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn check_identity_cmd(file: &Path, lhs: &str, rhs: &str, limits: &Limits) -> CmdResult {
    let alg = load(file)?;
    let l = parse_term(lhs, alg.signature())?;
    let r = parse_term(rhs, alg.signature())?;
    match satisfies_identity_with(&alg, &l, &r, limits)? {
        IdentityCheck::Holds => {
            println!("holds: {l} = {r}");
            Ok(ExitCode::SUCCESS)
        }
        IdentityCheck::Fails(asg) => {
            let shown: Vec<String> = asg.iter().map(|&(v, e)| format!("{}={e}", Term::Var(v))).collect();
            println!("fails: {l} = {r} at {}", shown.join(", "));
            Ok(ExitCode::from(1))
        }
    }
}

fn check_terms_cmd(file: &Path, p0: &str, ps: &[String], constant: Option<Element>) -> CmdResult {
    let alg = load(file)?;
    let sig = alg.signature();
    let p0 = parse_term(p0, sig)?;
    let ps: Vec<Term> = ps.iter().map(|t| parse_term(t, sig)).collect::<Result<_, _>>()?;
    let mut all = true;
    let mut report = |name: &str, ok: bool| {
        println!("{name}: {}", if ok { "holds" } else { "fails" });
        all &= ok;
    };
    let diagonal = p0.substitute(&|i| Term::Var(if i == 1 { 0 } else { i }));
    report(&format!("csakany {diagonal}"), check_csakany_term(&alg, &diagonal)?);
    if !ps.is_empty() {
        let terms: Vec<Term> = std::iter::once(p0.clone()).chain(ps.iter().cloned()).collect();
        report("p-terms", check_p_terms_condition(&alg, &terms)?);
    }
    if let Some(e) = constant {
        let terms = if ps.is_empty() { vec![p0] } else { ps };
        report(&format!("weak regularity at {e}"), check_weak_regularity_terms(&alg, e, &terms)?);
    }
    Ok(status(all))
}

fn search_cmd(args: &SearchArgs, limits: &Limits) -> CmdResult {
    let signature = parse_signature(&args.signature)?;
    let mode = match args.random.as_deref() {
        Some(&[seed, count]) => GenerationMode::Random {
            seed,
            count: usize::try_from(count).map_err(|_| Failure::Usage("COUNT is too large".into()))?,
        },
        _ => GenerationMode::Exhaustive,
    };
    let spec = GeneratorSpec {
        signature,
        size: args.size,
        mode,
        up_to_iso: args.iso,
    };
    let report = run_search(
        &SearchQuery {
            spec: &spec,
            require: &args.require,
            forbid: &args.forbid,
            limit: args.limit,
        },
        limits,
    )?;
    print!("{}", emit_json(&report));
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CmdResult {
    let limits = Limits::from_env();
    match &cli.command {
        Command::Validate { file } => validate_cmd(file),
        Command::Conlat { file, dot, json } => conlat_cmd(file, dot.as_deref(), *json, &limits),
        Command::Analyze { file, json } => analyze_cmd(file, *json, &limits),
        Command::Quotient { file, theta, out } => quotient_cmd(file, theta, out.as_deref()),
        Command::CheckIdentity { file, lhs, rhs } => check_identity_cmd(file, lhs, rhs, &limits),
        Command::CheckTerms {
            file,
            p0,
            p,
            constant,
        } => check_terms_cmd(file, p0, p, *constant),
        Command::Search(args) => search_cmd(args, &limits),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::LimitExceeded { .. } => 3,
                Error::Inconsistent(_) => 4,
                _ => 2,
            })
        }
    }
}
