use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use noether_core::blowup::analyze;
use noether_core::curve::RationalCurveModel;
use noether_core::harness::{all_pass, run_suite, Bounds, Suite};
use noether_core::local_noether::{EpsilonCase, LocalContext};
use noether_core::{canonical_ideal, enumerate, Error, NumericalSemigroup};

#[derive(Parser)]
#[command(name = "noether", version, about = "Max Noether checks for curves with monomial singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical semigroup utilities.
    #[command(subcommand)]
    Sg(SgCommand),
    /// Run checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum SgCommand {
    /// Invariants, canonical ideal and blowup of a semigroup.
    Info {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        json: bool,
    },
    /// All semigroups up to a genus, in canonical order.
    Enumerate {
        #[arg(long)]
        max_genus: usize,
        #[arg(long, default_value_t = 1)]
        min_multiplicity: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Local surjectivity at a non-symmetric point with eps = 2n - 1.
    Local {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Surjectivity of Sym^n H0(omega) -> H0(omega^n) on a curve model.
    Noether {
        /// Curve description file (JSON).
        #[arg(long, conflicts_with = "gens", required_unless_present = "gens")]
        curve: Option<PathBuf>,
        /// Generators of a single branch at 0.
        #[arg(long, value_delimiter = ',')]
        gens: Option<Vec<i64>>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a named suite and write one JSON report per line.
    Corpus {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_genus: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        min_multiplicity: i64,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Gens {
    /// Comma-separated generators, e.g. 3,4,5.
    #[arg(long, value_delimiter = ',', required = true)]
    gens: Vec<i64>,
}

impl Gens {
    fn semigroup(&self) -> Result<NumericalSemigroup, Error> {
        NumericalSemigroup::from_generators(&self.gens)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn sg_info(s: &NumericalSemigroup, as_json: bool) -> Result<bool, Error> {
    let k = canonical_ideal(s);
    let pf = s.pseudo_frobenius().unwrap_or_default();
    let blowup = analyze(s)?;
    if as_json {
        let v = json!({
            "semigroup": s,
            "frobenius": s.frobenius(),
            "type": s.type_number(),
            "pseudo_frobenius": pf,
            "symmetric": s.is_symmetric(),
            "almost_gorenstein": s.is_almost_gorenstein(),
            "canonical_ideal": k,
            "blowup": {
                "ohat": blowup.ohat,
                "stabilization_index": blowup.stabilization_index,
                "eta": blowup.eta,
                "genus_hat": blowup.genus_hat,
                "colength": blowup.colength(),
            },
        });
        println!("{v}");
        return Ok(true);
    }
    println!("semigroup          {s}");
    println!("gaps               {}", join(s.gaps()));
    println!("genus              {}", s.genus());
    println!("α                  {}", s.conductor());
    println!("β                  {}", s.multiplicity());
    println!("frobenius          {}", s.frobenius());
    println!("pseudo-frobenius   {}", join(&pf));
    println!("type               {}", s.type_number());
    println!("symmetric: {}", yes_no(s.is_symmetric()));
    println!("almost Gorenstein: {}", yes_no(s.is_almost_gorenstein()));
    println!("K                  {k}");
    println!("Ô                  {}", blowup.ohat);
    println!("K^n stable at n =  {}", blowup.stabilization_index);
    println!("dim Ô/K            {}", blowup.colength());
    println!("dim K/S            {}", blowup.eta);
    println!("genus of Ô         {}", blowup.genus_hat);
    Ok(true)
}

fn sg_enumerate(max_genus: usize, min_multiplicity: i64, as_json: bool) -> Result<bool, Error> {
    let all = enumerate(max_genus, min_multiplicity);
    let mut out = io::stdout().lock();
    for s in &all {
        let line = if as_json {
            serde_json::to_string(s).expect("semigroups serialize")
        } else {
            format!("g={} {s}", s.genus())
        };
        writeln!(out, "{line}").map_err(|e| Error::Usage(e.to_string()))?;
    }
    Ok(true)
}

fn verify_local(s: &NumericalSemigroup, n: usize, as_json: bool) -> Result<bool, Error> {
    let ctx = LocalContext::new(s)?;
    let eps = EpsilonCase::Generic.epsilon(n);
    let coverage = ctx.verify_surjectivity(n, eps)?;
    let minimal = ctx.minimal_epsilon(n)?;
    let certificates = if ctx.r >= 1 {
        Some(ctx.build_certificates(n, EpsilonCase::Generic))
    } else {
        None
    };
    let violations: Vec<String> = match &certificates {
        Some(Ok(certs)) => certs
            .iter()
            .flat_map(|c| c.violations(&ctx.sections, n).into_iter().map(move |v| format!("{}: {v}", c.step.label())))
            .collect(),
        Some(Err(e)) => vec![e.to_string()],
        None => Vec::new(),
    };
    let pass = coverage.holds && violations.is_empty();
    if as_json {
        let v = json!({
            "semigroup": s,
            "n": n,
            "epsilon": eps,
            "holds": coverage.holds,
            "uncovered": coverage.uncovered,
            "minimal_epsilon": minimal,
            "certificates": certificates.and_then(Result::ok),
            "violations": violations,
        });
        println!("{v}");
    } else {
        println!("{s}, n = {n}, eps = {eps}: {}", if coverage.holds { "surjective" } else { "not surjective" });
        if !coverage.uncovered.is_empty() {
            println!("uncovered values   {}", join(&coverage.uncovered));
        }
        println!("least eps          {minimal}");
        if let Some(Ok(certs)) = &certificates {
            for c in certs {
                println!("{:<5} {:>3} entries, values {}", c.step.label(), c.entries.len(), join(&c.values()));
            }
        }
        for v in &violations {
            println!("violation: {v}");
        }
    }
    Ok(pass)
}

fn verify_noether(c: &RationalCurveModel, n: usize, as_json: bool) -> Result<bool, Error> {
    if n == 0 {
        return Err(Error::Usage("--n must be positive".into()));
    }
    let outcome = c.max_noether(n);
    if as_json {
        let mut v = serde_json::to_value(&outcome).expect("outcome serializes");
        v["defect"] = json!(outcome.defect());
        v["genus"] = json!(c.genus());
        println!("{v}");
    } else {
        match outcome.defect() {
            None => println!("n = {n}: surjective, dimension {}", outcome.sections_dim),
            Some(d) => println!("n = {n}: not surjective, {d}"),
        }
    }
    Ok(outcome.holds)
}

fn verify_corpus(suite: &str, bounds: Bounds, out: Option<&PathBuf>) -> Result<bool, Error> {
    let suite: Suite = suite.parse()?;
    let reports = run_suite(suite, &bounds)?;
    let body: String = reports.iter().map(|r| r.to_json_line() + "\n").collect();
    let failed = reports.iter().filter(|r| !r.pass).count();
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
            println!("{suite}: {} checks, {failed} failed", reports.len());
        }
        None => print!("{body}"),
    }
    Ok(all_pass(&reports))
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Sg(SgCommand::Info { gens, json }) => sg_info(&gens.semigroup()?, json),
        Command::Sg(SgCommand::Enumerate { max_genus, min_multiplicity, json }) => {
            sg_enumerate(max_genus, min_multiplicity, json)
        }
        Command::Verify(VerifyCommand::Local { gens, n, json }) => verify_local(&gens.semigroup()?, n, json),
        Command::Verify(VerifyCommand::Noether { curve, gens, n, json }) => {
            let model = match (curve, gens) {
                (Some(path), _) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
                    text.parse::<RationalCurveModel>()
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
                }
                (None, Some(g)) => RationalCurveModel::single(&NumericalSemigroup::from_generators(&g)?)?,
                (None, None) => unreachable!("clap requires one of --curve, --gens"),
            };
            verify_noether(&model, n, json)
        }
        Command::Verify(VerifyCommand::Corpus { suite, max_genus, n, min_multiplicity, out }) => {
            let bounds = Bounds { max_genus, max_n: n, min_multiplicity };
            verify_corpus(&suite, bounds, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Error::HypothesisGap(msg)) => {
            eprintln!("error: hypothesis fails: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
