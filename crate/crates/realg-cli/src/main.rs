mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};

use realg_core::calculi::interp::{in_pole, interpret, Interpretation};
use realg_core::calculi::reduce::normalize;
use realg_core::calculi::syntax::Subject;
use realg_core::calculi::typing::typecheck;
use realg_core::calculi::Polarity;
use realg_core::duality::{key_lemma, transport_separator, tripos_iso, Direction};
use realg_core::encodings::{combinator, interpret_formula, interpret_lambda, Combinator};
use realg_core::lattice::Elem;
use realg_core::separators::{Algebra, SeparatorRules};
use realg_core::sexpr::{parse_calc_file, parse_command, parse_formula, parse_lambda};
use realg_core::structures::{Kind, Structure};
use realg_core::suite::{run_all, Scope};
use realg_core::text::{parse_algebra, parse_raw_algebra, parse_structure, write_algebra, write_separator};
use realg_core::tripos::{quotient, verify, FiniteTripos, CLAUSES};

use report::Report;

const DEFAULT_MAX_CARRIER: usize = 64;

#[derive(Parser)]
#[command(name = "realg", version, about = "Check finite implicative, disjunctive and conjunctive algebras")]
struct Cli {
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest carrier accepted from input files.
    #[arg(long, global = true, env = "REALG_MAX_CARRIER", default_value_t = DEFAULT_MAX_CARRIER)]
    max_carrier: usize,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Record per-check durations (reports are then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the kind checker, and the separator checker when a separator block is present.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Generate the separator closure of a set of generators.
    Closure(ClosureArgs),
    /// Interpret a combinator, λ-term, formula or command in a structure.
    Eval(EvalArgs),
    /// Transport an algebra to its order-reversed dual.
    Dualize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        direction: Direction,
        /// Write the dual algebra here instead of into the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The quotient Heyting algebra A/S.
    Quotient {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check the tripos clauses on each algebra.
    Tripos {
        #[arg(long = "in", required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        /// Largest index set.
        #[arg(long, default_value_t = 3)]
        imax: usize,
    },
    /// Reduction, typing and interpretation of calculus files.
    #[command(subcommand)]
    Calc(CalcCommand),
    /// Run the acceptance criteria.
    Suite {
        #[arg(long, default_value = "fast")]
        scope: Scope,
    },
}

#[derive(Args)]
struct ClosureArgs {
    /// Structure file, optionally followed by a separator block.
    #[arg(long = "in")]
    input: PathBuf,
    /// Generators, overriding the separator block's `gen` lines.
    #[arg(long, value_delimiter = ',')]
    generators: Option<Vec<Elem>>,
    /// Close under the classical rule as well.
    #[arg(long)]
    classical: bool,
    /// Validate the given set as a separator instead of generating one.
    #[arg(long)]
    check_only: bool,
    /// Write the separator file here instead of into the report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Structure file.
    #[arg(long = "in")]
    input: PathBuf,
    /// What the expression is; `auto` tries combinator names, then commands,
    /// λ-terms and formulas.
    #[arg(long = "as", default_value = "auto", value_parser = ["auto", "combinator", "lambda", "formula", "command"])]
    what: String,
    /// The expression, or `@file` to read it from a file.
    expr: String,
}

#[derive(Subcommand)]
enum CalcCommand {
    /// Reduce a command to normal form.
    Run {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        fuel: usize,
    },
    /// Build a typing derivation.
    Typecheck { file: PathBuf },
    /// Interpret the subject in a structure.
    Interpret {
        file: PathBuf,
        #[arg(long)]
        structure: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::iter::once("realg".to_string()).chain(std::env::args().skip(1).map(quote)).collect::<Vec<_>>().join(" ");
    let mut report = Report::new(echo, cli.timings);
    if let Err(e) = dispatch(&cli, &mut report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    print!("{}", if cli.json { report.to_json() } else { report.to_text() });
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn quote(arg: String) -> String {
    if !arg.is_empty() && arg.chars().all(|c| c.is_alphanumeric() || "-_./=,@:".contains(c)) {
        arg
    } else {
        format!("'{}'", arg.replace('\'', "'\\''"))
    }
}

fn dispatch(cli: &Cli, report: &mut Report) -> Result<()> {
    let cap = cli.max_carrier;
    match &cli.command {
        Command::Validate { files } => files.iter().try_for_each(|f| validate(f, cap, report)),
        Command::Closure(args) => closure(args, cap, report),
        Command::Eval(args) => eval(args, cap, report),
        Command::Dualize { input, direction, out } => dualize(input, *direction, out.as_deref(), cap, report),
        Command::Quotient { input } => quotient_cmd(input, cap, report),
        Command::Tripos { inputs, imax } => inputs.iter().try_for_each(|f| tripos_cmd(f, *imax, cap, report)),
        Command::Calc(c) => calc(c, cap, report),
        Command::Suite { scope } => {
            suite(*scope, cli.seed, report);
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn check_cap(path: &Path, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        bail!("{}: carrier of size {size} exceeds the cap {cap} (--max-carrier or REALG_MAX_CARRIER)", path.display());
    }
    Ok(())
}

fn load_structure(path: &Path, cap: usize) -> Result<Structure> {
    let s = parse_structure(&read(path)?).with_context(|| path.display().to_string())?;
    check_cap(path, s.lattice().size(), cap)?;
    Ok(s)
}

fn load_algebra(path: &Path, cap: usize) -> Result<Algebra> {
    let a = parse_algebra(&read(path)?).with_context(|| path.display().to_string())?;
    check_cap(path, a.size(), cap)?;
    Ok(a)
}

fn members(a: &Algebra) -> String {
    format!("{:?}", a.separator.members())
}

// ---------------------------------------------------------------------------

fn validate(path: &Path, cap: usize, report: &mut Report) -> Result<()> {
    let name = path.display().to_string();
    let (raw, spec) = parse_raw_algebra(&read(path)?).with_context(|| name.clone())?;
    check_cap(path, raw.lattice.size(), cap)?;
    for (axiom, witness) in raw.verdicts().with_context(|| name.clone())? {
        let r = witness.map_or(Ok(()), |w| Err(format!("{w:?}")));
        report.check(format!("{name}: {axiom}"), r, Default::default());
    }
    let Some(spec) = spec else { return Ok(()) };
    let Ok(s) = raw.check() else {
        report.check(format!("{name}: separator"), Err("the structure fails its axioms".into()), Default::default());
        return Ok(());
    };
    let rules = SeparatorRules::new(&s, spec.classical);
    if spec.is_explicit() {
        let n = s.lattice().size();
        if let Some(&bad) = spec.members.iter().find(|&&m| m >= n) {
            bail!("{name}: member {bad} is outside the carrier");
        }
        let mask: Vec<bool> = (0..n).map(|a| spec.members.contains(&a)).collect();
        report.run(format!("{name}: separator"), || rules.check(&mask).map(|_| ()).map_err(|e| e.to_string()));
    } else {
        let mut generated = None;
        report.run(format!("{name}: separator closure"), || {
            generated = Some(rules.generate(&spec.generators).map_err(|e| e.to_string())?);
            Ok(())
        });
        if let Some(sep) = generated {
            report.output(format!("{name}: members"), format!("{:?}", sep.members()));
        }
    }
    Ok(())
}

fn closure(args: &ClosureArgs, cap: usize, report: &mut Report) -> Result<()> {
    let path = &args.input;
    let name = path.display().to_string();
    let (raw, spec) = parse_raw_algebra(&read(path)?).with_context(|| name.clone())?;
    check_cap(path, raw.lattice.size(), cap)?;
    let s = raw.check().with_context(|| name.clone())?;
    let classical = args.classical || spec.as_ref().is_some_and(|sp| sp.classical);
    let listed = |sp: &realg_core::text::SeparatorSpec| if sp.is_explicit() { sp.members.clone() } else { sp.generators.clone() };
    let set = args.generators.clone().or_else(|| spec.as_ref().map(listed)).unwrap_or_default();
    let n = s.lattice().size();
    if let Some(&bad) = set.iter().find(|&&a| a >= n) {
        bail!("element {bad} is outside the carrier 0..{n}");
    }
    let rules = SeparatorRules::new(&s, classical);
    let mut result = None;
    if args.check_only {
        let mask: Vec<bool> = (0..n).map(|a| set.contains(&a)).collect();
        report.run(format!("{set:?} is a separator"), || {
            result = Some(rules.check(&mask).map_err(|e| e.to_string())?);
            Ok(())
        });
    } else {
        report.run(format!("closure of {set:?}"), || {
            result = Some(rules.generate(&set).map_err(|e| e.to_string())?);
            Ok(())
        });
    }
    if let Some(sep) = result {
        report.output("consistent", sep.is_consistent().to_string());
        let text = write_separator(&Algebra { structure: s, separator: sep });
        match &args.out {
            Some(out) => {
                fs::write(out, &text).with_context(|| format!("cannot write {}", out.display()))?;
                report.output("written", out.display().to_string());
            }
            None => report.output("separator", text),
        }
    }
    Ok(())
}

fn value_line(s: &Structure, a: Elem) -> String {
    let l = s.lattice();
    let mut tags: Vec<String> = l.labels().map(|ls| vec![ls[a].clone()]).unwrap_or_default();
    if a == l.top() {
        tags.push("⊤".into());
    } else if a == l.bot() {
        tags.push("⊥".into());
    }
    if tags.is_empty() {
        a.to_string()
    } else {
        format!("{a} ({})", tags.join(", "))
    }
}

fn polarity_of(s: &Structure) -> Result<Polarity> {
    match s.kind() {
        Kind::Disjunctive => Ok(Polarity::Par),
        Kind::Conjunctive => Ok(Polarity::Tens),
        Kind::Implicative => bail!("commands need a disjunctive or conjunctive structure"),
    }
}

fn eval(args: &EvalArgs, cap: usize, report: &mut Report) -> Result<()> {
    let s = load_structure(&args.input, cap)?;
    let expr = match args.expr.strip_prefix('@') {
        Some(file) => read(Path::new(file))?,
        None => args.expr.clone(),
    };
    let expr = expr.trim();
    let named = Combinator::ALL.iter().copied().find(|c| c.to_string() == expr);
    let what = match args.what.as_str() {
        "auto" if named.is_some() => "combinator",
        "auto" if expr.starts_with("(cmd") => "command",
        "auto" if parse_lambda(expr).is_ok() => "lambda",
        "auto" => "formula",
        w => w,
    };
    match what {
        "combinator" => {
            let c = named.ok_or_else(|| anyhow!("unknown combinator {expr:?}"))?;
            let v = combinator(&s, c)?;
            report.output("value", value_line(&s, v));
        }
        "lambda" => {
            let t = parse_lambda(expr)?;
            let v = interpret_lambda(&s, &t)?;
            report.output("value", value_line(&s, v));
        }
        "formula" => {
            let f = parse_formula(expr)?;
            let v = interpret_formula(&s, &f)?;
            report.output("value", value_line(&s, v));
        }
        _ => {
            let c = parse_command(expr)?;
            let pol = polarity_of(&s)?;
            let v = interpret(&s, pol, &Subject::Command(c))?;
            command_outputs(&s, v, report);
        }
    }
    Ok(())
}

fn command_outputs(s: &Structure, v: Interpretation, report: &mut Report) {
    match v {
        Interpretation::Element(a) => report.output("value", value_line(s, a)),
        Interpretation::Command((t, e)) => {
            report.output("term", value_line(s, t));
            report.output("context", value_line(s, e));
            report.output("in pole", in_pole(s.lattice(), (t, e)).to_string());
        }
    }
}

fn dualize(path: &Path, direction: Direction, out: Option<&Path>, cap: usize, report: &mut Report) -> Result<()> {
    let a = load_algebra(path, cap)?;
    if a.kind() != direction.source() {
        bail!("{}: {direction} needs a {} algebra, got a {} one", path.display(), direction.source(), a.kind());
    }
    let mut witness = None;
    report.run(format!("transported separator is a {} separator", direction.target()), || {
        witness = Some(transport_separator(&a, direction).map_err(|e| e.to_string())?);
        Ok(())
    });
    let Some(w) = witness else { return Ok(()) };
    report.run("a ⊢ b in the dual iff ¬a ⊢ ¬b in the source", || {
        key_lemma(&w).map(|_| ()).map_err(|(x, y)| format!("a={x} b={y}"))
    });
    let text = write_algebra(&w.target);
    match out {
        Some(out) => {
            fs::write(out, &text).with_context(|| format!("cannot write {}", out.display()))?;
            report.output("written", out.display().to_string());
        }
        None => report.output("dual", text),
    }
    Ok(())
}

fn quotient_cmd(path: &Path, cap: usize, report: &mut Report) -> Result<()> {
    let a = load_algebra(path, cap)?;
    let mut q = None;
    report.run("quotient is a Heyting algebra", || {
        q = Some(quotient(&a).map_err(|e| e.to_string())?);
        Ok(())
    });
    let Some(q) = q else { return Ok(()) };
    let mut text = String::new();
    for (k, class) in q.classes.iter().enumerate() {
        let mark = if k == q.top { " ⊤" } else if k == q.bot { " ⊥" } else { "" };
        text.push_str(&format!("class {k}{mark}: {class:?}\n"));
    }
    for x in 0..q.len() {
        for y in 0..q.len() {
            if x != y && q.le(x, y) {
                text.push_str(&format!("le {x} {y}\n"));
            }
        }
    }
    report.output("quotient", text);
    Ok(())
}

fn tripos_cmd(path: &Path, imax: usize, cap: usize, report: &mut Report) -> Result<()> {
    let name = path.display().to_string();
    let a = load_algebra(path, cap)?;
    let t = FiniteTripos::new(&a).with_context(|| name.clone())?;
    report.output(format!("{name}: separator"), members(&a));
    let t0 = std::time::Instant::now();
    let results = verify(&t, imax);
    let each = t0.elapsed() / CLAUSES.len() as u32;
    for (clause, r) in CLAUSES.iter().zip(results) {
        report.check(format!("{name}: {clause}"), r.map(|_| ()).map_err(|e| e.to_string()), each);
    }
    if a.kind() == Kind::Disjunctive {
        report.run(format!("{name}: φ_I natural order-isomorphism"), || {
            let w = transport_separator(&a, Direction::Pa2Ta).map_err(|e| e.to_string())?;
            for i in 0..=imax {
                tripos_iso(&a, &w.target, i, imax).map_err(|e| e.to_string())?;
            }
            Ok(())
        });
    }
    Ok(())
}

fn calc(c: &CalcCommand, cap: usize, report: &mut Report) -> Result<()> {
    let path = match c {
        CalcCommand::Run { file, .. } | CalcCommand::Typecheck { file } | CalcCommand::Interpret { file, .. } => file,
    };
    let file = parse_calc_file(&read(path)?).with_context(|| path.display().to_string())?;
    let pol = file.polarity;
    let subject = &file.sequent.judgment.subject;
    match c {
        CalcCommand::Run { fuel, .. } => {
            let Subject::Command(cmd) = subject else { bail!("`calc run` needs a command subject") };
            let trace = normalize(pol, cmd, *fuel);
            let mut text = format!("{}\n", trace.commands[0]);
            for (rule, next) in trace.rules.iter().zip(&trace.commands[1..]) {
                text.push_str(&format!("  -> [{rule}] {next}\n"));
            }
            report.output("trace", text);
            report.output("steps", trace.rules.len().to_string());
            report.check(
                format!("normal form within {fuel} steps"),
                if trace.out_of_fuel() { Err(trace.last().to_string()) } else { Ok(()) },
                Default::default(),
            );
        }
        CalcCommand::Typecheck { .. } => {
            let mut derivation = None;
            report.run("typing derivation", || {
                derivation = Some(typecheck(&file.sequent).map_err(|e| e.to_string())?);
                Ok(())
            });
            if let Some(d) = derivation {
                report.output("derivation", d.to_string());
            }
        }
        CalcCommand::Interpret { structure, .. } => {
            let s = load_structure(structure, cap)?;
            let v = interpret(&s, pol, subject)?;
            command_outputs(&s, v, report);
        }
    }
    Ok(())
}

fn suite(scope: Scope, seed: u64, report: &mut Report) {
    for c in run_all(scope, seed) {
        for check in c.checks {
            let name = format!("criterion {} ({}): {}", c.id, c.title, check.name);
            report.check(name, check.witness.map_or(Ok(()), Err), check.elapsed);
        }
    }
}
