//! The `paraneg` command line, as a library function so that it can be
//! tested without spawning processes.
//!
//! Exit codes: 0 for accepted/valid/found, 1 for rejected/invalid/not
//! found, 2 for usage and file errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::acceptance::{self, AcceptBounds};
use crate::algebra::{
    builtin_model, classify_negation, countermodel_search, entails, is_valid, model_to_toml, resolve_model,
    right_adjoint, AlgebraError, Bounds, NegationClass, NegationModel, BUILTIN_MODELS, DEFAULT_MAX_LATTICE,
};
use crate::calculus::corpus::{self, verify_corpus};
use crate::calculus::{axiom_formulas, check_proof, list_axioms, parse_script, Registry, SystemDef};
use crate::polarity::{
    builtin_frame, check_galois, frame_to_toml, resolve_frame, upset_algebra, verify_frame_axioms,
    PolarityFrame, BUILTIN_FRAMES,
};
use crate::syntax::{parse_fixed, render, render_sugared, Formula};

/// Systems accepted by `--system`.
pub const CLI_SYSTEMS: &[&str] = &[
    "IPCplus", "CPL", "INT", "Cn", "Zn", "CZn", "mZn", "mCZn", "ZnMinus", "mZnCore",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Debug, Parser)]
#[command(
    name = "paraneg",
    version,
    about = "Proof checking and finite-model semantics for weakened intuitionistic negations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Proof system.
    #[arg(long, global = true, default_value = "mZn", value_parser = clap::builder::PossibleValuesParser::new(CLI_SYSTEMS))]
    system: String,
    /// Consistency parameter of the parametric systems.
    #[arg(long, global = true, default_value_t = 1)]
    n: usize,
    /// Model file or `builtin:NAME`.
    #[arg(long, global = true)]
    model: Option<String>,
    /// Frame file or `builtin:NAME`.
    #[arg(long, global = true)]
    frame: Option<String>,
    /// Largest lattice for sweeps and searches.
    #[arg(long, global = true)]
    max_lattice: Option<usize>,
    /// Largest frame for polarity sweeps.
    #[arg(long, global = true)]
    max_worlds: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula and print its canonical and sugared forms.
    Parse { formula: String },
    /// List the axioms of `--system` at `--n`.
    Axioms,
    /// Check a proof script against the built-in theorem corpus.
    Check { file: PathBuf },
    /// Verify the theorem corpus (built-in, or `.prf` files in `--dir`).
    Corpus {
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Write the built-in corpus to this directory instead.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Validity of a formula in `--model`.
    Valid { formula: String },
    /// Entailment in `--model`; premises are comma-separated.
    Entails { premises: String, conclusion: String },
    /// Place the negation of `--model` in the hierarchy.
    Classify,
    /// Right adjoint of the negation of `--model`.
    Adjoint,
    /// Report on a frame (positional or `--frame`).
    Frame {
        spec: Option<String>,
        /// Print the induced model file instead.
        #[arg(long)]
        to_model: bool,
        /// Check the Galois laws on up-sets only.
        #[arg(long)]
        hereditary_only: bool,
    },
    /// Search for a model of the axioms of `--system` refuting a target.
    Search {
        target: String,
        /// Axioms to leave out.
        #[arg(long, value_delimiter = ',')]
        drop: Vec<String>,
        /// Least negation class to consider.
        #[arg(long)]
        class: Option<String>,
    },
    /// Run the acceptance criteria.
    Accept {
        /// Read the corpus from `.prf` files here.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Print a built-in model or frame file.
    Emit { name: String },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Outcome {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Outcome {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// One tab-separated `key=value` record.
fn record(pairs: &[(&str, String)]) -> String {
    let fields: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    fields.join("\t") + "\n"
}

struct Ctx {
    format: Format,
    system: SystemDef,
    n: usize,
    model: Option<String>,
    frame: Option<String>,
    max_lattice: Option<usize>,
    max_worlds: Option<usize>,
}

impl Ctx {
    fn records(&self) -> bool {
        self.format == Format::Records
    }

    fn formula(&self, text: &str) -> Result<Formula, Outcome> {
        parse_fixed(text, Some(self.n)).map_err(Outcome::usage)
    }

    fn model(&self) -> Result<NegationModel, Outcome> {
        let spec = self.model.as_deref().ok_or_else(|| Outcome::usage("--model is required"))?;
        resolve_model(spec).map_err(Outcome::usage)
    }

    fn frame(&self, positional: Option<String>) -> Result<PolarityFrame, Outcome> {
        let spec = positional
            .or_else(|| self.frame.clone())
            .ok_or_else(|| Outcome::usage("a frame (positional or --frame) is required"))?;
        resolve_frame(&spec).map_err(Outcome::usage)
    }
}

/// Runs the command line `argv` (program name first).
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::out(0, text),
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let system = match SystemDef::builtin(&cli.system, Some(cli.n)) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    let ctx = Ctx {
        format: cli.format,
        system,
        n: cli.n,
        model: cli.model,
        frame: cli.frame,
        max_lattice: cli.max_lattice,
        max_worlds: cli.max_worlds,
    };
    let result = match cli.command {
        Command::Parse { formula } => cmd_parse(&ctx, &formula),
        Command::Axioms => Ok(cmd_axioms(&ctx)),
        Command::Check { file } => cmd_check(&ctx, &file),
        Command::Corpus { dir, write } => cmd_corpus(&ctx, dir, write),
        Command::Valid { formula } => cmd_valid(&ctx, &formula),
        Command::Entails { premises, conclusion } => cmd_entails(&ctx, &premises, &conclusion),
        Command::Classify => cmd_classify(&ctx),
        Command::Adjoint => cmd_adjoint(&ctx),
        Command::Frame {
            spec,
            to_model,
            hereditary_only,
        } => cmd_frame(&ctx, spec, to_model, hereditary_only),
        Command::Search { target, drop, class } => cmd_search(&ctx, &target, &drop, class.as_deref()),
        Command::Accept { dir } => Ok(cmd_accept(&ctx, dir)),
        Command::Emit { name } => cmd_emit(&name),
    };
    result.unwrap_or_else(|e| e)
}

type CmdResult = Result<Outcome, Outcome>;

fn cmd_parse(ctx: &Ctx, text: &str) -> CmdResult {
    let f = ctx.formula(text)?;
    let atoms: Vec<&str> = f.atoms().into_iter().collect();
    let out = if ctx.records() {
        record(&[
            ("formula", render(&f)),
            ("sugared", render_sugared(&f)),
            ("atoms", atoms.join(",")),
            ("depth", f.depth().to_string()),
        ])
    } else {
        format!(
            "formula: {}\nsugared: {}\natoms:   {}\ndepth:   {}\n",
            render(&f),
            render_sugared(&f),
            atoms.join(", "),
            f.depth()
        )
    };
    Ok(Outcome::out(0, out))
}

fn cmd_axioms(ctx: &Ctx) -> Outcome {
    let mut out = String::new();
    for (name, pattern) in list_axioms(&ctx.system, ctx.n) {
        if ctx.records() {
            out += &record(&[
                ("system", ctx.system.label()),
                ("axiom", name.to_string()),
                ("schema", pattern.to_string()),
            ]);
        } else {
            let _ = writeln!(out, "{name:<6} {pattern}");
        }
    }
    Outcome::out(0, out)
}

fn builtin_registry() -> Registry {
    corpus::verify_builtin().1
}

fn cmd_check(ctx: &Ctx, file: &std::path::Path) -> CmdResult {
    let text = std::fs::read_to_string(file).map_err(|e| Outcome::usage(format!("{}: {e}", file.display())))?;
    let script = parse_script(&text).map_err(|e| Outcome::usage(format!("{}: {e}", file.display())))?;
    let verdict = check_proof(&script, &builtin_registry());
    let status = if verdict.accepted() { "accepted" } else { "rejected" };
    let mut out = String::new();
    if ctx.records() {
        out += &record(&[
            ("script", script.name.clone()),
            ("system", script.system.label()),
            ("status", status.to_string()),
        ]);
        for f in &verdict.failures {
            out += &record(&[
                ("line", f.line.to_string()),
                ("kind", f.kind.to_string()),
                ("detail", f.detail.clone()),
            ]);
        }
    } else {
        out += status;
        out += "\n";
        for f in &verdict.failures {
            let _ = writeln!(out, "  {f}");
        }
    }
    Ok(Outcome::out(if verdict.accepted() { 0 } else { 1 }, out))
}

fn cmd_corpus(ctx: &Ctx, dir: Option<PathBuf>, write: Option<PathBuf>) -> CmdResult {
    if let Some(dest) = write {
        let scripts = corpus::scripts();
        corpus::write_dir(&dest, &scripts).map_err(Outcome::usage)?;
        return Ok(Outcome::out(
            0,
            format!("wrote {} scripts to {}\n", scripts.len(), dest.display()),
        ));
    }
    let report = match dir {
        None => corpus::verify_builtin().0,
        Some(d) => {
            let scripts = corpus::load_dir(&d).map_err(Outcome::usage)?;
            verify_corpus(&scripts, &mut Registry::new())
        }
    };
    let mut out = String::new();
    for r in &report.records {
        let status = if r.accepted() { "accepted" } else { "rejected" };
        let system = match r.n {
            Some(n) => format!("{}(n={n})", r.system),
            None => r.system.clone(),
        };
        if ctx.records() {
            let mut fields = vec![
                ("name", r.name.clone()),
                ("system", r.system.clone()),
                ("n", r.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into())),
                ("lines", r.lines.to_string()),
                ("status", status.to_string()),
            ];
            if let Some(f) = &r.failure {
                fields.push(("failure", f.to_string()));
            }
            out += &record(&fields);
        } else {
            let _ = write!(out, "{:<14} {:<12} {:>4} lines  {status}", r.name, system, r.lines);
            if let Some(f) = &r.failure {
                let _ = write!(out, " ({f})");
            }
            out += "\n";
        }
    }
    let accepted = report.records.iter().filter(|r| r.accepted()).count();
    if !ctx.records() {
        let _ = writeln!(out, "{accepted}/{} accepted", report.records.len());
    }
    Ok(Outcome::out(if report.all_accepted() { 0 } else { 1 }, out))
}

fn cmd_valid(ctx: &Ctx, text: &str) -> CmdResult {
    let f = ctx.formula(text)?;
    let m = ctx.model()?;
    let v = is_valid(&f, &m);
    let out = match (&v.falsifier, ctx.records()) {
        (None, true) => record(&[("status", "valid".into())]),
        (None, false) => "valid\n".to_string(),
        (Some(w), true) => record(&[("status", "invalid".into()), ("falsifier", w.render(&m))]),
        (Some(w), false) => format!("invalid; falsifier {}\n", w.render(&m)),
    };
    Ok(Outcome::out(if v.valid() { 0 } else { 1 }, out))
}

fn cmd_entails(ctx: &Ctx, premises: &str, conclusion: &str) -> CmdResult {
    let ps = premises
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| ctx.formula(s))
        .collect::<Result<Vec<_>, _>>()?;
    let c = ctx.formula(conclusion)?;
    let m = ctx.model()?;
    let e = entails(&ps, &c, &m);
    let out = match (&e.witness, ctx.records()) {
        (None, true) => record(&[("status", "entailed".into())]),
        (None, false) => "entailed\n".to_string(),
        (Some(w), true) => record(&[("status", "not-entailed".into()), ("witness", w.render(&m))]),
        (Some(w), false) => format!("NOT entailed; witness {}\n", w.render(&m)),
    };
    Ok(Outcome::out(if e.holds() { 0 } else { 1 }, out))
}

fn neg_line(m: &NegationModel, table: &[usize], symbol: &str) -> String {
    (0..m.size())
        .map(|x| format!("{symbol}{}={}", m.name(x), m.name(table[x])))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_classify(ctx: &Ctx) -> CmdResult {
    let m = ctx.model()?;
    let cl = classify_negation(&m);
    let mut out = String::new();
    if ctx.records() {
        out += &record(&[("class", cl.class.to_string()), ("neg", m.describe_neg())]);
        for p in &cl.properties {
            let mut fields = vec![
                ("property", p.name.to_string()),
                ("level", p.level.to_string()),
                ("holds", p.holds.to_string()),
            ];
            if let Some(w) = &p.witness {
                fields.push(("witness", w.clone()));
            }
            out += &record(&fields);
        }
    } else {
        let _ = writeln!(out, "class: {}\nnegation: {}", cl.class, m.describe_neg());
        for p in &cl.properties {
            let mark = if p.holds { "holds" } else { "fails" };
            let _ = write!(out, "  [{mark}] {:<13} {}", p.level.to_string(), p.name);
            if let Some(w) = &p.witness {
                let _ = write!(out, "  ({w})");
            }
            out += "\n";
        }
    }
    Ok(Outcome::out(0, out))
}

fn cmd_adjoint(ctx: &Ctx) -> CmdResult {
    let m = ctx.model()?;
    let (code, out) = match right_adjoint(&m) {
        Ok(Some(adj)) => {
            let line = neg_line(&m, &adj, "~'");
            let same = (0..m.size()).all(|x| adj[x] == m.neg(x));
            if ctx.records() {
                (0, record(&[("adjoint", line), ("selfadjoint", same.to_string())]))
            } else {
                (0, format!("{line}\nselfadjoint: {same}\n"))
            }
        }
        Ok(None) => {
            let class = classify_negation(&m).class;
            if ctx.records() {
                (1, record(&[("adjoint", "absent".into()), ("class", class.to_string())]))
            } else {
                (1, format!("absent (class {class})\n"))
            }
        }
        Err(e) => (1, format!("{e}\n")),
    };
    Ok(Outcome::out(code, out))
}

fn cmd_frame(ctx: &Ctx, spec: Option<String>, to_model: bool, hereditary_only: bool) -> CmdResult {
    let frame = ctx.frame(spec)?;
    let ua = upset_algebra(&frame).map_err(Outcome::usage)?;
    if to_model {
        return Ok(Outcome::out(0, model_to_toml(&ua.model, None)));
    }
    let laws = check_galois(&frame, hereditary_only);
    let axioms = verify_frame_axioms(&frame, &ctx.system, ctx.n).map_err(Outcome::usage)?;
    let class = classify_negation(&ua.model).class;
    let ok = laws.iter().all(|l| l.holds()) && axioms.iter().all(|a| a.holds());
    let mut out = String::new();
    if ctx.records() {
        out += &record(&[
            ("frame", frame.to_string()),
            ("selfadjoint", frame.is_selfadjoint().to_string()),
            ("class", class.to_string()),
        ]);
        for l in &laws {
            out += &record(&[("law", l.law.to_string()), ("holds", l.holds().to_string())]);
        }
        for a in &axioms {
            let mut fields = vec![
                ("system", ctx.system.label()),
                ("axiom", a.name.clone()),
                ("holds", a.holds().to_string()),
            ];
            if let Some(d) = &a.detail {
                fields.push(("falsifier", d.clone()));
            }
            out += &record(&fields);
        }
    } else {
        let _ = writeln!(out, "frame: {frame}");
        let _ = writeln!(out, "selfadjoint: {}", frame.is_selfadjoint());
        let _ = writeln!(out, "induced negation: {class}; {}", ua.model.describe_neg());
        for l in &laws {
            let mark = if l.holds() { "holds" } else { "fails" };
            let _ = write!(out, "  [{mark}] {}", l.law);
            if let Some(w) = &l.witness {
                let _ = write!(out, "  ({w})");
            }
            out += "\n";
        }
        let _ = writeln!(out, "axioms of {}:", ctx.system.label());
        for a in &axioms {
            let mark = if a.holds() { "valid" } else { "fails" };
            let _ = write!(out, "  [{mark}] {}", a.name);
            if let Some(d) = &a.detail {
                let _ = write!(out, "  ({d})");
            }
            out += "\n";
        }
    }
    Ok(Outcome::out(if ok { 0 } else { 1 }, out))
}

fn cmd_search(ctx: &Ctx, target: &str, drop: &[String], class: Option<&str>) -> CmdResult {
    let target = ctx.formula(target)?;
    if let Some(bad) = drop.iter().find(|d| !ctx.system.contains(d)) {
        return Err(Outcome::usage(format!("{bad} is not an axiom of {}", ctx.system.label())));
    }
    let axioms: Vec<Formula> = axiom_formulas(&ctx.system, ctx.n)
        .into_iter()
        .filter(|(name, _)| !drop.iter().any(|d| d == name))
        .map(|(_, f)| f)
        .collect();
    let filter = match class {
        None => NegationClass::None,
        Some(c) => NegationClass::from_name(c).ok_or_else(|| Outcome::usage(format!("unknown class {c}")))?,
    };
    let bounds = Bounds {
        max_lattice: ctx.max_lattice.unwrap_or(DEFAULT_MAX_LATTICE),
        filter,
    };
    let report = countermodel_search(&axioms, &target, bounds).map_err(|e: AlgebraError| Outcome::usage(e))?;
    let coverage = [
        ("lattices", report.lattices.to_string()),
        ("negations", report.negations.to_string()),
        ("axiom_models", report.axiom_models.to_string()),
    ];
    let mut out = String::new();
    match &report.found {
        Some(hit) => {
            let m = &hit.model;
            if ctx.records() {
                let mut fields = vec![
                    ("status", "found".to_string()),
                    ("size", m.size().to_string()),
                    ("neg", m.describe_neg()),
                    ("valuation", hit.valuation.render(m)),
                ];
                fields.extend(coverage.iter().cloned());
                out += &record(&fields);
            } else {
                let _ = writeln!(out, "found on a {}-element lattice", m.size());
                let _ = writeln!(out, "negation: {}", m.describe_neg());
                let _ = writeln!(out, "falsifier: {}", hit.valuation.render(m));
                let _ = writeln!(
                    out,
                    "scanned {} lattices, {} negations, {} axiom models",
                    report.lattices, report.negations, report.axiom_models
                );
                out += "model file:\n";
                out += &model_to_toml(m, None);
            }
            Ok(Outcome::out(0, out))
        }
        None => {
            if ctx.records() {
                let mut fields = vec![("status", "not-found".to_string())];
                fields.extend(coverage.iter().cloned());
                out += &record(&fields);
            } else {
                let _ = writeln!(
                    out,
                    "not found; scanned {} lattices, {} negations, {} axiom models",
                    report.lattices, report.negations, report.axiom_models
                );
            }
            Ok(Outcome::out(1, out))
        }
    }
}

fn cmd_accept(ctx: &Ctx, dir: Option<PathBuf>) -> Outcome {
    let defaults = AcceptBounds::default();
    let bounds = AcceptBounds {
        max_lattice: ctx.max_lattice.unwrap_or(defaults.max_lattice),
        max_worlds: ctx.max_worlds.unwrap_or(defaults.max_worlds),
        corpus_dir: dir,
    };
    let reports = acceptance::run_all(&bounds);
    let mut out = String::new();
    for r in &reports {
        if ctx.records() {
            out += &record(&[
                ("criterion", r.id.to_string()),
                ("title", r.title.to_string()),
                ("status", if r.pass { "pass" } else { "fail" }.to_string()),
                ("exploratory", r.exploratory.to_string()),
                ("summary", r.summary.clone()),
            ]);
        } else {
            let _ = writeln!(out, "{r}");
            for d in &r.details {
                let _ = writeln!(out, "    {d}");
            }
        }
    }
    Outcome::out(if acceptance::suite_passes(&reports) { 0 } else { 1 }, out)
}

fn cmd_emit(name: &str) -> CmdResult {
    if BUILTIN_MODELS.contains(&name) {
        let m = builtin_model(name).map_err(Outcome::usage)?;
        return Ok(Outcome::out(0, model_to_toml(&m, Some(name))));
    }
    if BUILTIN_FRAMES.contains(&name) {
        let f = builtin_frame(name).map_err(Outcome::usage)?;
        return Ok(Outcome::out(0, frame_to_toml(&f, Some(name))));
    }
    Err(Outcome::usage(format!(
        "unknown builtin {name}; known: {}, {}",
        BUILTIN_MODELS.join(", "),
        BUILTIN_FRAMES.join(", ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        dispatch(std::iter::once("paraneg").chain(args.iter().copied()))
    }

    #[test]
    fn valid_and_entails() {
        let o = run(&["valid", "--model", "builtin:B2_TRIV", "(A & ~A) -> ~B"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "valid\n"));
        let o = run(&["entails", "--model", "builtin:B2_TRIV", "A, ~A", "B"]);
        assert_eq!((o.code, o.stdout.as_str()), (1, "NOT entailed; witness A=1,B=0\n"));
        let o = run(&["valid", "--model", "builtin:B2_TRIV", "--format", "records", "(A & ~A) -> B"]);
        assert_eq!((o.code, o.stdout.as_str()), (1, "status=invalid\tfalsifier=A=1,B=0\n"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["valid", "p"]).code, 2);
        assert_eq!(run(&["valid", "--model", "builtin:NOPE", "p"]).code, 2);
        assert_eq!(run(&["valid", "--model", "builtin:B2_TRIV", "p ->"]).code, 2);
        assert_eq!(run(&["axioms", "--system", "S4"]).code, 2);
        assert_eq!(run(&["bogus"]).code, 2);
        assert_eq!(run(&["check", "/no/such/file.prf"]).code, 2);
        assert_eq!(run(&["emit", "NOPE"]).code, 2);
        assert_eq!(run(&["--help"]).code, 0);
    }

    #[test]
    fn axioms_listing() {
        let o = run(&["axioms", "--system", "mCZn", "--n", "1"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.lines().count(), 16);
        assert!(o.stdout.lines().last().unwrap().starts_with("13b"));
    }

    #[test]
    fn adjoint_and_classify() {
        let o = run(&["adjoint", "--model", "builtin:B2_CLASSICAL"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "~'0=1, ~'1=0\nselfadjoint: true\n"));
        let o = run(&["classify", "--model", "builtin:B2_TRIV", "--format", "records"]);
        assert!(o.stdout.starts_with("class=Constructive\t"));
    }

    #[test]
    fn emit_and_frame() {
        let o = run(&["emit", "FRAME_FULL_R"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("R = [[\"a\", \"a\"]"));
        let o = run(&["frame", "builtin:FRAME_FULL_R", "--to-model"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("neg = [\"{a,b}\", \"{a,b}\", \"{a,b}\", \"{a,b}\"]"));
        let o = run(&["frame", "--frame", "builtin:FRAME_FULL_R", "--system", "Zn"]);
        assert_eq!(o.code, 1);
        assert!(o.stdout.contains("[fails] 10b.2"));
    }

    #[test]
    fn search_paraconsistency_witness() {
        let o = run(&["search", "--system", "mZn", "--max-lattice", "3", "(A & ~A) -> B"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(o.stdout.contains("falsifier: A=1,B=0"));
        let o = run(&["search", "--system", "CPL", "--max-lattice", "3", "A | ~A"]);
        assert_eq!(o.code, 1);
        assert_eq!(run(&["search", "--max-lattice", "9", "A"]).code, 2);
        assert_eq!(run(&["search", "--drop", "13b", "A"]).code, 2);
    }

    #[test]
    fn records_are_deterministic() {
        let a = run(&["corpus", "--format", "records"]);
        let b = run(&["corpus", "--format", "records"]);
        assert_eq!(a, b);
        assert_eq!(a.code, 1);
        assert!(a.stdout.lines().all(|l| l.starts_with("name=")));
    }
}
