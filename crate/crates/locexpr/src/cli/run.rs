use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{ArgAction, Args, Parser, Subcommand};

use super::dsl::{certificate_text, parse, parse_formula, DslDocument, Decl};
use crate::catalog::{self, bases};
use crate::classes::mine_bounds;
use crate::expressions::{certificate_violation, decide_with, render_snp, Certificate, LocalExpression};
use crate::logic::{distinguishing_model, logically_equivalent, synthesize_definition, FunctorTable};
use crate::solver::{compile, count_solutions_with, SearchStats, SolveOptions};
use crate::structures::io::{from_edge_list, from_graph6, to_graph6};
use crate::structures::{enumerate_graphs, Signature, Structure};
use crate::{Error, Result};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Command line of the `locexpr` binary.
#[derive(Parser, Debug, Clone)]
#[command(name = "locexpr", version, about = "Decide graph classes given by local expressions")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Give up after this many search nodes (exit 2).
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Give up after this many seconds (exit 2).
    #[arg(long, global = true)]
    pub max_seconds: Option<f64>,
    /// Append search counters as key=value lines.
    #[arg(long, global = true)]
    pub stats: bool,
    /// Single-threaded search and no timings in the output.
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    pub deterministic: bool,
    /// key=value lines only.
    #[arg(long, global = true)]
    pub machine: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ExprGraph {
    /// Catalog name, DSL file, or `FILE#name`.
    #[arg(long)]
    pub expr: String,
    /// Graph in graph6 (`.g6`) or edge-list (`.edgelist`) format.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Search for a certificate.
    Decide {
        #[command(flatten)]
        input: ExprGraph,
        /// Write the certificate here instead of printing it.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Count all certificates instead of stopping at the first.
        #[arg(long)]
        all: bool,
    },
    /// Check a certificate without search.
    Verify {
        #[command(flatten)]
        input: ExprGraph,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Minimal non-members of an expression's class among small graphs.
    Bounds {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
    },
    /// Logical equivalence of two quantifier-free formulas in `x1..xk`.
    Equiv {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Symbols as `NAME/ARITY,...`.
        #[arg(long, default_value = "E/2")]
        signature: String,
        /// Free variables; defaults to the largest index used.
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Definition from a functor table: a DSL file with signatures `Source`
    /// and `Target` and structure pairs `in_K` / `out_K`.
    Synth {
        #[arg(long)]
        table: PathBuf,
    },
    /// The SNP sentence of an expression.
    Snp {
        #[arg(long)]
        expr: String,
    },
    /// Members among all graphs up to a size, one graph6 line each.
    Enumerate {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        /// Print every graph with its verdict.
        #[arg(long)]
        all: bool,
    },
    /// Shipped expressions.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

struct Out<'a> {
    w: &'a mut dyn Write,
    machine: bool,
}

impl Out<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.w, "{}", s.as_ref())?;
        Ok(())
    }

    /// `result=member` in machine mode, `member` otherwise.
    fn result(&mut self, verdict: &str) -> Result<()> {
        if self.machine {
            self.line(format!("result={verdict}"))
        } else {
            self.line(verdict)
        }
    }

    /// Text block; skipped in machine mode.
    fn text(&mut self, s: impl AsRef<str>) -> Result<()> {
        if self.machine {
            return Ok(());
        }
        write!(self.w, "{}", s.as_ref())?;
        Ok(())
    }
}

impl RunConfig {
    fn solve_options(&self) -> Result<SolveOptions> {
        let max_time = match self.max_seconds {
            Some(s) if !(s > 0.0) => return Err(Error::input("--max-seconds must be positive")),
            s => s.map(Duration::from_secs_f64),
        };
        if self.max_nodes == Some(0) {
            return Err(Error::input("--max-nodes must be positive"));
        }
        let threads = if self.deterministic { 1 } else { std::thread::available_parallelism().map_or(1, |n| n.get()) };
        Ok(SolveOptions { max_nodes: self.max_nodes, max_time, threads, audit: false })
    }

    fn write_stats(&self, out: &mut Out<'_>, stats: &SearchStats) -> Result<()> {
        if !self.stats {
            return Ok(());
        }
        if !out.machine {
            out.line("[stats]")?;
        }
        for line in stats.to_string().lines() {
            if self.deterministic && line.starts_with("elapsed_ms=") {
                continue;
            }
            out.line(line)?;
        }
        Ok(())
    }
}

/// Expression from a catalog name, a DSL file, or `FILE#name`.
pub fn resolve_expression(arg: &str) -> Result<LocalExpression> {
    let (path, name) = match arg.rsplit_once('#') {
        Some((p, n)) => (p, Some(n)),
        None => (arg, None),
    };
    if Path::new(path).is_file() {
        let doc = parse(&std::fs::read_to_string(path)?)?;
        let exprs = doc.expressions();
        return match (name, exprs.as_slice()) {
            (Some(n), _) => doc.expression(n).cloned().ok_or_else(|| Error::input(format!("{path} has no expression {n:?}"))),
            (None, [(_, e)]) => Ok((*e).clone()),
            (None, []) => Err(Error::input(format!("{path} declares no expression"))),
            (None, many) => {
                let names: Vec<&str> = many.iter().map(|p| p.0).collect();
                Err(Error::input(format!("{path} declares several expressions, pick one with #name: {}", names.join(", "))))
            }
        };
    }
    Ok(catalog::builtin(arg)?.expression)
}

/// Reads a graph, choosing the format by extension.
pub fn read_graph(path: &Path) -> Result<Structure> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => {
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            match lines.as_slice() {
                [one] => from_graph6(one.strip_prefix(">>graph6<<").unwrap_or(one)),
                _ => Err(Error::input(format!("{}: expected one graph6 line, found {}", path.display(), lines.len()))),
            }
        }
        Some("edgelist") => from_edge_list(&text),
        _ => Err(Error::input(format!("{}: unknown graph format, use a .g6 or .edgelist extension", path.display()))),
    }
}

fn read_certificate(path: &Path) -> Result<Structure> {
    let doc = parse(&std::fs::read_to_string(path)?)?;
    let structures = doc.structures();
    match (doc.structure("certificate"), structures.as_slice()) {
        (Some(x), _) => Ok(x.clone()),
        (None, [(_, x)]) => Ok((*x).clone()),
        _ => Err(Error::input(format!("{}: expected a structure named certificate", path.display()))),
    }
}

fn parse_signature(text: &str) -> Result<Signature> {
    let mut symbols = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, arity) =
            item.split_once('/').ok_or_else(|| Error::input(format!("symbol {item:?} is not NAME/ARITY")))?;
        let arity = arity.trim().parse().map_err(|_| Error::input(format!("bad arity in {item:?}")))?;
        symbols.push((name.trim().to_string(), arity));
    }
    Signature::new(symbols)
}

/// Largest `k` with `xk` occurring in `text`.
fn max_var(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    for i in 0..b.len() {
        let starts = b[i] == b'x' && (i == 0 || !(b[i - 1].is_ascii_alphanumeric() || b[i - 1] == b'_'));
        if starts {
            let digits: String = text[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                best = best.max(k);
            }
        }
    }
    best
}

fn synth_table(doc: &DslDocument) -> Result<FunctorTable> {
    let source = doc.signature("Source").ok_or_else(|| Error::input("table needs a signature named Source"))?;
    let target = doc.signature("Target").ok_or_else(|| Error::input("table needs a signature named Target"))?;
    let mut entries = Vec::new();
    for (name, x) in doc.structures() {
        if let Some(k) = name.strip_prefix("in_") {
            let y = doc.structure(&format!("out_{k}")).ok_or_else(|| Error::input(format!("{name} has no out_{k}")))?;
            entries.push((x.clone(), y.clone()));
        }
    }
    FunctorTable::new(source, target, entries)
}

fn execute(cfg: &RunConfig, out: &mut Out<'_>) -> Result<i32> {
    match &cfg.command {
        Command::Decide { input, cert, all } => {
            let e = resolve_expression(&input.expr)?;
            let g = read_graph(&input.graph)?;
            let opts = cfg.solve_options()?;
            if *all {
                let p = compile(&e, &g)?;
                let (count, stats) = count_solutions_with(&p, u64::MAX, &opts)?;
                out.result(if count > 0 { "member" } else { "non-member" })?;
                out.line(format!("certificates={count}"))?;
                cfg.write_stats(out, &stats)?;
                return Ok(if count > 0 { EXIT_TRUE } else { EXIT_FALSE });
            }
            let (found, stats) = decide_with(&e, &g, &opts)?;
            let code = match found {
                Some(x) => {
                    out.result("member")?;
                    let text = certificate_text(e.carrier(), x.structure());
                    match cert {
                        Some(path) => {
                            std::fs::write(path, &text)?;
                            if out.machine {
                                out.line(format!("certificate={}", path.display()))?;
                            }
                        }
                        None => out.text(text)?,
                    }
                    EXIT_TRUE
                }
                None => {
                    out.result("non-member")?;
                    EXIT_FALSE
                }
            };
            cfg.write_stats(out, &stats)?;
            Ok(code)
        }
        Command::Verify { input, cert } => {
            let e = resolve_expression(&input.expr)?;
            let g = read_graph(&input.graph)?;
            let x = read_certificate(cert)?;
            match certificate_violation(&e, &g, &x)? {
                None => {
                    debug_assert!(crate::expressions::verify(&e, &g, &Certificate::new(x))?);
                    out.result("valid")?;
                    Ok(EXIT_TRUE)
                }
                Some(v) => {
                    out.result("invalid")?;
                    if out.machine {
                        out.line(format!("reason={v}"))?;
                    } else {
                        out.line(v.to_string())?;
                    }
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Bounds { expr, max_vertices } => {
            let e = resolve_expression(expr)?;
            let opts = cfg.solve_options()?;
            let pred = |g: &Structure| decide_with(&e, g, &opts).map(|r| r.0.is_some()).unwrap_or(false);
            let report = mine_bounds(&pred, &bases::graphs(), *max_vertices)?;
            for c in &report.per_size {
                out.line(format!("n={} graphs={} members={} bounds={}", c.n, c.ambient, c.members, c.bounds))?;
            }
            for b in &report.bounds {
                out.line(if out.machine { format!("bound={}", to_graph6(b)) } else { to_graph6(b) })?;
            }
            Ok(EXIT_TRUE)
        }
        Command::Equiv { f, g, signature, arity } => {
            let sig = parse_signature(signature)?;
            let k = arity.unwrap_or_else(|| max_var(f).max(max_var(g)));
            let phi = parse_formula(f, &sig, k)?;
            let psi = parse_formula(g, &sig, k)?;
            if logically_equivalent(&phi, &psi)? {
                out.result("equivalent")?;
                return Ok(EXIT_TRUE);
            }
            out.result("different")?;
            if let Some((w, t)) = distinguishing_model(&phi, &psi)? {
                let tuple: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                out.line(format!("at=({})", tuple.join(",")))?;
                out.text(certificate_text(&sig, &w).replace("certificate", "witness"))?;
            }
            Ok(EXIT_FALSE)
        }
        Command::Synth { table } => {
            let doc = parse(&std::fs::read_to_string(table)?)?;
            let t = synth_table(&doc)?;
            let d = synthesize_definition(&t)?;
            let decl = Decl::Definition {
                name: "Synthesized".to_string(),
                target: "Target".to_string(),
                carrier: "Source".to_string(),
                definition: d,
            };
            out.line(decl.to_string().trim_end())?;
            Ok(EXIT_TRUE)
        }
        Command::Snp { expr } => {
            let e = resolve_expression(expr)?;
            write!(out.w, "{}", render_snp(&e)?)?;
            Ok(EXIT_TRUE)
        }
        Command::Enumerate { expr, max_vertices, all } => {
            let e = resolve_expression(expr)?;
            let opts = cfg.solve_options()?;
            let mut total = SearchStats::default();
            let mut unknown = false;
            for n in 0..=*max_vertices {
                for g in enumerate_graphs(n, true)? {
                    let verdict = match decide_with(&e, &g, &opts) {
                        Ok((x, stats)) => {
                            total.nodes += stats.nodes;
                            if x.is_some() { "member" } else { "non-member" }
                        }
                        Err(Error::Timeout(stats)) => {
                            total.nodes += stats.nodes;
                            unknown = true;
                            "unknown"
                        }
                        Err(other) => return Err(other),
                    };
                    if *all {
                        out.line(format!("{} {verdict}", to_graph6(&g)))?;
                    } else if verdict == "member" {
                        out.line(to_graph6(&g))?;
                    }
                }
            }
            cfg.write_stats(out, &total)?;
            Ok(if unknown { EXIT_UNKNOWN } else { EXIT_TRUE })
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in catalog::list() {
                    let line = match catalog::builtin(&name) {
                        Ok(entry) => format!(
                            "{name}\t{}\t{}",
                            entry.recognizer.as_deref().unwrap_or("-"),
                            entry.provenance
                        ),
                        Err(_) => format!("{name}\t-\tparameterised"),
                    };
                    out.line(line)?;
                }
                Ok(EXIT_TRUE)
            }
            CatalogAction::Show { name } => {
                write!(out.w, "{}", catalog::show(name)?)?;
                Ok(EXIT_TRUE)
            }
        },
    }
}

/// Runs one command, writing results to `stdout` and diagnostics to
/// `stderr`. Returns the exit status.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut out = Out { w: stdout, machine: cfg.machine };
    match execute(cfg, &mut out) {
        Ok(code) => code,
        Err(Error::Timeout(stats)) => {
            let _ = out.result("unknown");
            let _ = cfg.write_stats(&mut out, &stats);
            let _ = writeln!(stderr, "search budget exhausted after {} nodes", stats.nodes);
            EXIT_UNKNOWN
        }
        Err(e @ Error::BlowUp { .. }) => {
            let _ = out.result("unknown");
            let _ = writeln!(stderr, "{e}");
            EXIT_UNKNOWN
        }
        // reader went away, e.g. `catalog list | head`
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_TRUE,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// Parses `args` (program name first) and runs. Usage errors exit 3.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, stdout, stderr),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                let _ = write!(stdout, "{}", e.render());
                EXIT_TRUE
            }
            _ => {
                let _ = write!(stderr, "{}", e.render());
                EXIT_INPUT
            }
        },
    }
}
