//! Batch command-line front end.
//!
//! Every subcommand prints human-readable text on stdout and, with
//! `--report FILE`, writes a JSON report (see [`crate::report`]). Exit codes:
//! 0 on success, 1 on a domain error (including a failed verification), 2 on
//! a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::code::{hadamard12, repetition, LinearCode, UnrestrictedCode};
use crate::construct::{self, build_n6_split_family, split, split_merged, AUTO_VERIFY_MAX_N};
use crate::error::{Error, Result};
use crate::export::{export_instance, ExportFormat};
use crate::graph::{CubeGraph, CubeKind};
use crate::partition::Partition;
use crate::quotient::{check_admissibility, enumerate_admissible, recursion_table, spectrum, theta, QuotientMatrix};
use crate::report;
use crate::search::{classify, search, SearchOptions, SearchProblem};
use crate::verify::{verify_equitable, Equitability};
use crate::word::BinaryWord;

/// Largest n classified without `--allow-long`.
const CLASSIFY_DEFAULT_MAX_N: u32 = 8;

const FORMATS: &str = "\
File formats:
  partition  line 1: n=<n> kind=<full|halved-even|halved-odd> k=<cells>
             optional line 2: S=<a>,<b>;<c>,<d> (rows separated by ';')
             then one label per vertex, vertices in increasing numeric
             order of their words; digits when k <= 10 (64 per line),
             otherwise comma-separated integers
  code       line 1: n=<n>, then one binary word per line (first bit is
             the most significant)
  matrix     [[a,b],[c,d]] or a,b;c,d
  report     JSON object {schema: 1, command, ok, result | error}";

#[derive(Parser, Debug)]
#[command(name = "halfcube", version, about = "Equitable 2-partitions of halved hypercubes", after_long_help = FORMATS)]
struct Cli {
    /// Write a JSON report (schema 1) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Worker threads for search and verification.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues θ_0(n), …, θ_⌊n/2⌋(n) of ½H(n), comma-separated.
    Theta {
        #[arg(long)]
        n: u32,
    },
    /// Candidate matrices for one eigenvalue passing conditions 1-3.
    Enumerate {
        #[arg(long)]
        n: u32,
        /// Eigenvalue index i.
        #[arg(long)]
        eig: u32,
        /// Also drop matrices failing the recursion condition.
        #[arg(long)]
        cond4: bool,
        /// Keep minimum-eigenvalue matrices that are not images of H(n-1) matrices.
        #[arg(long)]
        no_thm2_filter: bool,
    },
    /// Check conditions 1-4 for one matrix.
    Filter(MatrixArgs),
    /// The distance-layer matrices S^(i) and the condition-4 verdict.
    Recursion {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        matrix: String,
    },
    /// Build a partition by one of the constructions.
    Construct(ConstructArgs),
    /// Check a partition file for equitability.
    Verify {
        #[arg(long, value_name = "FILE")]
        partition: PathBuf,
        /// Expected quotient matrix (overrides the file's S= line).
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Decide existence of a partition with the given matrix.
    Search {
        #[command(flatten)]
        target: MatrixArgs,
        #[command(flatten)]
        limits: LimitArgs,
        /// Enumerate solutions (up to symmetry) instead of stopping at one.
        #[arg(long)]
        all: bool,
        /// Solutions kept with --all.
        #[arg(long, default_value_t = 64)]
        max_solutions: usize,
        /// Pinned root vertex ordinal.
        #[arg(long, default_value_t = 0)]
        root: u64,
        /// Write the first solution as a partition file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Search every admissible matrix of ½H(n) or ½H(n)'.
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "halved-even")]
        kind: CubeKind,
        /// Also search minimum-eigenvalue matrices that are not images of
        /// H(n-1) matrices (these are known not to exist; proving it by
        /// search is slow).
        #[arg(long)]
        no_thm2_filter: bool,
        /// Permit n above 8.
        #[arg(long)]
        allow_long: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Codes from the catalog.
    Catalog {
        #[command(subcommand)]
        code: CatalogCommand,
    },
    /// Write the 0/1 instance (CPLEX LP) for an external solver.
    Export {
        #[command(flatten)]
        target: MatrixArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "halved-even")]
    kind: CubeKind,
    /// `[[a,b],[c,d]]` or `a,b;c,d`.
    #[arg(long)]
    matrix: String,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[arg(long)]
    limit_nodes: Option<u64>,
    #[arg(long)]
    limit_secs: Option<u64>,
    /// Disable orbital symmetry breaking.
    #[arg(long)]
    no_symmetry: bool,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// {0^n, 1^n}.
    Repetition {
        #[arg(long)]
        n: u32,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// The 24-word Hadamard code of length 12.
    Hadamard12 {
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Linear span of comma-separated generators.
    Span {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        words: Vec<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Kernel of comma-separated parity-check rows.
    Kernel {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        rows: Vec<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// H(n) partition file -> ½H(n) (or ½H(n)' with --parity odd).
    Restrict,
    /// ½H(n), n odd -> H(n).
    Lift,
    /// H(n-1) partition with eigenvalue -1 -> ½H(n); --inverse goes back.
    Thm2,
    /// (C, C^(2)) for an even radius-3 code.
    Radius3,
    /// (C^(1), C^(3)) for an even radius-4 code.
    Radius4,
    /// Radius-4 partition of the union of translates of a code.
    Translates,
    /// Kernel of parity-check rows (first row all-one) versus the rest.
    Linear,
    /// Union of cosets of a linear code.
    Cosets,
    /// (C0 ∪ P0, C1 ∩ P1) for two partition files.
    Union,
    /// Block-sum product with --t blocks.
    TimesT,
    /// Splitting construction; --family n6 --c C.
    Split,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    method: Method,
    /// Input partition file(s).
    #[arg(long, value_name = "FILE")]
    partition: Vec<PathBuf>,
    /// Input code file.
    #[arg(long, value_name = "FILE")]
    code: Option<PathBuf>,
    /// Catalog code instead of --code: repetition or hadamard12.
    #[arg(long)]
    catalog: Option<String>,
    /// Length for --catalog repetition.
    #[arg(long)]
    len: Option<u32>,
    /// Word length for --rows, --generators, --reps.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    translate: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    rows: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    generators: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    reps: Vec<String>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    c: Option<u32>,
    /// Keep the three-cell split instead of merging.
    #[arg(long)]
    three_cell: bool,
    #[arg(long)]
    inverse: bool,
    #[arg(long, default_value = "even")]
    parity: String,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Verify outputs on graphs with n above the automatic bound.
    #[arg(long)]
    verify_large: bool,
}

/// Text for stdout plus the report body.
struct Output {
    text: String,
    result: Value,
    /// Domain failure that still produced output (e.g. a non-equitable file).
    failed: Option<Error>,
}

impl Output {
    fn ok(text: String, result: Value) -> Self {
        Output { text, result, failed: None }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Theta { .. } => "theta",
        Command::Enumerate { .. } => "enumerate",
        Command::Filter(_) => "filter",
        Command::Recursion { .. } => "recursion",
        Command::Construct(_) => "construct",
        Command::Verify { .. } => "verify",
        Command::Search { .. } => "search",
        Command::Classify { .. } => "classify",
        Command::Catalog { .. } => "catalog",
        Command::Export { .. } => "export",
    }
}

/// Runs the front end on `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let name = command_name(&cli.command);
    if let Err(msg) = usage_check(&cli) {
        eprintln!("error: {msg}");
        return 2;
    }
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch_with_threads(&cli)))
        .unwrap_or_else(|_| Err(Error::Shape("internal error".into())));
    match outcome {
        Ok(out) => {
            print!("{}", out.text);
            let (report, code) = match &out.failed {
                None => (report::success(name, out.result), 0),
                Some(e) => {
                    eprintln!("error: {e}");
                    let mut r = report::failure(name, e);
                    r["result"] = out.result;
                    (r, 1)
                }
            };
            finish(cli.report.as_deref(), &report, code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            finish(cli.report.as_deref(), &report::failure(name, &e), 1)
        }
    }
}

/// Rejections that are the caller's mistake rather than a domain failure.
fn usage_check(cli: &Cli) -> std::result::Result<(), String> {
    check_output_path(cli.report.as_deref()).map_err(|e| e.to_string())?;
    if cli.threads == Some(0) {
        return Err("--threads must be positive".into());
    }
    if let Command::Classify { n, allow_long: false, .. } = cli.command {
        if n > CLASSIFY_DEFAULT_MAX_N {
            return Err(format!("classification above n = {CLASSIFY_DEFAULT_MAX_N} is long-running; pass --allow-long"));
        }
    }
    Ok(())
}

fn finish(path: Option<&Path>, report: &Value, code: i32) -> i32 {
    if let Some(p) = path {
        if let Err(e) = report::write(p, report) {
            eprintln!("error: cannot write report: {e}");
            return 1;
        }
    }
    code
}

fn dispatch_with_threads(cli: &Cli) -> Result<Output> {
    match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Shape(format!("thread pool: {e}")))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn check_output_path(path: Option<&Path>) -> Result<()> {
    if let Some(p) = path {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !parent.is_dir() {
            return Err(Error::Io(format!("directory {} does not exist", parent.display())));
        }
    }
    Ok(())
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_partition(path: &Path) -> Result<Partition> {
    Partition::parse_file(&read_text(path)?)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn words(list: &[String], n: u32) -> Result<Vec<BinaryWord>> {
    list.iter().map(|s| BinaryWord::parse(s.trim(), n)).collect()
}

fn graph_of(n: u32, kind: CubeKind) -> Result<CubeGraph> {
    CubeGraph::new(kind, n)
}

fn limits_to_options(l: &LimitArgs, threads: Option<usize>) -> SearchOptions {
    SearchOptions {
        symmetry: !l.no_symmetry,
        node_limit: l.limit_nodes,
        time_limit: l.limit_secs.map(Duration::from_secs),
        threads,
        ..Default::default()
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Theta { n } => cmd_theta(*n),
        Command::Enumerate { n, eig, cond4, no_thm2_filter } => cmd_enumerate(*n, *eig, *cond4, !no_thm2_filter),
        Command::Filter(m) => cmd_filter(m),
        Command::Recursion { n, matrix } => cmd_recursion(*n, matrix),
        Command::Construct(args) => cmd_construct(args),
        Command::Verify { partition, matrix } => cmd_verify(partition, matrix.as_deref()),
        Command::Search { target, limits, all, max_solutions, root, out } => {
            check_output_path(out.as_deref())?;
            let g = graph_of(target.n, target.kind)?;
            let s = QuotientMatrix::parse(&target.matrix)?;
            let mut opts = limits_to_options(limits, cli.threads);
            opts.find_all = *all;
            opts.max_solutions = *max_solutions;
            opts.root = *root;
            cmd_search(SearchProblem::with_options(g, s, opts)?, out.as_deref())
        }
        Command::Classify { n, kind, no_thm2_filter, limits, .. } => {
            cmd_classify(*n, *kind, !no_thm2_filter, &limits_to_options(limits, cli.threads))
        }
        Command::Catalog { code } => cmd_catalog(code),
        Command::Export { target, out } => {
            check_output_path(out.as_deref())?;
            let g = graph_of(target.n, target.kind)?;
            let p = SearchProblem::new(g, QuotientMatrix::parse(&target.matrix)?)?;
            let text = export_instance(&p, ExportFormat::CplexLp)?;
            let result = json!({ "format": "cplex-lp", "variables": g.vertex_count(), "rows": g.vertex_count() + 1 });
            match out {
                Some(path) => {
                    write_text(path, &text)?;
                    Ok(Output::ok(format!("wrote {} ({} binary variables)\n", path.display(), g.vertex_count()), result))
                }
                None => Ok(Output::ok(text, result)),
            }
        }
    }
}

fn cmd_theta(n: u32) -> Result<Output> {
    if n == 0 {
        return Err(Error::Shape("n must be positive".into()));
    }
    let pts = spectrum(n);
    let text = pts.iter().map(|p| p.value.to_string()).collect::<Vec<_>>().join(",") + "\n";
    Ok(Output::ok(text, json!({ "n": n, "values": pts })))
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_enumerate(n: u32, i: u32, cond4: bool, thm2: bool) -> Result<Output> {
    let th = theta(n, i)?;
    let list = enumerate_admissible(n, i, cond4, thm2)?;
    let mut text = format!("1/2H({n}) theta_{i} = {th}: {} candidates\n", list.len());
    for r in &list {
        let c4 = r.cond4_recursion.as_ref().expect("enumeration evaluates condition 4");
        let sizes = r.cell_sizes.map_or("-".to_string(), |(x, y)| format!("({x},{y})"));
        let mark = match c4.first_offending {
            None => "cond4 PASS".to_string(),
            Some(at) => format!("cond4 FAIL at S^({at})"),
        };
        let _ = writeln!(text, "{}  sizes {sizes}  {mark}", r.matrix);
    }
    Ok(Output::ok(text, json!({ "n": n, "i": i, "theta": th, "candidates": list })))
}

fn cmd_filter(m: &MatrixArgs) -> Result<Output> {
    let g = graph_of(m.n, m.kind)?;
    let s = QuotientMatrix::parse(&m.matrix)?;
    let r = check_admissibility(&s, g)?;
    let mut text = format!("{s} on {g}\n");
    for (name, v) in [
        ("condition 1 (integrality)", &r.cond1_integrality),
        ("condition 2 (proportion)", &r.cond2_proportion),
        ("condition 3 (eigenvalue)", &r.cond3_eigenvalue),
    ] {
        let _ = writeln!(text, "{name}: {} ({})", verdict(v.pass), v.detail);
    }
    if let Some(c4) = &r.cond4_recursion {
        let at = c4.first_offending.map_or(String::new(), |d| format!(" (first offending S^({d}))"));
        let _ = writeln!(text, "condition 4 (recursion): {}{at}", verdict(c4.pass));
    }
    if let Some((x, y)) = r.cell_sizes {
        let _ = writeln!(text, "cell sizes: {x}, {y}");
    }
    let _ = writeln!(text, "overall: {}", verdict(r.overall));
    Ok(Output::ok(text, serde_json::to_value(&r)?))
}

fn cmd_recursion(n: u32, matrix: &str) -> Result<Output> {
    let s = QuotientMatrix::parse(matrix)?;
    s.abcd()?;
    if n < 2 {
        return Err(Error::Shape("n must be at least 2".into()));
    }
    let t = recursion_table(&s, n);
    let mut text = String::new();
    for layer in &t.layers {
        let rows: Vec<String> = layer
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let flag = if layer.integral && layer.nonnegative { "" } else { "  <- not a nonnegative integer matrix" };
        let _ = writeln!(text, "S^({}) = [{}]{flag}", layer.distance, rows.join(","));
    }
    let tail = t.first_offending.map_or(String::new(), |d| format!(" (first offending S^({d}))"));
    let _ = writeln!(text, "condition 4: {}{tail}", verdict(t.cond4_pass()));
    Ok(Output::ok(text, serde_json::to_value(&t)?))
}

fn settle_large(p: Partition, verify_large: bool) -> Result<(Partition, &'static str)> {
    if p.graph().n() <= AUTO_VERIFY_MAX_N {
        return Ok((p, "verified"));
    }
    if verify_large {
        verify_equitable(&p)?.into_matrix()?;
        return Ok((p, "verified"));
    }
    Ok((p, "claimed, not verified (pass --verify-large)"))
}

fn load_code(args: &ConstructArgs) -> Result<UnrestrictedCode> {
    match (&args.code, args.catalog.as_deref()) {
        (Some(path), None) => UnrestrictedCode::parse_file(&read_text(path)?),
        (None, Some("hadamard12")) => Ok(hadamard12()),
        (None, Some("repetition")) => {
            repetition(args.len.ok_or_else(|| Error::Shape("--catalog repetition needs --len".into()))?)
        }
        (None, Some(other)) => Err(Error::Shape(format!("unknown catalog code {other:?}"))),
        _ => Err(Error::Shape("give exactly one of --code and --catalog".into())),
    }
}

fn one_partition(args: &ConstructArgs) -> Result<Partition> {
    match args.partition.as_slice() {
        [p] => read_partition(p),
        _ => Err(Error::Shape("this method takes exactly one --partition".into())),
    }
}

fn need_n(args: &ConstructArgs) -> Result<u32> {
    args.n.ok_or_else(|| Error::Shape("this method needs --n".into()))
}

fn cmd_construct(args: &ConstructArgs) -> Result<Output> {
    check_output_path(args.out.as_deref())?;
    let mut extra = json!({});
    let p = match args.method {
        Method::Restrict => {
            let r = construct::restrict_from_cube(&one_partition(args)?)?;
            match args.parity.as_str() {
                "even" => r.even,
                "odd" => r.odd,
                other => return Err(Error::Shape(format!("--parity must be even or odd, got {other:?}"))),
            }
        }
        Method::Lift => construct::odd_lift(&one_partition(args)?)?,
        Method::Thm2 => {
            let p = one_partition(args)?;
            if args.inverse {
                construct::thm2_transfer_inverse(&p)?
            } else {
                construct::thm2_transfer(&p)?
            }
        }
        Method::Radius3 => construct::radius3_partition(&load_code(args)?)?,
        Method::Radius4 => construct::radius4_partition(&load_code(args)?)?,
        Method::Translates => {
            let code = load_code(args)?;
            let mut codes = vec![code.clone()];
            for t in words(&args.translate, code.n())? {
                codes.push(code.translate(t)?);
            }
            construct::union_translates_radius4(&codes)?
        }
        Method::Linear => {
            let n = need_n(args)?;
            let lp = construct::linear_partition(n, &words(&args.rows, n)?)?;
            extra = json!({ "code_size": lp.code.size(), "pair_sums": lp.report, "equitable": lp.equitable });
            if !lp.equitable {
                let w = verify_equitable(&lp.partition)?;
                let Equitability::NotEquitable { witness } = w.verdict else { unreachable!("checked above") };
                return Err(Error::NotEquitable(witness));
            }
            lp.partition
        }
        Method::Cosets => {
            let n = need_n(args)?;
            let code = LinearCode::span(n, &words(&args.generators, n)?)?;
            construct::merge_cosets(&code, &words(&args.reps, n)?)?
        }
        Method::Union => match args.partition.as_slice() {
            [a, b] => construct::union_disjoint(&read_partition(a)?, &read_partition(b)?)?,
            _ => return Err(Error::Shape("union takes exactly two --partition files".into())),
        },
        Method::TimesT => {
            let p = one_partition(args)?;
            let t = args.t.ok_or_else(|| Error::Shape("times-t needs --t".into()))?;
            if p.graph().kind().is_halved() {
                construct::times_t_halved(&p, t)?
            } else {
                construct::times_t_cube(&p, t)?
            }
        }
        Method::Split => {
            match args.family.as_deref() {
                Some("n6") => {}
                Some(other) => return Err(Error::Shape(format!("unknown split family {other:?}"))),
                None => return Err(Error::Shape("split needs --family n6".into())),
            }
            let c = args.c.ok_or_else(|| Error::Shape("split needs --c".into()))?;
            let fp = build_n6_split_family(c)?;
            extra = json!({ "base": fp.partition().claimed(), "face_dimension": fp.s(), "faces": fp.faces().len() });
            if args.three_cell {
                split(&fp)?
            } else {
                split_merged(&fp)?
            }
        }
    };
    let (p, status) = settle_large(p, args.verify_large)?;
    let method = args.method.to_possible_value().expect("no skipped variants");
    let mut text = format!("method: {}\ngraph: {}\n", method.get_name(), p.graph());
    if let Some(s) = p.claimed() {
        let _ = writeln!(text, "matrix: {s}");
    }
    let sizes = p.cell_sizes().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(text, "cell sizes: {sizes}\nstatus: {status}");
    if let Some(path) = &args.out {
        write_text(path, &p.to_file_string())?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    let result = json!({
        "method": method.get_name(),
        "status": status,
        "partition": report::partition_json(&p),
        "details": extra,
    });
    Ok(Output::ok(text, result))
}

fn cmd_verify(path: &Path, matrix: Option<&str>) -> Result<Output> {
    let mut p = read_partition(path)?;
    if let Some(m) = matrix {
        p = p.with_claim(QuotientMatrix::parse(m)?);
    }
    let out = verify_equitable(&p)?;
    let mut text = format!("graph: {}\n", p.graph());
    let failed = match (&out.verdict, out.claim_matches) {
        (Equitability::NotEquitable { witness }, _) => {
            let _ = writeln!(text, "NOT equitable: {witness}");
            Some(Error::NotEquitable(witness.clone()))
        }
        (Equitability::Equitable { matrix }, Some(false)) => {
            let claimed = out.claimed.as_ref().expect("claim present");
            let _ = writeln!(text, "equitable with {matrix}, but the claim was {claimed}");
            Some(Error::ClaimMismatch { claimed: claimed.to_string(), verified: matrix.to_string() })
        }
        (Equitability::Equitable { matrix }, matches) => {
            let _ = writeln!(text, "equitable: {matrix}");
            if matches == Some(true) {
                text.push_str("claim: matches\n");
            }
            None
        }
    };
    Ok(Output { text, result: serde_json::to_value(&out)?, failed })
}

fn cmd_search(problem: SearchProblem, out: Option<&Path>) -> Result<Output> {
    let o = search(&problem)?;
    let mut text = format!("graph: {}\nmatrix: {}\nstatus: {}\n", o.graph, o.matrix, o.status.label());
    match &o.status {
        crate::search::SearchStatus::PreFilteredNonexistent { reason } => {
            let _ = writeln!(text, "reason: {reason}");
        }
        crate::search::SearchStatus::Aborted { limit } => {
            let _ = writeln!(text, "limit: {limit}");
        }
        _ => {}
    }
    let st = &o.stats;
    let _ = writeln!(
        text,
        "symmetry: {}\nnodes: {}\nprunes: count {}, cardinality {}\nforced labels: {}\nsubproblems: {}\nsolutions: {}",
        if o.symmetry { "coordinate-permutation orbits" } else { "none" },
        st.nodes,
        st.count_prunes,
        st.cardinality_prunes,
        st.forced,
        st.subproblems,
        st.solutions
    );
    if let Some(p) = &o.partition {
        let _ = writeln!(text, "cell 0: {} vertices", p.cell_sizes()[0]);
        if let Some(path) = out {
            write_text(path, &p.to_file_string())?;
            let _ = writeln!(text, "wrote {}", path.display());
        }
    }
    Ok(Output::ok(text, report::outcome_json(&o)))
}

fn cmd_classify(n: u32, kind: CubeKind, thm2: bool, opts: &SearchOptions) -> Result<Output> {
    let c = classify(n, kind, thm2, opts)?;
    let g = graph_of(n, kind)?;
    let mut text = format!("classification of {g}: {} admissible matrices\n", c.rows.len());
    for r in &c.rows {
        let _ = writeln!(
            text,
            "theta_{} = {:>4}  {:<22} {}  {}",
            r.eigen_index,
            r.eigenvalue,
            r.matrix.to_string(),
            r.outcome.status.mark(),
            r.outcome.status.label()
        );
    }
    Ok(Output::ok(text, report::classification_json(&c)))
}

fn code_summary(code: &UnrestrictedCode, out: Option<&Path>) -> Result<Output> {
    check_output_path(out)?;
    let mut text = format!("n = {}, {} words\n", code.n(), code.len());
    let radius = if code.n() <= 24 { Some(code.covering_radius()?) } else { None };
    let _ = writeln!(
        text,
        "minimum distance: {}\ncovering radius: {}\neven: {}",
        code.min_distance().map_or("-".into(), |d| d.to_string()),
        radius.map_or("-".into(), |r| r.to_string()),
        code.is_even()
    );
    for w in code.words() {
        let _ = writeln!(text, "{w}");
    }
    if let Some(path) = out {
        write_text(path, &code.to_file_string())?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    let result = json!({
        "n": code.n(),
        "size": code.len(),
        "min_distance": code.min_distance(),
        "covering_radius": radius,
        "even": code.is_even(),
        "words": code.words().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, result))
}

fn cmd_catalog(c: &CatalogCommand) -> Result<Output> {
    match c {
        CatalogCommand::Repetition { n, out } => code_summary(&repetition(*n)?, out.as_deref()),
        CatalogCommand::Hadamard12 { out } => code_summary(&hadamard12(), out.as_deref()),
        CatalogCommand::Span { n, words: w, out } => {
            code_summary(&LinearCode::span(*n, &words(w, *n)?)?.to_unrestricted(), out.as_deref())
        }
        CatalogCommand::Kernel { n, rows, out } => {
            code_summary(&LinearCode::kernel(*n, &words(rows, *n)?)?.to_unrestricted(), out.as_deref())
        }
    }
}
