use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use lpq_core::format::{
    parse_graph, parse_labelling, parse_params_line, write_graph, write_labelling,
    write_params_line,
};
use lpq_core::reductions::{
    self, back_map, parse_source, reduce, seeded_rng, write_certificate, CnfKind,
};
use lpq_core::solver::min_k;
use lpq_core::verify::{self, Evidence, Verdict};
use lpq_core::{dispatch, EdgeLabelling, Error, Graph, Params, Regime, SearchBudget, Solver};

#[derive(Parser)]
#[command(name = "lpq", version, about = "Exact tools for L(p,q)-edge-labelling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(short)]
    p: Option<u32>,
    #[arg(short)]
    q: Option<u32>,
    #[arg(short)]
    k: Option<u32>,
    /// File whose `l <p> <q> <k>` line supplies the parameters.
    #[arg(long)]
    params: Option<String>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_ms: Option<u64>,
}

#[derive(Args)]
struct Instance {
    #[arg(long)]
    graph: String,
    #[command(flatten)]
    params: ParamArgs,
    /// Pin an edge: `u,v=label` with 1-based vertices.
    #[arg(long = "fix")]
    fix: Vec<String>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a labelling file against a graph.
    Check {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        labelling: String,
        /// Override the parameters stored in the labelling.
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Lexicographically first valid labelling extending the fixed part.
    Solve {
        #[command(flatten)]
        instance: Instance,
        /// Accept any valid labelling, not necessarily the first.
        #[arg(long)]
        any: bool,
    },
    /// Every valid labelling, one line of labels in edge order each.
    Enumerate {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        limit: Option<usize>,
        /// Print only the number of labellings.
        #[arg(long)]
        count: bool,
    },
    /// Labels each target edge takes across all valid labellings.
    Project {
        #[command(flatten)]
        instance: Instance,
        /// Target edge `u,v`, 1-based.
        #[arg(long = "target", required = true)]
        targets: Vec<String>,
    },
    /// Smallest k admitting a labelling.
    MinK {
        #[arg(long)]
        graph: String,
        #[arg(short)]
        p: u32,
        #[arg(short)]
        q: u32,
        #[arg(long)]
        k_max: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compile a source instance into a labelling instance (graph on stdout).
    Reduce {
        #[arg(long)]
        source: String,
        #[arg(short)]
        p: u32,
        #[arg(short)]
        q: u32,
        /// Write the params line and variable ports here.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a labelling of a reduced instance back into a source certificate.
    BackMap {
        #[arg(long)]
        source: String,
        #[arg(short)]
        p: u32,
        #[arg(short)]
        q: u32,
        #[arg(long)]
        labelling: String,
    },
    /// Random source instance: `col` for graphs, or a clause kind.
    Gen {
        /// col | nae3 | 1in3 | 2in4
        kind: String,
        /// Vertices or variables.
        #[arg(short, long)]
        n: usize,
        /// Edge probability for graphs.
        #[arg(long, default_value_t = 0.5)]
        prob: f64,
        #[arg(long, default_value_t = 0)]
        clauses: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the lemma registry.
    VerifyLemmas {
        /// Row tag, e.g. eq23.
        #[arg(long)]
        regime: Option<String>,
        #[arg(long)]
        id: Option<String>,
        /// Directory for counterexample files of failed checks.
        #[arg(long)]
        counterexamples: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

type Outcome = Result<u8, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unknown => 3,
            Error::NotALabelling(_) | Error::DecodingFailure(_) | Error::NotACertificate(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| usage(format!("{path}: {e}")))?;
    Ok(text)
}

fn with_path<T>(path: &str, r: lpq_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.msg = format!("{path}: {}", f.msg);
        f
    })
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    with_path(path, parse_graph(&read(path)?))
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

impl ParamArgs {
    fn resolve(&self) -> Result<Params, Failure> {
        if let Some(path) = &self.params {
            let from_file = with_path(path, parse_params_line(&read(path)?))?;
            return Ok(Params {
                p: self.p.unwrap_or(from_file.p),
                q: self.q.unwrap_or(from_file.q),
                k: self.k.unwrap_or(from_file.k),
            });
        }
        match (self.p, self.q, self.k) {
            (Some(p), Some(q), Some(k)) => Ok(Params::new(p, q, k)?),
            _ => Err(usage("need -p, -q and -k (or --params FILE)")),
        }
    }

    fn given(&self) -> bool {
        self.params.is_some() || self.p.is_some() || self.q.is_some() || self.k.is_some()
    }
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            node_limit: self.budget_nodes,
            time_limit: self.budget_ms.map(Duration::from_millis),
        }
    }
}

fn edge_arg(g: &Graph, text: &str) -> Result<usize, Failure> {
    let bad = || {
        usage(format!(
            "expected `u,v` with 1-based vertices, got {text:?}"
        ))
    };
    let (u, v) = text.split_once(',').ok_or_else(bad)?;
    let (u, v): (usize, usize) = (
        u.trim().parse().map_err(|_| bad())?,
        v.trim().parse().map_err(|_| bad())?,
    );
    if u == 0 || v == 0 {
        return Err(bad());
    }
    g.find_edge(u - 1, v - 1)
        .ok_or_else(|| usage(format!("no edge {{{u}, {v}}} in the graph")))
}

fn fixed_part(g: &Graph, fixes: &[String]) -> Result<EdgeLabelling, Failure> {
    let mut fixed = EdgeLabelling::new();
    for f in fixes {
        let (edge, label) = f
            .split_once('=')
            .ok_or_else(|| usage(format!("expected `u,v=label`, got {f:?}")))?;
        let label = label
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad label in {f:?}")))?;
        fixed.set(edge_arg(g, edge)?, label);
    }
    Ok(fixed)
}

struct Loaded {
    graph: Graph,
    params: Params,
    fixed: EdgeLabelling,
    budget: SearchBudget,
}

impl Instance {
    fn load(&self) -> Result<Loaded, Failure> {
        let graph = load_graph(&self.graph)?;
        let params = self.params.resolve()?;
        let fixed = fixed_part(&graph, &self.fix)?;
        Ok(Loaded {
            graph,
            params,
            fixed,
            budget: self.budget.budget(),
        })
    }
}

impl Loaded {
    fn solver(&self) -> Result<Solver<'_>, Failure> {
        Ok(Solver::new(&self.graph, self.params)
            .with_budget(self.budget)
            .with_fixed(&self.fixed)?)
    }
}

fn labels_line(lab: &EdgeLabelling) -> String {
    lab.iter()
        .map(|(_, l)| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn check(graph: &str, labelling: &str, params: &ParamArgs) -> Outcome {
    let g = load_graph(graph)?;
    let (stored, lab) = with_path(labelling, parse_labelling(&g, &read(labelling)?))?;
    let params = if params.given() {
        params.resolve()?
    } else {
        stored
    };
    let report = match g.check(&params, &lab) {
        Ok(r) => r,
        Err(e @ (Error::Incomplete(_) | Error::LabelOutOfRange { .. })) => {
            println!("invalid: {e}");
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    if report.is_empty() {
        println!("valid");
        return Ok(0);
    }
    println!("invalid: {} violations", report.violations.len());
    for v in &report.violations {
        let ((a, b), (c, d)) = (g.edge(v.e1), g.edge(v.e2));
        let kind = match v.kind {
            lpq_core::Relation::Adjacent => "adjacent",
            lpq_core::Relation::MidLinked => "mid-linked",
        };
        println!(
            "{},{} {},{} {kind} gap {} < {}",
            a + 1,
            b + 1,
            c + 1,
            d + 1,
            v.actual,
            v.required
        );
    }
    Ok(1)
}

fn solve(instance: &Instance, any: bool) -> Outcome {
    let inst = instance.load()?;
    let mut s = inst.solver()?;
    let found = if any { s.any_solution()? } else { s.decide()? };
    Ok(match found {
        Some(lab) => {
            print!("{}", write_labelling(&inst.graph, &inst.params, &lab));
            0
        }
        None => {
            println!("none");
            1
        }
    })
}

fn enumerate(instance: &Instance, limit: Option<usize>, count: bool) -> Outcome {
    let inst = instance.load()?;
    let mut s = inst.solver()?;
    if count {
        let n = s.count()?;
        println!("{n}");
        return Ok(if n > 0 { 0 } else { 1 });
    }
    let all = s.enumerate(limit)?;
    let mut out = io::stdout().lock();
    for lab in &all {
        writeln!(out, "{}", labels_line(lab)).map_err(|e| usage(e.to_string()))?;
    }
    Ok(if all.is_empty() { 1 } else { 0 })
}

fn project(instance: &Instance, targets: &[String]) -> Outcome {
    let inst = instance.load()?;
    let edges = targets
        .iter()
        .map(|t| edge_arg(&inst.graph, t))
        .collect::<Result<Vec<_>, _>>()?;
    let table = inst.solver()?.project(&edges)?;
    for (t, &e) in targets.iter().zip(&edges) {
        let labels: Vec<String> = table[&e].iter().map(|l| l.to_string()).collect();
        println!("{}: {}", t.replace(' ', ""), labels.join(" "));
    }
    Ok(if table.values().all(|s| s.is_empty()) {
        1
    } else {
        0
    })
}

fn reduce_cmd(
    source: &str,
    p: u32,
    q: u32,
    manifest: Option<&PathBuf>,
    out: Option<&PathBuf>,
) -> Outcome {
    let spec = dispatch(p, q)?;
    let src = with_path(source, parse_source(&read(source)?, &spec))?;
    let red = reduce(&src, &spec)?;
    let graph = format!(
        "c params {} {} {}\n{}",
        red.params.p,
        red.params.q,
        red.params.k,
        write_graph(&red.graph)
    );
    write_out(out, &graph)?;
    if let Some(path) = manifest {
        let mut text = write_params_line(&red.params);
        for (&(v, o), &e) in &red.var_ports {
            text.push_str(&format!("port x{}.var[{o}] {e}\n", v + 1));
        }
        write_out(Some(path), &text)?;
    }
    Ok(0)
}

fn back_map_cmd(source: &str, p: u32, q: u32, labelling: &str) -> Outcome {
    let spec = dispatch(p, q)?;
    let src = with_path(source, parse_source(&read(source)?, &spec))?;
    let red = reduce(&src, &spec)?;
    let (params, lab) = with_path(labelling, parse_labelling(&red.graph, &read(labelling)?))?;
    if params != red.params {
        return Err(usage(format!(
            "{labelling}: labelling is for {params:?}, the reduction uses {:?}",
            red.params
        )));
    }
    match back_map(&red, &lab) {
        Ok(cert) => {
            print!("{}", write_certificate(&src, &cert));
            Ok(0)
        }
        Err(e) => {
            println!("{e}");
            Ok(1)
        }
    }
}

fn gen(kind: &str, n: usize, prob: f64, clauses: usize, seed: u64) -> Outcome {
    let mut rng = seeded_rng(seed);
    let text = if kind == "col" {
        if !(0.0..=1.0).contains(&prob) {
            return Err(usage(format!("probability {prob} outside [0, 1]")));
        }
        write_graph(&reductions::random_graph(n, prob, &mut rng))
    } else {
        let kind = CnfKind::from_tag(kind).ok_or_else(|| {
            usage(format!(
                "unknown kind {kind:?}; use col, nae3, 1in3 or 2in4"
            ))
        })?;
        reductions::random_cnf(kind, n, clauses, &mut rng)?.to_string()
    };
    print!("{text}");
    Ok(0)
}

fn save_evidence(dir: &PathBuf, id: &str, ev: &Evidence) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    match ev {
        Evidence::Labelling {
            graph,
            params,
            labelling,
        } => {
            write_out(Some(&dir.join(format!("{id}.col"))), &write_graph(graph))?;
            write_out(
                Some(&dir.join(format!("{id}.json"))),
                &write_labelling(graph, params, labelling),
            )
        }
        Evidence::Row(row) => write_out(Some(&dir.join(format!("{id}.txt"))), &format!("{row}\n")),
    }
}

fn verify_lemmas(regime: Option<&str>, id: Option<&str>, dir: Option<&PathBuf>) -> Outcome {
    let filter = regime
        .map(|tag| {
            Regime::from_tag(tag).ok_or_else(|| usage(format!("unknown regime tag {tag:?}")))
        })
        .transpose()?;
    let reports = match id {
        Some(id) => vec![verify::verify(id)?],
        None => verify::verify_all(filter),
    };
    let (mut fail, mut unknown) = (0, 0);
    for r in &reports {
        println!("{}", r.line());
        for line in r.detail.lines() {
            println!("  {line}");
        }
        match r.verdict {
            Verdict::Pass => {}
            Verdict::Fail => fail += 1,
            Verdict::Unknown => unknown += 1,
        }
        if let (Some(dir), Some(ev)) = (dir, &r.evidence) {
            save_evidence(dir, &r.id, ev)?;
        }
    }
    println!(
        "summary {} pass {fail} fail {unknown} unknown",
        reports.len() - fail - unknown
    );
    Ok(if fail > 0 {
        1
    } else if unknown > 0 {
        3
    } else {
        0
    })
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Check {
            graph,
            labelling,
            params,
        } => check(graph, labelling, params),
        Command::Solve { instance, any } => solve(instance, *any),
        Command::Enumerate {
            instance,
            limit,
            count,
        } => enumerate(instance, *limit, *count),
        Command::Project { instance, targets } => project(instance, targets),
        Command::MinK {
            graph,
            p,
            q,
            k_max,
            budget,
        } => {
            let g = load_graph(graph)?;
            Ok(match min_k(&g, *p, *q, *k_max, budget.budget())? {
                Some(k) => {
                    println!("{k}");
                    0
                }
                None => {
                    println!("none");
                    1
                }
            })
        }
        Command::Reduce {
            source,
            p,
            q,
            manifest,
            out,
        } => reduce_cmd(source, *p, *q, manifest.as_ref(), out.as_ref()),
        Command::BackMap {
            source,
            p,
            q,
            labelling,
        } => back_map_cmd(source, *p, *q, labelling),
        Command::Gen {
            kind,
            n,
            prob,
            clauses,
            seed,
        } => gen(kind, *n, *prob, *clauses, *seed),
        Command::VerifyLemmas {
            regime,
            id,
            counterexamples,
        } => verify_lemmas(regime.as_deref(), id.as_deref(), counterexamples.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("lpq: {}", f.msg);
            if f.code == 3 {
                println!("unknown");
            }
            ExitCode::from(f.code)
        }
    }
}
