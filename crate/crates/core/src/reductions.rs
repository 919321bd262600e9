//! Source problems (3-colouring, edge 3-colouring, monotone NAE-3-SAT,
//! 1-in-3-SAT, 2-in-4-SAT), their brute-force oracles, and the compilers to
//! edge-labelling instances with certificate translation both ways.

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_graph};
use crate::gadgets::{attach_mode, clause_gadget, variable_gadget, Assembly};
use crate::graph::{EdgeLabelling, Graph, Params};
use crate::regime::{Regime, RegimeSpec, SourceKind};
use crate::solver::{SearchBudget, Solver};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Oracle size guard (variables, vertices or edges).
pub const BRUTE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColInstance {
    pub graph: Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnfKind {
    Nae3,
    OneIn3,
    TwoIn4,
}

impl CnfKind {
    pub fn width(self) -> usize {
        match self {
            CnfKind::Nae3 | CnfKind::OneIn3 => 3,
            CnfKind::TwoIn4 => 4,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            CnfKind::Nae3 => "nae3",
            CnfKind::OneIn3 => "1in3",
            CnfKind::TwoIn4 => "2in4",
        }
    }

    pub fn from_tag(s: &str) -> Option<CnfKind> {
        [CnfKind::Nae3, CnfKind::OneIn3, CnfKind::TwoIn4]
            .into_iter()
            .find(|k| k.tag() == s)
    }

    fn accepts(self, trues: usize) -> bool {
        match self {
            CnfKind::Nae3 => trues == 1 || trues == 2,
            CnfKind::OneIn3 => trues == 1,
            CnfKind::TwoIn4 => trues == 2,
        }
    }
}

/// Monotone formula; variables are 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    pub kind: CnfKind,
    pub variable_count: usize,
    pub clauses: Vec<Vec<usize>>,
}

impl CnfInstance {
    pub fn new(kind: CnfKind, variable_count: usize, clauses: Vec<Vec<usize>>) -> Result<Self> {
        if variable_count == 0 {
            return Err(Error::MalformedSource("no variables".into()));
        }
        for (j, c) in clauses.iter().enumerate() {
            if c.len() != kind.width() {
                return Err(Error::MalformedSource(format!(
                    "clause {} has {} literals, expected {}",
                    j + 1,
                    c.len(),
                    kind.width()
                )));
            }
            for (i, &v) in c.iter().enumerate() {
                if v >= variable_count {
                    return Err(Error::MalformedSource(format!(
                        "clause {}: variable {} out of range",
                        j + 1,
                        v + 1
                    )));
                }
                if c[..i].contains(&v) {
                    return Err(Error::MalformedSource(format!(
                        "clause {}: repeated variable {}",
                        j + 1,
                        v + 1
                    )));
                }
            }
        }
        Ok(CnfInstance {
            kind,
            variable_count,
            clauses,
        })
    }
}

impl fmt::Display for CnfInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "p {} {} {}",
            self.kind.tag(),
            self.variable_count,
            self.clauses.len()
        )?;
        for c in &self.clauses {
            let lits: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "{}", lits.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Edge 3-colouring of the graph itself.
    EdgeColouring(Graph),
    Colouring(ColInstance),
    Cnf(CnfInstance),
}

impl Source {
    pub fn kind(&self) -> SourceKind {
        match self {
            Source::EdgeColouring(_) => SourceKind::EdgeColouring,
            Source::Colouring(_) => SourceKind::Colouring,
            Source::Cnf(c) => match c.kind {
                CnfKind::Nae3 => SourceKind::Nae3,
                CnfKind::OneIn3 => SourceKind::OneIn3,
                CnfKind::TwoIn4 => SourceKind::TwoIn4,
            },
        }
    }

    /// Variables and clauses; a colouring instance has one variable per
    /// vertex and one two-literal clause per edge.
    fn clauses(&self) -> (usize, Vec<Vec<usize>>) {
        match self {
            Source::EdgeColouring(g) => (g.edge_count(), Vec::new()),
            Source::Colouring(c) => (
                c.graph.vertex_count(),
                c.graph.edges().iter().map(|&(u, v)| vec![u, v]).collect(),
            ),
            Source::Cnf(c) => (c.variable_count, c.clauses.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Colour in {0,1,2} per edge.
    EdgeColouring(Vec<u32>),
    /// Colour in {0,1,2} per vertex.
    Colouring(Vec<u32>),
    Assignment(Vec<bool>),
}

/// Whether `cert` solves `source`.
pub fn satisfies(source: &Source, cert: &Certificate) -> bool {
    match (source, cert) {
        (Source::EdgeColouring(g), Certificate::EdgeColouring(c)) => {
            c.len() == g.edge_count()
                && c.iter().all(|&x| x < 3)
                && g.adjacent_pairs().iter().all(|&(e, f)| c[e] != c[f])
        }
        (Source::Colouring(inst), Certificate::Colouring(c)) => {
            c.len() == inst.graph.vertex_count()
                && c.iter().all(|&x| x < 3)
                && inst.graph.edges().iter().all(|&(u, v)| c[u] != c[v])
        }
        (Source::Cnf(f), Certificate::Assignment(a)) => {
            a.len() == f.variable_count
                && f.clauses
                    .iter()
                    .all(|cl| f.kind.accepts(cl.iter().filter(|&&v| a[v]).count()))
        }
        _ => false,
    }
}

pub fn parse_col(text: &str) -> Result<ColInstance> {
    Ok(ColInstance {
        graph: parse_graph(text)?,
    })
}

/// `p <nae3|1in3|2in4> <nvars> <nclauses>` then one clause per line,
/// 1-based positive literals.
pub fn parse_cnf(text: &str) -> Result<CnfInstance> {
    let err = |line, msg: String| Error::Parse { line, msg };
    let mut header = None;
    let mut clauses = Vec::new();
    let mut last = 1;
    for (no, line) in content_lines(text) {
        last = no;
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok[0] == "p" {
            if header.is_some() {
                return Err(err(no, "second header".into()));
            }
            if tok.len() != 4 {
                return Err(err(no, "expected `p <kind> <nvars> <nclauses>`".into()));
            }
            let kind = CnfKind::from_tag(tok[1])
                .ok_or_else(|| err(no, format!("unknown kind {:?}", tok[1])))?;
            let nv: usize = tok[2]
                .parse()
                .map_err(|_| err(no, format!("bad variable count {:?}", tok[2])))?;
            let nc: usize = tok[3]
                .parse()
                .map_err(|_| err(no, format!("bad clause count {:?}", tok[3])))?;
            if nv == 0 {
                return Err(err(no, "variable count must be positive".into()));
            }
            header = Some((kind, nv, nc));
            continue;
        }
        let Some((kind, nv, _)) = header else {
            return Err(err(no, "clause before header".into()));
        };
        if tok.len() != kind.width() {
            return Err(err(
                no,
                format!("expected {} literals, found {}", kind.width(), tok.len()),
            ));
        }
        let mut clause = Vec::with_capacity(tok.len());
        for t in tok {
            let v: usize = t
                .parse()
                .map_err(|_| err(no, format!("bad literal {t:?}")))?;
            if v == 0 || v > nv {
                return Err(err(no, format!("variable {v} out of range 1..={nv}")));
            }
            if clause.contains(&(v - 1)) {
                return Err(err(no, format!("repeated variable {v}")));
            }
            clause.push(v - 1);
        }
        clauses.push(clause);
    }
    let Some((kind, nv, nc)) = header else {
        return Err(err(last, "missing `p` header".into()));
    };
    if clauses.len() != nc {
        return Err(err(
            last,
            format!("header promises {nc} clauses, found {}", clauses.len()),
        ));
    }
    CnfInstance::new(kind, nv, clauses)
}

/// Proper 3-colouring by backtracking over items in index order; `conflicts`
/// lists, per item, earlier items it must differ from.
fn three_colour(conflicts: &[Vec<usize>]) -> Option<Vec<u32>> {
    fn go(i: usize, conflicts: &[Vec<usize>], c: &mut Vec<u32>) -> bool {
        if i == conflicts.len() {
            return true;
        }
        for x in 0..3 {
            if conflicts[i].iter().all(|&j| c[j] != x) {
                c.push(x);
                if go(i + 1, conflicts, c) {
                    return true;
                }
                c.pop();
            }
        }
        false
    }
    let mut c = Vec::with_capacity(conflicts.len());
    go(0, conflicts, &mut c).then_some(c)
}

/// Exhaustive oracle; the first certificate in lexicographic order.
pub fn brute_source(source: &Source) -> Result<Option<Certificate>> {
    match source {
        Source::EdgeColouring(g) => {
            if g.edge_count() > BRUTE_LIMIT {
                return Err(Error::TooLarge(g.edge_count()));
            }
            let mut conflicts = vec![Vec::new(); g.edge_count()];
            for (e, f) in g.adjacent_pairs() {
                conflicts[f].push(e);
            }
            Ok(three_colour(&conflicts).map(Certificate::EdgeColouring))
        }
        Source::Colouring(inst) => {
            let g = &inst.graph;
            if g.vertex_count() > BRUTE_LIMIT {
                return Err(Error::TooLarge(g.vertex_count()));
            }
            let mut conflicts = vec![Vec::new(); g.vertex_count()];
            for &(u, v) in g.edges() {
                conflicts[v.max(u)].push(u.min(v));
            }
            Ok(three_colour(&conflicts).map(Certificate::Colouring))
        }
        Source::Cnf(f) => {
            let n = f.variable_count;
            if n > BRUTE_LIMIT {
                return Err(Error::TooLarge(n));
            }
            for bits in 0u32..(1 << n) {
                // variable 0 is the most significant position so the scan is lexicographic
                let a: Vec<bool> = (0..n).map(|v| bits >> (n - 1 - v) & 1 == 1).collect();
                let cert = Certificate::Assignment(a);
                if satisfies(source, &cert) {
                    return Ok(Some(cert));
                }
            }
            Ok(None)
        }
    }
}

/// Erdős–Rényi graph G(n, prob).
pub fn random_graph(n: usize, prob: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple by construction")
}

/// Clauses drawn uniformly without repeated variables.
pub fn random_cnf(
    kind: CnfKind,
    variable_count: usize,
    clause_count: usize,
    rng: &mut impl Rng,
) -> Result<CnfInstance> {
    if variable_count < kind.width() {
        return Err(Error::MalformedSource(format!(
            "{} needs at least {} variables",
            kind.tag(),
            kind.width()
        )));
    }
    let clauses = (0..clause_count)
        .map(|_| sample(rng, variable_count, kind.width()).into_vec())
        .collect();
    CnfInstance::new(kind, variable_count, clauses)
}

/// Deterministic generator for `random_graph` and `random_cnf`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Reads the source text a row reduces from: a graph for the colouring
/// rows, a clause file for the others.
pub fn parse_source(text: &str, spec: &RegimeSpec) -> Result<Source> {
    Ok(match spec.source() {
        SourceKind::EdgeColouring => Source::EdgeColouring(parse_graph(text)?),
        SourceKind::Colouring => Source::Colouring(parse_col(text)?),
        kind => {
            let f = parse_cnf(text)?;
            let source = Source::Cnf(f);
            if source.kind() != kind {
                return Err(kind_mismatch(&source, spec));
            }
            source
        }
    })
}

/// `v <vertex> <colour>` per vertex, `e <u> <v> <colour>` per edge, or one
/// `v` line of signed variables ending in 0 for an assignment; all 1-based.
pub fn write_certificate(source: &Source, cert: &Certificate) -> String {
    match (source, cert) {
        (Source::EdgeColouring(g), Certificate::EdgeColouring(c)) => g
            .edges()
            .iter()
            .zip(c)
            .map(|(&(u, v), x)| format!("e {} {} {x}\n", u + 1, v + 1))
            .collect(),
        (_, Certificate::Colouring(c)) => c
            .iter()
            .enumerate()
            .map(|(v, x)| format!("v {} {x}\n", v + 1))
            .collect(),
        (_, Certificate::Assignment(a)) => {
            let lits: Vec<String> = a
                .iter()
                .enumerate()
                .map(|(v, &t)| {
                    if t {
                        format!("{}", v + 1)
                    } else {
                        format!("-{}", v + 1)
                    }
                })
                .collect();
            format!("v {} 0\n", lits.join(" "))
        }
        (_, Certificate::EdgeColouring(c)) => c
            .iter()
            .enumerate()
            .map(|(e, x)| format!("e {e} {x}\n"))
            .collect(),
    }
}

/// A compiled instance with everything needed to translate certificates.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub params: Params,
    pub regime: RegimeSpec,
    pub source: Source,
    /// (variable, occurrence) -> port edge
    pub var_ports: BTreeMap<(usize, usize), usize>,
    /// clause -> hub vertex (the apex of the triangle for colouring clauses)
    pub clause_hubs: BTreeMap<usize, usize>,
    /// per clause, per literal: the (variable, occurrence) it consumed
    pub literal_ports: Vec<Vec<(usize, usize)>>,
    /// per variable: edges whose labels encode its value
    pub decode_edges: Vec<Vec<usize>>,
    /// per clause, per literal: the clause edge at the hub (2-in-4 only)
    pub branch_edges: Vec<Vec<usize>>,
}

fn kind_mismatch(source: &Source, spec: &RegimeSpec) -> Error {
    Error::MalformedSource(format!(
        "regime {} reduces from {:?}, got {:?}",
        spec.regime,
        spec.source(),
        source.kind()
    ))
}

/// Compiles `source` into an edge-labelling instance for `spec`.
pub fn reduce(source: &Source, spec: &RegimeSpec) -> Result<ReducedInstance> {
    spec.ensure_constructible()?;
    if source.kind() != spec.source() {
        return Err(kind_mismatch(source, spec));
    }
    if let Source::EdgeColouring(g) = source {
        return Ok(ReducedInstance {
            graph: g.clone(),
            params: spec.params(),
            regime: *spec,
            source: source.clone(),
            var_ports: BTreeMap::new(),
            clause_hubs: BTreeMap::new(),
            literal_ports: Vec::new(),
            decode_edges: (0..g.edge_count()).map(|e| vec![e]).collect(),
            branch_edges: Vec::new(),
        });
    }
    let (nv, clauses) = source.clauses();
    let mut occ = vec![0usize; nv];
    for c in &clauses {
        for &v in c {
            occ[v] += 1;
        }
    }
    let mut asm = Assembly::new();
    let mut by_size: BTreeMap<usize, _> = BTreeMap::new();
    for (v, &o) in occ.iter().enumerate() {
        let size = o.max(1);
        if !by_size.contains_key(&size) {
            by_size.insert(size, variable_gadget(spec, size)?);
        }
        asm.add(&by_size[&size], &format!("x{v}."));
    }
    let cg = clause_gadget(spec)?;
    let mode = attach_mode(spec.regime);
    let mut next = vec![0usize; nv];
    let mut clause_offsets = Vec::with_capacity(clauses.len());
    let mut literal_ports = Vec::with_capacity(clauses.len());
    for (j, c) in clauses.iter().enumerate() {
        clause_offsets.push(asm.add(&cg, &format!("c{j}.")));
        let mut lits = Vec::with_capacity(c.len());
        for (t, &v) in c.iter().enumerate() {
            let o = next[v];
            next[v] += 1;
            asm.join(&format!("x{v}.var[{o}]"), &format!("c{j}.lit[{t}]"), mode)?;
            lits.push((v, o));
        }
        literal_ports.push(lits);
    }
    let (gadget, map) = asm.finish_with_map()?;
    let mut var_ports = BTreeMap::new();
    let mut decode_edges = vec![Vec::new(); nv];
    for (v, &o) in occ.iter().enumerate() {
        for i in 0..o.max(1) {
            let e = gadget.port_edge(&format!("x{v}.var[{i}]"))?;
            if i < o {
                var_ports.insert((v, i), e);
            }
            if spec.regime != Regime::HalfToTwoThirds {
                decode_edges[v].push(e);
            }
        }
        if spec.regime == Regime::HalfToTwoThirds {
            decode_edges[v] = gadget
                .ports_with_prefix(&format!("x{v}.vertical["))
                .map(|(_, p)| p.edge.unwrap())
                .collect();
        }
    }
    let clause_hubs = (0..clauses.len())
        .map(|j| Ok((j, gadget.port(&format!("c{j}.hub"))?.anchor)))
        .collect::<Result<_>>()?;
    let branch_edges = if spec.regime == Regime::HalfToTwoThirds {
        clause_offsets
            .iter()
            .map(|&off| (0..4).map(|t| map[off + 4 * t]).collect())
            .collect()
    } else {
        Vec::new()
    };
    Ok(ReducedInstance {
        graph: gadget.graph,
        params: spec.params(),
        regime: *spec,
        source: source.clone(),
        var_ports,
        clause_hubs,
        literal_ports,
        decode_edges,
        branch_edges,
    })
}

/// Port labels (at the coprime pair) for one clause given its literal
/// values, in literal order.
fn clause_port_labels(spec: &RegimeSpec, values: &[bool]) -> Vec<u32> {
    let (a, b) = spec.reduced_pair();
    let (true_labels, false_labels): ([u32; 2], [u32; 2]) = match spec.regime {
        Regime::Beyond2 => {
            let n = spec.star_degree.unwrap();
            let top = (n - 1) * a + b;
            if values.iter().filter(|&&x| x).count() == 2 {
                ([0, a], [top, top])
            } else {
                ([0, 0], [(n - 2) * a + b, top])
            }
        }
        Regime::OneTo2 => {
            if values.iter().filter(|&&x| x).count() == 2 {
                ([0, a], [5 * a, 5 * a])
            } else {
                ([0, 0], [4 * a, 5 * a])
            }
        }
        Regime::EqTwoThirds => ([5, 5], [2, 9]),
        Regime::HalfToTwoThirds => ([0, 2 * b], [2 * b + a, 4 * b + a]),
        _ => unreachable!("colouring regimes label ports by colour"),
    };
    let (mut t, mut f) = (0, 0);
    values
        .iter()
        .map(|&x| {
            if x {
                t += 1;
                true_labels[t - 1]
            } else {
                f += 1;
                false_labels[f - 1]
            }
        })
        .collect()
}

/// The labels the forward direction pins before the solver completes the
/// rest; all at the coprime pair.
fn forward_pins(red: &ReducedInstance, cert: &Certificate) -> EdgeLabelling {
    let spec = &red.regime;
    let (a, b) = spec.reduced_pair();
    let mut fixed = EdgeLabelling::new();
    match cert {
        Certificate::EdgeColouring(_) => {}
        Certificate::Colouring(c) => {
            for (&(v, _), &e) in &red.var_ports {
                fixed.set(
                    e,
                    if spec.regime == Regime::PZeroQ {
                        c[v]
                    } else {
                        b + c[v] * a
                    },
                );
            }
        }
        Certificate::Assignment(val) => {
            for (j, lits) in red.literal_ports.iter().enumerate() {
                let values: Vec<bool> = lits.iter().map(|&(v, _)| val[v]).collect();
                let labels = clause_port_labels(spec, &values);
                for (t, (&port, &label)) in lits.iter().zip(&labels).enumerate() {
                    if spec.regime == Regime::HalfToTwoThirds {
                        fixed.set(red.branch_edges[j][t], label);
                    } else {
                        fixed.set(red.var_ports[&port], label);
                    }
                }
            }
            if spec.regime == Regime::HalfToTwoThirds {
                for (v, edges) in red.decode_edges.iter().enumerate() {
                    for &e in edges {
                        fixed.set(e, if val[v] { 0 } else { 4 * b + a });
                    }
                }
            }
        }
    }
    fixed
}

/// Builds a valid labelling of the reduced instance from a source
/// certificate.
pub fn forward_label(red: &ReducedInstance, cert: &Certificate) -> Result<EdgeLabelling> {
    forward_label_with_budget(red, cert, SearchBudget::unlimited())
}

pub fn forward_label_with_budget(
    red: &ReducedInstance,
    cert: &Certificate,
    budget: SearchBudget,
) -> Result<EdgeLabelling> {
    if !satisfies(&red.source, cert) {
        return Err(Error::NotACertificate(format!(
            "{cert:?} does not solve the source instance"
        )));
    }
    let d = red.regime.gcd;
    if let Certificate::EdgeColouring(c) = cert {
        return Ok(EdgeLabelling::from_total(c).scaled(d));
    }
    let pins = forward_pins(red, cert);
    let lab = Solver::new(&red.graph, red.regime.reduced_params())
        .with_budget(budget)
        .with_fixed(&pins)?
        .any_solution()?
        .ok_or_else(|| Error::NoCompletion(format!("{} pinned ports", pins.len())))?;
    Ok(lab.scaled(d))
}

/// Reads the value a variable's gadget encodes from one reduced label.
pub(crate) fn decode_label(spec: &RegimeSpec, x: u32) -> Option<u32> {
    let (a, b) = spec.reduced_pair();
    let truth = |t: bool| Some(t as u32);
    match spec.regime {
        Regime::QZeroP | Regime::PZeroQ => (x < 3).then_some(x),
        Regime::Beyond2 => {
            let n = spec.star_degree.unwrap();
            if x <= a {
                truth(true)
            } else if x >= (n - 2) * a + b {
                truth(false)
            } else {
                None
            }
        }
        Regime::OneTo2 => match x {
            _ if x <= a => truth(true),
            _ if x >= 4 * a => truth(false),
            _ => None,
        },
        Regime::TwoThirdsTo1 => (0..3).find(|&c| (b + c * a..=(c + 1) * a).contains(&x)),
        Regime::EqTwoThirds => match x {
            5 | 6 => truth(true),
            2 | 3 | 8 | 9 => truth(false),
            _ => None,
        },
        Regime::HalfToTwoThirds => match x {
            0 => truth(true),
            _ if x == 4 * b + a => truth(false),
            _ => None,
        },
        Regime::Eq1 | Regime::UpToHalf => None,
    }
}

/// Turns a valid labelling of the reduced instance back into a source
/// certificate.
pub fn back_map(red: &ReducedInstance, lab: &EdgeLabelling) -> Result<Certificate> {
    let total = lab
        .to_total(red.graph.edge_count())
        .map_err(|e| Error::NotALabelling(e.to_string()))?;
    let report = red
        .graph
        .check(&red.params, lab)
        .map_err(|e| Error::NotALabelling(e.to_string()))?;
    if let Some(v) = report.violations.first() {
        return Err(Error::NotALabelling(format!(
            "edges {} and {} are {} apart, need {}",
            v.e1, v.e2, v.actual, v.required
        )));
    }
    let d = red.regime.gcd;
    let mut values = Vec::with_capacity(red.decode_edges.len());
    for (v, edges) in red.decode_edges.iter().enumerate() {
        let mut seen = None;
        for &e in edges {
            let x = total[e] / d;
            let value = decode_label(&red.regime, x).ok_or_else(|| {
                Error::DecodingFailure(format!(
                    "variable {}: label {} on edge {e} is in no range",
                    v + 1,
                    total[e]
                ))
            })?;
            if seen.is_some_and(|s| s != value) {
                return Err(Error::DecodingFailure(format!(
                    "variable {}: ports disagree",
                    v + 1
                )));
            }
            seen = Some(value);
        }
        values.push(seen.unwrap_or(0));
    }
    let cert = match red.source {
        Source::EdgeColouring(_) => Certificate::EdgeColouring(values),
        Source::Colouring(_) => Certificate::Colouring(values),
        Source::Cnf(_) => Certificate::Assignment(values.into_iter().map(|x| x == 1).collect()),
    };
    if !satisfies(&red.source, &cert) {
        return Err(Error::DecodingFailure(format!(
            "decoded {cert:?} does not solve the source"
        )));
    }
    Ok(cert)
}
