//! Gadget lemmas re-derived by exhaustive search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gadgets::{extended_star, variable_gadget, Gadget};
use crate::graph::{EdgeLabelling, Graph, Params};
use crate::reductions::{decode_label, reduce, CnfInstance, CnfKind, ColInstance, Source};
use crate::regime::{dispatch, Regime, RegimeSpec};
use crate::solver::{ProjectionTable, SearchBudget, Solver};

/// Node budget of one check.
pub const NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Enumerate,
    Projection,
    MinK,
    Infeasibility,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unknown => "unknown",
        })
    }
}

/// What a failed check points at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Labelling {
        graph: Graph,
        params: Params,
        labelling: EdgeLabelling,
    },
    Row(String),
}

enum Outcome {
    Pass(String),
    Fail(String, Evidence),
}

pub struct LemmaCheck {
    pub id: &'static str,
    /// `None` for checks that concern every row.
    pub regime: Option<Regime>,
    pub params: Params,
    pub method: Method,
    pub expectation: &'static str,
    run: fn(&mut Ctx) -> Result<Outcome>,
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub id: String,
    pub verdict: Verdict,
    /// Witness on a pass, explanation on a failure.
    pub detail: String,
    pub evidence: Option<Evidence>,
    pub nodes: u64,
    pub millis: u128,
}

impl LemmaReport {
    /// `<id> <verdict> <nodes> <millis>`
    pub fn line(&self) -> String {
        format!(
            "{} {} {} {}",
            self.id, self.verdict, self.nodes, self.millis
        )
    }
}

/// Node accounting shared by the solver calls of one check.
struct Ctx {
    nodes: u64,
}

impl Ctx {
    fn solver<'g>(
        &self,
        g: &'g Graph,
        params: Params,
        fixed: &EdgeLabelling,
    ) -> Result<Solver<'g>> {
        Solver::new(g, params)
            .with_budget(SearchBudget::nodes(NODE_BUDGET.saturating_sub(self.nodes)))
            .with_fixed(fixed)
    }

    fn tally<T>(
        &mut self,
        mut s: Solver<'_>,
        f: impl FnOnce(&mut Solver<'_>) -> Result<T>,
    ) -> Result<T> {
        let r = f(&mut s);
        self.nodes += s.nodes();
        r
    }

    fn decide(
        &mut self,
        g: &Graph,
        params: Params,
        fixed: &EdgeLabelling,
    ) -> Result<Option<EdgeLabelling>> {
        match self.solver(g, params, fixed) {
            Ok(s) => self.tally(s, |s| s.decide()),
            Err(Error::InfeasiblePrefix(..)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn project(
        &mut self,
        g: &Graph,
        params: Params,
        fixed: &EdgeLabelling,
        targets: &[usize],
    ) -> Result<ProjectionTable> {
        match self.solver(g, params, fixed) {
            Ok(s) => self.tally(s, |s| s.project(targets)),
            Err(Error::InfeasiblePrefix(..)) => {
                Ok(targets.iter().map(|&t| (t, BTreeSet::new())).collect())
            }
            Err(e) => Err(e),
        }
    }

    /// First labelling (lexicographically) failing `ok`.
    fn find_bad(
        &mut self,
        g: &Graph,
        params: Params,
        ok: impl Fn(&[u32]) -> bool,
    ) -> Result<(u64, Option<Vec<u32>>)> {
        let s = self.solver(g, params, &EdgeLabelling::new())?;
        let mut seen = 0;
        let mut bad = None;
        self.tally(s, |s| {
            s.for_each(|labels| {
                seen += 1;
                if ok(labels) {
                    ControlFlow::Continue(())
                } else {
                    bad = Some(labels.to_vec());
                    ControlFlow::Break(())
                }
            })
        })?;
        Ok((seen, bad))
    }
}

fn star_params(p: u32, q: u32, k: u32) -> Params {
    Params { p, q, k }
}

fn edges_with_prefix(g: &Gadget, prefix: &str) -> Vec<usize> {
    let mut named: Vec<(usize, usize)> = g
        .ports_with_prefix(prefix)
        .map(|(name, port)| {
            let i = name[prefix.len()..name.len() - 1]
                .parse()
                .expect("indexed port");
            (i, port.edge.expect("edge port"))
        })
        .collect();
    named.sort();
    named.into_iter().map(|(_, e)| e).collect()
}

fn labelling(graph: &Graph, params: Params, labelling: EdgeLabelling) -> Evidence {
    Evidence::Labelling {
        graph: graph.clone(),
        params,
        labelling,
    }
}

fn set_text(s: &BTreeSet<u32>) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Every labelling puts all `ports` into one class of `class_of`.
/// Projects the first port, then pins it to each of its labels in turn
/// and projects the rest.
fn one_class(
    ctx: &mut Ctx,
    g: &Graph,
    params: Params,
    ports: &[usize],
    class_of: impl Fn(u32) -> Option<u32>,
) -> Result<std::result::Result<BTreeMap<u32, BTreeSet<u32>>, (String, Evidence)>> {
    let first = ports[0];
    let seen = ctx
        .project(g, params, &EdgeLabelling::new(), &[first])?
        .remove(&first)
        .unwrap();
    let mut classes: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for &x in &seen {
        let pin = EdgeLabelling::new().with(first, x);
        let Some(cx) = class_of(x) else {
            let lab = ctx
                .decide(g, params, &pin)?
                .expect("projected label extends");
            return Ok(Err((
                format!("port label {x} is in no class"),
                labelling(g, params, lab),
            )));
        };
        classes.entry(cx).or_default().insert(x);
        let table = ctx.project(g, params, &pin, &ports[1..])?;
        for (&e, labels) in &table {
            if let Some(&y) = labels.iter().find(|&&y| class_of(y) != Some(cx)) {
                let lab = ctx
                    .decide(g, params, &pin.clone().with(e, y))?
                    .expect("projected pair extends");
                return Ok(Err((
                    format!("ports carry {x} and {y} from different classes"),
                    labelling(g, params, lab),
                )));
            }
            classes.get_mut(&cx).unwrap().extend(labels);
        }
    }
    Ok(Ok(classes))
}

fn classes_text(classes: &BTreeMap<u32, BTreeSet<u32>>) -> String {
    classes
        .iter()
        .map(|(c, s)| format!("{c}:{}", set_text(s)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Labels (at the coprime pair) that decode to `value`.
fn decode_set(spec: &RegimeSpec, value: u32) -> Vec<u32> {
    (0..spec.reduced_params().k)
        .filter(|&x| decode_label(spec, x) == Some(value))
        .collect()
}

fn spec(p: u32, q: u32) -> RegimeSpec {
    dispatch(p, q).expect("registry params are constructible")
}

fn pass_or(result: std::result::Result<String, (String, Evidence)>) -> Outcome {
    match result {
        Ok(w) => Outcome::Pass(w),
        Err((why, ev)) => Outcome::Fail(why, ev),
    }
}

/// Enumerates every labelling and applies `ok`.
fn every_labelling(
    ctx: &mut Ctx,
    g: &Graph,
    params: Params,
    what: &str,
    ok: impl Fn(&[u32]) -> bool,
) -> Result<Outcome> {
    let (seen, bad) = ctx.find_bad(g, params, ok)?;
    Ok(match bad {
        None if seen == 0 => Outcome::Fail(
            format!("no labelling at all, so {what} is vacuous"),
            Evidence::Row(format!("{params:?}")),
        ),
        None => Outcome::Pass(format!("{seen} labellings, {what}")),
        Some(l) => Outcome::Fail(
            format!("labelling violates: {what}"),
            labelling(g, params, EdgeLabelling::from_total(&l)),
        ),
    })
}

/// Variable gadgets of each size keep their ports in one class, and
/// exactly `classes` classes occur. With `any_choice`, every way of picking
/// port labels inside one class must also extend.
fn variable_classes(
    ctx: &mut Ctx,
    spec: &RegimeSpec,
    sizes: std::ops::RangeInclusive<usize>,
    prefix: &str,
    classes: usize,
    any_choice: bool,
) -> Result<Outcome> {
    let params = spec.reduced_params();
    let mut witness = Vec::new();
    for occ in sizes {
        let g = variable_gadget(spec, occ)?;
        let ports = edges_with_prefix(&g, prefix);
        let found = match one_class(ctx, &g.graph, params, &ports, |x| decode_label(spec, x))? {
            Err((why, ev)) => return Ok(Outcome::Fail(format!("{occ} occurrences: {why}"), ev)),
            Ok(found) => found,
        };
        if found.len() != classes {
            return Ok(Outcome::Fail(
                format!(
                    "{occ} occurrences: {} classes, expected {classes}",
                    found.len()
                ),
                Evidence::Row(classes_text(&found)),
            ));
        }
        witness.push(format!("{occ}: {}", classes_text(&found)));
        if !any_choice {
            continue;
        }
        for class in found.values() {
            let class: Vec<u32> = class.iter().copied().collect();
            for code in 0..class.len().pow(occ as u32) {
                let pin: EdgeLabelling = ports
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| {
                        (
                            e,
                            class[code / class.len().pow((occ - 1 - i) as u32) % class.len()],
                        )
                    })
                    .collect();
                if ctx.decide(&g.graph, params, &pin)?.is_none() {
                    let row: Vec<String> = ports
                        .iter()
                        .map(|&e| pin.get(e).unwrap().to_string())
                        .collect();
                    return Ok(Outcome::Fail(
                        format!(
                            "{} held, but port labels {} from one class do not extend",
                            witness.join("; "),
                            row.join(" ")
                        ),
                        Evidence::Row(row.join(" ")),
                    ));
                }
            }
        }
    }
    if any_choice {
        witness.push("every port choice within a class extends".into());
    }
    Ok(Outcome::Pass(witness.join("; ")))
}

/// The clause gadget with one single-occurrence variable gadget per literal:
/// satisfiable with the variables held in given classes exactly when those
/// values satisfy the clause.
fn clause_in_context(ctx: &mut Ctx, spec: &RegimeSpec) -> Result<Outcome> {
    let (source, arity, values): (Source, usize, u32) = match spec.regime {
        Regime::PZeroQ | Regime::TwoThirdsTo1 => (
            Source::Colouring(ColInstance {
                graph: Graph::new(2, [(0, 1)])?,
            }),
            2,
            3,
        ),
        r => {
            let kind = match r {
                Regime::Beyond2 | Regime::OneTo2 => CnfKind::Nae3,
                Regime::EqTwoThirds => CnfKind::OneIn3,
                _ => CnfKind::TwoIn4,
            };
            let w = kind.width();
            (
                Source::Cnf(CnfInstance::new(kind, w, vec![(0..w).collect()])?),
                w,
                2,
            )
        }
    };
    let red = reduce(&source, spec)?;
    let params = spec.reduced_params();
    let mut accepted = Vec::new();
    for code in 0..values.pow(arity as u32) {
        let pattern: Vec<u32> = (0..arity)
            .map(|v| code / values.pow((arity - 1 - v) as u32) % values)
            .collect();
        let mut s = ctx.solver(&red.graph, params, &EdgeLabelling::new())?;
        for (v, edges) in red.decode_edges.iter().enumerate() {
            let allowed = decode_set(spec, pattern[v]);
            for &e in edges {
                s.restrict(e, &allowed);
            }
        }
        let sat = ctx.tally(s, |s| s.satisfiable())?;
        let cert = match &source {
            Source::Colouring(_) => crate::reductions::Certificate::Colouring(pattern.clone()),
            _ => crate::reductions::Certificate::Assignment(
                pattern.iter().map(|&x| x == 1).collect(),
            ),
        };
        let want = crate::reductions::satisfies(&source, &cert);
        let row: String = pattern.iter().map(|x| x.to_string()).collect();
        if sat != want {
            let why = if sat {
                "labelling exists for a rejected pattern"
            } else {
                "no labelling for an accepted pattern"
            };
            return Ok(Outcome::Fail(why.into(), Evidence::Row(row)));
        }
        if sat {
            accepted.push(row);
        }
    }
    Ok(Outcome::Pass(format!(
        "labellable exactly for {}",
        accepted.join(" ")
    )))
}

fn s3_variable_equal_pendants(ctx: &mut Ctx) -> Result<Outcome> {
    let spec = spec(0, 1);
    let g = variable_gadget(&spec, 3)?;
    let ports = edges_with_prefix(&g, "var[");
    every_labelling(ctx, &g.graph, spec.params(), "pendants equal", |l| {
        ports.iter().all(|&e| l[e] == l[ports[0]])
    })
}

fn s3_clause_distinct(ctx: &mut Ctx) -> Result<Outcome> {
    let spec = spec(0, 1);
    let g = crate::gadgets::clause_gadget(&spec)?;
    let ports = edges_with_prefix(&g, "lit[");
    every_labelling(ctx, &g.graph, spec.params(), "pendants distinct", |l| {
        l[ports[0]] != l[ports[1]]
    })
}

fn s4_star_regimes(ctx: &mut Ctx) -> Result<Outcome> {
    let spec = spec(1, 3);
    let g = extended_star(6)?;
    let ports = edges_with_prefix(&g, "pendant[");
    Ok(pass_or(
        one_class(ctx, &g.graph, spec.params(), &ports, |x| {
            decode_label(&spec, x)
        })?
        .map(|c| classes_text(&c)),
    ))
}

fn s4_variable_two_classes(ctx: &mut Ctx) -> Result<Outcome> {
    variable_classes(ctx, &spec(1, 3), 1..=3, "var[", 2, true)
}

fn s4_clause(ctx: &mut Ctx) -> Result<Outcome> {
    clause_in_context(ctx, &spec(1, 3))
}

fn s5_pendant_force(ctx: &mut Ctx) -> Result<Outcome> {
    let params = star_params(2, 3, 11);
    let g = extended_star(4)?;
    let ports = edges_with_prefix(&g, "pendant[");
    let mut witness = Vec::new();
    for (x, range) in [(0, 0..=2), (10, 8..=10)] {
        let pin = EdgeLabelling::new().with(ports[0], x);
        let table = ctx.project(&g.graph, params, &pin, &ports[1..])?;
        for (&e, labels) in &table {
            if let Some(&y) = labels.iter().find(|&&y| !range.contains(&y)) {
                let lab = ctx
                    .decide(&g.graph, params, &pin.clone().with(e, y))?
                    .expect("projected label extends");
                return Ok(Outcome::Fail(
                    format!("pendant {x} allows {y}"),
                    labelling(&g.graph, params, lab),
                ));
            }
        }
        let union: BTreeSet<u32> = table.values().flatten().copied().collect();
        witness.push(format!("{x}:{}", set_text(&union)));
    }
    Ok(Outcome::Pass(witness.join(" ")))
}

fn s5_forcer(ctx: &mut Ctx) -> Result<Outcome> {
    let params = star_params(2, 3, 11);
    // 5-star on centre 0 with leaves 1..=5, and edge 5 hanging off leaf 1
    let g = Graph::new(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 6)])?;
    let got = ctx
        .project(&g, params, &EdgeLabelling::new(), &[5])?
        .remove(&5)
        .unwrap();
    let want: BTreeSet<u32> = [0, 10].into();
    Ok(if got == want {
        Outcome::Pass(format!("added edge takes {}", set_text(&got)))
    } else {
        Outcome::Fail(
            "added edge projects elsewhere".into(),
            Evidence::Row(set_text(&got)),
        )
    })
}

fn s5_variable_two_classes(ctx: &mut Ctx) -> Result<Outcome> {
    variable_classes(ctx, &spec(2, 3), 1..=3, "var[", 2, true)
}

fn s5_clause(ctx: &mut Ctx) -> Result<Outcome> {
    clause_in_context(ctx, &spec(2, 3))
}

fn s6_three_regimes(ctx: &mut Ctx) -> Result<Outcome> {
    let (a, b) = (4, 3);
    let g = extended_star(4)?;
    let inner = edges_with_prefix(&g, "inner[");
    let pendants = edges_with_prefix(&g, "pendant[");
    let cases: [([u32; 4], std::ops::RangeInclusive<u32>); 3] = [
        ([0, a + b, 2 * a + b, 3 * a + b], b..=a),
        ([0, a, 2 * a + b, 3 * a + b], a + b..=2 * a),
        ([0, a, 2 * a, 3 * a + b], 2 * a + b..=3 * a),
    ];
    every_labelling(
        ctx,
        &g.graph,
        star_params(a, b, 3 * a + b + 1),
        "inner edges and pendants match one case",
        |l| {
            let mut quad: Vec<u32> = inner.iter().map(|&e| l[e]).collect();
            quad.sort();
            cases
                .iter()
                .any(|(q, range)| quad == q && pendants.iter().all(|&e| range.contains(&l[e])))
        },
    )
}

fn s6_variable_three_classes(ctx: &mut Ctx) -> Result<Outcome> {
    variable_classes(ctx, &spec(4, 3), 1..=3, "var[", 3, true)
}

fn s6_clause(ctx: &mut Ctx) -> Result<Outcome> {
    clause_in_context(ctx, &spec(4, 3))
}

/// Labels the other three pendants of an extended 4-star at (3,2,12) can
/// take once one pendant is fixed.
pub const DICTIONARY: [(u32, &[u32]); 6] = [
    (2, &[2, 3, 9]),
    (3, &[2, 3]),
    (5, &[5, 6]),
    (6, &[5, 6]),
    (8, &[8, 9]),
    (9, &[2, 8, 9]),
];

fn s7_dictionary(ctx: &mut Ctx) -> Result<Outcome> {
    let params = star_params(3, 2, 12);
    let g = extended_star(4)?;
    let ports = edges_with_prefix(&g, "pendant[");
    let mut rows = Vec::new();
    for x in 0..params.k {
        let table = ctx.project(
            &g.graph,
            params,
            &EdgeLabelling::new().with(ports[0], x),
            &ports[1..],
        )?;
        let want: BTreeSet<u32> = DICTIONARY
            .iter()
            .find(|r| r.0 == x)
            .map(|r| r.1.iter().copied().collect())
            .unwrap_or_default();
        for labels in table.values() {
            if *labels != want {
                return Ok(Outcome::Fail(
                    format!("row {x} differs from {}", set_text(&want)),
                    Evidence::Row(format!("{x}:{}", set_text(labels))),
                ));
            }
        }
        if !want.is_empty() {
            rows.push(format!("{x}:{}", set_text(&want)));
        }
    }
    Ok(Outcome::Pass(rows.join("\n")))
}

fn s7_variable_two_classes(ctx: &mut Ctx) -> Result<Outcome> {
    variable_classes(ctx, &spec(3, 2), 1..=3, "var[", 2, true)
}

fn s7_clause(ctx: &mut Ctx) -> Result<Outcome> {
    clause_in_context(ctx, &spec(3, 2))
}

fn sorted_inner(inner: &[usize], l: &[u32]) -> Vec<u32> {
    let mut quad: Vec<u32> = inner.iter().map(|&e| l[e]).collect();
    quad.sort();
    quad
}

fn s8_inner_gaps(ctx: &mut Ctx) -> Result<Outcome> {
    let (a, b) = (5, 3);
    let g = extended_star(4)?;
    let inner = edges_with_prefix(&g, "inner[");
    let mut witness = Vec::new();
    let mut total = 0;
    // every k with k - 1 < 3a + b
    for k in 1..=3 * a + b {
        let params = star_params(a, b, k);
        let (seen, bad) = ctx.find_bad(&g.graph, params, |l| {
            let s = sorted_inner(&inner, l);
            s[1] - s[0] >= 2 * b && s[3] - s[2] >= 2 * b
        })?;
        if let Some(l) = bad {
            return Ok(Outcome::Fail(
                format!("k = {k}: inner gaps too small"),
                labelling(&g.graph, params, EdgeLabelling::from_total(&l)),
            ));
        }
        if seen > 0 {
            witness.push(format!("k={k}: {seen}"));
        }
        total += seen;
    }
    if total == 0 {
        return Ok(Outcome::Fail(
            "no labelling at any k, the check is vacuous".into(),
            Evidence::Row(String::new()),
        ));
    }
    Ok(Outcome::Pass(format!(
        "labellings checked {}",
        witness.join(", ")
    )))
}

fn s8_rigid(ctx: &mut Ctx) -> Result<Outcome> {
    let g = extended_star(4)?;
    let inner = edges_with_prefix(&g, "inner[");
    let pendants = edges_with_prefix(&g, "pendant[");
    every_labelling(
        ctx,
        &g.graph,
        star_params(5, 3, 18),
        "inner {0,6,11,17}, pendants {3,3,14,14}",
        |l| {
            let mut p: Vec<u32> = pendants.iter().map(|&e| l[e]).collect();
            p.sort();
            sorted_inner(&inner, l) == [0, 6, 11, 17] && p == [3, 3, 14, 14]
        },
    )
}

fn s8_minimal_k(ctx: &mut Ctx) -> Result<Outcome> {
    let g = extended_star(4)?;
    // upward scan; validity at k carries over to k + 1
    let mut found = None;
    for k in 1..=30 {
        let s = ctx.solver(&g.graph, star_params(5, 3, k), &EdgeLabelling::new())?;
        if ctx.tally(s, |s| s.satisfiable())? {
            found = Some(k);
            break;
        }
    }
    Ok(match found {
        Some(18) => Outcome::Pass("min k = 18".into()),
        other => Outcome::Fail(
            "minimal k differs from 18".into(),
            Evidence::Row(format!("{other:?}")),
        ),
    })
}

fn s8_variable_two_classes(ctx: &mut Ctx) -> Result<Outcome> {
    variable_classes(ctx, &spec(5, 3), 2..=2, "vertical[", 2, false)
}

/// One clause branch over a protrusion: hub edge, then b, x, y down to the
/// protrusion top, whose two edges are z and 4b+a over verticals 0 and 0,
/// each vertical carrying 3b+a and 3b below.
fn blocked_branch(a: u32, b: u32) -> Result<(Graph, EdgeLabelling)> {
    let g = Graph::new(
        13,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (4, 6),
            (5, 7),
            (6, 8),
            (7, 9),
            (7, 10),
            (8, 11),
            (8, 12),
        ],
    )?;
    let fixed = [
        (1, b),
        (5, 4 * b + a),
        (6, 0),
        (7, 0),
        (8, 3 * b + a),
        (9, 3 * b),
        (10, 3 * b + a),
        (11, 3 * b),
    ]
    .into_iter()
    .collect();
    Ok((g, fixed))
}

fn s8_impossible_path(ctx: &mut Ctx) -> Result<Outcome> {
    let (a, b) = (5, 3);
    if 4 * b - 2 * a >= b {
        return Ok(Outcome::Fail(
            "4b - 2a < b fails".into(),
            Evidence::Row(format!("4b-2a = {}, b = {b}", 4 * b - 2 * a)),
        ));
    }
    let (g, fixed) = blocked_branch(a, b)?;
    let params = star_params(a, b, 4 * b + a + 1);
    Ok(match ctx.decide(&g, params, &fixed)? {
        None => Outcome::Pass(format!(
            "prefix has no completion; 4b-2a = {} < b = {b}",
            4 * b - 2 * a
        )),
        Some(lab) => Outcome::Fail("prefix extends".into(), labelling(&g, params, lab)),
    })
}

fn s8_clause(ctx: &mut Ctx) -> Result<Outcome> {
    clause_in_context(ctx, &spec(5, 3))
}

const GCD_SEED: u64 = 0x6c70_7132;

fn gcd_invariance(ctx: &mut Ctx) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(GCD_SEED);
    let mut trials = 0;
    while trials < 200 {
        let n = rng.gen_range(2..=6);
        let g = crate::reductions::random_graph(n, 0.5, &mut rng);
        if g.edge_count() == 0 || g.edge_count() > 8 {
            continue;
        }
        let (p, q) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        if p == 0 && q == 0 {
            continue;
        }
        let base = star_params(p, q, rng.gen_range(1..=6));
        trials += 1;
        let small = ctx.decide(&g, base, &EdgeLabelling::new())?;
        for d in [2, 3] {
            let big = base.scaled(d);
            let large = ctx.decide(&g, big, &EdgeLabelling::new())?;
            if small.is_some() != large.is_some() {
                let row = format!(
                    "{base:?} gives {}, scaled by {d} gives {}",
                    small.is_some(),
                    large.is_some()
                );
                return Ok(Outcome::Fail(
                    row.clone(),
                    Evidence::Row(format!("{row}: {:?}", g.edges())),
                ));
            }
            if let Some(c) = &small {
                let scaled = c.scaled(d);
                if !g.is_valid(&big, &scaled) {
                    return Ok(Outcome::Fail(
                        format!("scaled labelling invalid at {big:?}"),
                        labelling(&g, big, scaled),
                    ));
                }
            }
        }
    }
    Ok(Outcome::Pass(format!(
        "{trials} random graphs agree under scaling by 2 and 3"
    )))
}

macro_rules! check {
    ($id:ident, $regime:expr, ($p:expr, $q:expr, $k:expr), $method:ident, $expect:expr) => {
        LemmaCheck {
            id: stringify!($id),
            regime: $regime,
            params: Params {
                p: $p,
                q: $q,
                k: $k,
            },
            method: Method::$method,
            expectation: $expect,
            run: $id,
        }
    };
}

use Regime::*;

static REGISTRY: [LemmaCheck; 22] = [
    check!(
        s3_variable_equal_pendants,
        Some(PZeroQ),
        (0, 1, 3),
        Enumerate,
        "all pendants of the 3-occurrence variable gadget are equal"
    ),
    check!(
        s3_clause_distinct,
        Some(PZeroQ),
        (0, 1, 3),
        Enumerate,
        "the two clause pendants differ"
    ),
    check!(
        s4_star_regimes,
        Some(Beyond2),
        (1, 3, 9),
        Projection,
        "extended 6-star pendants all in {0,1} or all in {7,8}"
    ),
    check!(
        s4_variable_two_classes,
        Some(Beyond2),
        (1, 3, 9),
        Projection,
        "variable ports of chains up to 3 share one of two classes"
    ),
    check!(
        s4_clause,
        Some(Beyond2),
        (1, 3, 9),
        Infeasibility,
        "clause in context labellable exactly for not-all-equal patterns"
    ),
    check!(
        s5_pendant_force,
        Some(OneTo2),
        (2, 3, 11),
        Projection,
        "pendant 0 forces {0,1,2}, pendant 10 forces {8,9,10}"
    ),
    check!(
        s5_forcer,
        Some(OneTo2),
        (2, 3, 11),
        Projection,
        "the edge added to the 5-star takes exactly {0,10}"
    ),
    check!(
        s5_variable_two_classes,
        Some(OneTo2),
        (2, 3, 11),
        Projection,
        "variable ports of chains up to 3 share one of two classes"
    ),
    check!(
        s5_clause,
        Some(OneTo2),
        (2, 3, 11),
        Infeasibility,
        "clause in context labellable exactly for not-all-equal patterns"
    ),
    check!(
        s6_three_regimes,
        Some(TwoThirdsTo1),
        (4, 3, 16),
        Enumerate,
        "pendants in one of {3,4}, {7,8}, {11,12} with the matching inner quadruple"
    ),
    check!(
        s6_variable_three_classes,
        Some(TwoThirdsTo1),
        (4, 3, 16),
        Projection,
        "variable ports of chains up to 3 share one of three classes"
    ),
    check!(
        s6_clause,
        Some(TwoThirdsTo1),
        (4, 3, 16),
        Infeasibility,
        "edge gadget in context labellable exactly for distinct colours"
    ),
    check!(
        s7_dictionary,
        Some(EqTwoThirds),
        (3, 2, 12),
        Projection,
        "rows 2:{2,3,9} 3:{2,3} 5:{5,6} 6:{5,6} 8:{8,9} 9:{2,8,9}, all others empty"
    ),
    check!(
        s7_variable_two_classes,
        Some(EqTwoThirds),
        (3, 2, 12),
        Projection,
        "ports of chains up to 3 all in {5,6} or all in {2,3,8,9}, every such choice extends"
    ),
    check!(
        s7_clause,
        Some(EqTwoThirds),
        (3, 2, 12),
        Infeasibility,
        "clause in context labellable exactly for one-in-three patterns"
    ),
    check!(
        s8_inner_gaps,
        Some(HalfToTwoThirds),
        (5, 3, 18),
        Enumerate,
        "for k up to 3a+b the sorted inner labels have outer gaps at least 2b"
    ),
    check!(
        s8_rigid,
        Some(HalfToTwoThirds),
        (5, 3, 18),
        Enumerate,
        "inner labels {0,6,11,17}, pendants {3,3,14,14}"
    ),
    check!(
        s8_minimal_k,
        Some(HalfToTwoThirds),
        (5, 3, 18),
        MinK,
        "the extended 4-star needs exactly 18 labels"
    ),
    check!(
        s8_variable_two_classes,
        Some(HalfToTwoThirds),
        (5, 3, 18),
        Projection,
        "verticals of a 2-occurrence gadget all 0 or all 17"
    ),
    check!(
        s8_impossible_path,
        Some(HalfToTwoThirds),
        (5, 3, 18),
        Infeasibility,
        "the blocked branch prefix has no completion and 4b-2a < b"
    ),
    check!(
        s8_clause,
        Some(HalfToTwoThirds),
        (5, 3, 18),
        Infeasibility,
        "clause in context labellable exactly for two-in-four patterns"
    ),
    check!(
        gcd_invariance,
        None,
        (0, 0, 1),
        Randomized,
        "decidability and labellings survive scaling by 2 and 3"
    ),
];

pub fn registry() -> &'static [LemmaCheck] {
    &REGISTRY
}

fn run(check: &LemmaCheck) -> LemmaReport {
    let start = Instant::now();
    let mut ctx = Ctx { nodes: 0 };
    let (verdict, detail, evidence) = match (check.run)(&mut ctx) {
        Ok(Outcome::Pass(w)) => (Verdict::Pass, w, None),
        Ok(Outcome::Fail(why, ev)) => (Verdict::Fail, why, Some(ev)),
        Err(Error::Unknown) => (
            Verdict::Unknown,
            format!("node budget {NODE_BUDGET} exhausted"),
            None,
        ),
        Err(e) => (
            Verdict::Fail,
            e.to_string(),
            Some(Evidence::Row(e.to_string())),
        ),
    };
    LemmaReport {
        id: check.id.to_string(),
        verdict,
        detail,
        evidence,
        nodes: ctx.nodes,
        millis: start.elapsed().as_millis(),
    }
}

/// Runs one check. A parameter suffix such as `(a=5,b=3)` is accepted and
/// ignored.
pub fn verify(id: &str) -> Result<LemmaReport> {
    let base = id.split('(').next().unwrap_or(id);
    REGISTRY
        .iter()
        .find(|c| c.id == base)
        .map(run)
        .ok_or_else(|| Error::UnknownLemma(id.to_string()))
}

/// Runs every check of one row (or all of them) in registry order.
pub fn verify_all(filter: Option<Regime>) -> Vec<LemmaReport> {
    REGISTRY
        .iter()
        .filter(|c| filter.is_none() || c.regime == filter)
        .map(run)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_known() {
        let ids: BTreeSet<&str> = registry().iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), registry().len());
        assert!(matches!(verify("s9_nothing"), Err(Error::UnknownLemma(_))));
    }

    #[test]
    fn dictionary_reproduced() {
        let r = verify("s7_dictionary").unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(
            r.detail,
            "2:{2,3,9}\n3:{2,3}\n5:{5,6}\n6:{5,6}\n8:{8,9}\n9:{2,8,9}"
        );
    }

    #[test]
    fn parameter_suffix_is_ignored() {
        let r = verify("s8_minimal_k(a=5,b=3)").unwrap();
        assert_eq!((r.id.as_str(), r.verdict), ("s8_minimal_k", Verdict::Pass));
        assert_eq!(
            verify("s8_impossible_path(a=5,b=3)").unwrap().verdict,
            Verdict::Pass
        );
    }

    #[test]
    fn quick_checks_pass() {
        for id in [
            "s3_variable_equal_pendants",
            "s3_clause_distinct",
            "s5_forcer",
            "s6_three_regimes",
            "s8_rigid",
            "s7_clause",
        ] {
            let r = verify(id).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{id}: {}", r.detail);
        }
    }

    #[test]
    fn filter_selects_one_row() {
        let ids: Vec<&str> = registry()
            .iter()
            .filter(|c| c.regime == Some(EqTwoThirds))
            .map(|c| c.id)
            .collect();
        assert_eq!(
            ids,
            ["s7_dictionary", "s7_variable_two_classes", "s7_clause"]
        );
        assert!(verify_all(Some(Eq1)).is_empty());
    }

    #[test]
    fn report_line() {
        let r = LemmaReport {
            id: "x".into(),
            verdict: Verdict::Unknown,
            detail: String::new(),
            evidence: None,
            nodes: 7,
            millis: 3,
        };
        assert_eq!(r.line(), "x unknown 7 3");
    }

    #[test]
    fn blocked_branch_prefix_is_consistent() {
        // the fixed part alone is fine; only completing the free edges fails
        let (g, fixed) = blocked_branch(5, 3).unwrap();
        assert!(Solver::new(&g, star_params(5, 3, 18))
            .with_fixed(&fixed)
            .is_ok());
        assert!(Solver::new(&g, star_params(5, 3, 18))
            .with_fixed(&EdgeLabelling::new())
            .unwrap()
            .satisfiable()
            .unwrap());
    }
}
