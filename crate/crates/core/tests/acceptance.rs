//! Acceptance criteria, one report line each. Runs without the libtest
//! harness so the lines come out in order; exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lpq_core::gadgets::{clause_gadget, extended_star, variable_gadget};
use lpq_core::reductions::{
    back_map, brute_source, forward_label, parse_source, reduce, satisfies, seeded_rng, Source,
};
use lpq_core::solver::min_k;
use lpq_core::verify::{verify, verify_all, Verdict};
use lpq_core::{dispatch, EdgeLabelling, Graph, Params, SearchBudget, Solver};
use rand::Rng;

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    if start.elapsed() > limit {
        return Err(format!(
            "{what} took {:.1} s, limit {} s",
            start.elapsed().as_secs_f64(),
            limit.as_secs()
        ));
    }
    Ok(())
}

fn pendant_edges(g: &lpq_core::gadgets::Gadget) -> Vec<usize> {
    (0..4)
        .map(|i| g.port_edge(&format!("pendant[{i}]")).unwrap())
        .collect()
}

fn inner_edges(g: &lpq_core::gadgets::Gadget) -> Vec<usize> {
    (0..4)
        .map(|i| g.port_edge(&format!("inner[{i}]")).unwrap())
        .collect()
}

fn dictionary() -> Outcome {
    let start = Instant::now();
    let expected: BTreeMap<u32, BTreeSet<u32>> = [
        (2, vec![2, 3, 9]),
        (3, vec![2, 3]),
        (5, vec![5, 6]),
        (6, vec![5, 6]),
        (8, vec![8, 9]),
        (9, vec![2, 8, 9]),
    ]
    .into_iter()
    .map(|(l, row)| (l, row.into_iter().collect()))
    .collect();
    let star = extended_star(4).map_err(|e| e.to_string())?;
    let pendants = pendant_edges(&star);
    let params = Params::new(3, 2, 12).unwrap();
    let mut found = BTreeMap::new();
    for l in 0..12 {
        let fixed = EdgeLabelling::new().with(pendants[0], l);
        let mut s = Solver::new(&star.graph, params)
            .with_fixed(&fixed)
            .map_err(|e| e.to_string())?;
        let table = s.project(&pendants[1..]).map_err(|e| e.to_string())?;
        let row: BTreeSet<u32> = table.values().flatten().copied().collect();
        if !row.is_empty() {
            found.insert(l, row);
        }
    }
    if found != expected {
        return Err(format!("projected rows {found:?}"));
    }
    within(start, Duration::from_secs(60), "projection")?;
    Ok(format!(
        "six rows, no completion for 0 1 4 7 10 11 ({} ms)",
        start.elapsed().as_millis()
    ))
}

fn minimal_star() -> Outcome {
    let start = Instant::now();
    let star = extended_star(4).map_err(|e| e.to_string())?;
    let k = min_k(&star.graph, 5, 3, 30, SearchBudget::unlimited()).map_err(|e| e.to_string())?;
    if k != Some(18) {
        return Err(format!("min k {k:?}"));
    }
    let all = Solver::new(&star.graph, Params::new(5, 3, 18).unwrap())
        .enumerate(None)
        .map_err(|e| e.to_string())?;
    let (inner, pendants) = (inner_edges(&star), pendant_edges(&star));
    for lab in &all {
        let set: BTreeSet<u32> = inner.iter().map(|&e| lab.get(e).unwrap()).collect();
        let mut multi: Vec<u32> = pendants.iter().map(|&e| lab.get(e).unwrap()).collect();
        multi.sort_unstable();
        if set != BTreeSet::from([0, 6, 11, 17]) || multi != [3, 3, 14, 14] {
            return Err(format!("labelling {lab:?}"));
        }
    }
    within(start, Duration::from_secs(60), "min k")?;
    Ok(format!(
        "min k 18, {} labellings all with inner {{0,6,11,17}} ({} ms)",
        all.len(),
        start.elapsed().as_millis()
    ))
}

fn registry() -> Outcome {
    let start = Instant::now();
    let reports = verify_all(None);
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.verdict != Verdict::Pass)
        .map(|r| format!("{} {} ({})", r.id, r.verdict, r.detail))
        .collect();
    within(start, Duration::from_secs(30 * 60), "registry")?;
    if !bad.is_empty() {
        return Err(format!(
            "{} of {} checks: {}",
            bad.len(),
            reports.len(),
            bad.join("; ")
        ));
    }
    Ok(format!(
        "{} checks pass ({:.1} s)",
        reports.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn budget() -> SearchBudget {
    SearchBudget::nodes(50_000_000)
}

/// Decides the reduced instance and, when it is labellable, maps the
/// labelling back and checks the certificate.
fn decide_reduced(source: &Source, p: u32, q: u32) -> Result<bool, String> {
    let spec = dispatch(p, q).map_err(|e| e.to_string())?;
    let red = reduce(source, &spec).map_err(|e| e.to_string())?;
    let lab = Solver::new(&red.graph, red.params)
        .with_budget(budget())
        .any_solution()
        .map_err(|e| e.to_string())?;
    match lab {
        None => Ok(false),
        Some(lab) => {
            let cert = back_map(&red, &lab).map_err(|e| e.to_string())?;
            if !satisfies(source, &cert) {
                return Err("back-mapped certificate does not satisfy the source".into());
            }
            Ok(true)
        }
    }
}

fn source(text: &str, p: u32, q: u32) -> Source {
    parse_source(text, &dispatch(p, q).unwrap()).unwrap()
}

const NAE: [&str; 7] = [
    "p nae3 3 1\n1 2 3\n",
    "p nae3 5 1\n1 2 3\n",
    "p nae3 4 2\n1 2 3\n2 3 4\n",
    "p nae3 6 2\n1 2 3\n4 5 6\n",
    "p nae3 4 3\n1 2 3\n1 2 4\n1 3 4\n",
    "p nae3 5 3\n1 2 3\n3 4 5\n1 4 5\n",
    "p nae3 3 3\n1 2 3\n1 2 3\n1 2 3\n",
];

const ONE_IN_THREE: [&str; 6] = [
    "p 1in3 3 1\n1 2 3\n",
    "p 1in3 4 2\n1 2 3\n2 3 4\n",
    "p 1in3 5 2\n1 2 3\n3 4 5\n",
    "p 1in3 4 3\n1 2 3\n1 2 4\n1 3 4\n",
    "p 1in3 5 3\n1 2 3\n3 4 5\n1 4 5\n",
    "p 1in3 6 3\n1 2 3\n3 4 5\n5 6 1\n",
];

const TWO_IN_FOUR: [&str; 4] = [
    "p 2in4 4 1\n1 2 3 4\n",
    "p 2in4 6 2\n1 2 3 4\n3 4 5 6\n",
    "p 2in4 6 3\n1 2 3 4\n1 2 5 6\n3 4 5 6\n",
    "p 2in4 5 3\n1 2 3 4\n1 2 3 5\n1 2 4 5\n",
];

const COLOURING: [&str; 4] = [
    "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n",
    "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n",
    "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n",
    "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n",
];

fn end_to_end() -> Outcome {
    let mut notes = Vec::new();

    let start = Instant::now();
    for (text, expect) in [(COLOURING[0], true), (COLOURING[3], false)] {
        let got = decide_reduced(&source(text, 0, 1), 0, 1)?;
        if got != expect {
            return Err(format!("(0,1): {text:?} decided {got}"));
        }
    }
    within(start, Duration::from_secs(600), "K3/K4 at (0,1,3)")?;
    notes.push("K3 yes, K4 no at (0,1,3)".to_string());

    for (corpus, p, q) in [
        (&NAE[..], 1, 3),
        (&NAE[..], 2, 3),
        (&ONE_IN_THREE[..], 3, 2),
    ] {
        for text in corpus {
            let src = source(text, p, q);
            let brute = brute_source(&src).map_err(|e| e.to_string())?.is_some();
            let got = decide_reduced(&src, p, q)?;
            if got != brute {
                return Err(format!("({p},{q}): {text:?} brute {brute}, reduced {got}"));
            }
        }
        notes.push(format!("({p},{q}) {} agree", corpus.len()));
    }

    for (corpus, p, q) in [(&COLOURING[..], 4, 3), (&TWO_IN_FOUR[..], 5, 3)] {
        let spec = dispatch(p, q).unwrap();
        let (mut forward, mut attempted) = (0, Vec::new());
        for text in corpus {
            let src = source(text, p, q);
            let red = reduce(&src, &spec).map_err(|e| e.to_string())?;
            match brute_source(&src).map_err(|e| e.to_string())? {
                Some(cert) => {
                    let lab = forward_label(&red, &cert).map_err(|e| e.to_string())?;
                    if !red.graph.is_valid(&red.params, &lab) {
                        return Err(format!("({p},{q}): forward labelling of {text:?} invalid"));
                    }
                    forward += 1;
                }
                None => {
                    let verdict = match Solver::new(&red.graph, red.params)
                        .with_budget(SearchBudget::nodes(2_000_000))
                        .satisfiable()
                    {
                        Ok(true) => {
                            return Err(format!("({p},{q}): no-instance {text:?} labelled"))
                        }
                        Ok(false) => "refuted",
                        Err(_) => "unknown",
                    };
                    attempted.push(verdict);
                }
            }
        }
        notes.push(format!(
            "({p},{q}) {forward} forward, no-instances {attempted:?}"
        ));
    }
    let backward = [
        "s6_variable_three_classes",
        "s6_clause",
        "s8_variable_two_classes",
        "s8_impossible_path",
        "s8_clause",
    ];
    for id in backward {
        let r = verify(id).map_err(|e| e.to_string())?;
        if r.verdict != Verdict::Pass {
            return Err(format!("{id} {}", r.verdict));
        }
    }
    notes.push("gadget lemmas at (4,3) and (5,3) pass".into());
    Ok(notes.join(", "))
}

/// Independent relation oracle: edges as endpoint pairs, no shared code.
fn separations(edges: &[(usize, usize)], p: u32, q: u32) -> Vec<(usize, usize, u32)> {
    let touch =
        |a: (usize, usize), b: (usize, usize)| a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let adjacent = touch(edges[i], edges[j]);
            let linked = (0..edges.len()).any(|m| {
                if m == i || m == j {
                    return false;
                }
                let (x, y) = edges[m];
                let ends_i = [edges[i].0, edges[i].1];
                let ends_j = [edges[j].0, edges[j].1];
                (ends_i.contains(&x) && ends_j.contains(&y))
                    || (ends_i.contains(&y) && ends_j.contains(&x))
            });
            let need = match (adjacent, linked) {
                (true, true) => p.max(q),
                (true, false) => p,
                (false, true) => q,
                _ => 0,
            };
            if need > 0 {
                out.push((i, j, need));
            }
        }
    }
    out
}

fn naive(edges: &[(usize, usize)], p: u32, q: u32, k: u32) -> Vec<Vec<u32>> {
    let seps = separations(edges, p, q);
    let m = edges.len();
    let mut out = Vec::new();
    let mut labels = vec![0u32; m];
    loop {
        if seps
            .iter()
            .all(|&(i, j, d)| labels[i].abs_diff(labels[j]) >= d)
        {
            out.push(labels.clone());
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            labels[pos] += 1;
            if labels[pos] < k {
                break;
            }
            labels[pos] = 0;
        }
    }
}

fn random_edges(rng: &mut impl Rng, max_edges: usize) -> (usize, Vec<(usize, usize)>) {
    loop {
        let n = rng.gen_range(2..=6);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.45) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() && edges.len() <= max_edges {
            return (n, edges);
        }
    }
}

fn solver_oracle() -> Outcome {
    let mut rng = seeded_rng(0x5eed_0005);
    let mut total = 0;
    for trial in 0..200 {
        let (n, edges) = random_edges(&mut rng, 7);
        let (p, q, k) = (
            rng.gen_range(0..=3),
            rng.gen_range(0..=3),
            rng.gen_range(1..=6),
        );
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        let got: Vec<Vec<u32>> = Solver::new(&g, Params::new(p, q, k).unwrap())
            .enumerate(None)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|l| l.to_total(edges.len()).unwrap())
            .collect();
        // Graph::new may reorder endpoints but keeps edge positions.
        let want = naive(&edges, p, q, k);
        if got != want {
            return Err(format!(
                "trial {trial}: {edges:?} at ({p},{q},{k}): {} vs {}",
                got.len(),
                want.len()
            ));
        }
        total += want.len();
    }
    Ok(format!("200 graphs, {total} labellings match"))
}

fn gcd_scaling() -> Outcome {
    let mut rng = seeded_rng(0x5eed_0006);
    let mut yes = 0;
    for trial in 0..200 {
        let (n, edges) = random_edges(&mut rng, 8);
        let g = Graph::new(n, edges).unwrap();
        let base = Params::new(
            rng.gen_range(0..=3),
            rng.gen_range(0..=3),
            rng.gen_range(1..=6),
        )
        .unwrap();
        let small = Solver::new(&g, base).decide().map_err(|e| e.to_string())?;
        for d in [2, 3] {
            let big = base.scaled(d);
            let large = Solver::new(&g, big).decide().map_err(|e| e.to_string())?;
            if small.is_some() != large.is_some() {
                return Err(format!("trial {trial}: {base:?} vs scaled by {d}"));
            }
            if let Some(lab) = &small {
                if !g.is_valid(&big, &lab.scaled(d)) {
                    return Err(format!("trial {trial}: scaled witness invalid at {big:?}"));
                }
            }
        }
        yes += small.is_some() as usize;
    }
    Ok(format!("200 graphs agree ({yes} labellable)"))
}

fn templates() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (p, q) in [
        (0, 1),
        (0, 2),
        (1, 3),
        (2, 3),
        (1, 2),
        (4, 3),
        (8, 6),
        (3, 2),
        (6, 4),
        (5, 3),
    ] {
        let spec = dispatch(p, q).map_err(|e| e.to_string())?;
        let mut gadgets = vec![clause_gadget(&spec).map_err(|e| e.to_string())?];
        for occ in 1..=3 {
            gadgets.push(variable_gadget(&spec, occ).map_err(|e| e.to_string())?);
        }
        for g in &gadgets {
            for (name, (params, lab)) in &g.templates {
                if *params != spec.params() || !g.graph.is_valid(params, lab) {
                    return Err(format!("({p},{q}) template {name}"));
                }
                count += 1;
            }
        }
    }
    within(start, Duration::from_secs(5), "templates")?;
    Ok(format!(
        "{count} templates valid ({} ms)",
        start.elapsed().as_millis()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("dictionary at (3,2,12)", dictionary),
        ("extended 4-star min k at (5,3)", minimal_star),
        ("full lemma registry", registry),
        ("end-to-end reductions", end_to_end),
        ("solver matches naive filter", solver_oracle),
        ("gcd invariance", gcd_scaling),
        ("gadget templates", templates),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} pass: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} pass, {failed} fail",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
