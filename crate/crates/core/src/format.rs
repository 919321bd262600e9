//! Text formats: DIMACS-style graphs, JSON labellings, port manifests and
//! the `l p q k` params line.

use crate::error::{Error, Result};
use crate::graph::{EdgeLabelling, Graph, Params};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
}

/// Lines that are neither blank nor `c` comments, with 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

/// `p edge n m` then `e u v` lines, 1-based.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last = 0;
    for (no, line) in content_lines(text) {
        last = no;
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(no, "second header"));
                }
                if tok.next() != Some("edge") {
                    return Err(parse_err(no, "expected `p edge <n> <m>`"));
                }
                let n = number(tok.next(), no, "vertex count")?;
                let m = number(tok.next(), no, "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(parse_err(no, "edge before header"));
                };
                let u: usize = number(tok.next(), no, "endpoint")?;
                let v: usize = number(tok.next(), no, "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(no, format!("endpoint out of range 1..={n}")));
                }
                if u == v {
                    return Err(parse_err(no, "self-loop"));
                }
                edges.push((u - 1, v - 1));
                if let Some(t) = tok.next() {
                    return Err(parse_err(no, format!("unexpected token {t:?}")));
                }
                continue;
            }
            Some(other) => return Err(parse_err(no, format!("unknown line type {other:?}"))),
            None => unreachable!(),
        }
        if let Some(t) = tok.next() {
            return Err(parse_err(no, format!("unexpected token {t:?}")));
        }
    }
    let Some((n, m)) = header else {
        return Err(parse_err(last.max(1), "missing `p edge` header"));
    };
    if edges.len() != m {
        return Err(parse_err(
            last.max(1),
            format!("header promises {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges).map_err(|e| parse_err(last.max(1), e.to_string()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct LabelRecord {
    u: usize,
    v: usize,
    label: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct LabellingDoc {
    p: u32,
    q: u32,
    k: u32,
    labels: Vec<LabelRecord>,
}

/// JSON document `{p, q, k, labels: [{u, v, label}]}`, vertices 1-based,
/// records in edge order.
pub fn write_labelling(g: &Graph, params: &Params, lab: &EdgeLabelling) -> String {
    let labels = lab
        .iter()
        .map(|(e, label)| {
            let (u, v) = g.edge(e);
            LabelRecord {
                u: u + 1,
                v: v + 1,
                label,
            }
        })
        .collect();
    let doc = LabellingDoc {
        p: params.p,
        q: params.q,
        k: params.k,
        labels,
    };
    serde_json::to_string_pretty(&doc).expect("labelling serializes") + "\n"
}

pub fn parse_labelling(g: &Graph, text: &str) -> Result<(Params, EdgeLabelling)> {
    let doc: LabellingDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let params = Params::new(doc.p, doc.q, doc.k)?;
    let mut lab = EdgeLabelling::new();
    for r in doc.labels {
        let e = (r.u >= 1 && r.v >= 1)
            .then(|| g.find_edge(r.u - 1, r.v - 1))
            .flatten()
            .ok_or_else(|| {
                Error::NotALabelling(format!("no edge {{{}, {}}} in the graph", r.u, r.v))
            })?;
        if lab.get(e).is_some() {
            return Err(Error::NotALabelling(format!(
                "edge {{{}, {}}} labelled twice",
                r.u, r.v
            )));
        }
        lab.set(e, r.label);
    }
    Ok((params, lab))
}

pub fn parse_port_manifest(text: &str) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for (no, line) in content_lines(text) {
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("port") => {
                let name = tok
                    .next()
                    .ok_or_else(|| parse_err(no, "missing port name"))?;
                let e = number(tok.next(), no, "edge index")?;
                if out.insert(name.to_string(), e).is_some() {
                    return Err(parse_err(no, format!("duplicate port {name:?}")));
                }
            }
            Some("l") => {}
            _ => return Err(parse_err(no, "expected `port <name> <edge>`")),
        }
    }
    Ok(out)
}

pub fn write_params_line(params: &Params) -> String {
    format!("l {} {} {}\n", params.p, params.q, params.k)
}

/// First `l p q k` line of a manifest-like text.
pub fn parse_params_line(text: &str) -> Result<Params> {
    for (no, line) in content_lines(text) {
        let mut tok = line.split_whitespace();
        if tok.next() == Some("l") {
            let p = number(tok.next(), no, "p")?;
            let q = number(tok.next(), no, "q")?;
            let k = number(tok.next(), no, "k")?;
            return Params::new(p, q, k);
        }
    }
    Err(parse_err(1, "no `l <p> <q> <k>` line"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn k3_from_text() {
        let g = parse_graph("c triangle\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
        assert_eq!(g, named::complete(3));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors_carry_lines() {
        let cases = [
            ("e 1 2\n", 1),
            ("p edge 3 1\ne 1 4\n", 2),
            ("p edge 3 2\ne 1 2\n", 2),
            ("p edge 3 2\ne 1 2\ne 2 1\n", 3),
            ("p edge 3 1\n\nx 1 2\n", 3),
            ("p edge 2 1\ne 1 1\n", 2),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn labelling_round_trip() {
        let g = named::path(3);
        let params = Params::new(1, 2, 5).unwrap();
        let lab = EdgeLabelling::from_total(&[0, 2, 4]);
        let text = write_labelling(&g, &params, &lab);
        assert_eq!(parse_labelling(&g, &text).unwrap(), (params, lab));
        let bad = text.replace("\"v\": 4", "\"v\": 1");
        assert!(matches!(
            parse_labelling(&g, &bad),
            Err(Error::NotALabelling(_))
        ));
        assert!(matches!(parse_labelling(&g, "{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn manifest_and_params() {
        let text = "l 3 2 12\nport var[0] 4\nport lit[1] 7\n";
        let ports = parse_port_manifest(text).unwrap();
        assert_eq!(ports["var[0]"], 4);
        assert_eq!(
            parse_params_line(text).unwrap(),
            Params::new(3, 2, 12).unwrap()
        );
        assert!(parse_port_manifest("port a 1\nport a 2\n").is_err());
    }
}
