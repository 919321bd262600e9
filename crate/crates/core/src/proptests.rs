use std::collections::VecDeque;

use proptest::prelude::*;

use crate::graph::{EdgeLabelling, Graph, Params};
use crate::solver::Solver;

fn graph(max_edges: usize) -> impl Strategy<Value = Graph> {
    (2usize..=6, any::<u16>()).prop_filter_map("too many or no edges", move |(n, mask)| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let edges: Vec<(usize, usize)> = pairs
            .into_iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        (!edges.is_empty() && edges.len() <= max_edges).then(|| Graph::new(n, edges).unwrap())
    })
}

fn params(k_max: u32) -> impl Strategy<Value = Params> {
    (0u32..=3, 0u32..=3, 1..=k_max).prop_map(|(p, q, k)| Params { p, q, k })
}

fn shares(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

/// Breadth-first distances in the line graph.
fn line_bfs(g: &Graph, from: usize) -> Vec<Option<usize>> {
    let m = g.edge_count();
    let mut dist = vec![None; m];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(e) = queue.pop_front() {
        for f in 0..m {
            if dist[f].is_none() && shares(g.edge(e), g.edge(f)) {
                dist[f] = Some(dist[e].unwrap() + 1);
                queue.push_back(f);
            }
        }
    }
    dist
}

fn oracle_valid(g: &Graph, params: &Params, labels: &[u32]) -> bool {
    let m = g.edge_count();
    (0..m).all(|i| {
        (i + 1..m).all(|j| {
            let adjacent = shares(g.edge(i), g.edge(j));
            let ends = |e: usize| [g.edge(e).0, g.edge(e).1];
            let linked = (0..m).any(|x| {
                let (u, v) = g.edge(x);
                x != i
                    && x != j
                    && ((ends(i).contains(&u) && ends(j).contains(&v))
                        || (ends(i).contains(&v) && ends(j).contains(&u)))
            });
            let gap = labels[i].abs_diff(labels[j]);
            (!adjacent || gap >= params.p) && (!linked || gap >= params.q)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn checker_matches_oracle(g in graph(9), params in params(8), seed in prop::collection::vec(0u32..8, 9)) {
        let labels: Vec<u32> = seed[..g.edge_count()].iter().map(|l| l % params.k).collect();
        let lab = EdgeLabelling::from_total(&labels);
        prop_assert_eq!(g.is_valid(&params, &lab), oracle_valid(&g, &params, &labels));
    }

    #[test]
    fn midlinks_are_line_distance_two_or_triangles(g in graph(12)) {
        let linked = g.midlinked_pairs();
        for i in 0..g.edge_count() {
            let dist = line_bfs(&g, i);
            prop_assert_eq!(&g.line_distances(i), &dist);
            for j in i + 1..g.edge_count() {
                let (a, b) = (g.edge(i), g.edge(j));
                let expect = if shares(a, b) {
                    let mut ends = vec![a.0, a.1, b.0, b.1];
                    ends.sort_unstable();
                    ends.dedup();
                    g.find_edge(ends[0], ends[2]).is_some() && g.find_edge(ends[0], ends[1]).is_some() && g.find_edge(ends[1], ends[2]).is_some()
                } else {
                    dist[j] == Some(2)
                };
                prop_assert_eq!(linked.contains(&(i, j)), expect, "{:?} {:?}", a, b);
            }
        }
    }

    #[test]
    fn inversion_scaling_and_larger_k(g in graph(7), params in params(6)) {
        let Some(lab) = Solver::new(&g, params).decide().unwrap() else { return Ok(()) };
        prop_assert!(g.is_valid(&params, &lab));
        prop_assert!(g.is_valid(&params, &lab.inverted(params.k)));
        prop_assert!(g.is_valid(&params.scaled(3), &lab.scaled(3)));
        let wider = Params { k: params.k + 1, ..params };
        prop_assert!(g.is_valid(&wider, &lab));
    }

    #[test]
    fn decide_is_first_enumerated(g in graph(6), params in params(5)) {
        let all = Solver::new(&g, params).enumerate(None).unwrap();
        prop_assert_eq!(Solver::new(&g, params).decide().unwrap(), all.first().cloned());
        prop_assert_eq!(Solver::new(&g, params).count().unwrap(), all.len() as u128);
        prop_assert!(all.windows(2).all(|w| w[0].to_total(g.edge_count()).unwrap() < w[1].to_total(g.edge_count()).unwrap()));
        let wider = Params { k: params.k + 1, ..params };
        prop_assert!(Solver::new(&g, wider).count().unwrap() >= all.len() as u128);
    }

    #[test]
    fn projection_is_union_of_enumeration(g in graph(6), params in params(5)) {
        let all = Solver::new(&g, params).enumerate(None).unwrap();
        let targets: Vec<usize> = (0..g.edge_count()).collect();
        let table = Solver::new(&g, params).project(&targets).unwrap();
        for e in targets {
            let labels: std::collections::BTreeSet<u32> = all.iter().map(|l| l.get(e).unwrap()).collect();
            prop_assert_eq!(table.get(&e).cloned().unwrap_or_default(), labels);
        }
    }
}
