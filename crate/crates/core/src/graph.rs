//! Graphs with canonical edge indexing and the L(p,q) edge constraint semantics.
//!
//! Two distinct edges are *adjacent* when they share an endpoint, and
//! *mid-linked* when a third edge joins an endpoint of one to an endpoint of
//! the other (a walk of three pairwise distinct edges). Every pair of triangle
//! edges is both. Adjacent pairs need a label gap of at least `p`, mid-linked
//! pairs at least `q`, and pairs in both relations need both.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge-index pair with the smaller index first.
pub type EdgePair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a simple graph. Endpoints are canonicalized (smaller first) and
    /// edges keep their list position as index.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut canon = Vec::new();
        let mut seen = BTreeSet::new();
        let mut incident = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint >= vertex count {vertex_count}"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    e.0, e.1
                )));
            }
            incident[e.0].push(canon.len());
            incident[e.1].push(canon.len());
            canon.push(e);
        }
        Ok(Graph {
            vertex_count,
            edges: canon,
            incident,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Edges incident to `v`, in index order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.incident
            .get(u)?
            .iter()
            .copied()
            .find(|&e| self.edges[e] == key)
    }

    /// All pairs of distinct edges sharing an endpoint, sorted.
    pub fn adjacent_pairs(&self) -> BTreeSet<EdgePair> {
        let mut out = BTreeSet::new();
        for inc in &self.incident {
            for (i, &e1) in inc.iter().enumerate() {
                for &e2 in &inc[i + 1..] {
                    out.insert((e1.min(e2), e1.max(e2)));
                }
            }
        }
        out
    }

    /// All pairs joined by a middle edge, sorted. A pair may also be adjacent.
    pub fn midlinked_pairs(&self) -> BTreeSet<EdgePair> {
        let mut out = BTreeSet::new();
        for (f, &(b, c)) in self.edges.iter().enumerate() {
            for &e1 in &self.incident[b] {
                if e1 == f {
                    continue;
                }
                for &e2 in &self.incident[c] {
                    if e2 == f || e2 == e1 {
                        continue;
                    }
                    out.insert((e1.min(e2), e1.max(e2)));
                }
            }
        }
        out
    }

    /// Minimum label gap for every constrained pair. Pairs whose applicable
    /// separation is zero are omitted.
    pub fn required_separation(&self, params: &Params) -> BTreeMap<EdgePair, u32> {
        let mut out = BTreeMap::new();
        if params.p > 0 {
            for pair in self.adjacent_pairs() {
                out.insert(pair, params.p);
            }
        }
        if params.q > 0 {
            for pair in self.midlinked_pairs() {
                let slot = out.entry(pair).or_insert(0);
                *slot = (*slot).max(params.q);
            }
        }
        out
    }

    /// Validates a total labelling and lists every violated constraint.
    pub fn check(&self, params: &Params, labelling: &EdgeLabelling) -> Result<ConflictReport> {
        let labels = labelling.to_total(self.edge_count())?;
        params.check_labels(&labels)?;
        let mut violations = Vec::new();
        let adjacent = self.adjacent_pairs();
        let midlinked = self.midlinked_pairs();
        let mut pairs: BTreeSet<EdgePair> = adjacent.clone();
        pairs.extend(midlinked.iter().copied());
        for (e1, e2) in pairs {
            let gap = labels[e1].abs_diff(labels[e2]);
            if adjacent.contains(&(e1, e2)) && gap < params.p {
                violations.push(Violation {
                    e1,
                    e2,
                    kind: Relation::Adjacent,
                    required: params.p,
                    actual: gap,
                });
            }
            if midlinked.contains(&(e1, e2)) && gap < params.q {
                violations.push(Violation {
                    e1,
                    e2,
                    kind: Relation::MidLinked,
                    required: params.q,
                    actual: gap,
                });
            }
        }
        Ok(ConflictReport { violations })
    }

    /// Convenience wrapper: `true` iff the total labelling is valid.
    pub fn is_valid(&self, params: &Params, labelling: &EdgeLabelling) -> bool {
        matches!(self.check(params, labelling), Ok(r) if r.is_empty())
    }

    /// Edge-line-graph BFS distances from `e` (adjacent edges at distance 1).
    pub fn line_distances(&self, e: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.edge_count()];
        dist[e] = Some(0);
        let mut queue = std::collections::VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            let (a, b) = self.edges[x];
            for &y in self.incident[a].iter().chain(&self.incident[b]) {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: u32,
    pub q: u32,
    pub k: u32,
}

impl Params {
    pub fn new(p: u32, q: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        Ok(Params { p, q, k })
    }

    pub(crate) fn check_labels(&self, labels: &[u32]) -> Result<()> {
        match labels.iter().position(|&l| l >= self.k) {
            Some(edge) => Err(Error::LabelOutOfRange {
                edge,
                label: labels[edge],
                k: self.k,
            }),
            None => Ok(()),
        }
    }

    /// Multiplies every component by `d`.
    pub fn scaled(&self, d: u32) -> Params {
        Params {
            p: self.p * d,
            q: self.q * d,
            k: self.k * d,
        }
    }
}

/// Partial or total map from edge index to label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabelling(BTreeMap<usize, u32>);

impl EdgeLabelling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_total(labels: &[u32]) -> Self {
        EdgeLabelling(labels.iter().copied().enumerate().collect())
    }

    pub fn set(&mut self, edge: usize, label: u32) {
        self.0.insert(edge, label);
    }

    pub fn with(mut self, edge: usize, label: u32) -> Self {
        self.set(edge, label);
        self
    }

    pub fn get(&self, edge: usize) -> Option<u32> {
        self.0.get(&edge).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&e, &l)| (e, l))
    }

    /// Dense label vector, or `Incomplete` naming the first missing edge.
    pub fn to_total(&self, edge_count: usize) -> Result<Vec<u32>> {
        if let Some((&e, _)) = self.0.range(edge_count..).next() {
            return Err(Error::EdgeOutOfRange(e));
        }
        (0..edge_count)
            .map(|e| self.get(e).ok_or(Error::Incomplete(e)))
            .collect()
    }

    /// `e -> (k-1) - c(e)`.
    pub fn inverted(&self, k: u32) -> Self {
        EdgeLabelling(self.0.iter().map(|(&e, &l)| (e, k - 1 - l)).collect())
    }

    pub fn scaled(&self, d: u32) -> Self {
        EdgeLabelling(self.0.iter().map(|(&e, &l)| (e, l * d)).collect())
    }
}

impl FromIterator<(usize, u32)> for EdgeLabelling {
    fn from_iter<I: IntoIterator<Item = (usize, u32)>>(iter: I) -> Self {
        EdgeLabelling(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Adjacent,
    MidLinked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub e1: usize,
    pub e2: usize,
    pub kind: Relation,
    pub required: u32,
    pub actual: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConflictReport {
    pub violations: Vec<Violation>,
}

impl ConflictReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Small named graphs used across tests and lemma checks.
pub mod named {
    use super::Graph;

    pub fn path(edges: usize) -> Graph {
        Graph::new(edges + 1, (0..edges).map(|i| (i, i + 1))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn star(n: usize) -> Graph {
        Graph::new(n + 1, (1..=n).map(|i| (0, i))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn set(pairs: &[(usize, usize)]) -> BTreeSet<EdgePair> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(Graph::new(2, [(1, 1)]).is_err());
        assert!(Graph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
        let g = Graph::new(3, [(2, 0)]).unwrap();
        assert_eq!(g.edge(0), (0, 2));
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(complete(3).adjacent_pairs(), set(&[(0, 1), (0, 2), (1, 2)]));
        assert_eq!(path(3).adjacent_pairs(), set(&[(0, 1), (1, 2)]));
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(two.adjacent_pairs().is_empty());
    }

    #[test]
    fn midlink_examples() {
        assert_eq!(
            complete(3).midlinked_pairs(),
            set(&[(0, 1), (0, 2), (1, 2)])
        );
        assert!(star(3).midlinked_pairs().is_empty());
        assert_eq!(path(3).midlinked_pairs(), set(&[(0, 2)]));
    }

    #[test]
    fn check_examples() {
        let k3 = complete(3);
        let p = Params::new(0, 1, 3).unwrap();
        assert!(k3
            .check(&p, &EdgeLabelling::from_total(&[0, 1, 2]))
            .unwrap()
            .is_empty());
        let r = k3
            .check(&p, &EdgeLabelling::from_total(&[0, 0, 1]))
            .unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, Relation::MidLinked);

        let r = path(2)
            .check(
                &Params::new(2, 1, 5).unwrap(),
                &EdgeLabelling::from_total(&[0, 1]),
            )
            .unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, Relation::Adjacent);
        assert_eq!((r.violations[0].required, r.violations[0].actual), (2, 1));
    }

    #[test]
    fn check_errors() {
        let k3 = complete(3);
        let p = Params::new(0, 1, 3).unwrap();
        assert_eq!(
            k3.check(&p, &EdgeLabelling::new().with(0, 0)),
            Err(Error::Incomplete(1))
        );
        assert!(matches!(
            k3.check(&p, &EdgeLabelling::from_total(&[0, 1, 3])),
            Err(Error::LabelOutOfRange { edge: 2, .. })
        ));
    }

    #[test]
    fn separation_examples() {
        let p = Params::new(3, 2, 12).unwrap();
        assert!(complete(3)
            .required_separation(&p)
            .values()
            .all(|&s| s == 3));
        let s = star(4).required_separation(&p);
        assert_eq!(s.len(), 6);
        assert!(s.values().all(|&v| v == 3));
    }
}
