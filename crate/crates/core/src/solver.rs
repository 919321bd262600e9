//! Exact search for L(p,q)-edge-k-labellings.
//!
//! Label domains are bitsets. Propagation is arc consistency on the pairwise
//! gap constraints; a label `x` of edge `e` has support in edge `f` under gap
//! `s` iff `x <= max(f) - s` or `x >= min(f) + s`, so every revision only
//! needs the bounds of the other domain.
//!
//! Feasibility search picks the edge with the smallest domain (ties: more
//! constraints, then lower index) and tries labels in ascending order.
//! Independent components of the residual constraint graph are solved
//! separately. The labelling returned by [`Solver::decide`] is always the
//! lexicographically first solution: after a witness is found each edge is
//! lowered in index order by probing smaller labels.
//!
//! Enumeration branches on the lowest unassigned edge index, so solutions
//! come out already in lexicographic order.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{EdgeLabelling, Graph, Params};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget {
            node_limit: Some(limit),
            time_limit: None,
        }
    }
}

/// Target edge -> labels it takes across all valid completions.
pub type ProjectionTable = BTreeMap<usize, BTreeSet<u32>>;

/// Flat bitset storage of one label domain per edge.
#[derive(Clone)]
struct Domains {
    words: usize,
    k: u32,
    bits: Vec<u64>,
}

impl Domains {
    fn full(m: usize, k: u32) -> Self {
        let words = (k as usize).div_ceil(64);
        let mut bits = vec![0u64; m * words];
        for e in 0..m {
            for l in 0..k {
                bits[e * words + (l / 64) as usize] |= 1 << (l % 64);
            }
        }
        Domains { words, k, bits }
    }

    fn row(&self, e: usize) -> &[u64] {
        &self.bits[e * self.words..(e + 1) * self.words]
    }

    fn row_mut(&mut self, e: usize) -> &mut [u64] {
        &mut self.bits[e * self.words..(e + 1) * self.words]
    }

    fn size(&self, e: usize) -> u32 {
        self.row(e).iter().map(|w| w.count_ones()).sum()
    }

    fn contains(&self, e: usize, l: u32) -> bool {
        l < self.k && self.row(e)[(l / 64) as usize] >> (l % 64) & 1 == 1
    }

    fn min(&self, e: usize) -> Option<u32> {
        self.row(e)
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i as u32 * 64 + w.trailing_zeros())
    }

    fn max(&self, e: usize) -> Option<u32> {
        self.row(e)
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i as u32 * 64 + 63 - w.leading_zeros())
    }

    fn labels(&self, e: usize) -> Vec<u32> {
        (0..self.k).filter(|&l| self.contains(e, l)).collect()
    }

    fn assign(&mut self, e: usize, l: u32) {
        let words = self.words;
        let row = self.row_mut(e);
        row.iter_mut().for_each(|w| *w = 0);
        if (l as usize) < words * 64 {
            row[(l / 64) as usize] = 1 << (l % 64);
        }
    }

    fn retain(&mut self, e: usize, allowed: &[u32]) {
        let keep: BTreeSet<u32> = allowed.iter().copied().collect();
        for l in 0..self.k {
            if !keep.contains(&l) {
                self.row_mut(e)[(l / 64) as usize] &= !(1 << (l % 64));
            }
        }
    }

    /// Clears labels in `lo..=hi`; returns whether anything changed.
    fn remove_range(&mut self, e: usize, lo: u32, hi: u32) -> bool {
        let mut changed = false;
        let row = self.row_mut(e);
        let mut l = lo;
        while l <= hi {
            let w = (l / 64) as usize;
            let start = l % 64;
            let end = if hi / 64 == l / 64 { hi % 64 } else { 63 };
            let width = end - start + 1;
            let mask = if width == 64 {
                u64::MAX
            } else {
                ((1u64 << width) - 1) << start
            };
            if row[w] & mask != 0 {
                row[w] &= !mask;
                changed = true;
            }
            l = (w as u32 + 1) * 64;
        }
        changed
    }
}

struct Meter {
    nodes: u64,
    limit: Option<u64>,
    deadline: Option<Instant>,
    /// restart point of the current attempt
    cutoff: Option<u64>,
    cut: bool,
}

impl Meter {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            return Err(Error::Unknown);
        }
        if self.cutoff.is_some_and(|c| self.nodes > c) {
            self.cut = true;
            return Err(Error::Unknown);
        }
        if self.nodes % 256 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Unknown);
        }
        Ok(())
    }
}

/// A configured search over one graph and one parameter triple.
pub struct Solver<'g> {
    graph: &'g Graph,
    params: Params,
    neighbors: Vec<Vec<(usize, u32)>>,
    fixed: EdgeLabelling,
    restrictions: BTreeMap<usize, Vec<u32>>,
    meter: Meter,
    /// constraint degree plus the number of wipeouts each edge took part in
    weight: Vec<u64>,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g Graph, params: Params) -> Self {
        let mut neighbors = vec![Vec::new(); graph.edge_count()];
        for ((a, b), s) in graph.required_separation(&params) {
            neighbors[a].push((b, s));
            neighbors[b].push((a, s));
        }
        Solver {
            graph,
            params,
            fixed: EdgeLabelling::new(),
            restrictions: BTreeMap::new(),
            meter: Meter {
                nodes: 0,
                limit: None,
                deadline: None,
                cutoff: None,
                cut: false,
            },
            weight: neighbors.iter().map(|n| n.len() as u64 + 1).collect(),
            neighbors,
        }
    }

    pub fn with_budget(mut self, budget: SearchBudget) -> Self {
        self.meter.limit = budget.node_limit;
        self.meter.deadline = budget.time_limit.map(|t| Instant::now() + t);
        self
    }

    /// Pins edges to labels. Checked for range and mutual consistency.
    pub fn with_fixed(mut self, fixed: &EdgeLabelling) -> Result<Self> {
        for (e, l) in fixed.iter() {
            if e >= self.graph.edge_count() {
                return Err(Error::EdgeOutOfRange(e));
            }
            if l >= self.params.k {
                return Err(Error::LabelOutOfRange {
                    edge: e,
                    label: l,
                    k: self.params.k,
                });
            }
            self.fixed.set(e, l);
        }
        for (e, l) in self.fixed.iter() {
            for &(f, s) in &self.neighbors[e] {
                if let Some(m) = self.fixed.get(f) {
                    if l.abs_diff(m) < s {
                        return Err(Error::InfeasiblePrefix(e.min(f), e.max(f)));
                    }
                }
            }
        }
        Ok(self)
    }

    /// Limits an edge to a label subset (intersected with earlier limits).
    pub fn restrict(&mut self, edge: usize, labels: &[u32]) -> &mut Self {
        let entry = self
            .restrictions
            .entry(edge)
            .or_insert_with(|| (0..self.params.k).collect());
        entry.retain(|l| labels.contains(l));
        self
    }

    /// Search nodes expanded so far.
    pub fn nodes(&self) -> u64 {
        self.meter.nodes
    }

    fn initial(&self) -> Option<Domains> {
        let m = self.graph.edge_count();
        let mut d = Domains::full(m, self.params.k);
        for (&e, allowed) in &self.restrictions {
            d.retain(e, allowed);
        }
        for (e, l) in self.fixed.iter() {
            if !d.contains(e, l) {
                return None;
            }
            d.assign(e, l);
        }
        self.propagate(&mut d, (0..m).collect())
            .is_ok()
            .then_some(d)
    }

    /// Arc consistency. On a wipeout, returns the emptied edge and the edge
    /// that emptied it.
    fn propagate(
        &self,
        d: &mut Domains,
        mut queue: Vec<usize>,
    ) -> std::result::Result<(), (usize, usize)> {
        let m = self.graph.edge_count();
        let mut queued = vec![false; m];
        for &e in &queue {
            queued[e] = true;
        }
        while let Some(f) = queue.pop() {
            queued[f] = false;
            let (Some(lo), Some(hi)) = (d.min(f), d.max(f)) else {
                return Err((f, f));
            };
            for &(e, s) in &self.neighbors[f] {
                // unsupported labels of e form the open window (hi - s, lo + s)
                let from = (hi as i64 - s as i64 + 1).max(0);
                let to = (lo as i64 + s as i64 - 1).min(self.params.k as i64 - 1);
                if from <= to && d.remove_range(e, from as u32, to as u32) {
                    if d.size(e) == 0 {
                        return Err((e, f));
                    }
                    if !queued[e] {
                        queued[e] = true;
                        queue.push(e);
                    }
                }
            }
        }
        Ok(())
    }

    fn branch(&mut self, d: &Domains, e: usize, l: u32) -> Result<Option<Domains>> {
        self.meter.tick()?;
        let mut child = d.clone();
        child.assign(e, l);
        match self.propagate(&mut child, vec![e]) {
            Ok(()) => Ok(Some(child)),
            Err((x, y)) => {
                self.weight[x] += 1;
                self.weight[y] += 1;
                Ok(None)
            }
        }
    }

    /// Smallest domain relative to weight, ties by index.
    fn pick_heuristic(&self, d: &Domains, scope: &[usize]) -> Option<usize> {
        scope
            .iter()
            .copied()
            .filter(|&e| d.size(e) > 1)
            .min_by(|&x, &y| {
                let lhs = d.size(x) as u64 * self.weight[y];
                let rhs = d.size(y) as u64 * self.weight[x];
                lhs.cmp(&rhs).then(x.cmp(&y))
            })
    }

    /// `first_solution` under restarts with a growing node cutoff; the
    /// edge weights learned in one attempt steer the next.
    fn search(&mut self, d: &Domains, scope: &[usize]) -> Result<Option<Domains>> {
        let mut span = 512u64;
        loop {
            self.meter.cutoff = Some(self.meter.nodes + span);
            let r = self.first_solution(d, scope);
            self.meter.cutoff = None;
            match r {
                Err(Error::Unknown) if self.meter.cut => {
                    self.meter.cut = false;
                    span += span / 2;
                }
                other => return other,
            }
        }
    }

    /// Splits the open edges of `scope` into independent parts and solves
    /// each on its own.
    fn first_solution(&mut self, d: &Domains, scope: &[usize]) -> Result<Option<Domains>> {
        let parts = self.components_within(d, scope);
        let mut acc = d.clone();
        for part in parts {
            match self.solve_part(&acc, &part)? {
                Some(sol) => {
                    for &e in &part {
                        acc.assign(e, sol.min(e).unwrap());
                    }
                }
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    fn solve_part(&mut self, d: &Domains, part: &[usize]) -> Result<Option<Domains>> {
        let Some(e) = self.pick_heuristic(d, part) else {
            return Ok(Some(d.clone()));
        };
        for l in d.labels(e) {
            if let Some(child) = self.branch(d, e, l)? {
                if let Some(sol) = self.first_solution(&child, part)? {
                    return Ok(Some(sol));
                }
            }
        }
        Ok(None)
    }

    fn components_within(&self, d: &Domains, scope: &[usize]) -> Vec<Vec<usize>> {
        // 0: outside, 1: open and unvisited, 2: visited
        let mut mark = vec![0u8; self.graph.edge_count()];
        for &e in scope {
            if d.size(e) > 1 {
                mark[e] = 1;
            }
        }
        let mut out = Vec::new();
        for &start in scope {
            if mark[start] != 1 {
                continue;
            }
            mark[start] = 2;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let e = comp[i];
                i += 1;
                for &(f, _) in &self.neighbors[e] {
                    if mark[f] == 1 {
                        mark[f] = 2;
                        comp.push(f);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components of the constraint graph restricted to
    /// non-singleton edges.
    fn components(&self, d: &Domains) -> Vec<Vec<usize>> {
        let m = self.graph.edge_count();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] || d.size(start) <= 1 {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let e = comp[i];
                i += 1;
                for &(f, _) in &self.neighbors[e] {
                    if !seen[f] && d.size(f) > 1 {
                        seen[f] = true;
                        comp.push(f);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Lexicographically first solution of one component.
    fn lex_first(&mut self, d: &Domains, comp: &[usize]) -> Result<Option<Domains>> {
        let Some(mut witness) = self.search(d, comp)? else {
            return Ok(None);
        };
        let mut prefix = d.clone();
        for &e in comp {
            let current = witness.min(e).unwrap();
            for l in prefix.labels(e).into_iter().take_while(|&l| l < current) {
                if let Some(child) = self.branch(&prefix, e, l)? {
                    if let Some(sol) = self.search(&child, comp)? {
                        witness = sol;
                        break;
                    }
                }
            }
            let l = witness.min(e).unwrap();
            prefix = self
                .branch(&prefix, e, l)?
                .expect("witness label is consistent with its own prefix");
        }
        Ok(Some(witness))
    }

    fn extract(d: &Domains, m: usize) -> Vec<u32> {
        (0..m).map(|e| d.min(e).unwrap()).collect()
    }

    /// First valid total labelling in lexicographic order, if any.
    pub fn decide(&mut self) -> Result<Option<EdgeLabelling>> {
        let Some(mut d) = self.initial() else {
            return Ok(None);
        };
        for comp in self.components(&d) {
            match self.lex_first(&d, &comp)? {
                Some(sol) => {
                    for &e in &comp {
                        d.assign(e, sol.min(e).unwrap());
                    }
                }
                None => return Ok(None),
            }
        }
        Ok(Some(EdgeLabelling::from_total(&Self::extract(
            &d,
            self.graph.edge_count(),
        ))))
    }

    /// Feasibility only; skips the lexicographic refinement.
    pub fn satisfiable(&mut self) -> Result<bool> {
        let Some(d) = self.initial() else {
            return Ok(false);
        };
        for comp in self.components(&d) {
            if self.search(&d, &comp)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Any solution, found by the heuristic search (not necessarily lex-first).
    pub fn any_solution(&mut self) -> Result<Option<EdgeLabelling>> {
        let Some(mut d) = self.initial() else {
            return Ok(None);
        };
        for comp in self.components(&d) {
            match self.search(&d, &comp)? {
                Some(sol) => {
                    for &e in &comp {
                        d.assign(e, sol.min(e).unwrap());
                    }
                }
                None => return Ok(None),
            }
        }
        Ok(Some(EdgeLabelling::from_total(&Self::extract(
            &d,
            self.graph.edge_count(),
        ))))
    }

    fn walk<F>(&mut self, d: &Domains, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let m = self.graph.edge_count();
        let Some(e) = (0..m).find(|&e| d.size(e) > 1) else {
            return Ok(visit(&Self::extract(d, m)));
        };
        for l in d.labels(e) {
            if let Some(child) = self.branch(d, e, l)? {
                if self.walk(&child, visit)?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Visits every valid total labelling in lexicographic order until the
    /// visitor breaks.
    pub fn for_each<F>(&mut self, mut visit: F) -> Result<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if let Some(d) = self.initial() {
            let _ = self.walk(&d, &mut visit)?;
        }
        Ok(())
    }

    pub fn enumerate(&mut self, limit: Option<usize>) -> Result<Vec<EdgeLabelling>> {
        let mut out = Vec::new();
        if limit == Some(0) {
            return Ok(out);
        }
        self.for_each(|labels| {
            out.push(EdgeLabelling::from_total(labels));
            if limit.is_some_and(|n| out.len() >= n) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(out)
    }

    fn count_in(&mut self, d: &Domains, scope: &[usize]) -> Result<u128> {
        let Some(e) = self.pick_heuristic(d, scope) else {
            return Ok(1);
        };
        let mut total = 0u128;
        for l in d.labels(e) {
            if let Some(child) = self.branch(d, e, l)? {
                total = total.saturating_add(self.count_in(&child, scope)?);
            }
        }
        Ok(total)
    }

    /// Number of valid total labellings (product over independent components).
    pub fn count(&mut self) -> Result<u128> {
        let Some(d) = self.initial() else {
            return Ok(0);
        };
        let mut total = 1u128;
        for comp in self.components(&d) {
            let c = self.count_in(&d, &comp)?;
            if c == 0 {
                return Ok(0);
            }
            total = total.saturating_mul(c);
        }
        Ok(total)
    }

    /// Exact label sets of the targets over all valid completions.
    pub fn project(&mut self, targets: &[usize]) -> Result<ProjectionTable> {
        let mut table: ProjectionTable = targets.iter().map(|&t| (t, BTreeSet::new())).collect();
        for &t in targets {
            if t >= self.graph.edge_count() {
                return Err(Error::EdgeOutOfRange(t));
            }
        }
        let Some(d) = self.initial() else {
            return Ok(table);
        };
        let comps = self.components(&d);
        // one witness per component is enough to decide feasibility of the rest
        for comp in &comps {
            if self.search(&d, comp)?.is_none() {
                return Ok(table);
            }
        }
        for &t in targets {
            let Some(comp) = comps.iter().find(|c| c.binary_search(&t).is_ok()) else {
                table.get_mut(&t).unwrap().insert(d.min(t).unwrap());
                continue;
            };
            for l in d.labels(t) {
                if table[&t].contains(&l) {
                    continue;
                }
                let Some(child) = self.branch(&d, t, l)? else {
                    continue;
                };
                if let Some(sol) = self.search(&child, comp)? {
                    for &u in targets {
                        table.get_mut(&u).unwrap().insert(sol.min(u).unwrap());
                    }
                }
            }
        }
        Ok(table)
    }
}

pub fn decide(
    g: &Graph,
    params: Params,
    fixed: &EdgeLabelling,
    budget: SearchBudget,
) -> Result<Option<EdgeLabelling>> {
    Solver::new(g, params)
        .with_budget(budget)
        .with_fixed(fixed)?
        .decide()
}

pub fn enumerate(
    g: &Graph,
    params: Params,
    fixed: &EdgeLabelling,
    limit: Option<usize>,
    budget: SearchBudget,
) -> Result<Vec<EdgeLabelling>> {
    Solver::new(g, params)
        .with_budget(budget)
        .with_fixed(fixed)?
        .enumerate(limit)
}

pub fn project(
    g: &Graph,
    params: Params,
    fixed: &EdgeLabelling,
    targets: &[usize],
    budget: SearchBudget,
) -> Result<ProjectionTable> {
    Solver::new(g, params)
        .with_budget(budget)
        .with_fixed(fixed)?
        .project(targets)
}

pub fn count(g: &Graph, params: Params, budget: SearchBudget) -> Result<u128> {
    Solver::new(g, params).with_budget(budget).count()
}

/// Smallest `k <= k_max` admitting a labelling. Scans upward, since validity
/// at `k` implies validity at `k + 1`.
pub fn min_k(g: &Graph, p: u32, q: u32, k_max: u32, budget: SearchBudget) -> Result<Option<u32>> {
    let deadline = budget.time_limit.map(|t| Instant::now() + t);
    let mut spent = 0u64;
    for k in 1..=k_max {
        let remaining = SearchBudget {
            node_limit: budget.node_limit.map(|l| l.saturating_sub(spent)),
            time_limit: deadline.map(|d| d.saturating_duration_since(Instant::now())),
        };
        let mut s = Solver::new(g, Params { p, q, k }).with_budget(remaining);
        let found = s.satisfiable()?;
        spent += s.nodes();
        if found {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn p(p: u32, q: u32, k: u32) -> Params {
        Params::new(p, q, k).unwrap()
    }

    fn none() -> EdgeLabelling {
        EdgeLabelling::new()
    }

    #[test]
    fn decide_single_edge() {
        let g = path(1);
        let sol = decide(&g, p(7, 5, 1), &none(), SearchBudget::unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(sol.get(0), Some(0));
    }

    #[test]
    fn enumerate_examples() {
        let two = enumerate(
            &path(2),
            p(1, 0, 2),
            &none(),
            None,
            SearchBudget::unlimited(),
        )
        .unwrap();
        assert_eq!(
            two,
            vec![
                EdgeLabelling::from_total(&[0, 1]),
                EdgeLabelling::from_total(&[1, 0])
            ]
        );
        let tri = enumerate(
            &complete(3),
            p(0, 1, 3),
            &none(),
            None,
            SearchBudget::unlimited(),
        )
        .unwrap();
        assert_eq!(tri.len(), 6);
        assert!(tri.windows(2).all(|w| w[0] < w[1]));
        assert!(enumerate(
            &complete(3),
            p(0, 1, 2),
            &none(),
            None,
            SearchBudget::unlimited()
        )
        .unwrap()
        .is_empty());
        let lim = enumerate(
            &complete(3),
            p(0, 1, 3),
            &none(),
            Some(2),
            SearchBudget::unlimited(),
        )
        .unwrap();
        assert_eq!(lim, tri[..2].to_vec());
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            count(&path(2), p(1, 0, 2), SearchBudget::unlimited()).unwrap(),
            2
        );
        assert_eq!(
            count(&complete(3), p(0, 1, 3), SearchBudget::unlimited()).unwrap(),
            6
        );
    }

    #[test]
    fn project_single_edge() {
        let t = project(
            &path(1),
            p(1, 1, 3),
            &none(),
            &[0],
            SearchBudget::unlimited(),
        )
        .unwrap();
        assert_eq!(t[&0], BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn min_k_examples() {
        assert_eq!(
            min_k(&path(1), 9, 4, 5, SearchBudget::unlimited()).unwrap(),
            Some(1)
        );
        assert_eq!(
            min_k(&star(3), 3, 2, 20, SearchBudget::unlimited()).unwrap(),
            Some(7)
        );
        assert_eq!(
            min_k(&star(3), 3, 2, 6, SearchBudget::unlimited()).unwrap(),
            None
        );
    }

    #[test]
    fn fixed_prefix_errors() {
        let g = path(2);
        let bad = EdgeLabelling::new().with(0, 1).with(1, 1);
        assert_eq!(
            decide(&g, p(1, 0, 3), &bad, SearchBudget::unlimited()).unwrap_err(),
            Error::InfeasiblePrefix(0, 1)
        );
        let out = EdgeLabelling::new().with(0, 5);
        assert!(matches!(
            decide(&g, p(1, 0, 3), &out, SearchBudget::unlimited()),
            Err(Error::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let g = complete(5);
        let r = decide(&g, p(1, 1, 10), &none(), SearchBudget::nodes(3));
        assert_eq!(r, Err(Error::Unknown));
    }

    #[test]
    fn remove_range_across_words() {
        let mut d = Domains::full(1, 130);
        assert!(d.remove_range(0, 60, 70));
        assert_eq!(d.size(0), 130 - 11);
        assert_eq!(d.max(0), Some(129));
        assert!(!d.contains(0, 64));
        assert!(d.remove_range(0, 0, 129));
        assert_eq!(d.min(0), None);
    }
}
