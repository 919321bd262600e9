//! Gadget graphs with named ports, their truth/colour template labellings,
//! and the port-fusing assembly used by the reductions.

use crate::error::{Error, Result};
use crate::graph::{EdgeLabelling, Graph, Params};
use crate::regime::{Regime, RegimeSpec};
use crate::solver::Solver;
use std::collections::{BTreeMap, BTreeSet};

/// A named attachment point. Hub-style clause ports have no edge, only a
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Port {
    pub edge: Option<usize>,
    pub anchor: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub graph: Graph,
    pub ports: BTreeMap<String, Port>,
    /// Template labellings by name, each with the params it is valid for.
    pub templates: BTreeMap<String, (Params, EdgeLabelling)>,
    pub consumed: BTreeSet<String>,
}

impl Gadget {
    pub fn port(&self, name: &str) -> Result<Port> {
        self.ports
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPort(name.to_string()))
    }

    pub fn port_edge(&self, name: &str) -> Result<usize> {
        self.port(name)?
            .edge
            .ok_or_else(|| Error::UnknownPort(format!("{name} (no edge)")))
    }

    /// Ports whose names start with `prefix`, in name order.
    pub fn ports_with_prefix<'a>(
        &'a self,
        prefix: &'a str,
    ) -> impl Iterator<Item = (&'a str, Port)> + 'a {
        self.ports
            .iter()
            .filter(move |(n, _)| n.starts_with(prefix))
            .map(|(n, p)| (n.as_str(), *p))
    }

    /// `port <name> <edge_index>` per edge-backed port.
    pub fn port_manifest(&self) -> String {
        let mut out = String::new();
        for (name, port) in &self.ports {
            if let Some(e) = port.edge {
                out.push_str(&format!("port {name} {e}\n"));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttachMode {
    /// Fuse the two anchor vertices.
    IdentifyLeaf,
    /// Fuse a host anchor into a clause hub (a guest port with no edge).
    HubUnion,
    /// Merge the two port edges into one so that the host edge and the
    /// guest edge's neighbour form a path.
    IdentifyEdge,
}

/// Disjoint union of gadgets followed by vertex fusions and edge drops.
#[derive(Debug, Default)]
pub struct Assembly {
    n: usize,
    edges: Vec<(usize, usize)>,
    parent: Vec<usize>,
    /// guest edge -> host edge it was merged into
    merged: BTreeMap<usize, usize>,
    ports: BTreeMap<String, Port>,
    consumed: BTreeSet<String>,
}

impl Assembly {
    pub fn new() -> Self {
        Self::default()
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Copies a gadget in, naming its ports `<prefix><name>`. Returns the
    /// offset of its first edge.
    pub fn add(&mut self, g: &Gadget, prefix: &str) -> usize {
        let (v0, e0) = (self.n, self.edges.len());
        self.n += g.graph.vertex_count();
        self.parent.extend(v0..self.n);
        self.edges
            .extend(g.graph.edges().iter().map(|&(u, v)| (u + v0, v + v0)));
        for (name, p) in &g.ports {
            let port = Port {
                edge: p.edge.map(|e| e + e0),
                anchor: p.anchor + v0,
            };
            self.ports.insert(format!("{prefix}{name}"), port);
        }
        for name in &g.consumed {
            self.consumed.insert(format!("{prefix}{name}"));
        }
        e0
    }

    pub fn port(&self, name: &str) -> Result<Port> {
        self.ports
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPort(name.to_string()))
    }

    fn consume(&mut self, name: &str) -> Result<Port> {
        let port = self.port(name)?;
        if !self.consumed.insert(name.to_string()) {
            return Err(Error::PortReuse(name.to_string()));
        }
        Ok(port)
    }

    fn fuse(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller id so earlier parts keep their numbering
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Joins two ports of the assembly; both are marked consumed.
    pub fn join(&mut self, host_port: &str, guest_port: &str, mode: AttachMode) -> Result<()> {
        if host_port == guest_port {
            return Err(Error::BadAttach);
        }
        let h = self.consume(host_port)?;
        let g = self.consume(guest_port)?;
        match mode {
            AttachMode::IdentifyLeaf => {
                if h.edge.is_none() || g.edge.is_none() {
                    return Err(Error::BadAttach);
                }
                self.fuse(h.anchor, g.anchor);
            }
            AttachMode::HubUnion => {
                if g.edge.is_some() {
                    return Err(Error::BadAttach);
                }
                self.fuse(h.anchor, g.anchor);
            }
            AttachMode::IdentifyEdge => {
                let (Some(he), Some(ge)) = (h.edge, g.edge) else {
                    return Err(Error::BadAttach);
                };
                let h_inner = self.other_end(he, h.anchor);
                let g_inner = self.other_end(ge, g.anchor);
                self.fuse(h.anchor, g_inner);
                self.fuse(h_inner, g.anchor);
                self.merged.insert(ge, he);
            }
        }
        Ok(())
    }

    /// Builds the fused graph. Ports keep their names; edge indices follow
    /// insertion order with merged edges removed.
    pub fn finish(self) -> Result<Gadget> {
        Ok(self.finish_with_map()?.0)
    }

    /// Like `finish`, also returning where each inserted edge ended up.
    pub fn finish_with_map(mut self) -> Result<(Gadget, Vec<usize>)> {
        let mut id = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            let r = self.find(v);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            id[v] = id[r];
        }
        let mut edge_id = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if !self.merged.contains_key(&i) {
                edge_id[i] = edges.len();
                edges.push((id[u], id[v]));
            }
        }
        for (&guest, &host) in &self.merged {
            let mut h = host;
            while let Some(&next) = self.merged.get(&h) {
                h = next;
            }
            edge_id[guest] = edge_id[h];
        }
        let graph = Graph::new(next, edges).map_err(|_| Error::BadAttach)?;
        let ports = self
            .ports
            .into_iter()
            .map(|(name, p)| {
                (
                    name,
                    Port {
                        edge: p.edge.map(|e| edge_id[e]),
                        anchor: id[p.anchor],
                    },
                )
            })
            .collect();
        let g = Gadget {
            graph,
            ports,
            templates: BTreeMap::new(),
            consumed: self.consumed,
        };
        Ok((g, edge_id))
    }
}

/// Joins `guest` to `host` at the named ports. Guest ports are renamed with
/// a `guest.` prefix.
pub fn attach(
    host: &Gadget,
    host_port: &str,
    guest: &Gadget,
    guest_port: &str,
    mode: AttachMode,
) -> Result<Gadget> {
    if std::ptr::eq(host, guest) && host_port == guest_port {
        return Err(Error::BadAttach);
    }
    host.port(host_port)?;
    guest.port(guest_port)?;
    let mut asm = Assembly::new();
    asm.add(host, "");
    asm.add(guest, "guest.");
    asm.join(host_port, &format!("guest.{guest_port}"), mode)?;
    asm.finish()
}

/// What an edge is inside a chained construction; templates are written
/// against these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Inner { unit: usize, arm: usize },
    Pendant { unit: usize, arm: usize },
    Forcer { unit: usize, i: usize },
    Other,
}

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    roles: Vec<Role>,
    ports: BTreeMap<String, Port>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, u: usize, v: usize, role: Role) -> usize {
        self.edges.push((u, v));
        self.roles.push(role);
        self.edges.len() - 1
    }

    fn port(&mut self, name: String, edge: Option<usize>, anchor: usize) {
        self.ports.insert(name, Port { edge, anchor });
    }

    fn finish(self) -> Result<(Gadget, Vec<Role>)> {
        let graph = Graph::new(self.n, self.edges)?;
        let g = Gadget {
            graph,
            ports: self.ports,
            templates: BTreeMap::new(),
            consumed: BTreeSet::new(),
        };
        Ok((g, self.roles))
    }
}

/// K_{1,n} with every edge subdivided. Centre 0, inner vertices 1..=n,
/// leaves n+1..=2n; inner edges come first.
pub fn extended_star(n: usize) -> Result<Gadget> {
    if n < 2 {
        return Err(Error::DegenerateStar(n));
    }
    let mut b = Builder::default();
    let c = b.vertex();
    let inner: Vec<usize> = (0..n).map(|_| b.vertex()).collect();
    let leaves: Vec<usize> = (0..n).map(|_| b.vertex()).collect();
    for (arm, &x) in inner.iter().enumerate() {
        let e = b.edge(c, x, Role::Inner { unit: 0, arm });
        b.port(format!("inner[{arm}]"), Some(e), x);
    }
    for arm in 0..n {
        let e = b.edge(inner[arm], leaves[arm], Role::Pendant { unit: 0, arm });
        b.port(format!("pendant[{arm}]"), Some(e), leaves[arm]);
    }
    Ok(b.finish()?.0)
}

const L: usize = 0;
const R: usize = 1;
const T: usize = 2;
const D: usize = 3;

/// Extended n-stars in a chain: unit s's right pendant doubles as unit
/// s+1's left pendant. Port `var[s]` is unit s's top pendant. With
/// `forcer`, a 5-star hangs off every down leaf.
fn chain(n: usize, units: usize, forcer: bool) -> Result<(Gadget, Vec<Role>)> {
    let mut b = Builder::default();
    let mut prev_right_leaf = None;
    for s in 0..units {
        let c = b.vertex();
        let mut inner = Vec::with_capacity(n);
        let mut leaf = vec![None; n];
        for arm in 0..n {
            match (arm, prev_right_leaf) {
                (L, Some(y)) => inner.push(y),
                _ => inner.push(b.vertex()),
            }
        }
        for (arm, slot) in leaf.iter_mut().enumerate() {
            if arm != L || s == 0 {
                *slot = Some(b.vertex());
            }
        }
        for (arm, &x) in inner.iter().enumerate() {
            b.edge(c, x, Role::Inner { unit: s, arm });
        }
        for arm in 0..n {
            if let Some(y) = leaf[arm] {
                let e = b.edge(inner[arm], y, Role::Pendant { unit: s, arm });
                if arm == T {
                    b.port(format!("var[{s}]"), Some(e), y);
                }
            }
        }
        if forcer {
            let f = b.vertex();
            b.edge(f, leaf[D].unwrap(), Role::Forcer { unit: s, i: 0 });
            for i in 1..5 {
                let z = b.vertex();
                b.edge(f, z, Role::Forcer { unit: s, i });
            }
        }
        prev_right_leaf = leaf[R];
    }
    b.finish()
}

fn from_roles(roles: &[Role], f: impl Fn(Role) -> u32) -> EdgeLabelling {
    roles.iter().enumerate().map(|(e, &r)| (e, f(r))).collect()
}

fn store(g: &mut Gadget, spec: &RegimeSpec, name: &str, reduced: EdgeLabelling) {
    g.templates
        .insert(name.to_string(), (spec.params(), reduced.scaled(spec.gcd)));
}

/// Largest label at the reduced params.
fn top_label(spec: &RegimeSpec) -> u32 {
    spec.reduced_params().k - 1
}

fn beyond2_gadget(spec: &RegimeSpec, units: usize) -> Result<Gadget> {
    let n = spec.star_degree.unwrap() as usize;
    let (a, _) = spec.reduced_pair();
    let top = top_label(spec);
    let (mut g, roles) = chain(n, units, false)?;
    let n32 = n as u32;
    let high = from_roles(&roles, |r| match r {
        Role::Inner { arm: L, .. } => (n32 - 2) * a,
        Role::Inner { arm: R, .. } => 0,
        Role::Inner { arm: T, .. } => (n32 - 1) * a,
        Role::Inner { arm, .. } => (arm as u32 - 2) * a,
        _ => top,
    });
    store(&mut g, spec, "true", high.inverted(top + 1));
    store(&mut g, spec, "false", high);
    Ok(g)
}

fn one_to_2_gadget(spec: &RegimeSpec, units: usize) -> Result<Gadget> {
    let (a, _) = spec.reduced_pair();
    let (mut g, roles) = chain(4, units, true)?;
    let high = from_roles(&roles, |r| match r {
        Role::Inner { arm: L, .. } => 2 * a,
        Role::Inner { arm: R, .. } => 0,
        Role::Inner { arm: T, .. } => 3 * a,
        Role::Inner { .. } => a,
        Role::Forcer { i: 0, .. } => 4 * a,
        Role::Forcer { i, .. } => (i as u32 - 1) * a,
        _ => 5 * a,
    });
    store(&mut g, spec, "true", high.inverted(5 * a + 1));
    store(&mut g, spec, "false", high);
    Ok(g)
}

fn two_thirds_to_1_gadget(spec: &RegimeSpec, units: usize) -> Result<Gadget> {
    let (a, b) = spec.reduced_pair();
    let (mut g, roles) = chain(4, units, false)?;
    let first = from_roles(&roles, |r| match r {
        Role::Inner { arm: L, .. } => 0,
        Role::Inner { arm: R, .. } => 2 * a + b,
        Role::Inner { arm: T, .. } => a + b,
        Role::Inner { .. } => 3 * a + b,
        Role::Pendant { arm: R, .. } | Role::Pendant { arm: L, .. } => a,
        _ => b,
    });
    let second = from_roles(&roles, |r| match r {
        Role::Inner { arm: L, .. } => 0,
        Role::Inner { arm: R, .. } => 3 * a + b,
        Role::Inner { arm: T, .. } => 2 * a + b,
        Role::Inner { .. } => a,
        Role::Pendant { arm: D, .. } => 2 * a,
        _ => a + b,
    });
    store(&mut g, spec, "colour2", first.inverted(3 * a + b + 1));
    store(&mut g, spec, "colour0", first);
    store(&mut g, spec, "colour1", second);
    Ok(g)
}

/// Units alternate between two star labellings; the arrays are
/// [left, right, top, down] for inner edges then pendants.
fn eq_two_thirds_gadget(spec: &RegimeSpec, units: usize) -> Result<Gadget> {
    const FALSE: [([u32; 4], [u32; 4]); 2] =
        [([0, 11, 4, 7], [9, 2, 9, 2]), ([7, 4, 11, 0], [2, 9, 2, 9])];
    const TRUE: [([u32; 4], [u32; 4]); 2] =
        [([0, 3, 11, 8], [5, 6, 6, 5]), ([0, 11, 3, 8], [6, 5, 6, 5])];
    let (mut g, roles) = chain(4, units, false)?;
    for (name, table) in [("false", FALSE), ("true", TRUE)] {
        let lab = from_roles(&roles, |r| match r {
            Role::Inner { unit, arm } => table[unit % 2].0[arm],
            Role::Pendant { unit, arm } => table[unit % 2].1[arm],
            _ => unreachable!(),
        });
        store(&mut g, spec, name, lab);
    }
    Ok(g)
}

/// Triangle on a connector to a star of `occ` pendants (labels mod 3).
fn colouring_variable(spec: &RegimeSpec, occ: usize) -> Result<Gadget> {
    let mut b = Builder::default();
    let [t0, tl, tr, c] = [0, 0, 0, 0].map(|_| b.vertex());
    b.edge(tl, tr, Role::Other);
    b.edge(t0, tl, Role::Other);
    b.edge(t0, tr, Role::Other);
    b.edge(t0, c, Role::Other);
    for i in 0..occ {
        let p = b.vertex();
        let e = b.edge(c, p, Role::Other);
        b.port(format!("var[{i}]"), Some(e), p);
    }
    let (mut g, _) = b.finish()?;
    for i in 0..3u32 {
        let (up, down) = ((i + 1) % 3, (i + 2) % 3);
        let mut lab = EdgeLabelling::from_total(&[i, up, down, down]);
        for e in 4..4 + occ {
            lab.set(e, i);
        }
        store(&mut g, spec, &format!("colour{i}"), lab);
    }
    Ok(g)
}

/// Triangle X, Z, W with two-edge paths hanging from X and Z.
fn colouring_clause(spec: &RegimeSpec) -> Result<Gadget> {
    let mut b = Builder::default();
    let [x, z, w, xa, xb, za, zb] = [0; 7].map(|_| b.vertex());
    b.edge(x, z, Role::Other);
    b.edge(x, w, Role::Other);
    b.edge(z, w, Role::Other);
    b.edge(x, xa, Role::Other);
    let e = b.edge(xa, xb, Role::Other);
    b.port("lit[0]".into(), Some(e), xb);
    b.edge(z, za, Role::Other);
    let e = b.edge(za, zb, Role::Other);
    b.port("lit[1]".into(), Some(e), zb);
    b.port("hub".into(), None, w);
    let (mut g, _) = b.finish()?;
    for i in 0..3u32 {
        for j in (0..3u32).filter(|&j| j != i) {
            let r = 3 - i - j;
            let lab = EdgeLabelling::from_total(&[r, j, i, (i + 1) % 3, i, (j + 1) % 3, j]);
            store(&mut g, spec, &format!("pendants{i}{j}"), lab);
        }
    }
    Ok(g)
}

/// Extended 4-star arms for the 2-in-4 gadget: 0 upper left, 1 upper right,
/// 2 lower left, 3 lower right. Returns the leaves; `shared` replaces
/// arm 0's inner vertex (and drops its pendant).
fn plain_star(b: &mut Builder, shared: Option<usize>) -> [usize; 4] {
    let c = b.vertex();
    let mut inner = [0; 4];
    for (arm, slot) in inner.iter_mut().enumerate() {
        *slot = match (arm, shared) {
            (0, Some(v)) => v,
            _ => b.vertex(),
        };
    }
    let mut leaf = [usize::MAX; 4];
    for (arm, slot) in leaf.iter_mut().enumerate() {
        if arm != 0 || shared.is_none() {
            *slot = b.vertex();
        }
    }
    for &x in &inner {
        b.edge(c, x, Role::Other);
    }
    for arm in 0..4 {
        if leaf[arm] != usize::MAX {
            b.edge(inner[arm], leaf[arm], Role::Other);
        }
    }
    leaf
}

/// Basic part of 2·occ+1 linked stars carrying 2·occ verticals, the end
/// gadget that forces all verticals equal, and one protrusion per
/// occurrence: a top vertex over two consecutive verticals.
fn two_in_four_variable(spec: &RegimeSpec, occ: usize) -> Result<Gadget> {
    let mut b = Builder::default();
    let m = 2 * occ + 1;
    let stars: Vec<[usize; 4]> = (0..m).map(|_| plain_star(&mut b, None)).collect();
    let mut uppers = Vec::new();
    for j in 0..m - 1 {
        b.edge(stars[j][1], stars[j + 1][0], Role::Other);
        b.edge(stars[j][3], stars[j + 1][2], Role::Other);
        let p = b.vertex();
        let e = b.edge(stars[j + 1][0], p, Role::Other);
        b.port(format!("vertical[{j}]"), Some(e), p);
        uppers.push(p);
    }
    let e1 = plain_star(&mut b, None);
    b.edge(e1[2], e1[0], Role::Other);
    let e2 = plain_star(&mut b, Some(e1[1]));
    b.edge(e2[2], e2[1], Role::Other);
    b.edge(e1[3], stars[0][2], Role::Other);
    b.edge(e2[3], stars[0][0], Role::Other);
    for o in 0..occ {
        let top = b.vertex();
        let e = b.edge(top, uppers[2 * o], Role::Other);
        b.port(format!("var[{o}]"), Some(e), top);
        b.edge(top, uppers[2 * o + 1], Role::Other);
    }
    let (mut g, _) = b.finish()?;
    let params = spec.reduced_params();
    let (a, q) = spec.reduced_pair();
    for (name, label) in [("true", 0), ("false", 4 * q + a)] {
        let fixed: EdgeLabelling = (0..2 * occ)
            .map(|j| (g.port_edge(&format!("vertical[{j}]")).unwrap(), label))
            .collect();
        let lab = Solver::new(&g.graph, params)
            .with_fixed(&fixed)?
            .decide()?
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "no {name} labelling of the 2-in-4 variable gadget at {params:?}"
                ))
            })?;
        store(&mut g, spec, name, lab);
    }
    Ok(g)
}

/// Centre with four paths of length four; `lit[j]` is the far edge of path j.
fn two_in_four_clause() -> Result<Gadget> {
    let mut b = Builder::default();
    let hub = b.vertex();
    for j in 0..4 {
        let mut prev = hub;
        for step in 0..4 {
            let v = b.vertex();
            let e = b.edge(prev, v, Role::Other);
            if step == 3 {
                b.port(format!("lit[{j}]"), Some(e), v);
            }
            prev = v;
        }
    }
    let (mut g, _) = b.finish()?;
    g.ports.insert(
        "hub".into(),
        Port {
            edge: None,
            anchor: hub,
        },
    );
    Ok(g)
}

fn hub_clause(width: usize) -> Result<Gadget> {
    let mut b = Builder::default();
    let hub = b.vertex();
    for j in 0..width {
        b.port(format!("lit[{j}]"), None, hub);
    }
    b.port("hub".into(), None, hub);
    Ok(b.finish()?.0)
}

/// Variable (or vertex) gadget with `occurrences` ports `var[i]` and its
/// truth or colour templates.
pub fn variable_gadget(spec: &RegimeSpec, occurrences: usize) -> Result<Gadget> {
    spec.ensure_constructible()?;
    if occurrences == 0 {
        return Err(Error::InvalidParams(
            "a variable gadget needs at least one occurrence".into(),
        ));
    }
    match spec.regime {
        Regime::QZeroP => Err(Error::Unsupported(
            "q = 0 reduces by the identity; there are no gadgets".into(),
        )),
        Regime::PZeroQ => colouring_variable(spec, occurrences),
        Regime::Beyond2 => beyond2_gadget(spec, occurrences),
        Regime::OneTo2 => one_to_2_gadget(spec, occurrences),
        Regime::TwoThirdsTo1 => two_thirds_to_1_gadget(spec, occurrences),
        Regime::EqTwoThirds => eq_two_thirds_gadget(spec, occurrences),
        Regime::HalfToTwoThirds => two_in_four_variable(spec, occurrences),
        Regime::Eq1 | Regime::UpToHalf => unreachable!(),
    }
}

/// Clause (or edge) gadget with ports `lit[j]`, one per literal.
pub fn clause_gadget(spec: &RegimeSpec) -> Result<Gadget> {
    spec.ensure_constructible()?;
    match spec.regime {
        Regime::QZeroP => Err(Error::Unsupported(
            "q = 0 reduces by the identity; there are no gadgets".into(),
        )),
        Regime::PZeroQ => colouring_clause(spec),
        Regime::HalfToTwoThirds => two_in_four_clause(),
        _ => hub_clause(spec.clause_width()),
    }
}

/// How a variable port meets a clause port in each regime.
pub fn attach_mode(regime: Regime) -> AttachMode {
    match regime {
        Regime::PZeroQ => AttachMode::IdentifyEdge,
        Regime::HalfToTwoThirds => AttachMode::IdentifyLeaf,
        _ => AttachMode::HubUnion,
    }
}
