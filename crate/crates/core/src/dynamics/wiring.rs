//! Functional wiring diagrams, edge signs and elementary circuits.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffpoly::space_size;
use crate::model::Pds;

/// Default bound on the evaluations spent verifying one edge.
pub const DEFAULT_EDGE_CHECK_CAP: u64 = 1 << 20;

/// Default bound on the number of circuits enumerated.
pub const DEFAULT_CIRCUIT_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
    Ambivalent,
}

impl Sign {
    /// Sign of a path: ambivalent if any edge is, otherwise by the parity of negatives.
    pub fn product(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Ambivalent, _) | (_, Sign::Ambivalent) => Sign::Ambivalent,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "positive",
            Sign::Negative => "negative",
            Sign::Ambivalent => "ambivalent",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Only computed over F_2, and only for verified edges.
    pub sign: Option<Sign>,
    /// False when the check was skipped and the edge comes from the polynomial's
    /// support alone.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WiringDiagram {
    nvars: usize,
    /// Sorted by (target, source).
    edges: Vec<Edge>,
}

impl WiringDiagram {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, source: usize, target: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.source == source && e.target == target)
    }

    pub fn is_verified(&self) -> bool {
        self.edges.iter().all(|e| e.verified)
    }

    /// Outgoing neighbours of every node, sorted.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nvars];
        for e in &self.edges {
            adj[e.source].push(e.target);
        }
        for out in &mut adj {
            out.sort_unstable();
        }
        adj
    }

    /// Whether every node reaches every other node.
    pub fn is_strongly_connected(&self) -> bool {
        if self.nvars == 0 {
            return false;
        }
        let adj = self.adjacency();
        let mut rev = vec![Vec::new(); self.nvars];
        for (s, out) in adj.iter().enumerate() {
            for &t in out {
                rev[t].push(s);
            }
        }
        reaches_all(&adj) && reaches_all(&rev)
    }
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Edge `i -> j` iff changing only `x_i` changes `f_j` at some state.
///
/// Only the variables in the support of `f_j` matter, so each candidate edge is
/// checked on the support's subspace, `p^|support|` evaluations. Candidates above
/// `cap` evaluations are kept unverified.
pub fn wiring_diagram(f: &Pds, cap: u64) -> WiringDiagram {
    let field = f.field();
    let p = field.characteristic();
    let n = f.nvars();
    let mut edges = Vec::new();
    for (j, fj) in f.functions().iter().enumerate() {
        let support = fj.support();
        let checkable = space_size(field, support.len()).is_some_and(|s| s <= cap);
        for &i in &support {
            if !checkable {
                edges.push(Edge {
                    source: i,
                    target: j,
                    sign: None,
                    verified: false,
                });
                continue;
            }
            let mut point = vec![0u32; n];
            let mut functional = false;
            let (mut up, mut down) = (false, false);
            let others: Vec<usize> = support.iter().copied().filter(|&v| v != i).collect();
            for_each_point(&others, p, &mut point, &mut |point| {
                let mut values = Vec::with_capacity(p as usize);
                for a in 0..p {
                    point[i] = a;
                    values.push(fj.eval(point));
                }
                point[i] = 0;
                if values.iter().any(|&v| v != values[0]) {
                    functional = true;
                }
                if p == 2 {
                    match (values[0], values[1]) {
                        (0, 1) => up = true,
                        (1, 0) => down = true,
                        _ => {}
                    }
                }
            });
            if !functional {
                continue;
            }
            let sign = (p == 2).then_some(match (up, down) {
                (true, false) => Sign::Positive,
                (false, true) => Sign::Negative,
                _ => Sign::Ambivalent,
            });
            edges.push(Edge {
                source: i,
                target: j,
                sign,
                verified: true,
            });
        }
    }
    edges.sort_by_key(|e| (e.target, e.source));
    WiringDiagram { nvars: n, edges }
}

/// Visit every assignment of `vars` (other coordinates untouched).
fn for_each_point(vars: &[usize], p: u32, point: &mut [u32], visit: &mut dyn FnMut(&mut [u32])) {
    for &v in vars {
        point[v] = 0;
    }
    loop {
        visit(point);
        let mut k = vars.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            let v = vars[k];
            if point[v] + 1 < p {
                point[v] += 1;
                break;
            }
            point[v] = 0;
        }
    }
}

/// An elementary circuit, listed from its smallest node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    pub nodes: Vec<usize>,
    /// `None` when some edge has no computed sign.
    pub sign: Option<Sign>,
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.nodes.iter().map(|v| format!("x{}", v + 1)).collect();
        write!(f, "({})", names.join(", "))?;
        if let Some(s) = self.sign {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitReport {
    pub circuits: Vec<Circuit>,
    /// False when enumeration stopped at the cap.
    pub complete: bool,
}

/// All elementary circuits of a Boolean system's wiring diagram (Johnson's algorithm),
/// stopping after `cap` circuits.
pub fn functional_circuits(f: &Pds, cap: usize) -> Result<CircuitReport> {
    if f.field().characteristic() != 2 {
        return Err(Error::Unsupported(
            "circuit analysis is only implemented for Boolean (p = 2) systems".into(),
        ));
    }
    let wiring = wiring_diagram(f, DEFAULT_EDGE_CHECK_CAP);
    Ok(circuits_of(&wiring, cap))
}

/// Elementary circuits of any wiring diagram.
pub fn circuits_of(wiring: &WiringDiagram, cap: usize) -> CircuitReport {
    let cycles = elementary_cycles(&wiring.adjacency(), cap);
    let complete = cycles.len() <= cap;
    let mut circuits: Vec<Circuit> = cycles
        .into_iter()
        .take(cap)
        .map(|nodes| {
            let mut sign = Some(Sign::Positive);
            for k in 0..nodes.len() {
                let (s, t) = (nodes[k], nodes[(k + 1) % nodes.len()]);
                let edge_sign = wiring.edge(s, t).and_then(|e| e.sign);
                sign = match (sign, edge_sign) {
                    (Some(a), Some(b)) => Some(a.product(b)),
                    _ => None,
                };
            }
            Circuit { nodes, sign }
        })
        .collect();
    circuits.sort();
    CircuitReport { circuits, complete }
}

/// Johnson's algorithm: elementary cycles, each starting at its smallest node. At most
/// `cap + 1` cycles are produced so callers can tell whether the cap was hit.
fn elementary_cycles(adj: &[Vec<usize>], cap: usize) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    for s in 0..n {
        if out.len() > cap {
            break;
        }
        // Restrict to nodes >= s and keep the strongly connected component of s.
        let component = component_of(adj, s);
        if !component[s] {
            continue;
        }
        let sub: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                if component[u] {
                    adj[u].iter().copied().filter(|&v| component[v]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut search = Johnson {
            adj: &sub,
            blocked: vec![false; n],
            b: vec![Vec::new(); n],
            stack: Vec::new(),
            out: &mut out,
            limit: cap + 1,
        };
        search.circuit(s, s);
    }
    out
}

/// Nodes `>= s` in the strongly connected component of `s` within that subgraph; `s`
/// itself is only included when the component contains a cycle.
fn component_of(adj: &[Vec<usize>], s: usize) -> Vec<bool> {
    let n = adj.len();
    let forward = reach(adj, s);
    let mut rev = vec![Vec::new(); n];
    for (u, out) in adj.iter().enumerate() {
        for &v in out {
            rev[v].push(u);
        }
    }
    let backward = reach(&rev, s);
    let mut comp: Vec<bool> = (0..n).map(|u| forward[u] && backward[u]).collect();
    let self_loop = adj[s].contains(&s);
    let others = comp.iter().enumerate().any(|(u, &c)| c && u != s);
    comp[s] = self_loop || others;
    comp
}

/// Nodes reachable from `from` through nodes `>= from`.
fn reach(adj: &[Vec<usize>], from: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if v >= from && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    blocked: Vec<bool>,
    b: Vec<Vec<usize>>,
    stack: Vec<usize>,
    out: &'a mut Vec<Vec<usize>>,
    limit: usize,
}

impl Johnson<'_> {
    fn circuit(&mut self, v: usize, s: usize) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for k in 0..self.adj[v].len() {
            if self.out.len() >= self.limit {
                break;
            }
            let w = self.adj[v][k];
            if w == s {
                self.out.push(self.stack.clone());
                found = true;
            } else if !self.blocked[w] && self.circuit(w, s) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for k in 0..self.adj[v].len() {
                let w = self.adj[v][k];
                if !self.b[w].contains(&v) {
                    self.b[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }

    fn unblock(&mut self, u: usize) {
        let mut pending = vec![u];
        while let Some(u) = pending.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            pending.append(&mut self.b[u]);
        }
    }
}
