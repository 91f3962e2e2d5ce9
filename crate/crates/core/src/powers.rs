//! Bases of the set of d-th powers: the basis graph, its min-degree core
//! and walks with pairwise-distinct edges.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::par::{map_collect, Exec};
use crate::rng::SeededRng;

/// `{t^d : t = 1..=n}` in increasing order.
pub fn power_set(d: u32, n: u64) -> Result<Vec<BigUint>> {
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    Ok((1..=n).map(|t| BigUint::from(t).pow(d)).collect())
}

/// `3/4 - 1/(2√d) - 1/(2(d-1))`, the exponent of the basis-size lower bound
/// before the ε loss.
pub fn lower_bound_exponent(d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    let d = d as f64;
    Ok(0.75 - 1.0 / (2.0 * d.sqrt()) - 1.0 / (2.0 * (d - 1.0)))
}

/// Undirected multigraph-free graph with loops. Each vertex lists an incident
/// edge once, loops included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertices];
        let mut seen = BTreeSet::new();
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::UnknownVertex(format!("{}", u.max(v))));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidArgument(format!("duplicate edge {{{u}, {v}}}")));
            }
            adj[u].push((v, id));
            if u != v {
                adj[v].push((u, id));
            }
        }
        Ok(Self { vertices, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeelOrder {
    Fifo,
    Lifo,
    Seeded(u64),
}

/// Result of peeling: the surviving vertices and edges, by original id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Core {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub removal_order: Vec<usize>,
}

/// Repeatedly deletes a vertex of degree `< delta` until none is left. The
/// surviving vertex set does not depend on `order`.
pub fn min_degree_subgraph(g: &Graph, delta: &BigRational, order: PeelOrder) -> Result<Core> {
    if *delta <= BigRational::from_integer(0.into()) {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let low = |deg: usize| BigRational::from_integer(deg.into()) < *delta;
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queued = vec![false; n];
    let mut pending: VecDeque<usize> = VecDeque::new();
    for v in 0..n {
        if low(deg[v]) {
            queued[v] = true;
            pending.push_back(v);
        }
    }
    let mut rng = match order {
        PeelOrder::Seeded(s) => Some(SeededRng::seed_from_u64(s)),
        _ => None,
    };
    let mut removal_order = Vec::new();
    loop {
        let next = match (order, &mut rng) {
            (PeelOrder::Fifo, _) => pending.pop_front(),
            (PeelOrder::Lifo, _) => pending.pop_back(),
            (PeelOrder::Seeded(_), Some(r)) if !pending.is_empty() => {
                let i = r.gen_range(0..pending.len());
                pending.swap_remove_back(i)
            }
            _ => None,
        };
        let Some(v) = next else { break };
        alive[v] = false;
        removal_order.push(v);
        for &(u, _) in g.neighbors(v) {
            if u != v && alive[u] {
                deg[u] -= 1;
                if !queued[u] && low(deg[u]) {
                    queued[u] = true;
                    pending.push_back(u);
                }
            }
        }
    }
    let vertices = (0..n).filter(|&v| alive[v]).collect();
    let edges = (0..g.edges().len())
        .filter(|&e| alive[g.edges()[e].0] && alive[g.edges()[e].1])
        .collect();
    Ok(Core { vertices, edges, removal_order })
}

/// Maximal subgraph with minimum degree `>= delta`, recomputed from scratch
/// by fixpoint iteration. Used as an oracle for peeling.
pub fn min_degree_fixpoint(g: &Graph, delta: &BigRational) -> Vec<usize> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    loop {
        let drop: Vec<usize> = (0..n)
            .filter(|&v| alive[v])
            .filter(|&v| {
                let d = g.neighbors(v).iter().filter(|&&(u, _)| alive[u]).count();
                BigRational::from_integer(d.into()) < *delta
            })
            .collect();
        if drop.is_empty() {
            break;
        }
        for v in drop {
            alive[v] = false;
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

/// A walk with pairwise-distinct edges, as vertex and edge sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Walk {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WalkQuery {
    pub start: usize,
    /// `None` counts walks ending anywhere.
    pub end: Option<usize>,
    pub length: usize,
    /// Search nodes allowed per first edge.
    pub budget: u64,
}

struct Search<'a> {
    g: &'a Graph,
    end: Option<usize>,
    length: usize,
    budget: u64,
    visited: u64,
    count: u64,
    used: Vec<bool>,
    trail: Walk,
    keep: Option<Vec<Walk>>,
}

impl Search<'_> {
    fn dfs(&mut self, v: usize) -> bool {
        self.visited += 1;
        if self.visited > self.budget {
            return false;
        }
        if self.trail.edges.len() == self.length {
            if self.end.is_none_or(|e| e == v) {
                self.count += 1;
                if let Some(k) = &mut self.keep {
                    k.push(self.trail.clone());
                }
            }
            return true;
        }
        for &(u, e) in self.g.neighbors(v) {
            if self.used[e] {
                continue;
            }
            self.used[e] = true;
            self.trail.vertices.push(u);
            self.trail.edges.push(e);
            let ok = self.dfs(u);
            self.trail.vertices.pop();
            self.trail.edges.pop();
            self.used[e] = false;
            if !ok {
                return false;
            }
        }
        true
    }
}

fn search(g: &Graph, q: &WalkQuery, keep: bool, exec: Exec) -> Result<(u64, Vec<Walk>)> {
    if q.start >= g.vertex_count() {
        return Err(Error::UnknownVertex(q.start.to_string()));
    }
    if let Some(e) = q.end.filter(|&e| e >= g.vertex_count()) {
        return Err(Error::UnknownVertex(e.to_string()));
    }
    if q.length == 0 {
        return Err(Error::InvalidArgument("walk length must be at least 1".into()));
    }
    let first = g.neighbors(q.start).to_vec();
    let parts = map_collect(exec, &first, |&(u, e)| {
        let mut s = Search {
            g,
            end: q.end,
            length: q.length,
            budget: q.budget,
            visited: 0,
            count: 0,
            used: vec![false; g.edges().len()],
            trail: Walk { vertices: vec![q.start, u], edges: vec![e] },
            keep: keep.then(Vec::new),
        };
        s.used[e] = true;
        let ok = s.dfs(u);
        (ok, s.count, s.keep.unwrap_or_default())
    });
    let mut total = 0u64;
    let mut walks = Vec::new();
    let mut complete = true;
    for (ok, c, w) in parts {
        complete &= ok;
        total = total
            .checked_add(c)
            .ok_or(Error::BudgetExceeded { partial: u64::MAX })?;
        walks.extend(w);
    }
    if !complete {
        return Err(Error::BudgetExceeded { partial: total });
    }
    Ok((total, walks))
}

/// Number of walks matching `q` whose edges are pairwise distinct.
pub fn count_walks(g: &Graph, q: &WalkQuery, exec: Exec) -> Result<u64> {
    search(g, q, false, exec).map(|r| r.0)
}

/// The walks counted by [`count_walks`], in first-edge then DFS order.
pub fn enumerate_walks(g: &Graph, q: &WalkQuery, exec: Exec) -> Result<Vec<Walk>> {
    search(g, q, true, exec).map(|r| r.1)
}

/// `(delta - k)^k` as an exact rational.
pub fn walk_lower_bound(delta: &BigRational, k: usize) -> BigRational {
    let base = delta - BigRational::from_integer(k.into());
    rational_pow(&base, k)
}

/// Whether `delta > k`, the range where the walk bound is informative.
pub fn walk_bound_applies(delta: &BigRational, k: usize) -> bool {
    *delta > BigRational::from_integer(k.into())
}

/// `count > (delta - k)^k`.
pub fn exceeds_walk_lower_bound(count: u64, delta: &BigRational, k: usize) -> bool {
    BigRational::from_integer(count.into()) > walk_lower_bound(delta, k)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

fn rational_pow(x: &BigRational, k: usize) -> BigRational {
    let mut out = BigRational::from_integer(1.into());
    for _ in 0..k {
        out *= x;
    }
    out
}

fn serialize_decimal<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelledEdge {
    pub u: String,
    pub v: String,
    pub power: String,
}

/// Graph on a candidate basis `A` of `P_d(n)`: one edge per representable
/// power, joining the lexicographically first pair summing to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisGraph {
    pub d: u32,
    pub n: u64,
    pub vertices: Vec<BigUint>,
    pub graph: Graph,
    pub labels: Vec<BigUint>,
    /// Powers with no representation in `A + A`.
    pub missing: Vec<BigUint>,
}

impl Serialize for BasisGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            d: u32,
            n: u64,
            #[serde(serialize_with = "serialize_decimal")]
            vertices: &'a [BigUint],
            edges: Vec<LabelledEdge>,
            #[serde(serialize_with = "serialize_decimal")]
            missing: &'a [BigUint],
        }
        Repr {
            d: self.d,
            n: self.n,
            vertices: &self.vertices,
            edges: self.labelled_edges(),
            missing: &self.missing,
        }
        .serialize(s)
    }
}

impl BasisGraph {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn vertex_of(&self, value: &BigUint) -> Result<usize> {
        self.vertices
            .binary_search(value)
            .map_err(|_| Error::UnknownVertex(value.to_string()))
    }

    /// Edges sorted by power.
    pub fn labelled_edges(&self) -> Vec<LabelledEdge> {
        self.graph
            .edges()
            .iter()
            .zip(&self.labels)
            .map(|(&(u, v), p)| LabelledEdge {
                u: self.vertices[u].to_string(),
                v: self.vertices[v].to_string(),
                power: p.to_string(),
            })
            .collect()
    }

    /// `n / m` with `m = |A|`.
    pub fn density(&self) -> BigRational {
        Ratio::new(BigInt::from(self.n), BigInt::from(self.vertices.len().max(1)))
    }

    /// Subgraph on the surviving vertices of [`min_degree_subgraph`].
    pub fn core(&self, delta: &BigRational, order: PeelOrder) -> Result<BasisGraph> {
        let core = min_degree_subgraph(&self.graph, delta, order)?;
        let mut index = vec![usize::MAX; self.vertices.len()];
        for (i, &v) in core.vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = core
            .edges
            .iter()
            .map(|&e| {
                let (u, v) = self.graph.edges()[e];
                (index[u], index[v])
            })
            .collect();
        Ok(BasisGraph {
            d: self.d,
            n: self.n,
            vertices: core.vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
            graph: Graph::new(core.vertices.len(), edges)?,
            labels: core.edges.iter().map(|&e| self.labels[e].clone()).collect(),
            missing: self.missing.clone(),
        })
    }

    /// `x_1^d - x_2^d + .. ± x_k^d` over the walk's edge labels.
    pub fn alternating_sum(&self, w: &Walk) -> BigInt {
        w.edges
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let x = BigInt::from(self.labels[e].clone());
                if i % 2 == 0 { x } else { -x }
            })
            .sum()
    }

    /// Whether the alternating label sum equals `a + (-1)^(k-1) a'`.
    pub fn alternating_identity_holds(&self, w: &Walk) -> bool {
        let a = BigInt::from(self.vertices[w.vertices[0]].clone());
        let b = BigInt::from(self.vertices[*w.vertices.last().expect("nonempty")].clone());
        let rhs = if w.edges.len() % 2 == 1 { a + b } else { a - b };
        self.alternating_sum(w) == rhs
    }
}

/// Builds the basis graph of `A` for `P_d(n)`. `A` is deduplicated and sorted.
pub fn build_basis_graph(a: &[BigUint], d: u32, n: u64) -> Result<BasisGraph> {
    let powers = power_set(d, n)?;
    let vertices: Vec<BigUint> = a.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut missing = Vec::new();
    for p in powers {
        let pair = vertices
            .iter()
            .enumerate()
            .take_while(|(_, x)| *x + *x <= p)
            .find_map(|(i, x)| {
                let rest = &p - x;
                vertices.binary_search(&rest).ok().map(|j| (i, j))
            });
        match pair {
            Some(e) => {
                edges.push(e);
                labels.push(p);
            }
            None => missing.push(p),
        }
    }
    let graph = Graph::new(vertices.len(), edges)?;
    Ok(BasisGraph { d, n, vertices, graph, labels, missing })
}
