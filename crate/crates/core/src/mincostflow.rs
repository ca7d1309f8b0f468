//! Minimum-cost flow with node supplies on small integer networks.
//!
//! Successive shortest augmenting paths: a Bellman-Ford pass from a super
//! source sets node potentials (arc costs may be negative, the network must not
//! contain a negative cycle), after which every augmenting path is found with
//! Dijkstra on reduced costs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use thiserror::Error;

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: i64,
    pub cost: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("supplies sum to {0}, expected 0")]
    UnbalancedSupply(i64),
    #[error("arc {arc} is invalid: {reason}")]
    InvalidArc { arc: ArcId, reason: &'static str },
    #[error("network contains a negative-cost cycle")]
    NegativeCycle,
}

/// Directed network with capacities, costs and node supplies
/// (positive supply is a source, negative a sink).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowNetwork {
    node_count: usize,
    arcs: Vec<FlowArc>,
    supply: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(node_count: usize) -> Self {
        FlowNetwork {
            node_count,
            arcs: Vec::new(),
            supply: vec![0; node_count],
        }
    }

    pub fn add_arc(&mut self, tail: NodeId, head: NodeId, capacity: i64, cost: i64) -> ArcId {
        self.arcs.push(FlowArc {
            tail,
            head,
            capacity,
            cost,
        });
        self.arcs.len() - 1
    }

    pub fn set_supply(&mut self, node: NodeId, supply: i64) {
        self.supply[node] = supply;
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn supply(&self, node: NodeId) -> i64 {
        self.supply[node]
    }

    pub fn supplies(&self) -> &[i64] {
        &self.supply
    }

    /// Line-oriented dump: `nodes N`, then `supply v d` for non-zero
    /// supplies, then one `arc tail head cap cost` line per arc.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "nodes {}", self.node_count).unwrap();
        for (v, &d) in self.supply.iter().enumerate() {
            if d != 0 {
                writeln!(out, "supply {v} {d}").unwrap();
            }
        }
        for a in &self.arcs {
            writeln!(out, "arc {} {} {} {}", a.tail, a.head, a.capacity, a.cost).unwrap();
        }
        out
    }

    fn validate(&self) -> Result<(), FlowError> {
        for (id, a) in self.arcs.iter().enumerate() {
            let reason = if a.tail >= self.node_count || a.head >= self.node_count {
                "endpoint out of range"
            } else if a.tail == a.head {
                "self-loop"
            } else if a.capacity < 0 {
                "negative capacity"
            } else {
                continue;
            };
            return Err(FlowError::InvalidArc { arc: id, reason });
        }
        let total: i64 = self.supply.iter().sum();
        if total != 0 {
            return Err(FlowError::UnbalancedSupply(total));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSolution {
    /// Flow on each arc, indexed like [`FlowNetwork::arcs`].
    pub arc_flows: Vec<i64>,
    pub total_cost: i64,
    /// False when the supplies cannot be routed within the capacities.
    pub feasible: bool,
}

struct Residual {
    head: Vec<NodeId>,
    cap: Vec<i64>,
    cost: Vec<i64>,
    out: Vec<Vec<usize>>,
}

impl Residual {
    fn with_nodes(n: usize) -> Self {
        Residual {
            head: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            out: vec![Vec::new(); n],
        }
    }

    // Edge `e` and its reverse `e ^ 1`.
    fn link(&mut self, u: NodeId, v: NodeId, cap: i64, cost: i64) -> usize {
        let e = self.head.len();
        self.head.extend([v, u]);
        self.cap.extend([cap, 0]);
        self.cost.extend([cost, -cost]);
        self.out[u].push(e);
        self.out[v].push(e + 1);
        e
    }
}

const INF: i64 = i64::MAX / 4;

pub fn solve_min_cost_flow(net: &FlowNetwork) -> Result<FlowSolution, FlowError> {
    net.validate()?;
    let n = net.node_count;
    let source = n;
    let sink = n + 1;
    let mut res = Residual::with_nodes(n + 2);
    let arc_edges: Vec<usize> = net
        .arcs
        .iter()
        .map(|a| res.link(a.tail, a.head, a.capacity, a.cost))
        .collect();
    let mut required = 0;
    for (v, &d) in net.supply.iter().enumerate() {
        if d > 0 {
            res.link(source, v, d, 0);
            required += d;
        } else if d < 0 {
            res.link(v, sink, -d, 0);
        }
    }

    let mut potential = bellman_ford(&res, source)?;
    let mut routed = 0;
    let mut dist = vec![INF; n + 2];
    let mut via = vec![usize::MAX; n + 2];
    while routed < required {
        dist.fill(INF);
        via.fill(usize::MAX);
        dist[source] = 0;
        let mut heap = BinaryHeap::from([Reverse((0i64, source))]);
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &e in &res.out[u] {
                if res.cap[e] == 0 {
                    continue;
                }
                let v = res.head[e];
                let reduced = res.cost[e] + potential[u] - potential[v];
                debug_assert!(
                    reduced >= 0,
                    "potentials must keep reduced costs non-negative"
                );
                let nd = d + reduced;
                if nd < dist[v] {
                    dist[v] = nd;
                    via[v] = e;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        if dist[sink] == INF {
            break;
        }
        for v in 0..n + 2 {
            if dist[v] < INF {
                potential[v] += dist[v];
            }
        }
        let mut push = required - routed;
        let mut v = sink;
        while v != source {
            let e = via[v];
            push = push.min(res.cap[e]);
            v = res.head[e ^ 1];
        }
        let mut v = sink;
        while v != source {
            let e = via[v];
            res.cap[e] -= push;
            res.cap[e ^ 1] += push;
            v = res.head[e ^ 1];
        }
        routed += push;
    }

    let arc_flows: Vec<i64> = arc_edges.iter().map(|&e| res.cap[e ^ 1]).collect();
    let total_cost = arc_flows
        .iter()
        .zip(&net.arcs)
        .map(|(f, a)| f * a.cost)
        .sum();
    Ok(FlowSolution {
        arc_flows,
        total_cost,
        feasible: routed == required,
    })
}

fn bellman_ford(res: &Residual, source: NodeId) -> Result<Vec<i64>, FlowError> {
    let n = res.out.len();
    let mut dist = vec![INF; n];
    dist[source] = 0;
    for round in 0..n {
        let mut changed = false;
        for u in 0..n {
            if dist[u] == INF {
                continue;
            }
            for &e in &res.out[u] {
                if res.cap[e] > 0 && dist[u] + res.cost[e] < dist[res.head[e]] {
                    dist[res.head[e]] = dist[u] + res.cost[e];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        if round == n - 1 {
            return Err(FlowError::NegativeCycle);
        }
    }
    // Nodes the source cannot reach stay unreachable for the whole run.
    for d in &mut dist {
        if *d == INF {
            *d = 0;
        }
    }
    Ok(dist)
}

/// Checks capacity bounds and conservation (net outflow equals supply).
pub fn is_conserving(net: &FlowNetwork, flows: &[i64]) -> bool {
    if flows.len() != net.arcs.len() {
        return false;
    }
    let mut net_out = vec![0i64; net.node_count];
    for (a, &f) in net.arcs.iter().zip(flows) {
        if f < 0 || f > a.capacity {
            return false;
        }
        net_out[a.tail] += f;
        net_out[a.head] -= f;
    }
    net_out == net.supply
}
