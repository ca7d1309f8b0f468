//! Tree instances: the rooted tree, the ignition vertex, the target set with
//! its weights, per-step budgets and forbidden placements.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

/// Vertex identifier, dense in `0..n`.
pub type Vertex = usize;
/// Time step, starting at 1.
pub type Step = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("an instance needs at least one vertex")]
    Empty,
    #[error("edges do not form a tree: {0}")]
    NotATree(String),
    #[error("{field} refers to vertex {id}, but n = {n}")]
    IdOutOfRange {
        field: &'static str,
        id: Vertex,
        n: usize,
    },
    #[error("budget at step {step} must be at least 1")]
    NonPositiveBudget { step: Step },
    #[error("per-step budget list is empty")]
    EmptyBudgetList,
    #[error("weight given for vertex {0}, which is not in the target set")]
    WeightOutsideTargets(Vertex),
    #[error("forbidden pair ({vertex}, {step}) has step 0")]
    ForbiddenStepZero { vertex: Vertex, step: Step },
}

/// Number of vertices that may be protected at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Budgets {
    Constant(usize),
    /// `b_1, b_2, ...`; steps past the end reuse the last entry.
    PerStep(Vec<usize>),
}

impl Budgets {
    pub fn at(&self, step: Step) -> usize {
        match self {
            Budgets::Constant(b) => *b,
            Budgets::PerStep(list) => {
                let idx = step.saturating_sub(1).min(list.len() - 1);
                list[idx]
            }
        }
    }

    /// The single budget when every step has the same one.
    pub fn constant(&self) -> Option<usize> {
        match self {
            Budgets::Constant(b) => Some(*b),
            Budgets::PerStep(list) => {
                let first = list[0];
                list.iter().all(|&b| b == first).then_some(first)
            }
        }
    }

    /// Number of leading steps whose budget is not simply the tail value.
    pub(crate) fn distinct_prefix(&self) -> usize {
        match self {
            Budgets::Constant(_) => 0,
            Budgets::PerStep(list) => list.len(),
        }
    }

    fn validate(&self) -> Result<(), InstanceError> {
        match self {
            Budgets::Constant(0) => Err(InstanceError::NonPositiveBudget { step: 1 }),
            Budgets::Constant(_) => Ok(()),
            Budgets::PerStep(list) if list.is_empty() => Err(InstanceError::EmptyBudgetList),
            Budgets::PerStep(list) => match list.iter().position(|&b| b == 0) {
                Some(i) => Err(InstanceError::NonPositiveBudget { step: i + 1 }),
                None => Ok(()),
            },
        }
    }
}

/// Unvalidated instance description, the input of [`TreeInstance::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub root: Vertex,
    pub target_set: Vec<Vertex>,
    /// Weights on the target set; missing targets default to 1.
    pub weights: Option<BTreeMap<Vertex, u64>>,
    pub budgets: Budgets,
    pub forbidden: Vec<(Vertex, Step)>,
}

impl RawInstance {
    /// A tree with every vertex targeted, unit weights and budget 1.
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>, root: Vertex) -> Self {
        RawInstance {
            n,
            edges,
            root,
            target_set: (0..n).collect(),
            weights: None,
            budgets: Budgets::Constant(1),
            forbidden: Vec::new(),
        }
    }
}

/// A validated rooted tree instance.
///
/// The rooted view (parent, children, depth, subtree weights) is computed once
/// at construction; instances are immutable afterwards.
#[derive(Debug, Clone)]
pub struct TreeInstance {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    root: Vertex,
    targets: Vec<Vertex>,
    weights: Vec<u64>,
    budgets: Budgets,
    forbidden: BTreeSet<(Vertex, Step)>,

    adjacency: Vec<Vec<Vertex>>,
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    depth: Vec<usize>,
    bfs_order: Vec<Vertex>,
    subtree_weight: Vec<u64>,
}

impl PartialEq for TreeInstance {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges == other.edges
            && self.root == other.root
            && self.targets == other.targets
            && self.weights == other.weights
            && self.budgets == other.budgets
            && self.forbidden == other.forbidden
    }
}

impl Eq for TreeInstance {}

impl TreeInstance {
    pub fn new(raw: RawInstance) -> Result<Self, InstanceError> {
        let RawInstance {
            n,
            edges,
            root,
            target_set,
            weights,
            budgets,
            forbidden,
        } = raw;
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        let check = |field: &'static str, id: Vertex| {
            if id < n {
                Ok(())
            } else {
                Err(InstanceError::IdOutOfRange { field, id, n })
            }
        };
        check("root", root)?;
        for &(u, v) in &edges {
            check("edges", u)?;
            check("edges", v)?;
        }
        for &v in &target_set {
            check("target_set", v)?;
        }
        for &(v, t) in &forbidden {
            check("forbidden", v)?;
            if t == 0 {
                return Err(InstanceError::ForbiddenStepZero { vertex: v, step: t });
            }
        }
        budgets.validate()?;

        if edges.len() != n - 1 {
            return Err(InstanceError::NotATree(format!(
                "{} edges on {} vertices",
                edges.len(),
                n
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u == v {
                return Err(InstanceError::NotATree(format!("self-loop at {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut bfs_order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        depth[root] = 0;
        while let Some(u) = queue.pop_front() {
            bfs_order.push(u);
            for &v in &adjacency[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        if bfs_order.len() != n {
            // n - 1 edges and disconnected implies a cycle somewhere.
            return Err(InstanceError::NotATree(
                "graph is disconnected or has a cycle".into(),
            ));
        }
        let mut children = vec![Vec::new(); n];
        for &v in &bfs_order[1..] {
            children[parent[v].unwrap()].push(v);
        }

        let targets: Vec<Vertex> = target_set
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut in_targets = vec![false; n];
        for &v in &targets {
            in_targets[v] = true;
        }
        let mut weight = vec![0u64; n];
        for &v in &targets {
            weight[v] = 1;
        }
        if let Some(map) = weights {
            for (v, w) in map {
                check("weights", v)?;
                if !in_targets[v] {
                    return Err(InstanceError::WeightOutsideTargets(v));
                }
                weight[v] = w;
            }
        }

        let mut subtree_weight = weight.clone();
        for &v in bfs_order.iter().rev() {
            if let Some(p) = parent[v] {
                subtree_weight[p] += subtree_weight[v];
            }
        }

        Ok(TreeInstance {
            n,
            edges,
            root,
            targets,
            weights: weight,
            budgets,
            forbidden: forbidden.into_iter().collect(),
            adjacency,
            parent,
            children,
            depth,
            bfs_order,
            subtree_weight,
        })
    }

    /// Round-trips back to the raw description.
    pub fn to_raw(&self) -> RawInstance {
        let weights = if self.targets.iter().all(|&v| self.weights[v] == 1) {
            None
        } else {
            Some(self.targets.iter().map(|&v| (v, self.weights[v])).collect())
        };
        RawInstance {
            n: self.n,
            edges: self.edges.clone(),
            root: self.root,
            target_set: self.targets.clone(),
            weights,
            budgets: self.budgets.clone(),
            forbidden: self.forbidden.iter().copied().collect(),
        }
    }

    fn rebuilt(&self, edit: impl FnOnce(&mut RawInstance)) -> Result<Self, InstanceError> {
        let mut raw = self.to_raw();
        edit(&mut raw);
        TreeInstance::new(raw)
    }

    /// Same tree with a new target set, all weights 1.
    pub fn with_targets(
        &self,
        targets: impl IntoIterator<Item = Vertex>,
    ) -> Result<Self, InstanceError> {
        let targets: Vec<Vertex> = targets.into_iter().collect();
        self.rebuilt(|raw| {
            raw.target_set = targets;
            raw.weights = None;
        })
    }

    pub fn with_weights(&self, weights: BTreeMap<Vertex, u64>) -> Result<Self, InstanceError> {
        self.rebuilt(|raw| raw.weights = Some(weights))
    }

    pub fn with_budgets(&self, budgets: Budgets) -> Result<Self, InstanceError> {
        self.rebuilt(|raw| raw.budgets = budgets)
    }

    pub fn with_budget(&self, b: usize) -> Result<Self, InstanceError> {
        self.with_budgets(Budgets::Constant(b))
    }

    pub fn with_root(&self, root: Vertex) -> Result<Self, InstanceError> {
        self.rebuilt(|raw| raw.root = root)
    }

    pub fn with_forbidden(
        &self,
        forbidden: impl IntoIterator<Item = (Vertex, Step)>,
    ) -> Result<Self, InstanceError> {
        let forbidden: Vec<_> = forbidden.into_iter().collect();
        self.rebuilt(|raw| raw.forbidden = forbidden)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn targets(&self) -> &[Vertex] {
        &self.targets
    }

    pub fn is_target(&self, v: Vertex) -> bool {
        self.targets.binary_search(&v).is_ok()
    }

    /// Target weight of `v`; zero outside the target set.
    pub fn weight(&self, v: Vertex) -> u64 {
        self.weights[v]
    }

    pub fn total_target_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    pub fn budget_at(&self, step: Step) -> usize {
        self.budgets.at(step)
    }

    pub fn forbidden(&self) -> &BTreeSet<(Vertex, Step)> {
        &self.forbidden
    }

    pub fn is_forbidden(&self, v: Vertex, step: Step) -> bool {
        !self.forbidden.is_empty() && self.forbidden.contains(&(v, step))
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    /// Children of `v` in the tree rooted at the ignition vertex.
    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    /// Distance from the ignition vertex.
    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> &[Vertex] {
        &self.bfs_order
    }

    /// Total target weight in the subtree rooted at `v`.
    pub fn subtree_weight(&self, v: Vertex) -> u64 {
        self.subtree_weight[v]
    }

    /// Vertices without children in the rooted tree.
    pub fn leaves(&self) -> Vec<Vertex> {
        (0..self.n)
            .filter(|&v| self.children[v].is_empty())
            .collect()
    }

    /// True when `a` lies strictly above `v` on the path to the root.
    pub fn is_strict_ancestor(&self, a: Vertex, v: Vertex) -> bool {
        let mut cur = self.parent[v];
        while let Some(u) = cur {
            if u == a {
                return true;
            }
            cur = self.parent[u];
        }
        false
    }

    /// Vertex path from `u` to `v`, both included.
    pub fn path_between(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let (mut a, mut b) = (u, v);
        let mut left = Vec::new();
        let mut right = Vec::new();
        while self.depth[a] > self.depth[b] {
            left.push(a);
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            right.push(b);
            b = self.parent[b].unwrap();
        }
        while a != b {
            left.push(a);
            right.push(b);
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        left.push(a);
        left.extend(right.into_iter().rev());
        left
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_tree_2_3() -> TreeInstance {
        let mut edges = Vec::new();
        for c in 1..=3 {
            edges.push((0, c));
            for g in 0..3 {
                edges.push((c, 4 + (c - 1) * 3 + g));
            }
        }
        TreeInstance::new(RawInstance::new(13, edges, 0)).unwrap()
    }

    #[test]
    fn smallest_path_instance() {
        let mut raw = RawInstance::new(3, vec![(0, 1), (1, 2)], 0);
        raw.target_set = vec![2];
        let inst = TreeInstance::new(raw).unwrap();
        assert_eq!(inst.vertex_count(), 3);
        assert_eq!(inst.targets(), &[2]);
        assert_eq!(inst.weight(2), 1);
        assert_eq!(inst.weight(1), 0);
        assert_eq!(inst.depth(2), 2);
    }

    #[test]
    fn cycle_is_rejected() {
        let raw = RawInstance::new(3, vec![(0, 1), (1, 2), (2, 0)], 0);
        assert!(matches!(
            TreeInstance::new(raw),
            Err(InstanceError::NotATree(_))
        ));
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        // Right edge count, but a triangle plus an isolated vertex.
        let raw = RawInstance::new(4, vec![(0, 1), (1, 2), (2, 0)], 0);
        assert!(matches!(
            TreeInstance::new(raw),
            Err(InstanceError::NotATree(_))
        ));
    }

    #[test]
    fn complete_tree_from_figure_one() {
        let inst = complete_tree_2_3();
        assert_eq!(inst.vertex_count(), 13);
        for v in 0..13 {
            let c = inst.children(v).len();
            assert!(c == 0 || c == 3);
        }
        assert_eq!(inst.leaves().len(), 9);
    }

    #[test]
    fn out_of_range_ids() {
        let mut raw = RawInstance::new(2, vec![(0, 1)], 0);
        raw.target_set = vec![5];
        assert!(matches!(
            TreeInstance::new(raw),
            Err(InstanceError::IdOutOfRange {
                field: "target_set",
                id: 5,
                n: 2
            })
        ));
        let raw = RawInstance::new(2, vec![(0, 1)], 2);
        assert!(matches!(
            TreeInstance::new(raw),
            Err(InstanceError::IdOutOfRange { .. })
        ));
    }

    #[test]
    fn budgets_must_be_positive() {
        let mut raw = RawInstance::new(2, vec![(0, 1)], 0);
        raw.budgets = Budgets::Constant(0);
        assert_eq!(
            TreeInstance::new(raw.clone()),
            Err(InstanceError::NonPositiveBudget { step: 1 })
        );
        raw.budgets = Budgets::PerStep(vec![2, 0]);
        assert_eq!(
            TreeInstance::new(raw.clone()),
            Err(InstanceError::NonPositiveBudget { step: 2 })
        );
        raw.budgets = Budgets::PerStep(vec![]);
        assert_eq!(TreeInstance::new(raw), Err(InstanceError::EmptyBudgetList));
    }

    #[test]
    fn short_budget_list_extends_with_last_entry() {
        let b = Budgets::PerStep(vec![3, 1, 2]);
        assert_eq!(b.at(1), 3);
        assert_eq!(b.at(3), 2);
        assert_eq!(b.at(10), 2);
        assert_eq!(b.constant(), None);
        assert_eq!(Budgets::PerStep(vec![2, 2]).constant(), Some(2));
    }

    #[test]
    fn weights_only_on_targets() {
        let mut raw = RawInstance::new(3, vec![(0, 1), (1, 2)], 0);
        raw.target_set = vec![2];
        raw.weights = Some(BTreeMap::from([(1, 4)]));
        assert_eq!(
            TreeInstance::new(raw),
            Err(InstanceError::WeightOutsideTargets(1))
        );
    }

    #[test]
    fn subtree_weights_and_paths() {
        let inst = complete_tree_2_3();
        assert_eq!(inst.subtree_weight(0), 13);
        assert_eq!(inst.subtree_weight(1), 4);
        assert_eq!(inst.path_between(4, 12), vec![4, 1, 0, 3, 12]);
        assert!(inst.is_strict_ancestor(1, 5));
        assert!(!inst.is_strict_ancestor(5, 5));
    }

    #[test]
    fn raw_round_trip() {
        let mut raw = RawInstance::new(3, vec![(0, 1), (1, 2)], 1);
        raw.target_set = vec![0, 2];
        raw.weights = Some(BTreeMap::from([(0, 3), (2, 1)]));
        raw.budgets = Budgets::PerStep(vec![2, 1]);
        raw.forbidden = vec![(2, 1)];
        let inst = TreeInstance::new(raw).unwrap();
        assert_eq!(TreeInstance::new(inst.to_raw()).unwrap(), inst);
    }
}
