use super::{finish, Algorithm, SolveResult};
use crate::instance::{TreeInstance, Vertex};
use crate::strategy::{Move, Strategy};

/// Degree-greedy heuristic: at each step, protect up to `b_t` threatened
/// vertices of highest degree in the original tree, smallest id first on ties.
pub fn solve_greedy_degree(inst: &TreeInstance) -> SolveResult {
    let n = inst.vertex_count();
    let mut burned = vec![false; n];
    let mut protected = vec![false; n];
    let mut moves = Vec::new();
    burned[inst.root()] = true;
    let mut front = vec![inst.root()];
    let mut t = 0;
    while !front.is_empty() {
        t += 1;
        let mut threatened: Vec<Vertex> = front
            .iter()
            .flat_map(|&u| inst.neighbors(u).iter().copied())
            .filter(|&v| !burned[v] && !protected[v])
            .collect();
        threatened.sort_unstable();
        threatened.dedup();
        let mut ranked: Vec<Vertex> = threatened
            .iter()
            .copied()
            .filter(|&v| !inst.is_forbidden(v, t))
            .collect();
        ranked.sort_by_key(|&v| (std::cmp::Reverse(inst.degree(v)), v));
        for &v in ranked.iter().take(inst.budget_at(t)) {
            protected[v] = true;
            moves.push(Move::new(v, t));
        }
        front = threatened.into_iter().filter(|&v| !protected[v]).collect();
        for &v in &front {
            burned[v] = true;
        }
    }
    let strategy = Strategy::new(moves).expect("each vertex is protected once");
    finish(inst, strategy, Algorithm::GreedyDegree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::RawInstance;

    #[test]
    fn star_saves_one_leaf() {
        let inst =
            TreeInstance::new(RawInstance::new(5, (1..5).map(|i| (0, i)).collect(), 0)).unwrap();
        let res = solve_greedy_degree(&inst);
        assert_eq!(res.saved_target_weight, 1);
        assert_eq!(res.strategy, Strategy::from_pairs(&[(1, 1)]).unwrap());
    }

    #[test]
    fn prefers_high_degree() {
        // 0 - {1, 2}; 2 has two children, so it is taken over 1.
        let inst = TreeInstance::new(RawInstance::new(5, vec![(0, 1), (0, 2), (2, 3), (2, 4)], 0))
            .unwrap();
        let res = solve_greedy_degree(&inst);
        assert_eq!(res.strategy, Strategy::from_pairs(&[(2, 1)]).unwrap());
        assert_eq!(res.saved_target_weight, 3);
    }

    #[test]
    fn skips_forbidden_candidates() {
        let inst = TreeInstance::new(RawInstance::new(5, vec![(0, 1), (0, 2), (2, 3), (2, 4)], 0))
            .unwrap()
            .with_forbidden([(2, 1)])
            .unwrap();
        let res = solve_greedy_degree(&inst);
        assert_eq!(res.strategy.time_of(1), Some(1));
    }
}
