use std::collections::BTreeSet;

use crate::instance::{RawInstance, TreeInstance, Vertex};

/// Canonical string of the subtree at `v`: children's strings sorted.
fn canon(children: &[Vec<Vertex>], v: Vertex) -> String {
    let mut parts: Vec<String> = children[v].iter().map(|&c| canon(children, c)).collect();
    parts.sort_unstable();
    format!("({})", parts.concat())
}

/// Parent array (preorder ids, root 0) of a canonical string.
fn parents_of(code: &str) -> Vec<Option<Vertex>> {
    let mut parents = Vec::new();
    let mut stack: Vec<Vertex> = Vec::new();
    for ch in code.chars() {
        if ch == '(' {
            parents.push(stack.last().copied());
            stack.push(parents.len() - 1);
        } else {
            stack.pop();
        }
    }
    parents
}

/// Every rooted unlabeled tree on `n` vertices, once each, as instances
/// rooted at vertex 0 with all vertices targeted and budget 1.
///
/// Vertices are numbered in preorder of the canonical form, so the output
/// order and labels are deterministic.
pub fn enumerate_rooted_trees(n: usize) -> Vec<TreeInstance> {
    if n == 0 {
        return Vec::new();
    }
    let mut layer: BTreeSet<String> = BTreeSet::from(["()".to_string()]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for code in &layer {
            let parents = parents_of(code);
            let m = parents.len();
            let mut children = vec![Vec::new(); m + 1];
            for (v, p) in parents.iter().enumerate() {
                if let Some(p) = p {
                    children[*p].push(v);
                }
            }
            for attach in 0..m {
                children[attach].push(m);
                next.insert(canon(&children, 0));
                children[attach].pop();
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|code| {
            let parents = parents_of(code);
            let edges = parents
                .iter()
                .enumerate()
                .filter_map(|(v, p)| p.map(|p| (p, v)))
                .collect();
            TreeInstance::new(RawInstance::new(parents.len(), edges, 0))
                .expect("parent arrays describe trees")
        })
        .collect()
}
