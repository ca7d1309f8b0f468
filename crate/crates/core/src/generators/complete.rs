use super::{attach_complete, complete_size, guard_size, GenError};
use crate::instance::{Budgets, RawInstance, TreeInstance};

/// Complete tree of height `h` where every inner vertex has `d` children.
/// The root has id 0 and the targets are the leaves.
pub fn gen_complete_tree(h: usize, d: usize, budget: usize) -> Result<TreeInstance, GenError> {
    if d == 0 {
        return Err(GenError::InvalidParameter("d must be at least 1".into()));
    }
    let n = guard_size(complete_size(h, d).unwrap_or(u128::MAX))?;
    let mut edges = Vec::with_capacity(n - 1);
    let mut next_id = 0;
    let all = attach_complete(&mut edges, &mut next_id, None, h, d);
    let leaves = all[all.len() - d.pow(h as u32)..].to_vec();
    Ok(TreeInstance::new(RawInstance {
        target_set: leaves,
        budgets: Budgets::Constant(budget),
        ..RawInstance::new(n, edges, 0)
    })?)
}
