//! Coarsest stable partition by iterated signature splitting.
//!
//! Round `k` refines round `k-1` by the set of `(action, block)` pairs a
//! state can reach in one move. Two states share a block in round `k` iff no
//! modal formula of depth `k` tells them apart, so the per-round history is
//! also what distinguisher extraction walks.

use std::collections::HashMap;

/// Edges of a flat graph over `0..n` with integer action ids.
pub(crate) struct Graph {
    pub succ: Vec<Vec<(u32, usize)>>,
}

pub(crate) struct Refinement {
    /// `history[k][s]` is the block of `s` after round `k`; round 0 is the
    /// trivial partition.
    pub history: Vec<Vec<u32>>,
}

impl Refinement {
    pub fn run(graph: &Graph) -> Self {
        let n = graph.succ.len();
        let mut history = vec![vec![0u32; n]];
        let mut count = usize::from(n > 0);
        loop {
            let current = history.last().unwrap();
            let mut ids: HashMap<(u32, Vec<(u32, u32)>), u32> = HashMap::new();
            let mut next = Vec::with_capacity(n);
            for s in 0..n {
                let mut sig: Vec<(u32, u32)> = graph.succ[s]
                    .iter()
                    .map(|&(a, t)| (a, current[t]))
                    .collect();
                sig.sort_unstable();
                sig.dedup();
                let fresh = ids.len() as u32;
                next.push(*ids.entry((current[s], sig)).or_insert(fresh));
            }
            let new_count = ids.len();
            if new_count == count {
                break;
            }
            count = new_count;
            history.push(next);
        }
        Self { history }
    }

    pub fn stable(&self) -> &[u32] {
        self.history.last().unwrap()
    }

    pub fn num_blocks(&self) -> usize {
        let stable = self.stable();
        stable.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// First round separating `s` and `t`, or `None` if they end up in the
    /// same block.
    pub fn split_level(&self, s: usize, t: usize) -> Option<usize> {
        self.history.iter().position(|round| round[s] != round[t])
    }
}
