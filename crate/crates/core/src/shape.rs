//! Parent/child relation over the slots of one group.
//!
//! A two-layer heap orders each group as an implicit binary heap. With more
//! layers a group is itself a layered heap: its slots are cut into
//! sub-groups of `compute_arity(layers - 1, k)` slots in breadth-first order,
//! each ordered the same way recursively, and sub-group `j >= 1` hangs below
//! slot `j - 1`. Ownership inside a group is positional, so the whole
//! discipline collapses to a fixed tree where every slot's parent has a
//! smaller index. Any prefix of the slots is therefore closed under parents,
//! which is what lets a partially filled frontier group stay well formed.

use crate::arity::compute_arity;

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalShape {
    Binary,
    Tree(TreeShape),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeShape {
    parent: Vec<u32>,
    child_start: Vec<u32>,
    children: Vec<u32>,
}

impl LocalShape {
    /// Discipline for a group of `slots` entries that is itself a
    /// `local_layers`-layer heap.
    pub fn new(local_layers: u32, slots: usize) -> Self {
        if local_layers <= 1 {
            return LocalShape::Binary;
        }
        let mut parent = vec![NO_PARENT; slots];
        fill_parents(local_layers, 0, slots, &mut parent);
        if parent.iter().enumerate().all(|(i, &p)| i == 0 || p as usize == (i - 1) / 2) {
            return LocalShape::Binary;
        }
        let mut counts = vec![0u32; slots + 1];
        for &p in parent.iter().skip(1) {
            counts[p as usize + 1] += 1;
        }
        for i in 0..slots {
            counts[i + 1] += counts[i];
        }
        let child_start = counts;
        let mut fill = child_start.clone();
        let mut children = vec![0u32; slots.saturating_sub(1)];
        for (i, &p) in parent.iter().enumerate().skip(1) {
            let at = &mut fill[p as usize];
            children[*at as usize] = i as u32;
            *at += 1;
        }
        LocalShape::Tree(TreeShape { parent, child_start, children })
    }

    #[inline]
    pub fn parent(&self, slot: usize) -> Option<usize> {
        match self {
            LocalShape::Binary => (slot > 0).then(|| (slot - 1) / 2),
            LocalShape::Tree(t) => {
                let p = t.parent[slot];
                (p != NO_PARENT).then_some(p as usize)
            }
        }
    }

    /// Children of `slot` that lie below `count`, in increasing slot order.
    #[inline]
    pub fn children(&self, slot: usize, count: usize) -> Children<'_> {
        match self {
            LocalShape::Binary => {
                let first = 2 * slot + 1;
                Children::Binary { next: first, end: (first + 2).min(count.max(first)) }
            }
            LocalShape::Tree(t) => {
                let lo = t.child_start[slot] as usize;
                let hi = t.child_start[slot + 1] as usize;
                Children::Tree { list: &t.children[lo..hi], count }
            }
        }
    }

    /// Longest root-to-slot path, in edges, over the first `slots` slots.
    pub fn depth(&self, slots: usize) -> usize {
        let mut depth = vec![0usize; slots];
        for s in 1..slots {
            depth[s] = depth[self.parent(s).expect("non-root slot has a parent")] + 1;
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Largest number of children any slot has among the first `slots` slots.
    pub fn max_fanout(&self, slots: usize) -> usize {
        (0..slots).map(|s| self.children(s, slots).count()).max().unwrap_or(0)
    }
}

fn fill_parents(layers: u32, offset: usize, len: usize, parent: &mut [u32]) {
    if len == 0 {
        return;
    }
    if layers <= 1 {
        for l in 1..len {
            parent[offset + l] = (offset + (l - 1) / 2) as u32;
        }
        return;
    }
    let sub = compute_arity(layers, len as u64).min(len);
    if sub >= len {
        fill_parents(layers - 1, offset, len, parent);
        return;
    }
    let groups = len.div_ceil(sub);
    for j in 0..groups {
        let start = offset + j * sub;
        let size = sub.min(len - j * sub);
        fill_parents(layers - 1, start, size, parent);
        if j > 0 {
            parent[start] = (offset + j - 1) as u32;
        }
    }
}

pub enum Children<'a> {
    Binary { next: usize, end: usize },
    Tree { list: &'a [u32], count: usize },
}

impl Iterator for Children<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        match self {
            Children::Binary { next, end } => {
                if *next < *end {
                    *next += 1;
                    Some(*next - 1)
                } else {
                    None
                }
            }
            Children::Tree { list, count } => {
                let (&first, rest) = list.split_first()?;
                if first as usize >= *count {
                    // children are sorted, so the rest are out of range too
                    *list = &[];
                    return None;
                }
                *list = rest;
                Some(first as usize)
            }
        }
    }
}
