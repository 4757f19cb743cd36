//! The layered max-heap: a k-ary tree of fixed-capacity groups, where each
//! group is a local heap of entries and every entry may own one child group.
//!
//! Groups are created in breadth-first order, so the flat concatenation of
//! all groups is exactly the first `len` slots of two parallel arrays
//! (`keys`, `links`). Group `g` occupies slots `g*k .. g*k + k`, its parent
//! group is `(g - 1) / k`, and only the last group (the frontier) can be
//! partially filled.
//!
//! Local sifts move whole entries, carrying child links with them and
//! patching the child's back-link. Crossing a group boundary exchanges keys
//! only, between a group's slot-0 entry and the entry that owns the group,
//! and is followed by a local sift on the side whose key changed.

use std::fmt;

use crate::arity::compute_arity;
use crate::binary::BinaryHeap;
use crate::counters::{OpCounters, Tally};
use crate::error::{HeapError, Result};
use crate::queue::MaxQueue;
use crate::shape::LocalShape;
use crate::Key;

pub type GroupId = u32;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct GroupMeta {
    count: u32,
    parent: GroupId,
    parent_slot: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    LocalOrder,
    BoundaryOrder,
    Backlink,
    Count,
    Shape,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::LocalOrder => "local_order",
            ViolationKind::BoundaryOrder => "boundary_order",
            ViolationKind::Backlink => "backlink",
            ViolationKind::Count => "count",
            ViolationKind::Shape => "shape",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub group: GroupId,
    pub slot: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, group: GroupId, slot: usize, detail: String) {
        self.violations.push(Violation { kind, group, slot, detail });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        for v in &self.violations {
            writeln!(f, "{} group={} slot={}: {}", v.kind, v.group, v.slot, v.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Grouped<K, T> {
    arity: usize,
    shape: LocalShape,
    keys: Vec<K>,
    links: Vec<GroupId>,
    groups: Vec<GroupMeta>,
    tally: T,
}

impl<K: Key, T: Tally> Grouped<K, T> {
    fn new(layers: u32, arity: usize, reserve: usize, tally: T) -> Self {
        Grouped {
            arity,
            shape: LocalShape::new(layers - 1, arity),
            keys: Vec::with_capacity(reserve),
            links: Vec::with_capacity(reserve),
            groups: Vec::with_capacity(reserve.div_ceil(arity)),
            tally,
        }
    }

    #[inline]
    fn len(&self) -> usize {
        self.keys.len()
    }

    #[inline]
    fn base(&self, g: usize) -> usize {
        g * self.arity
    }

    #[inline]
    fn gt(&mut self, a: usize, b: usize) -> bool {
        self.tally.comparison();
        self.keys[a] > self.keys[b]
    }

    /// Swaps two whole entries of group `g` and re-points their child groups.
    #[inline]
    fn swap_entries(&mut self, g: usize, a: usize, b: usize) {
        let base = self.base(g);
        self.keys.swap(base + a, base + b);
        self.links.swap(base + a, base + b);
        self.tally.entry_move();
        for slot in [a, b] {
            let child = self.links[base + slot];
            if child != NIL {
                self.groups[child as usize].parent_slot = slot as u32;
                self.tally.link_fix();
            }
        }
    }

    fn local_sift_up(&mut self, g: usize, mut slot: usize) -> usize {
        let base = self.base(g);
        while let Some(p) = self.shape.parent(slot) {
            if !self.gt(base + slot, base + p) {
                break;
            }
            self.swap_entries(g, slot, p);
            slot = p;
        }
        slot
    }

    fn local_sift_down(&mut self, g: usize, mut slot: usize) -> usize {
        let base = self.base(g);
        let count = self.groups[g].count as usize;
        loop {
            let mut kids = self.shape.children(slot, count);
            let Some(mut best) = kids.next() else { break };
            for c in kids {
                self.tally.comparison();
                if self.keys[base + c] > self.keys[base + best] {
                    best = c;
                }
            }
            if !self.gt(base + best, base + slot) {
                break;
            }
            self.swap_entries(g, slot, best);
            slot = best;
        }
        slot
    }

    fn insert(&mut self, key: K) {
        let idx = self.len();
        let g = idx / self.arity;
        let slot = idx % self.arity;
        if slot == 0 {
            self.open_group(g);
        }
        self.keys.push(key);
        self.links.push(NIL);
        self.groups[g].count += 1;

        let mut g = g;
        let mut landed = self.local_sift_up(g, slot);
        while landed == 0 && g != 0 {
            let GroupMeta { parent, parent_slot, .. } = self.groups[g];
            let here = self.base(g);
            let owner = self.base(parent as usize) + parent_slot as usize;
            if !self.gt(here, owner) {
                break;
            }
            self.keys.swap(here, owner);
            self.tally.value_swap();
            g = parent as usize;
            landed = self.local_sift_up(g, parent_slot as usize);
        }
    }

    /// Allocates group `g` and attaches it to the lowest childless entry of
    /// its parent group.
    fn open_group(&mut self, g: usize) {
        if g == 0 {
            self.groups.push(GroupMeta { count: 0, parent: NIL, parent_slot: NIL });
            return;
        }
        let parent = (g - 1) / self.arity;
        let base = self.base(parent);
        let slot = (0..self.arity)
            .find(|&s| self.links[base + s] == NIL)
            .expect("parent group has a childless entry for every child it has not yet received");
        self.links[base + slot] = g as GroupId;
        self.groups.push(GroupMeta { count: 0, parent: parent as GroupId, parent_slot: slot as u32 });
    }

    fn remove_last(&mut self) -> Option<K> {
        let key = self.keys.pop()?;
        let link = self.links.pop();
        debug_assert_eq!(link, Some(NIL), "the last entry never owns a group");
        let g = self.groups.len() - 1;
        self.groups[g].count -= 1;
        if self.groups[g].count == 0 {
            let meta = self.groups.pop().expect("frontier exists");
            if meta.parent != NIL {
                let owner = self.base(meta.parent as usize) + meta.parent_slot as usize;
                self.links[owner] = NIL;
            }
        }
        Some(key)
    }

    fn pop_max(&mut self) -> Option<K> {
        let last = self.remove_last()?;
        if self.keys.is_empty() {
            return Some(last);
        }
        let top = std::mem::replace(&mut self.keys[0], last);
        let mut g = 0usize;
        let mut slot = self.local_sift_down(0, 0);
        loop {
            let entry = self.base(g) + slot;
            let child = self.links[entry];
            if child == NIL {
                break;
            }
            let child_top = self.base(child as usize);
            if !self.gt(child_top, entry) {
                break;
            }
            self.keys.swap(child_top, entry);
            self.tally.value_swap();
            self.local_sift_up(g, slot);
            g = child as usize;
            slot = self.local_sift_down(g, 0);
        }
        Some(top)
    }

    fn check(&self, report: &mut CheckReport) {
        let k = self.arity;
        let n = self.len();
        let expected_groups = n.div_ceil(k);
        if self.links.len() != n {
            report.push(ViolationKind::Count, 0, 0, format!("{} links for {n} keys", self.links.len()));
            return;
        }
        if self.groups.len() != expected_groups {
            report.push(
                ViolationKind::Count,
                0,
                0,
                format!("{} groups for {n} keys at arity {k}, expected {expected_groups}", self.groups.len()),
            );
            return;
        }
        let mut total = 0usize;
        for (g, meta) in self.groups.iter().enumerate() {
            let gid = g as GroupId;
            let expected = k.min(n - g * k);
            let count = meta.count as usize;
            total += count;
            if count != expected {
                report.push(ViolationKind::Count, gid, count, format!("count {count}, expected {expected}"));
            }
            if g == 0 {
                if meta.parent != NIL {
                    report.push(ViolationKind::Shape, gid, 0, "root group has a parent".into());
                }
            } else {
                let parent = (g - 1) / k;
                if meta.parent as usize != parent {
                    report.push(
                        ViolationKind::Shape,
                        gid,
                        0,
                        format!("parent group {}, expected {parent}", meta.parent),
                    );
                } else if meta.parent_slot as usize >= k || self.links[parent * k + meta.parent_slot as usize] != gid {
                    report.push(
                        ViolationKind::Backlink,
                        gid,
                        0,
                        format!("owner slot {} of group {parent} does not link here", meta.parent_slot),
                    );
                }
            }
            let base = g * k;
            let count = count.min(n.saturating_sub(base));
            for s in 0..count {
                if let Some(p) = self.shape.parent(s) {
                    if self.keys[base + p] < self.keys[base + s] {
                        report.push(
                            ViolationKind::LocalOrder,
                            gid,
                            s,
                            format!(
                                "key {:?} above local parent slot {p} key {:?}",
                                self.keys[base + s],
                                self.keys[base + p]
                            ),
                        );
                    }
                }
                let child = self.links[base + s];
                if child == NIL {
                    continue;
                }
                let Some(cm) = self.groups.get(child as usize) else {
                    report.push(ViolationKind::Backlink, gid, s, format!("link to missing group {child}"));
                    continue;
                };
                if cm.parent != gid || cm.parent_slot as usize != s {
                    report.push(
                        ViolationKind::Backlink,
                        gid,
                        s,
                        format!("child group {child} points back at ({}, {})", cm.parent, cm.parent_slot),
                    );
                }
                let child_top = child as usize * k;
                if child_top < n && self.keys[child_top] > self.keys[base + s] {
                    report.push(
                        ViolationKind::BoundaryOrder,
                        gid,
                        s,
                        format!("child group {child} top {:?} above {:?}", self.keys[child_top], self.keys[base + s]),
                    );
                }
            }
        }
        if total != n {
            report.push(ViolationKind::Count, 0, 0, format!("group counts sum to {total}, size {n}"));
        }
        // every group must hang off the root through child links
        let mut reached = vec![false; self.groups.len()];
        let mut stack = Vec::new();
        if !self.groups.is_empty() {
            reached[0] = true;
            stack.push(0usize);
        }
        while let Some(g) = stack.pop() {
            let base = g * k;
            for s in 0..(self.groups[g].count as usize).min(n.saturating_sub(base)) {
                let c = self.links[base + s] as usize;
                if c != NIL as usize && c < reached.len() && !reached[c] {
                    reached[c] = true;
                    stack.push(c);
                }
            }
        }
        for (g, r) in reached.iter().enumerate() {
            if !r {
                report.push(ViolationKind::Shape, g as GroupId, 0, "unreachable from the root group".into());
            }
        }
    }

    fn depth(&self) -> usize {
        let mut d = 0;
        let mut groups = self.groups.len();
        while groups > 1 {
            groups = (groups - 2) / self.arity + 1;
            d += 1;
        }
        d
    }
}

#[derive(Debug, Clone)]
enum Repr<K, T> {
    Binary(BinaryHeap<K, T>),
    Grouped(Grouped<K, T>),
}

/// Layered max-heap with `layers` levels of heap nesting.
///
/// One layer is the plain binary heap. For two or more layers the fan-out is
/// [`compute_arity`] of the capacity; when the heap fills up it doubles its
/// capacity and, if the arity changes, rebuilds itself by reinsertion.
#[derive(Debug, Clone)]
pub struct LayeredHeap<K, T = OpCounters> {
    layers: u32,
    arity: usize,
    capacity: usize,
    arity_override: Option<usize>,
    repr: Repr<K, T>,
}

impl<K: Key, T: Tally> LayeredHeap<K, T> {
    /// Empty heap sized for `capacity_hint` keys. `arity_override` pins the
    /// fan-out (ignored for a single layer, which is always binary).
    pub fn new(layers: u32, capacity_hint: usize, arity_override: Option<usize>) -> Result<Self> {
        if layers < 1 {
            return Err(HeapError::Config(format!("layers must be at least 1, got {layers}")));
        }
        if capacity_hint < 1 {
            return Err(HeapError::Config("capacity hint must be at least 1".into()));
        }
        if let Some(k) = arity_override {
            if k < 2 {
                return Err(HeapError::Config(format!("arity must be at least 2, got {k}")));
            }
        }
        let arity = Self::arity_for(layers, capacity_hint, arity_override);
        let repr = Self::fresh_repr(layers, arity, capacity_hint, T::default());
        Ok(LayeredHeap { layers, arity, capacity: capacity_hint, arity_override, repr })
    }

    fn arity_for(layers: u32, capacity: usize, arity_override: Option<usize>) -> usize {
        if layers == 1 {
            2
        } else {
            arity_override.unwrap_or_else(|| compute_arity(layers, capacity as u64))
        }
    }

    fn fresh_repr(layers: u32, arity: usize, reserve: usize, tally: T) -> Repr<K, T> {
        if layers == 1 {
            let mut b = BinaryHeap::with_capacity(reserve);
            *b.tally_mut() = tally;
            Repr::Binary(b)
        } else {
            Repr::Grouped(Grouped::new(layers, arity, reserve, tally))
        }
    }

    pub fn layers(&self) -> u32 {
        self.layers
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Binary(b) => b.len(),
            Repr::Grouped(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of groups below the root on the deepest path (0 for a binary heap).
    pub fn group_depth(&self) -> usize {
        match &self.repr {
            Repr::Binary(_) => 0,
            Repr::Grouped(g) => g.depth(),
        }
    }

    pub fn group_count(&self) -> usize {
        match &self.repr {
            Repr::Binary(_) => usize::from(!self.is_empty()),
            Repr::Grouped(g) => g.groups.len(),
        }
    }

    /// The discipline used inside each group.
    pub fn local_shape(&self) -> LocalShape {
        match &self.repr {
            Repr::Binary(_) => LocalShape::Binary,
            Repr::Grouped(g) => g.shape.clone(),
        }
    }

    pub fn insert(&mut self, key: K) {
        if self.len() == self.capacity {
            self.grow_to(Self::grown_capacity(self.len() + 1));
        }
        match &mut self.repr {
            Repr::Binary(b) => b.insert(key),
            Repr::Grouped(g) => g.insert(key),
        }
    }

    pub fn pop_max(&mut self) -> Result<K> {
        match &mut self.repr {
            Repr::Binary(b) => b.pop(),
            Repr::Grouped(g) => g.pop_max().ok_or(HeapError::Empty),
        }
    }

    pub fn peek_max(&self) -> Result<K> {
        match &self.repr {
            Repr::Binary(b) => b.peek(),
            Repr::Grouped(g) => g.keys.first().copied().ok_or(HeapError::Empty),
        }
    }

    fn grown_capacity(size: usize) -> usize {
        (2 * size).max(4)
    }

    /// Raises the capacity to `max(4, 2 * len)` and recomputes the arity.
    pub fn grow(&mut self) {
        self.grow_to(Self::grown_capacity(self.len()));
    }

    fn grow_to(&mut self, capacity: usize) {
        self.capacity = capacity;
        let arity = Self::arity_for(self.layers, capacity, self.arity_override);
        if arity == self.arity {
            return;
        }
        self.arity = arity;
        let placeholder = Repr::Binary(BinaryHeap::new());
        let (keys, tally) = match std::mem::replace(&mut self.repr, placeholder) {
            Repr::Binary(_) => unreachable!("a single layer never changes arity"),
            Repr::Grouped(g) => (g.keys, g.tally),
        };
        let mut fresh = Grouped::new(self.layers, arity, capacity, tally);
        for key in keys {
            fresh.insert(key);
        }
        self.repr = Repr::Grouped(fresh);
    }

    /// Exhaustive structural audit. Read-only; never touches the counters.
    pub fn check_structure(&self) -> CheckReport {
        let mut report = CheckReport::default();
        match &self.repr {
            Repr::Binary(b) => {
                let s = b.as_slice();
                for i in 1..s.len() {
                    let p = (i - 1) / 2;
                    if s[p] < s[i] {
                        report.push(
                            ViolationKind::LocalOrder,
                            0,
                            i,
                            format!("key {:?} above parent slot {p} key {:?}", s[i], s[p]),
                        );
                    }
                }
            }
            Repr::Grouped(g) => g.check(&mut report),
        }
        report
    }

    pub fn counters(&self) -> OpCounters {
        match &self.repr {
            Repr::Binary(b) => b.counters(),
            Repr::Grouped(g) => g.tally.snapshot(),
        }
    }

    pub fn reset_counters(&mut self) {
        match &mut self.repr {
            Repr::Binary(b) => b.reset_counters(),
            Repr::Grouped(g) => g.tally.reset(),
        }
    }

    /// Bytes of slot and group bookkeeping currently allocated.
    pub fn allocated_bytes(&self) -> usize {
        match &self.repr {
            Repr::Binary(b) => b.capacity() * std::mem::size_of::<K>(),
            Repr::Grouped(g) => {
                g.keys.capacity() * std::mem::size_of::<K>()
                    + g.links.capacity() * std::mem::size_of::<GroupId>()
                    + g.groups.capacity() * std::mem::size_of::<GroupMeta>()
            }
        }
    }

    /// Drains the keys in arbitrary order.
    pub fn into_keys(self) -> Vec<K> {
        match self.repr {
            Repr::Binary(b) => b.into_keys(),
            Repr::Grouped(g) => g.keys,
        }
    }
}

impl<K: Key, T: Tally> MaxQueue<K> for LayeredHeap<K, T> {
    fn name(&self) -> String {
        "layered".to_string()
    }
    fn insert(&mut self, key: K) -> Result<()> {
        LayeredHeap::insert(self, key);
        Ok(())
    }
    fn pop_max(&mut self) -> Result<K> {
        LayeredHeap::pop_max(self)
    }
    fn peek_max(&self) -> Result<K> {
        LayeredHeap::peek_max(self)
    }
    fn len(&self) -> usize {
        LayeredHeap::len(self)
    }
    fn counters(&self) -> OpCounters {
        LayeredHeap::counters(self)
    }
    fn reset_counters(&mut self) {
        LayeredHeap::reset_counters(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Heap = LayeredHeap<i64>;

    fn grouped(h: &mut Heap) -> &mut Grouped<i64, OpCounters> {
        match &mut h.repr {
            Repr::Grouped(g) => g,
            Repr::Binary(_) => panic!("expected a grouped heap"),
        }
    }

    fn assert_ok(h: &Heap) {
        let r = h.check_structure();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn construction() {
        let h = Heap::new(2, 65_536, None).unwrap();
        assert_eq!((h.arity(), h.len()), (16, 0));
        let h = Heap::new(1, 100, None).unwrap();
        assert_eq!((h.arity(), h.len()), (2, 0));
        assert_eq!(h.local_shape(), LocalShape::Binary);
        let h = Heap::new(2, 100, Some(3)).unwrap();
        assert_eq!((h.arity(), h.len()), (3, 0));
        assert!(h.is_empty());
        assert_eq!(h.group_count(), 0);
    }

    #[test]
    fn bad_configuration() {
        assert!(matches!(Heap::new(0, 10, None), Err(HeapError::Config(_))));
        assert!(matches!(Heap::new(2, 10, Some(1)), Err(HeapError::Config(_))));
        assert!(matches!(Heap::new(2, 0, None), Err(HeapError::Config(_))));
    }

    #[test]
    fn single_insert() {
        let mut h = Heap::new(2, 16, None).unwrap();
        h.insert(5);
        assert_eq!(h.peek_max(), Ok(5));
        assert_eq!(h.len(), 1);
        assert_eq!(h.counters().comparisons, 0);
    }

    #[test]
    fn second_insert_compares() {
        let mut h = Heap::new(2, 16, None).unwrap();
        h.insert(1);
        h.insert(2);
        assert!(h.counters().comparisons >= 1);
        assert_eq!(h.peek_max(), Ok(2));
    }

    #[test]
    fn ascending_inserts_then_drain() {
        let mut h = Heap::new(2, 1024, None).unwrap();
        for i in 1..=1000 {
            h.insert(i);
        }
        assert_ok(&h);
        assert_eq!(h.peek_max(), Ok(1000));
        for expected in (1..=1000).rev() {
            assert_eq!(h.pop_max(), Ok(expected));
        }
        assert_eq!(h.pop_max(), Err(HeapError::Empty));
        assert_ok(&h);
    }

    #[test]
    fn hundred_ascending() {
        let mut h = Heap::new(2, 128, None).unwrap();
        for i in 1..=100 {
            h.insert(i);
            assert_ok(&h);
        }
        assert_eq!(h.peek_max(), Ok(100));
    }

    #[test]
    fn duplicates() {
        let mut h = Heap::new(2, 16, None).unwrap();
        for _ in 0..3 {
            h.insert(7);
        }
        assert_eq!([h.pop_max(), h.pop_max(), h.pop_max()], [Ok(7), Ok(7), Ok(7)]);
        assert!(h.is_empty());
    }

    #[test]
    fn peek_and_len() {
        let mut h = Heap::new(2, 16, None).unwrap();
        assert_eq!(h.peek_max(), Err(HeapError::Empty));
        for k in [4, 9, 2] {
            h.insert(k);
        }
        assert_eq!(h.peek_max(), Ok(9));
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn pop_empty_does_not_mutate() {
        let mut h = Heap::new(2, 16, Some(3)).unwrap();
        assert_eq!(h.pop_max(), Err(HeapError::Empty));
        assert_eq!(h.counters(), OpCounters::default());
        assert_eq!(h.len(), 0);
    }

    #[test]
    fn small_pops() {
        let mut h = Heap::new(2, 16, None).unwrap();
        for k in [1, 2, 3] {
            h.insert(k);
        }
        assert_eq!(h.pop_max(), Ok(3));
        assert_eq!(h.pop_max(), Ok(2));
        assert_eq!(h.pop_max(), Ok(1));
    }

    #[test]
    fn local_sift_examples() {
        // group [9, 4, 7]: slot 2's local parent is slot 0, no move
        let mut h = Heap::new(2, 16, Some(4)).unwrap();
        let g = grouped(&mut h);
        g.groups.push(GroupMeta { count: 3, parent: NIL, parent_slot: NIL });
        g.keys.extend([9, 4, 7]);
        g.links.extend([NIL; 3]);
        assert_eq!(g.local_sift_up(0, 2), 2);
        assert_eq!(g.keys, vec![9, 4, 7]);

        // [3] then 8 placed at slot 1 rises to slot 0
        let mut h = Heap::new(2, 16, Some(4)).unwrap();
        let g = grouped(&mut h);
        g.groups.push(GroupMeta { count: 2, parent: NIL, parent_slot: NIL });
        g.keys.extend([3, 8]);
        g.links.extend([NIL; 2]);
        assert_eq!(g.local_sift_up(0, 1), 0);
        assert_eq!(g.keys, vec![8, 3]);

        // [1, 9, 7] with 1 at the root sinks towards the larger child
        let mut h = Heap::new(2, 16, Some(4)).unwrap();
        let g = grouped(&mut h);
        g.groups.push(GroupMeta { count: 3, parent: NIL, parent_slot: NIL });
        g.keys.extend([1, 9, 7]);
        g.links.extend([NIL; 3]);
        assert_eq!(g.local_sift_down(0, 0), 1);
        assert_eq!(g.keys, vec![9, 1, 7]);
    }

    #[test]
    fn entry_moves_carry_links() {
        let mut h = Heap::new(2, 64, Some(3)).unwrap();
        for k in [10, 20, 30, 1, 2, 3, 4] {
            h.insert(k);
            assert_ok(&h);
        }
        let g = grouped(&mut h);
        let before = g.tally;
        // force a whole-entry swap inside the root group and confirm links follow
        let owner_of_1 = g.groups[1].parent_slot as usize;
        let other = (owner_of_1 + 1) % 3;
        g.swap_entries(0, owner_of_1, other);
        assert_eq!(g.groups[1].parent_slot as usize, other);
        assert!(g.tally.link_fixes > before.link_fixes);
    }

    #[test]
    fn remove_last_retreats_frontier() {
        let mut h = Heap::new(2, 16, Some(16)).unwrap();
        for i in 1..=17 {
            h.insert(i);
        }
        assert_eq!(h.group_count(), 2);
        let max = h.peek_max().unwrap();
        let g = grouped(&mut h);
        let last = *g.keys.last().unwrap();
        assert_eq!(g.remove_last(), Some(last));
        assert!(last <= max);
        assert_eq!(h.group_count(), 1);
        assert_ok(&h);
    }

    #[test]
    fn remove_last_single() {
        let mut h = Heap::new(2, 16, None).unwrap();
        h.insert(5);
        assert_eq!(grouped(&mut h).remove_last(), Some(5));
        assert!(h.is_empty());
        assert_eq!(h.group_count(), 0);
        assert_eq!(grouped(&mut h).remove_last(), None);
    }

    #[test]
    fn grow_recomputes_arity() {
        let mut h = Heap::new(2, 16, None).unwrap();
        assert_eq!(h.arity(), 4);
        for i in 0..16 {
            h.insert(i * 3 % 17);
        }
        assert_eq!(h.capacity(), 16);
        h.insert(100);
        assert_eq!(h.capacity(), 34);
        assert_eq!(h.arity(), compute_arity(2, 34));
        assert_eq!(h.len(), 17);
        assert_ok(&h);
        let mut keys = h.clone().into_keys();
        keys.sort_unstable();
        let mut expected: Vec<i64> = (0..16).map(|i| i * 3 % 17).chain([100]).collect();
        expected.sort_unstable();
        assert_eq!(keys, expected);
        let drained: Vec<i64> = std::iter::from_fn(|| h.pop_max().ok()).collect();
        expected.reverse();
        assert_eq!(drained, expected);
    }

    #[test]
    fn grow_empty() {
        let mut h = Heap::new(2, 1, None).unwrap();
        h.grow();
        assert_eq!(h.capacity(), 4);
        assert!(h.is_empty());
    }

    #[test]
    fn checker_flags_local_inversion() {
        let mut h = Heap::new(2, 16, Some(4)).unwrap();
        for k in [9, 5, 7, 1] {
            h.insert(k);
        }
        assert_ok(&h);
        grouped(&mut h).keys.swap(0, 1);
        let r = h.check_structure();
        assert!(!r.ok());
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::LocalOrder && v.group == 0 && v.slot == 1));
    }

    #[test]
    fn checker_flags_boundary_and_backlink() {
        let mut h = Heap::new(2, 64, Some(3)).unwrap();
        for k in 1..=9 {
            h.insert(k);
        }
        assert_ok(&h);
        let g = grouped(&mut h);
        let owner = g.groups[1].parent_slot as usize;
        g.keys[3] = 1000;
        let r = h.check_structure();
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::BoundaryOrder && v.group == 0 && v.slot == owner));

        let mut h = Heap::new(2, 64, Some(3)).unwrap();
        for k in 1..=9 {
            h.insert(k);
        }
        grouped(&mut h).groups[1].parent_slot = 99;
        let r = h.check_structure();
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::Backlink));
    }

    #[test]
    fn binary_layer_checker() {
        let mut h = Heap::new(1, 16, Some(7)).unwrap();
        assert_eq!(h.arity(), 2);
        for k in [3, 1, 2, 8, 8, 0] {
            h.insert(k);
            assert_ok(&h);
        }
        assert_eq!(h.pop_max(), Ok(8));
        assert_ok(&h);
    }

    #[test]
    fn three_layers_with_nested_groups() {
        let mut h = Heap::new(3, 4096, Some(16)).unwrap();
        assert!(matches!(h.local_shape(), LocalShape::Tree(_)));
        let keys: Vec<i64> = (0..2000).map(|i| (i * 7919) % 1009).collect();
        for (i, &k) in keys.iter().enumerate() {
            h.insert(k);
            if i % 97 == 0 {
                assert_ok(&h);
            }
        }
        assert_ok(&h);
        let mut sorted = keys.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        for (i, expected) in sorted.into_iter().enumerate() {
            assert_eq!(h.pop_max(), Ok(expected));
            if i % 89 == 0 {
                assert_ok(&h);
            }
        }
    }

    #[test]
    fn deterministic() {
        let run = || {
            let mut h = Heap::new(2, 8, None).unwrap();
            for i in 0..500i64 {
                h.insert((i * 31) % 97);
                if i % 3 == 0 {
                    h.pop_max().unwrap();
                }
            }
            (h.counters(), h.clone().into_keys())
        };
        assert_eq!(run(), run());
    }
}
