//! Fibonacci max-heap (Fredman and Tarjan), arena-allocated with index links.
//!
//! Only insert, peek and extract-max are exposed. Marks exist on nodes
//! because cascading cuts need them, but nothing here cuts, so they stay
//! false.

use crate::counters::{OpCounters, Tally};
use crate::error::{HeapError, Result};
use crate::queue::MaxQueue;
use crate::Key;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node<K> {
    key: K,
    degree: u32,
    marked: bool,
    parent: u32,
    child: u32,
    left: u32,
    right: u32,
}

#[derive(Debug, Clone)]
pub struct FibHeap<K, T = OpCounters> {
    nodes: Vec<Node<K>>,
    free: Vec<u32>,
    max: u32,
    len: usize,
    degree_table: Vec<u32>,
    scratch: Vec<u32>,
    tally: T,
}

impl<K: Key, T: Tally> Default for FibHeap<K, T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Key, T: Tally> FibHeap<K, T> {
    pub fn new() -> Self {
        FibHeap {
            nodes: Vec::new(),
            free: Vec::new(),
            max: NIL,
            len: 0,
            degree_table: Vec::new(),
            scratch: Vec::new(),
            tally: T::default(),
        }
    }

    pub fn with_capacity(capacity: usize) -> Self {
        let mut h = Self::new();
        h.nodes.reserve(capacity);
        h
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn node(&self, i: u32) -> &Node<K> {
        &self.nodes[i as usize]
    }

    fn node_mut(&mut self, i: u32) -> &mut Node<K> {
        &mut self.nodes[i as usize]
    }

    fn alloc(&mut self, key: K) -> u32 {
        let fresh = Node { key, degree: 0, marked: false, parent: NIL, child: NIL, left: NIL, right: NIL };
        let id = match self.free.pop() {
            Some(id) => {
                self.nodes[id as usize] = fresh;
                id
            }
            None => {
                self.nodes.push(fresh);
                (self.nodes.len() - 1) as u32
            }
        };
        let n = self.node_mut(id);
        n.left = id;
        n.right = id;
        id
    }

    /// Splices singleton ring `x` to the right of `anchor`.
    fn splice_after(&mut self, anchor: u32, x: u32) {
        let next = self.node(anchor).right;
        self.node_mut(x).left = anchor;
        self.node_mut(x).right = next;
        self.node_mut(anchor).right = x;
        self.node_mut(next).left = x;
    }

    pub fn insert(&mut self, key: K) {
        let id = self.alloc(key);
        if self.max == NIL {
            self.max = id;
        } else {
            let max = self.max;
            self.splice_after(max, id);
            self.tally.comparison();
            if key > self.node(max).key {
                self.max = id;
            }
        }
        self.len += 1;
    }

    pub fn peek(&self) -> Result<K> {
        if self.max == NIL {
            Err(HeapError::Empty)
        } else {
            Ok(self.node(self.max).key)
        }
    }

    pub fn pop(&mut self) -> Result<K> {
        let z = self.max;
        if z == NIL {
            return Err(HeapError::Empty);
        }
        let key = self.node(z).key;

        // Collect the surviving roots and z's children as the new root list.
        self.scratch.clear();
        let mut r = self.node(z).right;
        while r != z {
            self.scratch.push(r);
            r = self.node(r).right;
        }
        let first_child = self.node(z).child;
        if first_child != NIL {
            let mut c = first_child;
            loop {
                let next = self.node(c).right;
                let n = self.node_mut(c);
                n.parent = NIL;
                n.marked = false;
                self.scratch.push(c);
                c = next;
                if c == first_child {
                    break;
                }
            }
        }

        self.free.push(z);
        self.len -= 1;
        if self.scratch.is_empty() {
            self.max = NIL;
        } else {
            self.consolidate();
        }
        Ok(key)
    }

    fn max_degree_bound(n: usize) -> usize {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        ((n.max(1) as f64).ln() / phi.ln()).floor() as usize + 2
    }

    fn consolidate(&mut self) {
        let size = Self::max_degree_bound(self.len);
        self.degree_table.clear();
        self.degree_table.resize(size, NIL);
        let roots = std::mem::take(&mut self.scratch);
        for &w in &roots {
            let mut x = w;
            let mut d = self.node(x).degree as usize;
            loop {
                if d >= self.degree_table.len() {
                    self.degree_table.resize(d + 1, NIL);
                }
                let y = self.degree_table[d];
                if y == NIL {
                    break;
                }
                self.tally.comparison();
                let (parent, child) = if self.node(y).key > self.node(x).key { (y, x) } else { (x, y) };
                self.link(child, parent);
                self.degree_table[d] = NIL;
                x = parent;
                d += 1;
            }
            self.degree_table[d] = x;
        }
        self.scratch = roots;

        // Rebuild the root ring from the table and locate the maximum.
        self.max = NIL;
        for i in 0..self.degree_table.len() {
            let x = self.degree_table[i];
            if x == NIL {
                continue;
            }
            let n = self.node_mut(x);
            n.left = x;
            n.right = x;
            if self.max == NIL {
                self.max = x;
            } else {
                let max = self.max;
                self.splice_after(max, x);
                self.tally.comparison();
                if self.node(x).key > self.node(max).key {
                    self.max = x;
                }
            }
        }
    }

    /// Makes root `child` a child of root `parent`.
    fn link(&mut self, child: u32, parent: u32) {
        self.tally.entry_move();
        {
            let c = self.node_mut(child);
            c.parent = parent;
            c.marked = false;
            c.left = child;
            c.right = child;
        }
        let first = self.node(parent).child;
        if first == NIL {
            self.node_mut(parent).child = child;
        } else {
            self.splice_after(first, child);
        }
        self.node_mut(parent).degree += 1;
    }

    fn ring(&self, start: u32) -> Vec<u32> {
        let mut out = Vec::new();
        if start == NIL {
            return out;
        }
        let mut x = start;
        loop {
            out.push(x);
            x = self.node(x).right;
            if x == start {
                break;
            }
        }
        out
    }

    /// Degrees of the current roots, in ring order from the maximum.
    pub fn root_degrees(&self) -> Vec<u32> {
        self.ring(self.max).into_iter().map(|r| self.node(r).degree).collect()
    }

    /// Walks every tree and verifies heap order, parent links, degree counts,
    /// the maximum reference, the degree bound, and that the live node count
    /// equals `len`. Returns a description of the first problem found.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let roots = self.ring(self.max);
        let mut seen = 0usize;
        let bound = ((self.len.max(1) as f64).ln() / ((1.0 + 5f64.sqrt()) / 2.0).ln()).floor() as u32 + 1;
        let mut stack: Vec<u32> = Vec::new();
        for &r in &roots {
            if self.node(r).parent != NIL {
                return Err(format!("root {r} has a parent"));
            }
            if self.node(r).key > self.node(self.max).key {
                return Err(format!("root {r} exceeds the max reference"));
            }
            stack.push(r);
        }
        while let Some(x) = stack.pop() {
            seen += 1;
            let n = self.node(x);
            if n.degree > bound {
                return Err(format!("node {x} degree {} exceeds {bound}", n.degree));
            }
            let kids = self.ring(n.child);
            if kids.len() != n.degree as usize {
                return Err(format!("node {x} degree {} but {} children", n.degree, kids.len()));
            }
            for c in kids {
                if self.node(c).parent != x {
                    return Err(format!("child {c} does not point at parent {x}"));
                }
                if self.node(c).key > n.key {
                    return Err(format!("child {c} exceeds parent {x}"));
                }
                stack.push(c);
            }
        }
        if seen != self.len {
            return Err(format!("reachable nodes {seen} != len {}", self.len));
        }
        if self.nodes.len() - self.free.len() != self.len {
            return Err("arena bookkeeping does not match len".to_string());
        }
        Ok(())
    }

    pub fn counters(&self) -> OpCounters {
        self.tally.snapshot()
    }

    pub fn reset_counters(&mut self) {
        self.tally.reset();
    }

    /// Bytes held by the node arena, per live key.
    pub fn arena_bytes(&self) -> usize {
        self.nodes.capacity() * std::mem::size_of::<Node<K>>()
    }
}

impl<K: Key, T: Tally> MaxQueue<K> for FibHeap<K, T> {
    fn name(&self) -> String {
        "fibonacci".to_string()
    }
    fn insert(&mut self, key: K) -> Result<()> {
        FibHeap::insert(self, key);
        Ok(())
    }
    fn pop_max(&mut self) -> Result<K> {
        self.pop()
    }
    fn peek_max(&self) -> Result<K> {
        self.peek()
    }
    fn len(&self) -> usize {
        self.len
    }
    fn counters(&self) -> OpCounters {
        self.tally.snapshot()
    }
    fn reset_counters(&mut self) {
        self.tally.reset();
    }
}
