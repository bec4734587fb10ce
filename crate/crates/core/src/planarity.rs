//! Exact planarity testing (left-right criterion) and apex-set checks.
//!
//! The test follows the two-pass formulation of the left-right planarity
//! criterion: a DFS orients the graph and computes lowpoints, then a second
//! DFS over nesting-ordered adjacency lists maintains a stack of conflict
//! pairs of return-edge intervals. No embedding is produced.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarityError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("apex search would examine {needed} subsets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

/// Result of an apex query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApexCertificate {
    pub apex_set: BTreeSet<String>,
    pub remainder_planar: bool,
}

pub fn is_planar(g: &Graph) -> bool {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if n < 5 || m < 9 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    LrPlanarity::new(g).run()
}

pub fn is_apex_with<S: AsRef<str>>(g: &Graph, apex: &[S]) -> Result<ApexCertificate, PlanarityError> {
    let mut apex_set = BTreeSet::new();
    for l in apex {
        let l = l.as_ref();
        if !g.contains(l) {
            return Err(PlanarityError::UnknownVertex(l.to_string()));
        }
        apex_set.insert(l.to_string());
    }
    let rest = g.without_vertices(apex);
    Ok(ApexCertificate { apex_set, remainder_planar: is_planar(&rest) })
}

/// Default cap on the number of candidate subsets examined by [`find_apex_set`].
pub const DEFAULT_APEX_BUDGET: u128 = 5_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Smallest-first exhaustive search for a set of at most `k` vertices whose
/// removal leaves a planar graph. Subsets are tried by size, then in
/// lexicographic index order, so the answer is deterministic.
pub fn find_apex_set(g: &Graph, k: usize, budget: u128) -> Result<Option<BTreeSet<String>>, PlanarityError> {
    let n = g.vertex_count();
    let k = k.min(n);
    let needed: u128 = (0..=k as u128).map(|j| binomial(n as u128, j)).sum();
    if needed > budget {
        return Err(PlanarityError::BudgetExceeded { needed, budget });
    }
    for size in 0..=k {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let labels: Vec<&str> = combo.iter().map(|&i| g.label(i)).collect();
            if is_planar(&g.without_vertices(&labels)) {
                return Ok(Some(labels.into_iter().map(str::to_string).collect()));
            }
            // next combination in lexicographic order
            let mut i = size;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if combo[i] < n - size + i {
                    combo[i] += 1;
                    for j in i + 1..size {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn single(e: usize) -> Self {
        Interval { low: Some(e), high: Some(e) }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy)]
struct ConflictPair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

const NONE: usize = usize::MAX;

struct LrPlanarity<'g> {
    g: &'g Graph,
    /// Undirected edge list; orientation is filled in by the first pass.
    ends: Vec<(usize, usize)>,
    edge_at: Vec<Vec<(usize, usize)>>,
    oriented: Vec<bool>,
    src: Vec<usize>,
    dst: Vec<usize>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    out: Vec<Vec<usize>>,
    roots: Vec<usize>,
    // testing pass
    refs: Vec<Option<usize>>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<Option<usize>>,
    stack: Vec<ConflictPair>,
    next_pair_id: usize,
}

impl<'g> LrPlanarity<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        let ends: Vec<(usize, usize)> = g.edges().collect();
        let mut edge_at = vec![Vec::new(); n];
        for (id, &(a, b)) in ends.iter().enumerate() {
            edge_at[a].push((b, id));
            edge_at[b].push((a, id));
        }
        let m = ends.len();
        LrPlanarity {
            g,
            ends,
            edge_at,
            oriented: vec![false; m],
            src: vec![NONE; m],
            dst: vec![NONE; m],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            out: vec![Vec::new(); n],
            roots: Vec::new(),
            refs: vec![None; m],
            lowpt_edge: vec![NONE; m],
            stack_bottom: vec![None; m],
            stack: Vec::new(),
            next_pair_id: 0,
        }
    }

    fn run(mut self) -> bool {
        debug_assert_eq!(self.ends.len(), self.g.edge_count());
        for v in 0..self.g.vertex_count() {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..self.g.vertex_count() {
            let nesting = &self.nesting;
            self.out[v].sort_by_key(|&e| nesting[e]);
        }
        for r in std::mem::take(&mut self.roots) {
            if !self.test(r) {
                return false;
            }
        }
        true
    }

    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for k in 0..self.edge_at[v].len() {
            let (w, id) = self.edge_at[v][k];
            if self.oriented[id] {
                continue;
            }
            self.oriented[id] = true;
            self.src[id] = v;
            self.dst[id] = w;
            self.out[v].push(id);
            self.lowpt[id] = self.height[v];
            self.lowpt2[id] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = id;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[id] = self.height[w];
            }
            self.nesting[id] = 2 * self.lowpt[id] + usize::from(self.lowpt2[id] < self.height[v]);
            if e != NONE {
                if self.lowpt[id] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[id]);
                    self.lowpt[e] = self.lowpt[id];
                } else if self.lowpt[id] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[id]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[id]);
                }
            }
        }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn new_pair(&mut self, left: Interval, right: Interval) -> ConflictPair {
        self.next_pair_id += 1;
        ConflictPair { id: self.next_pair_id, left, right }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) if !i.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.unwrap()];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.unwrap()];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let out = self.out[v].clone();
        for (k, &ei) in out.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.top_id();
            if self.parent_edge[w] == ei {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                let pair = self.new_pair(Interval::default(), Interval::single(ei));
                self.stack.push(pair);
            }
            if self.lowpt[ei] < self.height[v] {
                if k == 0 {
                    if e != NONE {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    }
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = self.new_pair(Interval::default(), Interval::default());
        // merge return edges of ei into p.right
        loop {
            let Some(mut q) = self.stack.pop() else { return false };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.unwrap();
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.refs[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.refs[low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.refs[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                self.refs[p.left.low.unwrap()] = p.right.low;
                p.left.low = None;
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                self.refs[p.right.low.unwrap()] = p.left.low;
                p.right.low = None;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                self.refs[e] = match (hl, hr) {
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    (Some(l), None) => Some(l),
                    _ => hr,
                };
            }
        }
    }
}
