//! Set splitting to square roots: the gadget graph.
//!
//! Vertices are one `x:<s>` per element, and for each subset index `j` a set
//! vertex `c:<j>` plus its tail `xc:1:<j>`, `xc:2:<j>`, `xc:3:<j>`. There are
//! also three `a:<i>`, three `b:<i>`, and each `b:<i>` gets its own tail
//! `bt:<i>:1..3`. Edges come in seven families; see [`EdgeFamily`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ReductionError;
use crate::graph::{Graph, GraphBuilder};
use crate::setsplit::{validate_instance, SetSplitInstance};

/// Structural role of a gadget vertex. Subset identity is the subset's index
/// in the collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexRole {
    Element(usize),
    SetVertex(usize),
    /// `(subset, position)` with position in 1..=3 along the tail.
    SetTail(usize, u8),
    A(u8),
    B(u8),
    /// `(i, position)` for the tail hanging off `b:<i>`.
    BTail(u8, u8),
}

impl VertexRole {
    pub fn label(&self, inst: &SetSplitInstance) -> String {
        match *self {
            VertexRole::Element(s) => element_label(&inst.ground_set()[s]),
            VertexRole::SetVertex(c) => set_label(c),
            VertexRole::SetTail(c, k) => set_tail_label(c, k),
            VertexRole::A(i) => a_label(i),
            VertexRole::B(i) => b_label(i),
            VertexRole::BTail(i, k) => b_tail_label(i, k),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            VertexRole::Element(_) => "Element",
            VertexRole::SetVertex(_) => "SetVertex",
            VertexRole::SetTail(..) => "SetTail",
            VertexRole::A(_) => "A",
            VertexRole::B(_) => "B",
            VertexRole::BTail(..) => "BTail",
        }
    }
}

pub fn element_label(s: &str) -> String {
    format!("x:{s}")
}
pub fn set_label(c: usize) -> String {
    format!("c:{c}")
}
pub fn set_tail_label(c: usize, k: u8) -> String {
    format!("xc:{k}:{c}")
}
pub fn a_label(i: u8) -> String {
    format!("a:{i}")
}
pub fn b_label(i: u8) -> String {
    format!("b:{i}")
}
pub fn b_tail_label(i: u8, k: u8) -> String {
    format!("bt:{i}:{k}")
}

/// The seven edge rules of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EdgeFamily {
    /// Element clique.
    ElementClique,
    /// Every element to every `a` and `b`.
    ElementToAB,
    /// Every set vertex to every `a` and `b`.
    SetToAB,
    /// Set vertices whose subsets intersect.
    IntersectingSets,
    /// Set tails and set-to-member edges.
    SetTail,
    /// `a_i b_j` for all pairs, `b_i b_j` for `i < j`.
    ABCore,
    /// `b` tails, including the `bt:<i>:3` edges to elements and `a:<i>`.
    BTail,
}

impl EdgeFamily {
    pub const ALL: [EdgeFamily; 7] = [
        EdgeFamily::ElementClique,
        EdgeFamily::ElementToAB,
        EdgeFamily::SetToAB,
        EdgeFamily::IntersectingSets,
        EdgeFamily::SetTail,
        EdgeFamily::ABCore,
        EdgeFamily::BTail,
    ];
}

/// Which rule an edge between two roles belongs to, judged from the roles
/// alone. `None` means no rule produces such an edge.
pub fn classify_edge(x: VertexRole, y: VertexRole) -> Option<EdgeFamily> {
    use VertexRole::*;
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    match (x, y) {
        (Element(_), Element(_)) => Some(EdgeFamily::ElementClique),
        (Element(_), A(_)) | (Element(_), B(_)) => Some(EdgeFamily::ElementToAB),
        (SetVertex(_), A(_)) | (SetVertex(_), B(_)) => Some(EdgeFamily::SetToAB),
        (SetVertex(_), SetVertex(_)) => Some(EdgeFamily::IntersectingSets),
        (Element(_), SetVertex(_)) | (Element(_), SetTail(_, 3)) => Some(EdgeFamily::SetTail),
        (SetVertex(c), SetTail(d, 2 | 3)) if c == d => Some(EdgeFamily::SetTail),
        (SetTail(c, _), SetTail(d, _)) if c == d => Some(EdgeFamily::SetTail),
        (A(_), B(_)) | (B(_), B(_)) => Some(EdgeFamily::ABCore),
        (Element(_), BTail(_, 3)) => Some(EdgeFamily::BTail),
        (A(i), BTail(j, 3)) | (B(i), BTail(j, 2 | 3)) if i == j => Some(EdgeFamily::BTail),
        (BTail(i, _), BTail(j, _)) if i == j => Some(EdgeFamily::BTail),
        _ => None,
    }
}

/// A gadget graph together with the role of every vertex.
#[derive(Debug, Clone)]
pub struct LabeledGadgetGraph {
    pub graph: Graph,
    /// Role of each vertex, aligned with `graph` vertex indices.
    pub roles: Vec<VertexRole>,
    pub instance: SetSplitInstance,
}

impl LabeledGadgetGraph {
    pub fn role_of(&self, label: &str) -> Option<VertexRole> {
        self.graph.index_of(label).map(|i| self.roles[i])
    }

    pub fn element_vertex(&self, s: usize) -> usize {
        self.graph.index_of(&element_label(&self.instance.ground_set()[s])).unwrap()
    }

    pub fn vertex(&self, role: VertexRole) -> usize {
        self.graph.index_of(&role.label(&self.instance)).expect("role belongs to this gadget")
    }

    /// Edge counts per family. Panics on an edge no rule explains.
    pub fn family_counts(&self) -> BTreeMap<EdgeFamily, usize> {
        let mut out: BTreeMap<EdgeFamily, usize> = EdgeFamily::ALL.iter().map(|f| (*f, 0)).collect();
        for (a, b) in self.graph.edges() {
            let fam = classify_edge(self.roles[a], self.roles[b])
                .unwrap_or_else(|| panic!("unexplained edge {} {}", self.graph.label(a), self.graph.label(b)));
            *out.get_mut(&fam).unwrap() += 1;
        }
        out
    }

    /// Sidecar role map: label to `{"role": .., "args": [..]}`.
    pub fn role_map(&self) -> RoleMap {
        let entries = self
            .graph
            .labels()
            .iter()
            .zip(&self.roles)
            .map(|(l, r)| (l.clone(), RoleEntry::from_role(*r, &self.instance)))
            .collect();
        RoleMap(entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleEntry {
    pub role: String,
    pub args: Vec<String>,
}

impl RoleEntry {
    fn from_role(r: VertexRole, inst: &SetSplitInstance) -> Self {
        let args = match r {
            VertexRole::Element(s) => vec![inst.ground_set()[s].clone()],
            VertexRole::SetVertex(c) => vec![c.to_string()],
            VertexRole::SetTail(c, k) => vec![c.to_string(), k.to_string()],
            VertexRole::A(i) | VertexRole::B(i) => vec![i.to_string()],
            VertexRole::BTail(i, k) => vec![i.to_string(), k.to_string()],
        };
        RoleEntry { role: r.kind().to_string(), args }
    }
}

/// JSON role map keyed by vertex label.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RoleMap(pub BTreeMap<String, RoleEntry>);

impl RoleMap {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("role map serializes")
    }

    pub fn kind_of(&self, label: &str) -> Option<&str> {
        self.0.get(label).map(|e| e.role.as_str())
    }
}

pub fn setsplit_to_graph(inst: &SetSplitInstance) -> Result<LabeledGadgetGraph, ReductionError> {
    if inst.collection().is_empty() {
        return Err(ReductionError::EmptyCollection);
    }
    let violations = validate_instance(inst);
    if !violations.is_empty() {
        return Err(ReductionError::InvalidInstance(violations));
    }

    let mut b = GraphBuilder::new();
    let mut roles = Vec::new();
    let mut add = |b: &mut GraphBuilder, r: VertexRole| {
        b.add_vertex(r.label(inst)).expect("gadget labels are unique");
        roles.push(r);
    };
    let elements = inst.ground_set().len();
    let sets = inst.collection().len();
    for s in 0..elements {
        add(&mut b, VertexRole::Element(s));
    }
    for c in 0..sets {
        add(&mut b, VertexRole::SetVertex(c));
        for k in 1..=3 {
            add(&mut b, VertexRole::SetTail(c, k));
        }
    }
    for i in 1..=3 {
        add(&mut b, VertexRole::A(i));
    }
    for i in 1..=3 {
        add(&mut b, VertexRole::B(i));
    }
    for i in 1..=3 {
        for k in 1..=3 {
            add(&mut b, VertexRole::BTail(i, k));
        }
    }

    let x = |s: &str| element_label(s);
    let mut edge = |p: String, q: String| b.add_edge(&p, &q).expect("gadget edges are distinct");
    let ground = inst.ground_set();

    // element clique
    for (k, s) in ground.iter().enumerate() {
        for t in &ground[k + 1..] {
            edge(x(s), x(t));
        }
    }
    // elements to a_i, b_i
    for i in 1..=3 {
        for s in ground {
            edge(a_label(i), x(s));
            edge(b_label(i), x(s));
        }
    }
    // set vertices to a_i, b_i
    for i in 1..=3 {
        for c in 0..sets {
            edge(a_label(i), set_label(c));
            edge(b_label(i), set_label(c));
        }
    }
    // intersecting subsets
    for c1 in 0..sets {
        for c2 in c1 + 1..sets {
            let first = &inst.collection()[c1];
            if inst.collection()[c2].iter().any(|e| first.contains(e)) {
                edge(set_label(c1), set_label(c2));
            }
        }
    }
    // tail at each set vertex, plus edges to members
    for (c, members) in inst.collection().iter().enumerate() {
        let t = |k| set_tail_label(c, k);
        edge(t(1), t(2));
        edge(t(1), t(3));
        edge(t(2), t(3));
        edge(t(2), set_label(c));
        edge(t(3), set_label(c));
        for s in members {
            edge(t(3), x(s));
            edge(set_label(c), x(s));
        }
    }
    // a_i b_j and b_i b_j
    for i in 1..=3 {
        for j in 1..=3 {
            edge(a_label(i), b_label(j));
            if i < j {
                edge(b_label(i), b_label(j));
            }
        }
    }
    // tail at each b_i
    for i in 1..=3 {
        let t = |k| b_tail_label(i, k);
        edge(t(1), t(2));
        edge(t(1), t(3));
        edge(t(2), t(3));
        edge(t(2), b_label(i));
        edge(t(3), b_label(i));
        for s in ground {
            edge(t(3), x(s));
        }
        edge(t(3), a_label(i));
    }

    Ok(LabeledGadgetGraph { graph: b.build(), roles, instance: inst.clone() })
}
