//! Planar 3-colouring to three-part set splitting.
//!
//! Every edge `xy` gets a fresh vertex `z:x:y` adjacent to both ends; the
//! resulting triangles form the collection and all vertices of the augmented
//! graph form the ground set.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ReductionError;
use crate::graph::{Graph, GraphBuilder};
use crate::planarity::is_planar;
use crate::setsplit::{first_unsplit_subset, Partition3, SetSplitInstance};

/// A planar graph to be 3-coloured.
#[derive(Debug, Clone)]
pub struct ColoringInstance {
    graph: Graph,
}

impl ColoringInstance {
    pub fn new(graph: Graph) -> Result<Self, ReductionError> {
        if !is_planar(&graph) {
            return Err(ReductionError::NotPlanar);
        }
        Ok(ColoringInstance { graph })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

/// Vertex to colour in `1..=3`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Coloring3 {
    pub assignment: BTreeMap<String, u8>,
}

impl Coloring3 {
    pub fn color(&self, v: &str) -> Option<u8> {
        self.assignment.get(v).copied()
    }

    /// Checks totality, range, and properness on `g`.
    pub fn check_proper(&self, g: &Graph) -> Result<(), ReductionError> {
        for l in g.labels() {
            match self.color(l) {
                Some(1..=3) => {}
                Some(c) => return Err(ReductionError::ImproperColoring(format!("{l} has colour {c}"))),
                None => return Err(ReductionError::ImproperColoring(format!("{l} is uncoloured"))),
            }
        }
        if let Some((a, b)) = g.edges().find(|&(a, b)| self.color(g.label(a)) == self.color(g.label(b))) {
            return Err(ReductionError::ImproperColoring(format!(
                "edge {} {} is monochromatic",
                g.label(a),
                g.label(b)
            )));
        }
        Ok(())
    }

    pub fn restricted_to(&self, g: &Graph) -> Coloring3 {
        Coloring3 {
            assignment: g.labels().iter().filter_map(|l| self.color(l).map(|c| (l.clone(), c))).collect(),
        }
    }
}

/// Where a ground-set element came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ElementOrigin {
    Vertex,
    EdgeVertex { u: String, v: String },
}

/// Output of [`color_to_setsplit`].
#[derive(Debug, Clone)]
pub struct ColorReduction {
    pub instance: SetSplitInstance,
    /// The input graph with one extra vertex per edge.
    pub augmented: Graph,
    pub origins: BTreeMap<String, ElementOrigin>,
    pub source: Graph,
}

pub fn edge_vertex_label(u: &str, v: &str) -> String {
    format!("z:{u}:{v}")
}

pub fn color_to_setsplit(ci: &ColoringInstance) -> Result<ColorReduction, ReductionError> {
    let g = &ci.graph;
    if g.edge_count() == 0 {
        return Err(ReductionError::EmptyEdgeSet);
    }
    let mut b = GraphBuilder::new();
    let mut origins = BTreeMap::new();
    for l in g.labels() {
        b.add_vertex(l.clone())?;
        origins.insert(l.clone(), ElementOrigin::Vertex);
    }
    let mut collection = Vec::with_capacity(g.edge_count());
    for (x, y) in g.edges() {
        let (x, y) = (g.label(x), g.label(y));
        let z = edge_vertex_label(x, y);
        if b.contains_vertex(&z) {
            return Err(ReductionError::LabelCollision(z));
        }
        b.add_vertex(z.clone())?;
        b.add_edge(x, y)?;
        b.add_edge(x, &z)?;
        b.add_edge(y, &z)?;
        origins.insert(z.clone(), ElementOrigin::EdgeVertex { u: x.to_string(), v: y.to_string() });
        collection.push(vec![x.to_string(), y.to_string(), z]);
    }
    let augmented = b.build();
    let instance = SetSplitInstance::new(augmented.labels().to_vec(), collection)?;
    Ok(ColorReduction { instance, augmented, origins, source: g.clone() })
}

/// Lifts a proper colouring of the source graph to the augmented graph:
/// each edge vertex takes the colour its two neighbours leave free.
pub fn extend_coloring(red: &ColorReduction, f: &Coloring3) -> Result<Coloring3, ReductionError> {
    f.check_proper(&red.source)?;
    let mut out = f.restricted_to(&red.source);
    for (label, origin) in &red.origins {
        if let ElementOrigin::EdgeVertex { u, v } = origin {
            let (cu, cv) = (out.assignment[u], out.assignment[v]);
            let free = (1..=3).find(|c| *c != cu && *c != cv).expect("two colours leave one free");
            out.assignment.insert(label.clone(), free);
        }
    }
    Ok(out)
}

/// Colour classes of a proper colouring of the augmented graph.
pub fn coloring_to_partition(red: &ColorReduction, f: &Coloring3) -> Result<Partition3, ReductionError> {
    f.check_proper(&red.augmented)?;
    let mut p = Partition3 { parts: Default::default() };
    for l in red.augmented.labels() {
        p.parts[(f.assignment[l] - 1) as usize].insert(l.clone());
    }
    Ok(p)
}

/// Colours each element by the index of its part.
pub fn partition_to_coloring(red: &ColorReduction, p: &Partition3) -> Result<Coloring3, ReductionError> {
    if let Some(j) = first_unsplit_subset(&red.instance, p)? {
        return Err(ReductionError::InvalidPartition(format!("subset {j} misses a part")));
    }
    let assignment = red
        .augmented
        .labels()
        .iter()
        .map(|l| (l.clone(), p.part_of(l).expect("partition covers the ground set") as u8 + 1))
        .collect();
    let f = Coloring3 { assignment };
    f.check_proper(&red.augmented)
        .map_err(|e| ReductionError::ConstructionSelfCheckFailed(e.to_string()))?;
    Ok(f)
}

/// Backtracking 3-colouring in vertex order; returns the first colouring
/// found with colours tried in increasing order.
pub fn find_3_coloring(g: &Graph) -> Option<Coloring3> {
    fn go(v: usize, g: &Graph, colors: &mut Vec<u8>) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for c in 1..=3 {
            if g.neighbors(v).filter(|&w| w < v).all(|w| colors[w] != c) {
                colors[v] = c;
                if go(v + 1, g, colors) {
                    return true;
                }
            }
        }
        colors[v] = 0;
        false
    }
    let mut colors = vec![0u8; g.vertex_count()];
    go(0, g, &mut colors).then(|| Coloring3 {
        assignment: g.labels().iter().cloned().zip(colors).collect(),
    })
}
