//! Witness translation between splittings of an instance and square roots of
//! its gadget graph.

use std::collections::BTreeSet;

use super::gadget::{a_label, b_label, b_tail_label, element_label, set_label, set_tail_label, LabeledGadgetGraph};
use super::ReductionError;
use crate::graph::{square_discrepancy, verify_square_root, Graph, GraphBuilder};
use crate::planarity::is_apex_with;
use crate::setsplit::{first_unsplit_subset, Partition3, SetSplitInstance};

/// Deleting these six vertices from a constructed root leaves a planar graph.
pub const APEX_LABELS: [&str; 6] = ["a:1", "a:2", "a:3", "b:1", "b:2", "b:3"];

/// For each subset and part, the smallest-label element of the subset lying
/// in that part.
pub fn splitting_representatives(
    inst: &SetSplitInstance,
    p: &Partition3,
) -> Result<Vec<[String; 3]>, ReductionError> {
    if let Some(j) = first_unsplit_subset(inst, p)? {
        return Err(ReductionError::InvalidPartition(format!("subset {j} misses a part")));
    }
    Ok(inst
        .collection()
        .iter()
        .map(|c| {
            [0, 1, 2].map(|i| {
                c.iter().filter(|e| p.parts[i].contains(*e)).min().expect("subset meets every part").clone()
            })
        })
        .collect())
}

/// Builds the root: tail paths, each set vertex to its members, each `b:<i>`
/// to all elements and to `a:<i>`, and `a:<i>` to the elements of part `i`.
///
/// The result is re-verified against the gadget graph and its apex property
/// before it is returned.
pub fn partition_to_root(gg: &LabeledGadgetGraph, p: &Partition3) -> Result<Graph, ReductionError> {
    let inst = &gg.instance;
    if let Some(j) = first_unsplit_subset(inst, p)? {
        return Err(ReductionError::InvalidPartition(format!("subset {j} misses a part")));
    }
    let mut b = GraphBuilder::new();
    for l in gg.graph.labels() {
        b.add_vertex(l.clone())?;
    }
    let mut edge = |p: String, q: String| b.add_edge(&p, &q);
    for (c, members) in inst.collection().iter().enumerate() {
        edge(set_tail_label(c, 1), set_tail_label(c, 2))?;
        edge(set_tail_label(c, 2), set_tail_label(c, 3))?;
        edge(set_tail_label(c, 3), set_label(c))?;
        for s in members {
            edge(set_label(c), element_label(s))?;
        }
    }
    for i in 1..=3u8 {
        edge(b_tail_label(i, 1), b_tail_label(i, 2))?;
        edge(b_tail_label(i, 2), b_tail_label(i, 3))?;
        edge(b_tail_label(i, 3), b_label(i))?;
        for s in inst.ground_set() {
            edge(b_label(i), element_label(s))?;
        }
        edge(b_label(i), a_label(i))?;
        for s in &p.parts[(i - 1) as usize] {
            edge(a_label(i), element_label(s))?;
        }
    }
    let h = b.build();

    let diff = square_discrepancy(&h, &gg.graph)?;
    if !diff.is_empty() {
        return Err(ReductionError::ConstructionSelfCheckFailed(format!(
            "square differs from the gadget graph: {} uncovered, {} extra",
            diff.uncovered.len(),
            diff.extra.len()
        )));
    }
    let apex = is_apex_with(&h, &APEX_LABELS).expect("apex labels exist in every gadget");
    if !apex.remainder_planar {
        return Err(ReductionError::ConstructionSelfCheckFailed(
            "root minus the a- and b-vertices is not planar".into(),
        ));
    }
    Ok(h)
}

/// Reads a splitting off a square root: part `i` (for `i` = 1, 2) is the set
/// of elements adjacent to `a:<i>`, and everything else goes to part 3.
pub fn root_to_partition(gg: &LabeledGadgetGraph, h: &Graph) -> Result<Partition3, ReductionError> {
    if !verify_square_root(h, &gg.graph)? {
        return Err(ReductionError::NotASquareRoot);
    }
    let inst = &gg.instance;
    let mut attached: [BTreeSet<String>; 3] = Default::default();
    for (i, part) in attached.iter_mut().enumerate() {
        let a = a_label(i as u8 + 1);
        for s in inst.ground_set() {
            if h.has_edge_labels(&a, &element_label(s)) {
                part.insert(s.clone());
            }
        }
    }
    for s in inst.ground_set() {
        if attached.iter().filter(|part| part.contains(s)).count() > 1 {
            return Err(ReductionError::DisjointnessViolated(s.clone()));
        }
    }
    let [first, second, _] = attached;
    let third = inst
        .ground_set()
        .iter()
        .filter(|s| !first.contains(*s) && !second.contains(*s))
        .cloned()
        .collect();
    let p = Partition3 { parts: [first, second, third] };
    if let Some(j) = first_unsplit_subset(inst, &p)? {
        return Err(ReductionError::ExtractionInvalid(j));
    }
    Ok(p)
}
