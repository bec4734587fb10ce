//! Tail detection.
//!
//! A tail at `v` is a triple `v1, v2, v3` with
//! `N(v1) = {v2, v3}`, `N(v2) = {v1, v3, v}`, `N(v3) = {v1, v2, v} ∪ X`,
//! `X ⊆ N(v) \ {v2, v3}` and `N(v) ≠ {v2, v3}`. In every square root the
//! tail is the path `v1 v2 v3 v` and `N(v) = {v3} ∪ X`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TailMatch {
    pub v: String,
    pub v1: String,
    pub v2: String,
    pub v3: String,
    #[serde(rename = "X")]
    pub x: BTreeSet<String>,
}

/// Index form used by the solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TailIndices {
    pub v: usize,
    pub v1: usize,
    pub v2: usize,
    pub v3: usize,
    pub x: Vec<usize>,
}

pub(crate) fn detect_tail_indices(g: &Graph) -> Vec<TailIndices> {
    let mut out = Vec::new();
    for v1 in 0..g.vertex_count() {
        if g.degree(v1) != 2 {
            continue;
        }
        let nb: Vec<usize> = g.neighbors(v1).collect();
        let (p, q) = (nb[0], nb[1]);
        if !g.has_edge(p, q) {
            continue;
        }
        // both orientations: with X empty they are symmetric and both match
        for (v2, v3) in [(p, q), (q, p)] {
            if g.degree(v2) != 3 {
                continue;
            }
            let Some(v) = g.neighbors(v2).find(|&w| w != v1 && w != v3) else { continue };
            if !g.has_edge(v3, v) {
                continue;
            }
            let x: Vec<usize> = g.neighbors(v3).filter(|&w| w != v1 && w != v2 && w != v).collect();
            if !x.iter().all(|&w| g.has_edge(v, w)) {
                continue;
            }
            // N(v) contains v2 and v3, so it equals {v2, v3} exactly when deg(v) = 2
            if g.degree(v) == 2 {
                continue;
            }
            out.push(TailIndices { v, v1, v2, v3, x });
        }
    }
    let key = |t: &TailIndices| (g.label(t.v).to_string(), g.label(t.v1).to_string(), g.label(t.v2).to_string());
    out.sort_by_key(key);
    out
}

/// All tails of `g`, ordered by the label of `v` (then `v1`, `v2`).
/// Overlapping or symmetric matches are all reported.
pub fn detect_tails(g: &Graph) -> Vec<TailMatch> {
    detect_tail_indices(g)
        .into_iter()
        .map(|t| TailMatch {
            v: g.label(t.v).to_string(),
            v1: g.label(t.v1).to_string(),
            v2: g.label(t.v2).to_string(),
            v3: g.label(t.v3).to_string(),
            x: t.x.iter().map(|&w| g.label(w).to_string()).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::cycle;
    use crate::reductions::gadget::setsplit_to_graph;
    use crate::setsplit::tests::{arb_instance, single_triple};
    use crate::setsplit::validate_instance;
    use proptest::prelude::*;

    fn set(labels: &[&str]) -> BTreeSet<String> {
        labels.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn gadget_tails() {
        let gg = setsplit_to_graph(&single_triple()).unwrap();
        let tails = detect_tails(&gg.graph);
        assert_eq!(tails.len(), 4);
        let elems = ["x:a", "x:b", "x:c"];
        assert_eq!(
            tails[0],
            TailMatch {
                v: "b:1".into(),
                v1: "bt:1:1".into(),
                v2: "bt:1:2".into(),
                v3: "bt:1:3".into(),
                x: set(&["x:a", "x:b", "x:c", "a:1"]),
            }
        );
        assert_eq!(tails[3].v, "c:0");
        assert_eq!(tails[3].v3, "xc:3:0");
        assert_eq!(tails[3].x, set(&elems));
        for (k, t) in tails[..3].iter().enumerate() {
            assert_eq!(t.v, format!("b:{}", k + 1));
        }
    }

    #[test]
    fn cycle_has_no_tails() {
        assert!(detect_tails(&cycle(4)).is_empty());
    }

    #[test]
    fn planted_tail_with_empty_x() {
        let g = Graph::new(
            ["v", "v1", "v2", "v3", "u"],
            [("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("v2", "v"), ("v3", "v"), ("v", "u")],
        )
        .unwrap();
        let tails = detect_tails(&g);
        // v2 and v3 are interchangeable when X is empty
        assert_eq!(tails.len(), 2);
        assert!(tails.iter().all(|t| t.v == "v" && t.v1 == "v1" && t.x.is_empty()));
        assert_ne!(tails[0].v2, tails[1].v2);

        // without the extra neighbour N(v) = {v2, v3}: not a tail
        let bare = g.without_vertices(&["u"]);
        assert!(detect_tails(&bare).is_empty());
    }

    #[test]
    fn x_must_lie_in_neighbourhood_of_v() {
        // v3 sees w but v does not
        let g = Graph::new(
            ["v", "v1", "v2", "v3", "u", "w"],
            [("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("v2", "v"), ("v3", "v"), ("v", "u"), ("v3", "w")],
        )
        .unwrap();
        assert!(detect_tails(&g).is_empty());
    }

    proptest! {
        #[test]
        fn every_gadget_has_one_tail_per_set_and_b(inst in arb_instance(8, 5)) {
            prop_assume!(!inst.collection().is_empty() && validate_instance(&inst).is_empty());
            let gg = setsplit_to_graph(&inst).unwrap();
            let tails = detect_tails(&gg.graph);
            prop_assert_eq!(tails.len(), inst.collection().len() + 3);
            let vs: BTreeSet<&str> = tails.iter().map(|t| t.v.as_str()).collect();
            prop_assert_eq!(vs.len(), tails.len());
        }
    }
}
