//! Three-part set splitting: instances, incidence graphs, validation, a
//! brute-force decision procedure, and witness checking.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{valid_label, Graph, GraphBuilder};
use crate::planarity::is_planar;

/// Largest ground set the brute-force solver accepts by default.
pub const DEFAULT_MAX_GROUND_SET: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetSplitError {
    #[error("invalid element label {0:?}")]
    InvalidLabel(String),
    #[error("element {0:?} appears twice in the ground set")]
    DuplicateElement(String),
    #[error("subset {subset} lists element {element:?} twice")]
    DuplicateInSubset { subset: usize, element: String },
    #[error("subset {subset} contains {element:?}, which is not in the ground set")]
    UnknownElement { subset: usize, element: String },
    #[error("not a partition of the ground set: {0}")]
    NotAPartition(String),
    #[error("3^{ground} assignments exceed the budget of 3^{max_ground}")]
    BudgetExceeded { ground: usize, max_ground: u32 },
}

/// A ground set plus an ordered collection of subsets.
///
/// Construction rejects duplicate labels and elements outside the ground
/// set. Subset sizes and incidence planarity are reported by
/// [`validate_instance`] instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct SetSplitInstance {
    ground_set: Vec<String>,
    collection: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    ground_set: Vec<String>,
    collection: Vec<Vec<String>>,
}

impl TryFrom<RawInstance> for SetSplitInstance {
    type Error = SetSplitError;

    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        SetSplitInstance::new(raw.ground_set, raw.collection)
    }
}

impl From<SetSplitInstance> for RawInstance {
    fn from(inst: SetSplitInstance) -> Self {
        RawInstance { ground_set: inst.ground_set, collection: inst.collection }
    }
}

impl SetSplitInstance {
    pub fn new<S: Into<String>>(
        ground_set: impl IntoIterator<Item = S>,
        collection: impl IntoIterator<Item = Vec<S>>,
    ) -> Result<Self, SetSplitError> {
        let ground_set: Vec<String> = ground_set.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for e in &ground_set {
            if !valid_label(e) {
                return Err(SetSplitError::InvalidLabel(e.clone()));
            }
            if !seen.insert(e.as_str()) {
                return Err(SetSplitError::DuplicateElement(e.clone()));
            }
        }
        let mut subsets = Vec::new();
        for (j, subset) in collection.into_iter().enumerate() {
            let subset: Vec<String> = subset.into_iter().map(Into::into).collect();
            let mut inner = HashSet::new();
            for e in &subset {
                if !seen.contains(e.as_str()) {
                    return Err(SetSplitError::UnknownElement { subset: j, element: e.clone() });
                }
                if !inner.insert(e.as_str()) {
                    return Err(SetSplitError::DuplicateInSubset { subset: j, element: e.clone() });
                }
            }
            subsets.push(subset);
        }
        Ok(SetSplitInstance { ground_set, collection: subsets })
    }

    pub fn ground_set(&self) -> &[String] {
        &self.ground_set
    }

    pub fn collection(&self) -> &[Vec<String>] {
        &self.collection
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }
}

/// Order-insensitive equality: same ground set, same multiset of subsets.
impl PartialEq for SetSplitInstance {
    fn eq(&self, other: &Self) -> bool {
        fn norm(i: &SetSplitInstance) -> (BTreeSet<&String>, Vec<BTreeSet<&String>>) {
            let ground = i.ground_set.iter().collect();
            let mut subsets: Vec<BTreeSet<&String>> = i.collection.iter().map(|c| c.iter().collect()).collect();
            subsets.sort();
            (ground, subsets)
        }
        norm(self) == norm(other)
    }
}

impl Eq for SetSplitInstance {}

/// Ordered triple of element sets. Parts may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition3 {
    pub parts: [BTreeSet<String>; 3],
}

impl Partition3 {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(a: I, b: I, c: I) -> Self {
        let collect = |it: I| it.into_iter().map(Into::into).collect();
        Partition3 { parts: [collect(a), collect(b), collect(c)] }
    }

    /// Which part holds `element`, if any.
    pub fn part_of(&self, element: &str) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(element))
    }

    pub fn permuted(&self, order: [usize; 3]) -> Partition3 {
        Partition3 { parts: order.map(|i| self.parts[i].clone()) }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("partition serializes")
    }
}

pub fn element_vertex(e: &str) -> String {
    format!("elem:{e}")
}

pub fn set_vertex(j: usize) -> String {
    format!("set:{j}")
}

/// Bipartite element/subset incidence graph.
pub fn incidence_graph(inst: &SetSplitInstance) -> Graph {
    let mut b = GraphBuilder::new();
    for e in &inst.ground_set {
        b.add_vertex(element_vertex(e)).expect("ground set labels are unique");
    }
    for (j, c) in inst.collection.iter().enumerate() {
        let s = set_vertex(j);
        b.add_vertex(s.clone()).expect("set labels are unique");
        for e in c {
            b.add_edge(&element_vertex(e), &s).expect("membership is closed");
        }
    }
    b.build()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    SubsetTooSmall(usize),
    IncidenceNotPlanar,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::SubsetTooSmall(j) => write!(f, "subset {j} has fewer than three elements"),
            Violation::IncidenceNotPlanar => write!(f, "incidence graph is not planar"),
        }
    }
}

pub fn validate_instance(inst: &SetSplitInstance) -> Vec<Violation> {
    let mut out: Vec<Violation> = inst
        .collection
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() < 3)
        .map(|(j, _)| Violation::SubsetTooSmall(j))
        .collect();
    if !is_planar(&incidence_graph(inst)) {
        out.push(Violation::IncidenceNotPlanar);
    }
    out
}

fn check_partition(inst: &SetSplitInstance, p: &Partition3) -> Result<(), SetSplitError> {
    let ground: BTreeSet<&str> = inst.ground_set.iter().map(String::as_str).collect();
    let mut seen = BTreeSet::new();
    for part in &p.parts {
        for e in part {
            if !ground.contains(e.as_str()) {
                return Err(SetSplitError::NotAPartition(format!("{e:?} is not in the ground set")));
            }
            if !seen.insert(e.as_str()) {
                return Err(SetSplitError::NotAPartition(format!("{e:?} is in two parts")));
            }
        }
    }
    if let Some(missing) = ground.difference(&seen).next() {
        return Err(SetSplitError::NotAPartition(format!("{missing:?} is in no part")));
    }
    Ok(())
}

/// First subset (by index) that misses some part, if any.
pub fn first_unsplit_subset(inst: &SetSplitInstance, p: &Partition3) -> Result<Option<usize>, SetSplitError> {
    check_partition(inst, p)?;
    Ok(inst
        .collection
        .iter()
        .position(|c| !p.parts.iter().all(|part| c.iter().any(|e| part.contains(e)))))
}

/// True iff every subset meets all three parts.
pub fn verify_partition(inst: &SetSplitInstance, p: &Partition3) -> Result<bool, SetSplitError> {
    Ok(first_unsplit_subset(inst, p)?.is_none())
}

/// Returns the lexicographically first valid assignment (ground-set order,
/// part indices 0 < 1 < 2), or `None` after exhausting all `3^|S|`
/// assignments.
pub fn solve_setsplit_bruteforce(
    inst: &SetSplitInstance,
    max_ground: u32,
) -> Result<Option<Partition3>, SetSplitError> {
    let n = inst.ground_set.len();
    if n > max_ground as usize {
        return Err(SetSplitError::BudgetExceeded { ground: n, max_ground });
    }
    let pos: std::collections::HashMap<&str, usize> =
        inst.ground_set.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let subsets: Vec<Vec<usize>> =
        inst.collection.iter().map(|c| c.iter().map(|e| pos[e.as_str()]).collect()).collect();
    // subsets whose last element (in ground order) is i are checked once i is assigned
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut empty_subset = false;
    for (j, c) in subsets.iter().enumerate() {
        match c.iter().max() {
            Some(&last) => closing[last].push(j),
            None => empty_subset = true,
        }
    }
    if empty_subset {
        return Ok(None);
    }

    fn go(i: usize, assign: &mut Vec<u8>, subsets: &[Vec<usize>], closing: &[Vec<usize>]) -> bool {
        if i == assign.len() {
            return true;
        }
        for part in 0..3u8 {
            assign[i] = part;
            let ok = closing[i].iter().all(|&j| {
                let mut hit = [false; 3];
                for &e in &subsets[j] {
                    hit[assign[e] as usize] = true;
                }
                hit == [true; 3]
            });
            if ok && go(i + 1, assign, subsets, closing) {
                return true;
            }
        }
        false
    }

    let mut assign = vec![0u8; n];
    if !go(0, &mut assign, &subsets, &closing) {
        return Ok(None);
    }
    let mut parts: [BTreeSet<String>; 3] = Default::default();
    for (e, &part) in inst.ground_set.iter().zip(&assign) {
        parts[part as usize].insert(e.clone());
    }
    Ok(Some(Partition3 { parts }))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub fn single_triple() -> SetSplitInstance {
        SetSplitInstance::new(["a", "b", "c"], [vec!["a", "b", "c"]]).unwrap()
    }

    pub fn four_triples() -> SetSplitInstance {
        SetSplitInstance::new(
            ["1", "2", "3", "4"],
            [vec!["2", "3", "4"], vec!["1", "3", "4"], vec!["1", "2", "4"], vec!["1", "2", "3"]],
        )
        .unwrap()
    }

    /// Every assignment of the ground set to three parts, in lexicographic order.
    pub fn all_partitions(inst: &SetSplitInstance) -> Vec<Partition3> {
        let n = inst.ground_set().len();
        (0..3usize.pow(n as u32))
            .map(|mut code| {
                let mut digits = vec![0; n];
                for d in digits.iter_mut().rev() {
                    *d = code % 3;
                    code /= 3;
                }
                let mut parts: [BTreeSet<String>; 3] = Default::default();
                for (e, d) in inst.ground_set().iter().zip(digits) {
                    parts[d].insert(e.clone());
                }
                Partition3 { parts }
            })
            .collect()
    }

    #[test]
    fn constructor_rejects_structural_errors() {
        assert_eq!(
            SetSplitInstance::new(["a", "a"], Vec::<Vec<&str>>::new()),
            Err(SetSplitError::DuplicateElement("a".into()))
        );
        assert!(matches!(
            SetSplitInstance::new(["a", "b"], [vec!["a", "a"]]),
            Err(SetSplitError::DuplicateInSubset { subset: 0, .. })
        ));
        assert!(matches!(
            SetSplitInstance::new(["a"], [vec!["a", "q"]]),
            Err(SetSplitError::UnknownElement { subset: 0, .. })
        ));
        assert!(SetSplitInstance::from_json(r#"{"ground_set":["a"],"collection":[["b"]]}"#).is_err());
    }

    #[test]
    fn json_formats() {
        let inst = SetSplitInstance::from_json(r#"{"ground_set": ["a","b","c"], "collection": [["a","b","c"]]}"#).unwrap();
        assert_eq!(inst, single_triple());
        assert_eq!(SetSplitInstance::from_json(&inst.to_json()).unwrap(), inst);
        let p = Partition3::from_json(r#"{"parts": [["a"],["b"],["c","d"]]}"#).unwrap();
        assert_eq!(p.part_of("d"), Some(2));
    }

    #[test]
    fn equality_ignores_order() {
        let a = SetSplitInstance::new(["a", "b", "c", "d"], [vec!["a", "b", "c"], vec!["b", "c", "d"]]).unwrap();
        let b = SetSplitInstance::new(["d", "c", "b", "a"], [vec!["d", "c", "b"], vec!["c", "a", "b"]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn incidence_graph_examples() {
        let g = incidence_graph(&single_triple());
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(g.index_of("set:0").unwrap()), 3);

        let q = incidence_graph(&four_triples());
        assert_eq!((q.vertex_count(), q.edge_count()), (8, 12));
        for j in 0..4 {
            for (k, e) in ["1", "2", "3", "4"].iter().enumerate() {
                assert_eq!(q.has_edge_labels(&set_vertex(j), &element_vertex(e)), j != k);
            }
        }
        assert!(is_planar(&q));

        let empty = SetSplitInstance::new(["a", "b"], Vec::<Vec<&str>>::new()).unwrap();
        assert_eq!(incidence_graph(&empty).edge_count(), 0);
    }

    #[test]
    fn validation_examples() {
        assert!(validate_instance(&single_triple()).is_empty());
        let small = SetSplitInstance::new(["a", "b"], [vec!["a", "b"]]).unwrap();
        assert_eq!(validate_instance(&small), vec![Violation::SubsetTooSmall(0)]);
        // K3,3 between elements {a,b,c} and three sets, padded with private elements
        let inst = SetSplitInstance::new(
            ["a", "b", "c", "p0", "p1", "p2"],
            [vec!["a", "b", "c", "p0"], vec!["a", "b", "c", "p1"], vec!["a", "b", "c", "p2"]],
        )
        .unwrap();
        assert_eq!(validate_instance(&inst), vec![Violation::IncidenceNotPlanar]);
    }

    #[test]
    fn verify_partition_examples() {
        let inst = single_triple();
        assert!(verify_partition(&inst, &Partition3::new(["a"], ["b"], ["c"])).unwrap());
        assert!(!verify_partition(&inst, &Partition3::new(vec!["a", "b"], vec!["c"], vec![])).unwrap());
        assert!(matches!(
            verify_partition(&inst, &Partition3::new(vec!["a", "b"], vec!["b"], vec!["c"])),
            Err(SetSplitError::NotAPartition(_))
        ));
        assert!(matches!(
            verify_partition(&inst, &Partition3::new(vec!["a"], vec!["b"], vec![])),
            Err(SetSplitError::NotAPartition(_))
        ));
        assert!(matches!(
            verify_partition(&inst, &Partition3::new(vec!["a"], vec!["b"], vec!["c", "x"])),
            Err(SetSplitError::NotAPartition(_))
        ));
        // ({1},{2},{3,4}): the triple {2,3,4} (index 0) has nothing in part 0
        let no = four_triples();
        let p = Partition3::new(vec!["1"], vec!["2"], vec!["3", "4"]);
        assert_eq!(first_unsplit_subset(&no, &p).unwrap(), Some(0));
    }

    #[test]
    fn canonical_no_instance_is_exhaustively_unsplittable() {
        let inst = four_triples();
        let all = all_partitions(&inst);
        assert_eq!(all.len(), 81);
        assert!(all.iter().all(|p| !verify_partition(&inst, p).unwrap()));
        assert_eq!(solve_setsplit_bruteforce(&inst, DEFAULT_MAX_GROUND_SET).unwrap(), None);
    }

    #[test]
    fn solver_examples() {
        assert_eq!(
            solve_setsplit_bruteforce(&single_triple(), 16).unwrap(),
            Some(Partition3::new(["a"], ["b"], ["c"]))
        );
        let one = SetSplitInstance::new(["1", "2", "3", "4"], [vec!["1", "2", "3"]]).unwrap();
        let p = solve_setsplit_bruteforce(&one, 16).unwrap().unwrap();
        assert!(verify_partition(&one, &p).unwrap());
        assert_eq!(p, Partition3::new(vec!["1", "4"], vec!["2"], vec!["3"]));
        assert!(matches!(solve_setsplit_bruteforce(&one, 3), Err(SetSplitError::BudgetExceeded { .. })));
        // no subsets: any partition works, the first puts everything in part 0
        let empty = SetSplitInstance::new(["a", "b"], Vec::<Vec<&str>>::new()).unwrap();
        assert_eq!(
            solve_setsplit_bruteforce(&empty, 16).unwrap(),
            Some(Partition3::new(vec!["a", "b"], vec![], vec![]))
        );
    }

    pub fn arb_instance(max_ground: usize, max_sets: usize) -> impl Strategy<Value = SetSplitInstance> {
        (3..=max_ground).prop_flat_map(move |n| {
            proptest::collection::vec(proptest::collection::btree_set(0..n, 3..=n), 0..=max_sets).prop_map(
                move |sets| {
                    let ground: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
                    let collection: Vec<Vec<String>> =
                        sets.into_iter().map(|s| s.into_iter().map(|i| ground[i].clone()).collect()).collect();
                    SetSplitInstance::new(ground, collection).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn solver_matches_enumeration(inst in arb_instance(6, 5)) {
            let found = solve_setsplit_bruteforce(&inst, 16).unwrap();
            let first = all_partitions(&inst).into_iter().find(|p| verify_partition(&inst, p).unwrap());
            prop_assert_eq!(found.clone(), first);
            if let Some(p) = found {
                prop_assert!(verify_partition(&inst, &p).unwrap());
                if !inst.collection().is_empty() {
                    prop_assert!(p.parts.iter().all(|part| !part.is_empty()));
                }
                for order in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
                    prop_assert!(verify_partition(&inst, &p.permuted(order)).unwrap());
                }
            }
        }

        #[test]
        fn incidence_sizes(inst in arb_instance(8, 6)) {
            let g = incidence_graph(&inst);
            prop_assert_eq!(g.vertex_count(), inst.ground_set().len() + inst.collection().len());
            prop_assert_eq!(g.edge_count(), inst.collection().iter().map(Vec::len).sum::<usize>());
        }
    }
}
