//! Exact square-root search.
//!
//! Every candidate root edge is an edge of `g`, so the search assigns each
//! edge of `g` in or out. Propagation rules:
//!
//! * tails fix the full root neighbourhood of `v, v1, v2, v3`;
//! * two root edges `uw`, `vw` are incompatible when `uv` is not an edge of
//!   `g` (the pair would sit at distance two);
//! * every edge `uv` of `g` needs a realisation: `uv` itself or a common
//!   neighbour `w` with `uw` and `vw` both in the root. No live realisation
//!   means backtrack, exactly one means force it.
//!
//! Branching is most-constrained-first with "in" tried before "out". Every
//! step is written to a transcript whose SHA-256 digest lets
//! [`certify_no_root`] replay a negative answer.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{verify_square_root, Graph, VertexPair};
use crate::reductions::tails::detect_tail_indices;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeState {
    Unknown,
    ForcedIn,
    ForcedOut,
}

impl EdgeState {
    fn word(self) -> &'static str {
        match self {
            EdgeState::ForcedIn => "in",
            EdgeState::ForcedOut => "out",
            EdgeState::Unknown => "unknown",
        }
    }
}

/// Two forcing sources disagree about a pair: `g` has no square root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("conflicting requirements on {pair}")]
pub struct Contradiction {
    pub pair: VertexPair,
}

/// Per-edge state of a partially determined root. Pairs that are not edges
/// of the graph are always out.
#[derive(Debug, Clone)]
pub struct PartialRoot<'g> {
    graph: &'g Graph,
    edges: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
    states: Vec<EdgeState>,
}

impl<'g> PartialRoot<'g> {
    fn unknown(graph: &'g Graph) -> Self {
        let edges: Vec<(usize, usize)> = graph.edges().collect();
        let lookup = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let states = vec![EdgeState::Unknown; edges.len()];
        PartialRoot { graph, edges, lookup, states }
    }

    fn id(&self, a: usize, b: usize) -> Option<usize> {
        self.lookup.get(&(a.min(b), a.max(b))).copied()
    }

    fn set(&mut self, a: usize, b: usize, s: EdgeState) -> Result<(), Contradiction> {
        let id = self.id(a, b).expect("forced pairs are edges");
        match self.states[id] {
            EdgeState::Unknown => {
                self.states[id] = s;
                Ok(())
            }
            cur if cur == s => Ok(()),
            _ => Err(Contradiction {
                pair: VertexPair::new(self.graph.label(a), self.graph.label(b)).unwrap(),
            }),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn state(&self, a: &str, b: &str) -> EdgeState {
        match (self.graph.index_of(a), self.graph.index_of(b)) {
            (Some(x), Some(y)) => self.id(x, y).map_or(EdgeState::ForcedOut, |id| self.states[id]),
            _ => EdgeState::ForcedOut,
        }
    }

    pub fn count(&self, s: EdgeState) -> usize {
        self.states.iter().filter(|&&t| t == s).count()
    }

    pub fn pairs(&self, s: EdgeState) -> Vec<VertexPair> {
        let mut out: Vec<VertexPair> = self
            .edges
            .iter()
            .zip(&self.states)
            .filter(|(_, &t)| t == s)
            .map(|(&(a, b), _)| VertexPair::new(self.graph.label(a), self.graph.label(b)).unwrap())
            .collect();
        out.sort();
        out
    }

    /// The forced-in edges as a graph on all vertices.
    pub fn forced_in_graph(&self) -> Graph {
        Graph::from_index_edges(
            self.graph.labels().to_vec(),
            self.edges
                .iter()
                .zip(&self.states)
                .filter(|(_, &t)| t == EdgeState::ForcedIn)
                .map(|(&e, _)| e)
                .collect::<Vec<_>>(),
        )
    }
}

/// Applies every detected tail: the path `v1 v2 v3 v`, the edges `vx` for
/// `x ∈ X`, and nothing else at those four vertices.
pub fn forced_edges_from_tails(g: &Graph) -> Result<PartialRoot<'_>, Contradiction> {
    let mut pr = PartialRoot::unknown(g);
    for t in detect_tail_indices(g) {
        let mut inside = vec![(t.v1, t.v2), (t.v2, t.v3), (t.v3, t.v)];
        inside.extend(t.x.iter().map(|&x| (t.v, x)));
        let is_in = |a: usize, b: usize| inside.iter().any(|&(p, q)| (p, q) == (a, b) || (q, p) == (a, b));
        for w in [t.v, t.v1, t.v2, t.v3] {
            for y in g.neighbors(w) {
                let s = if is_in(w, y) { EdgeState::ForcedIn } else { EdgeState::ForcedOut };
                pr.set(w, y, s)?;
            }
        }
    }
    Ok(pr)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Root(Graph),
    NoRoot,
    /// Budget exhausted after this many branch assignments.
    Inconclusive(u64),
}

impl SolveOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            SolveOutcome::Root(_) => "root",
            SolveOutcome::NoRoot => "no-root",
            SolveOutcome::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Maximum number of branch assignments.
    pub budget: u64,
    /// Keep transcript lines in memory, not just the digest.
    pub record_transcript: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET, record_transcript: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transcript {
    /// Hex SHA-256 over all lines, each terminated by `\n`.
    pub digest: String,
    pub events: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub nodes_explored: u64,
    pub transcript: Transcript,
}

struct TranscriptWriter {
    hasher: Sha256,
    events: u64,
    buf: String,
    lines: Option<Vec<String>>,
}

impl TranscriptWriter {
    fn new(record: bool) -> Self {
        TranscriptWriter { hasher: Sha256::new(), events: 0, buf: String::new(), lines: record.then(Vec::new) }
    }

    fn emit(&mut self, args: std::fmt::Arguments<'_>) {
        self.buf.clear();
        self.buf.write_fmt(args).unwrap();
        self.hasher.update(self.buf.as_bytes());
        self.hasher.update(b"\n");
        self.events += 1;
        if let Some(lines) = &mut self.lines {
            lines.push(self.buf.clone());
        }
    }

    fn finish(self) -> Transcript {
        Transcript { digest: hex::encode(self.hasher.finalize()), events: self.events, lines: self.lines }
    }
}

enum Step {
    Found(Graph),
    Exhausted,
    OutOfBudget,
}

struct Search<'g> {
    g: &'g Graph,
    edges: Vec<(usize, usize)>,
    /// `n * n` table of edge ids, `NO_EDGE` for non-edges.
    id: Vec<u32>,
    common: Vec<Vec<usize>>,
    order: Vec<usize>,
    state: Vec<EdgeState>,
    trail: Vec<usize>,
    queue: VecDeque<usize>,
    nodes: u64,
    budget: u64,
    log: TranscriptWriter,
}

const NO_EDGE: u32 = u32::MAX;

impl<'g> Search<'g> {
    fn new(g: &'g Graph, opts: SolveOptions) -> Self {
        let n = g.vertex_count();
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let mut id = vec![NO_EDGE; n * n];
        for (k, &(a, b)) in edges.iter().enumerate() {
            id[a * n + b] = k as u32;
            id[b * n + a] = k as u32;
        }
        let common: Vec<Vec<usize>> = edges
            .iter()
            .map(|&(a, b)| g.neighbors(a).filter(|&w| g.has_edge(b, w)).collect())
            .collect();
        // an edge appears in its own realisation constraint and in two per common neighbour
        let mut order: Vec<usize> = (0..edges.len()).collect();
        let key = |k: &usize| {
            let (a, b) = edges[*k];
            let (la, lb) = (g.label(a), g.label(b));
            let pair = if la < lb { (la, lb) } else { (lb, la) };
            (std::cmp::Reverse(1 + 2 * common[*k].len()), pair)
        };
        order.sort_by(|x, y| key(x).cmp(&key(y)));
        Search {
            g,
            state: vec![EdgeState::Unknown; edges.len()],
            edges,
            id,
            common,
            order,
            trail: Vec::new(),
            queue: VecDeque::new(),
            nodes: 0,
            budget: opts.budget,
            log: TranscriptWriter::new(opts.record_transcript),
        }
    }

    fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        let k = self.id[a * self.g.vertex_count() + b];
        (k != NO_EDGE).then_some(k as usize)
    }

    fn assign(&mut self, e: usize, s: EdgeState, why: &str) -> bool {
        match self.state[e] {
            EdgeState::Unknown => {
                self.state[e] = s;
                self.trail.push(e);
                self.queue.push_back(e);
                let (a, b) = self.edges[e];
                self.log.emit(format_args!("{why} {} {} {}", self.g.label(a), self.g.label(b), s.word()));
                true
            }
            cur => cur == s,
        }
    }

    /// Checks the realisation constraint of edge `c`, forcing its last live
    /// realisation if only one remains.
    fn realise(&mut self, c: usize) -> bool {
        if self.state[c] == EdgeState::ForcedIn {
            return true;
        }
        let (u, v) = self.edges[c];
        let mut live = 0;
        let mut last = None;
        if self.state[c] == EdgeState::Unknown {
            live += 1;
            last = Some(None);
        }
        for &w in &self.common[c] {
            let (uw, vw) = (self.edge_id(u, w).unwrap(), self.edge_id(v, w).unwrap());
            let (su, sv) = (self.state[uw], self.state[vw]);
            if su == EdgeState::ForcedIn && sv == EdgeState::ForcedIn {
                return true;
            }
            if su != EdgeState::ForcedOut && sv != EdgeState::ForcedOut {
                live += 1;
                last = Some(Some((uw, vw)));
                if live > 1 {
                    return true;
                }
            }
        }
        match last {
            None => false,
            Some(None) => self.assign(c, EdgeState::ForcedIn, "propagate"),
            Some(Some((uw, vw))) => {
                self.assign(uw, EdgeState::ForcedIn, "propagate") && self.assign(vw, EdgeState::ForcedIn, "propagate")
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(e) = self.queue.pop_front() {
            let (a, b) = self.edges[e];
            let ok = if self.state[e] == EdgeState::ForcedIn {
                self.exclude_around(a, b) && self.exclude_around(b, a)
            } else {
                self.realise(e) && {
                    let mut ok = true;
                    for k in 0..self.common[e].len() {
                        let x = self.common[e][k];
                        let (ax, bx) = (self.edge_id(a, x).unwrap(), self.edge_id(b, x).unwrap());
                        if !(self.realise(ax) && self.realise(bx)) {
                            ok = false;
                            break;
                        }
                    }
                    ok
                }
            };
            if !ok {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    /// With `mid other` in the root, `mid y` must stay out whenever `other y`
    /// is not an edge of `g`.
    fn exclude_around(&mut self, mid: usize, other: usize) -> bool {
        let g = self.g;
        for y in g.neighbors(mid) {
            if y != other && !g.has_edge(other, y) {
                let e = self.edge_id(mid, y).unwrap();
                if !self.assign(e, EdgeState::ForcedOut, "propagate") {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for e in self.trail.drain(mark..) {
            self.state[e] = EdgeState::Unknown;
        }
        self.queue.clear();
    }

    /// Tail forcing plus full propagation, before any branching.
    fn initialise(&mut self) -> Result<(), Contradiction> {
        let g = self.g;
        let tails = forced_edges_from_tails(g)?;
        for (k, &(a, b)) in tails.edges.iter().enumerate() {
            let s = tails.states[k];
            if s != EdgeState::Unknown {
                let e = self.edge_id(a, b).unwrap();
                self.assign(e, s, "propagate");
            }
        }
        let conflict = |s: &Self| {
            let (a, b) = s.edges[*s.trail.last().unwrap_or(&0)];
            Contradiction { pair: VertexPair::new(g.label(a), g.label(b)).unwrap() }
        };
        if !self.propagate() {
            return Err(conflict(self));
        }
        for c in 0..self.edges.len() {
            if !(self.realise(c) && self.propagate()) {
                return Err(conflict(self));
            }
        }
        Ok(())
    }

    fn search(&mut self) -> Step {
        let Some(e) = self.order.iter().copied().find(|&e| self.state[e] == EdgeState::Unknown) else {
            let h = self.current_root();
            if verify_square_root(&h, self.g).expect("same vertex set") {
                self.log.emit(format_args!("root"));
                return Step::Found(h);
            }
            self.log.emit(format_args!("reject"));
            return Step::Exhausted;
        };
        for value in [EdgeState::ForcedIn, EdgeState::ForcedOut] {
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            let (a, b) = self.edges[e];
            self.log.emit(format_args!("branch {} {} {}", self.g.label(a), self.g.label(b), value.word()));
            self.state[e] = value;
            self.trail.push(e);
            self.queue.push_back(e);
            if self.propagate() {
                match self.search() {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
            self.undo(mark);
            self.log.emit(format_args!("backtrack"));
        }
        Step::Exhausted
    }

    fn current_root(&self) -> Graph {
        Graph::from_index_edges(
            self.g.labels().to_vec(),
            self.edges
                .iter()
                .zip(&self.state)
                .filter(|(_, &s)| s == EdgeState::ForcedIn)
                .map(|(&e, _)| e)
                .collect::<Vec<_>>(),
        )
    }
}

/// Propagation to fixpoint without branching. Every forced state holds in
/// every square root of `g`.
pub fn propagate_initial(g: &Graph) -> Result<PartialRoot<'_>, Contradiction> {
    let mut s = Search::new(g, SolveOptions { budget: 0, record_transcript: false });
    s.initialise()?;
    let mut pr = PartialRoot::unknown(g);
    for (k, &(a, b)) in s.edges.iter().enumerate() {
        let id = pr.id(a, b).unwrap();
        pr.states[id] = s.state[k];
    }
    Ok(pr)
}

pub fn solve_square_root(g: &Graph, opts: SolveOptions) -> SolveReport {
    let mut s = Search::new(g, opts);
    let outcome = match s.initialise() {
        Err(c) => {
            s.log.emit(format_args!("contradiction {}", c.pair));
            s.log.emit(format_args!("exhausted"));
            SolveOutcome::NoRoot
        }
        Ok(()) => match s.search() {
            Step::Found(h) => SolveOutcome::Root(h),
            Step::Exhausted => {
                s.log.emit(format_args!("exhausted"));
                SolveOutcome::NoRoot
            }
            Step::OutOfBudget => {
                s.log.emit(format_args!("inconclusive {}", s.nodes));
                SolveOutcome::Inconclusive(s.nodes)
            }
        },
    };
    let nodes_explored = s.nodes;
    SolveReport { outcome, nodes_explored, transcript: s.log.finish() }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("replay diverged from the recorded transcript (recorded {recorded_events} events, replay {replay_events})")]
    TranscriptMismatch { recorded_events: u64, replay_events: u64 },
}

/// Replays a negative answer with the same node budget and checks that the
/// replay reproduces the transcript and ends in exhaustion.
pub fn certify_no_root(g: &Graph, report: &SolveReport) -> Result<bool, CertifyError> {
    if report.outcome != SolveOutcome::NoRoot {
        return Ok(false);
    }
    let opts = SolveOptions { budget: report.nodes_explored, record_transcript: false };
    let replay = solve_square_root(g, opts);
    if replay.transcript.digest != report.transcript.digest || replay.transcript.events != report.transcript.events
    {
        return Err(CertifyError::TranscriptMismatch {
            recorded_events: report.transcript.events,
            replay_events: replay.transcript.events,
        });
    }
    Ok(replay.outcome == SolveOutcome::NoRoot)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::square;
    use crate::reductions::gadget::setsplit_to_graph;
    use crate::setsplit::tests::{four_triples, single_triple};

    /// Every root of `g` by trying all spanning subgraphs of `g`.
    pub fn all_roots(g: &Graph) -> Vec<Graph> {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        assert!(edges.len() <= 20);
        (0u32..1 << edges.len())
            .map(|bits| {
                let chosen: Vec<(usize, usize)> =
                    edges.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &e)| e).collect();
                Graph::from_index_edges(g.labels().to_vec(), chosen)
            })
            .filter(|h| square(h) == *g)
            .collect()
    }

    fn solve(g: &Graph) -> SolveReport {
        solve_square_root(g, SolveOptions { budget: DEFAULT_BUDGET, record_transcript: true })
    }

    #[test]
    fn k5_has_a_root() {
        let k5 = complete(5);
        let SolveOutcome::Root(h) = solve(&k5).outcome else { panic!("K5 has roots") };
        assert!(verify_square_root(&h, &k5).unwrap());
        // C5 and K1,4 are among the roots; K5 itself is one too
        let roots = all_roots(&k5);
        assert!(roots.contains(&h));
        assert!(roots.contains(&cycle(5)));
        assert!(roots.contains(&star(4)));
    }

    #[test]
    fn p3_has_no_root() {
        let p3 = path(&["a", "b", "c"]);
        assert!(all_roots(&p3).is_empty());
        let report = solve(&p3);
        assert_eq!(report.outcome, SolveOutcome::NoRoot);
        assert_eq!(certify_no_root(&p3, &report), Ok(true));
    }

    #[test]
    fn single_vertex_is_its_own_root() {
        let g = Graph::edgeless(["only"]).unwrap();
        assert_eq!(solve(&g).outcome, SolveOutcome::Root(g.clone()));
    }

    #[test]
    fn certify_rejects_other_outcomes() {
        let k5 = complete(5);
        assert_eq!(certify_no_root(&k5, &solve(&k5)), Ok(false));
        let mut fake = solve(&k5);
        fake.outcome = SolveOutcome::Inconclusive(3);
        assert_eq!(certify_no_root(&k5, &fake), Ok(false));
        // a forged negative answer for K5 cannot be replayed
        let mut forged = solve(&path(&["a", "b", "c"]));
        forged.nodes_explored = 100;
        assert!(matches!(certify_no_root(&k5, &forged), Err(CertifyError::TranscriptMismatch { .. })));
    }

    #[test]
    fn tails_fix_everything_but_element_edges() {
        let gg = setsplit_to_graph(&single_triple()).unwrap();
        let pr = forced_edges_from_tails(&gg.graph).unwrap();
        let unknown = pr.pairs(EdgeState::Unknown);
        assert_eq!(unknown.len(), 12);
        for p in &unknown {
            let kinds: Vec<char> = [p.u(), p.v()].iter().map(|l| l.chars().next().unwrap()).collect();
            assert!(kinds == ['x', 'x'] || kinds == ['a', 'x'], "{p}");
        }
        assert_eq!(pr.state("c:0", "x:a"), EdgeState::ForcedIn);
        assert_eq!(pr.state("c:0", "a:1"), EdgeState::ForcedOut);
        assert_eq!(pr.state("b:2", "a:2"), EdgeState::ForcedIn);
        assert_eq!(pr.state("b:2", "a:1"), EdgeState::ForcedOut);
        assert_eq!(pr.state("a:1", "a:2"), EdgeState::ForcedOut);
    }

    #[test]
    fn no_tails_means_nothing_forced() {
        let c4 = cycle(4);
        let pr = forced_edges_from_tails(&c4).unwrap();
        assert_eq!(pr.count(EdgeState::Unknown), 4);
    }

    #[test]
    fn conflicting_tails_contradict() {
        // with X empty both orientations of the tail match and disagree
        let g = Graph::new(
            ["v", "v1", "v2", "v3", "u"],
            [("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("v2", "v"), ("v3", "v"), ("v", "u")],
        )
        .unwrap();
        assert!(forced_edges_from_tails(&g).is_err());
        assert!(all_roots(&g).is_empty());
        let report = solve(&g);
        assert_eq!(report.outcome, SolveOutcome::NoRoot);
        assert_eq!(report.nodes_explored, 0);
        assert_eq!(certify_no_root(&g, &report), Ok(true));
    }

    #[test]
    fn no_instance_gadget_has_no_root() {
        let gg = setsplit_to_graph(&four_triples()).unwrap();
        assert_eq!(gg.graph.vertex_count(), 35);
        let pr = forced_edges_from_tails(&gg.graph).unwrap();
        assert_eq!(pr.count(EdgeState::Unknown), 18);
        let report = solve(&gg.graph);
        assert_eq!(report.outcome, SolveOutcome::NoRoot);
        assert!(report.nodes_explored <= 1 << 18);
        assert_eq!(certify_no_root(&gg.graph, &report), Ok(true));
    }

    #[test]
    fn transcript_format() {
        let report = solve(&path(&["a", "b", "c"]));
        let lines = report.transcript.lines.unwrap();
        assert_eq!(lines.last().unwrap(), "exhausted");
        assert!(lines.iter().all(|l| {
            let w: Vec<&str> = l.split(' ').collect();
            matches!(w[0], "branch" | "propagate") && w.len() == 4 && matches!(w[3], "in" | "out")
                || w[0] == "contradiction" && w.len() == 3
                || matches!(w[..], ["backtrack"] | ["exhausted"])
        }));
        let mut hasher = Sha256::new();
        for l in &lines {
            hasher.update(l.as_bytes());
            hasher.update(b"\n");
        }
        assert_eq!(hex::encode(hasher.finalize()), report.transcript.digest);
    }

    #[test]
    fn budget_outcomes_are_monotone() {
        let gg = setsplit_to_graph(&four_triples()).unwrap();
        let full = solve(&gg.graph);
        let total = full.nodes_explored;
        assert!(total > 2);
        let mut verdict_seen = false;
        for b in [0, 1, total / 2, total - 1, total, total + 5] {
            let r = solve_square_root(&gg.graph, SolveOptions { budget: b, record_transcript: false });
            match r.outcome {
                SolveOutcome::Inconclusive(n) => {
                    assert!(!verdict_seen);
                    assert_eq!(n, b);
                }
                SolveOutcome::NoRoot => verdict_seen = true,
                SolveOutcome::Root(_) => panic!("no-instance gadget has no root"),
            }
        }
        assert!(verdict_seen);
        let again = solve(&gg.graph);
        assert_eq!(again.transcript, full.transcript);
    }

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        (0u32..1 << pairs.len()).map(move |bits| {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_index_edges(labels.clone(), chosen)
        })
    }

    #[test]
    fn agrees_with_exhaustive_search_on_five_vertices() {
        let mut with_root = 0;
        for g in all_graphs(5) {
            let roots = all_roots(&g);
            let report = solve_square_root(&g, SolveOptions::default());
            match report.outcome {
                SolveOutcome::Root(h) => {
                    assert!(roots.contains(&h), "{g:?}");
                    with_root += 1;
                }
                SolveOutcome::NoRoot => {
                    assert!(roots.is_empty(), "{g:?}");
                    assert_eq!(certify_no_root(&g, &report), Ok(true));
                }
                SolveOutcome::Inconclusive(_) => panic!("default budget is ample here"),
            }
        }
        assert!(with_root > 0 && with_root < 1024);
    }

    #[test]
    fn propagation_is_sound() {
        for n in 4..=5 {
            for g in all_graphs(n) {
                let roots = all_roots(&g);
                match propagate_initial(&g) {
                    Err(_) => assert!(roots.is_empty(), "{g:?}"),
                    Ok(pr) => {
                        for h in &roots {
                            for p in pr.pairs(EdgeState::ForcedIn) {
                                assert!(h.has_edge_labels(p.u(), p.v()), "{g:?}");
                            }
                            for p in pr.pairs(EdgeState::ForcedOut) {
                                assert!(!h.has_edge_labels(p.u(), p.v()), "{g:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn propagation_is_sound_on_gadgets() {
        let gg = setsplit_to_graph(&single_triple()).unwrap();
        let pr = propagate_initial(&gg.graph).unwrap();
        for p in crate::setsplit::tests::all_partitions(&single_triple()) {
            if let Ok(h) = crate::reductions::partition_to_root(&gg, &p) {
                for e in pr.pairs(EdgeState::ForcedIn) {
                    assert!(h.has_edge_labels(e.u(), e.v()));
                }
                for e in pr.pairs(EdgeState::ForcedOut) {
                    assert!(!h.has_edge_labels(e.u(), e.v()));
                }
            }
        }
    }
}
