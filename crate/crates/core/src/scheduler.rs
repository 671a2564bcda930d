//! Longest paths through the non-commutativity graph and the frame indices
//! they induce.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::commutativity::{relations, RelationKind};
use crate::gate_model::{Degree, GateKind, PearlNecklace};
use crate::graph::{build_graph, NoncommGraph, Vertex, Weight};

/// Longest-path weights from `START`, with one maximal path to `END`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestPathResult<W> {
    gate_count: usize,
    weights: Vec<Option<W>>,
    witness: Vec<Vertex>,
}

impl<W: Weight> LongestPathResult<W> {
    /// `None` when no path from `START` reaches `v`.
    pub fn weight(&self, v: Vertex) -> Option<W> {
        self.weights[v.position(self.gate_count)]
    }

    /// Weight of the longest `START → END` path.
    pub fn total(&self) -> Option<W> {
        self.weight(Vertex::End)
    }

    /// Weights of the gate vertices `1..=N`.
    pub fn gate_weights(&self) -> impl Iterator<Item = Option<W>> + '_ {
        self.weights[1..=self.gate_count].iter().copied()
    }

    /// One maximal `START → END` path; empty if `END` is unreachable.
    pub fn witness(&self) -> &[Vertex] {
        &self.witness
    }
}

/// Dynamic program over the vertices in index order. On ties the witness
/// goes through the smallest predecessor.
pub fn longest_paths<W: Weight>(graph: &NoncommGraph<W>) -> LongestPathResult<W> {
    let n = graph.gate_count();
    let mut weights: Vec<Option<W>> = vec![None; n + 2];
    let mut predecessor: Vec<Option<usize>> = vec![None; n + 2];
    weights[0] = Some(W::zero());

    for v in graph.vertices().skip(1) {
        let at = v.position(n);
        for e in graph.incoming(v) {
            let from = e.from.position(n);
            let Some(base) = weights[from] else { continue };
            let candidate = base + e.weight;
            if weights[at].is_none_or(|best| candidate > best) {
                weights[at] = Some(candidate);
                predecessor[at] = Some(from);
            }
        }
    }

    let mut witness = Vec::new();
    if weights[n + 1].is_some() {
        let mut at = n + 1;
        witness.push(Vertex::End);
        while let Some(p) = predecessor[at] {
            witness.push(Vertex::from_position(p, n));
            at = p;
        }
        witness.reverse();
        debug_assert_eq!(witness.first(), Some(&Vertex::Start));
    }

    LongestPathResult {
        gate_count: n,
        weights,
        witness,
    }
}

/// One gate of the convolutional unitary. `tau` is the frame of the target
/// qubit, `sigma` the frame of the source qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlacedGate {
    pub kind: GateKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<usize>,
    pub target: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Degree>,
    pub tau: Degree,
}

impl PlacedGate {
    /// Highest frame index the gate touches.
    pub fn top_frame(&self) -> Degree {
        self.sigma.map_or(self.tau, |s| s.max(self.tau))
    }
}

/// `CNOT(a,b)(σ,τ)` and `H(b)(τ)` notation.
impl fmt::Display for PlacedGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.source, self.sigma) {
            (Some(a), Some(s)) => write!(
                f,
                "{}({},{})({},{})",
                self.kind, a, self.target, s, self.tau
            ),
            _ => write!(f, "{}({})({})", self.kind, self.target, self.tau),
        }
    }
}

/// One iteration of the convolutional encoder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvRealization {
    pub frame_size: usize,
    /// Frames of memory fed back between iterations.
    pub memory: Degree,
    pub gates: Vec<PlacedGate>,
}

/// A frame assignment that breaks one of the ordering constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintViolation {
    NegativeFrame {
        gate: usize,
    },
    DegreeMismatch {
        gate: usize,
    },
    Pair {
        first: usize,
        second: usize,
        relation: RelationKind,
    },
}

impl ConvRealization {
    /// Highest frame index touched by any gate, at least 0.
    pub fn span(&self) -> Degree {
        self.gates
            .iter()
            .map(PlacedGate::top_frame)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    /// Copy with gate `j` (1-based) moved so its target sits in frame `tau`.
    /// The source moves with it; `memory` becomes the new span.
    pub fn with_tau(&self, j: usize, tau: Degree) -> ConvRealization {
        let mut out = self.clone();
        let gate = &mut out.gates[j - 1];
        if let Some(s) = gate.sigma {
            gate.sigma = Some(s - gate.tau + tau);
        }
        gate.tau = tau;
        out.memory = out.span();
        out
    }

    /// Every violated constraint against the originating necklace.
    pub fn violations(&self, necklace: &PearlNecklace) -> Vec<ConstraintViolation> {
        let mut found = Vec::new();
        for ((j, s), g) in necklace.indexed().zip(&self.gates) {
            if g.tau < 0 || g.sigma.is_some_and(|x| x < 0) {
                found.push(ConstraintViolation::NegativeFrame { gate: j });
            }
            if g.sigma.map(|x| x - g.tau) != s.degree() {
                found.push(ConstraintViolation::DegreeMismatch { gate: j });
            }
        }
        for (j, second) in necklace.indexed() {
            let later = &self.gates[j - 1];
            for (i, first) in necklace.indexed().take(j - 1) {
                let earlier = &self.gates[i - 1];
                for relation in relations(first, second) {
                    let ok = match relation {
                        RelationKind::SourceTarget => earlier.sigma.unwrap() <= later.tau,
                        RelationKind::TargetSource => earlier.tau <= later.sigma.unwrap(),
                        RelationKind::TargetTarget => earlier.tau <= later.tau,
                    };
                    if !ok {
                        found.push(ConstraintViolation::Pair {
                            first: i,
                            second: j,
                            relation,
                        });
                    }
                }
            }
        }
        found
    }
}

/// Sets `τ_j` to the longest-path weight of vertex `j`, `σ_j = τ_j + l_j`,
/// and the memory to the longest `START → END` weight.
///
/// # Panics
/// If `graph` was not built from `necklace` (a gate vertex unreachable from `START`).
pub fn assign_frames(necklace: &PearlNecklace, graph: &NoncommGraph<Degree>) -> ConvRealization {
    let paths = longest_paths(graph);
    realization_from_paths(necklace, &paths)
}

fn realization_from_paths(
    necklace: &PearlNecklace,
    paths: &LongestPathResult<Degree>,
) -> ConvRealization {
    let gates = necklace
        .strings()
        .iter()
        .zip(paths.gate_weights())
        .map(|(s, w)| {
            let tau = w.expect("every gate vertex has a START edge");
            PlacedGate {
                kind: s.kind(),
                source: s.source(),
                target: s.target(),
                sigma: s.degree().map(|l| tau + l),
                tau,
            }
        })
        .collect();
    ConvRealization {
        frame_size: necklace.frame_size(),
        memory: paths.total().expect("every gate vertex has an END edge"),
        gates,
    }
}

/// Graph, longest paths and realization for one necklace.
#[derive(Clone, Debug)]
pub struct Compilation {
    pub graph: NoncommGraph<Degree>,
    pub paths: LongestPathResult<Degree>,
    pub realization: ConvRealization,
}

pub fn compile(necklace: &PearlNecklace) -> Compilation {
    let graph = build_graph(necklace);
    let paths = longest_paths(&graph);
    let realization = realization_from_paths(necklace, &paths);
    Compilation {
        graph,
        paths,
        realization,
    }
}

/// One gate per line followed by a `memory: L` line.
pub fn render_realization(realization: &ConvRealization) -> String {
    let mut out = String::new();
    for g in &realization.gates {
        let _ = writeln!(out, "{g}");
    }
    let _ = writeln!(out, "memory: {}", realization.memory);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate_model::{parse_necklace, GateString};
    use crate::graph::{Edge, EdgeKind};

    fn six_strings() -> PearlNecklace {
        parse_necklace("frame 3\nH 1\nP 1\nCPHASE 1 2 -1\nCPHASE 2 3 2\nCNOT 3 2 1\nCNOT 2 3 1")
            .unwrap()
    }

    fn two_strings() -> PearlNecklace {
        PearlNecklace::new(
            3,
            vec![GateString::cphase(2, 3, 1), GateString::cnot(1, 2, 1)],
        )
        .unwrap()
    }

    #[test]
    fn six_strings_longest_path() {
        use Vertex::*;
        let paths = longest_paths(&build_graph(&six_strings()));
        assert_eq!(paths.total(), Some(4));
        assert_eq!(paths.witness(), &[Start, Gate(4), Gate(5), Gate(6), End]);
    }

    #[test]
    fn single_string_longest_path() {
        let n = PearlNecklace::new(2, vec![GateString::cnot(1, 2, 2)]).unwrap();
        assert_eq!(longest_paths(&build_graph(&n)).total(), Some(2));
    }

    #[test]
    fn two_strings_longest_path() {
        let paths = longest_paths(&build_graph(&two_strings()));
        assert_eq!(paths.total(), Some(2));
        assert_eq!(
            paths.gate_weights().collect::<Vec<_>>(),
            vec![Some(0), Some(1)]
        );
    }

    #[test]
    fn six_strings_frames() {
        let r = compile(&six_strings()).realization;
        let taus: Vec<_> = r.gates.iter().map(|g| g.tau).collect();
        let sigmas: Vec<_> = r.gates.iter().map(|g| g.sigma).collect();
        assert_eq!(taus, vec![0, 0, 1, 0, 2, 3]);
        assert_eq!(sigmas, vec![None, None, Some(0), Some(2), Some(3), Some(4)]);
        assert_eq!(r.memory, 4);
        assert!(r.violations(&six_strings()).is_empty());
    }

    #[test]
    fn two_strings_frames() {
        let r = compile(&two_strings()).realization;
        assert_eq!((r.gates[0].sigma, r.gates[0].tau), (Some(1), 0));
        assert_eq!((r.gates[1].sigma, r.gates[1].tau), (Some(2), 1));
        assert_eq!(r.memory, 2);
    }

    #[test]
    fn commuting_three_frames() {
        let n = PearlNecklace::new(
            3,
            vec![
                GateString::hadamard(3),
                GateString::cphase(1, 2, 1),
                GateString::cnot(1, 3, 0),
            ],
        )
        .unwrap();
        let r = compile(&n).realization;
        assert_eq!(
            r.gates.iter().map(|g| g.tau).collect::<Vec<_>>(),
            vec![0, 0, 0]
        );
        assert_eq!(r.gates[1].sigma, Some(1));
        assert_eq!(r.gates[2].sigma, Some(0));
        assert_eq!(r.memory, 1);
    }

    #[test]
    fn renders_six_strings() {
        let text = render_realization(&compile(&six_strings()).realization);
        assert_eq!(
            text,
            "H(1)(0)\nP(1)(0)\nCPHASE(1,2)(0,1)\nCPHASE(2,3)(2,0)\nCNOT(3,2)(3,2)\nCNOT(2,3)(4,3)\nmemory: 4\n"
        );
    }

    #[test]
    fn renders_small_cases() {
        let h = compile(&PearlNecklace::new(1, vec![GateString::hadamard(1)]).unwrap()).realization;
        assert_eq!(render_realization(&h).lines().next(), Some("H(1)(0)"));
        let text = render_realization(&compile(&two_strings()).realization);
        assert_eq!(text, "CPHASE(2,3)(1,0)\nCNOT(1,2)(2,1)\nmemory: 2\n");
    }

    #[test]
    fn negative_degree_first_gate_starts_at_abs_degree() {
        let n = PearlNecklace::new(2, vec![GateString::cnot(1, 2, -3)]).unwrap();
        let r = compile(&n).realization;
        assert_eq!((r.gates[0].sigma, r.gates[0].tau), (Some(0), 3));
        assert_eq!(r.memory, 3);
    }

    #[test]
    fn unreachable_vertices_have_no_weight() {
        let g = NoncommGraph::<i32>::from_edges(
            2,
            [Edge {
                from: Vertex::Start,
                to: Vertex::Gate(2),
                weight: -1,
                kind: EdgeKind::Start,
            }],
        )
        .unwrap();
        let paths = longest_paths(&g);
        assert_eq!(paths.weight(Vertex::Gate(1)), None);
        assert_eq!(paths.weight(Vertex::Gate(2)), Some(-1));
        assert_eq!(paths.total(), None);
        assert!(paths.witness().is_empty());
    }

    #[test]
    fn json_schema_fields() {
        let json = serde_json::to_value(compile(&two_strings()).realization).unwrap();
        assert_eq!(json["frame_size"], 3);
        assert_eq!(json["memory"], 2);
        assert_eq!(
            json["gates"][0],
            serde_json::json!({"kind": "CPHASE", "source": 2, "target": 3, "sigma": 1, "tau": 0})
        );
        let h = compile(&PearlNecklace::new(1, vec![GateString::hadamard(1)]).unwrap()).realization;
        assert_eq!(
            serde_json::to_value(h).unwrap()["gates"][0],
            serde_json::json!({"kind": "H", "target": 1, "tau": 0})
        );
    }

    #[test]
    fn corrupted_assignment_is_flagged() {
        let r = compile(&two_strings()).realization.with_tau(2, 0);
        assert_eq!(
            r.violations(&two_strings()),
            vec![ConstraintViolation::Pair {
                first: 1,
                second: 2,
                relation: RelationKind::SourceTarget
            }]
        );
    }
}
