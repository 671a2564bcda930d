//! The weighted non-commutativity DAG and its DOT export.

use std::fmt::{self, Write as _};

use num_traits::{PrimInt, Signed};
use thiserror::Error;

use crate::commutativity::{source_target, target_source, target_target};
use crate::gate_model::{Degree, GateKind, PearlNecklace};

/// Edge weight scalar: any signed primitive integer.
pub trait Weight: PrimInt + Signed + fmt::Display + fmt::Debug {}

impl<T: PrimInt + Signed + fmt::Display + fmt::Debug> Weight for T {}

/// Vertices ordered `Start < Gate(1) < … < Gate(N) < End`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Start,
    /// 1-based gate-string index.
    Gate(usize),
    End,
}

impl Vertex {
    /// Position in `0..=N+1`, which is also a topological order.
    pub fn position(self, gate_count: usize) -> usize {
        match self {
            Vertex::Start => 0,
            Vertex::Gate(j) => j,
            Vertex::End => gate_count + 1,
        }
    }

    pub fn from_position(position: usize, gate_count: usize) -> Vertex {
        match position {
            0 => Vertex::Start,
            p if p == gate_count + 1 => Vertex::End,
            p => Vertex::Gate(p),
        }
    }

    /// Stable DOT node name.
    pub fn dot_name(self) -> String {
        match self {
            Vertex::Start => "START".to_string(),
            Vertex::Gate(j) => format!("g{j}"),
            Vertex::End => "END".to_string(),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Start => f.write_str("START"),
            Vertex::Gate(j) => write!(f, "{j}"),
            Vertex::End => f.write_str("END"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Start,
    SourceTarget,
    TargetSource,
    TargetTarget,
    End,
}

impl EdgeKind {
    pub fn label(self) -> &'static str {
        match self {
            EdgeKind::Start => "start",
            EdgeKind::SourceTarget => "st",
            EdgeKind::TargetSource => "ts",
            EdgeKind::TargetTarget => "tt",
            EdgeKind::End => "end",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge<W = Degree> {
    pub from: Vertex,
    pub to: Vertex,
    pub weight: W,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {from} -> {to} does not go forward in vertex order")]
    BackwardEdge { from: String, to: String },
    #[error("edge endpoint {vertex} is not a vertex of a graph with {gate_count} gate vertices")]
    UnknownVertex { vertex: String, gate_count: usize },
}

/// Directed acyclic graph over `START, 1..N, END`, stored as per-vertex
/// incoming edge lists. Parallel edges are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoncommGraph<W = Degree> {
    gate_count: usize,
    incoming: Vec<Vec<Edge<W>>>,
}

impl<W: Weight> NoncommGraph<W> {
    /// Builds a graph from an arbitrary forward-only edge list.
    ///
    /// Incoming edges of each vertex are ordered by source vertex, then kind.
    pub fn from_edges(
        gate_count: usize,
        edges: impl IntoIterator<Item = Edge<W>>,
    ) -> Result<Self, GraphError> {
        let mut incoming = vec![Vec::new(); gate_count + 2];
        for e in edges {
            for v in [e.from, e.to] {
                if matches!(v, Vertex::Gate(j) if j == 0 || j > gate_count) {
                    return Err(GraphError::UnknownVertex {
                        vertex: v.to_string(),
                        gate_count,
                    });
                }
            }
            if e.from >= e.to {
                return Err(GraphError::BackwardEdge {
                    from: e.from.to_string(),
                    to: e.to.to_string(),
                });
            }
            incoming[e.to.position(gate_count)].push(e);
        }
        for list in &mut incoming {
            list.sort_by_key(|e| (e.from, e.kind));
        }
        Ok(NoncommGraph {
            gate_count,
            incoming,
        })
    }

    /// Number of gate vertices `N`.
    pub fn gate_count(&self) -> usize {
        self.gate_count
    }

    pub fn vertex_count(&self) -> usize {
        self.gate_count + 2
    }

    /// Vertices in topological order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(|p| Vertex::from_position(p, self.gate_count))
    }

    pub fn incoming(&self, v: Vertex) -> &[Edge<W>] {
        &self.incoming[v.position(self.gate_count)]
    }

    /// All edges, grouped by destination vertex in topological order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge<W>> {
        self.incoming.iter().flatten()
    }

    pub fn edge_count(&self) -> usize {
        self.incoming.iter().map(Vec::len).sum()
    }

    /// Edges between two gate vertices.
    pub fn inner_edges(&self) -> impl Iterator<Item = &Edge<W>> {
        self.edges()
            .filter(|e| matches!((e.from, e.to), (Vertex::Gate(_), Vertex::Gate(_))))
    }

    /// Edges ordered by from-vertex, then to-vertex, then kind.
    pub fn sorted_edges(&self) -> Vec<Edge<W>> {
        let mut edges: Vec<_> = self.edges().copied().collect();
        edges.sort_by_key(|e| (e.from, e.to, e.kind));
        edges
    }
}

/// Draws the non-commutativity graph of a necklace.
///
/// `START → j` weighs `|l_j|` for negative-degree two-qubit strings and 0
/// otherwise; `j → END` weighs `l_j` for non-negative-degree two-qubit
/// strings and 0 otherwise. For `i < j`: source-target edges weigh `l_i`,
/// target-source edges `-l_j`, target-target edges 0. An H string only takes
/// source-target and target-target edges and a P string only target-target.
pub fn build_graph(necklace: &PearlNecklace) -> NoncommGraph<Degree> {
    let n = necklace.len();
    let strings = necklace.strings();
    let mut incoming: Vec<Vec<Edge<Degree>>> = Vec::with_capacity(n + 2);
    incoming.push(Vec::new());

    for (j, second) in necklace.indexed() {
        let to = Vertex::Gate(j);
        let mut edges = Vec::new();
        let start_weight = if second.has_negative_degree() {
            second.delay().abs()
        } else {
            0
        };
        edges.push(Edge {
            from: Vertex::Start,
            to,
            weight: start_weight,
            kind: EdgeKind::Start,
        });

        for (i, first) in strings[..j - 1].iter().enumerate() {
            let from = Vertex::Gate(i + 1);
            let mut draw = |weight, kind| {
                edges.push(Edge {
                    from,
                    to,
                    weight,
                    kind,
                })
            };
            match second.kind() {
                GateKind::Cnot | GateKind::Cphase => {
                    if source_target(first, second) {
                        draw(first.delay(), EdgeKind::SourceTarget);
                    }
                    if target_source(first, second) {
                        draw(-second.delay(), EdgeKind::TargetSource);
                    }
                    if target_target(first, second) {
                        draw(0, EdgeKind::TargetTarget);
                    }
                }
                GateKind::Hadamard => {
                    if source_target(first, second) {
                        draw(first.delay(), EdgeKind::SourceTarget);
                    }
                    if target_target(first, second) {
                        draw(0, EdgeKind::TargetTarget);
                    }
                }
                GateKind::Phase => {
                    if target_target(first, second) {
                        draw(0, EdgeKind::TargetTarget);
                    }
                }
            }
        }
        incoming.push(edges);
    }

    let end_edges = necklace
        .indexed()
        .map(|(j, s)| Edge {
            from: Vertex::Gate(j),
            to: Vertex::End,
            weight: if s.has_nonnegative_degree() {
                s.delay()
            } else {
                0
            },
            kind: EdgeKind::End,
        })
        .collect();
    incoming.push(end_edges);

    NoncommGraph {
        gate_count: n,
        incoming,
    }
}

/// DOT text for the graph.
pub fn export_dot<W: Weight>(graph: &NoncommGraph<W>) -> String {
    export_dot_highlighted(graph, &[])
}

/// DOT text with the edges along `path` drawn bold. Where parallel edges join
/// two consecutive path vertices, only the first in kind order is marked.
pub fn export_dot_highlighted<W: Weight>(graph: &NoncommGraph<W>, path: &[Vertex]) -> String {
    let mut marked: Vec<(Vertex, Vertex)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let mut out = String::new();
    out.push_str("digraph noncommutativity {\n");
    out.push_str("  rankdir=LR;\n");
    for v in graph.vertices() {
        let _ = writeln!(out, "  {} [label=\"{}\"];", v.dot_name(), v);
    }
    for e in graph.sorted_edges() {
        let bold = match marked.iter().position(|&p| p == (e.from, e.to)) {
            Some(k) => {
                marked.swap_remove(k);
                ", style=bold"
            }
            None => "",
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"w={} ({})\"{}];",
            e.from.dot_name(),
            e.to.dot_name(),
            e.weight,
            e.kind.label(),
            bold
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate_model::{parse_necklace, GateString};

    fn edge(from: Vertex, to: Vertex, weight: Degree, kind: EdgeKind) -> Edge {
        Edge {
            from,
            to,
            weight,
            kind,
        }
    }

    fn six_strings() -> PearlNecklace {
        parse_necklace("frame 3\nH 1\nP 1\nCPHASE 1 2 -1\nCPHASE 2 3 2\nCNOT 3 2 1\nCNOT 2 3 1")
            .unwrap()
    }

    #[test]
    fn six_strings_edges() {
        use EdgeKind::*;
        use Vertex::Gate as G;
        let g = build_graph(&six_strings());
        let inner: Vec<_> = {
            let mut v: Vec<_> = g.inner_edges().copied().collect();
            v.sort_by_key(|e| (e.from, e.to, e.kind));
            v
        };
        assert_eq!(
            inner,
            vec![
                edge(G(1), G(2), 0, TargetTarget),
                edge(G(1), G(3), 1, TargetSource),
                edge(G(3), G(5), 0, TargetTarget),
                edge(G(4), G(5), 2, SourceTarget),
                edge(G(4), G(6), 0, TargetTarget),
                edge(G(5), G(6), 1, SourceTarget),
                edge(G(5), G(6), -1, TargetSource),
            ]
        );
        let start: Vec<_> = (1..=6).map(|j| g.incoming(G(j))[0].weight).collect();
        assert_eq!(start, vec![0, 0, 1, 0, 0, 0]);
        let end: Vec<_> = g.incoming(Vertex::End).iter().map(|e| e.weight).collect();
        assert_eq!(end, vec![0, 0, 0, 2, 1, 1]);
        assert_eq!(g.edge_count(), 19);
    }

    #[test]
    fn single_string_graph() {
        let n = PearlNecklace::new(2, vec![GateString::cnot(1, 2, 2)]).unwrap();
        let g = build_graph(&n);
        assert_eq!(
            g.sorted_edges(),
            vec![
                edge(Vertex::Start, Vertex::Gate(1), 0, EdgeKind::Start),
                edge(Vertex::Gate(1), Vertex::End, 2, EdgeKind::End),
            ]
        );
    }

    #[test]
    fn source_target_pair_graph() {
        let n = PearlNecklace::new(
            3,
            vec![GateString::cphase(2, 3, 1), GateString::cnot(1, 2, 1)],
        )
        .unwrap();
        use Vertex::*;
        assert_eq!(
            build_graph(&n).sorted_edges(),
            vec![
                edge(Start, Gate(1), 0, EdgeKind::Start),
                edge(Start, Gate(2), 0, EdgeKind::Start),
                edge(Gate(1), Gate(2), 1, EdgeKind::SourceTarget),
                edge(Gate(1), End, 1, EdgeKind::End),
                edge(Gate(2), End, 1, EdgeKind::End),
            ]
        );
    }

    #[test]
    fn dot_is_sorted_and_complete() {
        let dot = export_dot(&build_graph(&six_strings()));
        assert_eq!(dot.matches(" -> ").count(), 19);
        assert!(dot.contains("START [label=\"START\"];"));
        assert!(dot.contains("g4 -> g5 [label=\"w=2 (st)\"];"));
        let first = dot.find("g5 -> g6 [label=\"w=1 (st)\"]").unwrap();
        let second = dot.find("g5 -> g6 [label=\"w=-1 (ts)\"]").unwrap();
        assert!(first < second);
        assert!(dot.find("START -> g6").unwrap() < dot.find("g1 -> g2").unwrap());
    }

    #[test]
    fn dot_single_and_commuting() {
        let single = build_graph(&PearlNecklace::new(2, vec![GateString::hadamard(1)]).unwrap());
        let dot = export_dot(&single);
        assert_eq!(dot.matches(" -> ").count(), 2);
        assert_eq!(dot.matches("[label=").count(), 5);

        let commuting = build_graph(
            &PearlNecklace::new(4, vec![GateString::cnot(1, 2, 1), GateString::phase(3)]).unwrap(),
        );
        let dot = export_dot(&commuting);
        assert_eq!(
            dot.matches("(st)").count() + dot.matches("(ts)").count() + dot.matches("(tt)").count(),
            0
        );
        assert_eq!(dot.matches(" -> ").count(), 4);
    }

    #[test]
    fn highlighted_path_marks_one_parallel_edge() {
        use Vertex::*;
        let g = build_graph(&six_strings());
        let dot = export_dot_highlighted(&g, &[Start, Gate(4), Gate(5), Gate(6), End]);
        assert_eq!(dot.matches("style=bold").count(), 4);
        assert!(dot.contains("g5 -> g6 [label=\"w=1 (st)\", style=bold];"));
    }

    #[test]
    fn from_edges_rejects_backward_edges() {
        let err = NoncommGraph::<i32>::from_edges(
            2,
            [Edge {
                from: Vertex::Gate(2),
                to: Vertex::Gate(1),
                weight: 0,
                kind: EdgeKind::TargetTarget,
            }],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::BackwardEdge { .. }));
        assert!(NoncommGraph::<i32>::from_edges(
            1,
            [Edge {
                from: Vertex::Start,
                to: Vertex::Gate(3),
                weight: 0,
                kind: EdgeKind::Start,
            }]
        )
        .is_err());
    }
}
