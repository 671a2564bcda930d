//! Non-commutativity predicates between an earlier string `first` and a later
//! string `second`.
//!
//! The predicates look only at kinds and qubit roles. Degrees never matter.

use crate::gate_model::{GateKind, GateString, PearlNecklace};

use GateKind::{Cnot, Cphase, Hadamard, Phase};

/// Which pair of qubit roles makes two strings fail to commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    /// Source of the first string is the target of the second: `σ ≤ τ'`.
    SourceTarget,
    /// Target of the first string is the source of the second: `τ ≤ σ'`.
    TargetSource,
    /// Both strings share a target: `τ ≤ τ'`.
    TargetTarget,
}

impl RelationKind {
    pub const ALL: [RelationKind; 3] = [
        RelationKind::SourceTarget,
        RelationKind::TargetSource,
        RelationKind::TargetTarget,
    ];

    pub fn holds(self, first: &GateString, second: &GateString) -> bool {
        match self {
            RelationKind::SourceTarget => source_target(first, second),
            RelationKind::TargetSource => target_source(first, second),
            RelationKind::TargetTarget => target_target(first, second),
        }
    }
}

pub fn source_target(first: &GateString, second: &GateString) -> bool {
    matches!(first.kind(), Cnot | Cphase)
        && matches!(second.kind(), Cnot | Hadamard)
        && first.source() == Some(second.target())
}

pub fn target_source(first: &GateString, second: &GateString) -> bool {
    matches!(first.kind(), Cnot | Hadamard)
        && matches!(second.kind(), Cnot | Cphase)
        && second.source() == Some(first.target())
}

pub fn target_target(first: &GateString, second: &GateString) -> bool {
    let kinds = matches!(
        (first.kind(), second.kind()),
        (Cphase, Cnot)
            | (Cnot, Cphase)
            | (Cnot, Hadamard)
            | (Cphase, Hadamard)
            | (Hadamard, Cnot)
            | (Hadamard, Cphase)
            | (Cnot, Phase)
            | (Phase, Cnot)
            | (Phase, Hadamard)
            | (Hadamard, Phase)
    );
    kinds && first.target() == second.target()
}

/// Every relation that holds for the ordered pair, in `RelationKind` order.
pub fn relations(first: &GateString, second: &GateString) -> impl Iterator<Item = RelationKind> {
    let (first, second) = (*first, *second);
    RelationKind::ALL
        .into_iter()
        .filter(move |r| r.holds(&first, &second))
}

/// True if any of the three predicates holds.
pub fn noncommuting(first: &GateString, second: &GateString) -> bool {
    source_target(first, second) || target_source(first, second) || target_target(first, second)
}

/// Earlier strings that constrain `U_j`, split by relation. All indices are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PredecessorSets {
    pub st: Vec<usize>,
    pub ts: Vec<usize>,
    pub tt: Vec<usize>,
}

impl PredecessorSets {
    pub fn get(&self, kind: RelationKind) -> &[usize] {
        match kind {
            RelationKind::SourceTarget => &self.st,
            RelationKind::TargetSource => &self.ts,
            RelationKind::TargetTarget => &self.tt,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.st.is_empty() && self.ts.is_empty() && self.tt.is_empty()
    }
}

/// # Panics
/// If `j` is outside `1..=N`.
pub fn predecessor_sets(necklace: &PearlNecklace, j: usize) -> PredecessorSets {
    let second = necklace.string(j);
    let mut sets = PredecessorSets::default();
    for (i, first) in necklace.indexed().take(j - 1) {
        if source_target(first, second) {
            sets.st.push(i);
        }
        if target_source(first, second) {
            sets.ts.push(i);
        }
        if target_target(first, second) {
            sets.tt.push(i);
        }
    }
    sets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate_model::parse_necklace;

    fn six_strings() -> PearlNecklace {
        parse_necklace("frame 3\nH 1\nP 1\nCPHASE 1 2 -1\nCPHASE 2 3 2\nCNOT 3 2 1\nCNOT 2 3 1")
            .unwrap()
    }

    #[test]
    fn source_target_cases() {
        assert!(source_target(
            &GateString::cnot(3, 2, 1),
            &GateString::cnot(2, 3, 1)
        ));
        assert!(source_target(
            &GateString::cphase(1, 2, -1),
            &GateString::hadamard(1)
        ));
        assert!(!source_target(
            &GateString::hadamard(1),
            &GateString::cnot(1, 2, 0)
        ));
    }

    #[test]
    fn target_source_cases() {
        assert!(target_source(
            &GateString::hadamard(1),
            &GateString::cphase(1, 2, -1)
        ));
        let (a, b) = (GateString::cnot(3, 2, 1), GateString::cnot(2, 3, 1));
        assert!(target_source(&a, &b));
        assert!(source_target(&a, &b));
        assert!(!target_source(
            &GateString::phase(1),
            &GateString::cnot(1, 2, 0)
        ));
    }

    #[test]
    fn target_target_cases() {
        assert!(target_target(
            &GateString::hadamard(1),
            &GateString::phase(1)
        ));
        assert!(target_target(
            &GateString::cphase(1, 2, -1),
            &GateString::cnot(3, 2, 1)
        ));
        assert!(!target_target(
            &GateString::cnot(1, 3, 0),
            &GateString::cnot(2, 3, 1)
        ));
        for (a, b) in [
            (GateString::cphase(1, 2, 0), GateString::cphase(3, 2, 0)),
            (GateString::phase(2), GateString::phase(2)),
            (GateString::phase(2), GateString::cphase(1, 2, 0)),
            (GateString::cphase(1, 2, 0), GateString::phase(2)),
            (GateString::hadamard(2), GateString::hadamard(2)),
        ] {
            assert!(!target_target(&a, &b), "{a:?} {b:?}");
        }
    }

    #[test]
    fn identical_strings_commute() {
        for g in [
            GateString::cnot(1, 2, 3),
            GateString::cphase(2, 1, -1),
            GateString::hadamard(1),
            GateString::phase(2),
        ] {
            assert!(!noncommuting(&g, &g), "{g:?}");
        }
    }

    #[test]
    fn six_strings_predecessors() {
        let n = six_strings();
        assert!(predecessor_sets(&n, 1).is_empty());
        assert_eq!(
            predecessor_sets(&n, 3),
            PredecessorSets {
                st: vec![],
                ts: vec![1],
                tt: vec![]
            }
        );
        assert_eq!(
            predecessor_sets(&n, 6),
            PredecessorSets {
                st: vec![5],
                ts: vec![5],
                tt: vec![4]
            }
        );
    }

    #[test]
    fn relations_lists_all_that_hold() {
        let found: Vec<_> =
            relations(&GateString::cnot(3, 2, 1), &GateString::cnot(2, 3, 1)).collect();
        assert_eq!(
            found,
            vec![RelationKind::SourceTarget, RelationKind::TargetSource]
        );
    }
}
