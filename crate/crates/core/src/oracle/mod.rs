//! Independent checks of a realization: exhaustive minimality search,
//! instance-order preservation, and Clifford-tableau equivalence of the
//! necklace and the repeated unitary on a finite window.

mod instances;
mod tableau;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::commutativity::{relations, RelationKind};
use crate::gate_model::{Degree, GateKind, PearlNecklace};
use crate::graph::Vertex;
use crate::scheduler::{Compilation, ConvRealization};

pub use instances::{
    enumerate_instances, necklace_order, realization_order, GateInstance, Site, Window,
};
pub use tableau::{CliffordTableau, Generator, PauliString};

/// Largest necklace the exhaustive minimality search accepts by default.
pub const BRUTE_FORCE_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("qubit {qubit} in frame {frame} lies outside the {frames}-frame window")]
    SiteOutOfWindow {
        qubit: usize,
        frame: i64,
        frames: usize,
    },
    #[error("gate string {string} has no copy inside a {frames}-frame window")]
    WindowTooSmall { string: usize, frames: usize },
    #[error("exhaustive search is limited to {cap} gate strings, got {strings}")]
    CapExceeded { strings: usize, cap: usize },
}

impl CliffordTableau {
    /// Conjugates the tableau by one gate instance laid out in `window`.
    pub fn apply(&mut self, instance: &GateInstance, window: &Window) -> Result<(), OracleError> {
        let slot = |site: Site| {
            window.slot(site).ok_or(OracleError::SiteOutOfWindow {
                qubit: site.qubit,
                frame: site.frame,
                frames: window.frames,
            })
        };
        let target = slot(instance.target)?;
        let source = instance.source.map(slot).transpose()?;
        match (instance.kind, source) {
            (GateKind::Hadamard, _) => self.h(target),
            (GateKind::Phase, _) => self.s(target),
            (GateKind::Cnot, Some(c)) => self.cnot(c, target),
            (GateKind::Cphase, Some(c)) => self.cz(c, target),
            (kind, None) => unreachable!("{kind} instance without a source site"),
        }
        Ok(())
    }
}

/// Tableau of the instances applied in list order on `window`.
pub fn circuit_tableau(
    instances: &[GateInstance],
    window: &Window,
) -> Result<CliffordTableau, OracleError> {
    let mut t = CliffordTableau::identity(window.qubits());
    for g in instances {
        t.apply(g, window)?;
    }
    Ok(t)
}

/// First generator whose image differs between the two circuits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    /// `X<slot>` or `Z<slot>`, slot = `frame * n + qubit - 1`.
    pub generator: String,
    pub necklace_image: String,
    pub realization_image: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equal: bool,
    pub divergence: Option<Divergence>,
}

fn check_window(necklace: &PearlNecklace, frames: usize) -> Result<(), OracleError> {
    for j in 1..=necklace.len() {
        if enumerate_instances(necklace, j, frames).is_empty() {
            return Err(OracleError::WindowTooSmall { string: j, frames });
        }
    }
    Ok(())
}

/// Compares the necklace and the realization as Clifford operators on
/// `frames` frames, signs included.
pub fn verify_equivalence(
    necklace: &PearlNecklace,
    realization: &ConvRealization,
    frames: usize,
) -> Result<Equivalence, OracleError> {
    check_window(necklace, frames)?;
    let window = Window {
        frame_size: necklace.frame_size(),
        frames,
    };
    let reference = circuit_tableau(&necklace_order(necklace, frames), &window)?;
    let candidate = circuit_tableau(&realization_order(necklace, realization, frames), &window)?;
    let divergence = reference.first_difference(&candidate).map(|g| Divergence {
        generator: g.to_string(),
        necklace_image: reference.image(g).to_string(),
        realization_image: candidate.image(g).to_string(),
    });
    Ok(Equivalence {
        equal: divergence.is_none(),
        divergence,
    })
}

/// True iff every pair of in-window copies that fail to commute keeps its
/// necklace order in the realization order.
///
/// A pair counts when its strings satisfy a relation and the copies meet on
/// the sites that relation names (source/target, target/source or
/// target/target). Copies missing from the realization order fail the check.
pub fn check_order_preservation(
    necklace: &PearlNecklace,
    realization: &ConvRealization,
    frames: usize,
) -> bool {
    let reference = necklace_order(necklace, frames);
    let candidate = realization_order(necklace, realization, frames);
    let position: HashMap<GateInstance, usize> =
        candidate.iter().enumerate().map(|(k, g)| (*g, k)).collect();

    let mut by_string: Vec<Vec<GateInstance>> = vec![Vec::new(); necklace.len() + 1];
    for g in reference {
        if !position.contains_key(&g) {
            return false;
        }
        by_string[g.origin.0].push(g);
    }

    for (j, second) in necklace.indexed() {
        for (i, first) in necklace.indexed().take(j - 1) {
            let kinds: Vec<RelationKind> = relations(first, second).collect();
            if kinds.is_empty() {
                continue;
            }
            for x in &by_string[i] {
                for y in &by_string[j] {
                    let meets = kinds.iter().any(|r| match r {
                        RelationKind::SourceTarget => x.source == Some(y.target),
                        RelationKind::TargetSource => y.source == Some(x.target),
                        RelationKind::TargetTarget => x.target == y.target,
                    });
                    if meets && position[x] > position[y] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Outcome of the exhaustive minimality search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteForce {
    Minimum(Degree),
    /// No assignment with every `τ_j ≤ bound` satisfies the constraints.
    Infeasible,
}

/// Smallest `max_j max(τ_j, σ_j)` over all integer assignments `τ ∈ [0, bound]^N`
/// with `σ_j = τ_j + l_j ≥ 0` and every pairwise ordering constraint satisfied.
pub fn brute_force_min_memory(
    necklace: &PearlNecklace,
    bound: Degree,
) -> Result<BruteForce, OracleError> {
    brute_force_min_memory_capped(necklace, bound, BRUTE_FORCE_CAP)
}

pub fn brute_force_min_memory_capped(
    necklace: &PearlNecklace,
    bound: Degree,
    cap: usize,
) -> Result<BruteForce, OracleError> {
    if necklace.len() > cap {
        return Err(OracleError::CapExceeded {
            strings: necklace.len(),
            cap,
        });
    }
    let search = Search::new(necklace);
    let widest = necklace
        .strings()
        .iter()
        .map(|s| s.delay().max(0))
        .max()
        .unwrap_or(0);
    for memory in 0..=bound.max(0) + widest {
        if search.feasible(memory, bound) {
            return Ok(BruteForce::Minimum(memory));
        }
    }
    Ok(BruteForce::Infeasible)
}

/// Depth-first enumeration of target frames, one string at a time. A prefix
/// is abandoned as soon as it breaks a constraint with an earlier string.
struct Search {
    degrees: Vec<Option<Degree>>,
    /// For each string, `(earlier string, relation)` pairs it must respect.
    constraints: Vec<Vec<(usize, RelationKind)>>,
}

impl Search {
    fn new(necklace: &PearlNecklace) -> Self {
        let strings = necklace.strings();
        let constraints = (0..strings.len())
            .map(|j| {
                (0..j)
                    .flat_map(|i| relations(&strings[i], &strings[j]).map(move |r| (i, r)))
                    .collect()
            })
            .collect();
        Search {
            degrees: strings.iter().map(|s| s.degree()).collect(),
            constraints,
        }
    }

    fn feasible(&self, memory: Degree, bound: Degree) -> bool {
        let mut taus = Vec::with_capacity(self.degrees.len());
        self.extend(&mut taus, memory, bound)
    }

    fn extend(&self, taus: &mut Vec<Degree>, memory: Degree, bound: Degree) -> bool {
        let j = taus.len();
        if j == self.degrees.len() {
            return true;
        }
        let l = self.degrees[j];
        let delay = l.unwrap_or(0);
        let sigma_of = |k: usize, tau: Degree| self.degrees[k].map(|d| tau + d);
        for tau in 0..=bound {
            let sigma = l.map(|d| tau + d);
            if tau > memory || sigma.is_some_and(|s| s < 0 || s > memory) {
                continue;
            }
            let ok = self.constraints[j].iter().all(|&(i, r)| match r {
                RelationKind::SourceTarget => sigma_of(i, taus[i]).unwrap() <= tau,
                RelationKind::TargetSource => taus[i] <= sigma.unwrap(),
                RelationKind::TargetTarget => taus[i] <= tau,
            });
            if ok {
                taus.push(tau);
                if self.extend(taus, memory, bound) {
                    return true;
                }
                taus.pop();
            }
            if tau + delay.max(0) > memory {
                break;
            }
        }
        false
    }
}

/// Moves one gate a frame below the position its binding constraint allows.
///
/// Picks the first gate whose target frame is fixed by an edge from another
/// gate (rather than by the start edge) and lowers its `τ` by one. Returns the
/// 1-based gate index and the corrupted realization, or `None` when every
/// gate sits at its start-edge minimum.
pub fn lower_binding_gate(compilation: &Compilation) -> Option<(usize, ConvRealization)> {
    let Compilation {
        graph,
        paths,
        realization,
    } = compilation;
    for v in graph.vertices() {
        let Vertex::Gate(j) = v else { continue };
        let w = paths.weight(v)?;
        let floor = graph.incoming(v)[0].weight;
        let bound_by_gate = graph.incoming(v).iter().any(|e| {
            matches!(e.from, Vertex::Gate(_))
                && paths.weight(e.from).map(|u| u + e.weight) == Some(w)
        });
        if bound_by_gate && w > floor {
            return Some((j, realization.with_tau(j, w - 1)));
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Minimality {
    pub dp: Degree,
    /// `None` when the necklace exceeds the exhaustive-search cap.
    pub brute_force: Option<Degree>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub n: usize,
    #[serde(rename = "F")]
    pub frames: usize,
}

/// Combined outcome of all oracle checks on one realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub minimality: Minimality,
    pub order_preserved: bool,
    pub tableau_equal: bool,
    pub window: WindowReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divergence: Option<Divergence>,
}

impl VerificationReport {
    /// All checks pass; a skipped exhaustive search does not count as failure.
    pub fn passed(&self) -> bool {
        self.order_preserved
            && self.tableau_equal
            && self
                .minimality
                .brute_force
                .is_none_or(|b| b == self.minimality.dp)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Window frames; defaults to `memory + 4`.
    pub frames: Option<usize>,
    /// Exhaustive-search bound; defaults to `memory + 2`.
    pub bound: Option<Degree>,
    /// Exhaustive-search cap; defaults to [`BRUTE_FORCE_CAP`].
    pub cap: Option<usize>,
}

/// Runs every check. An infeasible or skipped exhaustive search is reported
/// as `brute_force: None`.
pub fn verify(
    necklace: &PearlNecklace,
    realization: &ConvRealization,
    options: VerifyOptions,
) -> Result<VerificationReport, OracleError> {
    let memory = realization.memory;
    let frames = options
        .frames
        .unwrap_or_else(|| usize::try_from(memory.max(0)).unwrap_or(0) + 4);
    let bound = options.bound.unwrap_or(memory.max(0) + 2);
    let cap = options.cap.unwrap_or(BRUTE_FORCE_CAP);

    let brute_force = match brute_force_min_memory_capped(necklace, bound, cap) {
        Ok(BruteForce::Minimum(l)) => Some(l),
        Ok(BruteForce::Infeasible) | Err(OracleError::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let equivalence = verify_equivalence(necklace, realization, frames)?;
    Ok(VerificationReport {
        minimality: Minimality {
            dp: memory,
            brute_force,
        },
        order_preserved: check_order_preservation(necklace, realization, frames),
        tableau_equal: equivalence.equal,
        window: WindowReport {
            n: necklace.frame_size(),
            frames,
        },
        divergence: equivalence.divergence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate_model::{parse_necklace, GateString};
    use crate::scheduler::compile;

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

    fn inst(kind: GateKind, source: Option<(usize, i64)>, target: (usize, i64)) -> GateInstance {
        GateInstance {
            kind,
            source: source.map(|(qubit, frame)| Site { qubit, frame }),
            target: Site {
                qubit: target.0,
                frame: target.1,
            },
            origin: (1, target.1),
        }
    }

    #[test]
    fn empty_circuit_is_identity() {
        let w = Window {
            frame_size: 2,
            frames: 2,
        };
        assert_eq!(
            circuit_tableau(&[], &w).unwrap(),
            CliffordTableau::identity(4)
        );
    }

    #[test]
    fn disjoint_instances_commute() {
        let w = Window {
            frame_size: 3,
            frames: 2,
        };
        let a = inst(GateKind::Cnot, Some((1, 0)), (2, 1));
        let b = inst(GateKind::Hadamard, None, (3, 0));
        assert_eq!(
            circuit_tableau(&[a, b], &w).unwrap(),
            circuit_tableau(&[b, a], &w).unwrap()
        );
    }

    #[test]
    fn chained_cnots_do_not_commute() {
        let w = Window {
            frame_size: 3,
            frames: 1,
        };
        let ab = inst(GateKind::Cnot, Some((1, 0)), (2, 0));
        let bc = inst(GateKind::Cnot, Some((2, 0)), (3, 0));
        assert_ne!(
            circuit_tableau(&[ab, bc], &w).unwrap(),
            circuit_tableau(&[bc, ab], &w).unwrap()
        );
    }

    #[test]
    fn out_of_window_site_is_an_error() {
        let w = Window {
            frame_size: 2,
            frames: 2,
        };
        let g = inst(GateKind::Cnot, Some((1, 2)), (2, 0));
        assert_eq!(
            circuit_tableau(&[g], &w).unwrap_err(),
            OracleError::SiteOutOfWindow {
                qubit: 1,
                frame: 2,
                frames: 2
            }
        );
    }

    #[test]
    fn six_strings_is_equivalent() {
        let n = six_strings();
        let r = compile(&n).realization;
        let eq = verify_equivalence(&n, &r, 8).unwrap();
        assert!(eq.equal, "{:?}", eq.divergence);
        assert!(check_order_preservation(&n, &r, 8));
    }

    #[test]
    fn two_strings_is_equivalent() {
        let n = two_strings();
        let r = compile(&n).realization;
        assert!(verify_equivalence(&n, &r, 5).unwrap().equal);
    }

    #[test]
    fn corrupted_source_target_is_caught() {
        let n = two_strings();
        let bad = compile(&n).realization.with_tau(2, 0);
        let eq = verify_equivalence(&n, &bad, 5).unwrap();
        assert!(!eq.equal);
        let d = eq.divergence.unwrap();
        assert_ne!(d.necklace_image, d.realization_image);
        assert!(!check_order_preservation(&n, &bad, 5));
    }

    #[test]
    fn corrupted_target_source_is_caught() {
        // H(1) then CPHASE(1,2D^-1): τ_H ≤ σ_CPHASE binds with σ = 0 → lower τ_H impossible,
        // so instead raise H above the CPHASE source.
        let n = PearlNecklace::new(
            2,
            vec![GateString::hadamard(1), GateString::cphase(1, 2, -1)],
        )
        .unwrap();
        let good = compile(&n).realization;
        assert_eq!((good.gates[1].sigma, good.gates[1].tau), (Some(0), 1));
        assert!(check_order_preservation(&n, &good, 6));
        let bad = good.with_tau(1, 1);
        assert!(!check_order_preservation(&n, &bad, 6));
        assert!(!verify_equivalence(&n, &bad, 6).unwrap().equal);
    }

    #[test]
    fn lowering_a_binding_gate_breaks_the_realization() {
        let n = six_strings();
        let (j, bad) = lower_binding_gate(&compile(&n)).unwrap();
        assert_eq!(j, 5);
        assert_eq!((bad.gates[4].sigma, bad.gates[4].tau), (Some(2), 1));
        assert!(!check_order_preservation(&n, &bad, 8));
        assert!(!verify_equivalence(&n, &bad, 8).unwrap().equal);

        let commuting =
            PearlNecklace::new(3, vec![GateString::cnot(1, 2, -1), GateString::phase(3)]).unwrap();
        assert!(lower_binding_gate(&compile(&commuting)).is_none());
    }

    #[test]
    fn window_too_small_is_reported() {
        let n = PearlNecklace::new(2, vec![GateString::cnot(1, 2, 3)]).unwrap();
        let r = compile(&n).realization;
        assert_eq!(
            verify_equivalence(&n, &r, 3).unwrap_err(),
            OracleError::WindowTooSmall {
                string: 1,
                frames: 3
            }
        );
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_min_memory(&six_strings(), 6).unwrap(),
            BruteForce::Minimum(4)
        );
        assert_eq!(
            brute_force_min_memory(&two_strings(), 4).unwrap(),
            BruteForce::Minimum(2)
        );
        let h = PearlNecklace::new(1, vec![GateString::hadamard(1)]).unwrap();
        assert_eq!(
            brute_force_min_memory(&h, 0).unwrap(),
            BruteForce::Minimum(0)
        );
    }

    #[test]
    fn brute_force_infeasible_and_cap() {
        // Second string needs τ ≥ 1.
        assert_eq!(
            brute_force_min_memory(&two_strings(), 0).unwrap(),
            BruteForce::Infeasible
        );
        let n = PearlNecklace::new(2, vec![GateString::hadamard(1); 9]).unwrap();
        assert_eq!(
            brute_force_min_memory(&n, 1).unwrap_err(),
            OracleError::CapExceeded { strings: 9, cap: 8 }
        );
    }

    #[test]
    fn commuting_strings_accept_any_placement() {
        let n =
            PearlNecklace::new(3, vec![GateString::cnot(1, 2, 1), GateString::phase(3)]).unwrap();
        let r = compile(&n).realization;
        for tau in 0..3 {
            assert!(check_order_preservation(&n, &r.with_tau(2, tau), 6));
            assert!(check_order_preservation(&n, &r.with_tau(1, tau), 6));
        }
    }

    #[test]
    fn report_json_shape() {
        let n = six_strings();
        let r = compile(&n).realization;
        let report = verify(&n, &r, VerifyOptions::default()).unwrap();
        assert!(report.passed());
        assert_eq!(
            serde_json::to_value(&report).unwrap(),
            serde_json::json!({
                "minimality": {"dp": 4, "brute_force": 4},
                "order_preserved": true,
                "tableau_equal": true,
                "window": {"n": 3, "F": 8}
            })
        );
    }
}
