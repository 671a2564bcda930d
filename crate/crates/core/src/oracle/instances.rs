//! Concrete gate instances of a necklace on a finite window of frames, and
//! the two orders in which the necklace and its realization apply them.

use crate::gate_model::{GateKind, GateString, PearlNecklace};
use crate::scheduler::ConvRealization;

/// A qubit (1-based) in a frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub qubit: usize,
    pub frame: i64,
}

/// One gate of a string, placed at a target frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GateInstance {
    pub kind: GateKind,
    pub source: Option<Site>,
    pub target: Site,
    /// `(j, f)`: string index (1-based) and the target frame `f` of this copy.
    pub origin: (usize, i64),
}

impl GateInstance {
    /// The copy of string `j` whose target sits in frame `target_frame`.
    pub fn of(string: &GateString, j: usize, target_frame: i64) -> Self {
        GateInstance {
            kind: string.kind(),
            source: string.source().map(|qubit| Site {
                qubit,
                frame: target_frame + string.delay(),
            }),
            target: Site {
                qubit: string.target(),
                frame: target_frame,
            },
            origin: (j, target_frame),
        }
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> {
        self.source.into_iter().chain(std::iter::once(self.target))
    }
}

/// `frames` consecutive frames `0..frames` of `frame_size` qubits each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub frame_size: usize,
    pub frames: usize,
}

impl Window {
    pub fn qubits(&self) -> usize {
        self.frame_size * self.frames
    }

    /// Slot `frame * n + (qubit - 1)` if the site lies inside the window.
    pub fn slot(&self, site: Site) -> Option<usize> {
        let frame = usize::try_from(site.frame).ok()?;
        (frame < self.frames && site.qubit >= 1 && site.qubit <= self.frame_size)
            .then(|| frame * self.frame_size + site.qubit - 1)
    }

    pub fn contains(&self, instance: &GateInstance) -> bool {
        instance.sites().all(|s| self.slot(s).is_some())
    }
}

/// In-window copies of string `j`, by ascending target frame.
pub fn enumerate_instances(necklace: &PearlNecklace, j: usize, frames: usize) -> Vec<GateInstance> {
    let window = Window {
        frame_size: necklace.frame_size(),
        frames,
    };
    let string = necklace.string(j);
    (0..frames as i64)
        .map(|f| GateInstance::of(string, j, f))
        .filter(|g| window.contains(g))
        .collect()
}

/// String by string, each string's copies by ascending target frame.
pub fn necklace_order(necklace: &PearlNecklace, frames: usize) -> Vec<GateInstance> {
    (1..=necklace.len())
        .flat_map(|j| enumerate_instances(necklace, j, frames))
        .collect()
}

/// Repeated application of the convolutional unitary.
///
/// Iteration `k` places every gate at its realization frames offset by `k`,
/// gates in necklace order. Iterations run from the highest offset to the
/// lowest, so frames that held memory in one iteration are processed before
/// the iteration that brings in the next fresh frame at offset 0. Copies
/// that fall outside the window are skipped.
pub fn realization_order(
    necklace: &PearlNecklace,
    realization: &ConvRealization,
    frames: usize,
) -> Vec<GateInstance> {
    let window = Window {
        frame_size: necklace.frame_size(),
        frames,
    };
    let lowest = realization
        .gates
        .iter()
        .map(|g| g.sigma.map_or(g.tau, |s| s.min(g.tau)))
        .min()
        .unwrap_or(0);
    let highest = realization
        .gates
        .iter()
        .map(|g| g.top_frame())
        .max()
        .unwrap_or(0);

    let mut order = Vec::new();
    for offset in (-highest..=frames as i64 - 1 - lowest).rev() {
        for (j, g) in realization.gates.iter().enumerate() {
            let target = g.tau + offset;
            let instance = GateInstance {
                kind: g.kind,
                source: g.source.zip(g.sigma).map(|(qubit, sigma)| Site {
                    qubit,
                    frame: sigma + offset,
                }),
                target: Site {
                    qubit: g.target,
                    frame: target,
                },
                origin: (j + 1, target),
            };
            if window.contains(&instance) {
                order.push(instance);
            }
        }
    }
    order
}
