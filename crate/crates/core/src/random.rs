//! Seeded random necklaces for verification corpora and benchmarks.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gate_model::{Degree, GateKind, GateString, PearlNecklace};

/// Uniform kind, uniform distinct qubit pair, uniform degree in
/// `[-degree_max, degree_max]`. With `frame_size == 1` only H and P are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NecklaceSpec {
    pub frame_size: usize,
    pub strings: usize,
    pub degree_max: Degree,
}

pub fn random_necklace<R: Rng + ?Sized>(rng: &mut R, spec: NecklaceSpec) -> PearlNecklace {
    assert!(spec.frame_size >= 1 && spec.strings >= 1);
    let kinds: &[GateKind] = if spec.frame_size >= 2 {
        &GateKind::ALL
    } else {
        &[GateKind::Hadamard, GateKind::Phase]
    };
    let strings = (0..spec.strings)
        .map(|_| {
            let kind = kinds[rng.gen_range(0..kinds.len())];
            if kind.is_two_qubit() {
                let pair = sample(rng, spec.frame_size, 2);
                let degree = rng.gen_range(-spec.degree_max..=spec.degree_max);
                GateString::two_qubit(kind, pair.index(0) + 1, pair.index(1) + 1, degree)
            } else {
                GateString::single_qubit(kind, rng.gen_range(1..=spec.frame_size))
            }
        })
        .collect();
    PearlNecklace::new(spec.frame_size, strings).expect("generated strings are valid")
}

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` necklaces with sizes drawn uniformly from `1..=max_strings` and
/// frame sizes from `1..=max_frame_size`.
pub fn random_corpus(
    seed: u64,
    count: usize,
    max_strings: usize,
    max_frame_size: usize,
    degree_max: Degree,
) -> Vec<PearlNecklace> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| {
            let spec = NecklaceSpec {
                frame_size: rng.gen_range(1..=max_frame_size),
                strings: rng.gen_range(1..=max_strings),
                degree_max,
            };
            random_necklace(&mut rng, spec)
        })
        .collect()
}
