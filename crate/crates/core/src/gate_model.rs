//! Gate strings, pearl-necklace encoders and the text format they are read from.
//!
//! Qubit indices are 1-based everywhere in the public surface. A two-qubit
//! string `U(a, b D^l)` acts on source qubit `a` in frame `f + l` and target
//! qubit `b` in frame `f`, for every frame `f` of the stream.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer frame delay between the source and target of a two-qubit string.
pub type Degree = i64;

/// The four members of the shift-invariant Clifford gate set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GateKind {
    #[serde(rename = "CNOT")]
    Cnot,
    #[serde(rename = "CPHASE")]
    Cphase,
    #[serde(rename = "H")]
    Hadamard,
    #[serde(rename = "P")]
    Phase,
}

impl GateKind {
    pub const ALL: [GateKind; 4] = [
        GateKind::Cnot,
        GateKind::Cphase,
        GateKind::Hadamard,
        GateKind::Phase,
    ];

    pub fn is_two_qubit(self) -> bool {
        matches!(self, GateKind::Cnot | GateKind::Cphase)
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Cnot => "CNOT",
            GateKind::Cphase => "CPHASE",
            GateKind::Hadamard => "H",
            GateKind::Phase => "P",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "CNOT" => Ok(GateKind::Cnot),
            "CPHASE" => Ok(GateKind::Cphase),
            "H" => Ok(GateKind::Hadamard),
            "P" => Ok(GateKind::Phase),
            _ => Err(format!("unknown gate `{s}`")),
        }
    }
}

/// One infinitely repeated gate of a pearl-necklace encoder.
///
/// Constructors keep the kind and the optional fields consistent: two-qubit
/// strings always carry a source and a degree, single-qubit strings never do.
/// Index ranges are checked against a frame size by [`PearlNecklace::new`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GateString {
    kind: GateKind,
    source: Option<usize>,
    target: usize,
    degree: Option<Degree>,
}

impl GateString {
    pub fn cnot(source: usize, target: usize, degree: Degree) -> Self {
        Self::two_qubit(GateKind::Cnot, source, target, degree)
    }

    pub fn cphase(source: usize, target: usize, degree: Degree) -> Self {
        Self::two_qubit(GateKind::Cphase, source, target, degree)
    }

    pub fn hadamard(target: usize) -> Self {
        Self::single_qubit(GateKind::Hadamard, target)
    }

    pub fn phase(target: usize) -> Self {
        Self::single_qubit(GateKind::Phase, target)
    }

    /// # Panics
    /// If `kind` is a single-qubit kind.
    pub fn two_qubit(kind: GateKind, source: usize, target: usize, degree: Degree) -> Self {
        assert!(kind.is_two_qubit(), "{kind} is a single-qubit gate");
        GateString {
            kind,
            source: Some(source),
            target,
            degree: Some(degree),
        }
    }

    /// # Panics
    /// If `kind` is a two-qubit kind.
    pub fn single_qubit(kind: GateKind, target: usize) -> Self {
        assert!(!kind.is_two_qubit(), "{kind} is a two-qubit gate");
        GateString {
            kind,
            source: None,
            target,
            degree: None,
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn source(&self) -> Option<usize> {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn degree(&self) -> Option<Degree> {
        self.degree
    }

    /// The degree, with single-qubit strings counting as zero delay.
    pub fn delay(&self) -> Degree {
        self.degree.unwrap_or(0)
    }

    /// Two-qubit string whose target precedes its source (`l < 0`).
    pub fn has_negative_degree(&self) -> bool {
        matches!(self.degree, Some(l) if l < 0)
    }

    /// Two-qubit string with `l >= 0`.
    pub fn has_nonnegative_degree(&self) -> bool {
        matches!(self.degree, Some(l) if l >= 0)
    }

    /// Same gate with a different degree. Single-qubit strings are returned unchanged.
    pub fn with_degree(self, degree: Degree) -> Self {
        match self.degree {
            Some(_) => GateString {
                degree: Some(degree),
                ..self
            },
            None => self,
        }
    }

    /// Every qubit index the string touches.
    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        self.source.into_iter().chain(std::iter::once(self.target))
    }

    /// `CNOT(3,2D^1)` / `H(1)` style notation.
    pub fn notation(&self) -> String {
        match (self.source, self.degree) {
            (Some(a), Some(l)) => format!("{}({},{}D^{})", self.kind, a, self.target, l),
            _ => format!("{}({})", self.kind, self.target),
        }
    }

    fn check(&self, frame_size: usize, index: usize) -> Result<(), ModelError> {
        for qubit in self.qubits() {
            if qubit == 0 || qubit > frame_size {
                return Err(ModelError::QubitOutOfRange {
                    index,
                    qubit,
                    frame_size,
                });
            }
        }
        if self.source == Some(self.target) {
            return Err(ModelError::SourceEqualsTarget {
                index,
                qubit: self.target,
            });
        }
        Ok(())
    }
}

/// Renders the string as one line of the encoder text format.
impl fmt::Display for GateString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.source, self.degree) {
            (Some(a), Some(l)) => write!(f, "{} {} {} {}", self.kind, a, self.target, l),
            _ => write!(f, "{} {}", self.kind, self.target),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("frame size must be at least 1")]
    ZeroFrameSize,
    #[error("encoder contains no gate strings")]
    Empty,
    #[error("gate string {index}: qubit {qubit} outside [1, {frame_size}]")]
    QubitOutOfRange {
        index: usize,
        qubit: usize,
        frame_size: usize,
    },
    #[error("gate string {index}: source and target are both qubit {qubit}")]
    SourceEqualsTarget { index: usize, qubit: usize },
}

/// A validated pearl-necklace encoder: `frame_size` qubits per frame and the
/// gate strings `U_1 .. U_N` in left-to-right order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PearlNecklace {
    frame_size: usize,
    strings: Vec<GateString>,
}

impl PearlNecklace {
    pub fn new(frame_size: usize, strings: Vec<GateString>) -> Result<Self, ModelError> {
        if frame_size == 0 {
            return Err(ModelError::ZeroFrameSize);
        }
        if strings.is_empty() {
            return Err(ModelError::Empty);
        }
        for (i, s) in strings.iter().enumerate() {
            s.check(frame_size, i + 1)?;
        }
        Ok(PearlNecklace {
            frame_size,
            strings,
        })
    }

    pub fn frame_size(&self) -> usize {
        self.frame_size
    }

    pub fn strings(&self) -> &[GateString] {
        &self.strings
    }

    /// Number of gate strings, `N`.
    pub fn len(&self) -> usize {
        self.strings.len()
    }

    /// Always false for a validated necklace.
    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// The 1-based string `U_j`.
    ///
    /// # Panics
    /// If `j` is outside `1..=N`.
    pub fn string(&self, j: usize) -> &GateString {
        assert!(
            j >= 1 && j <= self.len(),
            "gate string index {j} out of range"
        );
        &self.strings[j - 1]
    }

    /// `(j, U_j)` pairs with 1-based `j`.
    pub fn indexed(&self) -> impl Iterator<Item = (usize, &GateString)> {
        self.strings.iter().enumerate().map(|(i, s)| (i + 1, s))
    }
}

/// Renders the necklace in the encoder text format accepted by [`parse_necklace`].
impl fmt::Display for PearlNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "frame {}", self.frame_size)?;
        for s in &self.strings {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for PearlNecklace {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_necklace(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: ModelError,
    },
    #[error("missing `frame <n>` directive")]
    MissingFrame,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Parses the line-oriented encoder description.
///
/// ```text
/// frame 3
/// H 1
/// CPHASE 1 2 -1   # source target degree
/// ```
///
/// `#` starts a comment and blank lines are ignored. The `frame` directive
/// must precede the first gate line.
pub fn parse_necklace(text: &str) -> Result<PearlNecklace, ParseError> {
    let mut frame_size: Option<usize> = None;
    let mut strings = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: String| ParseError::Syntax { line, message };
        let mut fields = content.split_whitespace();
        let head = fields.next().expect("non-empty line has a first field");
        let args: Vec<&str> = fields.collect();

        if head.eq_ignore_ascii_case("frame") {
            if frame_size.is_some() {
                return Err(syntax("duplicate `frame` directive".into()));
            }
            let [n] = args[..] else {
                return Err(syntax(format!(
                    "`frame` takes exactly one argument, got {}",
                    args.len()
                )));
            };
            let n: usize = n
                .parse()
                .map_err(|_| syntax(format!("invalid frame size `{n}`")))?;
            if n == 0 {
                return Err(ParseError::Invalid {
                    line,
                    source: ModelError::ZeroFrameSize,
                });
            }
            frame_size = Some(n);
            continue;
        }

        let kind: GateKind = head.parse().map_err(syntax)?;
        let Some(n) = frame_size else {
            return Err(syntax("gate line before the `frame` directive".into()));
        };
        let qubit = |s: &str| -> Result<usize, ParseError> {
            s.parse()
                .map_err(|_| syntax(format!("invalid qubit index `{s}`")))
        };
        let gate = if kind.is_two_qubit() {
            let [a, b, l] = args[..] else {
                return Err(syntax(format!(
                    "{kind} takes <source> <target> <degree>, got {} argument(s)",
                    args.len()
                )));
            };
            let degree: Degree = l
                .parse()
                .map_err(|_| syntax(format!("invalid degree `{l}`")))?;
            GateString::two_qubit(kind, qubit(a)?, qubit(b)?, degree)
        } else {
            match args[..] {
                [b] => GateString::single_qubit(kind, qubit(b)?),
                [_, _, ..] => {
                    return Err(syntax(format!(
                        "{kind} takes only <target>; no degree allowed"
                    )))
                }
                [] => return Err(syntax(format!("{kind} requires a <target>"))),
            }
        };
        gate.check(n, strings.len() + 1)
            .map_err(|source| ParseError::Invalid { line, source })?;
        strings.push(gate);
    }

    let frame_size = frame_size.ok_or(ParseError::MissingFrame)?;
    Ok(PearlNecklace::new(frame_size, strings)?)
}

/// The index sets `I+_CNOT`, `I-_CNOT`, `I+_CPHASE`, `I-_CPHASE`, `I_H`, `I_P`.
/// All members are 1-based string indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexSets {
    pub cnot_plus: BTreeSet<usize>,
    pub cnot_minus: BTreeSet<usize>,
    pub cphase_plus: BTreeSet<usize>,
    pub cphase_minus: BTreeSet<usize>,
    pub hadamard: BTreeSet<usize>,
    pub phase: BTreeSet<usize>,
}

impl IndexSets {
    pub fn all(&self) -> [&BTreeSet<usize>; 6] {
        [
            &self.cnot_plus,
            &self.cnot_minus,
            &self.cphase_plus,
            &self.cphase_minus,
            &self.hadamard,
            &self.phase,
        ]
    }
}

/// Degree zero belongs to the `+` sets.
pub fn classify_indices(necklace: &PearlNecklace) -> IndexSets {
    let mut sets = IndexSets::default();
    for (j, s) in necklace.indexed() {
        let set = match (s.kind(), s.has_negative_degree()) {
            (GateKind::Cnot, false) => &mut sets.cnot_plus,
            (GateKind::Cnot, true) => &mut sets.cnot_minus,
            (GateKind::Cphase, false) => &mut sets.cphase_plus,
            (GateKind::Cphase, true) => &mut sets.cphase_minus,
            (GateKind::Hadamard, _) => &mut sets.hadamard,
            (GateKind::Phase, _) => &mut sets.phase,
        };
        set.insert(j);
    }
    sets
}
