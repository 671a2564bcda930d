//! Binary symplectic tableau with signs.
//!
//! Row `i` holds the image of `X_i` under conjugation by the circuit and row
//! `q + i` the image of `Z_i`. Bits are packed 64 to a word.

use std::fmt;

/// Signed Pauli operator on `q` qubits. A set `x` and `z` bit on the same
/// qubit denotes `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: Vec<u64>,
    z: Vec<u64>,
    negative: bool,
}

fn words(qubits: usize) -> usize {
    qubits.div_ceil(64)
}

fn get(v: &[u64], i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

fn flip(v: &mut [u64], i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

impl PauliString {
    fn identity(qubits: usize) -> Self {
        PauliString {
            x: vec![0; words(qubits)],
            z: vec![0; words(qubits)],
            negative: false,
        }
    }

    pub fn x_bit(&self, qubit: usize) -> bool {
        get(&self.x, qubit)
    }

    pub fn z_bit(&self, qubit: usize) -> bool {
        get(&self.z, qubit)
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Symplectic inner product: true iff the two operators anticommute.
    pub fn anticommutes(&self, other: &PauliString) -> bool {
        let ones: u32 = self
            .x
            .iter()
            .zip(&other.z)
            .chain(self.z.iter().zip(&other.x))
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Non-identity factors as `(qubit, 'X' | 'Y' | 'Z')`.
    pub fn support(&self) -> Vec<(usize, char)> {
        let qubits = self.x.len() * 64;
        (0..qubits)
            .filter_map(|q| match (self.x_bit(q), self.z_bit(q)) {
                (false, false) => None,
                (true, false) => Some((q, 'X')),
                (true, true) => Some((q, 'Y')),
                (false, true) => Some((q, 'Z')),
            })
            .collect()
    }
}

/// `+X0 Z3` style sparse rendering; `+I` for the identity.
impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        let support = self.support();
        if support.is_empty() {
            return f.write_str("I");
        }
        for (k, (q, p)) in support.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}{q}")?;
        }
        Ok(())
    }
}

/// A single-qubit Pauli generator whose image the tableau records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    X(usize),
    Z(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(q) => write!(f, "X{q}"),
            Generator::Z(q) => write!(f, "Z{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    qubits: usize,
    rows: Vec<PauliString>,
}

impl CliffordTableau {
    pub fn identity(qubits: usize) -> Self {
        let mut rows = vec![PauliString::identity(qubits); 2 * qubits];
        for q in 0..qubits {
            flip(&mut rows[q].x, q);
            flip(&mut rows[qubits + q].z, q);
        }
        CliffordTableau { qubits, rows }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn image(&self, generator: Generator) -> &PauliString {
        match generator {
            Generator::X(q) => &self.rows[q],
            Generator::Z(q) => &self.rows[self.qubits + q],
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        let q = self.qubits;
        (0..q).map(Generator::X).chain((0..q).map(Generator::Z))
    }

    pub fn h(&mut self, a: usize) {
        for r in &mut self.rows {
            let (x, z) = (get(&r.x, a), get(&r.z, a));
            r.negative ^= x & z;
            if x != z {
                flip(&mut r.x, a);
                flip(&mut r.z, a);
            }
        }
    }

    /// Phase gate `S = diag(1, i)`.
    pub fn s(&mut self, a: usize) {
        for r in &mut self.rows {
            let (x, z) = (get(&r.x, a), get(&r.z, a));
            r.negative ^= x & z;
            if x {
                flip(&mut r.z, a);
            }
        }
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        debug_assert_ne!(control, target);
        for r in &mut self.rows {
            let (xc, zc) = (get(&r.x, control), get(&r.z, control));
            let (xt, zt) = (get(&r.x, target), get(&r.z, target));
            r.negative ^= xc & zt & !(xt ^ zc);
            if xc {
                flip(&mut r.x, target);
            }
            if zt {
                flip(&mut r.z, control);
            }
        }
    }

    /// Controlled-Z; symmetric in its arguments.
    pub fn cz(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        for r in &mut self.rows {
            let (xa, za) = (get(&r.x, a), get(&r.z, a));
            let (xb, zb) = (get(&r.x, b), get(&r.z, b));
            r.negative ^= xa & xb & (za ^ zb);
            if xb {
                flip(&mut r.z, a);
            }
            if xa {
                flip(&mut r.z, b);
            }
        }
    }

    /// True iff the rows satisfy the canonical commutation relations:
    /// the images of `X_i` and `Z_i` anticommute and every other pair commutes.
    pub fn is_symplectic(&self) -> bool {
        let q = self.qubits;
        for i in 0..2 * q {
            for j in i + 1..2 * q {
                let expected = j == i + q;
                if self.rows[i].anticommutes(&self.rows[j]) != expected {
                    return false;
                }
            }
        }
        true
    }

    /// First generator (X images before Z images) whose image differs.
    pub fn first_difference(&self, other: &CliffordTableau) -> Option<Generator> {
        assert_eq!(self.qubits, other.qubits, "tableaus of different widths");
        self.generators().find(|&g| self.image(g) != other.image(g))
    }
}
