use serde::{Deserialize, Serialize};

use super::{IntegerLattice, LatticeError};

/// Normal form of an indefinite unimodular lattice, determined by rank,
/// signature and parity alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "parity", rename_all = "snake_case")]
pub enum StandardFormDescriptor {
    /// `n_plus <+1> ⊕ n_minus <-1>`.
    Odd { n_plus: usize, n_minus: usize },
    /// `|e8_count| (±E8) ⊕ h_count H`, with the sign of `e8_count` that of σ.
    Even { e8_count: i64, h_count: usize },
}

impl StandardFormDescriptor {
    pub fn rank(&self) -> usize {
        match *self {
            StandardFormDescriptor::Odd { n_plus, n_minus } => n_plus + n_minus,
            StandardFormDescriptor::Even { e8_count, h_count } => {
                8 * e8_count.unsigned_abs() as usize + 2 * h_count
            }
        }
    }

    pub fn sigma(&self) -> i64 {
        match *self {
            StandardFormDescriptor::Odd { n_plus, n_minus } => n_plus as i64 - n_minus as i64,
            StandardFormDescriptor::Even { e8_count, .. } => 8 * e8_count,
        }
    }

    pub fn is_even(&self) -> bool {
        matches!(self, StandardFormDescriptor::Even { .. })
    }
}

/// Cartan matrix of E8 (positive definite, even, determinant 1).
pub fn e8_gram() -> Vec<Vec<i64>> {
    // Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
    const EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in &EDGES {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

/// Block-diagonal assembly of the descriptor's summands, in the order
/// `<+1>…<-1>…` or `E8 blocks then H blocks`.
pub fn build_standard_lattice(descriptor: &StandardFormDescriptor) -> IntegerLattice {
    let n = descriptor.rank();
    let mut gram = vec![vec![0i64; n]; n];
    match *descriptor {
        StandardFormDescriptor::Odd { n_plus, n_minus } => {
            for (i, row) in gram.iter_mut().enumerate() {
                row[i] = if i < n_plus { 1 } else { -1 };
            }
            debug_assert_eq!(n, n_plus + n_minus);
        }
        StandardFormDescriptor::Even { e8_count, h_count } => {
            let sign = e8_count.signum();
            let e8 = e8_gram();
            let mut offset = 0;
            for _ in 0..e8_count.unsigned_abs() {
                for i in 0..8 {
                    for j in 0..8 {
                        gram[offset + i][offset + j] = sign * e8[i][j];
                    }
                }
                offset += 8;
            }
            for _ in 0..h_count {
                gram[offset][offset + 1] = 1;
                gram[offset + 1][offset] = 1;
                offset += 2;
            }
        }
    }
    IntegerLattice::new(gram).expect("standard blocks are symmetric")
}

/// Reads the normal form off rank, σ and parity; no basis change is computed.
pub fn classify_indefinite_unimodular(
    l: &IntegerLattice,
) -> Result<StandardFormDescriptor, LatticeError> {
    if l.is_degenerate() {
        return Err(LatticeError::ClassificationInapplicable(
            "form is degenerate".into(),
        ));
    }
    if !l.is_unimodular() {
        return Err(LatticeError::ClassificationInapplicable(format!(
            "determinant {} is not ±1",
            l.determinant()
        )));
    }
    if !l.is_indefinite() {
        return Err(LatticeError::ClassificationInapplicable(
            "form is definite".into(),
        ));
    }
    let sig = l.signature();
    if l.is_even() {
        let sigma = sig.sigma();
        Ok(StandardFormDescriptor::Even {
            e8_count: sigma / 8,
            h_count: (l.rank() - sigma.unsigned_abs() as usize) / 2,
        })
    } else {
        Ok(StandardFormDescriptor::Odd {
            n_plus: sig.positive,
            n_minus: sig.negative,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn e8_is_even_unimodular_definite() {
        let l = IntegerLattice::new(e8_gram()).unwrap();
        assert!(l.is_even() && l.is_unimodular());
        assert_eq!(l.signature().positive, 8);
        assert_eq!(*l.determinant(), BigInt::from(1));
    }

    #[test]
    fn odd_block_assembly() {
        let l = build_standard_lattice(&StandardFormDescriptor::Odd {
            n_plus: 2,
            n_minus: 1,
        });
        assert_eq!(l.gram(), &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]);
        assert_eq!(l.sigma(), 1);
        assert!(!l.is_even() && l.is_unimodular());
    }

    #[test]
    fn k3_form() {
        let d = StandardFormDescriptor::Even {
            e8_count: -2,
            h_count: 3,
        };
        let l = build_standard_lattice(&d);
        assert_eq!(l.rank(), 22);
        assert_eq!(l.sigma(), -16);
        assert!(l.is_even() && l.is_unimodular());
        assert_eq!(classify_indefinite_unimodular(&l).unwrap(), d);
    }

    #[test]
    fn single_hyperbolic_block() {
        let l = build_standard_lattice(&StandardFormDescriptor::Even {
            e8_count: 0,
            h_count: 1,
        });
        assert_eq!(l.gram(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(l.sigma(), 0);
    }

    #[test]
    fn classify_examples() {
        let l = IntegerLattice::diagonal(&[1, -1]).unwrap();
        assert_eq!(
            classify_indefinite_unimodular(&l).unwrap(),
            StandardFormDescriptor::Odd {
                n_plus: 1,
                n_minus: 1
            }
        );
        let neg_e8 = build_standard_lattice(&StandardFormDescriptor::Even {
            e8_count: -1,
            h_count: 0,
        });
        assert!(matches!(
            classify_indefinite_unimodular(&neg_e8),
            Err(LatticeError::ClassificationInapplicable(_))
        ));
        let not_unimodular = IntegerLattice::diagonal(&[2, -1]).unwrap();
        assert!(classify_indefinite_unimodular(&not_unimodular).is_err());
    }
}
