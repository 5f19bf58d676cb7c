//! Interlacement of chords and Gaussian parity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::ChordDiagram;
use crate::error::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(count: usize) -> Parity {
        if count % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Whether chords `i` and `j` interleave on the circle.
pub fn linked(d: &ChordDiagram, i: usize, j: usize) -> Result<bool, DiagramError> {
    let a = d.try_chord(i)?;
    let b = d.try_chord(j)?;
    if i == j {
        return Err(DiagramError::SameChord { chord: i });
    }
    Ok(a.links(&b))
}

/// Symmetric boolean matrix of the linking relation, zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacementMatrix {
    n: usize,
    entries: Vec<bool>,
}

impl InterlacementMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.n + j]
    }

    /// Number of chords linked with chord `i`.
    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().filter(|&&b| b).count()
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

pub fn interlacement(d: &ChordDiagram) -> InterlacementMatrix {
    let n = d.len();
    let mut entries = vec![false; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            if d.chord(i).links(&d.chord(j)) {
                entries[i * n + j] = true;
                entries[j * n + i] = true;
            }
        }
    }
    InterlacementMatrix { n, entries }
}

/// Parity of the number of chords linked with chord `i`.
pub fn gaussian_parity(d: &ChordDiagram, i: usize) -> Result<Parity, DiagramError> {
    let c = d.try_chord(i)?;
    let count = d
        .chords()
        .iter()
        .enumerate()
        .filter(|&(j, other)| j != i && c.links(other))
        .count();
    Ok(Parity::from_count(count))
}

/// Parities of all chords, in chord order.
pub fn parities(d: &ChordDiagram) -> Vec<Parity> {
    let m = interlacement(d);
    (0..d.len())
        .map(|i| Parity::from_count(m.degree(i)))
        .collect()
}

/// Every chord is odd. The trivial diagram is vacuously odd.
pub fn is_odd_diagram(d: &ChordDiagram) -> bool {
    parities(d).into_iter().all(Parity::is_odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate_diagrams, parse_gauss_code};

    fn code(s: &str) -> ChordDiagram {
        parse_gauss_code(s).unwrap()
    }

    #[test]
    fn linked_examples() {
        assert!(linked(&code("a b a b"), 0, 1).unwrap());
        assert!(!linked(&code("a b b a"), 0, 1).unwrap());
        assert!(!linked(&code("a a b b"), 0, 1).unwrap());
    }

    #[test]
    fn linked_errors() {
        let d = code("a b a b");
        assert_eq!(
            linked(&d, 0, 2),
            Err(DiagramError::ChordOutOfRange { chord: 2, n: 2 })
        );
        assert_eq!(linked(&d, 1, 1), Err(DiagramError::SameChord { chord: 1 }));
        assert!(gaussian_parity(&d, 5).is_err());
    }

    #[test]
    fn interlacement_examples() {
        assert!(interlacement(&ChordDiagram::trivial()).is_empty());
        let m = interlacement(&code("a b a b"));
        assert!(m.get(0, 1) && m.get(1, 0) && !m.get(0, 0));
        let m = interlacement(&code("a b c a b c"));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), i != j);
            }
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(gaussian_parity(&code("a a"), 0).unwrap(), Parity::Even);
        assert_eq!(parities(&code("a b a b")), [Parity::Odd; 2]);
        assert_eq!(parities(&code("a b c a b c")), [Parity::Even; 3]);
    }

    #[test]
    fn oddness_examples() {
        assert!(is_odd_diagram(&ChordDiagram::trivial()));
        assert!(is_odd_diagram(&code("a b a b")));
        assert!(!is_odd_diagram(&code("a b c a b c")));
        assert!(is_odd_diagram(&code("a b c d a b c d")));
    }

    #[test]
    fn parity_matches_arc_count_exhaustively() {
        for n in 0..=5 {
            for d in enumerate_diagrams(n) {
                for (i, c) in d.chords().iter().enumerate() {
                    let between = c.second - c.first - 1;
                    assert_eq!(gaussian_parity(&d, i).unwrap(), Parity::from_count(between));
                }
            }
        }
    }

    #[test]
    fn odd_chords_come_in_even_numbers() {
        for n in 0..=5 {
            for d in enumerate_diagrams(n) {
                let odd = parities(&d).into_iter().filter(|p| p.is_odd()).count();
                assert_eq!(odd % 2, 0);
                if is_odd_diagram(&d) {
                    assert_eq!(n % 2, 0);
                }
            }
        }
    }
}
