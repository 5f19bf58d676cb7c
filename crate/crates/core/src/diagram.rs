//! Chord diagrams and their Gauss-code text form.
//!
//! A diagram with `n` chords lives on `2n` points of an oriented circle,
//! numbered `0..2n`. Chords are kept sorted by their first endpoint, so chord
//! indices are a function of the underlying matching alone. Labels are
//! carried for display and never take part in equality.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::DiagramError;

/// A chord joining two circle positions, `first < second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord {
    pub first: usize,
    pub second: usize,
}

impl Chord {
    /// Builds a chord from two distinct positions in either order.
    pub fn new(a: usize, b: usize) -> Chord {
        debug_assert_ne!(a, b);
        if a < b {
            Chord {
                first: a,
                second: b,
            }
        } else {
            Chord {
                first: b,
                second: a,
            }
        }
    }

    /// True iff exactly one endpoint of `other` lies strictly inside this chord.
    #[inline]
    pub fn links(&self, other: &Chord) -> bool {
        let inside = |p: usize| self.first < p && p < self.second;
        inside(other.first) != inside(other.second)
    }

    #[inline]
    pub fn contains(&self, position: usize) -> bool {
        self.first == position || self.second == position
    }

    /// The endpoint opposite `position`.
    #[inline]
    pub fn other_end(&self, position: usize) -> usize {
        if self.first == position {
            self.second
        } else {
            self.first
        }
    }
}

/// A perfect matching on `2n` circle positions.
#[derive(Clone, Debug)]
pub struct ChordDiagram {
    chords: Vec<Chord>,
    // position -> chord index
    owner: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for ChordDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.chords == other.chords
    }
}

impl Eq for ChordDiagram {}

impl Hash for ChordDiagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.chords.hash(state);
    }
}

impl Default for ChordDiagram {
    fn default() -> Self {
        ChordDiagram::trivial()
    }
}

impl ChordDiagram {
    /// The diagram with no chords: the trivial knot.
    pub fn trivial() -> ChordDiagram {
        ChordDiagram {
            chords: Vec::new(),
            owner: Vec::new(),
            labels: None,
        }
    }

    /// Builds a diagram from endpoint pairs given in any order.
    pub fn from_chords<I>(pairs: I) -> Result<ChordDiagram, DiagramError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let (chords, _) = Self::normalize(pairs.into_iter().collect())?;
        Ok(Self::from_sorted(chords, None))
    }

    /// Builds a labelled diagram; `labels[i]` names the i-th input pair.
    pub fn with_labels<I, S>(pairs: I, labels: Vec<S>) -> Result<ChordDiagram, DiagramError>
    where
        I: IntoIterator<Item = (usize, usize)>,
        S: Into<String>,
    {
        let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != pairs.len() {
            return Err(DiagramError::LabelCountMismatch {
                expected: pairs.len(),
                found: labels.len(),
            });
        }
        let mut seen = HashMap::new();
        for label in &labels {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(DiagramError::InvalidLabel {
                    label: label.clone(),
                });
            }
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(DiagramError::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        let (chords, order) = Self::normalize(pairs)?;
        let labels = order.into_iter().map(|i| labels[i].clone()).collect();
        Ok(Self::from_sorted(chords, Some(labels)))
    }

    // Validates a matching and returns the chords sorted by first endpoint,
    // together with the input index of each sorted chord.
    fn normalize(pairs: Vec<(usize, usize)>) -> Result<(Vec<Chord>, Vec<usize>), DiagramError> {
        let size = 2 * pairs.len();
        let mut seen = vec![false; size];
        for &(a, b) in &pairs {
            if a == b {
                return Err(DiagramError::DegenerateChord { position: a });
            }
            for p in [a, b] {
                if p >= size {
                    return Err(DiagramError::PositionOutOfRange { position: p, size });
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(DiagramError::DuplicatePosition { position: p });
                }
            }
        }
        let mut indexed: Vec<(Chord, usize)> = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (a, b))| (Chord::new(a, b), i))
            .collect();
        indexed.sort_unstable();
        Ok(indexed.into_iter().unzip())
    }

    /// `chords` must already be a valid matching sorted by first endpoint.
    pub(crate) fn from_sorted(chords: Vec<Chord>, labels: Option<Vec<String>>) -> ChordDiagram {
        let mut owner = vec![0; 2 * chords.len()];
        for (i, c) in chords.iter().enumerate() {
            owner[c.first] = i;
            owner[c.second] = i;
        }
        ChordDiagram {
            chords,
            owner,
            labels,
        }
    }

    /// Builds a diagram from an unsorted but valid chord list, carrying labels along.
    pub(crate) fn from_unsorted(chords: Vec<Chord>, labels: Option<Vec<String>>) -> ChordDiagram {
        let mut order: Vec<usize> = (0..chords.len()).collect();
        order.sort_unstable_by_key(|&i| chords[i]);
        let sorted = order.iter().map(|&i| chords[i]).collect();
        let labels = labels.map(|l| order.iter().map(|&i| l[i].clone()).collect());
        Self::from_sorted(sorted, labels)
    }

    /// Number of chords.
    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    /// Number of circle positions, `2n`.
    pub fn size(&self) -> usize {
        self.owner.len()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn chord(&self, i: usize) -> Chord {
        self.chords[i]
    }

    pub fn try_chord(&self, i: usize) -> Result<Chord, DiagramError> {
        self.chords
            .get(i)
            .copied()
            .ok_or(DiagramError::ChordOutOfRange {
                chord: i,
                n: self.len(),
            })
    }

    /// Index of the chord with an endpoint at `position`.
    pub fn chord_at(&self, position: usize) -> usize {
        self.owner[position]
    }

    /// Display label of chord `i`; `c{i}` unless custom labels were supplied.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => format!("c{i}"),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn has_custom_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn chord_by_label(&self, label: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.label(i) == label)
    }

    /// The same matching with default labels.
    pub fn without_labels(&self) -> ChordDiagram {
        ChordDiagram {
            labels: None,
            ..self.clone()
        }
    }

    /// Label tokens in circle order.
    pub fn tokens(&self) -> Vec<String> {
        self.owner.iter().map(|&c| self.label(c)).collect()
    }

    /// Gauss-code text: whitespace-separated labels in circle order.
    pub fn serialize(&self) -> String {
        self.tokens().join(" ")
    }

    /// Multi-line ASCII picture: one row per chord spanning its two endpoints.
    pub fn render_ascii(&self) -> String {
        let tokens = self.tokens();
        let width = tokens.iter().map(|t| t.chars().count()).max().unwrap_or(1) + 1;
        let margin = width;
        let mut out = String::new();
        out.push_str(&" ".repeat(margin));
        for t in &tokens {
            out.push_str(&format!("{t:>width$}"));
        }
        out.push('\n');
        for (i, c) in self.chords.iter().enumerate() {
            let mut row = format!("{:<margin$}", self.label(i));
            for p in 0..self.size() {
                let cell = if p == c.first {
                    format!("{}+", " ".repeat(width - 1))
                } else if p == c.second {
                    format!("{}+", "-".repeat(width - 1))
                } else if c.first < p && p < c.second {
                    "-".repeat(width)
                } else {
                    " ".repeat(width)
                };
                row.push_str(&cell);
            }
            out.push_str(row.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for ChordDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss_code(s)
    }
}

/// Parses a whitespace-separated Gauss code. Chord `i` joins the two
/// occurrences of the i-th distinct label; blank text is the trivial knot.
pub fn parse_gauss_code(text: &str) -> Result<ChordDiagram, DiagramError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut order: Vec<&str> = Vec::new();
    let mut occurrences: HashMap<&str, Vec<usize>> = HashMap::new();
    for (p, &t) in tokens.iter().enumerate() {
        occurrences
            .entry(t)
            .or_insert_with(|| {
                order.push(t);
                Vec::new()
            })
            .push(p);
    }
    if tokens.len() % 2 == 1 {
        let label = order
            .iter()
            .find(|l| occurrences[*l].len() % 2 == 1)
            .expect("odd token count implies a label with odd multiplicity");
        return Err(DiagramError::OddTokenCount {
            label: label.to_string(),
            tokens: tokens.len(),
        });
    }
    if let Some(label) = order.iter().find(|l| occurrences[*l].len() != 2) {
        return Err(DiagramError::LabelCount {
            label: label.to_string(),
            count: occurrences[label].len(),
        });
    }
    // Labels in first-appearance order are already sorted by first endpoint.
    let chords = order
        .iter()
        .map(|l| Chord::new(occurrences[l][0], occurrences[l][1]))
        .collect();
    let labels = order.iter().map(|l| l.to_string()).collect();
    Ok(ChordDiagram::from_sorted(chords, Some(labels)))
}

/// Default-labelled serialization.
pub fn serialize(d: &ChordDiagram) -> String {
    d.without_labels().serialize()
}

/// Lexicographically least serialization over all rotations and reflections
/// of the circle, labels renamed `c0, c1, ...` in order of first appearance.
pub fn canonical_form(d: &ChordDiagram) -> String {
    let size = d.size();
    let mut best: Option<String> = None;
    let mut rename = vec![usize::MAX; d.len()];
    for reflect in [false, true] {
        for start in 0..size.max(1) {
            if size == 0 {
                break;
            }
            rename.fill(usize::MAX);
            let mut next = 0;
            let mut tokens = Vec::with_capacity(size);
            for t in 0..size {
                let p = if reflect {
                    (start + size - t) % size
                } else {
                    (start + t) % size
                };
                let c = d.chord_at(p);
                if rename[c] == usize::MAX {
                    rename[c] = next;
                    next += 1;
                }
                tokens.push(format!("c{}", rename[c]));
            }
            let s = tokens.join(" ");
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.unwrap_or_default()
}

/// Every perfect matching on `2n` labelled positions, each exactly once.
pub fn enumerate_diagrams(n: usize) -> Diagrams {
    Diagrams {
        partner: vec![UNMATCHED; 2 * n],
        stack: Vec::new(),
        started: false,
        done: false,
    }
}

const UNMATCHED: usize = usize::MAX;

/// Iterator returned by [`enumerate_diagrams`].
#[derive(Debug, Clone)]
pub struct Diagrams {
    partner: Vec<usize>,
    // (position, partner) choices in force, in order of decision
    stack: Vec<(usize, usize)>,
    started: bool,
    done: bool,
}

impl Diagrams {
    fn next_free(&self, from: usize) -> Option<usize> {
        (from..self.partner.len()).find(|&p| self.partner[p] == UNMATCHED)
    }

    fn set(&mut self, a: usize, b: usize) {
        self.partner[a] = b;
        self.partner[b] = a;
        self.stack.push((a, b));
    }

    // Completes the current partial matching with the least choices.
    fn descend(&mut self) {
        while let Some(a) = self.next_free(0) {
            let b = self
                .next_free(a + 1)
                .expect("even number of free positions");
            self.set(a, b);
        }
    }

    // Moves to the next choice at the deepest level that has one.
    fn backtrack(&mut self) -> bool {
        while let Some((a, b)) = self.stack.pop() {
            self.partner[a] = UNMATCHED;
            self.partner[b] = UNMATCHED;
            if let Some(b2) = self.next_free(b + 1) {
                self.set(a, b2);
                return true;
            }
        }
        false
    }

    fn current(&self) -> ChordDiagram {
        let chords = (0..self.partner.len())
            .filter(|&p| p < self.partner[p])
            .map(|p| Chord {
                first: p,
                second: self.partner[p],
            })
            .collect();
        ChordDiagram::from_sorted(chords, None)
    }
}

impl Iterator for Diagrams {
    type Item = ChordDiagram;

    fn next(&mut self) -> Option<ChordDiagram> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.backtrack() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        self.descend();
        Some(self.current())
    }
}

/// The code `c0 .. c{n-1} c0 .. c{n-1}`: every pair of chords linked.
pub fn star_diagram(n: usize) -> ChordDiagram {
    let chords = (0..n)
        .map(|i| Chord {
            first: i,
            second: i + n,
        })
        .collect();
    ChordDiagram::from_sorted(chords, None)
}

/// Uniformly random perfect matching on `2n` points, fixed by `seed`.
pub fn random_diagram(n: usize, seed: u64) -> ChordDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_diagram_with(n, &mut rng)
}

pub fn random_diagram_with<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> ChordDiagram {
    let mut positions: Vec<usize> = (0..2 * n).collect();
    positions.shuffle(rng);
    let chords = positions
        .chunks_exact(2)
        .map(|w| Chord::new(w[0], w[1]))
        .collect();
    ChordDiagram::from_unsorted(chords, None)
}
