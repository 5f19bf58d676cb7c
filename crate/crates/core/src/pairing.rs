//! Pairings of chords and the derived diagram they induce.
//!
//! A pairing splits the chords into singleton and two-element blocks. A
//! two-element block also fixes how the endpoints of its chords correspond;
//! the derived diagram replaces the two chords by the two chords joining
//! corresponding endpoints. Singletons are carried over unchanged.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagram::{Chord, ChordDiagram};
use crate::error::{CertificateParseError, PairingError};
use crate::parity::{parities, Parity};

/// Endpoint correspondence of a two-chord block, relative to position order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Correspondence {
    /// first with first, second with second
    Parallel,
    /// first with second, second with first
    Crossed,
}

impl Correspondence {
    pub fn as_str(self) -> &'static str {
        match self {
            Correspondence::Parallel => "parallel",
            Correspondence::Crossed => "crossed",
        }
    }

    pub fn parse(s: &str) -> Option<Correspondence> {
        match s {
            "parallel" => Some(Correspondence::Parallel),
            "crossed" => Some(Correspondence::Crossed),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Singleton(usize),
    /// Chord indices are stored in increasing order.
    Pair(usize, usize, Correspondence),
}

impl Block {
    /// A pair block; the correspondence is symmetric in the two chords so the
    /// indices are simply sorted.
    pub fn pair(a: usize, b: usize, m: Correspondence) -> Block {
        Block::Pair(a.min(b), a.max(b), m)
    }

    pub fn least(&self) -> usize {
        match *self {
            Block::Singleton(c) => c,
            Block::Pair(a, b, _) => a.min(b),
        }
    }

    pub fn chords(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Block::Singleton(c) => (c, None),
            Block::Pair(a, b, _) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }

    fn sort_key(&self) -> (usize, u8, usize, Correspondence) {
        match *self {
            Block::Singleton(c) => (c, 0, 0, Correspondence::Parallel),
            Block::Pair(a, b, m) => (a.min(b), 1, a.max(b), m),
        }
    }
}

/// Blocks compare by least chord, then singleton before pair, then partner,
/// then `Parallel` before `Crossed`.
impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A validated partition of the chords `0..n` into blocks.
///
/// Blocks are kept sorted, and pairings compare lexicographically by their
/// block sequence. That is the order in which [`enumerate_pairings`] yields
/// them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pairing {
    blocks: Vec<Block>,
    n: usize,
}

impl Pairing {
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Block>) -> Result<Pairing, PairingError> {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for block in blocks {
            let block = match block {
                Block::Pair(a, b, _) if a == b => return Err(PairingError::SelfPair { chord: a }),
                Block::Pair(a, b, m) => Block::pair(a, b, m),
                s => s,
            };
            for c in block.chords() {
                if c >= n {
                    return Err(PairingError::ChordOutOfRange { chord: c, n });
                }
                if std::mem::replace(&mut seen[c], true) {
                    return Err(PairingError::Duplicate { chord: c });
                }
            }
            out.push(block);
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(PairingError::Missing { chord: missing });
        }
        out.sort_unstable();
        Ok(Pairing { blocks: out, n })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, blocks: Vec<Block>) -> Pairing {
        debug_assert!(blocks.windows(2).all(|w| w[0] < w[1]));
        Pairing { blocks, n }
    }

    pub fn all_singletons(n: usize) -> Pairing {
        Pairing {
            blocks: (0..n).map(Block::Singleton).collect(),
            n,
        }
    }

    pub fn empty() -> Pairing {
        Pairing::all_singletons(0)
    }

    /// Number of chords partitioned.
    pub fn chord_count(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn singletons(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().filter_map(|b| match *b {
            Block::Singleton(c) => Some(c),
            Block::Pair(..) => None,
        })
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Correspondence)> + '_ {
        self.blocks.iter().filter_map(|b| match *b {
            Block::Pair(a, b, m) => Some((a, b, m)),
            Block::Singleton(_) => None,
        })
    }

    /// Renders the pairing with the diagram's labels, e.g. `{a} {b,c:parallel}`.
    pub fn describe(&self, d: &ChordDiagram) -> String {
        self.blocks
            .iter()
            .map(|b| match *b {
                Block::Singleton(c) => format!("{{{}}}", d.label(c)),
                Block::Pair(a, b, m) => format!("{{{},{}:{}}}", d.label(a), d.label(b), m.as_str()),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Validates `blocks` as a pairing of the chords of `d`.
pub fn make_pairing(
    d: &ChordDiagram,
    blocks: impl IntoIterator<Item = Block>,
) -> Result<Pairing, PairingError> {
    Pairing::new(d.len(), blocks)
}

/// The chord diagram C(P) on the same positions as its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedDiagram(ChordDiagram);

impl DerivedDiagram {
    pub fn diagram(&self) -> &ChordDiagram {
        &self.0
    }

    pub fn into_inner(self) -> ChordDiagram {
        self.0
    }
}

/// The one or two chords a block contributes to the derived diagram.
pub fn block_chords(d: &ChordDiagram, block: &Block) -> (Chord, Option<Chord>) {
    match *block {
        Block::Singleton(c) => (d.chord(c), None),
        Block::Pair(a, b, m) => {
            let (x, y) = (d.chord(a), d.chord(b));
            match m {
                Correspondence::Parallel => (
                    Chord::new(x.first, y.first),
                    Some(Chord::new(x.second, y.second)),
                ),
                Correspondence::Crossed => (
                    Chord::new(x.first, y.second),
                    Some(Chord::new(x.second, y.first)),
                ),
            }
        }
    }
}

/// Builds C(P).
///
/// # Panics
///
/// If `p` partitions a different number of chords than `d` has.
pub fn derived_diagram(d: &ChordDiagram, p: &Pairing) -> DerivedDiagram {
    assert_eq!(
        p.chord_count(),
        d.len(),
        "pairing is for {} chords, diagram has {}",
        p.chord_count(),
        d.len()
    );
    let mut chords = Vec::with_capacity(d.len());
    for block in p.blocks() {
        let (x, y) = block_chords(d, block);
        chords.push(x);
        chords.extend(y);
    }
    DerivedDiagram(ChordDiagram::from_unsorted(chords, None))
}

/// True iff no two chords of the diagram are linked.
///
/// Scans the circle with a stack: a matching is non-crossing exactly when
/// every chord closes at the most recently opened one.
pub fn is_noncrossing_diagram(d: &ChordDiagram) -> bool {
    let mut open = Vec::new();
    for p in 0..d.size() {
        let c = d.chord_at(p);
        if d.chord(c).first == p {
            open.push(c);
        } else if open.pop() != Some(c) {
            return false;
        }
    }
    true
}

/// First linked pair of chords in C(P), in chord order of C(P).
pub fn first_linked_pair(d: &ChordDiagram, p: &Pairing) -> Option<(Chord, Chord)> {
    let derived = derived_diagram(d, p);
    let chords = derived.diagram().chords();
    for (i, a) in chords.iter().enumerate() {
        for b in &chords[i + 1..] {
            if a.links(b) {
                return Some((*a, *b));
            }
        }
    }
    None
}

/// Whether the chords of C(P) are pairwise unlinked.
pub fn is_noncrossing(d: &ChordDiagram, p: &Pairing) -> bool {
    is_noncrossing_diagram(derived_diagram(d, p).diagram())
}

/// Restrictions for [`enumerate_pairings`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairingOptions {
    /// No singleton blocks.
    pub perfect_only: bool,
    /// Singletons only on even chords; pair blocks only on chords of equal parity.
    pub parity_compatible: bool,
}

/// Every pairing of `d` allowed by `opts`, each once, in increasing order.
pub fn enumerate_pairings(d: &ChordDiagram, opts: PairingOptions) -> Pairings {
    Pairings {
        parity: if opts.parity_compatible {
            parities(d)
        } else {
            Vec::new()
        },
        opts,
        used: vec![false; d.len()],
        stack: Vec::new(),
        started: false,
        done: false,
    }
}

/// Iterator returned by [`enumerate_pairings`].
#[derive(Clone, Debug)]
pub struct Pairings {
    parity: Vec<Parity>,
    opts: PairingOptions,
    used: Vec<bool>,
    stack: Vec<Block>,
    started: bool,
    done: bool,
}

impl Pairings {
    fn singleton_ok(&self, c: usize) -> bool {
        !self.opts.perfect_only && (!self.opts.parity_compatible || self.parity[c] == Parity::Even)
    }

    fn pair_ok(&self, a: usize, b: usize) -> bool {
        !self.opts.parity_compatible || self.parity[a] == self.parity[b]
    }

    // Next option for chord `c` after `after`, in block order.
    fn next_option(&self, c: usize, after: Option<Block>) -> Option<Block> {
        let from = match after {
            None if self.singleton_ok(c) => return Some(Block::Singleton(c)),
            None | Some(Block::Singleton(_)) => c + 1,
            Some(Block::Pair(_, j, Correspondence::Parallel)) => {
                return Some(Block::Pair(c, j, Correspondence::Crossed))
            }
            Some(Block::Pair(_, j, Correspondence::Crossed)) => j + 1,
        };
        (from..self.used.len())
            .find(|&j| !self.used[j] && self.pair_ok(c, j))
            .map(|j| Block::Pair(c, j, Correspondence::Parallel))
    }

    fn apply(&mut self, b: Block) {
        for c in b.chords() {
            self.used[c] = true;
        }
        self.stack.push(b);
    }

    fn unapply(&mut self, b: Block) {
        for c in b.chords() {
            self.used[c] = false;
        }
    }

    fn advance(&mut self, mut resume: bool) -> bool {
        loop {
            if resume {
                let Some(b) = self.stack.pop() else {
                    return false;
                };
                self.unapply(b);
                match self.next_option(b.least(), Some(b)) {
                    Some(next) => {
                        self.apply(next);
                        resume = false;
                    }
                    None => continue,
                }
            }
            match self.used.iter().position(|u| !u) {
                None => return true,
                Some(c) => match self.next_option(c, None) {
                    Some(b) => self.apply(b),
                    None => resume = true,
                },
            }
        }
    }
}

impl Iterator for Pairings {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.done {
            return None;
        }
        let resume = std::mem::replace(&mut self.started, true);
        if self.advance(resume) {
            Some(Pairing::from_sorted_unchecked(
                self.used.len(),
                self.stack.clone(),
            ))
        } else {
            self.done = true;
            None
        }
    }
}

/// Number of unrestricted pairings of `n` chords: involutions of an
/// `n`-set weighted by `2^(number of 2-cycles)`.
pub fn pairing_count(n: usize) -> u128 {
    let (mut prev, mut cur) = (1u128, 1u128);
    for k in 2..=n {
        let next = cur + 2 * (k as u128 - 1) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Certificate as a JSON list of blocks, using the diagram's labels.
pub fn certificate_to_json(d: &ChordDiagram, p: &Pairing) -> Value {
    Value::Array(
        p.blocks()
            .iter()
            .map(|b| match *b {
                Block::Singleton(c) => json!({ "chord": d.label(c) }),
                Block::Pair(a, b, m) => json!({
                    "chords": [d.label(a), d.label(b)],
                    "correspondence": m.as_str(),
                }),
            })
            .collect(),
    )
}

/// Reads a certificate from its JSON block list.
pub fn certificate_from_json(
    d: &ChordDiagram,
    v: &Value,
) -> Result<Pairing, CertificateParseError> {
    let items = v.as_array().ok_or(CertificateParseError::NotAList)?;
    let lookup = |label: &str| {
        d.chord_by_label(label)
            .ok_or_else(|| CertificateParseError::UnknownLabel {
                label: label.to_string(),
            })
    };
    let malformed = |index: usize, reason: &str| CertificateParseError::MalformedBlock {
        index,
        reason: reason.to_string(),
    };
    let mut blocks = Vec::with_capacity(items.len());
    for (index, item) in items.iter().enumerate() {
        let obj = item
            .as_object()
            .ok_or_else(|| malformed(index, "expected an object"))?;
        if let Some(chord) = obj.get("chord") {
            let label = chord
                .as_str()
                .ok_or_else(|| malformed(index, "`chord` must be a string"))?;
            blocks.push(Block::Singleton(lookup(label)?));
        } else if let Some(chords) = obj.get("chords") {
            let labels: Vec<&str> = chords
                .as_array()
                .and_then(|a| a.iter().map(Value::as_str).collect())
                .filter(|l: &Vec<&str>| l.len() == 2)
                .ok_or_else(|| malformed(index, "`chords` must be two strings"))?;
            let (a, b) = (lookup(labels[0])?, lookup(labels[1])?);
            let m = match obj.get("correspondence") {
                Some(Value::String(s)) => Correspondence::parse(s),
                _ => None,
            }
            .ok_or_else(|| CertificateParseError::BadCorrespondence {
                index,
                value: obj
                    .get("correspondence")
                    .map_or_else(|| "<missing>".to_string(), Value::to_string),
            })?;
            if a == b {
                return Err(PairingError::SelfPair { chord: a }.into());
            }
            blocks.push(Block::pair(a, b, m));
        } else {
            return Err(malformed(index, "expected `chord` or `chords`"));
        }
    }
    Ok(make_pairing(d, blocks)?)
}
