//! Reidemeister moves, mirror image and connected sum as Gauss-code rewrites.
//!
//! Conventions for free knots:
//!
//! * first move: a chord whose endpoints are cyclically adjacent;
//! * second move: two chords whose four endpoints form two cyclically
//!   adjacent pairs, each pair holding one endpoint of each chord. The pattern
//!   is `x y .. y x` (nested) or `x y .. x y` (interleaved);
//! * third move: three disjoint adjacent pairs holding the six endpoints of
//!   three chords, each chord split across two pairs. The move transposes
//!   the two positions inside every pair.
//!
//! A gap `g` of a diagram on `2n` points is the slot in front of position
//! `g`; gaps run over `0..=2n`, where `0` and `2n` are the two sides of the
//! basepoint.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{parse_gauss_code, Chord, ChordDiagram};
use crate::error::MoveError;
use crate::pairing::{Block, Correspondence, Pairing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum R2Variant {
    Nested,
    Interleaved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1_insert")]
    R1Insert,
    #[serde(rename = "R1_remove")]
    R1Remove,
    #[serde(rename = "R2_insert")]
    R2Insert,
    #[serde(rename = "R2_remove")]
    R2Remove,
    #[serde(rename = "R3")]
    R3,
}

/// A located move. Removal sites name their chords by first endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveSite {
    R1Insert {
        gap: usize,
    },
    R1Remove {
        position: usize,
    },
    R2Insert {
        gaps: (usize, usize),
        variant: R2Variant,
    },
    R2Remove {
        positions: (usize, usize),
    },
    R3 {
        starts: [usize; 3],
    },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Insert { .. } => MoveKind::R1Insert,
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R2Insert { .. } => MoveKind::R2Insert,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn to_record(&self) -> MoveRecord {
        let (params, variant) = match *self {
            MoveSite::R1Insert { gap } => (vec![gap], None),
            MoveSite::R1Remove { position } => (vec![position], None),
            MoveSite::R2Insert { gaps, variant } => (vec![gaps.0, gaps.1], Some(variant)),
            MoveSite::R2Remove { positions } => (vec![positions.0, positions.1], None),
            MoveSite::R3 { starts } => (starts.to_vec(), None),
        };
        MoveRecord {
            kind: self.kind(),
            params,
            variant,
        }
    }

    pub fn from_record(r: &MoveRecord) -> Result<MoveSite, MoveError> {
        let want = match r.kind {
            MoveKind::R1Insert | MoveKind::R1Remove => 1,
            MoveKind::R2Insert | MoveKind::R2Remove => 2,
            MoveKind::R3 => 3,
        };
        if r.params.len() != want {
            return Err(MoveError::Script(format!(
                "{:?} takes {want} params, got {}",
                r.kind,
                r.params.len()
            )));
        }
        let p = &r.params;
        Ok(match r.kind {
            MoveKind::R1Insert => MoveSite::R1Insert { gap: p[0] },
            MoveKind::R1Remove => MoveSite::R1Remove { position: p[0] },
            MoveKind::R2Insert => MoveSite::R2Insert {
                gaps: (p[0], p[1]),
                variant: r
                    .variant
                    .ok_or_else(|| MoveError::Script("R2_insert needs a variant".into()))?,
            },
            MoveKind::R2Remove => MoveSite::R2Remove {
                positions: (p[0], p[1]),
            },
            MoveKind::R3 => MoveSite::R3 {
                starts: [p[0], p[1], p[2]],
            },
        })
    }
}

/// Serialized form of one move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub params: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<R2Variant>,
}

/// A replayable sequence of moves from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveScript {
    pub seed: Option<u64>,
    pub start: String,
    pub end: String,
    pub moves: Vec<MoveRecord>,
}

impl MoveScript {
    /// Applies the moves to `start` and checks the result against `end`.
    pub fn replay(&self) -> Result<ChordDiagram, MoveError> {
        let mut d = parse_gauss_code(&self.start).map_err(|e| MoveError::Script(e.to_string()))?;
        for r in &self.moves {
            d = apply_move(&d, &MoveSite::from_record(r)?)?;
        }
        let expected = parse_gauss_code(&self.end).map_err(|e| MoveError::Script(e.to_string()))?;
        if d != expected {
            return Err(MoveError::ReplayMismatch {
                expected: self.end.clone(),
                found: d.serialize(),
            });
        }
        Ok(d)
    }
}

// Token-level view used by the splicing rewrites.
fn chords_from_owner(owner: &[usize], n: usize) -> Vec<Chord> {
    let mut first = vec![usize::MAX; n];
    let mut chords = vec![
        Chord {
            first: 0,
            second: 0
        };
        n
    ];
    for (p, &c) in owner.iter().enumerate() {
        if first[c] == usize::MAX {
            first[c] = p;
        } else {
            chords[c] = Chord {
                first: first[c],
                second: p,
            };
        }
    }
    chords
}

fn owners(d: &ChordDiagram) -> Vec<usize> {
    (0..d.size()).map(|p| d.chord_at(p)).collect()
}

fn labels_or_none(d: &ChordDiagram) -> Option<Vec<String>> {
    d.has_custom_labels().then(|| d.labels())
}

fn check_gap(d: &ChordDiagram, gap: usize) -> Result<(), MoveError> {
    if gap > d.size() {
        Err(MoveError::InvalidGap {
            gap,
            size: d.size(),
        })
    } else {
        Ok(())
    }
}

fn fresh_label(taken: &[String], base: &str) -> String {
    let mut l = base.to_string();
    while taken.contains(&l) {
        l.push('\'');
    }
    l
}

fn new_labels(d: &ChordDiagram, count: usize) -> Option<Vec<String>> {
    let mut labels = labels_or_none(d)?;
    for k in 0..count {
        let l = fresh_label(&labels, &format!("r{k}"));
        labels.push(l);
    }
    Some(labels)
}

/// Reflects the circle: position `p` goes to `2n - 1 - p`.
pub fn mirror(d: &ChordDiagram) -> ChordDiagram {
    let top = d.size().saturating_sub(1);
    let chords = d
        .chords()
        .iter()
        .map(|c| Chord::new(top - c.first, top - c.second))
        .collect();
    ChordDiagram::from_unsorted(chords, labels_or_none(d))
}

/// Rotates the basepoint forward: the token at position `shift` becomes position 0.
pub fn rotate(d: &ChordDiagram, shift: usize) -> ChordDiagram {
    let size = d.size();
    if size == 0 {
        return d.clone();
    }
    let s = shift % size;
    let chords = d
        .chords()
        .iter()
        .map(|c| Chord::new((c.first + size - s) % size, (c.second + size - s) % size))
        .collect();
    ChordDiagram::from_unsorted(chords, labels_or_none(d))
}

/// Splices `d2`, read from its gap `cut2`, into `d1` at gap `cut1`.
pub fn connected_sum(
    d1: &ChordDiagram,
    cut1: usize,
    d2: &ChordDiagram,
    cut2: usize,
) -> Result<ChordDiagram, MoveError> {
    check_gap(d1, cut1)?;
    check_gap(d2, cut2)?;
    let n1 = d1.len();
    let r2 = rotate(d2, cut2);
    let o1 = owners(d1);
    let o2 = owners(&r2);
    let owner: Vec<usize> = o1[..cut1]
        .iter()
        .copied()
        .chain(o2.iter().map(|&c| c + n1))
        .chain(o1[cut1..].iter().copied())
        .collect();
    let chords = chords_from_owner(&owner, n1 + d2.len());
    let labels = if d1.has_custom_labels() || d2.has_custom_labels() {
        let mut labels = d1.labels();
        for l in r2.labels() {
            let l = fresh_label(&labels, &l);
            labels.push(l);
        }
        Some(labels)
    } else {
        None
    };
    Ok(ChordDiagram::from_unsorted(chords, labels))
}

/// Inserts a chord with adjacent endpoints at positions `gap, gap + 1`.
pub fn r1_insert(d: &ChordDiagram, gap: usize) -> Result<ChordDiagram, MoveError> {
    check_gap(d, gap)?;
    let n = d.len();
    let mut owner = owners(d);
    owner.splice(gap..gap, [n, n]);
    Ok(ChordDiagram::from_unsorted(
        chords_from_owner(&owner, n + 1),
        new_labels(d, 1),
    ))
}

fn cyclically_adjacent(size: usize, a: usize, b: usize) -> bool {
    size > 0 && ((a + 1) % size == b || (b + 1) % size == a)
}

fn without_chords(d: &ChordDiagram, remove: &[usize]) -> ChordDiagram {
    let keep: Vec<usize> = (0..d.len()).filter(|c| !remove.contains(c)).collect();
    let mut rename = vec![usize::MAX; d.len()];
    for (k, &c) in keep.iter().enumerate() {
        rename[c] = k;
    }
    let owner: Vec<usize> = owners(d)
        .into_iter()
        .filter(|c| !remove.contains(c))
        .map(|c| rename[c])
        .collect();
    let labels = labels_or_none(d).map(|l| keep.iter().map(|&c| l[c].clone()).collect());
    ChordDiagram::from_unsorted(chords_from_owner(&owner, keep.len()), labels)
}

pub fn is_r1_removable(d: &ChordDiagram, c: usize) -> bool {
    c < d.len() && {
        let ch = d.chord(c);
        cyclically_adjacent(d.size(), ch.first, ch.second)
    }
}

/// Deletes chord `c`, which must have cyclically adjacent endpoints.
pub fn r1_remove(d: &ChordDiagram, c: usize) -> Result<ChordDiagram, MoveError> {
    if c >= d.len() {
        return Err(MoveError::ChordOutOfRange {
            chord: c,
            n: d.len(),
        });
    }
    if !is_r1_removable(d, c) {
        return Err(MoveError::NotR1Removable { chord: c });
    }
    Ok(without_chords(d, &[c]))
}

/// Inserts two chords, one endpoint pair at each gap. With equal gaps the
/// pairs are consecutive, giving `x y y x` or `x y x y`.
pub fn r2_insert(
    d: &ChordDiagram,
    gap1: usize,
    gap2: usize,
    variant: R2Variant,
) -> Result<ChordDiagram, MoveError> {
    check_gap(d, gap1)?;
    check_gap(d, gap2)?;
    let (lo, hi) = (gap1.min(gap2), gap1.max(gap2));
    let (x, y) = (d.len(), d.len() + 1);
    let mut owner = owners(d);
    let tail = match variant {
        R2Variant::Nested => [y, x],
        R2Variant::Interleaved => [x, y],
    };
    owner.splice(hi..hi, tail);
    owner.splice(lo..lo, [x, y]);
    Ok(ChordDiagram::from_unsorted(
        chords_from_owner(&owner, d.len() + 2),
        new_labels(d, 2),
    ))
}

/// The pattern formed by chords `a` and `b` if they are a second-move pair.
pub fn r2_pattern(d: &ChordDiagram, a: usize, b: usize) -> Option<R2Variant> {
    if a == b || a >= d.len() || b >= d.len() {
        return None;
    }
    let size = d.size();
    let (x, y) = (d.chord(a), d.chord(b));
    let split = |p: usize, q: usize, r: usize, s: usize| {
        cyclically_adjacent(size, p, q) && cyclically_adjacent(size, r, s)
    };
    let ok =
        split(x.first, y.first, x.second, y.second) || split(x.first, y.second, x.second, y.first);
    ok.then(|| {
        if x.links(&y) {
            R2Variant::Interleaved
        } else {
            R2Variant::Nested
        }
    })
}

/// Deletes a second-move pair of chords.
pub fn r2_remove(d: &ChordDiagram, a: usize, b: usize) -> Result<ChordDiagram, MoveError> {
    for c in [a, b] {
        if c >= d.len() {
            return Err(MoveError::ChordOutOfRange {
                chord: c,
                n: d.len(),
            });
        }
    }
    if r2_pattern(d, a, b).is_none() {
        return Err(MoveError::NotR2Removable { a, b });
    }
    Ok(without_chords(d, &[a, b]))
}

/// Checks a third-move site given by the first positions of three adjacent pairs.
pub fn is_r3_site(d: &ChordDiagram, starts: [usize; 3]) -> bool {
    let size = d.size();
    if size < 6 || starts.iter().any(|&s| s >= size) {
        return false;
    }
    let mut cells = Vec::with_capacity(6);
    for &s in &starts {
        cells.push(s);
        cells.push((s + 1) % size);
    }
    let mut sorted = cells.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != 6 {
        return false;
    }
    let mut chords: Vec<usize> = cells.iter().map(|&p| d.chord_at(p)).collect();
    // each pair must join two different chords
    if chords.chunks(2).any(|w| w[0] == w[1]) {
        return false;
    }
    chords.sort_unstable();
    chords.dedup();
    // six endpoints of three chords, none with both ends in one pair
    chords.len() == 3
}

/// Transposes the two positions of each adjacent pair in a third-move site.
pub fn r3(d: &ChordDiagram, starts: [usize; 3]) -> Result<ChordDiagram, MoveError> {
    if !is_r3_site(d, starts) {
        return Err(MoveError::NotR3Site { starts });
    }
    let size = d.size();
    let mut swap: Vec<usize> = (0..size).collect();
    for &s in &starts {
        let t = (s + 1) % size;
        swap[s] = t;
        swap[t] = s;
    }
    let chords = d
        .chords()
        .iter()
        .map(|c| Chord::new(swap[c.first], swap[c.second]))
        .collect();
    Ok(ChordDiagram::from_unsorted(chords, labels_or_none(d)))
}

fn chord_from_position(d: &ChordDiagram, position: usize) -> Result<usize, MoveError> {
    if position >= d.size() {
        return Err(MoveError::PositionOutOfRange {
            position,
            size: d.size(),
        });
    }
    Ok(d.chord_at(position))
}

pub fn apply_move(d: &ChordDiagram, site: &MoveSite) -> Result<ChordDiagram, MoveError> {
    match *site {
        MoveSite::R1Insert { gap } => r1_insert(d, gap),
        MoveSite::R1Remove { position } => r1_remove(d, chord_from_position(d, position)?),
        MoveSite::R2Insert { gaps, variant } => r2_insert(d, gaps.0, gaps.1, variant),
        MoveSite::R2Remove { positions } => r2_remove(
            d,
            chord_from_position(d, positions.0)?,
            chord_from_position(d, positions.1)?,
        ),
        MoveSite::R3 { starts } => r3(d, starts),
    }
}

/// All removal and third-move sites, in a fixed order: first-move removals,
/// second-move removals, then third-move triangles.
pub fn find_move_sites(d: &ChordDiagram) -> Vec<MoveSite> {
    let mut sites = Vec::new();
    let n = d.len();
    for c in 0..n {
        if is_r1_removable(d, c) {
            sites.push(MoveSite::R1Remove {
                position: d.chord(c).first,
            });
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if r2_pattern(d, a, b).is_some() {
                sites.push(MoveSite::R2Remove {
                    positions: (d.chord(a).first, d.chord(b).first),
                });
            }
        }
    }
    sites.extend(
        r3_sites(d)
            .into_iter()
            .map(|starts| MoveSite::R3 { starts }),
    );
    sites
}

/// Every third-move site, as sorted triples of pair starts.
pub fn r3_sites(d: &ChordDiagram) -> Vec<[usize; 3]> {
    let size = d.size();
    let mut out = Vec::new();
    if size < 6 {
        return out;
    }
    // starts whose pair joins two different chords
    let mixed: Vec<usize> = (0..size)
        .filter(|&s| d.chord_at(s) != d.chord_at((s + 1) % size))
        .collect();
    for (i, &p) in mixed.iter().enumerate() {
        for (j, &q) in mixed.iter().enumerate().skip(i + 1) {
            for &r in &mixed[j + 1..] {
                if is_r3_site(d, [p, q, r]) {
                    out.push([p, q, r]);
                }
            }
        }
    }
    out
}

/// Applies `steps` random moves. Each step picks uniformly among the
/// non-empty kinds {insertion, removal, third move}; an insertion is a first
/// or second move with equal chance at uniform gaps and variant.
pub fn random_walk(d: &ChordDiagram, steps: usize, seed: u64) -> (ChordDiagram, MoveScript) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut moves = Vec::with_capacity(steps);
    for _ in 0..steps {
        let sites = find_move_sites(&cur);
        let (removals, triangles): (Vec<MoveSite>, Vec<MoveSite>) =
            sites.into_iter().partition(|s| s.kind() != MoveKind::R3);
        let mut kinds = vec![0u8];
        if !removals.is_empty() {
            kinds.push(1);
        }
        if !triangles.is_empty() {
            kinds.push(2);
        }
        let site = match *kinds
            .choose(&mut rng)
            .expect("insertion is always available")
        {
            0 => {
                let gaps = cur.size() + 1;
                if rng.gen_bool(0.5) {
                    MoveSite::R1Insert {
                        gap: rng.gen_range(0..gaps),
                    }
                } else {
                    let g1 = rng.gen_range(0..gaps);
                    let g2 = rng.gen_range(0..gaps);
                    let variant = if rng.gen_bool(0.5) {
                        R2Variant::Nested
                    } else {
                        R2Variant::Interleaved
                    };
                    MoveSite::R2Insert {
                        gaps: (g1.min(g2), g1.max(g2)),
                        variant,
                    }
                }
            }
            1 => *removals.choose(&mut rng).unwrap(),
            _ => *triangles.choose(&mut rng).unwrap(),
        };
        cur = apply_move(&cur, &site).expect("sampled sites are applicable");
        moves.push(site.to_record());
    }
    let script = MoveScript {
        seed: Some(seed),
        start: d.serialize(),
        end: cur.serialize(),
        moves,
    };
    (cur, script)
}

/// Where an original position lands after `k` tokens are inserted at `gap`.
fn shifted(position: usize, gap: usize, k: usize) -> usize {
    if position >= gap {
        position + k
    } else {
        position
    }
}

// Carries the blocks of `p` over to `target`, whose chords contain the
// images of the source chords under `move_position`.
fn transport(
    source: &ChordDiagram,
    target: &ChordDiagram,
    p: &Pairing,
    move_position: impl Fn(usize) -> usize,
) -> Vec<Block> {
    let image = |c: usize| target.chord_at(move_position(source.chord(c).first));
    let mut blocks = Vec::with_capacity(p.blocks().len() + 1);
    for b in p.blocks() {
        blocks.push(match *b {
            Block::Singleton(c) => Block::Singleton(image(c)),
            Block::Pair(a, b, m) => {
                // Position order inside each chord is preserved by insertions.
                Block::pair(image(a), image(b), m)
            }
        });
    }
    blocks
}

/// First-move insertion together with the certificate extended by the new
/// chord as a singleton.
pub fn r1_insert_with_certificate(
    d: &ChordDiagram,
    gap: usize,
    p: &Pairing,
) -> Result<(ChordDiagram, Pairing), MoveError> {
    let out = r1_insert(d, gap)?;
    let mut blocks = transport(d, &out, p, |pos| shifted(pos, gap, 2));
    blocks.push(Block::Singleton(out.chord_at(gap)));
    let q = Pairing::new(out.len(), blocks).expect("transported pairing is a partition");
    Ok((out, q))
}

/// Second-move insertion together with the certificate extended by a pair
/// block joining the adjacent endpoints of the two new chords.
pub fn r2_insert_with_certificate(
    d: &ChordDiagram,
    gap1: usize,
    gap2: usize,
    variant: R2Variant,
    p: &Pairing,
) -> Result<(ChordDiagram, Pairing), MoveError> {
    let out = r2_insert(d, gap1, gap2, variant)?;
    let (lo, hi) = (gap1.min(gap2), gap1.max(gap2));
    let mut blocks = transport(d, &out, p, |pos| {
        if pos >= hi {
            pos + 4
        } else if pos >= lo {
            pos + 2
        } else {
            pos
        }
    });
    let x = out.chord_at(lo);
    let y = out.chord_at(lo + 1);
    // x is opened at lo and y at lo + 1, so joining first ends pairs lo with
    // lo + 1; the second ends sit in the adjacent pair inserted at hi.
    blocks.push(Block::pair(x, y, Correspondence::Parallel));
    let q = Pairing::new(out.len(), blocks).expect("transported pairing is a partition");
    Ok((out, q))
}
