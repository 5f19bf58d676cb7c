//! Sliceness decision for odd free knots.
//!
//! A diagram whose chords admit a pairing with non-crossing derived diagram
//! is slice; for odd diagrams the converse also holds. The decider therefore
//! answers `Slice` with the pairing as certificate, `NotSlice` when no such
//! pairing exists and the diagram is odd, and `Inconclusive` otherwise.
//!
//! [`decide_slice`] runs a pruned backtracking search; [`oracle_decide`]
//! walks every pairing and is kept as an independent reference.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use serde_json::{json, Value};
use thiserror::Error;

use crate::diagram::{Chord, ChordDiagram};
use crate::error::DecideError;
use crate::moves::{connected_sum, mirror};
use crate::pairing::{
    block_chords, certificate_to_json, derived_diagram, enumerate_pairings, Block, Correspondence,
    Pairing,
};
use crate::parity::{is_odd_diagram, parities, Parity};

/// Largest chord count accepted by [`oracle_decide`].
pub const ORACLE_MAX_CHORDS: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictClass {
    Slice,
    NotSlice,
    Inconclusive,
}

impl VerdictClass {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictClass::Slice => "slice",
            VerdictClass::NotSlice => "not_slice",
            VerdictClass::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Slice(Pairing),
    NotSlice,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Whether every chord of the input is odd.
    pub odd: bool,
    /// Search nodes visited by [`decide_slice`], or complete pairings tested
    /// by [`oracle_decide`].
    pub pairings_examined: u64,
}

impl Verdict {
    pub fn class(&self) -> VerdictClass {
        match self.outcome {
            Outcome::Slice(_) => VerdictClass::Slice,
            Outcome::NotSlice => VerdictClass::NotSlice,
            Outcome::Inconclusive => VerdictClass::Inconclusive,
        }
    }

    pub fn certificate(&self) -> Option<&Pairing> {
        match &self.outcome {
            Outcome::Slice(p) => Some(p),
            _ => None,
        }
    }

    /// `{"odd", "verdict", "certificate", "pairings_examined"}` using the
    /// labels of `d`.
    pub fn to_json(&self, d: &ChordDiagram) -> Value {
        json!({
            "odd": self.odd,
            "verdict": self.class().as_str(),
            "certificate": self.certificate().map(|p| certificate_to_json(d, p)),
            "pairings_examined": self.pairings_examined,
        })
    }

    fn from_search(found: Option<Pairing>, odd: bool, examined: u64) -> Verdict {
        let outcome = match found {
            Some(p) => Outcome::Slice(p),
            None if odd => Outcome::NotSlice,
            None => Outcome::Inconclusive,
        };
        Verdict {
            outcome,
            odd,
            pairings_examined: examined,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Never try an odd chord as a singleton.
    pub use_singleton_even_pruning: bool,
    /// Never pair chords of different parity.
    pub use_equal_parity_pruning: bool,
    /// Return the least non-crossing pairing regardless of thread timing.
    pub deterministic_certificate: bool,
    /// Upper bound on search nodes; `None` is unlimited.
    pub node_budget: Option<u64>,
    /// Worker threads for the top-level branches.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            use_singleton_even_pruning: true,
            use_equal_parity_pruning: true,
            deterministic_certificate: true,
            node_budget: None,
            threads: 1,
        }
    }
}

enum Status {
    Found(Vec<Block>),
    Exhausted,
    OverBudget,
    Cancelled,
}

struct BranchResult {
    status: Status,
    nodes: u64,
}

struct Search<'a> {
    d: &'a ChordDiagram,
    parity: &'a [Parity],
    cfg: &'a SearchConfig,
    used: Vec<bool>,
    placed: Vec<Chord>,
    blocks: Vec<Block>,
    nodes: u64,
    cancel: &'a dyn Fn() -> bool,
}

impl Search<'_> {
    fn singleton_ok(&self, c: usize) -> bool {
        !(self.cfg.use_singleton_even_pruning && self.parity[c] == Parity::Odd)
    }

    fn pair_ok(&self, a: usize, b: usize) -> bool {
        !(self.cfg.use_equal_parity_pruning && self.parity[a] != self.parity[b])
    }

    // Blocks available to the least free chord `c`, in certificate order.
    fn options(&self, c: usize) -> Vec<Block> {
        let mut out = Vec::new();
        if self.singleton_ok(c) {
            out.push(Block::Singleton(c));
        }
        for j in (c + 1)..self.used.len() {
            if !self.used[j] && self.pair_ok(c, j) {
                out.push(Block::Pair(c, j, Correspondence::Parallel));
                out.push(Block::Pair(c, j, Correspondence::Crossed));
            }
        }
        out
    }

    // Places `b` if its derived chords are unlinked with everything placed.
    fn try_place(&mut self, b: Block) -> Option<Status> {
        self.nodes += 1;
        if self
            .cfg
            .node_budget
            .is_some_and(|budget| self.nodes > budget)
        {
            return Some(Status::OverBudget);
        }
        if (self.cancel)() {
            return Some(Status::Cancelled);
        }
        let (x, y) = block_chords(self.d, &b);
        let clear = |c: &Chord| self.placed.iter().all(|p| !p.links(c));
        let fits = clear(&x) && y.is_none_or(|y| clear(&y) && !x.links(&y));
        if !fits {
            return None;
        }
        self.placed.push(x);
        self.placed.extend(y);
        for c in b.chords() {
            self.used[c] = true;
        }
        self.blocks.push(b);
        let status = self.descend();
        if matches!(status, Status::Exhausted) {
            self.blocks.pop();
            for c in b.chords() {
                self.used[c] = false;
            }
            self.placed
                .truncate(self.placed.len() - if y.is_some() { 2 } else { 1 });
            None
        } else {
            Some(status)
        }
    }

    fn descend(&mut self) -> Status {
        let Some(c) = self.used.iter().position(|u| !u) else {
            return Status::Found(self.blocks.clone());
        };
        for b in self.options(c) {
            if let Some(status) = self.try_place(b) {
                return status;
            }
        }
        Status::Exhausted
    }
}

/// Searches for the least non-crossing pairing of `d`.
///
/// With `threads > 1` the branches under chord 0 run concurrently. The result
/// is reduced in branch order, and each branch counts the same nodes it
/// would visit in a sequential run. Output is then identical for any thread
/// count.
pub fn decide_slice(d: &ChordDiagram, cfg: &SearchConfig) -> Result<Verdict, DecideError> {
    let odd = is_odd_diagram(d);
    if d.is_empty() {
        return Ok(Verdict::from_search(Some(Pairing::empty()), odd, 0));
    }
    let parity = parities(d);
    let root = Search {
        d,
        parity: &parity,
        cfg,
        used: vec![false; d.len()],
        placed: Vec::new(),
        blocks: Vec::new(),
        nodes: 0,
        cancel: &|| false,
    };
    let branches = root.options(0);

    let winner = AtomicUsize::new(usize::MAX);
    let any_found = AtomicBool::new(false);
    let results: Mutex<Vec<Option<BranchResult>>> =
        Mutex::new((0..branches.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);

    let run_branch = |i: usize| {
        let cancel = || {
            if cfg.deterministic_certificate {
                winner.load(Ordering::Relaxed) < i
            } else {
                any_found.load(Ordering::Relaxed)
            }
        };
        let mut s = Search {
            d,
            parity: &parity,
            cfg,
            used: vec![false; d.len()],
            placed: Vec::new(),
            blocks: Vec::new(),
            nodes: 0,
            cancel: &cancel,
        };
        let status = s.try_place(branches[i]).unwrap_or(Status::Exhausted);
        if matches!(status, Status::Found(_)) {
            winner.fetch_min(i, Ordering::Relaxed);
            any_found.store(true, Ordering::Relaxed);
        }
        results.lock().unwrap()[i] = Some(BranchResult {
            status,
            nodes: s.nodes,
        });
    };

    let threads = cfg.threads.clamp(1, branches.len());
    if threads == 1 {
        for i in 0..branches.len() {
            run_branch(i);
            if matches!(
                results.lock().unwrap()[i].as_ref().map(|r| &r.status),
                Some(Status::Found(_) | Status::OverBudget)
            ) {
                break;
            }
        }
    } else {
        thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= branches.len() {
                        break;
                    }
                    run_branch(i);
                });
            }
        });
    }

    // Sequential-order reduction.
    let mut total = 0u64;
    for r in results.into_inner().unwrap() {
        let Some(r) = r else { break };
        total += r.nodes;
        let over = cfg.node_budget.is_some_and(|b| total > b);
        match r.status {
            Status::OverBudget => {
                return Err(DecideError::BudgetExhausted {
                    budget: cfg.node_budget.unwrap_or(0),
                })
            }
            _ if over => {
                return Err(DecideError::BudgetExhausted {
                    budget: cfg.node_budget.unwrap_or(0),
                })
            }
            Status::Found(blocks) => {
                let p = Pairing::new(d.len(), blocks).expect("search yields partitions");
                return Ok(Verdict::from_search(Some(p), odd, total));
            }
            Status::Exhausted => {}
            // Only branches after a found one are cancelled, in deterministic mode.
            Status::Cancelled => {
                if cfg.deterministic_certificate {
                    unreachable!("cancelled branch precedes every successful one")
                }
            }
        }
    }
    Ok(Verdict::from_search(None, odd, total))
}

/// Pairwise unlinkedness of the derived chords, tested directly.
fn derived_pairwise_unlinked(d: &ChordDiagram, p: &Pairing) -> bool {
    let derived = derived_diagram(d, p);
    let chords = derived.diagram().chords();
    chords
        .iter()
        .enumerate()
        .all(|(i, a)| chords[i + 1..].iter().all(|b| !a.links(b)))
}

/// Exhaustive reference decision: tests every pairing in increasing order.
pub fn oracle_decide(d: &ChordDiagram) -> Result<Verdict, DecideError> {
    if d.len() > ORACLE_MAX_CHORDS {
        return Err(DecideError::OracleBoundExceeded {
            n: d.len(),
            max: ORACLE_MAX_CHORDS,
        });
    }
    let odd = is_odd_diagram(d);
    let mut examined = 0;
    for p in enumerate_pairings(d, Default::default()) {
        examined += 1;
        if derived_pairwise_unlinked(d, &p) {
            return Ok(Verdict::from_search(Some(p), odd, examined));
        }
    }
    Ok(Verdict::from_search(None, odd, examined))
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateViolation {
    #[error("certificate covers {found} chords, diagram has {expected}")]
    ChordCount { expected: usize, found: usize },
    #[error("linked pair in the derived diagram: ({}, {}) and ({}, {})", .0.first, .0.second, .1.first, .1.second)]
    LinkedPair(Chord, Chord),
}

/// The first condition `p` violates as a slice certificate for `d`.
pub fn diagnose_certificate(d: &ChordDiagram, p: &Pairing) -> Result<(), CertificateViolation> {
    if p.chord_count() != d.len() {
        return Err(CertificateViolation::ChordCount {
            expected: d.len(),
            found: p.chord_count(),
        });
    }
    match crate::pairing::first_linked_pair(d, p) {
        Some((a, b)) => Err(CertificateViolation::LinkedPair(a, b)),
        None => Ok(()),
    }
}

pub fn check_certificate(d: &ChordDiagram, p: &Pairing) -> bool {
    diagnose_certificate(d, p).is_ok()
}

/// `K # mirror(K)` spliced at the basepoint, with the pairing that matches
/// every chord of `K` to its reflected twin.
pub fn mirror_certificate(k: &ChordDiagram) -> (ChordDiagram, Pairing) {
    let m = mirror(k);
    let sum = connected_sum(k, k.size(), &m, 0).expect("end gap is always valid");
    // Position p of K reflects to 2 * size - 1 - p in the sum.
    let top = 2 * k.size();
    let blocks = k.chords().iter().map(|c| {
        let own = sum.chord_at(c.first);
        let twin = sum.chord_at(top - 1 - c.first);
        // first end of K's chord meets the second end of its twin
        Block::pair(own, twin, Correspondence::Crossed)
    });
    let p = Pairing::new(sum.len(), blocks).expect("twins partition the chords");
    (sum, p)
}
