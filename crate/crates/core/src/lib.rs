//! Sliceness of odd free knots.
//!
//! A free knot diagram is handled through its chord diagram: `n` chords on
//! `2n` points of a circle, written as a Gauss code such as `a b a b`. A
//! diagram is *odd* when every chord is linked with an odd number of other
//! chords. An odd diagram is slice exactly when its chords can be grouped
//! into singletons and pairs so that the derived diagram, where each pair is
//! replaced by the two chords joining corresponding endpoints, has no
//! linked chords. For diagrams that are not odd such a pairing still proves
//! sliceness, but its absence proves nothing.
//!
//! ```
//! use freeknot::{decide_slice, parse_gauss_code, SearchConfig, VerdictClass};
//!
//! let d = parse_gauss_code("a b a b").unwrap();
//! let v = decide_slice(&d, &SearchConfig::default()).unwrap();
//! assert_eq!(v.class(), VerdictClass::Slice);
//! ```

pub mod decider;
pub mod diagram;
pub mod error;
pub mod moves;
pub mod pairing;
pub mod parity;

pub use decider::{
    check_certificate, decide_slice, diagnose_certificate, mirror_certificate, oracle_decide,
    CertificateViolation, Outcome, SearchConfig, Verdict, VerdictClass, ORACLE_MAX_CHORDS,
};
pub use diagram::{
    canonical_form, enumerate_diagrams, parse_gauss_code, random_diagram, serialize, star_diagram,
    Chord, ChordDiagram,
};
pub use error::{CertificateParseError, DecideError, DiagramError, MoveError, PairingError};
pub use moves::{
    connected_sum, find_move_sites, mirror, r1_insert, r1_remove, r2_insert, r2_remove, r3,
    random_walk, MoveScript, MoveSite, R2Variant,
};
pub use pairing::{
    derived_diagram, enumerate_pairings, is_noncrossing, make_pairing, Block, Correspondence,
    DerivedDiagram, Pairing, PairingOptions,
};
pub use parity::{
    gaussian_parity, interlacement, is_odd_diagram, linked, InterlacementMatrix, Parity,
};
