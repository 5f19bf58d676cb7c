//! Exhaustive checks over all small diagrams, against brute-force references.

use std::collections::{BTreeSet, HashMap, HashSet};

use freeknot::moves::{r1_insert_with_certificate, r2_insert_with_certificate, r3_sites};
use freeknot::pairing::pairing_count;
use freeknot::parity::parities;
use freeknot::*;

fn matching(d: &ChordDiagram) -> BTreeSet<(usize, usize)> {
    d.chords().iter().map(|c| (c.first, c.second)).collect()
}

// All images of a matching under the dihedral group of the circle.
fn orbit(d: &ChordDiagram) -> BTreeSet<BTreeSet<(usize, usize)>> {
    let size = d.size();
    let mut out = BTreeSet::new();
    if size == 0 {
        out.insert(BTreeSet::new());
        return out;
    }
    for reflect in [false, true] {
        for shift in 0..size {
            let map = |p: usize| {
                let q = if reflect { size - 1 - p } else { p };
                (q + shift) % size
            };
            out.insert(
                d.chords()
                    .iter()
                    .map(|c| {
                        let (a, b) = (map(c.first), map(c.second));
                        (a.min(b), a.max(b))
                    })
                    .collect(),
            );
        }
    }
    out
}

#[test]
fn canonical_form_separates_dihedral_orbits() {
    for n in 0..=4 {
        let all: Vec<ChordDiagram> = enumerate_diagrams(n).collect();
        let mut by_form: HashMap<String, BTreeSet<BTreeSet<(usize, usize)>>> = HashMap::new();
        for d in &all {
            let o = orbit(d);
            let entry = by_form
                .entry(canonical_form(d))
                .or_insert_with(|| o.clone());
            assert_eq!(*entry, o, "one canonical form for two orbits at {d}");
        }
        let orbits: HashSet<_> = all.iter().map(orbit).collect();
        assert_eq!(by_form.len(), orbits.len());
    }
}

#[test]
fn enumeration_is_distinct_and_complete() {
    let mut double_factorial = 1usize;
    for n in 1..=6 {
        double_factorial *= 2 * n - 1;
        let all: HashSet<_> = enumerate_diagrams(n).map(|d| matching(&d)).collect();
        assert_eq!(all.len(), double_factorial);
    }
}

// Brute force: sum over involutions of an n-set of 2^(2-cycles).
fn weighted_involutions(n: usize) -> u128 {
    fn perms(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            perms(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut all = Vec::new();
    perms(&mut (0..n).collect(), &mut Vec::new(), &mut all);
    all.iter()
        .filter(|p| (0..n).all(|i| p[p[i]] == i))
        .map(|p| 1u128 << ((0..n).filter(|&i| p[i] > i).count()))
        .sum()
}

#[test]
fn pairing_stream_length_matches_involution_count() {
    for n in 0..=6 {
        let d = random_diagram(n, n as u64);
        let want = weighted_involutions(n);
        assert_eq!(
            enumerate_pairings(&d, Default::default()).count() as u128,
            want
        );
        assert_eq!(pairing_count(n), want);
    }
}

#[test]
fn noncrossing_pairings_respect_parity() {
    for n in 0..=4 {
        for d in enumerate_diagrams(n) {
            let par = parities(&d);
            for p in enumerate_pairings(&d, Default::default()) {
                if is_noncrossing(&d, &p) {
                    assert!(p.singletons().all(|c| par[c] == Parity::Even));
                    assert!(p.pairs().all(|(a, b, _)| par[a] == par[b]));
                }
            }
        }
    }
}

#[test]
fn odd_diagrams_are_always_decided() {
    for n in 0..=4 {
        for d in enumerate_diagrams(n) {
            let v = decide_slice(&d, &SearchConfig::default()).unwrap();
            assert_eq!(v.odd, is_odd_diagram(&d));
            match v.class() {
                VerdictClass::Inconclusive => assert!(!v.odd),
                VerdictClass::NotSlice => assert!(v.odd),
                VerdictClass::Slice => {}
            }
        }
    }
}

#[test]
fn insertion_moves_extend_certificates() {
    let cfg = SearchConfig::default();
    for n in 0..=3 {
        for d in enumerate_diagrams(n) {
            let Some(p) = decide_slice(&d, &cfg).unwrap().certificate().cloned() else {
                continue;
            };
            for g1 in 0..=d.size() {
                let (e, q) = r1_insert_with_certificate(&d, g1, &p).unwrap();
                assert!(check_certificate(&e, &q));
                for g2 in g1..=d.size() {
                    for v in [R2Variant::Nested, R2Variant::Interleaved] {
                        let (e, q) = r2_insert_with_certificate(&d, g1, g2, v, &p).unwrap();
                        assert!(check_certificate(&e, &q), "{e}: {}", q.describe(&e));
                    }
                }
            }
        }
    }
}

#[test]
fn triangles_hold_an_even_number_of_odd_chords() {
    let mut sites = 0;
    for n in 0..=6 {
        for d in enumerate_diagrams(n) {
            let par = parities(&d);
            for s in r3_sites(&d) {
                let mut tri: Vec<usize> = s
                    .iter()
                    .flat_map(|&p| [d.chord_at(p), d.chord_at((p + 1) % d.size())])
                    .collect();
                tri.sort_unstable();
                tri.dedup();
                assert_eq!(tri.len(), 3);
                assert_eq!(
                    tri.iter().filter(|&&c| par[c] == Parity::Odd).count() % 2,
                    0,
                    "{d} {s:?}"
                );
                // the move keeps every chord's parity
                let e = r3(&d, s).unwrap();
                let after = parities(&e);
                for p in 0..d.size() {
                    let q = s
                        .iter()
                        .find_map(|&t| {
                            let u = (t + 1) % d.size();
                            (p == t).then_some(u).or((p == u).then_some(t))
                        })
                        .unwrap_or(p);
                    assert_eq!(after[e.chord_at(q)], par[d.chord_at(p)]);
                }
                sites += 1;
            }
            if is_odd_diagram(&d) {
                assert!(r3_sites(&d).is_empty(), "{d}");
            }
        }
    }
    assert!(sites > 0);
}
