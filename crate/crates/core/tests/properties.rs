use freeknot::moves::{r1_insert_with_certificate, r2_insert_with_certificate, rotate};
use freeknot::pairing::derived_diagram;
use freeknot::parity::parities;
use freeknot::*;
use proptest::prelude::*;

fn diagram(max_n: usize) -> impl Strategy<Value = ChordDiagram> {
    (0..=max_n, any::<u64>()).prop_map(|(n, seed)| random_diagram(n, seed))
}

fn configs() -> Vec<SearchConfig> {
    let mut out = Vec::new();
    for singleton in [false, true] {
        for parity in [false, true] {
            out.push(SearchConfig {
                use_singleton_even_pruning: singleton,
                use_equal_parity_pruning: parity,
                ..Default::default()
            });
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialize_round_trips(d in diagram(10)) {
        prop_assert_eq!(parse_gauss_code(&serialize(&d)).unwrap(), d.clone());
        let labelled = parse_gauss_code(&d.serialize()).unwrap();
        prop_assert_eq!(parse_gauss_code(&labelled.serialize()).unwrap(), d);
    }

    #[test]
    fn canonical_form_ignores_rotation_and_reflection(d in diagram(9), shift in 0usize..32) {
        let c = canonical_form(&d);
        prop_assert_eq!(canonical_form(&rotate(&d, shift)), c.clone());
        prop_assert_eq!(canonical_form(&mirror(&d)), c.clone());
        prop_assert_eq!(canonical_form(&parse_gauss_code(&c).unwrap()), c);
    }

    #[test]
    fn derived_diagram_uses_every_endpoint(d in diagram(8), pick in any::<u64>()) {
        let all: Vec<Pairing> = enumerate_pairings(&d, Default::default()).take(500).collect();
        let p = &all[(pick % all.len() as u64) as usize];
        let c = derived_diagram(&d, p).into_inner();
        let singles = p.singletons().count();
        let pairs = p.pairs().count();
        prop_assert_eq!(c.size(), d.size());
        prop_assert_eq!(c.len(), singles + 2 * pairs);
        prop_assert!(ChordDiagram::from_chords(c.chords().iter().map(|x| (x.first, x.second))).is_ok());
    }

    #[test]
    fn search_agrees_with_oracle(d in diagram(8)) {
        let oracle = oracle_decide(&d).unwrap();
        for cfg in configs() {
            let v = decide_slice(&d, &cfg).unwrap();
            prop_assert_eq!(v.class(), oracle.class());
            // pruning only removes crossing pairings, so the least one survives
            prop_assert_eq!(v.certificate(), oracle.certificate());
            if let Some(p) = v.certificate() {
                prop_assert!(check_certificate(&d, p));
            }
            if v.class() == VerdictClass::NotSlice {
                prop_assert!(v.odd);
            }
        }
    }

    #[test]
    fn mirror_preserves_verdict_class(d in diagram(8)) {
        let cfg = SearchConfig::default();
        prop_assert_eq!(
            decide_slice(&mirror(&d), &cfg).unwrap().class(),
            decide_slice(&d, &cfg).unwrap().class()
        );
    }

    #[test]
    fn sum_with_mirror_is_slice(d in diagram(6)) {
        let (sum, p) = mirror_certificate(&d);
        prop_assert!(check_certificate(&sum, &p));
        prop_assert_eq!(decide_slice(&sum, &SearchConfig::default()).unwrap().class(), VerdictClass::Slice);
    }

    #[test]
    fn insertions_keep_slice_diagrams_slice(d in diagram(7), g1 in 0usize..64, g2 in 0usize..64, nested in any::<bool>()) {
        let cfg = SearchConfig::default();
        let Some(p) = decide_slice(&d, &cfg).unwrap().certificate().cloned() else {
            return Ok(());
        };
        let (g1, g2) = (g1 % (d.size() + 1), g2 % (d.size() + 1));
        let (e, q) = r1_insert_with_certificate(&d, g1, &p).unwrap();
        prop_assert!(check_certificate(&e, &q));
        prop_assert_eq!(q.singletons().filter(|&c| parities(&e)[c] == Parity::Even).count(), q.singletons().count());
        let variant = if nested { R2Variant::Nested } else { R2Variant::Interleaved };
        let (e, q) = r2_insert_with_certificate(&d, g1, g2, variant, &p).unwrap();
        prop_assert!(check_certificate(&e, &q));
        prop_assert_eq!(decide_slice(&e, &cfg).unwrap().class(), VerdictClass::Slice);
    }

    #[test]
    fn random_walks_replay(d in diagram(5), steps in 0usize..25, seed in any::<u64>()) {
        let (end, script) = random_walk(&d, steps, seed);
        prop_assert_eq!(script.moves.len(), steps);
        prop_assert_eq!(script.replay().unwrap(), end.clone());
        prop_assert!(ChordDiagram::from_chords(end.chords().iter().map(|x| (x.first, x.second))).is_ok());
    }

    #[test]
    fn removal_sites_apply(d in diagram(8)) {
        for site in find_move_sites(&d) {
            let e = moves::apply_move(&d, &site).unwrap();
            let expected = match site {
                MoveSite::R1Remove { .. } => d.len() - 1,
                MoveSite::R2Remove { .. } => d.len() - 2,
                _ => d.len(),
            };
            prop_assert_eq!(e.len(), expected);
        }
    }
}

#[test]
fn third_move_preserves_verdict_class() {
    let cfg = SearchConfig::default();
    let mut moved = 0;
    for seed in 0..300 {
        let d = random_diagram(3 + seed as usize % 6, seed);
        let v = decide_slice(&d, &cfg).unwrap();
        for starts in moves::r3_sites(&d) {
            let e = r3(&d, starts).unwrap();
            let w = decide_slice(&e, &cfg).unwrap();
            assert_eq!(w.odd, v.odd);
            if v.odd {
                assert_eq!(w.class(), v.class(), "{d} at {starts:?}");
            }
            moved += 1;
        }
    }
    assert!(moved > 0);
}

#[test]
fn threads_give_identical_verdicts() {
    for seed in 0..40 {
        let d = random_diagram(4 + seed as usize % 6, seed);
        let base = decide_slice(&d, &SearchConfig::default()).unwrap();
        for threads in [2, 8] {
            let cfg = SearchConfig {
                threads,
                ..Default::default()
            };
            assert_eq!(decide_slice(&d, &cfg).unwrap(), base);
        }
    }
}
