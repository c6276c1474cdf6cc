//! Randomized structural properties tying the modules together.
//!
//! Each property draws a seed, grows a pseudo-random diagram (and possibly
//! a walk of moves) from it, and checks an invariant the design promises:
//! round-tripping formats, move/inverse cancellation, table invariance,
//! and agreement with the naive reference implementations in `common`.

mod common;

use common::{oracle_in_lcs, oracle_milnor};
use cutcalc::concordance::{boundaries, build_sv_trace, build_trace, verify, Report};
use cutcalc::diagram::CutDiagram;
use cutcalc::io::{parse_cmov, parse_cut, write_cmov, write_cut, CmovFile, CutFile};
use cutcalc::magnus::{in_lcs, milnor_table, TruncatedSeries};
use cutcalc::moves::{
    apply_move, parse_move, random_diagram, random_move, random_walk, Move, MoveKind, ALL_KINDS,
    CLASSICAL_KINDS,
};
use cutcalc::word::Word;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng_of(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_diagram(seed: u64) -> CutDiagram {
    random_diagram(&mut rng_of(seed), 3, 6)
}

/// 48 cases by default (keeps the suite fast); `PROPTEST_CASES` overrides
/// for stress runs.
fn config() -> ProptestConfig {
    let cases = std::env::var("PROPTEST_CASES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(48);
    ProptestConfig::with_cases(cases)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn cut_files_round_trip(seed: u64) {
        let f = CutFile::new("sample", small_diagram(seed));
        let text = write_cut(&f);
        prop_assert_eq!(parse_cut(&text).unwrap(), f);
    }

    #[test]
    fn cmov_files_round_trip(seed: u64) {
        let d = small_diagram(seed);
        let (_, moves) = random_walk(&d, &mut rng_of(seed ^ 0xc0ffee), 8, &ALL_KINDS);
        let cert = build_sv_trace(&d, &moves).unwrap();
        let f = CmovFile { from: "sample".into(), to: None, certificate: cert };
        prop_assert_eq!(parse_cmov(&write_cmov(&f)).unwrap(), f);
    }

    #[test]
    fn move_text_round_trips(seed: u64) {
        let d = small_diagram(seed);
        let (_, moves) = random_walk(&d, &mut rng_of(seed ^ 0xbeef), 10, &ALL_KINDS);
        for m in moves {
            prop_assert_eq!(parse_move(&m.to_string()).unwrap(), m);
        }
    }

    #[test]
    fn births_and_deaths_cancel(seed: u64) {
        let d = small_diagram(seed);
        let mut rng = rng_of(seed ^ 0xfeed);
        for kind in [MoveKind::R1Plus, MoveKind::R2Plus, MoveKind::SvPlus] {
            let Some((m, grown)) = random_move(&d, &mut rng, &[kind]) else {
                continue;
            };
            let (component, position) = match &m {
                Move::R1Plus { component, slot, .. } => (*component, slot + 1),
                Move::R2Plus { component, slot, .. } => (*component, slot + 1),
                Move::SvPlus { component, slot, .. } => (*component, slot + 1),
                other => panic!("unexpected move {other}"),
            };
            let death = match kind {
                MoveKind::R1Plus => Move::R1Minus { component, position },
                MoveKind::R2Plus => Move::R2Minus { component, position },
                _ => Move::SvMinus { component, position },
            };
            prop_assert_eq!(apply_move(&grown, &death).unwrap(), d.clone());
        }
    }

    #[test]
    fn walks_keep_diagrams_valid(seed: u64) {
        let d = small_diagram(seed);
        prop_assert!(d.validate().ok());
        let (end, _) = random_walk(&d, &mut rng_of(seed ^ 0xdead), 25, &ALL_KINDS);
        prop_assert!(end.validate().ok());
    }

    #[test]
    fn classical_walks_preserve_both_tables(seed: u64) {
        let d = small_diagram(seed);
        let (end, moves) = random_walk(&d, &mut rng_of(seed ^ 1), 12, &CLASSICAL_KINDS);
        for reduced in [false, true] {
            let before = milnor_table(&d, 3, reduced);
            let after = milnor_table(&end, 3, reduced);
            prop_assert!(
                before.first_disagreement(&after).is_none(),
                "walk {:?} changed the table",
                moves
            );
        }
    }

    #[test]
    fn sv_walks_preserve_the_reduced_table(seed: u64) {
        let d = small_diagram(seed);
        let (end, moves) = random_walk(&d, &mut rng_of(seed ^ 2), 12, &ALL_KINDS);
        let before = milnor_table(&d, 3, true);
        let after = milnor_table(&end, 3, true);
        prop_assert!(
            before.first_disagreement(&after).is_none(),
            "walk {:?} changed the reduced table",
            moves
        );
    }

    #[test]
    fn tables_are_stable_under_maxlen(seed: u64) {
        let d = small_diagram(seed);
        for reduced in [false, true] {
            let shallow = milnor_table(&d, 3, reduced);
            let deep = milnor_table(&d, 4, reduced);
            for (key, e) in &shallow.entries {
                prop_assert_eq!(deep.entries.get(key).unwrap(), e);
            }
        }
    }

    #[test]
    fn tables_match_the_oracle(seed: u64) {
        let d = small_diagram(seed);
        for reduced in [false, true] {
            let table = milnor_table(&d, 3, reduced);
            let reference = oracle_milnor(&d, 3, reduced);
            prop_assert_eq!(table.entries.len(), reference.len());
            for (key, e) in &table.entries {
                let (value, modulus) = reference.get(&key.0).unwrap();
                prop_assert_eq!(&e.value, value, "value at {}", key);
                prop_assert_eq!(&e.modulus, modulus, "modulus at {}", key);
            }
        }
    }

    #[test]
    fn degree_two_is_the_linking_matrix(seed: u64) {
        let d = small_diagram(seed);
        let lk = d.linking_matrix();
        let table = milnor_table(&d, 2, false);
        let n = d.component_count();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let e = table.get(&[i, j]).unwrap();
                if e.modulus == 0u32.into() {
                    prop_assert_eq!(e.value.clone(), lk[i - 1][j - 1].into());
                }
            }
        }
    }

    #[test]
    fn expansion_is_a_homomorphism(letters in proptest::collection::vec((1usize..=3, prop_oneof![Just(1i64), Just(-1)]), 0..8)) {
        let mid = letters.len() / 2;
        let u = Word::from_letters(letters[..mid].to_vec());
        let v = Word::from_letters(letters[mid..].to_vec());
        let uv = u.mul(&v);
        for reduced in [false, true] {
            let lhs = TruncatedSeries::expand(&uv, 3, 3, reduced);
            let rhs = TruncatedSeries::expand(&u, 3, 3, reduced)
                .mul(&TruncatedSeries::expand(&v, 3, 3, reduced));
            prop_assert_eq!(lhs.monomials(), rhs.monomials());
        }
    }

    #[test]
    fn lcs_membership_matches_the_oracle(letters in proptest::collection::vec((1usize..=3, prop_oneof![Just(1i64), Just(-1)]), 0..10)) {
        let w = Word::from_letters(letters.clone());
        for q in 2..=4 {
            prop_assert_eq!(in_lcs(&w, q), oracle_in_lcs(&letters, q));
        }
    }

    #[test]
    fn traced_certificates_verify_and_reproduce_their_walk(seed: u64) {
        let d = small_diagram(seed);
        let mut rng = rng_of(seed ^ 3);
        let (end, moves) = random_walk(&d, &mut rng, 10, &CLASSICAL_KINDS);
        let cert = build_trace(&d, &moves).unwrap();
        prop_assert!(verify(&d, &cert, Some(&end)).is_accepted());
        let (left, right) = boundaries(&d, &cert).unwrap();
        prop_assert_eq!(left, d);
        prop_assert_eq!(right.skeleton, end.skeleton);
    }

    #[test]
    fn sv_certificates_verify(seed: u64) {
        let d = small_diagram(seed);
        let mut rng = rng_of(seed ^ 4);
        let (end, moves) = random_walk(&d, &mut rng, 10, &ALL_KINDS);
        let cert = build_sv_trace(&d, &moves).unwrap();
        match verify(&d, &cert, Some(&end)) {
            Report::Accepted { .. } => {}
            Report::Rejected { reason, event } => {
                return Err(TestCaseError::fail(format!(
                    "rejected at {event:?}: {reason} (moves {moves:?})"
                )));
            }
        }
    }

    #[test]
    fn parsers_never_panic(text in "\\PC*") {
        let _ = parse_cut(&text);
        let _ = parse_cmov(&text);
        let _ = parse_move(&text);
    }
}
