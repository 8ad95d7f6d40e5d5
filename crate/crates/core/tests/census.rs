use permwit::census::checks::{self, CheckParams, Verdict};
use permwit::census::{census, census_with, CensusOptions};

const EXPECTED: &[(u64, &[u128])] = &[
    (2, &[2]),
    (3, &[3, 6]),
    (5, &[5, 10, 20, 60, 120]),
    (7, &[7, 14, 21, 42, 168, 2520, 5040]),
];

#[test]
fn census_orders_match_known_lists() {
    for &(q, orders) in EXPECTED {
        let c = census(q).unwrap();
        assert_eq!(c.orders(), orders, "q = {q}");
        assert!(c.entries.iter().all(|e| e.group.is_transitive()));
    }
}

#[test]
fn strategies_agree_at_seven() {
    let opts = CensusOptions {
        strategy: "fingerprint",
        ..CensusOptions::default()
    };
    let f = census_with(7, opts).unwrap();
    assert_eq!(f.orders(), census(7).unwrap().orders());
}

#[test]
fn seven_structure() {
    let c = census(7).unwrap();
    let by_order = |o: u128| c.entries.iter().find(|e| e.order == o).unwrap();
    for o in [7, 14, 21, 42] {
        assert!(by_order(o).in_affine, "order {o}");
    }
    let l = by_order(168);
    assert!(!l.in_affine);
    assert!(l.is_2transitive);
    assert_eq!(l.is_simple, Some(true));
    assert_eq!(l.normalizer_index, Some(1));
    assert_eq!(by_order(2520).is_simple, Some(true));
    assert_eq!(by_order(5040).is_simple, Some(false));
}

#[test]
fn all_checks_pass_through_seven() {
    for &(q, _) in EXPECTED {
        let c = census(q).unwrap();
        for check in checks::registry() {
            if check.name() == "lemma-pq" {
                continue;
            }
            let r = check.run(&c, &CheckParams::default()).unwrap();
            assert!(r.passed, "{} failed at q = {q}: {:?}", check.name(), r.entries);
        }
    }
}

#[test]
fn lemma_pq_valid_pairs() {
    // (p, q) with p < q and p not dividing q - 1
    for (p, q) in [(2, 3), (3, 5), (2, 5), (5, 7), (2, 7), (3, 7)] {
        let c = census(q).unwrap();
        let r = checks::verify_lemma_pq(&c, p);
        if (q - 1) % p == 0 {
            assert!(r.is_err(), "p = {p}, q = {q}");
            continue;
        }
        let r = r.unwrap();
        assert!(r.passed, "p = {p}, q = {q}: {:?}", r.entries);
        assert!(r.entries.iter().all(|e| e.verdict != Verdict::NotApplicable));
    }
}
