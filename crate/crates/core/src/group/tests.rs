use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

fn g(degree: usize, gens: &[&str]) -> PermGroup {
    PermGroup::from_cycles(degree, gens).unwrap()
}

fn p(s: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(s, n).unwrap()
}

/// Naive closure: breadth-first multiplication by generators.
fn naive_elements(group: &PermGroup) -> HashSet<Permutation> {
    let mut seen = HashSet::from([Permutation::identity(group.degree())]);
    let mut frontier = vec![Permutation::identity(group.degree())];
    while let Some(x) = frontier.pop() {
        for s in group.generators() {
            let y = s.mul(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn witness9() -> PermGroup {
    g(9, &["(1 2 3 4 5 6 7 8 9)", "(2 5 8)(3 9 6)"])
}

#[test]
fn order_examples() {
    assert_eq!(PermGroup::cyclic(6).order(), 6);
    let w = witness9();
    assert_eq!(naive_elements(&w).len(), 27);
    assert_eq!(w.order(), 27);
    let s5 = g(5, &["(1 2)", "(1 2 3 4 5)"]);
    assert_eq!(naive_elements(&s5).len(), 120);
    assert_eq!(s5.order(), 120);
    assert_eq!(PermGroup::trivial(4).order(), 1);
}

#[test]
fn chain_order_is_product_of_transversals() {
    let s7 = PermGroup::symmetric(7);
    let chain = s7.chain();
    let prod: u128 = chain.transversal_sizes().iter().map(|&x| x as u128).product();
    assert_eq!(prod, 5040);
    assert_eq!(chain.order(), 5040);
    assert_eq!(chain.base()[0], 1);
}

#[test]
fn contains_examples() {
    let c6 = PermGroup::cyclic(6);
    assert!(c6.contains(&Permutation::identity(6)).unwrap());
    let tau3 = Permutation::n_cycle(6).pow(3);
    assert_eq!(tau3, p("(1 4)(2 5)(3 6)", 6));
    assert!(c6.contains(&tau3).unwrap());
    let c3 = g(3, &["(1 2 3)"]);
    assert!(!c3.contains(&p("(1 2)", 3)).unwrap());
    assert_eq!(naive_elements(&c3).len(), 3);
    assert!(c3.contains(&p("(1 2)", 4)).is_err());
}

#[test]
fn orbit_examples() {
    let n2 = g(6, &["(1 3 5)(2 4 6)", "(2 6)(3 5)"]);
    assert_eq!(n2.orbits(), vec![vec![1, 3, 5], vec![2, 4, 6]]);
    assert!(!n2.is_transitive());
    for n in 1..=12 {
        assert!(PermGroup::cyclic(n).is_transitive());
    }
    assert_eq!(PermGroup::trivial(4).orbits().len(), 4);
}

#[test]
fn normality_examples() {
    let w = witness9();
    let n1 = PermGroup::cyclic(9);
    assert!(n1.is_normal_in(&w).unwrap());
    assert!(w.is_normal_in(&w).unwrap());
    let s3 = PermGroup::symmetric(3);
    let t = g(3, &["(1 2)"]);
    assert!(!t.is_normal_in(&s3).unwrap());
    assert!(!t.contains(&p("(1 2)", 3).conjugated_by(&p("(2 3)", 3))).unwrap());
    // not a subgroup at all
    assert!(matches!(
        t.is_normal_in(&g(3, &["(1 2 3)"])),
        Err(Error::NotSubgroup(_))
    ));
}

#[test]
fn normal_closure_examples() {
    let s5 = PermGroup::symmetric(5);
    let a5 = s5.normal_closure(&[p("(1 2 3)", 5)]).unwrap();
    assert_eq!(a5.order(), 60);
    let w = witness9();
    assert_eq!(w.normal_closure(&[Permutation::identity(9)]).unwrap().order(), 1);
    let tau = Permutation::n_cycle(9);
    let c = w.normal_closure(&[tau]).unwrap();
    assert_eq!(c.order(), 9);
    assert!(c.is_normal_in(&w).unwrap());
    assert!(c.same_elements(&PermGroup::cyclic(9)));
    assert!(PermGroup::cyclic(5)
        .normal_closure(&[p("(1 2)", 5)])
        .is_err());
}

fn sizes(g: &PermGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g
        .conjugacy_classes(DEFAULT_ELEMENT_BUDGET)
        .unwrap()
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    v.sort_unstable();
    v
}

#[test]
fn conjugacy_class_examples() {
    assert_eq!(sizes(&PermGroup::symmetric(3)), vec![1, 2, 3]);
    assert_eq!(sizes(&PermGroup::cyclic(7)), vec![1; 7]);
    assert_eq!(sizes(&PermGroup::alternating(5)), vec![1, 12, 12, 15, 20]);
    let err = PermGroup::symmetric(8)
        .conjugacy_classes(DEFAULT_ELEMENT_BUDGET)
        .unwrap_err();
    assert_eq!(
        err,
        Error::Budget {
            what: "group order",
            size: 40320,
            budget: 10_000
        }
    );
}

/// Brute-force conjugacy classes: conjugate by every element.
#[test]
fn conjugacy_classes_match_brute_force() {
    let s4 = PermGroup::symmetric(4);
    let all: Vec<Permutation> = naive_elements(&s4).into_iter().collect();
    let mut brute: Vec<usize> = Vec::new();
    let mut done: HashSet<Permutation> = HashSet::new();
    for x in &all {
        if done.contains(x) {
            continue;
        }
        let class: HashSet<Permutation> = all.iter().map(|h| x.conjugated_by(h)).collect();
        brute.push(class.len());
        done.extend(class);
    }
    brute.sort_unstable();
    assert_eq!(sizes(&s4), brute);
}

#[test]
fn normal_subgroup_examples() {
    let a5 = PermGroup::alternating(5).all_normal_subgroups(10_000).unwrap();
    assert_eq!(a5.orders(), vec![1, 60]);
    assert!(a5.parent_is_simple());
    let s5 = PermGroup::symmetric(5).all_normal_subgroups(10_000).unwrap();
    assert_eq!(s5.orders(), vec![1, 60, 120]);
    let c6 = PermGroup::cyclic(6).all_normal_subgroups(10_000).unwrap();
    assert_eq!(c6.orders(), vec![1, 2, 3, 6]);
    let s4 = PermGroup::symmetric(4).all_normal_subgroups(10_000).unwrap();
    assert_eq!(s4.orders(), vec![1, 4, 12, 24]);
    for list in [&a5, &s5, &c6, &s4] {
        let parent = list.parent.order();
        for e in &list.entries {
            assert!(e.group.is_normal_in(&list.parent).unwrap());
            assert_eq!(e.index * e.order, parent);
        }
    }
    assert!(PermGroup::symmetric(8).all_normal_subgroups(10_000).is_err());
}

#[test]
fn normal_subgroups_of_klein_product() {
    // C2 x C2 has five subgroups, all normal.
    let v = g(4, &["(1 2)", "(3 4)"]);
    assert_eq!(v.all_normal_subgroups(100).unwrap().orders(), vec![1, 2, 2, 2, 4]);
}

#[test]
fn two_transitivity_examples() {
    assert!(PermGroup::symmetric(5).is_2_transitive());
    assert!(!PermGroup::cyclic(5).is_2_transitive());
    assert!(PermGroup::alternating(5).is_2_transitive());
    assert!(!PermGroup::alternating(4).contains(&p("(1 2)", 4)).unwrap());
}

#[test]
fn pointwise_stabilizer_of_block() {
    let s3s3 = g(6, &["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)"]);
    let stab = s3s3.pointwise_stabilizer(&[4, 5, 6]);
    assert_eq!(stab.order(), 6);
    assert!(stab.generators().iter().all(|x| (4..=6).all(|k| x.fixes(k))));
    let s6 = PermGroup::symmetric(6);
    assert_eq!(s6.pointwise_stabilizer(&[6, 2]).order(), 24);
}

#[test]
fn canonical_coset_rep_is_constant_on_cosets() {
    let s5 = PermGroup::symmetric(5);
    let a5 = PermGroup::alternating(5);
    let mut reps = HashSet::new();
    for x in s5.elements(200).unwrap() {
        reps.insert(a5.chain().canonical_coset_rep(&x));
    }
    assert_eq!(reps.len(), 2);
}

fn test_groups() -> Vec<PermGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = vec![
        PermGroup::symmetric(7),
        PermGroup::alternating(7),
        witness9(),
        g(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
        g(8, &["(1 2 3 4)(5 6 7 8)", "(1 5)(2 6)", "(1 3)"]),
        g(10, &["(1 2)(3 4)(5 6)(7 8)(9 10)", "(1 3 5 7 9)(2 4 6 8 10)"]),
    ];
    for _ in 0..40 {
        let n = rng.gen_range(3..=8);
        let k = rng.gen_range(1..=2);
        let gens: Vec<Permutation> = (0..k).map(|_| Permutation::random(n, &mut rng)).collect();
        out.push(PermGroup::new(n, gens).unwrap());
    }
    out.retain(|g| g.order() <= 5040);
    out
}

#[test]
fn chain_order_matches_naive_enumeration() {
    for grp in test_groups() {
        let naive = naive_elements(&grp);
        assert_eq!(grp.order(), naive.len() as u128, "{:?}", grp.generators());
        for x in grp.elements(5040).unwrap() {
            assert!(naive.contains(&x));
        }
    }
}

#[test]
fn membership_matches_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for grp in test_groups().into_iter().take(15) {
        let naive = naive_elements(&grp);
        for _ in 0..200 {
            let x = Permutation::random(grp.degree(), &mut rng);
            assert_eq!(grp.contains(&x).unwrap(), naive.contains(&x));
        }
    }
}

#[test]
fn lagrange_for_normal_closures() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for grp in test_groups() {
        let x = grp.random_element(&mut rng);
        let n = grp.normal_closure(&[x]).unwrap();
        assert_eq!(grp.order() % n.order(), 0);
        assert!(n.is_normal_in(&grp).unwrap());
    }
}
