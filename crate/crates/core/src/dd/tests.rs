use super::*;

fn ep(pair: usize, mark: u8) -> Endpoint {
    Endpoint { pair, mark }
}

fn idx3() -> MuIndex {
    MuIndex::new(vec![1, 2], 3).unwrap()
}

fn sample() -> DDDiagram {
    // Pairs on circles (1,2), (1,3), (2,3), endpoints interleaved.
    DDDiagram::new(
        3,
        vec![(1, 2), (1, 3), (2, 3)],
        vec![
            vec![ep(0, 0), ep(1, 0), ep(0, 1), ep(1, 1)],
            vec![ep(0, 0), ep(2, 0), ep(0, 1), ep(2, 1)],
            vec![ep(1, 0), ep(2, 0), ep(1, 1), ep(2, 1)],
        ],
    )
    .unwrap()
}

#[test]
fn validation() {
    assert!(DDDiagram::new(2, vec![(1, 1)], vec![vec![ep(0, 0), ep(0, 1), ep(0, 0), ep(0, 1)], vec![]]).is_err());
    assert!(DDDiagram::new(2, vec![(1, 2)], vec![vec![ep(0, 0), ep(0, 1)], vec![ep(0, 0)]]).is_err());
    assert!(DDDiagram::new(2, vec![(1, 2)], vec![vec![ep(0, 0), ep(0, 1)], vec![ep(0, 0), ep(0, 1), ep(0, 1)]]).is_err());
    assert!(DDDiagram::new(2, vec![(1, 3)], vec![vec![ep(0, 0), ep(0, 1)], vec![]]).is_err());
    assert!(DDDiagram::new(2, vec![(1, 2)], vec![vec![ep(0, 0), ep(0, 1)], vec![ep(0, 1), ep(0, 0)]]).is_ok());
}

#[test]
fn canonical_forms() {
    let d = sample();
    for c in 1..=3 {
        for r in 0..4 {
            assert_eq!(d.rotated(c, r), d);
        }
    }
    assert_ne!(d.swap_pair(0), d);
    assert_eq!(d.swap_pair(0).swap_pair(0), d);
    assert_eq!(d.canonicalize().canonicalize(), d);
    assert_eq!(DDDiagram::empty(3).canonicalize(), DDDiagram::empty(3));
}

#[test]
fn census_counts() {
    let c = census_degree3();
    assert_eq!(c.labeled.len(), 216);
    assert_eq!(c.naive, 27);
    assert_eq!(c.orbits.len(), 28);
    let mut sizes: Vec<usize> = c.orbits.values().map(Vec::len).collect();
    sizes.sort();
    assert_eq!(sizes[..2], [4, 4]);
    assert!(sizes[2..].iter().all(|&s| s == 8));
}

#[test]
fn census_orbits_by_burnside() {
    // Orbit count = average number of diagrams fixed by each swap set.
    let c = census_degree3();
    let labeled: BTreeSet<_> = c.labeled.iter().cloned().collect();
    let fixed: usize = (0..8u64).map(|m| labeled.iter().filter(|d| d.swap_pairs(m) == **d).count()).sum();
    assert_eq!(fixed % 8, 0);
    assert_eq!(fixed / 8, c.orbits.len());
    // Each circle carries 4 endpoints: (4 - 1)! cyclic orders.
    assert_eq!(labeled.len(), 6 * 6 * 6);
}

#[test]
fn one_term_rules() {
    let two = DDDiagram::new(2, vec![(1, 2)], vec![vec![ep(0, 0), ep(0, 1)], vec![ep(0, 0), ep(0, 1)]]).unwrap();
    assert!(two.one_term_test(OneTermMode::Matching));
    assert!(two.one_term_test(OneTermMode::Adjacent));
    // Second pair interleaved between the first pair's ends on circle 1.
    let crossed = DDDiagram::new(
        3,
        vec![(1, 2), (1, 3)],
        vec![vec![ep(0, 0), ep(1, 0), ep(0, 1), ep(1, 1)], vec![ep(0, 0), ep(0, 1)], vec![ep(1, 0), ep(1, 1)]],
    )
    .unwrap();
    assert!(!crossed.one_term_test(OneTermMode::Adjacent));
    // Adjacent on both circles but in opposite orders.
    let opposite = DDDiagram::new(
        2,
        vec![(1, 2), (1, 2)],
        vec![vec![ep(0, 0), ep(0, 1), ep(1, 0), ep(1, 1)], vec![ep(0, 1), ep(0, 0), ep(1, 1), ep(1, 0)]],
    )
    .unwrap();
    assert!(opposite.one_term_test(OneTermMode::Adjacent));
    assert!(!opposite.one_term_test(OneTermMode::Matching));
    assert!(!sample().one_term_test(OneTermMode::Adjacent));
}

#[test]
fn one_term_census_counts() {
    let c = census_degree3();
    let count = |mode| c.orbits.keys().filter(|d| d.one_term_test(mode)).count();
    assert_eq!(count(OneTermMode::Matching), 13);
    assert_eq!(count(OneTermMode::Adjacent), 20);
    // The test is a property of the orbit, not the representative.
    for (_, members) in c.orbits.iter() {
        for mode in [OneTermMode::Matching, OneTermMode::Adjacent] {
            let v: BTreeSet<bool> = members.iter().map(|d| d.one_term_test(mode)).collect();
            assert_eq!(v.len(), 1);
        }
    }
}

#[test]
fn one_term_diagrams_vanish() {
    let two = DDDiagram::new(3, vec![(1, 2)], vec![vec![ep(0, 0), ep(0, 1)], vec![ep(0, 0), ep(0, 1)], vec![]]).unwrap();
    assert!(evaluate_w(&two, &idx3(), &LinkingClass::split(3), 4, 1).unwrap().is_zero());
    let c = census_degree3();
    for d in c.orbits.keys().filter(|d| d.one_term_test(OneTermMode::Adjacent)) {
        assert!(evaluate_w(d, &idx3(), &LinkingClass::split(3), 3, 7).unwrap().is_zero(), "{d}");
    }
}

#[test]
fn text_round_trip() {
    let d = sample();
    let text = d.to_text();
    assert!(text.starts_with("circle p1+ p2+ p1- p2-\n"));
    assert!(text.contains("pair 1 1:1 2:1 / 1:3 2:3\n"));
    assert_eq!(text.parse::<DDDiagram>().unwrap(), d);
    for e in census_degree3().labeled {
        assert_eq!(e.to_text().parse::<DDDiagram>().unwrap(), e);
    }
    let commented = "# two circles\ncircle a b\ncircle c d\n\npair 1 1:1 2:2 / 1:2 2:1\n";
    let two = commented.parse::<DDDiagram>().unwrap();
    assert_eq!(two.circle(2), &[ep(0, 0), ep(0, 1)]);
    for bad in [
        "circle a b\ncircle c d\npair 1 1:1 2:2 / 1:2 1:1\n",
        "circle a b\ncircle c d\npair 1 1:1 2:3 / 1:2 2:1\n",
        "circle a b\ncircle c d\npair 2 1:1 2:2 / 1:2 2:1\n",
        "circle a b\ncircle c d\npair 1 1:1 2:2 1:2 2:1\n",
        "circle a b c\ncircle c d\npair 1 1:1 2:2 / 1:2 2:1\n",
        "triangle\n",
    ] {
        assert!(bad.parse::<DDDiagram>().is_err(), "{bad}");
    }
}

#[test]
fn linking_classes() {
    assert_eq!(LinkingClass::parse("split", 3).unwrap(), LinkingClass::split(3));
    let c = LinkingClass::parse("0,1,2;1,0,-3;2,-3,0", 3).unwrap();
    assert_eq!(c.lk(2, 3), -3);
    assert_eq!(c.to_string(), "0,1,2;1,0,-3;2,-3,0");
    assert!(LinkingClass::parse("0,1;2,0", 2).is_err());
    assert!(LinkingClass::parse("1,0;0,0", 2).is_err());
    assert!(LinkingClass::parse("0,1;1,0", 3).is_err());
}

#[test]
fn realizations_induce_the_diagram() {
    let empty = realize(&DDDiagram::empty(3), &LinkingClass::split(3), 1, 0).unwrap();
    assert_eq!(empty[0].degree(), 0);
    assert!(empty[0].base().crossing_list().is_empty());
    let class = LinkingClass::parse("0,2,-1;2,0,0;-1,0,0", 3).unwrap();
    for d in census_degree3().labeled.iter().step_by(7) {
        for l in realize(d, &class, 5, 42).unwrap() {
            assert_eq!(induced_diagram(&l).unwrap(), *d);
            assert_eq!(l.resolve_dc(0).linking_matrix().unwrap(), class.matrix());
        }
    }
}

#[test]
fn realization_is_seeded() {
    let d = sample();
    let a = realize(&d, &LinkingClass::split(3), 4, 9).unwrap();
    assert_eq!(a, realize(&d, &LinkingClass::split(3), 4, 9).unwrap());
    assert_ne!(a, realize(&d, &LinkingClass::split(3), 4, 10).unwrap());
}

#[test]
fn census_samples_agree_and_swaps_negate() {
    let c = census_degree3();
    for d in c.orbits.keys() {
        let links = realize(d, &LinkingClass::split(3), 5, 3).unwrap();
        let v0 = links[0].extended_mu_bar_dc(&idx3()).unwrap();
        for l in &links {
            assert_eq!(l.extended_mu_bar_dc(&idx3()).unwrap(), v0);
            let swapped = l.swap_pair(1).extended_mu_bar_dc(&idx3()).unwrap();
            assert_eq!(swapped.residue, -v0.residue.clone());
        }
    }
}

#[test]
fn same_pair_diagrams_vanish() {
    let d = DDDiagram::new(
        3,
        vec![(1, 2), (1, 2)],
        vec![vec![ep(0, 0), ep(1, 0), ep(0, 1), ep(1, 1)], vec![ep(1, 0), ep(0, 0), ep(1, 1), ep(0, 1)], vec![]],
    )
    .unwrap();
    assert!(d.has_repeated_circle_pair());
    for class in ["split", "0,1,0;1,0,0;0,0,0"] {
        assert!(evaluate_w(&d, &idx3(), &LinkingClass::parse(class, 3).unwrap(), 5, 11).unwrap().is_zero());
    }
}

#[test]
fn too_few_samples() {
    assert!(matches!(evaluate_w(&sample(), &idx3(), &LinkingClass::split(3), 2, 5), Err(DdError::TooFewSamples(2))));
}

#[test]
fn relation_ranks() {
    let c = census_degree3();
    let reps: Vec<DDDiagram> = c.orbits.keys().cloned().collect();
    let r = relation_space_rank(&reps, &[Relation::OneTerm(OneTermMode::Adjacent)]);
    assert_eq!((r.diagrams, r.rank, r.quotient), (28, 20, 8));
    let r = relation_space_rank(&reps, &[Relation::OneTerm(OneTermMode::Matching)]);
    assert_eq!(r.quotient, 15);
    // On all 216, antisymmetry leaves one dimension per free orbit; the two
    // symmetric orbits contain a diagram equal to minus itself.
    let r = relation_space_rank(&c.labeled, &[Relation::Antisymmetry]);
    assert_eq!(r.quotient, 26);
    let all = [Relation::Antisymmetry, Relation::OneTerm(OneTermMode::Adjacent), Relation::SamePairVanishing];
    assert!(relation_space_rank(&c.labeled, &all).quotient <= 8);
}
