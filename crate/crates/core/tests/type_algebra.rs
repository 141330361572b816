use stonesset::algebra::*;
use stonesset::calculus::{invariant_witnesses, section_from_witness, SectionFamily};
use stonesset::simplicial::{compose_sections, IndexClass, IndexMap, NaturalTransformation};
use stonesset::structure::{catalog, FiniteStructure, Limits, TypeSpace};
use stonesset::Error;

fn space(m: &FiniteStructure, depth: usize) -> TypeSpace {
    TypeSpace::build(m, depth, &Limits::default()).unwrap()
}

fn families(t: &TypeSpace) -> Vec<SectionFamily> {
    invariant_witnesses(t)
        .iter()
        .map(|w| section_from_witness(t, w.element, t.depth() - 1).unwrap())
        .collect()
}

fn orbit(t: &TypeSpace, names: &[&str]) -> usize {
    t.orbit_of_names(names).unwrap()
}

fn corpus() -> Vec<TypeSpace> {
    [
        catalog::chain(3),
        catalog::chain(4),
        catalog::pure(4, &["m1"]),
        catalog::pure(3, &["m1", "m2"]),
        catalog::singleton(),
    ]
    .iter()
    .map(|m| space(m, (m.size() + 1).max(4)))
    .collect()
}

#[test]
fn product_examples() {
    let lin = space(&catalog::chain(3), 4);
    let f = families(&lin);
    let (cf, two) = product_type(&f[0], &f[1]).unwrap();
    assert_eq!(two, orbit(&lin, &["m1", "m2"]));
    assert_eq!(
        cf.composite().apply(1, orbit(&lin, &["m3"])),
        orbit(&lin, &["m1", "m2", "m3"])
    );

    let t = space(&catalog::pure(4, &["m1"]), 5);
    let p = &families(&t)[0];
    assert_eq!(product_type(p, p).unwrap().1, orbit(&t, &["m1", "m1"]));

    let one = space(&catalog::singleton(), 3);
    let s = &families(&one)[0];
    assert_eq!(product_type(s, s).unwrap().1, 0);
    assert_eq!(one.orbit_count(2), 1);
}

#[test]
fn product_needs_depth() {
    let t = space(&catalog::chain(3), 2);
    let p = section_from_witness(&t, 0, 1).unwrap();
    assert!(matches!(
        product_type(&p, &p).unwrap_err(),
        Error::InsufficientDepth { .. }
    ));
}

#[test]
fn associativity_over_all_witness_triples() {
    let lin = space(&catalog::chain(3), 4);
    let f = families(&lin);
    let mut triples = 0;
    for p in &f {
        for q in &f {
            for s in &f {
                assert!(check_associativity(p, q, s).unwrap());
                triples += 1;
            }
        }
    }
    assert_eq!(triples, 27);
    for t in corpus() {
        let f = families(&t);
        for p in &f {
            assert!(check_associativity(p, p, p).unwrap());
        }
    }
}

#[test]
fn morley_examples() {
    let lin = space(&catalog::chain(3), 4);
    let m2 = section_from_witness(&lin, 1, 3).unwrap();
    assert_eq!(morley(&m2, 3).unwrap(), orbit(&lin, &["m2", "m2", "m2"]));
    assert_eq!(morley(&m2, 1).unwrap(), m2.head());
    assert!(morley(&m2, 4).is_err());

    let t = space(&catalog::pure(4, &["m1"]), 5);
    let p = section_from_witness(&t, 0, 4).unwrap();
    assert_eq!(morley(&p, 2).unwrap(), orbit(&t, &["m1", "m1"]));
}

#[test]
fn indiscernibility_examples() {
    let lin = space(&catalog::chain(3), 3);
    assert!(!check_indiscernible(
        &lin,
        3,
        orbit(&lin, &["m1", "m2", "m3"])
    ));
    assert!(check_indiscernible(
        &lin,
        3,
        orbit(&lin, &["m2", "m2", "m2"])
    ));
    let pure = space(&catalog::pure(4, &[]), 3);
    assert!(check_indiscernible(
        &pure,
        3,
        orbit(&pure, &["m1", "m2", "m3"])
    ));
}

#[test]
fn morley_sequences_are_indiscernible() {
    for t in corpus() {
        for p in families(&t) {
            for k in 1..=t.structure().size() {
                assert!(check_indiscernible(&t, k, morley(&p, k).unwrap()));
            }
        }
    }
}

#[test]
fn reindexing_identity() {
    for t in corpus() {
        for p in families(&t) {
            let k = t.structure().size().min(3);
            let cf = ComposedFamily::new(vec![p.clone(); k]).unwrap();
            for m in 1..=k {
                let shorter = ComposedFamily::new(vec![p.clone(); m]).unwrap();
                for j in IndexMap::monotone_injections(m, k) {
                    assert_eq!(cf.extract(&j).unwrap(), shorter.joint_type().unwrap());
                }
            }
        }
    }
}

#[test]
fn witness_families_are_generically_stable_and_commute() {
    for t in corpus() {
        let f = families(&t);
        for p in &f {
            assert!(check_generically_stable(p).unwrap());
            for q in &f {
                assert!(check_stable_commutation(p, q).unwrap());
            }
        }
    }
    let lin = space(&catalog::chain(3), 4);
    assert_eq!(families(&lin).len(), 3);
}

#[test]
fn corrupted_composite_is_caught() {
    let lin = space(&catalog::chain(3), 4);
    let p = section_from_witness(&lin, 0, 3).unwrap();
    let composite = compose_sections(p.transformation(), p.transformation()).unwrap();
    let functor = lin.functor_view();
    assert!(is_swap_invariant(functor, &composite).unwrap());

    // level 1 now claims (m1, m2, c) instead of (m1, m1, c)
    let mut components = composite.components().to_vec();
    for (c, slot) in components[0].iter_mut().enumerate() {
        *slot = lin.orbit_of(&[0, 1, c]).unwrap();
    }
    let corrupted = NaturalTransformation::new(
        composite.source().clone(),
        composite.target().clone(),
        components,
    )
    .unwrap();
    assert!(!is_swap_invariant(functor, &corrupted).unwrap());

    let monotone = functor.with_class(IndexClass::Monotone).unwrap();
    assert_eq!(
        is_swap_invariant(&monotone, &composite).unwrap_err(),
        Error::SwapRequiresSymmetric
    );
}

#[test]
fn distinct_realized_types_do_not_commute_with_the_wrong_order() {
    // p ⊗ q and q ⊗ p differ without the swap: the checker compares the
    // swapped composite, not the raw one
    let lin = space(&catalog::chain(3), 4);
    let f = families(&lin);
    let pq = product_type(&f[0], &f[1]).unwrap().1;
    let qp = product_type(&f[1], &f[0]).unwrap().1;
    assert_ne!(pq, qp);
    assert!(check_stable_commutation(&f[0], &f[1]).unwrap());
}
