use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use stonesset::calculus::family_problem;
use stonesset::simplicial::*;
use stonesset::sset::build_preset;
use stonesset::structure::{catalog, Limits, TypeSpace};
use stonesset::Error;

/// `STONESSET_SEED` overrides the fixed default.
fn seed(default: u64) -> u64 {
    std::env::var("STONESSET_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

fn config() -> Config {
    Config {
        cases: 128,
        rng_seed: RngSeed::Fixed(seed(0x5eed_2024)),
        failure_persistence: None,
        ..Config::default()
    }
}

fn tuples(alphabet: usize, depth: usize, class: IndexClass) -> TruncatedFunctor {
    TruncatedFunctor::from_action(Arc::new(TupleAction::new(alphabet, depth)), depth, class)
        .unwrap()
}

fn index_map(max: usize) -> impl Strategy<Value = IndexMap> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| {
        proptest::collection::vec(0..n, m).prop_map(move |v| IndexMap::new(n, v).unwrap())
    })
}

fn composable(max: usize) -> impl Strategy<Value = (IndexMap, IndexMap)> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(l, m, n)| {
        (
            proptest::collection::vec(0..n, m),
            proptest::collection::vec(0..m, l),
        )
            .prop_map(move |(s, t)| (IndexMap::new(n, s).unwrap(), IndexMap::new(m, t).unwrap()))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn action_is_contravariant((s, t) in composable(4), x in 0usize..1000) {
        let f = tuples(3, 4, IndexClass::All);
        let x = x % f.level_size(s.target());
        let st = s.compose(&t).unwrap();
        prop_assert_eq!(f.act(&st, x), f.act(&t, f.act(&s, x)));
    }

    #[test]
    fn shift_respects_composition((s, t) in composable(4), k in 0usize..3) {
        let st = s.compose(&t).unwrap();
        prop_assert_eq!(st.shifted(k), s.shifted(k).compose(&t.shifted(k)).unwrap());
    }

    #[test]
    fn shifted_functor_acts_through_shifted_maps(s in index_map(3), k in 1usize..3, x in 0usize..10_000) {
        let f = tuples(2, 6, IndexClass::All);
        let g = f.shift(k).unwrap();
        let x = x % g.level_size(s.target());
        prop_assert_eq!(g.act(&s, x), f.act(&s.shifted(k), x));
    }

    #[test]
    fn prepend_sections_shift_and_compose(a in 0usize..3, b in 0usize..3) {
        let f = tuples(3, 5, IndexClass::All);
        let action = TupleAction::new(3, 5);
        let section = |c: usize| {
            NaturalTransformation::from_fn(f.truncate(4).unwrap(), f.shift(1).unwrap(), |n, x| {
                let mut t = vec![c];
                t.extend(action.decode(n, x));
                action.encode(&t)
            })
            .unwrap()
        };
        let (p, q) = (section(a), section(b));
        prop_assert!(p.verify_naturality().is_natural());
        let shifted = shift_nat(&p, 1).unwrap();
        for n in 1..=3 {
            prop_assert_eq!(shifted.component(n), p.component(n + 1));
        }
        let both = compose_sections(&p, &q).unwrap();
        prop_assert!(both.verify_naturality().is_natural());
        for n in 1..=both.depth() {
            for x in 0..f.level_size(n) {
                let mut t = vec![a, b];
                t.extend(action.decode(n, x));
                prop_assert_eq!(both.apply(n, x), action.encode(&t));
            }
        }
    }
}

#[test]
fn decalage_examples() {
    assert_eq!(
        decalage(&tuples(2, 1, IndexClass::All)).unwrap_err(),
        Error::DecalageAtDepthOne
    );
    let c = TruncatedFunctor::constant(3, 4, IndexClass::Monotone);
    let dec = decalage(&c).unwrap();
    assert_eq!(dec.functor.level_sizes(), vec![3, 3, 3]);
    assert_eq!(dec.tail.component(2), &[0, 1, 2]);
    let f = tuples(2, 3, IndexClass::Monotone);
    let dec = decalage(&f).unwrap();
    assert_eq!(dec.functor.level_sizes(), vec![4, 8]);
    // (a, b) ↦ b and (a, b) ↦ a at level 1
    assert_eq!(dec.tail.component(1), &[0, 1, 0, 1]);
    assert_eq!(dec.head.component(1), &[0, 0, 1, 1]);
}

#[test]
fn shifting_needs_depth() {
    let f = tuples(2, 3, IndexClass::All);
    assert!(matches!(
        shift_nat(&NaturalTransformation::identity(&f), 3).unwrap_err(),
        Error::InsufficientDepth { missing: 4, .. }
    ));
}

#[test]
fn transposition_examples() {
    let f = tuples(2, 3, IndexClass::All);
    // (0, 1, 1) ↦ (1, 0, 1)
    assert_eq!(apply_transposition(&f, 1, 3).unwrap(), 5);
    let m = tuples(2, 3, IndexClass::Monotone);
    assert_eq!(
        apply_transposition(&m, 1, 3).unwrap_err(),
        Error::SwapRequiresSymmetric
    );
}

/// Every levelwise choice from the fibers, filtered by the section checks.
fn brute_force_count(problem: &LiftingProblem) -> u64 {
    let depth = problem.depth();
    let over = problem.over();
    let along = problem.along();
    let mut slots: Vec<Vec<usize>> = Vec::new();
    for n in 1..=depth {
        for &y in along.component(n) {
            slots.push(
                over.component(n)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v == y)
                    .map(|(e, _)| e)
                    .collect(),
            );
        }
    }
    let mut choice = vec![0usize; slots.len()];
    let mut count = 0;
    loop {
        if slots.iter().all(|s| !s.is_empty()) {
            let mut components = Vec::new();
            let mut k = 0;
            for n in 1..=depth {
                let size = problem.domain().level_size(n);
                components.push((k..k + size).map(|i| slots[i][choice[i]]).collect());
                k += size;
            }
            let w = NaturalTransformation::new(
                problem.domain().clone(),
                problem.total().clone(),
                components,
            )
            .unwrap();
            count += u64::from(problem.check_section(&w).is_ok());
        } else {
            return 0;
        }
        let mut pos = slots.len();
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < slots[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

fn oracle_instances() -> Vec<(String, LiftingProblem)> {
    let limits = Limits::default();
    let mut out = Vec::new();
    let spaces = [
        ("lin3", catalog::chain(3)),
        ("pure3", catalog::pure(3, &[])),
        ("pure4", catalog::pure(4, &[])),
        ("pure4b", catalog::pure(4, &["m1"])),
        ("cyc4", catalog::directed_cycle(4)),
    ];
    for (name, m) in spaces {
        let t = TypeSpace::build(&m, 4, &limits).unwrap();
        for d in 1..=3 {
            for class in [IndexClass::Monotone, IndexClass::All] {
                out.push((
                    format!("{name} d={d} {class:?}"),
                    family_problem(&t, d, class).unwrap(),
                ));
            }
        }
    }
    for preset in ["circle", "simplex:1", "boundary:2", "discrete:2"] {
        for d in 1..=2 {
            let s = build_preset(preset, d + 1, 1_000_000).unwrap();
            let f = s.functor(d + 1).unwrap();
            let dec = decalage(&f).unwrap();
            let base = f.truncate(d).unwrap();
            out.push((
                format!("{preset} d={d}"),
                LiftingProblem::new(dec.tail, NaturalTransformation::identity(&base)).unwrap(),
            ));
        }
    }
    out
}

#[test]
fn solver_agrees_with_brute_force() {
    let mut checked = 0;
    for (name, problem) in oracle_instances() {
        if problem.fiber_assignment_count() > 1_000_000 {
            continue;
        }
        let count = solve_lifting(&problem, SolveMode::Count)
            .unwrap()
            .count()
            .unwrap();
        assert_eq!(count, brute_force_count(&problem), "{name}");
        let all = solve_lifting(&problem, SolveMode::Enumerate).unwrap();
        assert_eq!(all.count(), Some(count), "{name}");
        for s in all.into_sections() {
            problem.check_section(s.transformation()).unwrap();
        }
        let one = solve_lifting(&problem, SolveMode::FindOne).unwrap();
        assert_eq!(one.exists(), count > 0, "{name}");
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} instances were small enough");
}

#[test]
fn enumeration_is_deterministic() {
    for (name, problem) in oracle_instances() {
        let a = solve_lifting(&problem, SolveMode::Enumerate)
            .unwrap()
            .into_sections();
        let b = solve_lifting(&problem, SolveMode::Enumerate)
            .unwrap()
            .into_sections();
        assert_eq!(a.len(), b.len(), "{name}");
        for (x, y) in a.iter().zip(&b) {
            assert!(x.transformation().same_components(y.transformation()));
        }
        // ordered by the level-major assignment vector
        let keys: Vec<Vec<usize>> = a
            .iter()
            .map(|s| s.transformation().components().concat())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{name}");
    }
}
