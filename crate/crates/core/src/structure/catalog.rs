//! Small structures used throughout the tests and documentation.
//! Elements are named `m1..mN`.

use super::finite::FiniteStructure;

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("m{i}")).collect()
}

/// `n` elements, no relations, the listed elements as parameters.
pub fn pure(n: usize, parameters: &[&str]) -> FiniteStructure {
    let mut m = FiniteStructure::new(names(n)).expect("non-empty universe");
    m.set_parameters(parameters).expect("parameters are m1..mN");
    m
}

/// `m1 < .. < mN` as a strict binary order relation `lt`.
pub fn chain(n: usize) -> FiniteStructure {
    let mut m = FiniteStructure::new(names(n)).expect("non-empty universe");
    let tuples = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j]));
    m.add_relation_indices("lt", 2, tuples)
        .expect("valid tuples");
    m
}

/// The directed cycle `m1 -> m2 -> .. -> mN -> m1` as a relation `edge`.
pub fn directed_cycle(n: usize) -> FiniteStructure {
    let mut m = FiniteStructure::new(names(n)).expect("non-empty universe");
    let tuples = (0..n).map(|i| vec![i, (i + 1) % n]);
    m.add_relation_indices("edge", 2, tuples)
        .expect("valid tuples");
    m
}

pub fn singleton() -> FiniteStructure {
    pure(1, &[])
}
