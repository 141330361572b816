use std::collections::{BTreeSet, HashSet};

use super::finite::FiniteStructure;
use crate::error::{Error, Result};

/// Resource bounds shared by every structure computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_universe: usize,
    /// Largest number of tuples enumerated at a single level.
    pub tuple_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_universe: 8,
            tuple_budget: 1_000_000,
        }
    }
}

/// A permutation of the universe, `p[i]` being the image of `i`.
pub type Permutation = Vec<usize>;

/// The full group `Aut(M/B)`, elements in lexicographic order.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl AutomorphismGroup {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// A generating set, used where only the orbits matter.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, perm: &[usize]) -> bool {
        self.elements
            .binary_search_by(|p| p.as_slice().cmp(perm))
            .is_ok()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].len()
    }
}

/// `(p ∘ q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Permutation {
    q.iter().map(|&i| p[i]).collect()
}

pub fn inverse(p: &[usize]) -> Permutation {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn apply(p: &[usize], tuple: &[usize]) -> Vec<usize> {
    tuple.iter().map(|&e| p[e]).collect()
}

/// All automorphisms of `m` fixing its parameters and constants.
///
/// Backtracks over partial bijections in element order. A relation tuple is
/// checked as soon as its largest entry is mapped; checking images only is
/// enough because a bijection mapping a finite relation into itself maps it
/// onto itself.
pub fn automorphisms(m: &FiniteStructure, limits: &Limits) -> Result<AutomorphismGroup> {
    let size = m.size();
    if size > limits.max_universe {
        return Err(Error::UniverseTooLarge {
            size,
            bound: limits.max_universe,
        });
    }
    let fixed = m.fixed_elements();
    let relations: Vec<&BTreeSet<Vec<usize>>> = m.relations().values().map(|r| &r.tuples).collect();
    let mut closing: Vec<Vec<(usize, &[usize])>> = vec![Vec::new(); size];
    for (r, tuples) in relations.iter().enumerate() {
        for t in tuples.iter() {
            let last = *t.iter().max().expect("relations have positive arity");
            closing[last].push((r, t));
        }
    }
    let mut search = Backtrack {
        candidates: (0..size)
            .map(|i| {
                if fixed.contains(&i) {
                    vec![i]
                } else {
                    (0..size).filter(|c| !fixed.contains(c)).collect()
                }
            })
            .collect(),
        closing,
        relations,
        perm: vec![usize::MAX; size],
        used: vec![false; size],
        image: Vec::new(),
        found: Vec::new(),
    };
    search.extend(0);
    let elements = search.found;
    let generators = generating_set(&elements);
    Ok(AutomorphismGroup {
        elements,
        generators,
    })
}

struct Backtrack<'a> {
    candidates: Vec<Vec<usize>>,
    /// Relation tuples whose largest entry is the given element.
    closing: Vec<Vec<(usize, &'a [usize])>>,
    relations: Vec<&'a BTreeSet<Vec<usize>>>,
    perm: Vec<usize>,
    used: Vec<bool>,
    image: Vec<usize>,
    found: Vec<Permutation>,
}

impl Backtrack<'_> {
    fn extend(&mut self, i: usize) {
        if i == self.perm.len() {
            self.found.push(self.perm.clone());
            return;
        }
        for k in 0..self.candidates[i].len() {
            let c = self.candidates[i][k];
            if self.used[c] {
                continue;
            }
            self.perm[i] = c;
            if self.consistent(i) {
                self.used[c] = true;
                self.extend(i + 1);
                self.used[c] = false;
            }
        }
        self.perm[i] = usize::MAX;
    }

    fn consistent(&mut self, i: usize) -> bool {
        let Backtrack {
            closing,
            relations,
            perm,
            image,
            ..
        } = self;
        closing[i].iter().all(|&(r, t)| {
            image.clear();
            image.extend(t.iter().map(|&e| perm[e]));
            relations[r].contains(image.as_slice())
        })
    }
}

/// Greedy generating set: scan elements in order and keep any element not
/// already generated.
fn generating_set(elements: &[Permutation]) -> Vec<Permutation> {
    let mut generators: Vec<Permutation> = Vec::new();
    let mut generated: HashSet<Permutation> = HashSet::new();
    generated.insert(elements[0].clone());
    for g in elements {
        if generated.contains(g) {
            continue;
        }
        generators.push(g.clone());
        let mut frontier: Vec<Permutation> = generated.iter().cloned().collect();
        while let Some(h) = frontier.pop() {
            for s in &generators {
                let next = compose(s, &h);
                if generated.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
    }
    generators
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::catalog;

    #[test]
    fn counts_on_catalog_structures() {
        let limits = Limits::default();
        assert_eq!(
            automorphisms(&catalog::chain(3), &limits).unwrap().order(),
            1
        );
        assert_eq!(
            automorphisms(&catalog::pure(4, &["m1"]), &limits)
                .unwrap()
                .order(),
            6
        );
        assert_eq!(
            automorphisms(&catalog::directed_cycle(4), &limits)
                .unwrap()
                .order(),
            4
        );
        assert_eq!(
            automorphisms(&catalog::pure(5, &[]), &limits)
                .unwrap()
                .order(),
            120
        );
    }

    #[test]
    fn elements_sorted_with_identity_first() {
        let g = automorphisms(&catalog::pure(3, &[]), &Limits::default()).unwrap();
        assert_eq!(g.elements()[0], vec![0, 1, 2]);
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn generators_generate() {
        let g = automorphisms(&catalog::pure(5, &["m2"]), &Limits::default()).unwrap();
        assert!(g.generators().len() <= 3);
        assert_eq!(generating_set(g.elements()), g.generators());
    }

    #[test]
    fn universe_bound() {
        let err = automorphisms(&catalog::pure(9, &[]), &Limits::default()).unwrap_err();
        assert_eq!(err, Error::UniverseTooLarge { size: 9, bound: 8 });
        assert!(err.to_string().contains("--max-universe"));
    }
}
