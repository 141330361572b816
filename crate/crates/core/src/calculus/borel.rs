use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;

use super::family::require_depth;
use crate::error::{Error, Result};
use crate::structure::{compose, inverse, Limits, Permutation, TypeSpace};

/// How `(x, g₁..gₙ) ↦ (x, x·g₁⁻¹, .., x·gₙ⁻¹)` is read.
///
/// The four literal readings combine a point action (`x·h = h(x)` or
/// `x·h = h⁻¹(x)`) with a product (`a·b = b∘a` or `a·b = a∘b`); classes are
/// taken under `(x, ḡ)·g = (x·g, g₁·g, .., gₙ·g)` in the same reading.
/// `Normalized` uses the first reading and evaluates the formula on the class
/// member with `g₁ = e`, giving `(x·g₁⁻¹, x·g₁⁻¹, x·g₂⁻¹, .., x·gₙ⁻¹)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BorelConvention {
    EvaluateThen,
    EvaluateCompose,
    InverseThen,
    InverseCompose,
    Normalized,
}

impl BorelConvention {
    pub const CANDIDATES: [BorelConvention; 5] = [
        BorelConvention::EvaluateThen,
        BorelConvention::EvaluateCompose,
        BorelConvention::InverseThen,
        BorelConvention::InverseCompose,
        BorelConvention::Normalized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BorelConvention::EvaluateThen => "evaluate-then",
            BorelConvention::EvaluateCompose => "evaluate-compose",
            BorelConvention::InverseThen => "inverse-then",
            BorelConvention::InverseCompose => "inverse-compose",
            BorelConvention::Normalized => "normalized",
        }
    }

    fn point(self, h: &[usize], x: usize) -> usize {
        match self {
            BorelConvention::InverseThen | BorelConvention::InverseCompose => {
                h.iter().position(|&y| y == x).expect("permutation")
            }
            _ => h[x],
        }
    }

    /// `a·b` as a permutation.
    fn product(self, a: &[usize], b: &[usize]) -> Permutation {
        match self {
            BorelConvention::EvaluateCompose | BorelConvention::InverseCompose => compose(a, b),
            _ => compose(b, a),
        }
    }

    fn image(self, x: usize, gs: &[&[usize]]) -> Vec<usize> {
        match self {
            BorelConvention::Normalized => match gs.first() {
                None => vec![x],
                Some(first) => {
                    let anchor = self.point(&inverse(first), x);
                    std::iter::once(anchor)
                        .chain(gs.iter().map(|g| self.point(&inverse(g), x)))
                        .collect()
                }
            },
            _ => std::iter::once(x)
                .chain(gs.iter().map(|g| self.point(&inverse(g), x)))
                .collect(),
        }
    }
}

/// The reading used for the comparison map. It is the first candidate that
/// is constant on classes for every catalog structure at `n <= 2`.
pub const BOREL_CONVENTION: BorelConvention = BorelConvention::Normalized;

#[derive(Clone, Debug)]
pub struct BorelReport {
    pub level: usize,
    pub convention: BorelConvention,
    /// Class invariance of each candidate on this space.
    pub candidates: Vec<(BorelConvention, bool)>,
    pub class_count: usize,
    /// Least member of each class as `(x, group element indices)`.
    pub class_representatives: Vec<(usize, Vec<usize>)>,
    /// Type of the image of each class, at level `n + 1`.
    pub map: Vec<usize>,
    pub well_defined: bool,
    /// Every coordinate of every image tuple has the type of `x`.
    pub image_property: bool,
}

struct Classes {
    lookup: Vec<usize>,
    representatives: Vec<usize>,
}

struct Points<'a> {
    space: &'a TypeSpace,
    group: &'a [Permutation],
    level: usize,
}

impl Points<'_> {
    fn count(&self) -> usize {
        self.space.structure().size() * self.group.len().pow(self.level as u32)
    }

    fn decode(&self, mut id: usize) -> (usize, Vec<usize>) {
        let order = self.group.len();
        let mut gs = vec![0; self.level];
        for slot in gs.iter_mut().rev() {
            *slot = id % order;
            id /= order;
        }
        (id, gs)
    }

    fn encode(&self, x: usize, gs: &[usize]) -> usize {
        let order = self.group.len();
        gs.iter().fold(x, |acc, &g| acc * order + g)
    }

    fn index_of(&self, p: &[usize]) -> usize {
        self.group
            .binary_search_by(|q| q.as_slice().cmp(p))
            .expect("closed under products")
    }

    /// Orbits of the translation action in the given reading, using the
    /// group's generators.
    fn classes(&self, convention: BorelConvention) -> Classes {
        let count = self.count();
        let generators: Vec<&Permutation> = self.space.group().generators().iter().collect();
        let mut uf = UnionFind::<usize>::new(count);
        for id in 0..count {
            let (x, gs) = self.decode(id);
            for s in &generators {
                let moved: Vec<usize> = gs
                    .iter()
                    .map(|&g| self.index_of(&convention.product(&self.group[g], s)))
                    .collect();
                uf.union(id, self.encode(convention.point(s, x), &moved));
            }
        }
        let mut class_of_root = vec![usize::MAX; count];
        let mut lookup = vec![0; count];
        let mut representatives = Vec::new();
        for (id, slot) in lookup.iter_mut().enumerate() {
            let root = uf.find_mut(id);
            if class_of_root[root] == usize::MAX {
                class_of_root[root] = representatives.len();
                representatives.push(id);
            }
            *slot = class_of_root[root];
        }
        Classes {
            lookup,
            representatives,
        }
    }

    fn image_type(&self, convention: BorelConvention, id: usize) -> usize {
        let (x, gs) = self.decode(id);
        let perms: Vec<&[usize]> = gs.iter().map(|&g| self.group[g].as_slice()).collect();
        self.space
            .orbit_of(&convention.image(x, &perms))
            .expect("within depth")
    }

    fn invariant(&self, convention: BorelConvention, classes: &Classes) -> bool {
        (0..self.count()).all(|id| {
            let rep = classes.representatives[classes.lookup[id]];
            self.image_type(convention, id) == self.image_type(convention, rep)
        })
    }
}

/// Compare `Mⁿ⁺¹`-types with classes of `M × Gⁿ` under translation.
pub fn borel(space: &TypeSpace, level: usize, limits: &Limits) -> Result<BorelReport> {
    require_depth(space, level + 1)?;
    let points = Points {
        space,
        group: space.group().elements(),
        level,
    };
    let raw = (space.structure().size() as u128)
        .saturating_mul((points.group.len() as u128).saturating_pow(level as u32));
    if raw > limits.tuple_budget {
        return Err(Error::BudgetExceeded {
            level,
            tuples: raw,
            budget: limits.tuple_budget,
        });
    }
    let candidates: Vec<(BorelConvention, bool)> = BorelConvention::CANDIDATES
        .iter()
        .map(|&c| {
            let classes = if c == BorelConvention::Normalized {
                points.classes(BorelConvention::EvaluateThen)
            } else {
                points.classes(c)
            };
            (c, points.invariant(c, &classes))
        })
        .collect();
    let classes = points.classes(BorelConvention::EvaluateThen);
    let map: Vec<usize> = classes
        .representatives
        .iter()
        .map(|&id| points.image_type(BOREL_CONVENTION, id))
        .collect();
    let well_defined = candidates
        .iter()
        .any(|&(c, ok)| c == BOREL_CONVENTION && ok);
    let image_property = (0..points.count()).all(|id| {
        let (x, gs) = points.decode(id);
        let perms: Vec<&[usize]> = gs.iter().map(|&g| points.group[g].as_slice()).collect();
        let types: BTreeSet<usize> = BOREL_CONVENTION
            .image(x, &perms)
            .into_iter()
            .map(|y| space.orbit_of(&[y]).expect("element"))
            .collect();
        types.len() == 1
    });
    Ok(BorelReport {
        level,
        convention: BOREL_CONVENTION,
        candidates,
        class_count: classes.representatives.len(),
        class_representatives: classes
            .representatives
            .iter()
            .map(|&id| points.decode(id))
            .collect(),
        map,
        well_defined,
        image_property,
    })
}

/// The first candidate that is class-invariant on every given space at every
/// level up to `max_level`.
pub fn select_borel_convention(
    spaces: &[TypeSpace],
    max_level: usize,
    limits: &Limits,
) -> Result<Option<BorelConvention>> {
    let mut ok = [true; 5];
    for space in spaces {
        for level in 0..=max_level.min(space.depth() - 1) {
            let report = borel(space, level, limits)?;
            for (i, &(_, invariant)) in report.candidates.iter().enumerate() {
                ok[i] &= invariant;
            }
        }
    }
    Ok(BorelConvention::CANDIDATES
        .iter()
        .zip(ok)
        .find(|(_, ok)| *ok)
        .map(|(&c, _)| c))
}
