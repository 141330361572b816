use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::simplicial::{
    decalage, solve_lifting, IndexClass, IndexMap, LiftingProblem, NaturalTransformation, Outcome,
    Section, SolveMode,
};
use crate::structure::TypeSpace;

/// A coherent choice `π_n: Sₙ(B) -> S_{n+1}(B)`, `1 <= n <= depth`, of an
/// extension of every type by one new least coordinate.
///
/// Holds a natural transformation from the depth-`d` truncation of the type
/// space into its decalage, with `pr_tail ∘ π = id`.
#[derive(Clone, Debug)]
pub struct SectionFamily {
    space: TypeSpace,
    map: NaturalTransformation,
    head: usize,
}

impl SectionFamily {
    /// Validate component tables against the fiber condition, naturality and
    /// the constant head.
    pub fn new(space: &TypeSpace, components: Vec<Vec<usize>>) -> Result<Self> {
        let d = components.len();
        require_depth(space, d + 1)?;
        let source = space.functor(d)?;
        let target = space.functor(d + 1)?.shift(1)?;
        let map = NaturalTransformation::new(source, target, components)?;
        let functor = space.functor_view();
        for n in 1..=d {
            let tail = functor.action_table(&IndexMap::tail_inclusion(n));
            for (r, &y) in map.component(n).iter().enumerate() {
                if tail[y] != r {
                    return Err(Error::FiberViolation {
                        level: n,
                        element: r,
                    });
                }
            }
        }
        map.verify_naturality().into_result()?;
        let mut head = None;
        for n in 1..=d {
            let heads = functor.action_table(&IndexMap::head_inclusion(n));
            for (r, &y) in map.component(n).iter().enumerate() {
                match head {
                    None => head = Some(heads[y]),
                    Some(h) if h != heads[y] => {
                        return Err(Error::HeadNotConstant {
                            level: n,
                            element: r,
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(SectionFamily {
            space: space.clone(),
            map,
            head: head.expect("level 1 is non-empty"),
        })
    }

    pub fn space(&self) -> &TypeSpace {
        &self.space
    }

    pub fn depth(&self) -> usize {
        self.map.depth()
    }

    pub fn transformation(&self) -> &NaturalTransformation {
        &self.map
    }

    pub fn component(&self, n: usize) -> &[usize] {
        self.map.component(n)
    }

    /// `π_n(r)`.
    pub fn pi(&self, n: usize, r: usize) -> usize {
        self.map.apply(n, r)
    }

    /// The common 1-type of the new coordinate.
    pub fn head(&self) -> usize {
        self.head
    }

    pub fn same_as(&self, other: &SectionFamily) -> bool {
        self.map.same_components(&other.map)
    }
}

pub(crate) fn require_depth(space: &TypeSpace, needed: usize) -> Result<()> {
    if space.depth() < needed {
        return Err(Error::InsufficientDepth {
            missing: needed,
            available: space.depth(),
        });
    }
    Ok(())
}

/// An element whose type over every tuple depends only on the tuple's type,
/// i.e. whose global type is invariant over `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalTypeWitness {
    pub element: usize,
    pub name: String,
}

/// Check that `orbit(a·c̄)` is constant on orbits of `c̄` for levels
/// `1..=through`. The error names the first level, representative and
/// automorphism breaking it.
pub fn check_invariance(space: &TypeSpace, a: usize, through: usize) -> Result<()> {
    let structure = space.structure();
    if a >= structure.size() {
        return Err(Error::UnknownElement(format!("#{a}")));
    }
    require_depth(space, through + 1)?;
    let mut extended = Vec::new();
    for n in 1..=through {
        for rep in space.representatives(n) {
            extended.clear();
            extended.push(a);
            extended.extend_from_slice(rep);
            let expected = space.orbit_of(&extended)?;
            for g in space.group().elements() {
                extended.truncate(1);
                extended.extend(rep.iter().map(|&c| g[c]));
                if space.orbit_of(&extended)? != expected {
                    return Err(Error::NotInvariant {
                        element: structure.name(a).to_string(),
                        level: n,
                        tuple: structure.names(rep),
                        automorphism: structure.names(g),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The family `r ↦ tp(a, c̄)` for `c̄` realizing `r`.
pub fn section_from_witness(space: &TypeSpace, a: usize, depth: usize) -> Result<SectionFamily> {
    check_invariance(space, a, depth)?;
    let components = (1..=depth)
        .map(|n| {
            space
                .representatives(n)
                .iter()
                .map(|rep| {
                    let mut t = Vec::with_capacity(n + 1);
                    t.push(a);
                    t.extend_from_slice(rep);
                    space.orbit_of(&t)
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SectionFamily::new(space, components)
}

/// Elements passing the invariance condition on every level below the
/// type-space depth, in universe order.
pub fn invariant_witnesses(space: &TypeSpace) -> Vec<GlobalTypeWitness> {
    let through = space.depth() - 1;
    (0..space.structure().size())
        .filter(|&a| check_invariance(space, a, through).is_ok())
        .map(|a| GlobalTypeWitness {
            element: a,
            name: space.structure().name(a).to_string(),
        })
        .collect()
}

/// The lifting problem whose sections are depth-`d` families:
/// `pr_tail: Dec(T|d+1) -> T|d` against the identity.
pub fn family_problem(
    space: &TypeSpace,
    depth: usize,
    class: IndexClass,
) -> Result<LiftingProblem> {
    require_depth(space, depth + 1)?;
    let functor = space.functor(depth + 1)?.with_class(class)?;
    let dec = decalage(&functor)?;
    let base = functor.truncate(depth)?;
    LiftingProblem::new(dec.tail, NaturalTransformation::identity(&base))
}

/// Families found by the lifting solver over the given index class.
pub fn enumerate_coherent_families_in(
    space: &TypeSpace,
    depth: usize,
    class: IndexClass,
    mode: SolveMode,
) -> Result<Outcome<Section>> {
    solve_lifting(&family_problem(space, depth, class)?, mode)
}

pub fn enumerate_coherent_families(
    space: &TypeSpace,
    depth: usize,
    mode: SolveMode,
) -> Result<Outcome<SectionFamily>> {
    enumerate_coherent_families_in(space, depth, IndexClass::All, mode)?
        .try_map(|s| SectionFamily::new(space, s.transformation().components().to_vec()))
}

#[derive(Clone, Debug)]
pub struct BijectionReport {
    pub depth: usize,
    pub witness_count: usize,
    pub family_count: usize,
    /// For each witness, the index of its family among the enumerated ones.
    pub pairing: Vec<(GlobalTypeWitness, Option<usize>)>,
    pub matched: bool,
}

/// Compare invariant witnesses with coherent families at full depth
/// `d = |universe|`.
///
/// At full depth a family is determined by its value on the type of an
/// enumeration of the universe, which pins down a realizing element.
pub fn bijection_check(space: &TypeSpace) -> Result<BijectionReport> {
    let depth = space.structure().size();
    require_depth(space, depth + 1)?;
    let families = enumerate_coherent_families(space, depth, SolveMode::Enumerate)?.into_sections();
    let witnesses = invariant_witnesses(space);
    let mut hit = vec![false; families.len()];
    let mut injective = true;
    let mut pairing = Vec::with_capacity(witnesses.len());
    for w in witnesses {
        let family = section_from_witness(space, w.element, depth)?;
        let index = families.iter().position(|f| f.same_as(&family));
        if let Some(i) = index {
            injective &= !std::mem::replace(&mut hit[i], true);
        }
        pairing.push((w, index));
    }
    let matched = injective && pairing.iter().all(|(_, i)| i.is_some()) && hit.iter().all(|&h| h);
    Ok(BijectionReport {
        depth,
        witness_count: pairing.len(),
        family_count: families.len(),
        pairing,
        matched,
    })
}

/// Preimages under a family: the definition of the type it encodes. At
/// finite scale every set of types is clopen, so sets of orbits stand in for
/// formulas.
#[derive(Clone, Debug)]
pub struct DefinitionScheme {
    family: SectionFamily,
}

impl DefinitionScheme {
    pub fn new(family: SectionFamily) -> Self {
        DefinitionScheme { family }
    }

    pub fn family(&self) -> &SectionFamily {
        &self.family
    }

    /// `π_n⁻¹(U)` for `U` a set of `(n+1)`-types.
    pub fn pullback(&self, n: usize, set: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        if n == 0 || n > self.family.depth() {
            return Err(Error::LevelOutOfRange {
                level: n,
                max: self.family.depth(),
            });
        }
        Ok(self
            .family
            .component(n)
            .iter()
            .enumerate()
            .filter(|(_, y)| set.contains(y))
            .map(|(r, _)| r)
            .collect())
    }

    /// Whether the pullback at level `n` respects union, intersection and
    /// complement on the given pair of sets.
    pub fn respects_boolean_operations(
        &self,
        n: usize,
        a: &BTreeSet<usize>,
        b: &BTreeSet<usize>,
    ) -> Result<bool> {
        let space = self.family.space();
        let upper: BTreeSet<usize> = (0..space.orbit_count(n + 1)).collect();
        let lower: BTreeSet<usize> = (0..space.orbit_count(n)).collect();
        let pa = self.pullback(n, a)?;
        let pb = self.pullback(n, b)?;
        let union = self.pullback(n, &a.union(b).copied().collect())?;
        let meet = self.pullback(n, &a.intersection(b).copied().collect())?;
        let complement = self.pullback(n, &upper.difference(a).copied().collect())?;
        Ok(union == pa.union(&pb).copied().collect()
            && meet == pa.intersection(&pb).copied().collect()
            && complement == lower.difference(&pa).copied().collect())
    }
}

pub fn definition_scheme(family: &SectionFamily) -> DefinitionScheme {
    DefinitionScheme::new(family.clone())
}
