use std::sync::Arc;

use super::family::SectionFamily;
use crate::error::{Error, Result};
use crate::simplicial::{
    decalage, IndexClass, NaturalTransformation, TruncatedFunctor, TupleAction,
};
use crate::structure::TypeSpace;

/// The map `|A|_• -> S_•(B)` sending a tuple from `A` to its type.
#[derive(Clone, Debug)]
pub struct ParameterDiagram {
    space: TypeSpace,
    subset: Vec<usize>,
    encoding: TupleAction,
    map: NaturalTransformation,
}

impl ParameterDiagram {
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn transformation(&self) -> &NaturalTransformation {
        &self.map
    }

    /// Identifier of a tuple of `A`, given by positions in the subset.
    pub fn encode(&self, positions: &[usize]) -> usize {
        self.encoding.encode(positions)
    }

    /// The elements of a tuple identifier at level `n`.
    pub fn decode(&self, n: usize, id: usize) -> Vec<usize> {
        self.encoding
            .decode(n, id)
            .into_iter()
            .map(|i| self.subset[i])
            .collect()
    }

    pub fn space(&self) -> &TypeSpace {
        &self.space
    }
}

fn normalize_subset(space: &TypeSpace, subset: &[usize]) -> Result<Vec<usize>> {
    let mut out = subset.to_vec();
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&bad) = out.iter().find(|&&e| e >= space.structure().size()) {
        return Err(Error::UnknownElement(format!("#{bad}")));
    }
    Ok(out)
}

pub fn diagram_of(space: &TypeSpace, subset: &[usize]) -> Result<ParameterDiagram> {
    let subset = normalize_subset(space, subset)?;
    let depth = space.depth();
    let encoding = TupleAction::new(subset.len(), depth);
    let source = TruncatedFunctor::from_action(Arc::new(encoding.clone()), depth, IndexClass::All)?;
    let map = NaturalTransformation::from_fn(source, space.functor_view().clone(), |n, x| {
        let tuple: Vec<usize> = encoding
            .decode(n, x)
            .into_iter()
            .map(|i| subset[i])
            .collect();
        space.orbit_of(&tuple).expect("subset lies in the universe")
    })?;
    map.verify_naturality().into_result()?;
    // a parameter is fixed by every automorphism, so it alone realizes its type
    for &b in subset
        .iter()
        .filter(|b| space.structure().parameters().contains(b))
    {
        let orbit = space.orbit_of(&[b])?;
        if space.orbit_size(1, orbit) != 1 {
            return Err(Error::InvalidStructure(format!(
                "parameter `{}` shares its type with other elements",
                space.structure().name(b)
            )));
        }
    }
    Ok(ParameterDiagram {
        space: space.clone(),
        subset,
        encoding,
        map,
    })
}

/// A lifting `|A|_•|d -> Dec(S_•(B))` of a parameter diagram.
#[derive(Clone, Debug)]
pub struct TypeLifting {
    pub diagram: ParameterDiagram,
    pub map: NaturalTransformation,
}

/// The type of `a` over `A`, as the lifting `c̄ ↦ tp(a, c̄)`; composing with
/// `pr_tail` gives back the diagram of `A`.
pub fn type_as_lifting(space: &TypeSpace, a: usize, subset: &[usize]) -> Result<TypeLifting> {
    if a >= space.structure().size() {
        return Err(Error::UnknownElement(format!("#{a}")));
    }
    let diagram = diagram_of(space, subset)?;
    let dec = decalage(space.functor_view())?;
    let d = dec.functor.depth();
    let source = diagram.map.source().truncate(d)?;
    let map = NaturalTransformation::from_fn(source, dec.functor.clone(), |n, x| {
        let mut t = vec![a];
        t.extend(diagram.decode(n, x));
        space.orbit_of(&t).expect("within depth")
    })?;
    map.verify_naturality().into_result()?;
    check_recovers(&dec.tail, &map, &diagram)?;
    Ok(TypeLifting { diagram, map })
}

fn check_recovers(
    tail: &NaturalTransformation,
    lift: &NaturalTransformation,
    diagram: &ParameterDiagram,
) -> Result<()> {
    let back = tail.compose(lift)?;
    if !back.same_components(&diagram.map.truncate(back.depth())?) {
        return Err(Error::Mismatch(
            "the lifting does not project onto the parameter diagram".into(),
        ));
    }
    Ok(())
}

/// Extend the type encoded by `family` from `A` to a larger `A′` by
/// composing with the diagram of `A′`. The result restricts on `A`-tuples to
/// the same composite built from `A`.
pub fn extend_type(
    family: &SectionFamily,
    subset: &[usize],
    superset: &[usize],
) -> Result<TypeLifting> {
    let space = family.space();
    let small = diagram_of(space, subset)?;
    let large = diagram_of(space, superset)?;
    let missing: Vec<usize> = small
        .subset
        .iter()
        .copied()
        .filter(|e| !large.subset.contains(e))
        .collect();
    if !missing.is_empty() {
        return Err(Error::NotASubset(space.structure().names(&missing)));
    }
    let d = family.depth();
    let pi = family.transformation();
    let map = pi.compose(&large.map.truncate(d)?)?;
    let restricted = pi.compose(&small.map.truncate(d)?)?;
    let positions: Vec<usize> = small
        .subset
        .iter()
        .map(|e| large.subset.binary_search(e).expect("checked above"))
        .collect();
    for n in 1..=d {
        for (x, &value) in restricted.component(n).iter().enumerate() {
            let inner: Vec<usize> = small
                .encoding
                .decode(n, x)
                .iter()
                .map(|&i| positions[i])
                .collect();
            if map.apply(n, large.encode(&inner)) != value {
                return Err(Error::Mismatch(format!(
                    "extension disagrees with the original lifting at level {n}"
                )));
            }
        }
    }
    let tail = decalage(&space.functor(d + 1)?)?.tail;
    check_recovers(&tail, &map, &large)?;
    Ok(TypeLifting {
        diagram: large,
        map,
    })
}
