use petgraph::unionfind::UnionFind;

use super::SimplicialSet;
use crate::error::{Error, Result};
use crate::simplicial::{
    decalage, solve_lifting, LiftingProblem, NaturalTransformation, Outcome, SolveMode,
};

/// Vertex classes under the edges of `X₁`, each sorted, ordered by least
/// vertex.
pub fn components(set: &SimplicialSet) -> Vec<Vec<usize>> {
    let vertices = set.count(0);
    let mut uf = UnionFind::<usize>::new(vertices);
    if set.dimension() >= 1 {
        for e in 0..set.count(1) {
            uf.union(set.face(1, 0, e), set.face(1, 1, e));
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of_root = vec![usize::MAX; vertices];
    for v in 0..vertices {
        let root = uf.find_mut(v);
        if class_of_root[root] == usize::MAX {
            class_of_root[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of_root[root]].push(v);
    }
    classes
}

#[derive(Clone, Debug)]
pub struct ComponentProbe {
    pub vertices: Vec<usize>,
    pub section_exists: bool,
    pub failure_level: Option<usize>,
}

/// Outcome of the extra-degeneracy search through a given depth. A missing
/// section is a genuine obstruction; a found one only certifies the
/// truncation.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub depth: usize,
    pub section_exists: bool,
    /// `σ_n: X_n -> X_{n+1}` for `n < depth`, as a natural transformation
    /// into the decalage.
    pub witness: Option<NaturalTransformation>,
    /// Dimension `n` of the deepest `X_n` the search assigned before failing.
    pub failure_level: Option<usize>,
    pub per_component: Vec<ComponentProbe>,
}

fn probe_whole(
    set: &SimplicialSet,
    depth: usize,
) -> Result<(Option<NaturalTransformation>, Option<usize>)> {
    let functor = set.functor(depth + 1)?;
    let dec = decalage(&functor)?;
    let base = functor.truncate(depth)?;
    let problem = LiftingProblem::new(dec.tail, NaturalTransformation::identity(&base))?;
    Ok(match solve_lifting(&problem, SolveMode::FindOne)? {
        Outcome::Found(section) => (Some(section.into_transformation()), None),
        Outcome::NoSection { deepest_level } => (None, Some(deepest_level - 1)),
        _ => unreachable!("find-one mode"),
    })
}

/// Search for `σ` with `d₀σ = id`, natural for the remaining operators,
/// on the whole set and on each connected component.
pub fn contractibility_probe(set: &SimplicialSet, depth: usize) -> Result<ProbeReport> {
    if depth == 0 || depth + 1 > set.dimension() {
        return Err(Error::InsufficientDepth {
            missing: depth + 1,
            available: set.dimension(),
        });
    }
    let (witness, failure_level) = probe_whole(set, depth)?;
    let per_component = components(set)
        .into_iter()
        .map(|vertices| {
            let (w, failure_level) = probe_whole(&set.restrict(&vertices)?, depth)?;
            Ok(ComponentProbe {
                vertices,
                section_exists: w.is_some(),
                failure_level,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport {
        depth,
        section_exists: witness.is_some(),
        witness,
        failure_level,
        per_component,
    })
}
