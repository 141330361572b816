use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::automorphism::{automorphisms, AutomorphismGroup, Limits};
use super::finite::FiniteStructure;
use crate::error::{Error, Result};
use crate::simplicial::{IndexClass, IndexMap, LevelAction, TruncatedFunctor};

/// Orbits of `Aut(M/B)` on `Mⁿ` for `1 <= n <= depth`.
///
/// For a finite structure two tuples have the same type over `B` exactly when
/// an automorphism fixing `B` carries one to the other, so orbits are the
/// complete types. Finite type spaces are discrete: every invariant set of
/// types is clopen, and invariant and definable coincide.
///
/// Tuples are identified by `Σ a_i · |M|^(n-i)`. Each orbit is represented by
/// its least tuple, and orbit identifiers follow the order of representatives.
/// Cloning is cheap.
#[derive(Clone)]
pub struct TypeSpace {
    inner: Arc<Inner>,
}

struct Inner {
    structure: FiniteStructure,
    group: AutomorphismGroup,
    levels: Vec<Level>,
    functor: TruncatedFunctor,
}

struct Level {
    lookup: Vec<u32>,
    representatives: Vec<Vec<usize>>,
    sizes: Vec<u64>,
}

struct OrbitTables {
    universe: usize,
    levels: Vec<(Vec<u32>, Vec<Vec<usize>>)>,
}

impl OrbitTables {
    fn encode(&self, tuple: impl Iterator<Item = usize>) -> usize {
        tuple.fold(0, |acc, a| acc * self.universe + a)
    }
}

impl LevelAction for OrbitTables {
    fn level_size(&self, n: usize) -> usize {
        self.levels[n - 1].1.len()
    }

    fn act(&self, s: &IndexMap, x: usize) -> usize {
        let rep = &self.levels[s.target() - 1].1[x];
        let id = self.encode(s.values().iter().map(|&i| rep[i]));
        self.levels[s.source() - 1].0[id] as usize
    }

    fn max_depth(&self) -> usize {
        self.levels.len()
    }

    fn symmetric(&self) -> bool {
        true
    }
}

impl std::fmt::Debug for TypeSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TypeSpace")
            .field("universe", &self.inner.structure.universe())
            .field("orbit_counts", &self.orbit_counts())
            .finish()
    }
}

impl TypeSpace {
    /// Compute the automorphism group and the orbits up to `depth`.
    pub fn build(structure: &FiniteStructure, depth: usize, limits: &Limits) -> Result<Self> {
        let group = automorphisms(structure, limits)?;
        Self::with_group(structure.clone(), group, depth, limits)
    }

    pub fn with_group(
        structure: FiniteStructure,
        group: AutomorphismGroup,
        depth: usize,
        limits: &Limits,
    ) -> Result<Self> {
        if depth == 0 {
            return Err(Error::LevelOutOfRange { level: 0, max: 0 });
        }
        let u = structure.size();
        for n in 1..=depth {
            let tuples = (u as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            if tuples > limits.tuple_budget || tuples > u32::MAX as u128 {
                return Err(Error::BudgetExceeded {
                    level: n,
                    tuples,
                    budget: limits.tuple_budget,
                });
            }
        }
        let levels: Vec<Level> = (1..=depth)
            .map(|n| orbit_level(u, n, group.generators()))
            .collect();
        let tables = OrbitTables {
            universe: u,
            levels: levels
                .iter()
                .map(|l| (l.lookup.clone(), l.representatives.clone()))
                .collect(),
        };
        let functor = TruncatedFunctor::from_action(Arc::new(tables), depth, IndexClass::All)?;
        check_well_defined(u, &levels)?;
        Ok(TypeSpace {
            inner: Arc::new(Inner {
                structure,
                group,
                levels,
                functor,
            }),
        })
    }

    pub fn structure(&self) -> &FiniteStructure {
        &self.inner.structure
    }

    pub fn group(&self) -> &AutomorphismGroup {
        &self.inner.group
    }

    pub fn depth(&self) -> usize {
        self.inner.levels.len()
    }

    /// The type space as a functor on all finite maps, at full depth.
    pub fn functor_view(&self) -> &TruncatedFunctor {
        &self.inner.functor
    }

    /// The functor view truncated to `depth`.
    pub fn functor(&self, depth: usize) -> Result<TruncatedFunctor> {
        self.inner.functor.truncate(depth)
    }

    fn level(&self, n: usize) -> Result<&Level> {
        if n == 0 || n > self.depth() {
            return Err(Error::LevelOutOfRange {
                level: n,
                max: self.depth(),
            });
        }
        Ok(&self.inner.levels[n - 1])
    }

    pub fn orbit_count(&self, n: usize) -> usize {
        self.inner.levels[n - 1].representatives.len()
    }

    pub fn orbit_counts(&self) -> Vec<usize> {
        (1..=self.depth()).map(|n| self.orbit_count(n)).collect()
    }

    pub fn tuple_id(&self, tuple: &[usize]) -> usize {
        let u = self.inner.structure.size();
        tuple.iter().fold(0, |acc, &a| acc * u + a)
    }

    /// Orbit identifier of a tuple of element indices.
    pub fn orbit_of(&self, tuple: &[usize]) -> Result<usize> {
        let level = self.level(tuple.len())?;
        let u = self.inner.structure.size();
        if let Some(&bad) = tuple.iter().find(|&&e| e >= u) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(level.lookup[self.tuple_id(tuple)] as usize)
    }

    pub fn orbit_of_names<S: AsRef<str>>(&self, tuple: &[S]) -> Result<usize> {
        let elements = self.inner.structure.elements(tuple)?;
        self.orbit_of(&elements)
    }

    /// Least tuple of an orbit.
    pub fn representative(&self, n: usize, orbit: usize) -> &[usize] {
        &self.inner.levels[n - 1].representatives[orbit]
    }

    pub fn representatives(&self, n: usize) -> &[Vec<usize>] {
        &self.inner.levels[n - 1].representatives
    }

    pub fn orbit_size(&self, n: usize, orbit: usize) -> u64 {
        self.inner.levels[n - 1].sizes[orbit]
    }

    /// `(1/|G|) Σ_g |Fix(g)|ⁿ`, summed over the whole group.
    pub fn burnside_count(&self, n: usize) -> u128 {
        burnside(&self.inner.group, n)
    }
}

pub fn burnside(group: &AutomorphismGroup, n: usize) -> u128 {
    let total: u128 = group
        .elements()
        .iter()
        .map(|g| {
            let fixed = g.iter().enumerate().filter(|(i, &j)| *i == j).count() as u128;
            fixed.pow(n as u32)
        })
        .sum();
    total / group.order() as u128
}

fn orbit_level(u: usize, n: usize, generators: &[Vec<usize>]) -> Level {
    let count = u.pow(n as u32);
    let mut uf = UnionFind::<u32>::new(count);
    let mut digits = vec![0usize; n];
    for id in 0..count {
        for g in generators {
            let image = digits.iter().fold(0, |acc, &a| acc * u + g[a]);
            uf.union(id as u32, image as u32);
        }
        // advance the digit odometer to the tuple of id + 1
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < u {
                break;
            }
            *d = 0;
        }
    }
    let mut orbit_of_root = vec![u32::MAX; count];
    let mut lookup = vec![0u32; count];
    let mut representatives = Vec::new();
    let mut sizes: Vec<u64> = Vec::new();
    for (id, slot) in lookup.iter_mut().enumerate() {
        let root = uf.find_mut(id as u32) as usize;
        if orbit_of_root[root] == u32::MAX {
            orbit_of_root[root] = representatives.len() as u32;
            representatives.push(decode(u, n, id));
            sizes.push(0);
        }
        let orbit = orbit_of_root[root];
        *slot = orbit;
        sizes[orbit as usize] += 1;
    }
    Level {
        lookup,
        representatives,
        sizes,
    }
}

/// The orbit action substitutes into representatives, so it is functorial as
/// soon as it does not depend on the representative. Checking every tuple
/// against each generating map suffices, since generating maps compose to
/// every map between levels within depth.
fn check_well_defined(u: usize, levels: &[Level]) -> Result<()> {
    let depth = levels.len();
    for n in 1..=depth {
        let level = &levels[n - 1];
        for s in IndexMap::generators_into(n, depth, IndexClass::All) {
            let pulled = &levels[s.source() - 1].lookup;
            for (id, &orbit) in level.lookup.iter().enumerate() {
                let tuple = decode(u, n, id);
                let rep = &level.representatives[orbit as usize];
                let via_tuple = s.values().iter().fold(0, |acc, &i| acc * u + tuple[i]);
                let via_rep = s.values().iter().fold(0, |acc, &i| acc * u + rep[i]);
                if pulled[via_tuple] != pulled[via_rep] {
                    return Err(Error::InvalidStructure(format!(
                        "orbit action depends on the representative for {s:?} at tuple {tuple:?}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn decode(u: usize, n: usize, mut id: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = id % u;
        id /= u;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::catalog;

    fn space(m: &FiniteStructure, depth: usize) -> TypeSpace {
        TypeSpace::build(m, depth, &Limits::default()).unwrap()
    }

    #[test]
    fn orbit_counts_match_burnside() {
        let t = space(&catalog::pure(3, &[]), 3);
        assert_eq!(t.orbit_counts(), vec![1, 2, 5]);
        for n in 1..=3 {
            assert_eq!(t.burnside_count(n), t.orbit_count(n) as u128);
        }
        assert_eq!(
            space(&catalog::pure(4, &["m1"]), 2).orbit_counts(),
            vec![2, 5]
        );
        assert_eq!(space(&catalog::chain(3), 2).orbit_counts(), vec![3, 9]);
    }

    #[test]
    fn lookup_examples() {
        let t = space(&catalog::pure(4, &["m1"]), 2);
        assert_eq!(
            t.orbit_of_names(&["m2", "m3"]).unwrap(),
            t.orbit_of_names(&["m3", "m4"]).unwrap()
        );
        let c = space(&catalog::directed_cycle(4), 2);
        assert_ne!(
            c.orbit_of_names(&["m1", "m2"]).unwrap(),
            c.orbit_of_names(&["m1", "m3"]).unwrap()
        );
        assert!(c.orbit_of(&[0, 0, 0]).is_err());
        assert!(c.orbit_of_names(&["m9"]).is_err());
    }

    #[test]
    fn budget_reports_level() {
        let limits = Limits {
            max_universe: 8,
            tuple_budget: 100,
        };
        let err = TypeSpace::build(&catalog::pure(5, &[]), 3, &limits).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { level: 3, .. }));
    }
}
