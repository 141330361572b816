use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A relation symbol's interpretation, tuples stored as element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

/// A finite relational structure with constants and a parameter set `B`.
///
/// Elements are referred to by name at the boundary and by their position in
/// the universe everywhere else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    universe: Vec<String>,
    index: HashMap<String, usize>,
    relations: BTreeMap<String, Relation>,
    constants: BTreeMap<String, usize>,
    parameters: BTreeSet<usize>,
}

impl FiniteStructure {
    pub fn new<S: Into<String>>(universe: impl IntoIterator<Item = S>) -> Result<Self> {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        if universe.is_empty() {
            return Err(Error::InvalidStructure("universe is empty".into()));
        }
        let mut index = HashMap::with_capacity(universe.len());
        for (i, name) in universe.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidStructure(format!(
                    "element `{name}` is listed twice"
                )));
            }
        }
        Ok(FiniteStructure {
            universe,
            index,
            relations: BTreeMap::new(),
            constants: BTreeMap::new(),
            parameters: BTreeSet::new(),
        })
    }

    pub fn add_relation<S: AsRef<str>>(
        &mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<S>>,
    ) -> Result<()> {
        let tuples = tuples
            .into_iter()
            .map(|t| t.iter().map(|e| self.element(e.as_ref())).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        self.add_relation_indices(name, arity, tuples)
    }

    pub fn add_relation_indices(
        &mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<()> {
        if arity == 0 {
            return Err(Error::InvalidStructure(format!(
                "relation `{name}` has arity 0"
            )));
        }
        if self.relations.contains_key(name) {
            return Err(Error::InvalidStructure(format!(
                "relation `{name}` is declared twice"
            )));
        }
        let mut set = BTreeSet::new();
        for t in tuples {
            if t.len() != arity {
                return Err(Error::InvalidStructure(format!(
                    "relation `{name}` has arity {arity} but contains a tuple of length {}",
                    t.len()
                )));
            }
            if let Some(&bad) = t.iter().find(|&&e| e >= self.universe.len()) {
                return Err(Error::InvalidStructure(format!(
                    "relation `{name}` mentions element index {bad} outside the universe"
                )));
            }
            set.insert(t);
        }
        self.relations
            .insert(name.to_string(), Relation { arity, tuples: set });
        Ok(())
    }

    pub fn add_constant(&mut self, name: &str, element: &str) -> Result<()> {
        let e = self.element(element)?;
        if self.constants.insert(name.to_string(), e).is_some() {
            return Err(Error::InvalidStructure(format!(
                "constant `{name}` is declared twice"
            )));
        }
        Ok(())
    }

    pub fn set_parameters<S: AsRef<str>>(
        &mut self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<()> {
        self.parameters = names
            .into_iter()
            .map(|n| self.element(n.as_ref()))
            .collect::<Result<_>>()?;
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn name(&self, element: usize) -> &str {
        &self.universe[element]
    }

    pub fn names(&self, tuple: &[usize]) -> Vec<String> {
        tuple.iter().map(|&e| self.universe[e].clone()).collect()
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn elements<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.element(n.as_ref())).collect()
    }

    pub fn relations(&self) -> &BTreeMap<String, Relation> {
        &self.relations
    }

    pub fn constants(&self) -> &BTreeMap<String, usize> {
        &self.constants
    }

    pub fn parameters(&self) -> &BTreeSet<usize> {
        &self.parameters
    }

    /// Elements every automorphism must fix: parameters and constants.
    pub fn fixed_elements(&self) -> BTreeSet<usize> {
        self.parameters
            .iter()
            .chain(self.constants.values())
            .copied()
            .collect()
    }

    /// Whether `perm` (with `perm[i]` the image of `i`) is an automorphism
    /// over the parameters.
    pub fn preserves(&self, perm: &[usize]) -> bool {
        if perm.len() != self.size() {
            return false;
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        self.fixed_elements().iter().all(|&e| perm[e] == e)
            && self.relations.values().all(|r| {
                r.tuples.iter().all(|t| {
                    let image: Vec<usize> = t.iter().map(|&e| perm[e]).collect();
                    r.tuples.contains(&image)
                })
            })
    }

    /// The structure keeping only the named symbols, over a smaller parameter set.
    pub fn reduct<S: AsRef<str>>(
        &self,
        keep_relations: &[S],
        keep_constants: &[S],
        parameters: &[S],
    ) -> Result<FiniteStructure> {
        let mut out = FiniteStructure::new(self.universe.clone())?;
        for name in keep_relations {
            let name = name.as_ref();
            let r = self
                .relations
                .get(name)
                .ok_or_else(|| Error::UnknownRelation(name.to_string()))?;
            out.relations.insert(name.to_string(), r.clone());
        }
        for name in keep_constants {
            let name = name.as_ref();
            let c = self
                .constants
                .get(name)
                .ok_or_else(|| Error::UnknownConstant(name.to_string()))?;
            out.constants.insert(name.to_string(), *c);
        }
        for p in parameters {
            let e = self.element(p.as_ref())?;
            if !self.parameters.contains(&e) {
                return Err(Error::ParameterNotInBase(p.as_ref().to_string()));
            }
            out.parameters.insert(e);
        }
        Ok(out)
    }

    /// A copy with extra parameters added to `B`.
    pub fn with_extra_parameters(&self, extra: &[usize]) -> FiniteStructure {
        let mut out = self.clone();
        out.parameters.extend(extra.iter().copied());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_input() {
        assert!(FiniteStructure::new(Vec::<String>::new()).is_err());
        assert!(FiniteStructure::new(["a", "a"]).is_err());
        let mut m = FiniteStructure::new(["a", "b"]).unwrap();
        assert!(m.add_relation("R", 2, [vec!["a"]]).is_err());
        assert_eq!(
            m.add_relation("S", 1, [vec!["c"]]).unwrap_err(),
            Error::UnknownElement("c".into())
        );
        assert!(m.add_constant("k", "z").is_err());
    }

    #[test]
    fn reduct_checks_names_and_parameters() {
        let mut m = FiniteStructure::new(["a", "b"]).unwrap();
        m.add_relation("R", 1, [vec!["a"]]).unwrap();
        m.set_parameters(["a"]).unwrap();
        assert!(m.reduct(&["R"], &[], &["a"]).is_ok());
        assert_eq!(
            m.reduct(&["Q"], &[], &[]).unwrap_err(),
            Error::UnknownRelation("Q".into())
        );
        assert_eq!(
            m.reduct::<&str>(&[], &[], &["b"]).unwrap_err(),
            Error::ParameterNotInBase("b".into())
        );
    }
}
