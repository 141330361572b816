use std::fmt;

use crate::error::{Error, Result};

/// Which index maps a functor is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexClass {
    /// Non-decreasing maps only (the simplex category).
    Monotone,
    /// All maps between non-empty finite sets.
    All,
}

impl IndexClass {
    pub fn admits(self, map: &IndexMap) -> bool {
        match self {
            IndexClass::Monotone => map.is_monotone(),
            IndexClass::All => true,
        }
    }

    /// The smaller of two classes.
    pub fn meet(self, other: IndexClass) -> IndexClass {
        self.min(other)
    }
}

/// A map `{1..m} -> {1..n}`, stored zero-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexMap {
    target: usize,
    values: Vec<usize>,
    monotone: bool,
}

impl fmt::Debug for IndexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.values.iter().map(|v| v + 1).collect();
        write!(f, "{}->{}{:?}", self.source(), self.target, one_based)
    }
}

impl IndexMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if target == 0 || values.is_empty() {
            return Err(Error::InvalidIndexMap(
                "source and target must be non-empty".into(),
            ));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= target) {
            return Err(Error::InvalidIndexMap(format!(
                "value {} outside 1..={target}",
                bad + 1
            )));
        }
        Ok(Self::from_parts(target, values))
    }

    fn from_parts(target: usize, values: Vec<usize>) -> Self {
        let monotone = values.windows(2).all(|w| w[0] <= w[1]);
        IndexMap {
            target,
            values,
            monotone,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_parts(n, (0..n).collect())
    }

    pub fn source(&self) -> usize {
        self.values.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    pub fn is_identity(&self) -> bool {
        self.source() == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &IndexMap) -> Result<IndexMap> {
        if inner.target != self.source() {
            return Err(Error::InvalidIndexMap(format!(
                "cannot compose {self:?} after {inner:?}"
            )));
        }
        Ok(Self::from_parts(
            self.target,
            inner.values.iter().map(|&i| self.values[i]).collect(),
        ))
    }

    /// `s[+k]`: prepend `k` new least indices, fixed by the map.
    pub fn shifted(&self, k: usize) -> IndexMap {
        if k == 0 {
            return self.clone();
        }
        let values = (0..k).chain(self.values.iter().map(|v| v + k)).collect();
        Self::from_parts(self.target + k, values)
    }

    /// Inclusion of `{1..n}` into `{0..n}`; induces the tail projection.
    pub fn tail_inclusion(n: usize) -> IndexMap {
        Self::from_parts(n + 1, (1..=n).collect())
    }

    /// Inclusion of `{0}` into `{0..n}`; induces the head projection.
    pub fn head_inclusion(n: usize) -> IndexMap {
        Self::from_parts(n + 1, vec![0])
    }

    /// The first `k` indices of `{1..n}`.
    pub fn prefix(k: usize, n: usize) -> Result<IndexMap> {
        if k == 0 || k > n {
            return Err(Error::InvalidIndexMap(format!("prefix {k} of {n}")));
        }
        Ok(Self::from_parts(n, (0..k).collect()))
    }

    /// Injection `n-1 -> n` whose image misses `skip`.
    pub fn coface(n: usize, skip: usize) -> IndexMap {
        debug_assert!(n >= 2 && skip < n);
        Self::from_parts(
            n,
            (0..n - 1)
                .map(|i| if i < skip { i } else { i + 1 })
                .collect(),
        )
    }

    /// Surjection `n+1 -> n` hitting `repeat` twice.
    pub fn codegeneracy(n: usize, repeat: usize) -> IndexMap {
        debug_assert!(repeat < n);
        Self::from_parts(
            n,
            (0..=n)
                .map(|i| if i <= repeat { i } else { i - 1 })
                .collect(),
        )
    }

    /// Permutation of `{1..n}` exchanging `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> IndexMap {
        let mut values: Vec<usize> = (0..n).collect();
        values.swap(i, j);
        Self::from_parts(n, values)
    }

    /// Generating maps with target `n` whose source level lies in `1..=depth`:
    /// cofaces into `n`, codegeneracies out of `n + 1` and, for the symmetric
    /// class, adjacent transpositions of `n`.
    pub fn generators_into(n: usize, depth: usize, class: IndexClass) -> Vec<IndexMap> {
        let mut out = Vec::new();
        if n >= 2 {
            out.extend((0..n).map(|skip| Self::coface(n, skip)));
        }
        if n < depth {
            out.extend((0..n).map(|r| Self::codegeneracy(n, r)));
        }
        if class == IndexClass::All {
            out.extend((0..n.saturating_sub(1)).map(|i| Self::transposition(n, i, i + 1)));
        }
        out
    }

    /// Every map `m -> n` in the class, in lexicographic order of values.
    pub fn enumerate(m: usize, n: usize, class: IndexClass) -> Vec<IndexMap> {
        let mut out = Vec::new();
        let mut values = vec![0usize; m];
        loop {
            let map = Self::from_parts(n, values.clone());
            if class.admits(&map) {
                out.push(map);
            }
            // odometer increment, last position fastest
            let mut pos = m;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                values[pos] += 1;
                if values[pos] < n {
                    break;
                }
                values[pos] = 0;
            }
        }
    }

    /// Monotone injections `m -> n`.
    pub fn monotone_injections(m: usize, n: usize) -> Vec<IndexMap> {
        Self::enumerate(m, n, IndexClass::Monotone)
            .into_iter()
            .filter(|s| s.values.windows(2).all(|w| w[0] < w[1]))
            .collect()
    }
}
