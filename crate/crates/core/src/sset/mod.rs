//! Finite truncated simplicial sets and the search for a contracting
//! section of their decalage (an extra degeneracy).
//!
//! Dimensions use simplicial indexing `X₀, X₁, ..`; as functors on non-empty
//! finite linear orders, level `n` is `X_{n-1}`.

mod presets;
mod probe;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::{IndexClass, IndexMap, LevelAction, TruncatedFunctor};

pub use presets::{build_preset, Poset, TupleModel};
pub use probe::{components, contractibility_probe, ComponentProbe, ProbeReport};

/// Simplices `X₀..X_K` with face and degeneracy tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    /// `labels[k][x]`: vertex tuple naming simplex `x` of dimension `k`.
    labels: Vec<Vec<Vec<usize>>>,
    vertex_names: Vec<String>,
    /// `faces[k][i][x] = d_i x` for `x ∈ X_k`, `k >= 1`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[k][i][x] = s_i x` for `x ∈ X_k`, `k < K`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSet {
    /// Validate table shapes and the simplicial identities.
    pub fn new(
        labels: Vec<Vec<Vec<usize>>>,
        vertex_names: Vec<String>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let top = labels
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidSimplicialSet("no dimensions given".into()))?;
        let bad = |msg: String| Err(Error::InvalidSimplicialSet(msg));
        if faces.len() != top + 1 || degeneracies.len() != top + 1 {
            return bad("face and degeneracy tables must cover every dimension".into());
        }
        if labels[0].is_empty() {
            return bad("no vertices".into());
        }
        for k in 0..=top {
            let size = labels[k].len();
            let expected_faces = if k == 0 { 0 } else { k + 1 };
            if faces[k].len() != expected_faces {
                return bad(format!("dimension {k} needs {expected_faces} face maps"));
            }
            for table in &faces[k] {
                if table.len() != size || table.iter().any(|&y| y >= labels[k - 1].len()) {
                    return bad(format!("malformed face table in dimension {k}"));
                }
            }
            let expected_degeneracies = if k < top { k + 1 } else { 0 };
            if degeneracies[k].len() != expected_degeneracies {
                return bad(format!(
                    "dimension {k} needs {expected_degeneracies} degeneracy maps"
                ));
            }
            for table in &degeneracies[k] {
                if table.len() != size || table.iter().any(|&y| y >= labels[k + 1].len()) {
                    return bad(format!("malformed degeneracy table in dimension {k}"));
                }
            }
        }
        let set = SimplicialSet {
            labels,
            vertex_names,
            faces,
            degeneracies,
        };
        if let Some(msg) = set.identity_violation() {
            return bad(msg);
        }
        Ok(set)
    }

    /// Top dimension `K`.
    pub fn dimension(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn count(&self, k: usize) -> usize {
        self.labels[k].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn label(&self, k: usize, x: usize) -> &[usize] {
        &self.labels[k][x]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn face(&self, k: usize, i: usize, x: usize) -> usize {
        self.faces[k][i][x]
    }

    pub fn degeneracy(&self, k: usize, i: usize, x: usize) -> usize {
        self.degeneracies[k][i][x]
    }

    /// First failing simplicial identity, if any.
    pub fn identity_violation(&self) -> Option<String> {
        let top = self.dimension();
        let d = |k: usize, i: usize, x: usize| self.faces[k][i][x];
        let s = |k: usize, i: usize, x: usize| self.degeneracies[k][i][x];
        for k in 2..=top {
            for x in 0..self.count(k) {
                for j in 1..=k {
                    for i in 0..j {
                        if d(k - 1, i, d(k, j, x)) != d(k - 1, j - 1, d(k, i, x)) {
                            return Some(format!(
                                "d{i} d{j} = d{} d{i} fails in dimension {k}",
                                j - 1
                            ));
                        }
                    }
                }
            }
        }
        for k in 0..top {
            for x in 0..self.count(k) {
                for j in 0..=k {
                    let y = s(k, j, x);
                    for i in 0..=k + 1 {
                        let lhs = d(k + 1, i, y);
                        let rhs = if i == j || i == j + 1 {
                            x
                        } else if i < j {
                            s(k - 1, j - 1, d(k, i, x))
                        } else {
                            s(k - 1, j, d(k, i - 1, x))
                        };
                        if lhs != rhs {
                            return Some(format!(
                                "d{i} s{j} identity fails in dimension {k} on simplex {x}"
                            ));
                        }
                    }
                    if k + 1 < top {
                        for i in 0..=j {
                            if s(k + 1, i, y) != s(k + 1, j + 1, s(k, i, x)) {
                                return Some(format!(
                                    "s{i} s{j} = s{} s{i} fails in dimension {k}",
                                    j + 1
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// The action of a monotone map `s: m -> n` from `X_{n-1}` to `X_{m-1}`:
    /// faces for the indices missed by `s`, highest first, then degeneracies
    /// for the repeated positions, lowest first.
    pub fn act(&self, s: &IndexMap, mut x: usize) -> usize {
        debug_assert!(s.is_monotone());
        let values = s.values();
        let mut dim = s.target() - 1;
        for j in (0..s.target()).rev() {
            if values.binary_search(&j).is_err() {
                x = self.faces[dim][j][x];
                dim -= 1;
            }
        }
        for p in 0..values.len() - 1 {
            if values[p] == values[p + 1] {
                x = self.degeneracies[dim][p][x];
                dim += 1;
            }
        }
        x
    }

    /// The truncated functor `n ↦ X_{n-1}` on monotone maps, levels
    /// `1..=depth`.
    pub fn functor(&self, depth: usize) -> Result<TruncatedFunctor> {
        TruncatedFunctor::from_action(Arc::new(self.clone()), depth, IndexClass::Monotone)
    }

    /// Restrict to the simplices whose vertices lie in `vertices`.
    pub fn restrict(&self, vertices: &[usize]) -> Result<SimplicialSet> {
        let keep: Vec<Vec<bool>> = (0..=self.dimension())
            .map(|k| {
                (0..self.count(k))
                    .map(|x| (0..=k).all(|v| vertices.contains(&self.vertex_of(k, x, v))))
                    .collect()
            })
            .collect();
        self.subset(&keep)
    }

    /// The `v`-th vertex of a simplex, via faces.
    pub fn vertex_of(&self, k: usize, x: usize, v: usize) -> usize {
        self.act(&IndexMap::new(k + 1, vec![v]).expect("v <= k"), x)
    }

    fn subset(&self, keep: &[Vec<bool>]) -> Result<SimplicialSet> {
        let index: Vec<Vec<usize>> = keep
            .iter()
            .map(|level| {
                let mut next = 0;
                level
                    .iter()
                    .map(|&k| {
                        let i = next;
                        next += usize::from(k);
                        if k {
                            i
                        } else {
                            usize::MAX
                        }
                    })
                    .collect()
            })
            .collect();
        let pick = |k: usize, table: &[usize], target: usize| -> Vec<usize> {
            table
                .iter()
                .enumerate()
                .filter(|(x, _)| keep[k][*x])
                .map(|(_, &y)| index[target][y])
                .collect()
        };
        let top = self.dimension();
        let labels = (0..=top)
            .map(|k| {
                self.labels[k]
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| keep[k][*x])
                    .map(|(_, l)| l.clone())
                    .collect()
            })
            .collect();
        let faces = (0..=top)
            .map(|k| self.faces[k].iter().map(|t| pick(k, t, k - 1)).collect())
            .collect();
        let degeneracies = (0..=top)
            .map(|k| {
                self.degeneracies[k]
                    .iter()
                    .map(|t| pick(k, t, k + 1))
                    .collect()
            })
            .collect();
        SimplicialSet::new(labels, self.vertex_names.clone(), faces, degeneracies)
    }

    /// `self ⊔ other`, truncated to the smaller dimension.
    pub fn disjoint_union(&self, other: &SimplicialSet) -> Result<SimplicialSet> {
        let top = self.dimension().min(other.dimension());
        let shift = self.vertex_names.len();
        let mut vertex_names = self.vertex_names.clone();
        vertex_names.extend(other.vertex_names.iter().map(|n| format!("{n}'")));
        let labels = (0..=top)
            .map(|k| {
                self.labels[k]
                    .iter()
                    .cloned()
                    .chain(
                        other.labels[k]
                            .iter()
                            .map(|l| l.iter().map(|v| v + shift).collect()),
                    )
                    .collect()
            })
            .collect();
        let join = |a: &[usize], b: &[usize], offset: usize| -> Vec<usize> {
            a.iter()
                .copied()
                .chain(b.iter().map(|y| y + offset))
                .collect()
        };
        let faces = (0..=top)
            .map(|k| {
                (0..self.faces[k].len())
                    .map(|i| join(&self.faces[k][i], &other.faces[k][i], self.count(k - 1)))
                    .collect()
            })
            .collect();
        let degeneracies = (0..=top)
            .map(|k| {
                if k == top {
                    return Vec::new();
                }
                (0..=k)
                    .map(|i| {
                        join(
                            &self.degeneracies[k][i],
                            &other.degeneracies[k][i],
                            self.count(k + 1),
                        )
                    })
                    .collect()
            })
            .collect();
        SimplicialSet::new(labels, vertex_names, faces, degeneracies)
    }
}

impl LevelAction for SimplicialSet {
    fn level_size(&self, n: usize) -> usize {
        self.count(n - 1)
    }

    fn act(&self, s: &IndexMap, x: usize) -> usize {
        SimplicialSet::act(self, s, x)
    }

    fn max_depth(&self) -> usize {
        self.dimension() + 1
    }

    fn symmetric(&self) -> bool {
        false
    }
}
