use std::collections::{BTreeSet, HashMap};

use super::SimplicialSet;
use crate::error::{Error, Result};

/// A finite poset, stored as its reflexive-transitive order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        if elements.is_empty() {
            return Err(Error::InvalidPoset("no elements".into()));
        }
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(Error::InvalidPoset(format!("element `{e}` listed twice")));
            }
        }
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let find = |x: &str| {
                index
                    .get(x)
                    .copied()
                    .ok_or_else(|| Error::InvalidPoset(format!("unknown element `{x}`")))
            };
            let (i, j) = (find(a.as_ref())?, find(b.as_ref())?);
            if i == j {
                return Err(Error::InvalidPoset(format!(
                    "`{}` cannot cover itself",
                    elements[i]
                )));
            }
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let through = leq[k].clone();
                    for (slot, &reach) in leq[i].iter_mut().zip(&through) {
                        *slot |= reach;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "`{}` and `{}` lie on a cycle",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(Poset { elements, leq })
    }

    /// Parse `a<b,b<c`; elements are numbered by first appearance.
    pub fn parse(text: &str) -> Result<Self> {
        let mut elements: Vec<String> = Vec::new();
        let mut covers = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let names: Vec<&str> = part.split('<').map(str::trim).collect();
            if names.iter().any(|n| n.is_empty()) {
                return Err(Error::InvalidPoset(format!("cannot read `{part}`")));
            }
            for n in &names {
                if !elements.iter().any(|e| e == n) {
                    elements.push(n.to_string());
                }
            }
            for pair in names.windows(2) {
                covers.push((pair[0].to_string(), pair[1].to_string()));
            }
        }
        Poset::new(&elements, &covers)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }
}

/// Simplices as vertex tuples `(v₀, .., v_k)` with `v_i ≼ v_{i+1}`; faces
/// delete an entry and degeneracies repeat one.
#[derive(Clone, Debug)]
pub struct TupleModel {
    vertex_names: Vec<String>,
    step: Vec<Vec<bool>>,
    /// Drop tuples meeting every vertex.
    proper: bool,
    /// Identify all constant tuples of the same length.
    collapse_constants: bool,
}

impl TupleModel {
    fn ordered(vertices: usize) -> Self {
        TupleModel {
            vertex_names: (0..vertices).map(|v| v.to_string()).collect(),
            step: (0..vertices)
                .map(|a| (0..vertices).map(|b| a <= b).collect())
                .collect(),
            proper: false,
            collapse_constants: false,
        }
    }

    /// The standard `k`-simplex.
    pub fn simplex(k: usize) -> Self {
        Self::ordered(k + 1)
    }

    /// The boundary of the standard `k`-simplex.
    pub fn boundary(k: usize) -> Self {
        TupleModel {
            proper: true,
            ..Self::ordered(k + 1)
        }
    }

    /// `Δ¹` with its two vertices identified.
    pub fn circle() -> Self {
        TupleModel {
            collapse_constants: true,
            ..Self::ordered(2)
        }
    }

    /// `k` points.
    pub fn discrete(k: usize) -> Self {
        TupleModel {
            vertex_names: (0..k).map(|v| v.to_string()).collect(),
            step: (0..k).map(|a| (0..k).map(|b| a == b).collect()).collect(),
            proper: false,
            collapse_constants: false,
        }
    }

    /// The nerve: chains `x₀ <= .. <= x_k`.
    pub fn nerve(poset: &Poset) -> Self {
        let n = poset.elements().len();
        TupleModel {
            vertex_names: poset.elements().to_vec(),
            step: (0..n)
                .map(|a| (0..n).map(|b| poset.leq(a, b)).collect())
                .collect(),
            proper: false,
            collapse_constants: false,
        }
    }

    fn canonical(&self, mut tuple: Vec<usize>) -> Vec<usize> {
        if self.collapse_constants && tuple.windows(2).all(|w| w[0] == w[1]) {
            tuple.iter_mut().for_each(|v| *v = 0);
        }
        tuple
    }

    fn admits(&self, tuple: &[usize]) -> bool {
        !self.proper || tuple.iter().collect::<BTreeSet<_>>().len() < self.vertex_names.len()
    }

    /// Build dimensions `0..=top`, at most `budget` simplices per dimension.
    pub fn build(&self, top: usize, budget: u128) -> Result<SimplicialSet> {
        let vertices = self.vertex_names.len();
        let mut raw: Vec<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
        let mut labels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            if k > 0 {
                raw = raw
                    .iter()
                    .flat_map(|t| {
                        let last = *t.last().expect("non-empty");
                        (0..vertices)
                            .filter(move |&y| self.step[last][y])
                            .map(move |y| {
                                let mut next = t.clone();
                                next.push(y);
                                next
                            })
                    })
                    .collect();
            }
            if raw.len() as u128 > budget {
                return Err(Error::BudgetExceeded {
                    level: k,
                    tuples: raw.len() as u128,
                    budget,
                });
            }
            let level: BTreeSet<Vec<usize>> = raw
                .iter()
                .filter(|t| self.admits(t))
                .map(|t| self.canonical(t.clone()))
                .collect();
            labels.push(level.into_iter().collect());
        }
        let lookup: Vec<HashMap<&[usize], usize>> = labels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (t.as_slice(), i))
                    .collect()
            })
            .collect();
        let find = |k: usize, t: Vec<usize>| -> usize { lookup[k][self.canonical(t).as_slice()] };
        let faces = (0..=top)
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                (0..=k)
                    .map(|i| {
                        labels[k]
                            .iter()
                            .map(|t| {
                                let mut f = t.clone();
                                f.remove(i);
                                find(k - 1, f)
                            })
                            .collect()
                    })
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
                        labels[k]
                            .iter()
                            .map(|t| {
                                let mut s = t.clone();
                                s.insert(i, t[i]);
                                find(k + 1, s)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SimplicialSet::new(labels, self.vertex_names.clone(), faces, degeneracies)
    }
}

/// `simplex:k`, `boundary:k`, `circle`, `discrete:k` or `nerve-poset:a<b,..`,
/// built through dimension `top`.
pub fn build_preset(name: &str, top: usize, budget: u128) -> Result<SimplicialSet> {
    let unknown = || Error::UnknownPreset(name.to_string());
    let (kind, arg) = match name.split_once(':') {
        Some((kind, arg)) => (kind, Some(arg)),
        None => (name, None),
    };
    let number = || -> Result<usize> { arg.and_then(|a| a.parse().ok()).ok_or_else(unknown) };
    let model = match kind {
        "simplex" => TupleModel::simplex(number()?),
        "boundary" => match number()? {
            0 => {
                return Err(Error::InvalidSimplicialSet(
                    "the boundary of a point is empty".into(),
                ))
            }
            k => TupleModel::boundary(k),
        },
        "circle" if arg.is_none() => TupleModel::circle(),
        "discrete" => match number()? {
            0 => return Err(Error::InvalidSimplicialSet("no vertices".into())),
            k => TupleModel::discrete(k),
        },
        "nerve-poset" => TupleModel::nerve(&Poset::parse(arg.ok_or_else(unknown)?)?),
        _ => return Err(unknown()),
    };
    model.build(top, budget)
}
