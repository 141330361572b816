use std::fmt;

use super::functor::TruncatedFunctor;
use super::index_map::{IndexClass, IndexMap};
use crate::error::{Error, Result};

/// A levelwise map between two functors of equal depth.
///
/// Construction only checks shapes; [`NaturalTransformation::verify_naturality`]
/// checks the squares.
#[derive(Clone)]
pub struct NaturalTransformation {
    source: TruncatedFunctor,
    target: TruncatedFunctor,
    components: Vec<Vec<usize>>,
}

impl fmt::Debug for NaturalTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NaturalTransformation")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("components", &self.components)
            .finish()
    }
}

/// Outcome of checking every naturality square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Naturality {
    Natural,
    /// First failing square: `s: m -> n` applied to `element` of level `n`.
    Violated {
        level: usize,
        map: IndexMap,
        element: usize,
    },
}

impl Naturality {
    pub fn is_natural(&self) -> bool {
        matches!(self, Naturality::Natural)
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            Naturality::Natural => Ok(()),
            Naturality::Violated {
                level,
                map,
                element,
            } => Err(Error::NotNatural {
                level,
                map,
                element,
            }),
        }
    }
}

impl NaturalTransformation {
    pub fn new(
        source: TruncatedFunctor,
        target: TruncatedFunctor,
        components: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if source.depth() != target.depth() {
            return Err(Error::Mismatch(format!(
                "source depth {} differs from target depth {}",
                source.depth(),
                target.depth()
            )));
        }
        if components.len() != source.depth() {
            return Err(Error::MalformedComponents(format!(
                "{} components for depth {}",
                components.len(),
                source.depth()
            )));
        }
        for (i, comp) in components.iter().enumerate() {
            let n = i + 1;
            if comp.len() != source.level_size(n) {
                return Err(Error::MalformedComponents(format!(
                    "level {n} has {} entries, expected {}",
                    comp.len(),
                    source.level_size(n)
                )));
            }
            let bound = target.level_size(n);
            if let Some(pos) = comp.iter().position(|&y| y >= bound) {
                return Err(Error::MalformedComponents(format!(
                    "level {n} element {pos} maps outside the target"
                )));
            }
        }
        Ok(NaturalTransformation {
            source,
            target,
            components,
        })
    }

    /// Build from a levelwise rule.
    pub fn from_fn(
        source: TruncatedFunctor,
        target: TruncatedFunctor,
        mut rule: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let components = (1..=source.depth())
            .map(|n| (0..source.level_size(n)).map(|x| rule(n, x)).collect())
            .collect();
        Self::new(source, target, components)
    }

    pub fn identity(functor: &TruncatedFunctor) -> Self {
        let components = functor
            .level_sizes()
            .into_iter()
            .map(|size| (0..size).collect())
            .collect();
        NaturalTransformation {
            source: functor.clone(),
            target: functor.clone(),
            components,
        }
    }

    pub fn source(&self) -> &TruncatedFunctor {
        &self.source
    }

    pub fn target(&self) -> &TruncatedFunctor {
        &self.target
    }

    pub fn depth(&self) -> usize {
        self.source.depth()
    }

    /// Squares are checked over the smaller of the two classes.
    pub fn index_class(&self) -> IndexClass {
        self.source.index_class().meet(self.target.index_class())
    }

    pub fn component(&self, n: usize) -> &[usize] {
        &self.components[n - 1]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.components[n - 1][x]
    }

    pub fn truncate(&self, depth: usize) -> Result<Self> {
        Ok(NaturalTransformation {
            source: self.source.truncate(depth)?,
            target: self.target.truncate(depth)?,
            components: self.components[..depth].to_vec(),
        })
    }

    /// Replace the declared source and target by functors with the same
    /// level sets, e.g. to change the index class.
    pub fn retarget(&self, source: TruncatedFunctor, target: TruncatedFunctor) -> Result<Self> {
        Self::new(source, target, self.components.clone())
    }

    /// `self ∘ inner`, on the common truncation.
    pub fn compose(&self, inner: &NaturalTransformation) -> Result<Self> {
        if !inner.target.same_as(&self.source) {
            return Err(Error::Mismatch(format!(
                "cannot compose {:?} after a map into {:?}",
                self.source, inner.target
            )));
        }
        let depth = self.depth().min(inner.depth());
        let components = (1..=depth)
            .map(|n| {
                let outer = self.component(n);
                inner.component(n).iter().map(|&y| outer[y]).collect()
            })
            .collect();
        Ok(NaturalTransformation {
            source: inner.source.truncate(depth)?,
            target: self.target.truncate(depth)?,
            components,
        })
    }

    /// `α[+k]`: the same transformation precomposed with the shift, with
    /// `component(n) = α.component(n + k)`.
    pub fn shifted(&self, k: usize) -> Result<Self> {
        if k >= self.depth() {
            return Err(Error::InsufficientDepth {
                missing: k + 1,
                available: self.depth(),
            });
        }
        Ok(NaturalTransformation {
            source: self.source.shift(k)?,
            target: self.target.shift(k)?,
            components: self.components[k..].to_vec(),
        })
    }

    /// `⟨self, other⟩: X -> Y × Z`.
    pub fn pair(&self, other: &NaturalTransformation) -> Result<Self> {
        if !self.source.same_as(&other.source) || self.depth() != other.depth() {
            return Err(Error::Mismatch("pairing needs a common source".into()));
        }
        let target = self.target.product(&other.target)?;
        let components = (1..=self.depth())
            .map(|n| {
                let width = other.target.level_size(n);
                self.component(n)
                    .iter()
                    .zip(other.component(n))
                    .map(|(&a, &b)| a * width + b)
                    .collect()
            })
            .collect();
        Self::new(self.source.clone(), target, components)
    }

    /// `self × other: X × Z -> Y × W`.
    pub fn product(&self, other: &NaturalTransformation) -> Result<Self> {
        let source = self.source.product(&other.source)?;
        let target = self.target.product(&other.target)?;
        let components = (1..=self.depth())
            .map(|n| {
                let width = other.target.level_size(n);
                let a = self.component(n);
                let b = other.component(n);
                a.iter()
                    .flat_map(|&ya| b.iter().map(move |&yb| ya * width + yb))
                    .collect()
            })
            .collect();
        Self::new(source, target, components)
    }

    /// Levelwise equality of component tables.
    pub fn same_components(&self, other: &NaturalTransformation) -> bool {
        self.components == other.components
    }

    pub fn verify_naturality(&self) -> Naturality {
        verify_naturality(self)
    }
}

/// Check every square `target.act(s) ∘ component(n) = component(m) ∘ source.act(s)`
/// over the declared class. Squares are scanned by level `n`, then by map in
/// enumeration order, then by element.
pub fn verify_naturality(t: &NaturalTransformation) -> Naturality {
    let class = t.index_class();
    let depth = t.depth();
    for n in 1..=depth {
        let comp_n = t.component(n);
        for m in 1..=depth {
            let comp_m = t.component(m);
            for s in IndexMap::enumerate(m, n, class) {
                let src = t.source.action_table(&s);
                let tgt = t.target.action_table(&s);
                for (x, &sx) in src.iter().enumerate() {
                    if tgt[comp_n[x]] != comp_m[sx] {
                        return Naturality::Violated {
                            level: n,
                            map: s,
                            element: x,
                        };
                    }
                }
            }
        }
    }
    Naturality::Natural
}

/// The decalage of a functor together with its two projections.
#[derive(Clone, Debug)]
pub struct Decalage {
    /// `F ∘ [+1]`, one level shallower than `F`.
    pub functor: TruncatedFunctor,
    /// Induced by `{1..n} ⊂ {0..n}`: forgets the new least index.
    pub tail: NaturalTransformation,
    /// Induced by `{0} ⊂ {0..n}`: keeps only the new least index.
    pub head: NaturalTransformation,
}

pub fn decalage(functor: &TruncatedFunctor) -> Result<Decalage> {
    if functor.depth() < 2 {
        return Err(Error::DecalageAtDepthOne);
    }
    let dec = functor.shift(1)?;
    let depth = dec.depth();
    let truncated = functor.truncate(depth)?;
    let ones = TruncatedFunctor::constant(functor.level_size(1), depth, functor.index_class());

    let tail = NaturalTransformation::new(
        dec.clone(),
        truncated,
        (1..=depth)
            .map(|n| functor.action_table(&IndexMap::tail_inclusion(n)))
            .collect(),
    )?;
    let head = NaturalTransformation::new(
        dec.clone(),
        ones,
        (1..=depth)
            .map(|n| functor.action_table(&IndexMap::head_inclusion(n)))
            .collect(),
    )?;
    tail.verify_naturality().into_result()?;
    head.verify_naturality().into_result()?;
    Ok(Decalage {
        functor: dec,
        tail,
        head,
    })
}

/// `w[+k]` for `w: F -> F∘[+j]`.
pub fn shift_nat(w: &NaturalTransformation, k: usize) -> Result<NaturalTransformation> {
    let shifted = w.shifted(k)?;
    shifted.verify_naturality().into_result()?;
    Ok(shifted)
}

/// `w_outer[+j] ∘ w_inner` for sections `w_outer: F -> F∘[+i]` and
/// `w_inner: F -> F∘[+j]` over the same `F`.
pub fn compose_sections(
    w_outer: &NaturalTransformation,
    w_inner: &NaturalTransformation,
) -> Result<NaturalTransformation> {
    if !w_outer.source().same_as(w_inner.source()) {
        return Err(Error::Mismatch(
            "sections are defined over different functors".into(),
        ));
    }
    let j = shift_amount(w_inner)?;
    w_outer.shifted(j)?.compose(w_inner)
}

/// The `k` with `target = source ∘ [+k]`.
fn shift_amount(w: &NaturalTransformation) -> Result<usize> {
    w.target()
        .shift_relative_to(w.source())
        .ok_or_else(|| Error::Mismatch("target is not a decalage of the source".into()))
}

/// Exchange the two prepended coordinates of an element of `F∘[+2]` at `level`.
pub fn apply_transposition(functor: &TruncatedFunctor, level: usize, x: usize) -> Result<usize> {
    if functor.index_class() != IndexClass::All {
        return Err(Error::SwapRequiresSymmetric);
    }
    let full = level + 2;
    if full > functor.depth() {
        return Err(Error::InsufficientDepth {
            missing: full,
            available: functor.depth(),
        });
    }
    Ok(functor.act(&IndexMap::transposition(full, 0, 1), x))
}
