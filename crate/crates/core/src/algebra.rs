//! Products of invariant types as composites of shifted section families.
//!
//! For families `p` and `q` the composite `π^p[+1] ∘ π^q` sends the type of
//! `c̄` to the type of `(a, b, c̄)` with `b ⊨ q|c̄` and `a ⊨ p|b c̄`; its first
//! two coordinates carry `p(x) ⊗ q(y)`.
//!
//! At finite scale every invariant type is realized, so generic stability and
//! commutation always hold on witness families. The negative direction is
//! exercised with corrupted composites.

use crate::calculus::SectionFamily;
use crate::error::{Error, Result};
use crate::simplicial::{
    apply_transposition, compose_sections, IndexMap, NaturalTransformation, TruncatedFunctor,
};
use crate::structure::TypeSpace;

/// A composite of `k` section families, outermost first.
#[derive(Clone, Debug)]
pub struct ComposedFamily {
    space: TypeSpace,
    factors: Vec<SectionFamily>,
    composite: NaturalTransformation,
}

impl ComposedFamily {
    pub fn new(factors: Vec<SectionFamily>) -> Result<Self> {
        let Some(last) = factors.last() else {
            return Err(Error::Mismatch(
                "a composite needs at least one factor".into(),
            ));
        };
        let space = last.space().clone();
        if factors
            .iter()
            .any(|f| !f.transformation().source().same_as(space.functor_view()))
        {
            return Err(Error::Mismatch(
                "factors live on different type spaces".into(),
            ));
        }
        let k = factors.len();
        let depth = factors
            .iter()
            .map(SectionFamily::depth)
            .min()
            .expect("non-empty");
        if depth < k {
            return Err(Error::InsufficientDepth {
                missing: k + 1,
                available: depth + 1,
            });
        }
        let mut composite = last.transformation().clone();
        for outer in factors.iter().rev().skip(1) {
            composite = compose_sections(outer.transformation(), &composite)?;
        }
        let cf = ComposedFamily {
            space,
            factors,
            composite,
        };
        cf.check_tail()?;
        Ok(cf)
    }

    fn check_tail(&self) -> Result<()> {
        let k = self.arity();
        let functor = self.space.functor_view();
        for n in 1..=self.composite.depth() {
            let drop = IndexMap::new(n + k, (k..n + k).collect())?;
            let table = functor.action_table(&drop);
            for (r, &y) in self.composite.component(n).iter().enumerate() {
                if table[y] != r {
                    return Err(Error::FiberViolation {
                        level: n,
                        element: r,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[SectionFamily] {
        &self.factors
    }

    pub fn composite(&self) -> &NaturalTransformation {
        &self.composite
    }

    pub fn space(&self) -> &TypeSpace {
        &self.space
    }

    /// The type read off the new coordinates through `j: m -> k`. Every
    /// evaluation point must give the same answer.
    pub fn extract(&self, j: &IndexMap) -> Result<usize> {
        if j.target() != self.arity() {
            return Err(Error::InvalidIndexMap(format!(
                "{j:?} does not land in the {} new coordinates",
                self.arity()
            )));
        }
        let functor = self.space.functor_view();
        let mut found = None;
        for n in 1..=self.composite.depth() {
            let into = IndexMap::new(n + self.arity(), j.values().to_vec())?;
            let table = functor.action_table(&into);
            for &y in self.composite.component(n) {
                match found {
                    None => found = Some(table[y]),
                    Some(t) if t != table[y] => return Err(Error::ExtractionNotConstant),
                    _ => {}
                }
            }
        }
        Ok(found.expect("level 1 is non-empty"))
    }

    /// The `k`-type of the new coordinates.
    pub fn joint_type(&self) -> Result<usize> {
        self.extract(&IndexMap::identity(self.arity()))
    }
}

/// `p(x) ⊗ q(y)` as a composite and as a 2-type.
pub fn product_type(p: &SectionFamily, q: &SectionFamily) -> Result<(ComposedFamily, usize)> {
    let cf = ComposedFamily::new(vec![p.clone(), q.clone()])?;
    let two = cf.joint_type()?;
    Ok((cf, two))
}

/// `(p ⊗ q) ⊗ s = p ⊗ (q ⊗ s)` levelwise.
pub fn check_associativity(
    p: &SectionFamily,
    q: &SectionFamily,
    s: &SectionFamily,
) -> Result<bool> {
    ComposedFamily::new(vec![p.clone(), q.clone(), s.clone()])?;
    let pq = compose_sections(p.transformation(), q.transformation())?;
    let qs = compose_sections(q.transformation(), s.transformation())?;
    let left = compose_sections(&pq, s.transformation())?;
    let right = compose_sections(p.transformation(), &qs)?;
    Ok(left.same_components(&right))
}

/// The `k`-type of a Morley sequence of `p`.
pub fn morley(p: &SectionFamily, k: usize) -> Result<usize> {
    if k == 0 || k > p.depth() {
        return Err(Error::InsufficientDepth {
            missing: k + 1,
            available: p.space().depth(),
        });
    }
    ComposedFamily::new(vec![p.clone(); k])?.joint_type()
}

/// Every increasing subsequence of the same length has the same type.
pub fn check_indiscernible(space: &TypeSpace, n: usize, orbit: usize) -> bool {
    let functor = space.functor_view();
    (1..=n).all(|m| {
        let mut images = IndexMap::monotone_injections(m, n)
            .into_iter()
            .map(|j| functor.act(&j, orbit));
        let first = images.next().expect("m <= n");
        images.all(|y| y == first)
    })
}

/// Whether swapping the first two coordinates fixes every value of a
/// composite into the double decalage of `functor`.
pub fn is_swap_invariant(
    functor: &TruncatedFunctor,
    composite: &NaturalTransformation,
) -> Result<bool> {
    for n in 1..=composite.depth() {
        for &y in composite.component(n) {
            if apply_transposition(functor, n, y)? != y {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `p(x) ⊗ p(y) = p(y) ⊗ p(x)`.
pub fn check_generically_stable(p: &SectionFamily) -> Result<bool> {
    let composite = compose_sections(p.transformation(), p.transformation())?;
    is_swap_invariant(p.space().functor_view(), &composite)
}

/// `swap ∘ (p ⊗ q) = q ⊗ p`, with both composites projecting to the identity.
pub fn check_stable_commutation(p: &SectionFamily, q: &SectionFamily) -> Result<bool> {
    let pq = ComposedFamily::new(vec![p.clone(), q.clone()])?;
    let qp = ComposedFamily::new(vec![q.clone(), p.clone()])?;
    let functor = p.space().functor_view();
    for n in 1..=pq.composite.depth() {
        for (&a, &b) in pq
            .composite
            .component(n)
            .iter()
            .zip(qp.composite.component(n))
        {
            if apply_transposition(functor, n, a)? != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
