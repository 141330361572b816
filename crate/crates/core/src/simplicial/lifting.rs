//! Exhaustive search for sections of lifting problems.
//!
//! Given `u: E -> X` and `v: P -> X`, a section is a natural `w: P -> E` with
//! `u ∘ w = v`. Every pair `(n, x)` with `x` in `P(n)` is a variable whose
//! domain is the fiber `u_n⁻¹(v_n(x))`. Variables are decided in level order,
//! then element order; candidates in element order. Each assignment propagates
//! the values forced by naturality along generating maps. Completed
//! assignments are re-verified against every square before being reported.

use std::ops::ControlFlow;

use super::functor::TruncatedFunctor;
use super::index_map::IndexMap;
use super::transformation::NaturalTransformation;
use crate::error::{Error, Result};

/// A square `P -> X <- E` to be filled by a map `P -> E`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    over: NaturalTransformation,
    along: NaturalTransformation,
}

impl LiftingProblem {
    /// `over: E -> X`, `along: P -> X`.
    pub fn new(over: NaturalTransformation, along: NaturalTransformation) -> Result<Self> {
        if !over.target().same_as(along.target()) {
            return Err(Error::Mismatch(
                "the two legs of a lifting problem need a common base".into(),
            ));
        }
        if over.depth() != along.depth() {
            return Err(Error::Mismatch(format!(
                "legs have depths {} and {}",
                over.depth(),
                along.depth()
            )));
        }
        if over.source().index_class() != along.source().index_class() {
            return Err(Error::Mismatch("legs have different index classes".into()));
        }
        Ok(LiftingProblem { over, along })
    }

    pub fn over(&self) -> &NaturalTransformation {
        &self.over
    }

    pub fn along(&self) -> &NaturalTransformation {
        &self.along
    }

    pub fn depth(&self) -> usize {
        self.along.depth()
    }

    /// `P`.
    pub fn domain(&self) -> &TruncatedFunctor {
        self.along.source()
    }

    /// `E`.
    pub fn total(&self) -> &TruncatedFunctor {
        self.over.source()
    }

    /// Number of raw levelwise assignments into fibers, saturating.
    pub fn fiber_assignment_count(&self) -> u128 {
        let mut total: u128 = 1;
        for n in 1..=self.depth() {
            let fibers = self.fibers(n);
            for &y in self.along.component(n) {
                total = total.saturating_mul(fibers[y].len() as u128);
            }
        }
        total
    }

    fn fibers(&self, n: usize) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.over.target().level_size(n)];
        for (e, &y) in self.over.component(n).iter().enumerate() {
            fibers[y].push(e);
        }
        fibers
    }

    /// Check both section conditions for a candidate `w: P -> E`.
    pub fn check_section(&self, w: &NaturalTransformation) -> Result<()> {
        for n in 1..=self.depth() {
            let over = self.over.component(n);
            for (x, (&e, &y)) in w
                .component(n)
                .iter()
                .zip(self.along.component(n))
                .enumerate()
            {
                if over[e] != y {
                    return Err(Error::FiberViolation {
                        level: n,
                        element: x,
                    });
                }
            }
        }
        w.verify_naturality().into_result()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    FindOne,
    Count,
    Enumerate,
}

/// A verified lift `w: P -> E`.
#[derive(Clone, Debug)]
pub struct Section {
    map: NaturalTransformation,
}

impl Section {
    pub fn transformation(&self) -> &NaturalTransformation {
        &self.map
    }

    pub fn into_transformation(self) -> NaturalTransformation {
        self.map
    }

    pub fn component(&self, n: usize) -> &[usize] {
        self.map.component(n)
    }
}

#[derive(Clone, Debug)]
pub enum Outcome<S> {
    Found(S),
    /// No section exists; the deepest level the search decided before
    /// running out of candidates.
    NoSection {
        deepest_level: usize,
    },
    Count(u64),
    Enumerated(Vec<S>),
}

impl<S> Outcome<S> {
    pub fn try_map<T>(self, mut f: impl FnMut(S) -> Result<T>) -> Result<Outcome<T>> {
        Ok(match self {
            Outcome::Found(s) => Outcome::Found(f(s)?),
            Outcome::NoSection { deepest_level } => Outcome::NoSection { deepest_level },
            Outcome::Count(c) => Outcome::Count(c),
            Outcome::Enumerated(all) => {
                Outcome::Enumerated(all.into_iter().map(f).collect::<Result<_>>()?)
            }
        })
    }

    /// Number of sections represented, when known.
    pub fn count(&self) -> Option<u64> {
        match self {
            Outcome::Found(_) => None,
            Outcome::NoSection { .. } => Some(0),
            Outcome::Count(c) => Some(*c),
            Outcome::Enumerated(all) => Some(all.len() as u64),
        }
    }

    pub fn exists(&self) -> bool {
        match self {
            Outcome::Found(_) => true,
            Outcome::NoSection { .. } => false,
            Outcome::Count(c) => *c > 0,
            Outcome::Enumerated(all) => !all.is_empty(),
        }
    }

    pub fn into_sections(self) -> Vec<S> {
        match self {
            Outcome::Found(s) => vec![s],
            Outcome::Enumerated(all) => all,
            _ => Vec::new(),
        }
    }
}

const UNSET: usize = usize::MAX;

struct Constraint {
    target_level: usize,
    domain_table: Vec<usize>,
    total_table: Vec<usize>,
}

struct Search<'p> {
    problem: &'p LiftingProblem,
    offsets: Vec<usize>,
    var_level: Vec<usize>,
    /// `fibers[n-1][y]`: elements of `E(n)` over `y`.
    fibers: Vec<Vec<Vec<usize>>>,
    /// Constraints out of each level, one per generating map.
    constraints: Vec<Vec<Constraint>>,
    assignment: Vec<usize>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    deepest: usize,
}

impl<'p> Search<'p> {
    fn new(problem: &'p LiftingProblem) -> Self {
        let depth = problem.depth();
        let class = problem.domain().index_class();
        let mut offsets = vec![0];
        let mut var_level = Vec::new();
        for n in 1..=depth {
            let size = problem.domain().level_size(n);
            var_level.extend(std::iter::repeat_n(n, size));
            offsets.push(offsets[n - 1] + size);
        }
        let fibers = (1..=depth).map(|n| problem.fibers(n)).collect();
        let constraints = (1..=depth)
            .map(|n| {
                IndexMap::generators_into(n, depth, class)
                    .into_iter()
                    .map(|s| Constraint {
                        target_level: s.source(),
                        domain_table: problem.domain().action_table(&s),
                        total_table: problem.total().action_table(&s),
                    })
                    .collect()
            })
            .collect();
        let vars = *offsets.last().unwrap();
        Search {
            problem,
            offsets,
            var_level,
            fibers,
            constraints,
            assignment: vec![UNSET; vars],
            trail: Vec::new(),
            queue: Vec::new(),
            deepest: 0,
        }
    }

    fn var(&self, n: usize, x: usize) -> usize {
        self.offsets[n - 1] + x
    }

    fn fiber_of(&self, var: usize) -> &[usize] {
        let n = self.var_level[var];
        let x = var - self.offsets[n - 1];
        let y = self.problem.along.component(n)[x];
        &self.fibers[n - 1][y]
    }

    fn admissible(&self, var: usize, e: usize) -> bool {
        let n = self.var_level[var];
        let x = var - self.offsets[n - 1];
        self.problem.over.component(n)[e] == self.problem.along.component(n)[x]
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let var = self.trail.pop().unwrap();
            self.assignment[var] = UNSET;
        }
    }

    /// Assign and propagate; on conflict the caller undoes to its mark.
    fn assign(&mut self, var: usize, value: usize) -> bool {
        self.assignment[var] = value;
        self.trail.push(var);
        self.queue.clear();
        self.queue.push(var);
        while let Some(current) = self.queue.pop() {
            let n = self.var_level[current];
            let x = current - self.offsets[n - 1];
            let e = self.assignment[current];
            for c in 0..self.constraints[n - 1].len() {
                let constraint = &self.constraints[n - 1][c];
                let forced = constraint.total_table[e];
                let other = self.var(constraint.target_level, constraint.domain_table[x]);
                match self.assignment[other] {
                    UNSET => {
                        if !self.admissible(other, forced) {
                            return false;
                        }
                        self.assignment[other] = forced;
                        self.trail.push(other);
                        self.queue.push(other);
                    }
                    existing if existing != forced => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn run(
        &mut self,
        from: usize,
        sink: &mut dyn FnMut(&[usize]) -> Result<ControlFlow<()>>,
    ) -> Result<ControlFlow<()>> {
        let Some(var) = (from..self.assignment.len()).find(|&v| self.assignment[v] == UNSET) else {
            return sink(&self.assignment);
        };
        self.deepest = self.deepest.max(self.var_level[var]);
        let candidates = self.fiber_of(var).to_vec();
        for e in candidates {
            let mark = self.trail.len();
            if self.assign(var, e) && self.run(var + 1, sink)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
            self.undo(mark);
        }
        Ok(ControlFlow::Continue(()))
    }
}

fn build_section(
    problem: &LiftingProblem,
    offsets: &[usize],
    assignment: &[usize],
) -> Result<Section> {
    let components = (1..=problem.depth())
        .map(|n| assignment[offsets[n - 1]..offsets[n]].to_vec())
        .collect();
    let map = NaturalTransformation::new(
        problem.domain().clone(),
        problem.total().clone(),
        components,
    )?;
    problem
        .check_section(&map)
        .map_err(|e| Error::UnverifiedSection(e.to_string()))?;
    Ok(Section { map })
}

/// Search for sections of `problem`.
pub fn solve_lifting(problem: &LiftingProblem, mode: SolveMode) -> Result<Outcome<Section>> {
    let mut search = Search::new(problem);
    let offsets = search.offsets.clone();
    let mut found: Vec<Section> = Vec::new();
    let mut count: u64 = 0;
    let mut sink = |assignment: &[usize]| -> Result<ControlFlow<()>> {
        let section = build_section(problem, &offsets, assignment)?;
        count += 1;
        match mode {
            SolveMode::FindOne => {
                found.push(section);
                Ok(ControlFlow::Break(()))
            }
            SolveMode::Enumerate => {
                found.push(section);
                Ok(ControlFlow::Continue(()))
            }
            SolveMode::Count => Ok(ControlFlow::Continue(())),
        }
    };
    let _ = search.run(0, &mut sink)?;
    let deepest = search.deepest.max(1);
    Ok(match mode {
        SolveMode::FindOne => match found.pop() {
            Some(section) => Outcome::Found(section),
            None => Outcome::NoSection {
                deepest_level: deepest,
            },
        },
        SolveMode::Count => Outcome::Count(count),
        SolveMode::Enumerate => Outcome::Enumerated(found),
    })
}
