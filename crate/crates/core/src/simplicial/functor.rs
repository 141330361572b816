use std::fmt;
use std::sync::Arc;

use super::index_map::{IndexClass, IndexMap};
use crate::error::{Error, Result};

/// Level sets and contravariant action of a concrete functor.
///
/// Elements of level `n` are the identifiers `0..level_size(n)`. The action of
/// `s: m -> n` sends level `n` to level `m`.
pub trait LevelAction: Send + Sync {
    fn level_size(&self, n: usize) -> usize;

    fn act(&self, s: &IndexMap, x: usize) -> usize;

    fn action_table(&self, s: &IndexMap) -> Vec<usize> {
        (0..self.level_size(s.target()))
            .map(|x| self.act(s, x))
            .collect()
    }

    /// Deepest level this action can evaluate.
    fn max_depth(&self) -> usize;

    /// Whether non-monotone maps act.
    fn symmetric(&self) -> bool;
}

/// The functor `n ↦ Aⁿ` represented by a finite set `A = {0..alphabet}`.
///
/// Level `n` enumerates tuples lexicographically, so tuple `(a_1..a_n)` has
/// identifier `Σ a_i · |A|^(n-i)`.
#[derive(Debug, Clone)]
pub struct TupleAction {
    alphabet: usize,
    depth: usize,
}

impl TupleAction {
    pub fn new(alphabet: usize, depth: usize) -> Self {
        TupleAction { alphabet, depth }
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &a| acc * self.alphabet + a)
    }

    pub fn decode(&self, n: usize, mut id: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = id % self.alphabet;
            id /= self.alphabet;
        }
        out
    }
}

impl LevelAction for TupleAction {
    fn level_size(&self, n: usize) -> usize {
        self.alphabet.pow(n as u32)
    }

    fn act(&self, s: &IndexMap, x: usize) -> usize {
        let tuple = self.decode(s.target(), x);
        s.values()
            .iter()
            .fold(0, |acc, &i| acc * self.alphabet + tuple[i])
    }

    fn max_depth(&self) -> usize {
        self.depth
    }

    fn symmetric(&self) -> bool {
        true
    }
}

#[derive(Clone)]
enum Node {
    Base(Arc<dyn LevelAction>),
    Constant(usize),
    Shifted(Arc<Node>, usize),
    Product(Arc<Node>, Arc<Node>),
}

impl Node {
    fn level_size(&self, n: usize) -> usize {
        match self {
            Node::Base(a) => a.level_size(n),
            Node::Constant(size) => *size,
            Node::Shifted(inner, k) => inner.level_size(n + k),
            Node::Product(a, b) => a.level_size(n) * b.level_size(n),
        }
    }

    fn act(&self, s: &IndexMap, x: usize) -> usize {
        match self {
            Node::Base(a) => a.act(s, x),
            Node::Constant(_) => x,
            Node::Shifted(inner, k) => inner.act(&s.shifted(*k), x),
            Node::Product(a, b) => {
                let below = b.level_size(s.target());
                let (xa, xb) = (x / below, x % below);
                a.act(s, xa) * b.level_size(s.source()) + b.act(s, xb)
            }
        }
    }

    fn action_table(&self, s: &IndexMap) -> Vec<usize> {
        match self {
            Node::Base(a) => a.action_table(s),
            Node::Constant(size) => (0..*size).collect(),
            Node::Shifted(inner, k) => inner.action_table(&s.shifted(*k)),
            Node::Product(a, b) => {
                let ta = a.action_table(s);
                let tb = b.action_table(s);
                let out_b = b.level_size(s.source());
                ta.iter()
                    .flat_map(|&ya| tb.iter().map(move |&yb| ya * out_b + yb))
                    .collect()
            }
        }
    }

    fn same(&self, other: &Node) -> bool {
        match (self, other) {
            (Node::Base(a), Node::Base(b)) => std::ptr::addr_eq(Arc::as_ptr(a), Arc::as_ptr(b)),
            (Node::Constant(a), Node::Constant(b)) => a == b,
            (Node::Shifted(a, j), Node::Shifted(b, k)) => j == k && a.same(b),
            (Node::Product(a1, a2), Node::Product(b1, b2)) => a1.same(b1) && a2.same(b2),
            _ => false,
        }
    }

    fn describe(&self) -> String {
        match self {
            Node::Base(_) => "F".into(),
            Node::Constant(size) => format!("const[{size}]"),
            Node::Shifted(inner, k) => format!("{}∘[+{k}]", inner.describe()),
            Node::Product(a, b) => format!("({} × {})", a.describe(), b.describe()),
        }
    }
}

/// A functor on levels `1..=depth` with finite value sets.
#[derive(Clone)]
pub struct TruncatedFunctor {
    depth: usize,
    class: IndexClass,
    node: Arc<Node>,
}

impl fmt::Debug for TruncatedFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedFunctor")
            .field("shape", &self.node.describe())
            .field("depth", &self.depth)
            .field("class", &self.class)
            .finish()
    }
}

impl TruncatedFunctor {
    pub fn from_action(
        action: Arc<dyn LevelAction>,
        depth: usize,
        class: IndexClass,
    ) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Mismatch("depth must be positive".into()));
        }
        if depth > action.max_depth() {
            return Err(Error::InsufficientDepth {
                missing: action.max_depth() + 1,
                available: action.max_depth(),
            });
        }
        if class == IndexClass::All && !action.symmetric() {
            return Err(Error::SwapRequiresSymmetric);
        }
        Ok(TruncatedFunctor {
            depth,
            class,
            node: Arc::new(Node::Base(action)),
        })
    }

    /// The constant functor at a set of `size` elements.
    pub fn constant(size: usize, depth: usize, class: IndexClass) -> Self {
        TruncatedFunctor {
            depth,
            class,
            node: Arc::new(Node::Constant(size)),
        }
    }

    pub fn product(&self, other: &TruncatedFunctor) -> Result<Self> {
        if self.depth != other.depth || self.class != other.class {
            return Err(Error::Mismatch(format!(
                "product of {self:?} and {other:?}"
            )));
        }
        Ok(TruncatedFunctor {
            depth: self.depth,
            class: self.class,
            node: Arc::new(Node::Product(self.node.clone(), other.node.clone())),
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn index_class(&self) -> IndexClass {
        self.class
    }

    pub fn level_size(&self, n: usize) -> usize {
        assert!(
            (1..=self.depth).contains(&n),
            "level {n} outside 1..={}",
            self.depth
        );
        self.node.level_size(n)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        (1..=self.depth).map(|n| self.level_size(n)).collect()
    }

    pub fn act(&self, s: &IndexMap, x: usize) -> usize {
        self.node.act(s, x)
    }

    /// The action of `s` on the whole level `s.target()`.
    pub fn action_table(&self, s: &IndexMap) -> Vec<usize> {
        self.node.action_table(s)
    }

    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth == 0 || depth > self.depth {
            return Err(Error::InsufficientDepth {
                missing: depth,
                available: self.depth,
            });
        }
        Ok(TruncatedFunctor {
            depth,
            ..self.clone()
        })
    }

    /// Restrict to a smaller index class, or widen when the data allows it.
    pub fn with_class(&self, class: IndexClass) -> Result<Self> {
        if class == IndexClass::All && !self.supports_all_maps() {
            return Err(Error::SwapRequiresSymmetric);
        }
        Ok(TruncatedFunctor {
            class,
            ..self.clone()
        })
    }

    fn supports_all_maps(&self) -> bool {
        fn walk(node: &Node) -> bool {
            match node {
                Node::Base(a) => a.symmetric(),
                Node::Constant(_) => true,
                Node::Shifted(inner, _) => walk(inner),
                Node::Product(a, b) => walk(a) && walk(b),
            }
        }
        walk(&self.node)
    }

    /// `F ∘ [+k]`, of depth `depth - k`.
    pub fn shift(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.depth <= k {
            return Err(Error::InsufficientDepth {
                missing: k + 1,
                available: self.depth,
            });
        }
        let node = match &*self.node {
            Node::Shifted(inner, j) => Node::Shifted(inner.clone(), j + k),
            _ => Node::Shifted(self.node.clone(), k),
        };
        Ok(TruncatedFunctor {
            depth: self.depth - k,
            class: self.class,
            node: Arc::new(node),
        })
    }

    /// The `k` with `self = base ∘ [+k]`, ignoring truncation depth.
    pub fn shift_relative_to(&self, base: &TruncatedFunctor) -> Option<usize> {
        fn split(node: &Arc<Node>) -> (&Node, usize) {
            match &**node {
                Node::Shifted(inner, k) => (inner, *k),
                other => (other, 0),
            }
        }
        if self.class != base.class {
            return None;
        }
        let (inner, k) = split(&self.node);
        let (base_inner, j) = split(&base.node);
        (inner.same(base_inner) && k >= j).then(|| k - j)
    }

    /// Same underlying data and index class, ignoring truncation depth.
    pub fn same_as(&self, other: &TruncatedFunctor) -> bool {
        self.class == other.class && self.node.same(&other.node)
    }

    /// Every admissible map, ordered by target level, then source level,
    /// then lexicographically.
    pub fn maps(&self) -> impl Iterator<Item = IndexMap> + '_ {
        (1..=self.depth).flat_map(move |n| {
            (1..=self.depth).flat_map(move |m| IndexMap::enumerate(m, n, self.class))
        })
    }

    /// First composable pair `(s, t)` breaking `act(s∘t) = act(t)∘act(s)`,
    /// checked on every admissible pair within depth.
    pub fn functoriality_violation(&self) -> Option<(IndexMap, IndexMap, usize)> {
        for n in 1..=self.depth {
            let size = self.level_size(n);
            for x in 0..size {
                let id = IndexMap::identity(n);
                if self.act(&id, x) != x {
                    return Some((id.clone(), id, x));
                }
            }
        }
        let maps: Vec<IndexMap> = self.maps().collect();
        let tables: Vec<Vec<usize>> = maps.iter().map(|s| self.action_table(s)).collect();
        for (i, s) in maps.iter().enumerate() {
            for (j, t) in maps.iter().enumerate() {
                if t.target() != s.source() {
                    continue;
                }
                let st = s.compose(t).expect("composable");
                let direct = self.action_table(&st);
                for (x, &y) in direct.iter().enumerate() {
                    if tables[j][tables[i][x]] != y {
                        return Some((s.clone(), t.clone(), x));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuples(alphabet: usize, depth: usize) -> TruncatedFunctor {
        TruncatedFunctor::from_action(
            Arc::new(TupleAction::new(alphabet, depth)),
            depth,
            IndexClass::All,
        )
        .unwrap()
    }

    #[test]
    fn tuple_functor_is_functorial() {
        assert!(tuples(2, 3).functoriality_violation().is_none());
    }

    #[test]
    fn shifted_functor_is_functorial() {
        let f = tuples(2, 4).shift(1).unwrap();
        assert_eq!(f.depth(), 3);
        assert_eq!(f.level_size(1), 4);
        assert!(f.functoriality_violation().is_none());
    }

    #[test]
    fn product_with_constant_is_functorial() {
        let f = tuples(2, 3);
        let c = TruncatedFunctor::constant(3, 3, IndexClass::All);
        let p = c.product(&f).unwrap();
        assert_eq!(p.level_sizes(), vec![6, 12, 24]);
        assert!(p.functoriality_violation().is_none());
    }

    #[test]
    fn shifting_twice_normalises() {
        let f = tuples(2, 5);
        let a = f.shift(1).unwrap().shift(1).unwrap();
        let b = f.shift(2).unwrap();
        assert!(a.same_as(&b));
        assert!(!a.same_as(&f.shift(1).unwrap()));
    }

    #[test]
    fn class_widening_requires_symmetry() {
        let f = tuples(2, 2).with_class(IndexClass::Monotone).unwrap();
        assert!(f.with_class(IndexClass::All).is_ok());
    }

    #[test]
    fn decode_inverts_encode() {
        let t = TupleAction::new(3, 4);
        let tuple = vec![2, 0, 1];
        assert_eq!(t.decode(3, t.encode(&tuple)), tuple);
    }
}
