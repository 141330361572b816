use thiserror::Error;

use crate::simplicial::IndexMap;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid index map: {0}")]
    InvalidIndexMap(String),

    #[error("cannot decalage at depth 1")]
    DecalageAtDepthOne,

    #[error(
        "insufficient depth: level {missing} is required but only levels 1..={available} exist"
    )]
    InsufficientDepth { missing: usize, available: usize },

    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("mismatched functors: {0}")]
    Mismatch(String),

    #[error("swap requires symmetric functor")]
    SwapRequiresSymmetric,

    #[error("malformed component table: {0}")]
    MalformedComponents(String),

    #[error("naturality fails at level {level} for map {map:?} on element {element}")]
    NotNatural {
        level: usize,
        map: IndexMap,
        element: usize,
    },

    #[error("fiber condition fails at level {level} on element {element}")]
    FiberViolation { level: usize, element: usize },

    #[error("section family has no constant head: level {level}, element {element}")]
    HeadNotConstant { level: usize, element: usize },

    #[error("lifting search returned an assignment that fails verification: {0}")]
    UnverifiedSection(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("parameter `{0}` of the reduct is not a parameter of the structure")]
    ParameterNotInBase(String),

    #[error(
        "universe has {size} elements, above the bound {bound} (raise it with --max-universe)"
    )]
    UniverseTooLarge { size: usize, bound: usize },

    #[error("tuple budget exceeded at level {level}: {tuples} tuples, budget {budget}")]
    BudgetExceeded {
        level: usize,
        tuples: u128,
        budget: u128,
    },

    #[error(
        "element `{element}` is not invariant: level {level}, tuple {tuple:?}, automorphism {automorphism:?}"
    )]
    NotInvariant {
        element: String,
        level: usize,
        tuple: Vec<String>,
        automorphism: Vec<String>,
    },

    #[error("parameter subset must be nonempty")]
    EmptySubset,

    #[error("subset {0:?} is not contained in the extension")]
    NotASubset(Vec<String>),

    #[error("extracted type depends on the evaluation point")]
    ExtractionNotConstant,

    #[error("invalid simplicial set: {0}")]
    InvalidSimplicialSet(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),
}
