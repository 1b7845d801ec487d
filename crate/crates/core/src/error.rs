//! Error type shared by every validator and constructor.
//!
//! Axiom failures carry the lexicographically first violating tuple, so the
//! same input always produces the same witness.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // shape and range
    #[error("structure must have at least one element")]
    EmptyCarrier,
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("table entry at ({row}, {col}) is {value}, outside 0..{size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("index {index} outside 0..{size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("labels: expected {expected}, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("map has length {found}, expected {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("structure mismatch: {0}")]
    Mismatch(String),

    // rack axioms
    #[error("column {column} is not a bijection: {first} and {second} both map to {image}")]
    NonBijectiveColumn {
        column: usize,
        first: usize,
        second: usize,
        image: usize,
    },
    #[error("self-distributivity fails at ({a}, {b}, {c})")]
    SelfDistributivityFail { a: usize, b: usize, c: usize },
    #[error("not pointed: {left} ◁ {right} = {result}")]
    NotPointed {
        left: usize,
        right: usize,
        result: usize,
    },

    // homomorphisms
    #[error("hom law fails at ({a}, {b})")]
    HomLawFail { a: usize, b: usize },
    #[error("basepoint {basepoint} maps to {image}, expected {expected}")]
    BasepointNotPreserved {
        basepoint: usize,
        image: usize,
        expected: usize,
    },

    // subracks
    #[error("subset does not contain the basepoint {basepoint}")]
    BasepointMissing { basepoint: usize },
    #[error("subset is not closed: {n} ◁ {r} = {result} lies outside")]
    NotNormal { n: usize, r: usize, result: usize },

    // groups
    #[error("identity law fails for element {element}")]
    IdentityFail { element: usize },
    #[error("element {element} has no inverse")]
    InverseFail { element: usize },
    #[error("associativity fails at ({a}, {b}, {c})")]
    AssociativityFail { a: usize, b: usize, c: usize },
    #[error("subset is not a subgroup: {a}·{b} = {result} lies outside")]
    NotSubgroup { a: usize, b: usize, result: usize },
    #[error("subgroup is not normal: {g}⁻¹·{m}·{g} = {result} lies outside")]
    NotNormalSubgroup { m: usize, g: usize, result: usize },

    // rack actions
    #[error("action axiom (s·r)·r' = (s·r')·(r◁r') fails at ({s}, {r}, {r2})")]
    ActionAxiom1Fail { s: usize, r: usize, r2: usize },
    #[error("action axiom (s◁s')·r = (s·r)◁(s'·r) fails at ({s}, {s2}, {r})")]
    ActionAxiom2Fail { s: usize, s2: usize, r: usize },
    #[error("action is not pointed: {s}·{r} = {result}")]
    PointednessFail { s: usize, r: usize, result: usize },
    #[error("constructed table is not a rack: {0}")]
    ResultNotRack(Box<Error>),

    // crossed modules of racks
    #[error("X1 fails at ({r}, {s}): ∂(r·s) ≠ ∂(r)◁s")]
    X1Fail { r: usize, s: usize },
    #[error("X2 fails at ({r}, {r2}): r·∂(r') ≠ r◁r'")]
    X2Fail { r: usize, r2: usize },
    #[error("boundary square fails at {element}")]
    BoundarySquareFail { element: usize },
    #[error("action square fails at ({r}, {s})")]
    ActionSquareFail { r: usize, s: usize },

    // crossed modules of groups
    #[error("{n} does not act by a homomorphism at ({m1}, {m2})")]
    GroupActionNotAutomorphism { m1: usize, m2: usize, n: usize },
    #[error("identity does not act trivially on {m}")]
    GroupActionIdentityFail { m: usize },
    #[error("action is not a right action at ({m}, {n1}, {n2})")]
    GroupActionCompositionFail { m: usize, n1: usize, n2: usize },
    #[error("equivariance μ(m·n) = n⁻¹μ(m)n fails at ({m}, {n})")]
    EquivarianceFail { m: usize, n: usize },
    #[error("Peiffer identity m·μ(m') = m'⁻¹mm' fails at ({m}, {m2})")]
    PeifferFail { m: usize, m2: usize },

    // pullbacks and universality
    #[error("input is not a crossed module morphism: {0}")]
    NotAMorphism(Box<Error>),
    #[error("({p}, {s}) is not in the pullback carrier")]
    ImageOutsideCarrier { p: usize, s: usize },
    #[error("expected exactly one factorization, found {count}")]
    UniquenessFail {
        count: usize,
        witnesses: Vec<Vec<usize>>,
    },
    #[error("brute-force search space {size} exceeds limit {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },
    #[error("no crossed module isomorphism between the two sides")]
    NoIsomorphismFound,

    // adjunction
    #[error("adjunction bijection fails: {0}")]
    BijectionFail(String),

    // enumeration
    #[error("order {n} exceeds enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
}
