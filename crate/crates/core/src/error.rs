use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("group rank must be at least 1")]
    ZeroRank,
    #[error("invalid group element {exponents:?} for p = {p}, r = {r}")]
    InvalidElement { exponents: Vec<u32>, p: u32, r: usize },
    #[error("values come from different groups: (p, r) = ({0}, {1}) vs ({2}, {3})")]
    ContextMismatch(u32, usize, u32, usize),
    #[error("coefficient rings differ")]
    CoeffRingMismatch,
    #[error("operation requires coefficients in F_p")]
    RequiresModP,
    #[error("element is not in the augmentation ideal (augmentation = {0})")]
    NotInAugmentationIdeal(i64),
    #[error("expected {expected} tensor factors, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("permutation of size {perm} applied to a cochain of degree {degree}")]
    PermutationSize { perm: usize, degree: usize },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("exponent {0} out of range")]
    ExponentOutOfRange(u32),
    #[error("malformed q-sequence {q:?} for degree {m}")]
    MalformedQ { q: Vec<u32>, m: usize },
    #[error("algebra element is not homogeneous")]
    NotHomogeneous,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("size budget exceeded: {required} entries required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("a sign action needs p = 2 and integer coefficients")]
    InvalidAction,
    #[error("cup product of an empty list")]
    EmptyProduct,
    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
