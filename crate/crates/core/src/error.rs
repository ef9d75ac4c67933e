//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("image array is not a bijection")]
    NotAPermutation,
    #[error("element index {0} out of range for group of order {1}")]
    IndexOutOfRange(usize, usize),
    #[error("multiplication table is not square of the declared order")]
    MalformedTable,
    #[error("table entry out of range")]
    EntryOutOfRange,
    #[error("row or column {0} of the table is not a permutation (Latin square violated)")]
    NotLatin(usize),
    #[error("no two-sided identity element found")]
    NoIdentity,
    #[error("associativity fails at triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("groups of order {0} are not supported (maximum 16)")]
    OrderTooLarge(usize),
    #[error("names list does not match group order")]
    BadNames,
    #[error("generator index invalid or generators do not generate the group")]
    BadGenerators,
    #[error("invalid group file: {0}")]
    BadFile(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubgroupError {
    #[error("set of permutations is not closed under composition")]
    NotClosed,
    #[error("closure exceeded the size cap of {0}")]
    SizeCapExceeded(usize),
    #[error("search budget exhausted ({0} composition steps)")]
    BudgetExceeded(u64),
    #[error("empty generating set")]
    EmptyGenerators,
    #[error("type classification requires order 8, got {0}")]
    WrongOrderForType(usize),
    #[error("element order multiset matches no group of order 8")]
    UnrecognisedType,
    #[error("subgroup fails the {0} requirement")]
    NotRegularNormalized(&'static str),
    #[error("permutation degree {0} does not match group order {1}")]
    DegreeMismatch(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NameError {
    #[error("family {family}: invalid generator pair (s={s}, t={t})")]
    BadPair {
        family: &'static str,
        s: String,
        t: String,
    },
    #[error("cannot parse structure name: {0}")]
    Parse(String),
    #[error("operation requires a C-family name")]
    NotCFamily,
    #[error("generator {0} is not one of the name's designated symbols")]
    ForeignGenerator(String),
    #[error("named structures are only defined for the quaternion group of order 8")]
    NotQ8,
    #[error("constructed subgroup has type {got} where {want} was required")]
    TypeMismatch { want: String, got: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero is not a valid argument here")]
    ZeroInput,
    #[error("{0} is not a prime, so it does not name a finite place")]
    NotAPlace(u64),
    #[error("square class {0} is a square; the quadratic extension is degenerate")]
    DegenerateQuadratic(i64),
    #[error("(a, b) = ({0}, {1}) does not define a biquadratic field (a, b, ab must all be nonsquares)")]
    DegenerateBiquadratic(i64, i64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unit vector is not a two-sided identity")]
    BadUnit,
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("subgroup is not normalized by the left regular image")]
    NotNormalized,
    #[error("action map {0} is not an algebra automorphism")]
    ActionNotAutomorphism(usize),
    #[error("fixed subspace is not closed under multiplication")]
    FixedSpaceNotClosed,
    #[error("dual-group decomposition requires exponent 2")]
    NotExponentTwo,
    #[error("family basis is unavailable: {0}")]
    NoFamilyBasis(String),
    #[error("commutative block of dimension {0} could not be split or labelled")]
    StuckBlock(usize),
    #[error("computed decomposition disagrees with the family template: computed {computed}, template {template}")]
    BlockMismatch { computed: String, template: String },
    #[error("vector lies outside the expected span")]
    OutsideSpan,
    #[error(transparent)]
    Arith(#[from] ArithError),
}
