use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Validation failures carry the tuple of indices that witnesses them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A table is not square, has the wrong length, or holds an entry out of range.
    ShapeMismatch(String),
    NotAssociative { a: usize, b: usize, c: usize },
    NoIdentity,
    /// The identity exists but is not index 0.
    IdentityNotZero(usize),
    NoInverse(usize),
    /// Idempotency fails: `x * x != x`.
    NotIdempotent(usize),
    /// Right invertibility fails: column `y` maps `x1` and `x2` to the same element.
    ColumnNotBijective { y: usize, x1: usize, x2: usize },
    /// Right self-distributivity fails at `(x, y, z)`.
    NotSelfDistributive { x: usize, y: usize, z: usize },
    NotAPermutation,
    /// A map that was required to be a homomorphism/automorphism is not.
    NotAHomomorphism { context: &'static str, witness: Vec<usize> },
    /// A cocycle identity (named by `condition`) fails at `witness`.
    CocycleViolation { condition: &'static str, witness: Vec<usize> },
    /// A quandle-module identity fails at `witness`.
    ModuleViolation { identity: &'static str, witness: Vec<usize> },
    NotAbelian { a: usize, b: usize },
    NotSymmetric { x: usize, y: usize },
    /// The subset offered as a normal subgroup is not one.
    NotNormalSubgroup(String),
    /// An automorphism sends `element` of the subgroup it should preserve outside it.
    SubgroupNotPreserved { element: usize },
    InvalidArgument(String),
    /// A configured search or size limit would be exceeded.
    CapExceeded { what: &'static str, needed: u128, cap: u128 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::NotAssociative { a, b, c } => {
                write!(f, "not associative: ({a}·{b})·{c} != {a}·({b}·{c})")
            }
            Error::NoIdentity => write!(f, "no identity element"),
            Error::IdentityNotZero(e) => write!(f, "identity is {e}, expected index 0"),
            Error::NoInverse(a) => write!(f, "element {a} has no inverse"),
            Error::NotIdempotent(x) => write!(f, "idempotency fails: {x}*{x} != {x}"),
            Error::ColumnNotBijective { y, x1, x2 } => {
                write!(f, "right invertibility fails: column {y} sends {x1} and {x2} to the same element")
            }
            Error::NotSelfDistributive { x, y, z } => {
                write!(f, "right self-distributivity fails at (x, y, z) = ({x}, {y}, {z})")
            }
            Error::NotAPermutation => write!(f, "not a permutation"),
            Error::NotAHomomorphism { context, witness } => {
                write!(f, "{context}: not a homomorphism, witness {witness:?}")
            }
            Error::CocycleViolation { condition, witness } => {
                write!(f, "{condition} fails at {witness:?}")
            }
            Error::ModuleViolation { identity, witness } => {
                write!(f, "module identity {identity} fails at {witness:?}")
            }
            Error::NotAbelian { a, b } => write!(f, "group is not abelian: {a}·{b} != {b}·{a}"),
            Error::NotSymmetric { x, y } => write!(f, "cocycle is not symmetric at ({x}, {y})"),
            Error::NotNormalSubgroup(msg) => write!(f, "not a normal subgroup: {msg}"),
            Error::SubgroupNotPreserved { element } => {
                write!(f, "automorphism moves subgroup element {element} outside the subgroup")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::CapExceeded { what, needed, cap } => {
                write!(f, "{what}: search size {needed} exceeds cap {cap}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
