//! Symbolic engine for the two-sided ideal theory of Leavitt path algebras
//! over finite graph presentations.
//!
//! The crate is organized around a handful of layers:
//!
//! * [`graph`] — finite directed graphs with edge bundles (multiplicity in
//!   `{1, 2, ..., ω}`) and the graph invariants that drive everything else:
//!   hereditary saturated closures, breaking vertices, maximal tails,
//!   Condition (K), cycles without exits, quotient graphs, admissible pairs.
//! * [`field`] / [`poly`] — exact univariate polynomial arithmetic over ℚ and
//!   F_p, including gcd, square-free decomposition, and irreducible
//!   factorization.
//! * [`ideal`] — the canonical normal form `I = I(H,S) + Σ ⟨f_i(c_i)⟩` for
//!   two-sided ideals, with sum, product, intersection, radical, and
//!   containment.
//! * [`classify`] — per-ideal predicates (prime, semiprime, prime-power) and
//!   whole-algebra predicates ("every proper ideal is ..."), with witnesses.
//! * [`factor`] — constructive factorizations into products of prime and
//!   semiprime ideals, certified by re-multiplication.
//! * [`oracle`] — independent brute-force models (matrix algebras for acyclic
//!   graphs, Laurent polynomials for a lone exit-free cycle) used to validate
//!   the symbolic rules.
//! * [`jsonio`] — JSON graph/ideal formats and DOT export, shared with the
//!   `lpa` command-line tool.

pub mod classify;
pub mod factor;
pub mod field;
pub mod fixtures;
pub mod graph;
pub mod ideal;
pub mod jsonio;
pub mod oracle;
pub mod poly;

mod poly_factor;
mod poly_parse;

use thiserror::Error;

/// Default cap on the number of simple cycles enumerated before giving up.
pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// Default degree bound for irreducible factorization over ℚ.
pub const DEFAULT_QDEG_BOUND: usize = 12;

/// Default seed for randomized equal-degree splitting.
pub const DEFAULT_SEED: u64 = 0x1ea7_a16e;

/// Tunables threaded through operations that factor polynomials or
/// enumerate cycles.
#[derive(Clone, Copy, Debug)]
pub struct EngineOpts {
    /// Degree bound for factorization over ℚ; exceeding it is an error.
    pub qdeg_bound: usize,
    /// Cap on simple-cycle enumeration; exceeding it is an error.
    pub cycle_cap: usize,
    /// Seed for randomized (but reproducible) polynomial splitting.
    pub seed: u64,
}

impl Default for EngineOpts {
    fn default() -> Self {
        EngineOpts {
            qdeg_bound: DEFAULT_QDEG_BOUND,
            cycle_cap: DEFAULT_CYCLE_CAP,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown bundle id `{0}`")]
    UnknownBundle(String),
    #[error("vertex set is not hereditary and saturated")]
    NotHereditarySaturated,
    #[error("pair (H,S) is not admissible: {0}")]
    InadmissiblePair(String),
    #[error("edge list does not form a cycle: {0}")]
    NotACycle(String),
    #[error("cycle has an exit in the quotient graph")]
    CycleHasExit,
    #[error("cycle meets H")]
    CycleMeetsH,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("degree bound exceeded: factoring degree {degree} over Q with bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("coefficient bound too large for exact factorization over Q")]
    CoefficientBound,
    #[error("cycle enumeration cap of {0} exceeded")]
    CycleCapExceeded(usize),
    #[error("operands live on different graphs")]
    GraphMismatch,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operation requires a proper ideal")]
    ImproperIdeal,
    #[error("factorization certificate failed verification: {0}")]
    VerificationFailure(String),
    #[error("graph not eligible for oracle: {0}")]
    Ineligible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
