//! Exact computations with the cone of Hilbert functions (h-vectors) of
//! artinian graded modules over `k[x, y]` with `deg(x) = 1` and
//! `deg(y) = n`.
//!
//! The crate enumerates the generators of the cone's extremal rays, decides
//! membership, decomposes members into positive rational chains of extremal
//! points, normalizes integer h-vectors to lex-segment staircases, and
//! cross-checks everything against exact rational LP oracles. All arithmetic
//! is in arbitrary-precision rationals; there is no floating point anywhere.

pub mod decompose;
pub mod diagram;
pub mod generators;
pub mod hvector;
pub mod oracle;
pub mod rational;
pub mod selftest;

pub use decompose::{
    InternalError, MembershipCertificate, RejectStep, Witness, decompose as decompose_hvector,
    is_chain, is_reduced, strip_max, validate_decomposition,
};
pub use diagram::{
    DiagramError, DiagramViolation, HDiagram, LexSegment, LexSegmentError, Monomial,
    RenderFormat, Staircase, check_hdiagram, extract_levels, lex_segment, render_hdiagram,
    render_staircase, staircase_hvector,
};
pub use generators::{
    Decomposition, ExtremalPoint, GeneratorError, extremal_points, glue, max_vector,
    tower_decomposition, tower_vector,
};
pub use hvector::{Grading, GradingError, HVector, HVectorError, leq_pointwise, linear_combine, parse_hvector};
pub use oracle::{
    Feasibility, LinearSystem, Membership, OracleError, Relation, cone_membership_via_ex,
    is_extremal_oracle, is_extremal_vector, lp_feasible, lp_feasible_fm, lp_feasible_simplex,
    membership_oracle,
};
pub use rational::{ParseRationalError, Rational};
