//! Single-peaked preferences on a fixed axis: the ± sign encoding, the
//! Bruhat order their inversion sets induce, exhaustive Condorcet-domain
//! verification, and the interval/tiling geometry behind it all.
//!
//! A linear order on `{1..n}` is single-peaked when preference falls off
//! monotonically on both sides of its top alternative, i.e. when
//! each of its prefix sets is a consecutive interval. Growing such an order
//! outward from its peak takes one of two steps at a time (`+` extends the
//! interval upward, `-` downward), so a length n−1 sign sequence pins the
//! order down exactly. This crate builds everything on that encoding:
//!
//! - [`order`]: linear orders, inversion sets, ideals, recognition.
//! - [`sign`]: the codec, the inversion-count formula, and the two
//!   operations (flip the first sign; swap opposite neighbours) that walk
//!   cover edges of the Bruhat order.
//! - [`bruhat`]: cover digraphs over arbitrary domains, path search,
//!   semi-connectedness and lattice checks, DOT export.
//! - [`domain`]: enumeration of the full single-peaked domain, counting
//!   formulas, richness/width/peak-pit checkers, majority relations, and
//!   brute-force Condorcet verification.
//! - [`tiling`]: the interval digraph and its rhombus-tiling realization,
//!   with snake extraction and DOT/SVG export.
//!
//! All values are immutable after construction and every operation is a
//! pure function.

pub mod bruhat;
pub mod domain;
pub mod order;
pub mod sign;
pub mod tiling;

pub use bruhat::{is_lattice, is_semi_connected, leq, BruhatDigraph, BruhatError};
pub use domain::{
    classify_triple_restriction, count_by_top, enumerate_sp, has_maximal_width, is_condorcet_brute,
    is_minimally_rich, is_peak_pit, majority_relation, CondorcetCheck, Domain, DomainError,
    MajorityRelation, Profile, TripleClass,
};
pub use order::{InversionSet, LinearOrder, OrderError};
pub use sign::{Direction, Sign, SignError, SignSeq};
pub use tiling::{
    build_interval_graph, build_tiling, build_tiling_with, Interval, IntervalGraph, Snake, Tile,
    TilingError, TilingGeometry,
};
