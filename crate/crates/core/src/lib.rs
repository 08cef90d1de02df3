//! Semiring-valued analysis of Büchi games.
//!
//! A Büchi game is played on a finite directed graph by two players who move a
//! token along edges forever; Player 0 wins a play if it visits a designated
//! set of target positions infinitely often. Instead of merely deciding who
//! wins, this crate evaluates the winning condition in an *absorptive
//! semiring*. The flagship instance is the polynomial semiring over edge
//! indeterminates: the value computed for a position is then a polynomial
//! whose monomials are exactly the edge profiles of the dominant winning
//! strategies of Player 0 — how often each edge is used, with exponent `inf`
//! for edges used infinitely often.
//!
//! From that single polynomial value a number of questions can be answered
//! without re-solving the game:
//!
//! * who wins, and with which (positional or non-positional) strategies
//!   ([`analysis`]),
//! * whether Player 0 still wins when play is restricted to a subset of the
//!   edges ([`analysis::wins_with_subset`]),
//! * which minimal edge additions/deletions repair a lost game, and which
//!   target sets make a position winning ([`repair`]),
//! * quantitative measures such as the cheapest total edge cost of winning
//!   ([`repair::cost_occurrences`], [`repair::cost_unlock`]).
//!
//! The solver ([`solver`]) evaluates the fixed-point definition of the
//! winning region directly over the chosen semiring, and an independent
//! brute-force oracle ([`oracle`]) — a classical Büchi solver plus exhaustive
//! strategy enumeration — cross-checks it on small games.

pub mod analysis;
pub mod game;
pub mod interp;
pub mod oracle;
pub mod poly;
pub mod repair;
pub mod semiring;
pub mod solver;

pub use analysis::{AnalysisError, EdgeProfile, Occurrence, StrategyReport};
pub use game::{BuchiGame, GameError, Player};
pub use oracle::{Guards, OracleError};
pub use repair::{Repair, RepairError, TargetChoice};
pub use poly::{Exp, Monomial, Poly, PolySemiring, Universe};
pub use semiring::Semiring;
pub use solver::{eval_win0, eval_win0_all, verify_fixpoint, SolverError, SolverTrace};
