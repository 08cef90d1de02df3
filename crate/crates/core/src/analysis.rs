//! Strategy facts read off solved polynomials: who wins, which edge profiles
//! the dominant strategies have, whether those strategies are positional,
//! which edge subsets still suffice to win, and whether a saturated edge is
//! traversed infinitely often in some play.
//!
//! Everything in this module is a pure reading of polynomials produced by the
//! solver under the strategy-tracking interpretation: each monomial is the
//! edge profile of one absorption-dominant winning strategy, with exponents
//! counting how often the strategy tree uses each edge.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::game::{BuchiGame, Player};
use crate::poly::{Exp, IndetKind, Monomial, Poly, Subject, Universe};

/// Errors raised by the play-occurrence diagnosis.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    /// The queried edge has no indeterminate in the polynomial universe.
    #[error("edge `{edge}` is not tracked by the polynomial")]
    UntrackedEdge { edge: String },
    /// The occurrence question is only meaningful for edges the profile uses
    /// infinitely often; finite exponents already answer it.
    #[error("monomial `{monomial}` uses edge `{edge}` only finitely often")]
    EdgeNotSaturated { edge: String, monomial: String },
    /// No monomial at the edge's destination absorbs the queried monomial,
    /// which means the inputs do not come from one consistent solution.
    #[error("no monomial at `{position}` absorbs `{monomial}`")]
    NoAbsorbingWitness { position: String, monomial: String },
}

/// The edge profile of one strategy: how often each game edge occurs in its
/// strategy tree. Entries are sorted by edge index; absent edges occur zero
/// times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeProfile {
    pub counts: Vec<(u32, Exp)>,
}

/// One absorption-dominant winning strategy from `origin`, described by its
/// monomial. The strategy is positional when no Player-0 position has more
/// than one outgoing edge in the profile's support; in that case `choices`
/// lists the successor picked at each Player-0 position the strategy visits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyReport {
    pub origin: u32,
    pub monomial: String,
    pub profile: EdgeProfile,
    pub positional: bool,
    pub choices: Vec<(u32, u32)>,
}

/// The answer to an occurrence question, together with the witness monomial
/// at the edge's destination that justifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub infinite: bool,
    pub witness: String,
}

/// The game edge an indeterminate stands for, if it stands for one.
fn edge_of_indet(game: &BuchiGame, universe: &Universe, idx: u32) -> Option<u32> {
    if universe.kind(idx) != IndetKind::Edge {
        return None;
    }
    let Subject::Edge(from, to) = universe.subject(idx) else {
        return None;
    };
    let from = game.position_index(from).ok()?;
    let to = game.position_index(to).ok()?;
    game.edge_between(from, to)
}

/// Whether Player 0 has a winning strategy from the position the polynomial
/// was solved at: exactly the nonzero polynomials are winning.
pub fn winner(poly: &Poly) -> bool {
    !poly.is_zero()
}

/// One report per monomial of the strategy polynomial solved at `origin`,
/// in the polynomial's canonical order.
pub fn profiles(poly: &Poly, game: &BuchiGame, origin: u32) -> Vec<StrategyReport> {
    let universe = poly.universe();
    poly.monomials()
        .iter()
        .map(|m| {
            let mut counts: Vec<(u32, Exp)> = m
                .factors()
                .iter()
                .filter_map(|&(idx, exp)| Some((edge_of_indet(game, universe, idx)?, exp)))
                .collect();
            counts.sort_unstable_by_key(|&(e, _)| e);
            let mut out_choices: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            for &(e, _) in &counts {
                let edge = game.edge(e);
                if game.position(edge.from).owner == Player::P0 {
                    out_choices.entry(edge.from).or_default().push(e);
                }
            }
            let positional = out_choices.values().all(|picked| picked.len() == 1);
            let choices = if positional {
                out_choices
                    .iter()
                    .map(|(&pos, picked)| (pos, game.edge(picked[0]).to))
                    .collect()
            } else {
                Vec::new()
            };
            StrategyReport {
                origin,
                monomial: universe.render_monomial(m),
                profile: EdgeProfile { counts },
                positional,
                choices,
            }
        })
        .collect()
}

/// Whether Player 0 still wins when play may only use the `allowed` edges:
/// true exactly when some monomial's support lies inside the allowed set.
pub fn wins_with_subset(poly: &Poly, game: &BuchiGame, allowed: &[u32]) -> bool {
    let universe = poly.universe();
    let allowed: BTreeSet<u32> = allowed.iter().copied().collect();
    poly.monomials().iter().any(|m| {
        m.support()
            .all(|idx| edge_of_indet(game, universe, idx).is_some_and(|e| allowed.contains(&e)))
    })
}

/// Whether the strategy described by `m` admits a play traversing `edge`
/// infinitely often. `m` must be a monomial of the solution at some position
/// with `m(edge) = ∞`, and `all_polys` must hold the solution polynomial of
/// every position.
///
/// The strategy tree below the edge's destination `w` is itself a dominant
/// strategy from `w`, so its profile is absorbed by some monomial of the
/// solution at `w`; the edge occurs infinitely often in a play exactly when
/// it occurs in that monomial's support. Since the solution at `w` is an
/// antichain, the absorbing monomials are pairwise incomparable and the
/// canonically first one serves as the reported witness.
pub fn edge_occurrence_in_plays(
    game: &BuchiGame,
    all_polys: &[Poly],
    m: &Monomial,
    edge: u32,
) -> Result<Occurrence, AnalysisError> {
    debug_assert_eq!(all_polys.len(), game.position_count());
    let display = game.edge(edge).display().to_string();
    let universe = all_polys[0].universe();
    let (from, to) = game.edge_endpoints(edge);
    let idx = universe
        .find(
            IndetKind::Edge,
            &Subject::Edge(from.to_string(), to.to_string()),
        )
        .ok_or(AnalysisError::UntrackedEdge { edge: display.clone() })?;
    if m.exp(idx) != Exp::Inf {
        return Err(AnalysisError::EdgeNotSaturated {
            edge: display,
            monomial: universe.render_monomial(m),
        });
    }
    let dest = game.edge(edge).to;
    let witness = all_polys[dest as usize]
        .monomials()
        .iter()
        .find(|w| w.absorbs(m))
        .ok_or_else(|| AnalysisError::NoAbsorbingWitness {
            position: game.position(dest).id.clone(),
            monomial: universe.render_monomial(m),
        })?;
    Ok(Occurrence {
        infinite: witness.exp(idx) != Exp::Fin(0),
        witness: universe.render_monomial(witness),
    })
}
