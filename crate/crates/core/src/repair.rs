//! Game repairs, target-set synthesis, and cost measures, all read off
//! solved polynomials.
//!
//! A lost game can be repaired by deleting some existing edges and adding
//! some new ones. Solving under the repair interpretation — candidate edges
//! get a dual indeterminate pair, presence `X_e` and absence `X̄_e` — makes
//! every monomial of the solution describe one way to win: the repair that
//! deletes the candidates whose absence variable occurs and adds the
//! candidates whose presence variable occurs. Target synthesis works the
//! same way one level up, re-deciding target membership per position instead
//! of edge presence. The cost measures evaluate the strategy polynomial in
//! the tropical semiring, either with multiplicities (pay per traversal) or
//! on supports (pay once per edge used).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::game::BuchiGame;
use crate::interp::{build_repair, build_strat, build_target, InterpError};
use crate::poly::{eval_hom, Assignment, EvalError, IndetKind, Poly, Subject};
use crate::semiring::{TropicalCost, TropicalSemiring};
use crate::solver::{eval_win0, SolverError};

/// Errors from the repair and cost operations: everything is propagated
/// from interpretation building, solving, or evaluation.
#[derive(Debug, Error)]
pub enum RepairError {
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// One way to make the query position winning: delete the `removals` (edge
/// indices of the game) and add the `additions` (absent position pairs).
/// `minimal` marks the set-inclusion-minimal repairs among those emitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repair {
    pub removals: Vec<u32>,
    pub additions: Vec<(u32, u32)>,
    pub minimal: bool,
}

/// One admissible target set for the arena: declaring these positions (or
/// any superset) as targets makes the query position winning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetChoice {
    pub positions: Vec<u32>,
    pub minimal: bool,
}

/// All repairs over the candidate edges that make `v` winning, one per
/// monomial of the repair polynomial, deduplicated and in first-occurrence
/// order. Non-minimal repairs are retained — each one still wins — with
/// only the set-inclusion-minimal ones flagged; every minimal repair of the
/// game over these candidates appears.
pub fn repairs(
    game: &BuchiGame,
    v: u32,
    removable: &[u32],
    addable: &[(u32, u32)],
) -> Result<Vec<Repair>, RepairError> {
    let interp = build_repair(game, removable, addable)?;
    let (poly, _) = eval_win0(game, &interp, v)?;
    let universe = poly.universe();
    let mut emitted: Vec<(Vec<u32>, Vec<(u32, u32)>)> = Vec::new();
    for m in poly.monomials() {
        let mut removals = Vec::new();
        let mut additions = Vec::new();
        for idx in m.support() {
            let Subject::Edge(from, to) = universe.subject(idx) else {
                continue;
            };
            let from = game
                .position_index(from)
                .expect("universe subjects name game positions");
            let to = game
                .position_index(to)
                .expect("universe subjects name game positions");
            // an absence variable of a present edge demands its deletion; a
            // presence variable of an absent pair demands its addition — the
            // other two combinations just record the unmodified game
            match (universe.kind(idx), game.edge_between(from, to)) {
                (IndetKind::NegEdge, Some(e)) => removals.push(e),
                (IndetKind::Edge, None) => additions.push((from, to)),
                _ => {}
            }
        }
        removals.sort_unstable();
        additions.sort_unstable();
        if !emitted.contains(&(removals.clone(), additions.clone())) {
            emitted.push((removals, additions));
        }
    }
    Ok(flag_minimal(emitted, |(r, a), (r2, a2)| {
        subset(r, r2) && subset(a, a2)
    })
    .into_iter()
    .map(|((removals, additions), minimal)| Repair {
        removals,
        additions,
        minimal,
    })
    .collect())
}

/// All target-set choices that make `u` winning in the arena, one per
/// monomial of the target polynomial: the positions whose membership
/// variable occurs positively. The arena's own target set is ignored —
/// membership is what is being decided. With `track_negatives` off the
/// polynomial cannot distinguish a choice from its supersets, so exactly
/// the minimal choices appear.
pub fn synthesize_targets(
    arena: &BuchiGame,
    u: u32,
    track_negatives: bool,
) -> Result<Vec<TargetChoice>, RepairError> {
    let interp = build_target(arena, track_negatives);
    let (poly, _) = eval_win0(arena, &interp, u)?;
    let universe = poly.universe();
    let mut emitted: Vec<Vec<u32>> = Vec::new();
    for m in poly.monomials() {
        let mut positions: Vec<u32> = m
            .support()
            .filter(|&idx| universe.kind(idx) == IndetKind::Target)
            .map(|idx| {
                let Subject::Pos(id) = universe.subject(idx) else {
                    unreachable!("target indeterminates are per-position")
                };
                arena
                    .position_index(id)
                    .expect("universe subjects name arena positions")
            })
            .collect();
        positions.sort_unstable();
        if !emitted.contains(&positions) {
            emitted.push(positions);
        }
    }
    Ok(flag_minimal(emitted, |a, b| subset(a, b))
        .into_iter()
        .map(|(positions, minimal)| TargetChoice { positions, minimal })
        .collect())
}

/// The cheapest total cost of winning from `v` when every traversal of an
/// edge in the strategy tree is paid for: the strategy polynomial evaluated
/// in the tropical semiring, exponents multiplying the edge costs (so a
/// positive-cost edge used infinitely often costs `+infinity`, a free one
/// nothing). `+infinity` when Player 0 loses from `v`.
pub fn cost_occurrences(game: &BuchiGame, v: u32) -> Result<TropicalCost, RepairError> {
    let (poly, h) = strategy_value_and_costs(game, v)?;
    Ok(eval_hom(&poly, &h, &TropicalSemiring)?)
}

/// The cheapest cost of winning from `v` when each edge is paid for once,
/// no matter how often the strategy uses it: exponents are dropped first,
/// then each monomial sums the costs of its support and the minimum is
/// taken.
pub fn cost_unlock(game: &BuchiGame, v: u32) -> Result<TropicalCost, RepairError> {
    let (poly, h) = strategy_value_and_costs(game, v)?;
    Ok(eval_hom(&poly.drop_exponents(), &h, &TropicalSemiring)?)
}

/// The full strategy polynomial at `v` plus the cost assignment for its
/// universe. Every edge must carry a cost.
fn strategy_value_and_costs(
    game: &BuchiGame,
    v: u32,
) -> Result<(Poly, Assignment<TropicalCost>), RepairError> {
    let all: Vec<u32> = (0..game.edges().len() as u32).collect();
    let interp = build_strat(game, &all, false);
    let (poly, _) = eval_win0(game, &interp, v)?;
    let mut h = Assignment::empty(poly.universe());
    for &e in &all {
        let edge = game.edge(e);
        let cost = edge.cost.ok_or_else(|| InterpError::MissingCost {
            label: edge.display().to_string(),
        })?;
        let (from, to) = game.edge_endpoints(e);
        let idx = poly
            .universe()
            .find(
                IndetKind::Edge,
                &Subject::Edge(from.to_string(), to.to_string()),
            )
            .expect("tracked edge is in the universe");
        h.set(
            idx,
            TropicalCost::from_f64(cost).expect("validated game costs are admissible"),
        );
    }
    Ok((poly, h))
}

/// Whether sorted `a` is a subset of sorted `b`.
fn subset<T: Ord>(a: &[T], b: &[T]) -> bool {
    let b: BTreeSet<&T> = b.iter().collect();
    a.iter().all(|x| b.contains(x))
}

/// Pairs each entry with whether no *other distinct* entry is strictly
/// contained in it under `le`.
fn flag_minimal<T: PartialEq>(items: Vec<T>, le: impl Fn(&T, &T) -> bool) -> Vec<(T, bool)> {
    let minimal: Vec<bool> = items
        .iter()
        .map(|it| !items.iter().any(|other| other != it && le(other, it)))
        .collect();
    items.into_iter().zip(minimal).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::build_target;
    use crate::solver::eval_win0_all;

    #[test]
    fn loop_game_repairs_match_the_worked_example() {
        let g = BuchiGame::parse(include_str!("../../../games/repair_loop.json")).unwrap();
        let a = g.edge_by_display("a").unwrap();
        let b = g.edge_by_display("b").unwrap();
        let v = g.position_index("v").unwrap();
        let w = g.position_index("w").unwrap();
        let out = repairs(&g, v, &[a, b], &[(w, w)]).unwrap();
        // deleting a alone already wins; deleting a and adding the w-loop
        // also wins but is not minimal
        assert_eq!(
            out,
            [
                Repair {
                    removals: vec![a],
                    additions: vec![],
                    minimal: true,
                },
                Repair {
                    removals: vec![a],
                    additions: vec![(w, w)],
                    minimal: false,
                },
            ]
        );
    }

    #[test]
    fn winning_positions_emit_the_empty_repair() {
        let g = BuchiGame::parse(include_str!("../../../games/two_loop.json")).unwrap();
        let a = g.edge_by_display("a").unwrap();
        let v = g.position_index("v").unwrap();
        let out = repairs(&g, v, &[a], &[]).unwrap();
        assert_eq!(
            out,
            [Repair {
                removals: vec![],
                additions: vec![],
                minimal: true,
            }]
        );
    }

    #[test]
    fn target_synthesis_lists_the_choices_from_a() {
        let g = BuchiGame::parse(include_str!("../../../games/target_arena.json")).unwrap();
        let a = g.position_index("a").unwrap();
        let (values, _) = eval_win0_all(&g, &build_target(&g, true)).unwrap();
        assert_eq!(values[a as usize].render(), "f[a] + f[b]·f[c]·~f[a]");
        let out = synthesize_targets(&g, a, true).unwrap();
        assert_eq!(
            out,
            [
                TargetChoice {
                    positions: vec![0],
                    minimal: true,
                },
                TargetChoice {
                    positions: vec![1, 2],
                    minimal: true,
                },
            ]
        );
    }

    #[test]
    fn target_synthesis_flags_the_non_minimal_choice_from_b() {
        let g = BuchiGame::parse(include_str!("../../../games/target_arena.json")).unwrap();
        let b = g.position_index("b").unwrap();
        let (values, _) = eval_win0_all(&g, &build_target(&g, true)).unwrap();
        assert_eq!(
            values[b as usize].render(),
            "f[a]·f[b]·f[c] + f[a]·f[c]·~f[b] + f[b]·f[c]·~f[a]"
        );
        let out = synthesize_targets(&g, b, true).unwrap();
        assert_eq!(
            out,
            [
                TargetChoice {
                    positions: vec![0, 1, 2],
                    minimal: false,
                },
                TargetChoice {
                    positions: vec![0, 2],
                    minimal: true,
                },
                TargetChoice {
                    positions: vec![1, 2],
                    minimal: true,
                },
            ]
        );
    }

    #[test]
    fn untracked_negatives_collapse_to_the_minimal_choices() {
        let g = BuchiGame::parse(include_str!("../../../games/target_arena.json")).unwrap();
        let a = g.position_index("a").unwrap();
        let b = g.position_index("b").unwrap();
        let (values, _) = eval_win0_all(&g, &build_target(&g, false)).unwrap();
        assert_eq!(values[a as usize].render(), "f[a] + f[b]·f[c]");
        assert_eq!(values[b as usize].render(), "f[a]·f[c] + f[b]·f[c]");
        for from in [a, b] {
            let out = synthesize_targets(&g, from, false).unwrap();
            assert!(out.iter().all(|c| c.minimal));
            assert_eq!(out.len(), 2);
        }
    }

    #[test]
    fn cost_measures_match_the_hand_calculations() {
        // free target loop: pay 2 to cross, loop for nothing
        let g = BuchiGame::parse(include_str!("../../../games/two_loop.json")).unwrap();
        let v = g.position_index("v").unwrap();
        assert_eq!(
            cost_occurrences(&g, v).unwrap(),
            TropicalCost::from_integer(2)
        );
        assert_eq!(cost_unlock(&g, v).unwrap(), TropicalCost::from_integer(2));

        // costly target loop: every play pays for it forever, but unlocking
        // both edges once costs 3
        let g = BuchiGame::parse(include_str!("../../../games/two_loop_costly.json")).unwrap();
        let v = g.position_index("v").unwrap();
        assert_eq!(cost_occurrences(&g, v).unwrap(), TropicalCost::Infinite);
        assert_eq!(cost_unlock(&g, v).unwrap(), TropicalCost::from_integer(3));

        // the cheapest support of the running game costs 7; a losing
        // position affords nothing
        let g = BuchiGame::parse(include_str!("../../../games/running.json")).unwrap();
        let v = g.position_index("v").unwrap();
        let x = g.position_index("x").unwrap();
        assert_eq!(cost_unlock(&g, v).unwrap(), TropicalCost::from_integer(7));
        assert_eq!(cost_occurrences(&g, v).unwrap(), TropicalCost::Infinite);
        assert_eq!(cost_unlock(&g, x).unwrap(), TropicalCost::Infinite);
        assert_eq!(cost_occurrences(&g, x).unwrap(), TropicalCost::Infinite);
    }

    #[test]
    fn cost_measures_require_costs_everywhere() {
        let g = BuchiGame::parse(include_str!("../../../games/repair_loop.json")).unwrap();
        let v = g.position_index("v").unwrap();
        assert!(matches!(
            cost_occurrences(&g, v),
            Err(RepairError::Interp(InterpError::MissingCost { .. }))
        ));
    }
}
