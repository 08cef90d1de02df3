//! Independent ground truth for the solver: a classical Boolean Büchi
//! solver (attractor recurrence) and a brute-force enumerator of winning
//! strategies with their edge profiles.
//!
//! The enumerator represents a strategy as a *lasso tree*: the tree of plays
//! from the query position in which every branch stops at the first repeated
//! position and back-links to the earlier occurrence, the strategy replaying
//! that subtree forever. Player-0 nodes fix one successor, Player-1 nodes
//! keep all of them. Every dominant winning strategy has such a
//! representative of height at most `|V| + 1`, so enumerating the trees,
//! filtering the winning ones, and normalizing their profiles reproduces the
//! strategy polynomial — by a completely different route than the
//! fixed-point solver, which is the point.
//!
//! Enumeration is exponential by design and guarded by [`Guards`].

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::game::{BuchiGame, Player};
use crate::interp::build_strat;
use crate::poly::{Exp, IndetKind, Monomial, Poly, Subject};

/// Errors from the brute-force enumerator.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    /// The game is too large for exhaustive enumeration under the given
    /// guards.
    #[error(
        "game has {positions} positions and out-degree {out_degree}, \
         exceeding the enumeration guards ({max_positions} positions, \
         out-degree {max_out_degree})"
    )]
    GuardExceeded {
        positions: usize,
        out_degree: usize,
        max_positions: usize,
        max_out_degree: usize,
    },
}

/// Size limits for strategy enumeration. The defaults keep the brute force
/// on desk-scale games; raise them deliberately for structured families
/// that stay small despite more positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    pub max_positions: usize,
    pub max_out_degree: usize,
}

impl Default for Guards {
    fn default() -> Guards {
        Guards {
            max_positions: 7,
            max_out_degree: 3,
        }
    }
}

/// One enumerated winning strategy: its edge profile, whether it plays
/// positionally, and which edges occur infinitely often in at least one of
/// its plays (sorted edge indices).
#[derive(Clone, Debug)]
pub struct StrategyFacts {
    pub profile: Monomial,
    pub positional: bool,
    pub infinite_edges: Vec<u32>,
}

/// The result of exhaustive enumeration from one position.
#[derive(Clone, Debug)]
pub struct Enumeration {
    /// The normalized sum of all winning-strategy profiles, over the same
    /// universe as the full strategy-tracking interpretation.
    pub poly: Poly,
    /// Every winning strategy individually, in enumeration order.
    pub strategies: Vec<StrategyFacts>,
}

/// The exact winning region of Player 0, by the classical recurrence
/// computation: repeatedly discard target positions that cannot re-reach
/// the remaining targets, then take the attractor of what survives.
pub fn classical_buchi_solve(game: &BuchiGame) -> Vec<bool> {
    let n = game.position_count();
    let mut targets: Vec<bool> = game.positions().iter().map(|p| p.target).collect();
    loop {
        let attr = attractor(game, &targets);
        let kept: Vec<bool> = (0..n)
            .map(|v| targets[v] && can_step_into(game, &attr, v as u32))
            .collect();
        if kept == targets {
            return attr;
        }
        targets = kept;
    }
}

/// Whether the owner of `v` can move into `set` in one step.
fn can_step_into(game: &BuchiGame, set: &[bool], v: u32) -> bool {
    let mut succs = game
        .out_edges(v)
        .iter()
        .map(|&e| set[game.edge(e).to as usize]);
    match game.position(v).owner {
        Player::P0 => succs.any(|s| s),
        Player::P1 => succs.all(|s| s),
    }
}

/// The Player-0 attractor of `base`: all positions from which Player 0 can
/// force reaching `base`.
fn attractor(game: &BuchiGame, base: &[bool]) -> Vec<bool> {
    let mut set = base.to_vec();
    loop {
        let mut changed = false;
        for v in 0..game.position_count() {
            if !set[v] && can_step_into(game, &set, v as u32) {
                set[v] = true;
                changed = true;
            }
        }
        if !changed {
            return set;
        }
    }
}

/// A strategy tree under construction: branches stop at the first repeated
/// position, remembering how far up the branch the earlier occurrence sits.
#[derive(Clone)]
enum Sub {
    Leaf { pos: u32, back_depth: usize },
    Inner { pos: u32, children: Vec<(u32, Sub)> },
}

impl Sub {
    fn pos(&self) -> u32 {
        match self {
            Sub::Leaf { pos, .. } | Sub::Inner { pos, .. } => *pos,
        }
    }
}

/// All lasso trees rooted at `pos`, given the positions already on the
/// branch: Player-0 nodes contribute one tree per choice, Player-1 nodes
/// the cross product over their successors.
fn expand(game: &BuchiGame, path: &mut Vec<u32>, pos: u32) -> Vec<Sub> {
    if let Some(back_depth) = path.iter().position(|&p| p == pos) {
        return vec![Sub::Leaf { pos, back_depth }];
    }
    path.push(pos);
    let result = match game.position(pos).owner {
        Player::P0 => {
            let mut out = Vec::new();
            for &e in game.out_edges(pos) {
                for sub in expand(game, path, game.edge(e).to) {
                    out.push(Sub::Inner {
                        pos,
                        children: vec![(e, sub)],
                    });
                }
            }
            out
        }
        Player::P1 => {
            let mut combos: Vec<Vec<(u32, Sub)>> = vec![Vec::new()];
            for &e in game.out_edges(pos) {
                let subs = expand(game, path, game.edge(e).to);
                let mut next = Vec::with_capacity(combos.len() * subs.len());
                for combo in &combos {
                    for sub in &subs {
                        let mut extended = combo.clone();
                        extended.push((e, sub.clone()));
                        next.push(extended);
                    }
                }
                combos = next;
            }
            combos
                .into_iter()
                .map(|children| Sub::Inner { pos, children })
                .collect()
        }
    };
    path.pop();
    result
}

/// A flattened lasso tree: `out` are the tree edges (game edge, child), and
/// a leaf instead carries an ε-edge `eps` back to its ancestor, where the
/// induced infinite strategy continues.
struct FlatNode {
    pos: u32,
    out: Vec<(u32, usize)>,
    eps: Option<usize>,
}

fn flatten(sub: &Sub, ancestors: &mut Vec<usize>, arena: &mut Vec<FlatNode>) -> usize {
    let id = arena.len();
    arena.push(FlatNode {
        pos: sub.pos(),
        out: Vec::new(),
        eps: None,
    });
    match sub {
        Sub::Leaf { back_depth, .. } => arena[id].eps = Some(ancestors[*back_depth]),
        Sub::Inner { children, .. } => {
            ancestors.push(id);
            for (e, child) in children {
                let cid = flatten(child, ancestors, arena);
                arena[id].out.push((*e, cid));
            }
            ancestors.pop();
        }
    }
    id
}

/// Successors of a node in the back-link graph (tree children plus the
/// ε-jump of a leaf).
fn graph_succs(arena: &[FlatNode], n: usize) -> impl Iterator<Item = usize> + '_ {
    arena[n]
        .out
        .iter()
        .map(|&(_, c)| c)
        .chain(arena[n].eps.iter().copied())
}

/// Node-to-node reachability (in one or more steps) of the back-link graph.
fn reachable_from(arena: &[FlatNode]) -> Vec<Vec<bool>> {
    let n = arena.len();
    let mut reach = vec![vec![false; n]; n];
    for start in 0..n {
        let mut stack: Vec<usize> = graph_succs(arena, start).collect();
        while let Some(node) = stack.pop() {
            if !reach[start][node] {
                reach[start][node] = true;
                stack.extend(graph_succs(arena, node));
            }
        }
    }
    reach
}

/// Whether every play of the strategy visits targets infinitely often:
/// equivalent to the subgraph induced on non-target nodes being acyclic,
/// since every cycle of the back-link graph is realizable as a play suffix.
/// Cycles through target nodes are harmless and must not be flagged.
fn tree_wins(game: &BuchiGame, arena: &[FlatNode]) -> bool {
    fn has_cycle(arena: &[FlatNode], blocked: &[bool], state: &mut [u8], node: usize) -> bool {
        state[node] = 1;
        for succ in graph_succs(arena, node) {
            if blocked[succ] {
                continue;
            }
            match state[succ] {
                0 => {
                    if has_cycle(arena, blocked, state, succ) {
                        return true;
                    }
                }
                1 => return true,
                _ => {}
            }
        }
        state[node] = 2;
        false
    }
    let blocked: Vec<bool> = arena
        .iter()
        .map(|f| game.position(f.pos).target)
        .collect();
    let mut state = vec![0u8; arena.len()];
    (0..arena.len()).all(|start| {
        blocked[start] || state[start] != 0 || !has_cycle(arena, &blocked, &mut state, start)
    })
}

/// The number of play prefixes arriving at each node, as an exponent:
/// infinite exactly for nodes reachable from a cycle, otherwise counted by
/// dynamic programming over the remaining acyclic part.
fn arrival_counts(arena: &[FlatNode], reach: &[Vec<bool>]) -> Vec<Exp> {
    let n = arena.len();
    let pumped: Vec<bool> = (0..n)
        .map(|node| (0..n).any(|c| reach[c][c] && (c == node || reach[c][node])))
        .collect();
    let mut counts: Vec<Exp> = pumped
        .iter()
        .map(|&p| if p { Exp::Inf } else { Exp::Fin(0) })
        .collect();
    if !pumped[0] {
        counts[0] = Exp::Fin(1);
    }
    // the finite nodes form a DAG closed under predecessors; propagate in
    // topological order
    let mut indegree = vec![0usize; n];
    for node in 0..n {
        if pumped[node] {
            continue;
        }
        for succ in graph_succs(arena, node) {
            indegree[succ] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| !pumped[v] && indegree[v] == 0).collect();
    while let Some(node) = queue.pop() {
        for succ in graph_succs(arena, node) {
            if pumped[succ] {
                continue;
            }
            counts[succ] = counts[succ].plus(counts[node]);
            indegree[succ] -= 1;
            if indegree[succ] == 0 {
                queue.push(succ);
            }
        }
    }
    counts
}

/// Exhaustively enumerates the lasso trees from `v`, keeps the winning
/// ones, and reports their profiles both individually and summed into a
/// normalized polynomial over the full strategy-tracking universe.
pub fn enumerate_strategies(
    game: &BuchiGame,
    v: u32,
    guards: &Guards,
) -> Result<Enumeration, OracleError> {
    let positions = game.position_count();
    let out_degree = (0..positions)
        .map(|p| game.out_edges(p as u32).len())
        .max()
        .unwrap_or(0);
    if positions > guards.max_positions || out_degree > guards.max_out_degree {
        return Err(OracleError::GuardExceeded {
            positions,
            out_degree,
            max_positions: guards.max_positions,
            max_out_degree: guards.max_out_degree,
        });
    }

    let all: Vec<u32> = (0..game.edges().len() as u32).collect();
    let universe = Arc::clone(build_strat(game, &all, false).ctx().universe());
    let indet_of_edge: Vec<u32> = all
        .iter()
        .map(|&e| {
            let (from, to) = game.edge_endpoints(e);
            universe
                .find(
                    IndetKind::Edge,
                    &Subject::Edge(from.to_string(), to.to_string()),
                )
                .expect("every edge is tracked")
        })
        .collect();

    let mut strategies = Vec::new();
    for tree in expand(game, &mut Vec::new(), v) {
        let mut arena = Vec::new();
        flatten(&tree, &mut Vec::new(), &mut arena);
        if !tree_wins(game, &arena) {
            continue;
        }
        let reach = reachable_from(&arena);
        let counts = arrival_counts(&arena, &reach);
        let mut exponents: BTreeMap<u32, Exp> = BTreeMap::new();
        let mut infinite_edges = Vec::new();
        let mut chosen: BTreeMap<u32, u32> = BTreeMap::new();
        let mut positional = true;
        for (node, flat) in arena.iter().enumerate() {
            for &(e, child) in &flat.out {
                let slot = exponents.entry(e).or_insert(Exp::Fin(0));
                *slot = slot.plus(counts[node]);
                if reach[child][node] || child == node {
                    infinite_edges.push(e);
                }
            }
            if game.position(flat.pos).owner == Player::P0 {
                if let [(e, _)] = flat.out[..] {
                    positional &= *chosen.entry(flat.pos).or_insert(e) == e;
                }
            }
        }
        infinite_edges.sort_unstable();
        infinite_edges.dedup();
        let pairs: Vec<(u32, Exp)> = exponents
            .into_iter()
            .map(|(e, exp)| (indet_of_edge[e as usize], exp))
            .collect();
        strategies.push(StrategyFacts {
            profile: Monomial::new(&universe, &pairs),
            positional,
            infinite_edges,
        });
    }

    let poly = Poly::from_monomials(
        Arc::clone(&universe),
        strategies.iter().map(|s| s.profile.clone()),
    );
    Ok(Enumeration { poly, strategies })
}

/// The normalized sum of all winning-strategy profiles from `v` — the
/// brute-force counterpart of solving under the full strategy-tracking
/// interpretation.
pub fn enumerate_dominant_profiles(
    game: &BuchiGame,
    v: u32,
    guards: &Guards,
) -> Result<Poly, OracleError> {
    Ok(enumerate_strategies(game, v, guards)?.poly)
}
