//! Interpretations: semiring valuations of the game's atomic facts.
//!
//! The winning-region equations consult the game only through *literals* —
//! "position `v` is a target", "the edge `v → u` exists", and their
//! negations. An [`Interpretation`] assigns every literal a value in a
//! chosen semiring, and the solver then evaluates the equations over those
//! values. Mapping literals to `0`/`1` by their actual truth recovers the
//! classical Boolean analysis; mapping them to indeterminates makes the
//! solver *track* the facts a winning strategy relies on:
//!
//! * [`build_strat`] tracks how often each chosen edge is used — the
//!   polynomial value lists the edge profiles of dominant winning
//!   strategies;
//! * [`build_repair`] additionally gives selected present edges a *removal*
//!   indeterminate and selected absent edges an *addition* indeterminate
//!   (dual pairs `x`/`x̄`, so no monomial both uses and removes an edge) —
//!   the value enumerates game repairs;
//! * [`build_target`] replaces every target literal by an indeterminate —
//!   the value characterizes which target sets make Player 0 win;
//! * [`build_cost`] maps each edge to its cost in the tropical semiring —
//!   the value is the cheapest total cost of winning;
//! * [`build_boolean`] is plain truth.
//!
//! Every interpretation keeps the consistency invariant `π(ℓ)·π(¬ℓ) = 0`:
//! no scenario can both assert and refute one literal.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::game::BuchiGame;
use crate::poly::{
    eval_hom, Assignment, EvalError, Exp, IndetKind, IndetSpec, Monomial, Poly, PolySemiring,
    Subject, Universe,
};
use crate::semiring::{BooleanSemiring, Semiring, TropicalCost, TropicalSemiring};

/// An atomic fact of a game, or its negation. Edge literals are indexed by
/// position pair, so they cover absent edges too.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Literal {
    Target(u32),
    NotTarget(u32),
    Edge(u32, u32),
    NotEdge(u32, u32),
}

/// Errors raised while building an interpretation.
#[derive(Debug, Error)]
pub enum InterpError {
    #[error("cannot add edge `{from}` -> `{to}`: it already exists")]
    AddableExists { from: String, to: String },
    #[error("edge `{label}` has no cost; cost analyses need a cost on every edge")]
    MissingCost { label: String },
}

/// A semiring valuation of all literals of a fixed game.
///
/// Stored sparsely: per source position, only the pairs deviating from the
/// absent-edge default `(π(E) = 0, π(¬E) = 1)` are listed. Target literals
/// are stored per position.
pub struct Interpretation<S: Semiring> {
    ctx: S,
    /// `(π(Fv), π(¬Fv))` per position.
    target: Vec<(S::Value, S::Value)>,
    /// Per source position: `(successor, π(Evu), π(¬Evu))`, sorted by
    /// successor, for pairs deviating from the absent-edge default.
    edges: Vec<Vec<(u32, S::Value, S::Value)>>,
    zero: S::Value,
    one: S::Value,
}

impl<S: Semiring> fmt::Debug for Interpretation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Interpretation")
            .field("target", &self.target)
            .field("edges", &self.edges)
            .finish_non_exhaustive()
    }
}

impl<S: Semiring> Interpretation<S> {
    fn new(ctx: S, positions: usize) -> Interpretation<S> {
        let zero = ctx.zero();
        let one = ctx.one();
        Interpretation {
            target: Vec::with_capacity(positions),
            edges: vec![Vec::new(); positions],
            zero,
            one,
            ctx,
        }
    }

    pub fn ctx(&self) -> &S {
        &self.ctx
    }

    /// The value of a literal under this interpretation.
    pub fn literal(&self, lit: Literal) -> &S::Value {
        match lit {
            Literal::Target(v) => &self.target[v as usize].0,
            Literal::NotTarget(v) => &self.target[v as usize].1,
            Literal::Edge(v, u) => self
                .entry(v, u)
                .map_or(&self.zero, |(_, pe, _)| pe),
            Literal::NotEdge(v, u) => self
                .entry(v, u)
                .map_or(&self.one, |(_, _, pn)| pn),
        }
    }

    fn entry(&self, v: u32, u: u32) -> Option<&(u32, S::Value, S::Value)> {
        self.edges[v as usize].iter().find(|&&(t, _, _)| t == u)
    }

    /// `(π(Fv), π(¬Fv))`.
    pub fn target_values(&self, v: u32) -> (&S::Value, &S::Value) {
        let (f, n) = &self.target[v as usize];
        (f, n)
    }

    /// The non-default edge entries from `v`, sorted by successor.
    pub fn edge_entries(&self, v: u32) -> &[(u32, S::Value, S::Value)] {
        &self.edges[v as usize]
    }

    /// Checks `π(ℓ)·π(¬ℓ) = 0` for every literal; returns a description of
    /// each violation.
    pub fn check_consistency(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for (v, (f, n)) in self.target.iter().enumerate() {
            if !self.ctx.is_zero(&self.ctx.mul(f, n)) {
                bad.push(format!("target literal of position {v}"));
            }
        }
        for (v, entries) in self.edges.iter().enumerate() {
            for (u, pe, pn) in entries {
                if !self.ctx.is_zero(&self.ctx.mul(pe, pn)) {
                    bad.push(format!("edge literal {v} -> {u}"));
                }
            }
        }
        bad
    }

    fn sort_entries(&mut self) {
        for entries in &mut self.edges {
            entries.sort_by_key(|&(u, _, _)| u);
        }
    }
}

impl Interpretation<PolySemiring> {
    /// Maps a polynomial interpretation through an evaluation homomorphism,
    /// giving the interpretation with every literal value evaluated. Solving
    /// under the composed interpretation agrees with evaluating the
    /// polynomial solution — the polynomial value is that universal.
    pub fn compose<T: Semiring>(
        &self,
        h: &Assignment<T::Value>,
        ctx: T,
    ) -> Result<Interpretation<T>, EvalError> {
        let mut out = Interpretation::new(ctx, self.edges.len());
        for (f, n) in &self.target {
            out.target.push((
                eval_hom(f, h, &out.ctx)?,
                eval_hom(n, h, &out.ctx)?,
            ));
        }
        for (v, entries) in self.edges.iter().enumerate() {
            for (u, pe, pn) in entries {
                let pe = eval_hom(pe, h, &out.ctx)?;
                let pn = eval_hom(pn, h, &out.ctx)?;
                out.edges[v].push((*u, pe, pn));
            }
        }
        Ok(out)
    }
}

fn var(ctx: &PolySemiring, idx: u32) -> Poly {
    Poly::from_monomials(
        Arc::clone(ctx.universe()),
        [Monomial::new(ctx.universe(), &[(idx, Exp::ONE)])],
    )
}

fn truth_targets(game: &BuchiGame, interp: &mut Interpretation<impl Semiring>) {
    for p in game.positions() {
        let (f, n) = if p.target {
            (interp.one.clone(), interp.zero.clone())
        } else {
            (interp.zero.clone(), interp.one.clone())
        };
        interp.target.push((f, n));
    }
}

/// The strategy-tracking interpretation: each tracked edge `e` maps to the
/// indeterminate `X_e`, untracked present edges map to `1`, and target and
/// absence literals keep their truth values. With `posbool` set the values
/// are positive Boolean polynomials — monomials record only which edges a
/// strategy uses, not how often.
pub fn build_strat(game: &BuchiGame, tracked: &[u32], posbool: bool) -> Interpretation<PolySemiring> {
    let mut tracked: Vec<u32> = tracked.to_vec();
    tracked.sort_unstable();
    tracked.dedup();
    let universe = Universe::build(tracked.iter().map(|&e| {
        let (from, to) = game.edge_endpoints(e);
        IndetSpec {
            kind: IndetKind::Edge,
            subject: Subject::Edge(from.to_string(), to.to_string()),
            display: game.edge(e).display().to_string(),
        }
    }));
    let ctx = if posbool {
        PolySemiring::posbool(universe)
    } else {
        PolySemiring::new(universe)
    };
    let mut interp = Interpretation::new(ctx, game.position_count());
    truth_targets(game, &mut interp);
    for (e, edge) in game.edges().iter().enumerate() {
        let value = if tracked.contains(&(e as u32)) {
            let (from, to) = game.edge_endpoints(e as u32);
            let idx = interp
                .ctx
                .universe()
                .find(
                    IndetKind::Edge,
                    &Subject::Edge(from.to_string(), to.to_string()),
                )
                .expect("tracked edge is in the universe");
            var(&interp.ctx, idx)
        } else {
            interp.one.clone()
        };
        interp.edges[edge.from as usize].push((edge.to, value, interp.zero.clone()));
    }
    interp.sort_entries();
    interp
}

/// The repair interpretation: each removable present edge and each addable
/// absent edge gets a dual indeterminate pair — `π(E) = X_e`, `π(¬E) = X̄_e`
/// — while all other literals keep their truth values. Values live in the
/// quotient where `X_e·X̄_e = 0`.
pub fn build_repair(
    game: &BuchiGame,
    removable: &[u32],
    addable: &[(u32, u32)],
) -> Result<Interpretation<PolySemiring>, InterpError> {
    let mut removable: Vec<u32> = removable.to_vec();
    removable.sort_unstable();
    removable.dedup();
    let mut addable: Vec<(u32, u32)> = addable.to_vec();
    addable.sort_unstable();
    addable.dedup();
    for &(v, u) in &addable {
        if game.edge_between(v, u).is_some() {
            return Err(InterpError::AddableExists {
                from: game.position(v).id.clone(),
                to: game.position(u).id.clone(),
            });
        }
    }

    let mut specs = Vec::new();
    let mut push_pair = |subject: Subject, display: String| {
        specs.push(IndetSpec {
            kind: IndetKind::Edge,
            subject: subject.clone(),
            display: display.clone(),
        });
        specs.push(IndetSpec {
            kind: IndetKind::NegEdge,
            subject,
            display,
        });
    };
    for &e in &removable {
        let (from, to) = game.edge_endpoints(e);
        push_pair(
            Subject::Edge(from.to_string(), to.to_string()),
            game.edge(e).display().to_string(),
        );
    }
    for &(v, u) in &addable {
        let (from, to) = (game.position(v).id.clone(), game.position(u).id.clone());
        push_pair(
            Subject::Edge(from.clone(), to.clone()),
            format!("{from}->{to}"),
        );
    }
    let ctx = PolySemiring::new(Universe::build(specs));
    let mut interp = Interpretation::new(ctx, game.position_count());
    truth_targets(game, &mut interp);

    let pair_vars = |interp: &Interpretation<PolySemiring>, from: &str, to: &str| {
        let subject = Subject::Edge(from.to_string(), to.to_string());
        let universe = interp.ctx.universe();
        let pos = universe
            .find(IndetKind::Edge, &subject)
            .expect("candidate edge is in the universe");
        let neg = universe
            .find(IndetKind::NegEdge, &subject)
            .expect("candidate edge has a dual");
        (var(&interp.ctx, pos), var(&interp.ctx, neg))
    };
    for (e, edge) in game.edges().iter().enumerate() {
        let (pe, pn) = if removable.contains(&(e as u32)) {
            let (from, to) = game.edge_endpoints(e as u32);
            pair_vars(&interp, from, to)
        } else {
            (interp.one.clone(), interp.zero.clone())
        };
        interp.edges[edge.from as usize].push((edge.to, pe, pn));
    }
    for &(v, u) in &addable {
        let (pe, pn) = pair_vars(&interp, &game.position(v).id, &game.position(u).id);
        interp.edges[v as usize].push((u, pe, pn));
    }
    interp.sort_entries();
    Ok(interp)
}

/// The target-synthesis interpretation: `π(Fv) = X_v` for *every* position —
/// target membership is being re-decided — and `π(¬Fv) = X̄_v`, or `1` when
/// `track_negatives` is off (then monomials only list required members).
/// Values are positive Boolean polynomials: membership has no multiplicity.
pub fn build_target(game: &BuchiGame, track_negatives: bool) -> Interpretation<PolySemiring> {
    let mut specs = Vec::new();
    for p in game.positions() {
        specs.push(IndetSpec {
            kind: IndetKind::Target,
            subject: Subject::Pos(p.id.clone()),
            display: p.id.clone(),
        });
        if track_negatives {
            specs.push(IndetSpec {
                kind: IndetKind::NegTarget,
                subject: Subject::Pos(p.id.clone()),
                display: p.id.clone(),
            });
        }
    }
    let ctx = PolySemiring::posbool(Universe::build(specs));
    let mut interp = Interpretation::new(ctx, game.position_count());
    for p in game.positions() {
        let subject = Subject::Pos(p.id.clone());
        let universe = interp.ctx.universe();
        let pos = universe
            .find(IndetKind::Target, &subject)
            .expect("every position has a target indeterminate");
        let f = var(&interp.ctx, pos);
        let n = if track_negatives {
            let neg = universe
                .find(IndetKind::NegTarget, &subject)
                .expect("negatives are tracked");
            var(&interp.ctx, neg)
        } else {
            interp.one.clone()
        };
        interp.target.push((f, n));
    }
    for edge in game.edges() {
        interp.edges[edge.from as usize].push((edge.to, interp.one.clone(), interp.zero.clone()));
    }
    interp.sort_entries();
    interp
}

/// The cost interpretation: each present edge maps to its cost in the
/// tropical semiring (addition is `min`, multiplication is `+`, so the
/// solved value is the cheapest total cost of winning). Every edge must
/// carry a cost.
pub fn build_cost(game: &BuchiGame) -> Result<Interpretation<TropicalSemiring>, InterpError> {
    let mut interp = Interpretation::new(TropicalSemiring, game.position_count());
    truth_targets(game, &mut interp);
    for edge in game.edges() {
        let cost = edge.cost.ok_or_else(|| InterpError::MissingCost {
            label: edge.display().to_string(),
        })?;
        let value = TropicalCost::from_f64(cost).expect("validated game costs are admissible");
        interp.edges[edge.from as usize].push((edge.to, value, TropicalCost::Infinite));
    }
    interp.sort_entries();
    Ok(interp)
}

/// The truth interpretation into the Boolean semiring: solving under it is
/// the classical winning-region computation.
pub fn build_boolean(game: &BuchiGame) -> Interpretation<BooleanSemiring> {
    let mut interp = Interpretation::new(BooleanSemiring, game.position_count());
    truth_targets(game, &mut interp);
    for edge in game.edges() {
        interp.edges[edge.from as usize].push((edge.to, true, false));
    }
    interp.sort_entries();
    interp
}
