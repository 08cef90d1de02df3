//! The fixed-point solver for the winning-region value.
//!
//! The value of position `v` is defined by the equation system
//!
//! ```text
//! Z_v = π(Fv)·θ_v[Y]  +  π(¬Fv)·θ_v[Z]
//!
//! θ_v[W] = Σ_u π(Evu)·W_u                    if v belongs to Player 0
//! θ_v[W] = Π_u ( π(¬Evu) + π(Evu)·W_u )      if v belongs to Player 1
//! ```
//!
//! taking the *least* fixed point in `Z` (reaching a target must happen
//! after finitely many steps) nested inside the *greatest* fixed point in
//! `Y` (targets must be reached again and again, forever). Sums and
//! products range over all positions `u`; pairs carrying default values
//! contribute nothing and are skipped.
//!
//! Both fixed points are iterated Jacobi style — every position is updated
//! simultaneously from the previous sweep. The inner iteration ascends from
//! zero and stabilizes after at most `|V|+2` sweeps, because a longer
//! derivation of a monomial revisits a position and the repetition-free
//! derivation absorbs it; the cap `2|V|+2` leaves comfortable slack. The
//! outer iteration descends from one, and over `∞`-exponent polynomials it
//! can descend forever (`b·c, b·c², b·c³, …` on a two-loop game), so after
//! every sweep the solver asks the semiring to send each growth thread to
//! its limit ([`Semiring::extrapolate_limit`]) and continues the iteration
//! from the widened value. Widening both stops the slow descent and keeps
//! the iterates small — transient cross terms are absorbed by the saturated
//! monomials instead of piling up sweep after sweep. Each new iterate is
//! additionally met with its predecessor ([`Semiring::meet`]), forcing the
//! chain to descend even when a re-solve rebounds above an earlier guess.
//! The loop only returns a value `y` whose exact re-solve satisfies
//! `lfp(y) = y`, so a wrong guess can never stabilize: the result is always
//! a true fixed point of the equation system. Semirings without
//! extrapolation (Boolean, min-max, tropical costs) simply iterate; if
//! their outer chain keeps descending, the cap `4·|V|·(#edge entries + 1)`
//! turns divergence into an error instead of a hang.

use thiserror::Error;

use crate::game::{BuchiGame, Player};
use crate::interp::Interpretation;
use crate::semiring::Semiring;

/// Iteration statistics for one solver run.
#[derive(Clone, Debug, Default)]
pub struct SolverTrace {
    /// Completed outer (greatest-fixed-point) sweeps.
    pub outer_sweeps: usize,
    /// Total inner (least-fixed-point) sweeps across all outer sweeps.
    pub inner_sweeps: usize,
    /// Outer sweeps after which a widening step was applied, in order.
    pub saturation: Vec<usize>,
    /// True when at least one widening step was applied. Either way the
    /// result is an exactly verified fixed point.
    pub accelerated: bool,
}

/// Solver failure: an iteration exceeded its sweep cap.
#[derive(Debug, Error)]
pub enum SolverError {
    #[error("inner fixed point did not stabilize within {cap} sweeps")]
    InnerDiverged { cap: usize },
    #[error(
        "outer fixed point did not stabilize within {cap} sweeps; \
         the value may have no finite representation in this semiring"
    )]
    OuterDiverged { cap: usize },
}

fn theta<S: Semiring>(
    ctx: &S,
    game: &BuchiGame,
    interp: &Interpretation<S>,
    v: u32,
    w: &[S::Value],
) -> S::Value {
    match game.position(v).owner {
        Player::P0 => {
            let mut acc = ctx.zero();
            for (u, pe, _) in interp.edge_entries(v) {
                acc = ctx.add(&acc, &ctx.mul(pe, &w[*u as usize]));
            }
            acc
        }
        Player::P1 => {
            let mut acc = ctx.one();
            for (u, pe, pn) in interp.edge_entries(v) {
                let factor = ctx.add(pn, &ctx.mul(pe, &w[*u as usize]));
                acc = ctx.mul(&acc, &factor);
            }
            acc
        }
    }
}

fn rhs<S: Semiring>(
    ctx: &S,
    game: &BuchiGame,
    interp: &Interpretation<S>,
    v: u32,
    y: &[S::Value],
    z: &[S::Value],
) -> S::Value {
    let (f, nf) = interp.target_values(v);
    let mut acc = ctx.zero();
    if !ctx.is_zero(f) {
        acc = ctx.add(&acc, &ctx.mul(f, &theta(ctx, game, interp, v, y)));
    }
    if !ctx.is_zero(nf) {
        acc = ctx.add(&acc, &ctx.mul(nf, &theta(ctx, game, interp, v, z)));
    }
    acc
}

/// The inner least fixed point: `Z` ascending from zero with `Y` held fixed.
/// Returns the fixed point and the number of sweeps used.
fn inner_lfp<S: Semiring>(
    ctx: &S,
    game: &BuchiGame,
    interp: &Interpretation<S>,
    y: &[S::Value],
) -> Result<(Vec<S::Value>, usize), SolverError> {
    let n = game.position_count();
    let cap = 2 * n + 2;
    let mut z: Vec<S::Value> = vec![ctx.zero(); n];
    for sweep in 1..=cap {
        let next: Vec<S::Value> = (0..n as u32)
            .map(|v| rhs(ctx, game, interp, v, y, &z))
            .collect();
        debug_assert!(
            z.iter().zip(&next).all(|(a, b)| ctx.natural_le(a, b)),
            "inner iteration must ascend"
        );
        if next == z {
            return Ok((z, sweep));
        }
        z = next;
    }
    Err(SolverError::InnerDiverged { cap })
}

/// Evaluates the winning-region value of every position under `interp`.
pub fn eval_win0_all<S: Semiring>(
    game: &BuchiGame,
    interp: &Interpretation<S>,
) -> Result<(Vec<S::Value>, SolverTrace), SolverError> {
    let ctx = interp.ctx();
    let n = game.position_count();
    let mut trace = SolverTrace::default();
    if n == 0 {
        return Ok((Vec::new(), trace));
    }
    let entries: usize = (0..n as u32).map(|v| interp.edge_entries(v).len()).sum();
    let cap = 4 * n * (entries + 1);
    let mut y: Vec<S::Value> = vec![ctx.one(); n];
    for sweep in 1..=cap {
        let (z, used) = inner_lfp(ctx, game, interp, &y)?;
        trace.outer_sweeps = sweep;
        trace.inner_sweeps += used;
        // the plain Kleene prefix descends; once a widening step has
        // happened anywhere, later re-solves may rebound above the met
        // iterate for several sweeps while the meet grinds them back down
        debug_assert!(
            trace.accelerated || z.iter().zip(&y).all(|(a, b)| ctx.natural_le(a, b)),
            "outer iteration must descend"
        );
        if z == y {
            // y reproduces itself under an exact inner solve — a true
            // fixed point, whether reached by iteration or by widening
            return Ok((z, trace));
        }
        // continue from the widened step where the semiring proposes one,
        // and meet with the previous iterate: a re-solve can rebound above
        // an earlier widening guess, and the meet prunes such junk away
        // instead of letting it feed back into the equations forever
        let mut widened = false;
        let mut next = Vec::with_capacity(n);
        for (yv, zv) in y.iter().zip(&z) {
            let stepped = match ctx.extrapolate_limit(yv, zv) {
                Some(c) => {
                    widened = true;
                    c
                }
                None => zv.clone(),
            };
            next.push(ctx.meet(yv, &stepped).unwrap_or(stepped));
        }
        y = next;
        if widened {
            trace.saturation.push(sweep);
            trace.accelerated = true;
        }
    }
    Err(SolverError::OuterDiverged { cap })
}

/// Evaluates the winning-region value of one position under `interp`.
pub fn eval_win0<S: Semiring>(
    game: &BuchiGame,
    interp: &Interpretation<S>,
    pos: u32,
) -> Result<(S::Value, SolverTrace), SolverError> {
    let (mut values, trace) = eval_win0_all(game, interp)?;
    Ok((values.swap_remove(pos as usize), trace))
}

/// Re-derives the equation system once from `values` with an exact inner
/// solve and reports whether `values` reproduces itself. [`eval_win0_all`]
/// only returns values that pass this check, so it is an independent audit
/// hook rather than part of the algorithm.
pub fn verify_fixpoint<S: Semiring>(
    game: &BuchiGame,
    interp: &Interpretation<S>,
    values: &[S::Value],
) -> Result<bool, SolverError> {
    if values.len() != game.position_count() {
        return Ok(false);
    }
    let (z, _) = inner_lfp(interp.ctx(), game, interp, values)?;
    Ok(z == values)
}
