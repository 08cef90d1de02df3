//! Temporary diagnosis probe — not part of the suite.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stratpoly::game::{generators, BuchiGame, Player};
use stratpoly::interp::{build_strat, Interpretation};
use stratpoly::poly::Poly;
use stratpoly::semiring::Semiring;
use stratpoly::solver::eval_win0_all;
use stratpoly::PolySemiring;

fn all_edges(g: &BuchiGame) -> Vec<u32> {
    (0..g.edges().len() as u32).collect()
}

fn theta(
    ctx: &PolySemiring,
    game: &BuchiGame,
    interp: &Interpretation<PolySemiring>,
    v: u32,
    w: &[Poly],
) -> Poly {
    let entries = interp.edge_entries(v);
    match game.position(v).owner {
        Player::P0 => {
            let mut acc = ctx.zero();
            for (u, pe, _) in entries {
                acc = ctx.add(&acc, &ctx.mul(pe, &w[*u as usize]));
            }
            acc
        }
        Player::P1 => {
            let mut acc = ctx.one();
            for (u, pe, pn) in entries {
                let term = ctx.add(pn, &ctx.mul(pe, &w[*u as usize]));
                acc = ctx.mul(&acc, &term);
            }
            acc
        }
    }
}

fn rhs(
    ctx: &PolySemiring,
    game: &BuchiGame,
    interp: &Interpretation<PolySemiring>,
    v: u32,
    y: &[Poly],
    z: &[Poly],
) -> Poly {
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

fn inner(
    ctx: &PolySemiring,
    game: &BuchiGame,
    interp: &Interpretation<PolySemiring>,
    y: &[Poly],
) -> Vec<Poly> {
    let n = game.position_count();
    let mut z = vec![ctx.zero(); n];
    for _ in 0..(2 * n + 2) {
        let next: Vec<Poly> = (0..n as u32)
            .map(|v| rhs(ctx, game, interp, v, y, &z))
            .collect();
        if next == z {
            return z;
        }
        z = next;
    }
    panic!("inner diverged");
}

#[test]
fn probe() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..40 {
        let g = generators::random_game(&mut rng, 6, 3);
        for (name, posbool) in [("full", false), ("posbool", true)] {
            let interp = build_strat(&g, &all_edges(&g), posbool);
            if eval_win0_all(&g, &interp).is_ok() {
                continue;
            }
            println!("=== game {i} ({name}) diverges ===");
            for p in g.positions() {
                println!(
                    "  pos {} owner {:?}{}",
                    p.id,
                    p.owner,
                    if p.target { " TARGET" } else { "" }
                );
            }
            for e in g.edges() {
                println!(
                    "  edge {}: {} -> {}",
                    e.display(),
                    g.position(e.from).id,
                    g.position(e.to).id
                );
            }

            // replay the outer chain by hand
            let ctx = interp.ctx();
            let n = g.position_count();
            let mut y: Vec<Poly> = vec![ctx.one(); n];
            for sweep in 1..=30 {
                let z = inner(ctx, &g, &interp, &y);
                if z == y {
                    println!("sweep {sweep}: fixed point");
                    return;
                }
                let mut next = Vec::with_capacity(n);
                let mut widened = Vec::new();
                for (v, (yv, zv)) in y.iter().zip(&z).enumerate() {
                    let stepped = match ctx.extrapolate_limit(yv, zv) {
                        Some(c) => {
                            widened.push(v);
                            c
                        }
                        None => zv.clone(),
                    };
                    next.push(ctx.meet(yv, &stepped).unwrap_or(stepped));
                }
                println!("--- sweep {sweep} (widened at {widened:?}) ---");
                for (v, (zv, nv)) in z.iter().zip(&next).enumerate() {
                    println!("  z[{v}] = {}", zv.render());
                    if nv != zv {
                        println!("  y'[{v}] = {}", nv.render());
                    }
                }
                if next == y {
                    println!("  STALLED: met iterate equals previous y");
                }
                y = next;
            }
            panic!("probe done");
        }
    }
    println!("all games converged");
}
