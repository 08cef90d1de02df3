//! Büchi games: parsing, validation, canonical serialization, generators.
//!
//! A game is a finite directed graph whose positions are owned by Player 0
//! or Player 1, together with a set of *target* positions. Totality is
//! required — every position has at least one outgoing edge — so plays never
//! get stuck. Player 0 wins a play iff it visits target positions infinitely
//! often.
//!
//! Games are read from a JSON document of the form
//!
//! ```json
//! {
//!   "positions": [{"id": "v", "owner": 0, "target": false}, ...],
//!   "edges": [{"from": "v", "to": "w", "label": "b", "cost": 2.0}, ...]
//! }
//! ```
//!
//! `label` and `cost` are optional. Unlabeled edges are displayed by the
//! synthetic label `from->to`; all displayed labels must be pairwise
//! distinct so that edges can be addressed unambiguously. Positions and
//! edges are stored sorted (by id, and by endpoint pair), making every
//! derived artifact — canonical JSON, indeterminate universes, polynomial
//! renderings — independent of input order.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::Deserialize;
use thiserror::Error;

/// The two players. Player 0 tries to reach target positions infinitely
/// often; Player 1 tries to prevent that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    P0,
    P1,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::P0 => f.write_str("0"),
            Player::P1 => f.write_str("1"),
        }
    }
}

/// Errors raised while parsing or validating a game, or resolving names
/// against one. [`GameError::code`] gives a stable machine-readable name for
/// each condition.
#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid game JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("duplicate position id `{id}`")]
    DuplicatePosition { id: String },
    #[error("position `{id}` has owner {owner}; owners are 0 or 1")]
    MalformedOwner { id: String, owner: i64 },
    #[error("edge `{from}` -> `{to}` references unknown position `{position}`")]
    UnknownEndpoint {
        from: String,
        to: String,
        position: String,
    },
    #[error("duplicate edge `{from}` -> `{to}`")]
    DuplicateEdge { from: String, to: String },
    #[error("edge label `{label}` names more than one edge")]
    DuplicateLabel { label: String },
    #[error("edge `{label}` has cost {cost}; costs are finite and non-negative")]
    InvalidCost { label: String, cost: f64 },
    #[error("position `{id}` has no outgoing edge; games must be total")]
    NotTotal { id: String },
    #[error("unknown position `{id}`")]
    UnknownPosition { id: String },
    #[error("unknown edge `{name}`")]
    UnknownEdge { name: String },
}

impl GameError {
    /// Stable identifier for the error condition.
    pub fn code(&self) -> &'static str {
        match self {
            GameError::Parse(_) => "parse",
            GameError::DuplicatePosition { .. } => "duplicate-position",
            GameError::MalformedOwner { .. } => "malformed-owner",
            GameError::UnknownEndpoint { .. } => "unknown-endpoint",
            GameError::DuplicateEdge { .. } => "duplicate-edge",
            GameError::DuplicateLabel { .. } => "duplicate-label",
            GameError::InvalidCost { .. } => "negative-cost",
            GameError::NotTotal { .. } => "totality",
            GameError::UnknownPosition { .. } => "unknown-position",
            GameError::UnknownEdge { .. } => "unknown-edge",
        }
    }
}

/// A position of a validated game.
#[derive(Clone, Debug)]
pub struct Position {
    pub id: String,
    pub owner: Player,
    pub target: bool,
}

/// An edge of a validated game. `display` is the label, or the synthetic
/// `from->to` for unlabeled edges; displays are unique within a game.
#[derive(Clone, Debug)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    pub label: Option<String>,
    pub cost: Option<f64>,
    display: String,
}

impl Edge {
    pub fn display(&self) -> &str {
        &self.display
    }
}

/// Input description of one edge, used by [`BuchiGame::new`].
#[derive(Clone, Debug)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
    pub label: Option<String>,
    pub cost: Option<f64>,
}

impl EdgeSpec {
    pub fn plain(from: &str, to: &str) -> EdgeSpec {
        EdgeSpec {
            from: from.to_string(),
            to: to.to_string(),
            label: None,
            cost: None,
        }
    }

    pub fn labeled(from: &str, to: &str, label: &str) -> EdgeSpec {
        EdgeSpec {
            label: Some(label.to_string()),
            ..EdgeSpec::plain(from, to)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    positions: Vec<RawPosition>,
    edges: Vec<RawEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPosition {
    id: String,
    owner: i64,
    target: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: String,
    to: String,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    cost: Option<f64>,
}

/// A validated, canonically ordered Büchi game.
#[derive(Clone, Debug)]
pub struct BuchiGame {
    positions: Vec<Position>,
    edges: Vec<Edge>,
    /// Outgoing edge indices per position, in canonical edge order.
    out: Vec<Vec<u32>>,
    index: HashMap<String, u32>,
}

impl BuchiGame {
    /// Builds and validates a game from position triples and edge specs.
    pub fn new(
        positions: Vec<(String, Player, bool)>,
        edges: Vec<EdgeSpec>,
    ) -> Result<BuchiGame, GameError> {
        let mut positions: Vec<Position> = positions
            .into_iter()
            .map(|(id, owner, target)| Position { id, owner, target })
            .collect();
        positions.sort_by(|a, b| a.id.cmp(&b.id));
        for w in positions.windows(2) {
            if w[0].id == w[1].id {
                return Err(GameError::DuplicatePosition {
                    id: w[0].id.clone(),
                });
            }
        }
        let index: HashMap<String, u32> = positions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), i as u32))
            .collect();

        let mut resolved: Vec<Edge> = Vec::with_capacity(edges.len());
        for spec in edges {
            let resolve = |id: &str| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| GameError::UnknownEndpoint {
                        from: spec.from.clone(),
                        to: spec.to.clone(),
                        position: id.to_string(),
                    })
            };
            let from = resolve(&spec.from)?;
            let to = resolve(&spec.to)?;
            let display = spec
                .label
                .clone()
                .unwrap_or_else(|| format!("{}->{}", spec.from, spec.to));
            if let Some(cost) = spec.cost {
                if !cost.is_finite() || cost < 0.0 {
                    return Err(GameError::InvalidCost {
                        label: display,
                        cost,
                    });
                }
            }
            resolved.push(Edge {
                from,
                to,
                label: spec.label,
                cost: spec.cost,
                display,
            });
        }
        resolved.sort_by(|a, b| {
            let key = |e: &Edge| (positions[e.from as usize].id.clone(), positions[e.to as usize].id.clone());
            key(a).cmp(&key(b))
        });
        for w in resolved.windows(2) {
            if (w[0].from, w[0].to) == (w[1].from, w[1].to) {
                return Err(GameError::DuplicateEdge {
                    from: positions[w[0].from as usize].id.clone(),
                    to: positions[w[0].to as usize].id.clone(),
                });
            }
        }
        let mut seen = HashMap::new();
        for e in &resolved {
            if seen.insert(e.display.clone(), ()).is_some() {
                return Err(GameError::DuplicateLabel {
                    label: e.display.clone(),
                });
            }
        }

        let mut out = vec![Vec::new(); positions.len()];
        for (i, e) in resolved.iter().enumerate() {
            out[e.from as usize].push(i as u32);
        }
        for (p, o) in positions.iter().zip(&out) {
            if o.is_empty() {
                return Err(GameError::NotTotal { id: p.id.clone() });
            }
        }

        Ok(BuchiGame {
            positions,
            edges: resolved,
            out,
            index,
        })
    }

    /// Parses and validates a game from its JSON representation.
    pub fn parse(json: &str) -> Result<BuchiGame, GameError> {
        let raw: RawGame = serde_json::from_str(json)?;
        let mut positions = Vec::with_capacity(raw.positions.len());
        for p in raw.positions {
            let owner = match p.owner {
                0 => Player::P0,
                1 => Player::P1,
                other => {
                    return Err(GameError::MalformedOwner {
                        id: p.id,
                        owner: other,
                    })
                }
            };
            positions.push((p.id, owner, p.target));
        }
        let edges = raw
            .edges
            .into_iter()
            .map(|e| EdgeSpec {
                from: e.from,
                to: e.to,
                label: e.label,
                cost: e.cost,
            })
            .collect();
        BuchiGame::new(positions, edges)
    }

    /// Serializes the game as canonical JSON: positions sorted by id, edges
    /// by endpoint pair, optional fields omitted when absent.
    pub fn to_canonical_json(&self) -> String {
        use serde_json::{json, Map, Value};
        let positions: Vec<Value> = self
            .positions
            .iter()
            .map(|p| {
                json!({
                    "id": p.id,
                    "owner": match p.owner { Player::P0 => 0, Player::P1 => 1 },
                    "target": p.target,
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                let mut m = Map::new();
                m.insert("from".into(), json!(self.positions[e.from as usize].id));
                m.insert("to".into(), json!(self.positions[e.to as usize].id));
                if let Some(label) = &e.label {
                    m.insert("label".into(), json!(label));
                }
                if let Some(cost) = e.cost {
                    m.insert("cost".into(), json!(cost));
                }
                Value::Object(m)
            })
            .collect();
        let doc = json!({ "positions": positions, "edges": edges });
        serde_json::to_string_pretty(&doc).expect("serializing a validated game cannot fail")
    }

    pub fn position_count(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn position(&self, idx: u32) -> &Position {
        &self.positions[idx as usize]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: u32) -> &Edge {
        &self.edges[idx as usize]
    }

    /// Outgoing edge indices of a position, in canonical edge order.
    pub fn out_edges(&self, pos: u32) -> &[u32] {
        &self.out[pos as usize]
    }

    /// Resolves a position id, or reports it unknown.
    pub fn position_index(&self, id: &str) -> Result<u32, GameError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GameError::UnknownPosition { id: id.to_string() })
    }

    /// Resolves an edge by displayed label (explicit or synthetic
    /// `from->to`), or reports it unknown.
    pub fn edge_by_display(&self, name: &str) -> Result<u32, GameError> {
        self.edges
            .iter()
            .position(|e| e.display == name)
            .map(|i| i as u32)
            .ok_or_else(|| GameError::UnknownEdge {
                name: name.to_string(),
            })
    }

    /// The edge index for an endpoint pair, if such an edge exists.
    pub fn edge_between(&self, from: u32, to: u32) -> Option<u32> {
        self.out[from as usize]
            .iter()
            .copied()
            .find(|&e| self.edges[e as usize].to == to)
    }

    /// The id of an edge's source/target positions, for messages.
    pub fn edge_endpoints(&self, idx: u32) -> (&str, &str) {
        let e = &self.edges[idx as usize];
        (
            &self.positions[e.from as usize].id,
            &self.positions[e.to as usize].id,
        )
    }
}

/// Deterministic game families used by tests and benchmarks.
pub mod generators {
    use super::*;

    /// A chain of `n` binary choices: Player 0 picks edge `a_i` or `b_i` at
    /// stage `i`, each leading through a Player-1 relay to the next stage,
    /// and the final position is a target with self-loop `k`. Player 0 wins
    /// from everywhere with exactly `2^n` positional strategies, so the
    /// polynomial at the start position has `2^n` incomparable monomials —
    /// a stress test for antichain normalization.
    pub fn diamond_chain(n: usize) -> BuchiGame {
        assert!(n >= 1 && n <= 16, "diamond_chain size out of range");
        let mut positions = Vec::new();
        let mut edges = Vec::new();
        for i in 0..=n {
            positions.push((format!("c{i:02}"), Player::P0, i == n));
        }
        for i in 1..=n {
            for side in ["a", "b"] {
                let relay = format!("t{i:02}{side}");
                positions.push((relay.clone(), Player::P1, false));
                edges.push(EdgeSpec {
                    from: format!("c{:02}", i - 1),
                    to: relay.clone(),
                    label: Some(format!("{side}{i:02}")),
                    cost: None,
                });
                edges.push(EdgeSpec::plain(&relay, &format!("c{i:02}")));
            }
        }
        edges.push(EdgeSpec::labeled(
            &format!("c{n:02}"),
            &format!("c{n:02}"),
            "k",
        ));
        BuchiGame::new(positions, edges).expect("diamond chain is a valid game")
    }

    /// A random total game with up to `max_pos` positions and out-degree at
    /// most `max_outdeg`, for oracle cross-checking. Owners and target
    /// membership are fair coin flips; edges are unlabeled and cost-free.
    pub fn random_game<R: Rng>(rng: &mut R, max_pos: usize, max_outdeg: usize) -> BuchiGame {
        assert!(max_pos >= 2 && max_outdeg >= 1);
        let n = rng.gen_range(2..=max_pos);
        let positions: Vec<(String, Player, bool)> = (0..n)
            .map(|i| {
                let owner = if rng.gen::<bool>() { Player::P0 } else { Player::P1 };
                (format!("p{i:02}"), owner, rng.gen::<bool>())
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            let d = rng.gen_range(1..=max_outdeg.min(n));
            for j in rand::seq::index::sample(rng, n, d) {
                edges.push(EdgeSpec::plain(&format!("p{i:02}"), &format!("p{j:02}")));
            }
        }
        BuchiGame::new(positions, edges).expect("generated game is valid")
    }
}
