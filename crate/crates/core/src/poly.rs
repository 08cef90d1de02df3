//! Absorptive polynomials over edge and target indeterminates.
//!
//! A monomial assigns an exponent from `ℕ ∪ {∞}` to each indeterminate of a
//! fixed [`Universe`]; a polynomial is a finite *antichain* of monomials
//! under the absorption preorder. Coefficients are not needed: addition is
//! idempotent, so a polynomial is determined by which monomials survive
//! absorption. A monomial `m₁` *absorbs* `m₂` when `m₁(x) ≤ m₂(x)` for every
//! indeterminate `x` — fewer and smaller exponents make a monomial more
//! permissive, hence greater in the natural order. Normalization keeps only
//! the absorption-maximal monomials, e.g. `a + ab` normalizes to `a`, and
//! `(ab² + a²b) · a^∞ = a^∞ b`.
//!
//! In game analyses a monomial over edge indeterminates is read as the edge
//! profile of a strategy: the exponent says how often the strategy uses the
//! edge, with `∞` for edges used forever. A universe may also carry *dual*
//! indeterminates `x̄` (tracking the absence of an edge, or a position left
//! out of the target set); in this *quotient* mode any product containing
//! both `x` and `x̄` collapses to zero, since no single scenario can both use
//! and avoid the same fact.
//!
//! [`PolySemiring`] packages the operations as a [`Semiring`] ops object,
//! optionally capping exponents at one (`posbool`), which turns the carrier
//! into the positive Boolean polynomials where only the *support* matters.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::semiring::Semiring;

/// An exponent: a natural number or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exp {
    Fin(u32),
    Inf,
}

impl Exp {
    pub const ONE: Exp = Exp::Fin(1);

    pub fn plus(self, other: Exp) -> Exp {
        match (self, other) {
            (Exp::Fin(a), Exp::Fin(b)) => Exp::Fin(a.saturating_add(b)),
            _ => Exp::Inf,
        }
    }

    fn capped(self) -> Exp {
        match self {
            Exp::Fin(k) => Exp::Fin(k.min(1)),
            Exp::Inf => Exp::ONE,
        }
    }
}

impl fmt::Display for Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exp::Fin(k) => write!(f, "{k}"),
            Exp::Inf => write!(f, "inf"),
        }
    }
}

/// The four flavours of indeterminate, in canonical sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndetKind {
    /// `X_e` — presence of edge `e`.
    Edge,
    /// `X̄_e` — absence of edge `e`.
    NegEdge,
    /// `X_v` — membership of position `v` in the target set.
    Target,
    /// `X̄_v` — absence of position `v` from the target set.
    NegTarget,
}

impl IndetKind {
    fn dual(self) -> IndetKind {
        match self {
            IndetKind::Edge => IndetKind::NegEdge,
            IndetKind::NegEdge => IndetKind::Edge,
            IndetKind::Target => IndetKind::NegTarget,
            IndetKind::NegTarget => IndetKind::Target,
        }
    }
}

/// What an indeterminate talks about: an edge (as an ordered position pair)
/// or a position. Subjects order lexicographically, which fixes the canonical
/// indeterminate order within a kind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    Edge(String, String),
    Pos(String),
}

/// Specification of one indeterminate for [`Universe::build`].
#[derive(Clone, Debug)]
pub struct IndetSpec {
    pub kind: IndetKind,
    pub subject: Subject,
    /// Name shown inside `e[...]`/`f[...]` when rendering. For edges this is
    /// the edge label (or the synthetic `from->to`), for targets the
    /// position id.
    pub display: String,
}

#[derive(Debug, PartialEq, Eq)]
struct IndetInfo {
    kind: IndetKind,
    subject: Subject,
    display: String,
    dual: Option<u32>,
}

/// The ordered set of indeterminates a family of polynomials ranges over.
///
/// Indices are assigned in canonical order — by `(kind, subject)`, with kinds
/// ordered `Edge < NegEdge < Target < NegTarget` — so that sorting by index
/// is the canonical factor order. Positive/negative indeterminates with the
/// same subject are linked as duals; a universe containing any dual pair is
/// in *quotient* mode.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    indets: Vec<IndetInfo>,
    quotient: bool,
}

impl Universe {
    /// Builds a universe from indeterminate specifications.
    ///
    /// Panics on duplicate `(kind, subject)` pairs — universes are
    /// constructed from validated games, so a duplicate is a programming
    /// error.
    pub fn build(specs: impl IntoIterator<Item = IndetSpec>) -> Arc<Universe> {
        let mut specs: Vec<IndetSpec> = specs.into_iter().collect();
        specs.sort_by(|a, b| (a.kind, &a.subject).cmp(&(b.kind, &b.subject)));
        for w in specs.windows(2) {
            assert!(
                (w[0].kind, &w[0].subject) != (w[1].kind, &w[1].subject),
                "duplicate indeterminate {:?} {:?}",
                w[0].kind,
                w[0].subject
            );
        }
        let mut indets: Vec<IndetInfo> = specs
            .into_iter()
            .map(|s| IndetInfo {
                kind: s.kind,
                subject: s.subject,
                display: s.display,
                dual: None,
            })
            .collect();
        let mut quotient = false;
        for i in 0..indets.len() {
            if indets[i].dual.is_some() {
                continue;
            }
            let want = (indets[i].kind.dual(), indets[i].subject.clone());
            if let Some(j) = indets
                .iter()
                .position(|x| (x.kind, x.subject.clone()) == want)
            {
                indets[i].dual = Some(j as u32);
                indets[j].dual = Some(i as u32);
                quotient = true;
            }
        }
        Arc::new(Universe { indets, quotient })
    }

    pub fn len(&self) -> usize {
        self.indets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indets.is_empty()
    }

    /// Whether this universe contains dual pairs (products with `x·x̄` vanish).
    pub fn is_quotient(&self) -> bool {
        self.quotient
    }

    pub fn kind(&self, idx: u32) -> IndetKind {
        self.indets[idx as usize].kind
    }

    pub fn subject(&self, idx: u32) -> &Subject {
        &self.indets[idx as usize].subject
    }

    pub fn dual_of(&self, idx: u32) -> Option<u32> {
        self.indets[idx as usize].dual
    }

    pub fn find(&self, kind: IndetKind, subject: &Subject) -> Option<u32> {
        self.indets
            .iter()
            .position(|x| x.kind == kind && x.subject == *subject)
            .map(|i| i as u32)
    }

    /// Looks an indeterminate up by its rendered factor name, e.g. `"e[b]"`
    /// or `"~f[v]"`. Intended for tests and assignment parsing.
    pub fn find_named(&self, name: &str) -> Option<u32> {
        (0..self.indets.len() as u32).find(|&i| self.factor_name(i) == name)
    }

    /// The rendered name of an indeterminate: `e[..]`/`~e[..]` for edges,
    /// `f[..]`/`~f[..]` for targets.
    pub fn factor_name(&self, idx: u32) -> String {
        let info = &self.indets[idx as usize];
        let (neg, letter) = match info.kind {
            IndetKind::Edge => ("", "e"),
            IndetKind::NegEdge => ("~", "e"),
            IndetKind::Target => ("", "f"),
            IndetKind::NegTarget => ("~", "f"),
        };
        format!("{neg}{letter}[{}]", info.display)
    }

    /// Renders a monomial in the canonical grammar: factors in index order
    /// joined by `·`, exponent `1` left implicit, `^k`/`^inf` otherwise. The
    /// empty monomial renders as `1`.
    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.exps.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::with_capacity(m.exps.len());
        for &(idx, exp) in &m.exps {
            let name = self.factor_name(idx);
            match exp {
                Exp::Fin(1) => parts.push(name),
                Exp::Fin(k) => parts.push(format!("{name}^{k}")),
                Exp::Inf => parts.push(format!("{name}^inf")),
            }
        }
        parts.join("·")
    }
}

/// A monomial: a sparse, index-sorted exponent vector over a universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(u32, Exp)>,
}

impl Monomial {
    /// The empty monomial (the polynomial one).
    pub fn one() -> Monomial {
        Monomial { exps: Vec::new() }
    }

    /// Builds a monomial from `(indeterminate index, exponent)` pairs.
    /// Repeated indices multiply (exponents add). Panics if the result would
    /// contain a dual pair of `universe` — such a monomial is zero and must
    /// not be constructed directly.
    pub fn new(universe: &Universe, pairs: &[(u32, Exp)]) -> Monomial {
        let mut m = Monomial::one();
        for &(idx, exp) in pairs {
            assert!((idx as usize) < universe.len(), "indeterminate out of range");
            m.set(idx, m.exp(idx).plus(exp));
        }
        assert!(
            !m.has_dual_collision(universe),
            "monomial contains a dual pair and would be zero"
        );
        m
    }

    /// The exponent of indeterminate `idx` (zero if absent).
    pub fn exp(&self, idx: u32) -> Exp {
        match self.exps.binary_search_by_key(&idx, |&(i, _)| i) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => Exp::Fin(0),
        }
    }

    fn set(&mut self, idx: u32, exp: Exp) {
        match self.exps.binary_search_by_key(&idx, |&(i, _)| i) {
            Ok(pos) => {
                if exp == Exp::Fin(0) {
                    self.exps.remove(pos);
                } else {
                    self.exps[pos].1 = exp;
                }
            }
            Err(pos) => {
                if exp != Exp::Fin(0) {
                    self.exps.insert(pos, (idx, exp));
                }
            }
        }
    }

    /// The indeterminates with non-zero exponent, in index order.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps.iter().map(|&(i, _)| i)
    }

    /// The `(index, exponent)` pairs in index order.
    pub fn factors(&self) -> &[(u32, Exp)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Whether `self` absorbs `other`: `self(x) ≤ other(x)` for every
    /// indeterminate, i.e. `other + self = self` in the polynomial semiring.
    pub fn absorbs(&self, other: &Monomial) -> bool {
        // support(self) must be a subset of support(other), with pointwise
        // smaller-or-equal exponents
        if self.exps.len() > other.exps.len() {
            return false;
        }
        let mut o = other.exps.iter();
        'outer: for &(idx, exp) in &self.exps {
            for &(oidx, oexp) in o.by_ref() {
                match oidx.cmp(&idx) {
                    Ordering::Less => continue,
                    Ordering::Equal => {
                        if exp <= oexp {
                            continue 'outer;
                        }
                        return false;
                    }
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    fn has_dual_collision(&self, universe: &Universe) -> bool {
        if !universe.quotient {
            return false;
        }
        self.exps.iter().any(|&(idx, _)| {
            universe
                .dual_of(idx)
                .is_some_and(|d| d > idx && self.exp(d) != Exp::Fin(0))
        })
    }

    /// The product, or `None` if it collapses to zero under the quotient.
    fn mul(&self, other: &Monomial, universe: &Universe, posbool: bool) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(&&(ia, ea)), Some(&&(ib, eb))) => match ia.cmp(&ib) {
                    Ordering::Less => *a.next().unwrap(),
                    Ordering::Greater => *b.next().unwrap(),
                    Ordering::Equal => {
                        a.next();
                        b.next();
                        (ia, ea.plus(eb))
                    }
                },
                (Some(_), None) => *a.next().unwrap(),
                (None, Some(_)) => *b.next().unwrap(),
                (None, None) => break,
            };
            let (idx, exp) = next;
            exps.push((idx, if posbool { exp.capped() } else { exp }));
        }
        let m = Monomial { exps };
        if m.has_dual_collision(universe) {
            return None;
        }
        Some(m)
    }

    /// The pointwise maximum of exponents — the largest monomial below both
    /// operands in the natural order — or `None` if it collapses to zero
    /// under the quotient.
    fn meet(&self, other: &Monomial, universe: &Universe) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(&&(ia, ea)), Some(&&(ib, eb))) => match ia.cmp(&ib) {
                    Ordering::Less => *a.next().unwrap(),
                    Ordering::Greater => *b.next().unwrap(),
                    Ordering::Equal => {
                        a.next();
                        b.next();
                        (ia, ea.max(eb))
                    }
                },
                (Some(_), None) => *a.next().unwrap(),
                (None, Some(_)) => *b.next().unwrap(),
                (None, None) => break,
            };
            exps.push(next);
        }
        let m = Monomial { exps };
        (!m.has_dual_collision(universe)).then_some(m)
    }

    fn all_inf(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(i, _)| (i, Exp::Inf)).collect(),
        }
    }

    fn dropped(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(i, _)| (i, Exp::ONE)).collect(),
        }
    }

    /// Canonical order: by support (lexicographically on index sequences),
    /// then by exponent sequences.
    fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        let supp = self
            .exps
            .iter()
            .map(|&(i, _)| i)
            .cmp(other.exps.iter().map(|&(i, _)| i));
        supp.then_with(|| {
            self.exps
                .iter()
                .map(|&(_, e)| e)
                .cmp(other.exps.iter().map(|&(_, e)| e))
        })
    }
}

/// An absorptive polynomial: a normalized antichain of monomials over a
/// shared universe. The zero polynomial has no monomials; the one polynomial
/// is the singleton of the empty monomial.
#[derive(Clone, Debug)]
pub struct Poly {
    universe: Arc<Universe>,
    monomials: Vec<Monomial>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        (Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe)
            && self.monomials == other.monomials
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(universe: Arc<Universe>) -> Poly {
        Poly {
            universe,
            monomials: Vec::new(),
        }
    }

    pub fn one(universe: Arc<Universe>) -> Poly {
        Poly {
            universe,
            monomials: vec![Monomial::one()],
        }
    }

    /// Builds a polynomial as the normalized sum of `monomials`.
    pub fn from_monomials(
        universe: Arc<Universe>,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Poly {
        let mut p = Poly {
            universe,
            monomials: monomials.into_iter().collect(),
        };
        p.normalize();
        p
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomials.len() == 1 && self.monomials[0].is_one()
    }

    /// Keeps only absorption-maximal monomials and sorts them canonically.
    fn normalize(&mut self) {
        self.monomials.sort_by(Monomial::canonical_cmp);
        self.monomials.dedup();
        let ms = std::mem::take(&mut self.monomials);
        self.monomials = ms
            .iter()
            .filter(|m| !ms.iter().any(|o| *o != **m && o.absorbs(m)))
            .cloned()
            .collect();
    }

    /// Caps every exponent at one and renormalizes, projecting into the
    /// positive Boolean polynomials where only supports matter:
    /// `a^∞ b² + a b  ↦  a b`.
    pub fn drop_exponents(&self) -> Poly {
        Poly::from_monomials(
            Arc::clone(&self.universe),
            self.monomials.iter().map(Monomial::dropped),
        )
    }

    /// The meet (greatest lower bound) of two polynomials in the natural
    /// order. Every maximal common lower bound of a monomial pair is the
    /// pair's pointwise exponent maximum; in quotient mode a pair that would
    /// demand an indeterminate together with its dual has no non-zero lower
    /// bound and drops out.
    pub fn meet(&self, other: &Poly) -> Poly {
        debug_assert!(
            Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe,
            "meet of polynomials over different universes"
        );
        let mut met = Vec::with_capacity(self.monomials.len() * other.monomials.len());
        for a in &self.monomials {
            for b in &other.monomials {
                if let Some(m) = a.meet(b, &self.universe) {
                    met.push(m);
                }
            }
        }
        Poly::from_monomials(Arc::clone(&self.universe), met)
    }

    /// Renders the polynomial in the canonical grammar: monomials in
    /// canonical order joined by `" + "`, `0`/`1` for the constants.
    pub fn render(&self) -> String {
        if self.monomials.is_empty() {
            return "0".to_string();
        }
        self.monomials
            .iter()
            .map(|m| self.universe.render_monomial(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Ops object for polynomials over a fixed universe.
///
/// With `posbool` set, exponents are capped at one after every
/// multiplication, giving the positive Boolean quotient (where `∞`-power is
/// the identity, since monomial multiplication is then idempotent).
#[derive(Clone, Debug)]
pub struct PolySemiring {
    universe: Arc<Universe>,
    posbool: bool,
}

impl PolySemiring {
    pub fn new(universe: Arc<Universe>) -> PolySemiring {
        PolySemiring {
            universe,
            posbool: false,
        }
    }

    pub fn posbool(universe: Arc<Universe>) -> PolySemiring {
        PolySemiring {
            universe,
            posbool: true,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn is_posbool(&self) -> bool {
        self.posbool
    }

    fn check(&self, p: &Poly) {
        debug_assert!(
            Arc::ptr_eq(&p.universe, &self.universe) || p.universe == self.universe,
            "polynomial from a different universe"
        );
    }
}

impl Semiring for PolySemiring {
    type Value = Poly;

    fn zero(&self) -> Poly {
        Poly::zero(Arc::clone(&self.universe))
    }

    fn one(&self) -> Poly {
        Poly::one(Arc::clone(&self.universe))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.check(a);
        self.check(b);
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        Poly::from_monomials(
            Arc::clone(&self.universe),
            a.monomials.iter().chain(&b.monomials).cloned(),
        )
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.check(a);
        self.check(b);
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.is_one() {
            return b.clone();
        }
        if b.is_one() {
            return a.clone();
        }
        let mut monomials = Vec::with_capacity(a.monomials.len() * b.monomials.len());
        for ma in &a.monomials {
            for mb in &b.monomials {
                if let Some(m) = ma.mul(mb, &self.universe, self.posbool) {
                    monomials.push(m);
                }
            }
        }
        Poly::from_monomials(Arc::clone(&self.universe), monomials)
    }

    fn inf_power(&self, a: &Poly) -> Poly {
        self.check(a);
        // (Σ mᵢ)^∞ = Σ mᵢ^∞ by the ∞-power laws; in posbool mode monomials
        // are multiplicatively idempotent, so the power chain is constant.
        if self.posbool {
            debug_assert!(a
                .monomials
                .iter()
                .all(|m| m.exps.iter().all(|&(_, e)| e <= Exp::ONE)));
            return a.clone();
        }
        Poly::from_monomials(
            Arc::clone(&self.universe),
            a.monomials.iter().map(Monomial::all_inf),
        )
    }

    /// Proposes the limit of a descending chain by matching each monomial of
    /// `curr` to an absorbing parent in `prev` and sending the exponents that
    /// grew to `∞`.
    ///
    /// Only a coordinate that was already non-zero in the parent counts as
    /// grown: a repeated derivation step keeps pumping it, so its limit is
    /// `∞`. A coordinate appearing for the first time keeps its value — it
    /// may well stay constant from here on. Parents are chosen to follow
    /// growth *threads*: prefer a parent with the same support, then one
    /// with the fewest grown coordinates, then the canonically first. The
    /// proposal is a guess — the solver trusts it only once an exact
    /// re-solve reproduces it.
    fn extrapolate_limit(&self, prev: &Poly, curr: &Poly) -> Option<Poly> {
        self.check(prev);
        self.check(curr);
        fn grew(parent: &Monomial, i: u32, e: Exp) -> bool {
            let pe = parent.exp(i);
            pe != Exp::Fin(0) && pe < e
        }
        let mut extrapolated = Vec::with_capacity(curr.monomials.len());
        let mut changed = false;
        for m in &curr.monomials {
            let mut best: Option<(bool, usize, &Monomial)> = None;
            for p in prev.monomials.iter().filter(|p| p.absorbs(m)) {
                let same_support = p.exps.len() == m.exps.len();
                let grown = m.exps.iter().filter(|&&(i, e)| grew(p, i, e)).count();
                // rank: same support first, then fewest grown coordinates;
                // prev is in canonical order, so the first best candidate wins
                let better =
                    best.map_or(true, |(bs, bg, _)| (!same_support, grown) < (!bs, bg));
                if better {
                    best = Some((same_support, grown, p));
                }
            }
            // a monomial with no absorbing parent is brand new in this step;
            // leave it alone and let a later step reveal how it grows
            let Some((_, grown, parent)) = best else {
                extrapolated.push(m.clone());
                continue;
            };
            if grown == 0 {
                extrapolated.push(m.clone());
            } else {
                changed = true;
                extrapolated.push(Monomial {
                    exps: m
                        .exps
                        .iter()
                        .map(|&(i, e)| (i, if grew(parent, i, e) { Exp::Inf } else { e }))
                        .collect(),
                });
            }
        }
        if !changed {
            return None;
        }
        let proposal = Poly::from_monomials(Arc::clone(&self.universe), extrapolated);
        (proposal != *curr).then_some(proposal)
    }

    fn meet(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        self.check(a);
        self.check(b);
        Some(a.meet(b))
    }
}

/// Errors from evaluating a polynomial under an assignment.
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("indeterminate {0} has no assigned value")]
    Unassigned(String),
    #[error("assignment violates the quotient: value of {0} times value of its dual is not zero")]
    DualViolation(String),
}

/// A partial map from the indeterminates of a universe to values of a target
/// semiring, inducing the evaluation homomorphism of [`eval_hom`].
#[derive(Clone, Debug)]
pub struct Assignment<V> {
    values: Vec<Option<V>>,
}

impl<V: Clone> Assignment<V> {
    pub fn empty(universe: &Universe) -> Assignment<V> {
        Assignment {
            values: vec![None; universe.len()],
        }
    }

    /// Assigns `value` to the indeterminate with index `idx`.
    pub fn set(&mut self, idx: u32, value: V) -> &mut Self {
        self.values[idx as usize] = Some(value);
        self
    }

    pub fn get(&self, idx: u32) -> Option<&V> {
        self.values[idx as usize].as_ref()
    }
}

/// Evaluates `p` in `target` under the homomorphism induced by `h`: each
/// monomial maps to the product of its factors' values (using the target's
/// `∞`-power for `∞` exponents) and the results are summed.
///
/// Requires a value for every indeterminate occurring in `p`, and — in
/// quotient mode — that assigned dual pairs multiply to zero, since the
/// quotient identifies `x·x̄` with zero and the image must agree.
pub fn eval_hom<S: Semiring>(
    p: &Poly,
    h: &Assignment<S::Value>,
    target: &S,
) -> Result<S::Value, EvalError> {
    let universe = p.universe();
    if universe.is_quotient() {
        for idx in 0..universe.len() as u32 {
            let Some(dual) = universe.dual_of(idx) else {
                continue;
            };
            if dual < idx {
                continue;
            }
            if let (Some(a), Some(b)) = (h.get(idx), h.get(dual)) {
                if !target.is_zero(&target.mul(a, b)) {
                    return Err(EvalError::DualViolation(universe.factor_name(idx)));
                }
            }
        }
    }
    let mut sum = target.zero();
    for m in p.monomials() {
        let mut prod = target.one();
        for &(idx, exp) in m.factors() {
            let v = h
                .get(idx)
                .ok_or_else(|| EvalError::Unassigned(universe.factor_name(idx)))?;
            let factor = match exp {
                Exp::Fin(k) => target.pow(v, k),
                Exp::Inf => target.inf_power(v),
            };
            prod = target.mul(&prod, &factor);
        }
        sum = target.add(&sum, &prod);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{BooleanSemiring, TropicalCost, TropicalSemiring, ViterbiSemiring};
    use ordered_float::OrderedFloat;

    /// A plain universe of edge indeterminates displayed `a`, `b`, `c`, `d`,
    /// with subjects chosen so the canonical order is alphabetical.
    fn abcd() -> Arc<Universe> {
        Universe::build(["a", "b", "c", "d"].map(|n| IndetSpec {
            kind: IndetKind::Edge,
            subject: Subject::Edge(n.to_string(), n.to_string()),
            display: n.to_string(),
        }))
    }

    /// A quotient universe with the dual pair `x`, `x̄` and a plain `y`.
    fn dual_xy() -> Arc<Universe> {
        Universe::build([
            IndetSpec {
                kind: IndetKind::Edge,
                subject: Subject::Edge("x".into(), "x".into()),
                display: "x".into(),
            },
            IndetSpec {
                kind: IndetKind::NegEdge,
                subject: Subject::Edge("x".into(), "x".into()),
                display: "x".into(),
            },
            IndetSpec {
                kind: IndetKind::Edge,
                subject: Subject::Edge("y".into(), "y".into()),
                display: "y".into(),
            },
        ])
    }

    fn mono(u: &Arc<Universe>, factors: &[(&str, Exp)]) -> Monomial {
        let pairs: Vec<(u32, Exp)> = factors
            .iter()
            .map(|&(name, exp)| (u.find_named(name).expect(name), exp))
            .collect();
        Monomial::new(u, &pairs)
    }

    fn poly(u: &Arc<Universe>, monomials: &[&[(&str, Exp)]]) -> Poly {
        Poly::from_monomials(Arc::clone(u), monomials.iter().map(|m| mono(u, m)))
    }

    const F1: Exp = Exp::Fin(1);
    const F2: Exp = Exp::Fin(2);

    #[test]
    fn absorption_compares_pointwise() {
        let u = abcd();
        let ab2 = mono(&u, &[("e[a]", F1), ("e[b]", F2)]);
        let ainf_b2 = mono(&u, &[("e[a]", Exp::Inf), ("e[b]", F2)]);
        let a = mono(&u, &[("e[a]", F1)]);
        let ab = mono(&u, &[("e[a]", F1), ("e[b]", F1)]);
        let a2b = mono(&u, &[("e[a]", F2), ("e[b]", F1)]);
        assert!(ab2.absorbs(&ainf_b2));
        assert!(!ainf_b2.absorbs(&ab2));
        assert!(a.absorbs(&ab));
        assert!(!ab.absorbs(&a));
        assert!(!a2b.absorbs(&ab2));
        assert!(!ab2.absorbs(&a2b));
        assert!(a.absorbs(&a));
    }

    #[test]
    fn normalization_keeps_the_antichain() {
        let u = abcd();
        assert_eq!(
            poly(&u, &[&[("e[a]", F1)], &[("e[a]", F1), ("e[b]", F1)]]),
            poly(&u, &[&[("e[a]", F1)]])
        );
        assert_eq!(
            poly(
                &u,
                &[
                    &[("e[a]", Exp::Inf), ("e[b]", F2)],
                    &[("e[a]", Exp::Inf), ("e[b]", F1)]
                ]
            ),
            poly(&u, &[&[("e[a]", Exp::Inf), ("e[b]", F1)]])
        );
    }

    #[test]
    fn multiplication_absorbs_across_products() {
        // (ab² + a²b) · a^∞ = a^∞ b
        let u = abcd();
        let ctx = PolySemiring::new(Arc::clone(&u));
        let p = poly(
            &u,
            &[
                &[("e[a]", F1), ("e[b]", F2)],
                &[("e[a]", F2), ("e[b]", F1)],
            ],
        );
        let ainf = poly(&u, &[&[("e[a]", Exp::Inf)]]);
        assert_eq!(
            ctx.mul(&p, &ainf),
            poly(&u, &[&[("e[a]", Exp::Inf), ("e[b]", F1)]])
        );
    }

    #[test]
    fn inf_power_distributes_over_monomials() {
        let u = abcd();
        let ctx = PolySemiring::new(Arc::clone(&u));
        let p = poly(&u, &[&[("e[a]", F2)], &[("e[b]", F1), ("e[c]", F1)]]);
        assert_eq!(
            ctx.inf_power(&p),
            poly(
                &u,
                &[
                    &[("e[a]", Exp::Inf)],
                    &[("e[b]", Exp::Inf), ("e[c]", Exp::Inf)]
                ]
            )
        );
        assert_eq!(ctx.inf_power(&ctx.zero()), ctx.zero());
        assert_eq!(ctx.inf_power(&ctx.one()), ctx.one());
    }

    #[test]
    fn quotient_collapses_dual_products() {
        let u = dual_xy();
        let ctx = PolySemiring::new(Arc::clone(&u));
        let x = poly(&u, &[&[("e[x]", F1)]]);
        let xbar = poly(&u, &[&[("~e[x]", F1)]]);
        let y = poly(&u, &[&[("e[y]", F1)]]);
        assert!(ctx.mul(&x, &xbar).is_zero());
        // only the colliding cross terms vanish
        let mixed = ctx.mul(&ctx.add(&x, &y), &xbar);
        assert_eq!(mixed, poly(&u, &[&[("~e[x]", F1), ("e[y]", F1)]]));
    }

    #[test]
    fn posbool_caps_exponents() {
        let u = abcd();
        let ctx = PolySemiring::posbool(Arc::clone(&u));
        let ab = poly(&u, &[&[("e[a]", F1), ("e[b]", F1)]]);
        assert_eq!(ctx.mul(&ab, &ab), ab);
        assert_eq!(ctx.inf_power(&ab), ab);
    }

    #[test]
    fn drop_exponents_projects_to_supports() {
        // a^∞ b² + a b  ↦  a b
        let u = abcd();
        let p = poly(
            &u,
            &[
                &[("e[a]", Exp::Inf), ("e[b]", F2)],
                &[("e[a]", F1), ("e[b]", F1)],
            ],
        );
        assert_eq!(p.drop_exponents(), poly(&u, &[&[("e[a]", F1), ("e[b]", F1)]]));
    }

    #[test]
    fn rendering_follows_the_canonical_grammar() {
        let u = abcd();
        let ctx = PolySemiring::new(Arc::clone(&u));
        assert_eq!(ctx.zero().render(), "0");
        assert_eq!(ctx.one().render(), "1");
        let p = poly(
            &u,
            &[
                &[("e[b]", F1), ("e[c]", Exp::Inf)],
                &[("e[a]", F2), ("e[d]", F1)],
            ],
        );
        assert_eq!(p.render(), "e[a]^2·e[d] + e[b]·e[c]^inf");
    }

    #[test]
    fn monomials_sort_by_support_then_exponents() {
        let u = abcd();
        // supports: {a,d} < {b,c}; within equal support, exponents decide
        let p = poly(
            &u,
            &[
                &[("e[b]", F1), ("e[c]", F2)],
                &[("e[b]", F2), ("e[c]", F1)],
                &[("e[a]", F1), ("e[d]", Exp::Inf)],
            ],
        );
        assert_eq!(p.render(), "e[a]·e[d]^inf + e[b]·e[c]^2 + e[b]^2·e[c]");
    }

    #[test]
    fn eval_hom_into_tropical_and_viterbi() {
        // p = b·c^∞
        let u = abcd();
        let p = poly(&u, &[&[("e[b]", F1), ("e[c]", Exp::Inf)]]);
        let b = u.find_named("e[b]").unwrap();
        let c = u.find_named("e[c]").unwrap();

        // b ↦ 2, c ↦ 0 tropically: crossing b once costs 2, looping on the
        // free edge c adds nothing, total 2
        let mut h = Assignment::empty(&u);
        h.set(b, TropicalCost::from_integer(2))
            .set(c, TropicalCost::from_integer(0));
        assert_eq!(
            eval_hom(&p, &h, &TropicalSemiring).unwrap(),
            TropicalCost::from_integer(2)
        );

        // exponents multiply the cost in: b²·c^∞ costs 4
        let p2 = poly(&u, &[&[("e[b]", F2), ("e[c]", Exp::Inf)]]);
        assert_eq!(
            eval_hom(&p2, &h, &TropicalSemiring).unwrap(),
            TropicalCost::from_integer(4)
        );

        // c ↦ 1 makes the ∞ factor diverge
        let mut h = Assignment::empty(&u);
        h.set(b, TropicalCost::from_integer(2))
            .set(c, TropicalCost::from_integer(1));
        assert_eq!(
            eval_hom(&p, &h, &TropicalSemiring).unwrap(),
            TropicalCost::Infinite
        );

        // b ↦ 1, c ↦ 0.5 in Viterbi: 1 · 0.5^∞ = 0
        let mut h = Assignment::empty(&u);
        h.set(b, OrderedFloat(1.0)).set(c, OrderedFloat(0.5));
        assert_eq!(eval_hom(&p, &h, &ViterbiSemiring).unwrap(), OrderedFloat(0.0));
    }

    #[test]
    fn eval_hom_all_one_tests_nonzeroness() {
        let u = abcd();
        let ctx = BooleanSemiring;
        let p = poly(&u, &[&[("e[a]", Exp::Inf)], &[("e[b]", F1)]]);
        let mut h = Assignment::empty(&u);
        for i in 0..u.len() as u32 {
            h.set(i, true);
        }
        assert!(eval_hom(&p, &h, &ctx).unwrap());
        assert!(!eval_hom(&Poly::zero(Arc::clone(&u)), &h, &ctx).unwrap());
    }

    #[test]
    fn eval_hom_reports_missing_assignments() {
        let u = abcd();
        let p = poly(&u, &[&[("e[a]", F1)]]);
        let h: Assignment<bool> = Assignment::empty(&u);
        assert!(matches!(
            eval_hom(&p, &h, &BooleanSemiring),
            Err(EvalError::Unassigned(name)) if name == "e[a]"
        ));
    }

    #[test]
    fn eval_hom_enforces_dual_compatibility() {
        let u = dual_xy();
        let p = poly(&u, &[&[("e[x]", F1)]]);
        let mut h = Assignment::empty(&u);
        h.set(u.find_named("e[x]").unwrap(), true)
            .set(u.find_named("~e[x]").unwrap(), true);
        assert!(matches!(
            eval_hom(&p, &h, &BooleanSemiring),
            Err(EvalError::DualViolation(_))
        ));
    }

    #[test]
    fn extrapolation_follows_growth_threads() {
        // the iterate pattern of a two-loop game: b·c^n steps to b·c^(n+1);
        // the proposal sends the climbing exponent to ∞ and keeps the rest
        let u = abcd();
        let ctx = PolySemiring::new(Arc::clone(&u));
        let prev = poly(&u, &[&[("e[b]", F1), ("e[c]", F1)]]);
        let curr = poly(&u, &[&[("e[b]", F1), ("e[c]", F2)]]);
        assert_eq!(
            ctx.extrapolate_limit(&prev, &curr),
            Some(poly(&u, &[&[("e[b]", F1), ("e[c]", Exp::Inf)]]))
        );
        // a stationary pair yields no proposal
        assert_eq!(ctx.extrapolate_limit(&curr, &curr), None);
    }

    #[test]
    fn extrapolation_prefers_same_support_parents() {
        // curr monomial a b² c has two incomparable parents: a b c (same
        // support, b grew) and a b² (c grew); the same-support thread wins,
        // so b saturates and c stays finite
        let u = abcd();
        let ctx = PolySemiring::new(Arc::clone(&u));
        let prev = poly(
            &u,
            &[
                &[("e[a]", F1), ("e[b]", F1), ("e[c]", F1)],
                &[("e[a]", F1), ("e[b]", F2)],
            ],
        );
        let curr = poly(&u, &[&[("e[a]", F1), ("e[b]", F2), ("e[c]", F1)]]);
        assert_eq!(
            ctx.extrapolate_limit(&prev, &curr),
            Some(poly(
                &u,
                &[&[("e[a]", F1), ("e[b]", Exp::Inf), ("e[c]", F1)]]
            ))
        );
    }

    #[test]
    fn meet_is_the_pointwise_exponent_maximum() {
        let u = abcd();
        // (a + b²) ⊓ (b + c) = ab + ac + b² + b²c → b² absorbs b²c
        let p = poly(&u, &[&[("e[a]", F1)], &[("e[b]", F2)]]);
        let q = poly(&u, &[&[("e[b]", F1)], &[("e[c]", F1)]]);
        let met = p.meet(&q);
        assert_eq!(met.render(), "e[a]·e[b] + e[a]·e[c] + e[b]^2");
        // the meet is the greatest lower bound: below both its operands
        let ctx = PolySemiring::new(Arc::clone(&u));
        assert!(ctx.natural_le(&met, &p));
        assert!(ctx.natural_le(&met, &q));
        // one is neutral, zero absorbing
        assert_eq!(p.meet(&Poly::one(Arc::clone(&u))), p);
        assert!(p.meet(&Poly::zero(Arc::clone(&u))).is_zero());
    }

    #[test]
    fn meet_respects_the_quotient() {
        // x ⊓ x̄ has no non-zero common lower bound
        let u = dual_xy();
        let p = poly(&u, &[&[("e[x]", F1)]]);
        let q = poly(&u, &[&[("~e[x]", F1)]]);
        assert!(p.meet(&q).is_zero());
    }

    #[test]
    fn extrapolation_leaves_new_coordinates_finite() {
        // a·b steps to a²·b·c: a grew from a non-zero value and saturates,
        // while c only just appeared and keeps its value
        let u = abcd();
        let ctx = PolySemiring::new(Arc::clone(&u));
        let prev = poly(&u, &[&[("e[a]", F1), ("e[b]", F1)]]);
        let curr = poly(&u, &[&[("e[a]", F2), ("e[b]", F1), ("e[c]", F1)]]);
        assert_eq!(
            ctx.extrapolate_limit(&prev, &curr),
            Some(poly(
                &u,
                &[&[("e[a]", Exp::Inf), ("e[b]", F1), ("e[c]", F1)]]
            ))
        );
        // a step that only introduces new coordinates proposes nothing
        let fresh = poly(&u, &[&[("e[a]", F1), ("e[b]", F1), ("e[c]", F1)]]);
        assert_eq!(ctx.extrapolate_limit(&prev, &fresh), None);
    }

    #[test]
    fn universe_orders_kinds_before_subjects() {
        let u = Universe::build([
            IndetSpec {
                kind: IndetKind::NegTarget,
                subject: Subject::Pos("a".into()),
                display: "a".into(),
            },
            IndetSpec {
                kind: IndetKind::Target,
                subject: Subject::Pos("b".into()),
                display: "b".into(),
            },
            IndetSpec {
                kind: IndetKind::Edge,
                subject: Subject::Edge("z".into(), "z".into()),
                display: "z".into(),
            },
        ]);
        let names: Vec<String> = (0..u.len() as u32).map(|i| u.factor_name(i)).collect();
        assert_eq!(names, vec!["e[z]", "f[b]", "~f[a]"]);
    }

    #[test]
    fn dual_linking_is_symmetric() {
        let u = dual_xy();
        let x = u.find_named("e[x]").unwrap();
        let xbar = u.find_named("~e[x]").unwrap();
        let y = u.find_named("e[y]").unwrap();
        assert_eq!(u.dual_of(x), Some(xbar));
        assert_eq!(u.dual_of(xbar), Some(x));
        assert_eq!(u.dual_of(y), None);
        assert!(u.is_quotient());
        assert!(!abcd().is_quotient());
    }
}
