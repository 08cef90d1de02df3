//! Absorptive semirings and their laws.
//!
//! All game analyses in this crate are parameterized by a commutative
//! semiring `(S, +, ·, 0, 1)` that is *absorptive*: `a + a·b = a` for all
//! `a, b`. Absorption forces addition to be idempotent and orients the
//! *natural order* `a ≤ b ⇔ a + b = b`, under which `0` is the least and `1`
//! the greatest element and multiplication is decreasing. The semirings used
//! here are moreover fully continuous (all chain suprema/infima exist and the
//! operations preserve them), which guarantees that the fixed points computed
//! by the [`crate::solver`] exist; for the *finite* exponent-free carriers
//! below this is automatic.
//!
//! On top of the semiring operations we require an `∞`-power `a^∞ = ⊓ₙ aⁿ`,
//! the limit of the decreasing powers of `a`. It satisfies `a · a^∞ = a^∞`,
//! `(a·b)^∞ = a^∞ · b^∞` and `(a+b)^∞ = a^∞ + b^∞`, and it is what lets
//! polynomial values express "this edge is used infinitely often".
//!
//! Operations are bundled in an ops object (the [`Semiring`] trait is
//! implemented by small context structs, not by the value types themselves)
//! so that carriers needing runtime data — the ordered level list of
//! [`MinMaxSemiring`], the indeterminate universe of
//! [`crate::poly::PolySemiring`] — fit the same interface.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::Signed;
use num_traits::Zero;
use ordered_float::OrderedFloat;

/// Operations of a commutative absorptive semiring with `∞`-power.
///
/// Implementations must satisfy the semiring axioms, absorption
/// (`a + a·b = a`) and the three `∞`-power laws listed in the module
/// documentation; [`check_laws`] tests all of them on sampled values.
/// Equality of values must be decidable and exact — the fixed-point solver
/// detects convergence by comparing consecutive iterates.
pub trait Semiring {
    type Value: Clone + Eq + Debug;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    /// The infimum `a^∞ = ⊓ₙ aⁿ` of the descending chain of powers of `a`.
    fn inf_power(&self, a: &Self::Value) -> Self::Value;

    /// The natural order `a ≤ b ⇔ a + b = b`.
    fn natural_le(&self, a: &Self::Value, b: &Self::Value) -> bool {
        self.add(a, b) == *b
    }

    fn is_zero(&self, a: &Self::Value) -> bool {
        *a == self.zero()
    }

    /// `a^k` for a finite exponent, by repeated multiplication.
    fn pow(&self, a: &Self::Value, k: u32) -> Self::Value {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Fixed-point acceleration hook used by the solver's outer iteration.
    ///
    /// Given two consecutive iterates `prev ≥ curr` of a descending chain,
    /// an implementation may propose a guess for the chain's limit; the
    /// solver continues its iteration from the guess and only returns a
    /// value that an exact re-solve reproduces. Carriers without infinite
    /// descending chains never need this.
    fn extrapolate_limit(&self, prev: &Self::Value, curr: &Self::Value) -> Option<Self::Value> {
        let _ = (prev, curr);
        None
    }

    /// The meet (greatest lower bound) of two values in the natural order,
    /// for carriers that can compute it. The solver meets every new outer
    /// iterate with its predecessor to keep the accelerated chain
    /// descending; `None` (the default) skips that safeguard, which is
    /// sound whenever [`Semiring::extrapolate_limit`] never proposes.
    fn meet(&self, a: &Self::Value, b: &Self::Value) -> Option<Self::Value> {
        let _ = (a, b);
        None
    }
}

/// The two-element Boolean semiring: `+` is disjunction, `·` conjunction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BooleanSemiring;

impl Semiring for BooleanSemiring {
    type Value = bool;

    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn inf_power(&self, a: &bool) -> bool {
        *a
    }
}

/// A tropical cost: a non-negative rational or `∞`.
///
/// Rationals keep the arithmetic exact, so equality (which the solver's
/// convergence check depends on) is decidable; every finite `f64` converts
/// losslessly via [`TropicalCost::from_f64`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TropicalCost {
    Finite(BigRational),
    Infinite,
}

impl TropicalCost {
    /// A finite cost. Panics if `r` is negative — the carrier is `ℝ₊ ∪ {∞}`.
    pub fn finite(r: BigRational) -> Self {
        assert!(!r.is_negative(), "tropical costs are non-negative, got {r}");
        TropicalCost::Finite(r)
    }

    pub fn from_integer(n: u64) -> Self {
        TropicalCost::Finite(BigRational::from_integer(n.into()))
    }

    /// Exact conversion from a finite, non-negative float.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() || x < 0.0 {
            return None;
        }
        BigRational::from_float(x).map(TropicalCost::Finite)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropicalCost::Finite(_))
    }
}

impl std::fmt::Display for TropicalCost {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TropicalCost::Finite(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            TropicalCost::Infinite => write!(f, "inf"),
        }
    }
}

/// The tropical semiring `(ℝ₊ ∪ {∞}, min, +, ∞, 0)`.
///
/// The natural order is the *reverse* numeric order: cheaper is greater, `∞`
/// (the zero element) is bottom and cost `0` (the one element) is top.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TropicalSemiring;

impl Semiring for TropicalSemiring {
    type Value = TropicalCost;

    fn zero(&self) -> TropicalCost {
        TropicalCost::Infinite
    }
    fn one(&self) -> TropicalCost {
        TropicalCost::Finite(BigRational::zero())
    }

    fn add(&self, a: &TropicalCost, b: &TropicalCost) -> TropicalCost {
        // min in the numeric order, with Infinite as the largest cost
        std::cmp::min(a, b).clone()
    }

    fn mul(&self, a: &TropicalCost, b: &TropicalCost) -> TropicalCost {
        match (a, b) {
            (TropicalCost::Finite(x), TropicalCost::Finite(y)) => TropicalCost::Finite(x + y),
            _ => TropicalCost::Infinite,
        }
    }

    fn inf_power(&self, a: &TropicalCost) -> TropicalCost {
        // sup_n n·a: stays 0 for a = 0, diverges for any positive cost
        match a {
            TropicalCost::Finite(x) if x.is_zero() => self.one(),
            _ => TropicalCost::Infinite,
        }
    }
}

/// A Viterbi score, a float in `[0, 1]`.
pub type ViterbiScore = OrderedFloat<f64>;

/// The Viterbi semiring `([0, 1], max, ·, 0, 1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ViterbiSemiring;

impl ViterbiSemiring {
    /// A score in `[0, 1]`; `None` outside the carrier.
    pub fn score(x: f64) -> Option<ViterbiScore> {
        (0.0..=1.0).contains(&x).then(|| OrderedFloat(x))
    }
}

impl Semiring for ViterbiSemiring {
    type Value = ViterbiScore;

    fn zero(&self) -> ViterbiScore {
        OrderedFloat(0.0)
    }
    fn one(&self) -> ViterbiScore {
        OrderedFloat(1.0)
    }
    fn add(&self, a: &ViterbiScore, b: &ViterbiScore) -> ViterbiScore {
        std::cmp::max(*a, *b)
    }
    fn mul(&self, a: &ViterbiScore, b: &ViterbiScore) -> ViterbiScore {
        OrderedFloat(a.0 * b.0)
    }
    fn inf_power(&self, a: &ViterbiScore) -> ViterbiScore {
        // lim a^n: 1 stays 1, anything below decays to 0
        if a.0 == 1.0 {
            self.one()
        } else {
            self.zero()
        }
    }
}

/// An element of a [`MinMaxSemiring`]: an index into its level list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MinMaxLevel(pub u32);

/// A min-max semiring over a finite ordered list of levels: `+` is max, `·`
/// is min, the least level is zero and the greatest is one.
///
/// Typical use: edges carry access levels, and the value of a position is the
/// best (max over strategies) of the weakest level (min over edge uses)
/// Player 0 must rely on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinMaxSemiring {
    levels: Vec<String>,
}

impl MinMaxSemiring {
    /// Builds the semiring from levels listed in ascending order.
    /// Returns `None` for fewer than two distinct levels.
    pub fn new(levels: Vec<String>) -> Option<Self> {
        let distinct = levels
            .iter()
            .collect::<std::collections::HashSet<_>>()
            .len();
        (levels.len() >= 2 && distinct == levels.len()).then_some(MinMaxSemiring { levels })
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }

    pub fn level_named(&self, name: &str) -> Option<MinMaxLevel> {
        self.levels
            .iter()
            .position(|l| l == name)
            .map(|i| MinMaxLevel(i as u32))
    }

    /// The level at `index`, counted from the least element.
    pub fn level_at(&self, index: usize) -> Option<MinMaxLevel> {
        (index < self.levels.len()).then(|| MinMaxLevel(index as u32))
    }

    pub fn name_of(&self, level: MinMaxLevel) -> &str {
        &self.levels[level.0 as usize]
    }
}

impl Semiring for MinMaxSemiring {
    type Value = MinMaxLevel;

    fn zero(&self) -> MinMaxLevel {
        MinMaxLevel(0)
    }
    fn one(&self) -> MinMaxLevel {
        MinMaxLevel(self.levels.len() as u32 - 1)
    }
    fn add(&self, a: &MinMaxLevel, b: &MinMaxLevel) -> MinMaxLevel {
        std::cmp::max(*a, *b)
    }
    fn mul(&self, a: &MinMaxLevel, b: &MinMaxLevel) -> MinMaxLevel {
        std::cmp::min(*a, *b)
    }
    fn inf_power(&self, a: &MinMaxLevel) -> MinMaxLevel {
        // min is idempotent, so the power chain is constant
        *a
    }
}

/// One axiom violation found by [`check_laws`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    /// Name of the violated law, e.g. `"absorption"`.
    pub law: &'static str,
    /// Debug renderings of the operands exhibiting the violation.
    pub operands: Vec<String>,
}

impl std::fmt::Display for LawViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} violated at [{}]", self.law, self.operands.join(", "))
    }
}

/// Checks the absorptive-semiring axioms and the `∞`-power laws on all
/// ordered triples (for the three-operand laws) and pairs of `samples`.
///
/// Returns one violation record per (law, witness) pair found, so a correct
/// implementation yields an empty report. This is a testing aid: it can only
/// ever certify the sampled values.
pub fn check_laws<S: Semiring>(ctx: &S, samples: &[S::Value]) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let zero = ctx.zero();
    let one = ctx.one();
    let mut report = |law, ops: &[&S::Value]| {
        out.push(LawViolation {
            law,
            operands: ops.iter().map(|v| format!("{v:?}")).collect(),
        });
    };

    for a in samples {
        if ctx.add(a, &zero) != *a {
            report("additive identity", &[a]);
        }
        if ctx.mul(a, &one) != *a {
            report("multiplicative identity", &[a]);
        }
        if !ctx.is_zero(&ctx.mul(a, &zero)) {
            report("annihilation", &[a]);
        }
        if ctx.add(a, a) != *a {
            report("additive idempotence", &[a]);
        }
        if !ctx.natural_le(&zero, a) {
            report("zero is least", &[a]);
        }
        if !ctx.natural_le(a, &one) {
            report("one is greatest", &[a]);
        }
        // ∞-power: a·a^∞ = a^∞
        let inf = ctx.inf_power(a);
        if ctx.mul(a, &inf) != inf {
            report("inf-power absorption", &[a]);
        }
    }

    for a in samples {
        for b in samples {
            if ctx.add(a, b) != ctx.add(b, a) {
                report("additive commutativity", &[a, b]);
            }
            if ctx.mul(a, b) != ctx.mul(b, a) {
                report("multiplicative commutativity", &[a, b]);
            }
            if ctx.add(a, &ctx.mul(a, b)) != *a {
                report("absorption", &[a, b]);
            }
            if !ctx.natural_le(&ctx.mul(a, b), a) {
                report("multiplication decreasing", &[a, b]);
            }
            if ctx.inf_power(&ctx.mul(a, b)) != ctx.mul(&ctx.inf_power(a), &ctx.inf_power(b)) {
                report("inf-power of product", &[a, b]);
            }
            if ctx.inf_power(&ctx.add(a, b)) != ctx.add(&ctx.inf_power(a), &ctx.inf_power(b)) {
                report("inf-power of sum", &[a, b]);
            }
        }
    }

    for a in samples {
        for b in samples {
            for c in samples {
                if ctx.add(&ctx.add(a, b), c) != ctx.add(a, &ctx.add(b, c)) {
                    report("additive associativity", &[a, b, c]);
                }
                if ctx.mul(&ctx.mul(a, b), c) != ctx.mul(a, &ctx.mul(b, c)) {
                    report("multiplicative associativity", &[a, b, c]);
                }
                if ctx.mul(a, &ctx.add(b, c)) != ctx.add(&ctx.mul(a, b), &ctx.mul(a, c)) {
                    report("distributivity", &[a, b, c]);
                }
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn boolean_laws_hold_exhaustively() {
        assert!(check_laws(&BooleanSemiring, &[false, true]).is_empty());
    }

    #[test]
    fn tropical_laws_hold_on_samples() {
        let samples = vec![
            TropicalCost::Infinite,
            TropicalCost::Finite(BigRational::zero()),
            TropicalCost::Finite(BigRational::one()),
            TropicalCost::Finite(rat(5, 2)),
            TropicalCost::from_integer(7),
        ];
        assert!(check_laws(&TropicalSemiring, &samples).is_empty());
    }

    #[test]
    fn viterbi_laws_hold_on_samples() {
        // Powers of two multiply exactly in f64, so the sampled laws hold
        // without tolerance.
        let samples: Vec<ViterbiScore> = [0.0, 0.25, 0.5, 1.0].map(OrderedFloat).to_vec();
        assert!(check_laws(&ViterbiSemiring, &samples).is_empty());
    }

    #[test]
    fn minmax_laws_hold_exhaustively() {
        let ctx = MinMaxSemiring::new(vec!["low".into(), "mid".into(), "high".into()]).unwrap();
        let samples: Vec<_> = (0..3).map(MinMaxLevel).collect();
        assert!(check_laws(&ctx, &samples).is_empty());
    }

    #[test]
    fn tropical_inf_power_closed_form() {
        let ctx = TropicalSemiring;
        assert_eq!(ctx.inf_power(&ctx.one()), ctx.one());
        assert_eq!(
            ctx.inf_power(&TropicalCost::from_integer(3)),
            TropicalCost::Infinite
        );
        assert_eq!(ctx.inf_power(&TropicalCost::Infinite), TropicalCost::Infinite);
    }

    #[test]
    fn viterbi_inf_power_closed_form() {
        let ctx = ViterbiSemiring;
        assert_eq!(ctx.inf_power(&OrderedFloat(1.0)), OrderedFloat(1.0));
        assert_eq!(ctx.inf_power(&OrderedFloat(0.999)), OrderedFloat(0.0));
    }

    #[test]
    fn tropical_natural_order_reverses_numeric_order() {
        let ctx = TropicalSemiring;
        let two = TropicalCost::from_integer(2);
        let five = TropicalCost::from_integer(5);
        assert!(ctx.natural_le(&five, &two));
        assert!(!ctx.natural_le(&two, &five));
        assert!(ctx.natural_le(&TropicalCost::Infinite, &five));
    }

    #[test]
    fn tropical_rejects_negative_costs() {
        assert!(TropicalCost::from_f64(-1.0).is_none());
        assert!(TropicalCost::from_f64(f64::INFINITY).is_none());
        assert_eq!(
            TropicalCost::from_f64(2.5),
            Some(TropicalCost::Finite(rat(5, 2)))
        );
    }

    #[test]
    fn tropical_display_is_exact() {
        assert_eq!(TropicalCost::from_integer(2).to_string(), "2");
        assert_eq!(TropicalCost::Finite(rat(5, 2)).to_string(), "5/2");
        assert_eq!(TropicalCost::Infinite.to_string(), "inf");
    }

    #[test]
    fn minmax_requires_two_distinct_levels() {
        assert!(MinMaxSemiring::new(vec!["a".into()]).is_none());
        assert!(MinMaxSemiring::new(vec!["a".into(), "a".into()]).is_none());
        assert!(MinMaxSemiring::new(vec!["a".into(), "b".into()]).is_some());
    }

    /// A deliberately mangled tropical variant: addition is numeric sum,
    /// multiplication numeric max. Absorption fails, e.g. 2 + 2·1 = 4 ≠ 2.
    #[derive(Clone, Copy, Debug)]
    struct MangledTropical;

    impl Semiring for MangledTropical {
        type Value = u64;
        fn zero(&self) -> u64 {
            0
        }
        fn one(&self) -> u64 {
            0
        }
        fn add(&self, a: &u64, b: &u64) -> u64 {
            a + b
        }
        fn mul(&self, a: &u64, b: &u64) -> u64 {
            *a.max(b)
        }
        fn inf_power(&self, a: &u64) -> u64 {
            *a
        }
    }

    #[test]
    fn broken_semiring_is_reported() {
        let report = check_laws(&MangledTropical, &[0, 1, 2]);
        assert!(
            report.iter().any(|v| v.law == "absorption"),
            "expected an absorption violation, got {report:?}"
        );
    }
}
