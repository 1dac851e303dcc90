//! Ambient Abelian metric groups.
//!
//! Two families are supported: `Q^d` with a translation-invariant metric and
//! finite products of cyclic groups `Z_m1 x ... x Z_mk` with the discrete-torus
//! sup metric. Euclidean distances are carried as exact squares.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Point, Rat};
use crate::pointset::FiniteSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    #[default]
    Sup,
    Taxicab,
    EuclideanSquared,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Sup => "sup",
            Metric::Taxicab => "taxicab",
            Metric::EuclideanSquared => "euclidean-squared",
        }
    }

    pub fn parse(s: &str) -> Option<Metric> {
        match s {
            "sup" => Some(Metric::Sup),
            "taxicab" => Some(Metric::Taxicab),
            "euclidean-squared" | "euclidean" => Some(Metric::EuclideanSquared),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupCtx {
    RationalSpace { dim: usize, metric: Metric },
    FiniteAbelian { moduli: Vec<u64> },
}

impl fmt::Display for GroupCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupCtx::RationalSpace { dim, metric } => write!(f, "Q^{dim} ({})", metric.name()),
            GroupCtx::FiniteAbelian { moduli } => {
                let parts: Vec<String> = moduli.iter().map(|m| format!("Z{m}")).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

/// An exact distance. When `squared` is set, `value` is the square of the
/// Euclidean distance; order and equality are unaffected by squaring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DistValue {
    pub value: Rat,
    pub squared: bool,
}

impl DistValue {
    pub fn plain(value: Rat) -> DistValue {
        DistValue { value, squared: false }
    }

    pub fn zero(squared: bool) -> DistValue {
        DistValue { value: Rat::zero(), squared }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Strict `d < r` for a plain radius `r > 0`.
    pub fn lt_radius(&self, r: &Rat) -> bool {
        if self.squared {
            self.value < r * r
        } else {
            &self.value < r
        }
    }

    /// Non-strict `d <= r` for a plain radius `r >= 0`.
    pub fn le_radius(&self, r: &Rat) -> bool {
        if self.squared {
            self.value <= r * r
        } else {
            &self.value <= r
        }
    }

    /// Total order among values sharing the `squared` flag.
    pub fn cmp_same(&self, other: &DistValue) -> Ordering {
        assert_eq!(self.squared, other.squared, "comparing plain and squared distances");
        self.value.cmp(&other.value)
    }

    /// Decides `self <= a + b` on true (unsquared) distances.
    pub fn le_sum(&self, a: &DistValue, b: &DistValue) -> bool {
        assert!(self.squared == a.squared && a.squared == b.squared);
        if self.squared {
            sqrt_sum_ge(&a.value, &b.value, &self.value)
        } else {
            self.value <= &a.value + &b.value
        }
    }
}

impl PartialOrd for DistValue {
    fn partial_cmp(&self, other: &DistValue) -> Option<Ordering> {
        (self.squared == other.squared).then(|| self.value.cmp(&other.value))
    }
}

impl fmt::Display for DistValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.squared {
            write!(f, "sqrt({})", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// `sqrt(a) + sqrt(b) >= sqrt(c)` for nonnegative rationals, decided by
/// squaring twice: it is `a + b + 2 sqrt(ab) >= c`.
pub fn sqrt_sum_ge(a: &Rat, b: &Rat, c: &Rat) -> bool {
    let rest = c - &(a + b);
    if !rest.is_positive() {
        return true;
    }
    Rat::int(4) * a * b >= &rest * &rest
}

impl GroupCtx {
    pub fn rational(dim: usize) -> GroupCtx {
        GroupCtx::RationalSpace { dim, metric: Metric::Sup }
    }

    pub fn rational_with(dim: usize, metric: Metric) -> GroupCtx {
        GroupCtx::RationalSpace { dim, metric }
    }

    pub fn cyclic(m: u64) -> GroupCtx {
        GroupCtx::FiniteAbelian { moduli: vec![m] }
    }

    pub fn finite(moduli: Vec<u64>) -> Result<GroupCtx> {
        if moduli.is_empty() {
            return Err(Error::InvalidArgument("finite group needs at least one modulus".into()));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidArgument(format!("modulus {m} is below 2")));
        }
        Ok(GroupCtx::FiniteAbelian { moduli })
    }

    pub fn dim(&self) -> usize {
        match self {
            GroupCtx::RationalSpace { dim, .. } => *dim,
            GroupCtx::FiniteAbelian { moduli } => moduli.len(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupCtx::FiniteAbelian { .. })
    }

    pub fn squared_distances(&self) -> bool {
        matches!(self, GroupCtx::RationalSpace { metric: Metric::EuclideanSquared, .. })
    }

    /// Group order, or `None` for `Q^d`.
    pub fn order(&self) -> Option<u128> {
        match self {
            GroupCtx::RationalSpace { .. } => None,
            GroupCtx::FiniteAbelian { moduli } => {
                moduli.iter().try_fold(1u128, |acc, &m| acc.checked_mul(m as u128))
            }
        }
    }

    pub fn zero(&self) -> Point {
        Point::zero(self.dim())
    }

    pub fn check(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: p.dim() });
        }
        if let GroupCtx::FiniteAbelian { moduli } = self {
            for (c, &m) in p.coords().iter().zip(moduli) {
                let ok = c.is_integer() && !c.is_negative() && c < &Rat::int(m as i64);
                if !ok {
                    return Err(Error::NotInGroup {
                        point: p.to_string(),
                        reason: format!("coordinate {c} is not a residue modulo {m}"),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_pair(&self, p: &Point, q: &Point) -> Result<()> {
        self.check(p)?;
        self.check(q)
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        self.check_pair(p, q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn neg(&self, p: &Point) -> Result<Point> {
        self.check(p)?;
        Ok(self.neg_unchecked(p))
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Result<Point> {
        self.check_pair(p, q)?;
        Ok(self.sub_unchecked(p, q))
    }

    pub fn dist(&self, p: &Point, q: &Point) -> Result<DistValue> {
        self.check_pair(p, q)?;
        Ok(self.dist_unchecked(p, q))
    }

    /// Norm `d(p, 0)`.
    pub fn norm(&self, p: &Point) -> Result<DistValue> {
        self.dist(p, &self.zero())
    }

    // The unchecked variants assume both points already conform; FiniteSet
    // validates its elements once on construction.

    pub(crate) fn add_unchecked(&self, p: &Point, q: &Point) -> Point {
        match self {
            GroupCtx::RationalSpace { .. } => p.plus(q),
            GroupCtx::FiniteAbelian { moduli } => Point::new(
                p.coords()
                    .iter()
                    .zip(q.coords())
                    .zip(moduli)
                    .map(|((a, b), &m)| {
                        let s = a + b;
                        let m = Rat::int(m as i64);
                        if s >= m {
                            s - m
                        } else {
                            s
                        }
                    })
                    .collect(),
            ),
        }
    }

    pub(crate) fn neg_unchecked(&self, p: &Point) -> Point {
        match self {
            GroupCtx::RationalSpace { .. } => p.negated(),
            GroupCtx::FiniteAbelian { moduli } => Point::new(
                p.coords()
                    .iter()
                    .zip(moduli)
                    .map(|(a, &m)| if a.is_zero() { Rat::zero() } else { Rat::int(m as i64) - a })
                    .collect(),
            ),
        }
    }

    pub(crate) fn sub_unchecked(&self, p: &Point, q: &Point) -> Point {
        match self {
            GroupCtx::RationalSpace { .. } => p.minus(q),
            GroupCtx::FiniteAbelian { .. } => self.add_unchecked(p, &self.neg_unchecked(q)),
        }
    }

    pub(crate) fn dist_unchecked(&self, p: &Point, q: &Point) -> DistValue {
        match self {
            GroupCtx::RationalSpace { metric, .. } => {
                let diffs = p.coords().iter().zip(q.coords()).map(|(a, b)| (a - b).abs());
                match metric {
                    Metric::Sup => DistValue::plain(diffs.max().unwrap_or_else(Rat::zero)),
                    Metric::Taxicab => DistValue::plain(diffs.sum()),
                    Metric::EuclideanSquared => DistValue {
                        value: diffs.map(|d| &d * &d).sum(),
                        squared: true,
                    },
                }
            }
            GroupCtx::FiniteAbelian { moduli } => {
                let circ = p.coords().iter().zip(q.coords()).zip(moduli).map(|((a, b), &m)| {
                    let d = (a - b).abs();
                    let wrap = Rat::int(m as i64) - &d;
                    d.min(wrap)
                });
                DistValue::plain(circ.max().unwrap_or_else(Rat::zero))
            }
        }
    }

    /// All elements of a finite group in lexicographic order.
    pub fn elements(&self) -> Result<Vec<Point>> {
        let GroupCtx::FiniteAbelian { moduli } = self else {
            return Err(Error::Unsupported("Q^d has infinitely many elements".into()));
        };
        let mut out = vec![Vec::new()];
        for &m in moduli {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Rat>| {
                    (0..m).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(Rat::int(c as i64));
                        v
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(Point::new).collect())
    }

    /// The cyclic subgroup `{0, x, 2x, ...}` generated by `x`.
    pub fn subgroup_generated(&self, x: &Point) -> Result<FiniteSet> {
        if !self.is_finite() {
            return Err(Error::Unsupported(
                "generated subgroups of Q^d are infinite unless x = 0".into(),
            ));
        }
        self.check(x)?;
        let zero = self.zero();
        let mut elems = vec![zero.clone()];
        let mut cur = x.clone();
        while cur != zero {
            elems.push(cur.clone());
            cur = self.add_unchecked(&cur, x);
        }
        FiniteSet::new(self.clone(), elems)
    }

    /// Order of `x` in a finite group.
    pub fn element_order(&self, x: &Point) -> Result<usize> {
        Ok(self.subgroup_generated(x)?.len())
    }
}
