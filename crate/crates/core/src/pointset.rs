//! Finite-set algebra over a [`GroupCtx`]: difference and distance sets,
//! the spectre, the center of distances, net-set and non-sliding
//! predicates, the two density constructions and Minkowski sums.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{Point, Rat};
use crate::group::{DistValue, GroupCtx};

/// Candidate lists at least this long are checked in parallel.
const PAR_THRESHOLD: usize = 512;

/// A canonical finite subset of a group: strictly increasing in
/// lexicographic order, every element conforming to `ctx`, nonempty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    ctx: GroupCtx,
    elems: Vec<Point>,
}

impl FiniteSet {
    /// Validates, sorts and deduplicates `points`.
    pub fn new(ctx: GroupCtx, points: Vec<Point>) -> Result<FiniteSet> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in &points {
            ctx.check(p)?;
        }
        Ok(FiniteSet::canonical(ctx, points))
    }

    /// Sorts and deduplicates points that are already known to conform.
    pub(crate) fn canonical(ctx: GroupCtx, mut points: Vec<Point>) -> FiniteSet {
        points.sort_unstable();
        points.dedup();
        FiniteSet { ctx, elems: points }
    }

    pub fn singleton(ctx: GroupCtx, p: Point) -> Result<FiniteSet> {
        FiniteSet::new(ctx, vec![p])
    }

    /// A subset of `Q` with the usual metric.
    pub fn scalars(values: impl IntoIterator<Item = Rat>) -> Result<FiniteSet> {
        FiniteSet::new(GroupCtx::rational(1), values.into_iter().map(Point::scalar).collect())
    }

    /// A subset of a cyclic group `Z_m` given by residues.
    pub fn residues(m: u64, values: &[i64]) -> Result<FiniteSet> {
        FiniteSet::new(GroupCtx::cyclic(m), values.iter().map(|&v| Point::ints(&[v])).collect())
    }

    pub fn ctx(&self) -> &GroupCtx {
        &self.ctx
    }

    pub fn elements(&self) -> &[Point] {
        &self.elems
    }

    pub fn into_elements(self) -> Vec<Point> {
        self.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.elems.iter()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.elems.binary_search(p).is_ok()
    }

    /// Lexicographic minimum.
    pub fn min(&self) -> &Point {
        &self.elems[0]
    }

    /// Lexicographic maximum.
    pub fn max(&self) -> &Point {
        &self.elems[self.elems.len() - 1]
    }

    /// Scalar values of a one-dimensional set.
    pub fn scalar_values(&self) -> Result<Vec<Rat>> {
        if self.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: self.dim() });
        }
        Ok(self.elems.iter().map(|p| p.coord(0).clone()).collect())
    }

    pub fn same_ctx(&self, other: &FiniteSet) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn translate(&self, t: &Point) -> Result<FiniteSet> {
        self.ctx.check(t)?;
        let moved = self.elems.iter().map(|p| self.ctx.add_unchecked(p, t)).collect();
        Ok(FiniteSet::canonical(self.ctx.clone(), moved))
    }

    /// `-A`.
    pub fn negated(&self) -> FiniteSet {
        let pts = self.elems.iter().map(|p| self.ctx.neg_unchecked(p)).collect();
        FiniteSet::canonical(self.ctx.clone(), pts)
    }

    pub fn union(&self, other: &FiniteSet) -> Result<FiniteSet> {
        self.same_ctx(other)?;
        let mut pts = self.elems.clone();
        pts.extend(other.elems.iter().cloned());
        Ok(FiniteSet::canonical(self.ctx.clone(), pts))
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.ctx == other.ctx && self.elems.iter().all(|p| other.contains(p))
    }

    /// True when the set is `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].is_zero()
    }

    pub fn filter(&self, keep: impl Fn(&Point) -> bool) -> Option<FiniteSet> {
        let pts: Vec<Point> = self.elems.iter().filter(|p| keep(p)).cloned().collect();
        (!pts.is_empty()).then(|| FiniteSet { ctx: self.ctx.clone(), elems: pts })
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ctx)
    }
}

impl Serialize for FiniteSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}

/// `A - A`.
pub fn difference_set(a: &FiniteSet) -> FiniteSet {
    let ctx = a.ctx();
    let mut pts = Vec::with_capacity(a.len() * a.len());
    for x in a.iter() {
        for y in a.iter() {
            pts.push(ctx.sub_unchecked(x, y));
        }
    }
    FiniteSet::canonical(ctx.clone(), pts)
}

fn sort_dists(mut d: Vec<DistValue>) -> Vec<DistValue> {
    d.sort_by(|a, b| a.cmp_same(b));
    d.dedup();
    d
}

/// `D_x(A)` when `x` is given, otherwise `D(A)`; sorted and deduplicated.
pub fn distance_set(a: &FiniteSet, x: Option<&Point>) -> Result<Vec<DistValue>> {
    let ctx = a.ctx();
    let d = match x {
        Some(x) => {
            ctx.check(x)?;
            a.iter().map(|y| ctx.dist_unchecked(x, y)).collect()
        }
        None => a
            .iter()
            .flat_map(|x| a.iter().map(move |y| ctx.dist_unchecked(x, y)))
            .collect(),
    };
    Ok(sort_dists(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SpectreMode {
    /// Candidates `(A - a) ∪ (a - A)` for `a = min A`.
    #[default]
    Fast,
    /// Whole group for finite groups, `±(A - A)` otherwise.
    Oracle,
}

/// Checks `z ∈ S(A)` straight from the definition.
pub fn in_spectre(a: &FiniteSet, z: &Point) -> bool {
    let ctx = a.ctx();
    a.iter().all(|x| a.contains(&ctx.add_unchecked(x, z)) || a.contains(&ctx.sub_unchecked(x, z)))
}

/// The spectre `S(A) = {z : ∀x∈A, x+z ∈ A ∨ x−z ∈ A}`.
pub fn spectre(a: &FiniteSet, mode: SpectreMode) -> FiniteSet {
    let ctx = a.ctx();
    let candidates: Vec<Point> = match mode {
        SpectreMode::Fast => {
            let base = a.min();
            let mut c = Vec::with_capacity(2 * a.len());
            for x in a.iter() {
                let d = ctx.sub_unchecked(x, base);
                c.push(ctx.neg_unchecked(&d));
                c.push(d);
            }
            c
        }
        SpectreMode::Oracle => match ctx {
            GroupCtx::FiniteAbelian { .. } => ctx.elements().expect("finite group"),
            GroupCtx::RationalSpace { .. } => {
                let diff = difference_set(a);
                let neg = diff.negated();
                let mut c = diff.into_elements();
                c.extend(neg.into_elements());
                c
            }
        },
    };
    let candidates = FiniteSet::canonical(ctx.clone(), candidates).into_elements();
    let members: Vec<Point> = if candidates.len() >= PAR_THRESHOLD {
        candidates.into_par_iter().filter(|z| in_spectre(a, z)).collect()
    } else {
        candidates.into_iter().filter(|z| in_spectre(a, z)).collect()
    };
    FiniteSet::canonical(ctx.clone(), members)
}

/// Checks `α ∈ C(A)`: every `x ∈ A` has some `y ∈ A` with `d(x, y) = α`.
pub fn center_contains(a: &FiniteSet, alpha: &DistValue) -> bool {
    let ctx = a.ctx();
    if let GroupCtx::RationalSpace { dim: 1, .. } = ctx {
        // On the line every metric here is a function of |x - y|, so the
        // partner can only be x ± |x - y|.
        let step = match alpha.squared {
            false => Point::scalar(alpha.value.clone()),
            true => match exact_sqrt(&alpha.value) {
                Some(r) => Point::scalar(r),
                None => return false,
            },
        };
        return in_spectre(a, &step);
    }
    a.iter().all(|x| a.iter().any(|y| ctx.dist_unchecked(x, y) == *alpha))
}

fn exact_sqrt(v: &Rat) -> Option<Rat> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    (&n * &n == *v.numer() && &d * &d == *v.denom()).then(|| Rat::new(n, d).expect("nonzero"))
}

/// The center of distances `C(A) = ⋂_{x∈A} D_x(A)`.
pub fn center_of_distances(a: &FiniteSet) -> Vec<DistValue> {
    let first = distance_set(a, Some(a.min())).expect("element of A conforms");
    first.into_iter().filter(|alpha| center_contains(a, alpha)).collect()
}

/// The value two distinct pairs share in a failed net-set or non-sliding test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum SharedValue {
    Difference(Point),
    Distance(DistValue),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub pair_a: (Point, Point),
    pub pair_b: (Point, Point),
    pub shared_value: SharedValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetVerdict {
    pub holds: bool,
    pub witness: Option<PairWitness>,
}

impl SetVerdict {
    fn yes() -> SetVerdict {
        SetVerdict { holds: true, witness: None }
    }

    fn no(witness: Option<PairWitness>) -> SetVerdict {
        SetVerdict { holds: false, witness }
    }
}

/// Net-set test: at least three points and distinct two-element subsets
/// `{z,t}`, `{u,v}` never share a difference up to sign. The subsets may
/// overlap.
pub fn is_net_set(a: &FiniteSet) -> SetVerdict {
    if a.len() < 3 {
        return SetVerdict::no(None);
    }
    let ctx = a.ctx();
    let mut seen: HashMap<Point, (usize, usize)> = HashMap::new();
    let pts = a.elements();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = ctx.sub_unchecked(&pts[j], &pts[i]);
            let nd = ctx.neg_unchecked(&d);
            let key = if d <= nd { d } else { nd };
            if let Some(&(k, l)) = seen.get(&key) {
                return SetVerdict::no(Some(PairWitness {
                    pair_a: (pts[k].clone(), pts[l].clone()),
                    pair_b: (pts[i].clone(), pts[j].clone()),
                    shared_value: SharedValue::Difference(key),
                }));
            }
            seen.insert(key, (i, j));
        }
    }
    SetVerdict::yes()
}

/// Non-sliding test in distance form: every positive distance between
/// points of `A` is realized by exactly one unordered pair.
pub fn is_non_sliding(a: &FiniteSet) -> SetVerdict {
    let ctx = a.ctx();
    let pts = a.elements();
    let mut seen: HashMap<DistValue, (usize, usize)> = HashMap::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = ctx.dist_unchecked(&pts[i], &pts[j]);
            if let Some(&(k, l)) = seen.get(&d) {
                return SetVerdict::no(Some(PairWitness {
                    pair_a: (pts[k].clone(), pts[l].clone()),
                    pair_b: (pts[i].clone(), pts[j].clone()),
                    shared_value: SharedValue::Distance(d),
                }));
            }
            seen.insert(d, (i, j));
        }
    }
    SetVerdict::yes()
}

/// Deepest dyadic level the perturbation search visits before giving up.
const MAX_PERTURBATION_LEVEL: u32 = 256;

/// Perturbations `ε/2^j · e_i + ε/2^k · e_m` with `j, k >= 2`, dovetailed by
/// `j + k`, then `j`, then `(i, m)`. All have norm below `ε` in every metric
/// offered for `Q^d`.
fn perturbations(dim: usize, eps: &Rat) -> impl Iterator<Item = Point> + '_ {
    (4..=MAX_PERTURBATION_LEVEL).flat_map(move |s| {
        (2..=s - 2).flat_map(move |j| {
            let k = s - j;
            (0..dim).flat_map(move |i| {
                (0..dim).map(move |m| {
                    let mut c = vec![Rat::zero(); dim];
                    c[i] += &(eps * &Rat::pow2(-(j as i32)));
                    c[m] += &(eps * &Rat::pow2(-(k as i32)));
                    Point::new(c)
                })
            })
        })
    })
}

fn net_set_of(ctx: &GroupCtx, pts: &[Point]) -> bool {
    let set = FiniteSet::canonical(ctx.clone(), pts.to_vec());
    set.len() == pts.len() && is_net_set(&set).holds
}

/// Builds a net-set within Hausdorff distance `ε` of `B`.
///
/// Singletons become `{b, b+x, b+y}`, pairs become `{b1, b2, b1+x}`, and
/// larger sets are walked greedily in canonical order, keeping each point
/// when the prefix stays a net-set and otherwise replacing it by the first
/// perturbation that does. Deterministic.
pub fn densify_to_netset(b: &FiniteSet, eps: &Rat) -> Result<FiniteSet> {
    let ctx = b.ctx();
    if ctx.is_finite() {
        return Err(Error::Unsupported(
            "densification needs infinite balls; finite groups may admit no perturbation".into(),
        ));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    let dim = ctx.dim();
    let pts = b.elements();
    let exhausted = || Error::Unsupported("perturbation search exhausted".into());
    let two = Rat::int(2);

    let out = match pts.len() {
        1 => {
            let b1 = &pts[0];
            let mut cands = perturbations(dim, eps);
            let x = cands.next().ok_or_else(exhausted)?;
            let forbidden_y = [x.clone(), x.scaled(&two), x.negated(), x.scaled(&-&two)];
            let y = cands
                .find(|y| {
                    !forbidden_y.contains(y)
                        && x != y.scaled(&two)
                        && x != y.scaled(&-&two)
                        && net_set_of(ctx, &[b1.clone(), b1.plus(&x), b1.plus(y)])
                })
                .ok_or_else(exhausted)?;
            vec![b1.clone(), b1.plus(&x), b1.plus(&y)]
        }
        2 => {
            let (b1, b2) = (&pts[0], &pts[1]);
            let gap = b2.minus(b1);
            let x = perturbations(dim, eps)
                .find(|x| {
                    *x != gap
                        && *x != gap.negated()
                        && b1.plus(&x.scaled(&two)) != *b2
                        && b1.minus(&x.scaled(&two)) != *b2
                        && net_set_of(ctx, &[b1.clone(), b2.clone(), b1.plus(x)])
                })
                .ok_or_else(exhausted)?;
            vec![b1.clone(), b2.clone(), b1.plus(&x)]
        }
        _ => {
            let mut acc: Vec<Point> = pts[..2].to_vec();
            for bk in &pts[2..] {
                let mut trial = acc.clone();
                trial.push(bk.clone());
                if net_set_of(ctx, &trial) {
                    acc = trial;
                    continue;
                }
                let moved = perturbations(dim, eps)
                    .map(|x| bk.plus(&x))
                    .find(|p| {
                        let mut t = acc.clone();
                        t.push(p.clone());
                        net_set_of(ctx, &t)
                    })
                    .ok_or_else(exhausted)?;
                acc.push(moved);
            }
            acc
        }
    };
    FiniteSet::new(ctx.clone(), out)
}

/// `B ∪ (B + x)`, whose spectre contains `{0, x}`.
pub fn spectre_inflate(b: &FiniteSet, x: &Point) -> Result<FiniteSet> {
    b.ctx().check(x)?;
    if x.is_zero() {
        return Err(Error::InvalidArgument("x = 0 leaves B unchanged".into()));
    }
    b.union(&b.translate(x)?)
}

/// `A + B = {a + b}`.
pub fn minkowski_sum(a: &FiniteSet, b: &FiniteSet) -> Result<FiniteSet> {
    a.same_ctx(b)?;
    let ctx = a.ctx();
    let mut pts = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        for y in b.iter() {
            pts.push(ctx.add_unchecked(x, y));
        }
    }
    Ok(FiniteSet::canonical(ctx.clone(), pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Metric;
    use proptest::prelude::*;

    fn s(vals: &[(i64, i64)]) -> FiniteSet {
        FiniteSet::scalars(vals.iter().map(|&(n, d)| Rat::frac(n, d))).unwrap()
    }

    fn ints(vals: &[i64]) -> FiniteSet {
        FiniteSet::scalars(vals.iter().map(|&v| Rat::int(v))).unwrap()
    }

    fn plane(pts: &[&[i64]]) -> FiniteSet {
        FiniteSet::new(GroupCtx::rational(2), pts.iter().map(|p| Point::ints(p)).collect()).unwrap()
    }

    fn plain(vals: &[(i64, i64)]) -> Vec<DistValue> {
        vals.iter().map(|&(n, d)| DistValue::plain(Rat::frac(n, d))).collect()
    }

    #[test]
    fn construction_is_canonical() {
        let a = ints(&[3, 1, 2, 1]);
        assert_eq!(a.elements(), ints(&[1, 2, 3]).elements());
        assert_eq!(FiniteSet::scalars(Vec::<Rat>::new()).unwrap_err(), Error::EmptySet);
        assert!(FiniteSet::residues(6, &[6]).is_err());
    }

    #[test]
    fn difference_set_examples() {
        assert_eq!(difference_set(&ints(&[0, 1])), ints(&[-1, 0, 1]));
        assert_eq!(difference_set(&ints(&[0, 1, 3])), ints(&[-3, -2, -1, 0, 1, 2, 3]));
        let d = difference_set(&plane(&[&[0, 0], &[1, 0], &[0, 1]]));
        let expected =
            plane(&[&[0, 0], &[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, -1], &[-1, 1]]);
        assert_eq!(d, expected);
    }

    #[test]
    fn distance_set_examples() {
        let a = s(&[(0, 1), (1, 2), (1, 1)]);
        let x = Point::scalar(Rat::frac(1, 2));
        assert_eq!(distance_set(&a, Some(&x)).unwrap(), plain(&[(0, 1), (1, 2)]));
        let aq = s(&[(0, 1), (1, 9), (1, 3), (1, 1)]);
        let d = distance_set(&aq, None).unwrap();
        assert_eq!(d.len(), 7);
        assert!(d[0].is_zero());
        assert_eq!(distance_set(&ints(&[5]), None).unwrap(), plain(&[(0, 1)]));
        let bad = Point::ints(&[1, 2]);
        assert!(distance_set(&a, Some(&bad)).is_err());
    }

    #[test]
    fn spectre_examples() {
        for mode in [SpectreMode::Fast, SpectreMode::Oracle] {
            assert_eq!(spectre(&ints(&[-1, 0, 1]), mode), ints(&[-1, 0, 1]));
            let z = FiniteSet::residues(6, &[0, 2, 4]).unwrap();
            assert_eq!(spectre(&z, mode), z);
            assert!(spectre(&s(&[(0, 1), (1, 1), (21, 10)]), mode).is_trivial());
            assert!(spectre(&ints(&[0]), mode).is_trivial());
        }
    }

    #[test]
    fn spectre_matches_brute_force_over_a_grid() {
        // Scan every z = k/10 in [-3, 3]; outside that window x+z and x-z
        // both leave the hull of A.
        let a = s(&[(0, 1), (1, 1), (21, 10)]);
        let brute: Vec<Rat> = (-30..=30)
            .map(|k| Rat::frac(k, 10))
            .filter(|z| in_spectre(&a, &Point::scalar(z.clone())))
            .collect();
        assert_eq!(brute, vec![Rat::zero()]);
    }

    #[test]
    fn center_examples() {
        assert_eq!(center_of_distances(&s(&[(0, 1), (1, 2), (1, 1)])), plain(&[(0, 1), (1, 2)]));
        assert_eq!(center_of_distances(&ints(&[4])), plain(&[(0, 1)]));
        let grid = FiniteSet::scalars((0..8).map(|k| Rat::frac(k, 8))).unwrap();
        assert_eq!(
            center_of_distances(&grid),
            plain(&[(0, 1), (1, 8), (2, 8), (3, 8), (4, 8)])
        );
    }

    #[test]
    fn center_matches_brute_force() {
        let sets = [
            s(&[(0, 1), (1, 2), (1, 1)]),
            FiniteSet::scalars((0..8).map(|k| Rat::frac(k, 8))).unwrap(),
            ints(&[0, 1, 3, 4]),
            ints(&[0, 2, 3, 7, 9]),
        ];
        for a in sets {
            let brute: Vec<DistValue> = distance_set(&a, None)
                .unwrap()
                .into_iter()
                .filter(|alpha| {
                    a.iter().all(|x| distance_set(&a, Some(x)).unwrap().contains(alpha))
                })
                .collect();
            assert_eq!(center_of_distances(&a), brute, "{a}");
        }
    }

    #[test]
    fn center_in_the_plane_and_squared() {
        let ctx = GroupCtx::rational_with(2, Metric::EuclideanSquared);
        let sq = FiniteSet::new(
            ctx,
            vec![Point::ints(&[0, 0]), Point::ints(&[1, 0]), Point::ints(&[0, 1]), Point::ints(&[1, 1])],
        )
        .unwrap();
        let c = center_of_distances(&sq);
        let vals: Vec<Rat> = c.iter().map(|d| d.value.clone()).collect();
        assert_eq!(vals, vec![Rat::zero(), Rat::one(), Rat::int(2)]);
        assert!(c.iter().all(|d| d.squared));
        let line = FiniteSet::new(
            GroupCtx::rational_with(1, Metric::EuclideanSquared),
            vec![Point::ints(&[0]), Point::ints(&[2]), Point::ints(&[4])],
        )
        .unwrap();
        let vals: Vec<Rat> = center_of_distances(&line).into_iter().map(|d| d.value).collect();
        assert_eq!(vals, vec![Rat::zero(), Rat::int(4)]);
    }

    #[test]
    fn net_set_examples() {
        assert!(is_net_set(&plane(&[&[0, 0], &[1, 0], &[0, 1]])).holds);
        let v = is_net_set(&ints(&[0, 1, 2]));
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.pair_a, (Point::ints(&[0]), Point::ints(&[1])));
        assert_eq!(w.pair_b, (Point::ints(&[1]), Point::ints(&[2])));
        assert_eq!(w.shared_value, SharedValue::Difference(Point::ints(&[-1])));
        assert!(is_net_set(&ints(&[0, 1, 3])).holds);
        assert!(!is_net_set(&ints(&[0, 1])).holds);
    }

    #[test]
    fn non_sliding_examples() {
        assert!(is_non_sliding(&s(&[(0, 1), (1, 3), (1, 9), (1, 1)])).holds);
        assert!(!is_non_sliding(&ints(&[0, 1, 2])).holds);
        let v = is_non_sliding(&plane(&[&[0, 0], &[1, 0], &[0, 1]]));
        assert!(!v.holds);
        assert!(matches!(v.witness.unwrap().shared_value, SharedValue::Distance(_)));
        assert!(is_non_sliding(&ints(&[0, 5])).holds);
    }

    #[test]
    fn densify_keeps_net_sets() {
        let b = ints(&[0, 1, 3]);
        assert_eq!(densify_to_netset(&b, &Rat::frac(1, 8)).unwrap(), b);
    }

    #[test]
    fn densify_singleton_and_pair() {
        let eps = Rat::frac(1, 8);
        for b in [ints(&[0]), plane(&[&[2, 3]]), ints(&[0, 1]), plane(&[&[0, 0], &[1, 1]])] {
            let a = densify_to_netset(&b, &eps).unwrap();
            assert_eq!(a.len(), 3);
            assert!(is_net_set(&a).holds, "{a}");
            assert!(crate::hyper::hausdorff(&a, &b).unwrap().lt_radius(&eps));
        }
    }

    #[test]
    fn densify_three_collinear_points() {
        let b = ints(&[0, 1, 2]);
        let eps = Rat::frac(1, 8);
        let a = densify_to_netset(&b, &eps).unwrap();
        assert_eq!(a.len(), 3);
        assert!(is_net_set(&a).holds);
        assert!(crate::hyper::hausdorff(&a, &b).unwrap().lt_radius(&eps));
        assert!(spectre(&a, SpectreMode::Fast).is_trivial());
    }

    #[test]
    fn densify_rejects_bad_input() {
        let z = FiniteSet::residues(7, &[0, 1, 2]).unwrap();
        assert!(matches!(densify_to_netset(&z, &Rat::one()), Err(Error::Unsupported(_))));
        assert!(matches!(densify_to_netset(&ints(&[0]), &Rat::zero()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn inflate_examples() {
        let b = s(&[(0, 1), (1, 2)]);
        let x = Point::scalar(Rat::frac(1, 16));
        let a = spectre_inflate(&b, &x).unwrap();
        assert_eq!(a, s(&[(0, 1), (1, 16), (1, 2), (9, 16)]));
        let sa = spectre(&a, SpectreMode::Fast);
        assert!(s(&[(-1, 16), (0, 1), (1, 16)]).is_subset(&sa));

        let a = spectre_inflate(&ints(&[0]), &Point::ints(&[1])).unwrap();
        assert_eq!(a, ints(&[0, 1]));
        assert_eq!(spectre(&a, SpectreMode::Oracle), ints(&[-1, 0, 1]));

        let z = FiniteSet::residues(6, &[0, 3]).unwrap();
        assert_eq!(spectre_inflate(&z, &Point::ints(&[3])).unwrap(), z);
        assert!(spectre_inflate(&b, &Point::scalar(Rat::zero())).is_err());
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(minkowski_sum(&ints(&[0, 1]), &ints(&[0, 2])).unwrap(), ints(&[0, 1, 2, 3]));
        let a = s(&[(1, 3), (2, 7)]);
        assert_eq!(minkowski_sum(&a, &ints(&[0])).unwrap(), a);
        let z = FiniteSet::residues(6, &[0]).unwrap();
        assert_eq!(minkowski_sum(&a, &z).unwrap_err(), Error::ContextMismatch);
    }

    fn arb_set(dim: usize) -> impl Strategy<Value = FiniteSet> {
        prop::collection::vec(prop::collection::vec((-12i64..=12, 1i64..=6), dim), 1..=7).prop_map(
            move |pts| {
                let pts = pts
                    .into_iter()
                    .map(|c| Point::new(c.into_iter().map(|(n, d)| Rat::frac(n, d)).collect()))
                    .collect();
                FiniteSet::new(GroupCtx::rational(dim), pts).unwrap()
            },
        )
    }

    fn arb_point(dim: usize) -> impl Strategy<Value = Point> {
        prop::collection::vec((-12i64..=12, 1i64..=6), dim)
            .prop_map(|c| Point::new(c.into_iter().map(|(n, d)| Rat::frac(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn remark_one_properties(a in arb_set(2), t in arb_point(2)) {
            let sa = spectre(&a, SpectreMode::Fast);
            prop_assert!(sa.contains(&Point::zero(2)));
            prop_assert_eq!(sa.negated(), sa.clone());
            prop_assert_eq!(spectre(&a.translate(&t).unwrap(), SpectreMode::Fast), sa.clone());
            prop_assert_eq!(spectre(&a, SpectreMode::Oracle), sa);
        }

        #[test]
        fn spectre_inside_symmetrized_set_when_zero_in_a(a in arb_set(1)) {
            let a = a.union(&ints(&[0])).unwrap();
            let sa = spectre(&a, SpectreMode::Oracle);
            prop_assert!(sa.is_subset(&a.union(&a.negated()).unwrap()));
        }

        #[test]
        fn spectre_bounded_by_twice_the_radius(a in arb_set(2), x in arb_point(2)) {
            // r = max_a d(x, a) + 1 gives A ⊆ B(x, r) with strict inequality.
            let ctx = a.ctx().clone();
            let r = a.iter().map(|p| ctx.dist(&x, p).unwrap().value).max().unwrap() + Rat::one();
            let bound = Rat::int(2) * r;
            for z in spectre(&a, SpectreMode::Fast).iter() {
                prop_assert!(ctx.norm(z).unwrap().lt_radius(&bound));
            }
        }

        #[test]
        fn union_bound(sets in prop::collection::vec(arb_set(1), 1..=4)) {
            let mut union = sets[0].clone();
            let mut inter = spectre(&sets[0], SpectreMode::Fast);
            for a in &sets[1..] {
                union = union.union(a).unwrap();
                let sa = spectre(a, SpectreMode::Fast);
                inter = inter.filter(|p| sa.contains(p)).unwrap();
            }
            prop_assert!(inter.is_subset(&spectre(&union, SpectreMode::Fast)));
        }

        #[test]
        fn net_sets_have_trivial_spectre(a in arb_set(2)) {
            if is_net_set(&a).holds {
                prop_assert!(spectre(&a, SpectreMode::Oracle).is_trivial());
            }
            if a.len() >= 3 && is_non_sliding(&a).holds {
                prop_assert!(is_net_set(&a).holds);
            }
        }

        #[test]
        fn densify_output_is_a_close_net_set(a in arb_set(2), k in 3i32..=6) {
            let eps = Rat::pow2(-k);
            let out = densify_to_netset(&a, &eps).unwrap();
            prop_assert!(is_net_set(&out).holds);
            prop_assert!(crate::hyper::hausdorff(&out, &a).unwrap().lt_radius(&eps));
        }
    }

    #[test]
    fn subgroups_are_fixed_points() {
        for n in 1..=24u64 {
            let n = n.max(2);
            let ctx = GroupCtx::cyclic(n);
            for d in 1..=n {
                if n % d == 0 {
                    let z = ctx.subgroup_generated(&Point::ints(&[(d % n) as i64])).unwrap();
                    assert_eq!(spectre(&z, SpectreMode::Oracle), z);
                }
            }
        }
    }
}
