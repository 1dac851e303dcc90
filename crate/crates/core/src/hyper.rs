//! Hausdorff-metric machinery on finite sets and the continuity /
//! upper-semicontinuity probes for the spectre operator.
//!
//! Probes sample explicit finite sequences. A report saying
//! "continuous-looking" is an observation about the rows it contains and
//! nothing more.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Point, Rat};
use crate::group::{DistValue, GroupCtx};
use crate::pointset::{difference_set, spectre, FiniteSet, SpectreMode};

fn directed(a: &FiniteSet, b: &FiniteSet) -> DistValue {
    let ctx = a.ctx();
    a.iter()
        .map(|x| {
            b.iter()
                .map(|y| ctx.dist_unchecked(x, y))
                .min_by(|p, q| p.cmp_same(q))
                .expect("nonempty")
        })
        .max_by(|p, q| p.cmp_same(q))
        .expect("nonempty")
}

/// Directed distance `sup_{a∈A} d(a, B)`.
pub fn directed_hausdorff(a: &FiniteSet, b: &FiniteSet) -> Result<DistValue> {
    a.same_ctx(b)?;
    Ok(directed(a, b))
}

/// Pompeiu-Hausdorff distance.
pub fn hausdorff(a: &FiniteSet, b: &FiniteSet) -> Result<DistValue> {
    a.same_ctx(b)?;
    let ab = directed(a, b);
    let ba = directed(b, a);
    Ok(if ab.cmp_same(&ba).is_ge() { ab } else { ba })
}

/// True iff every `b ∈ B` is strictly within `ε` of some `a ∈ A`, i.e.
/// `B ⊆ A_ε`.
pub fn fatten_contains(b: &FiniteSet, a: &FiniteSet, eps: &Rat) -> Result<bool> {
    b.same_ctx(a)?;
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    let ctx = a.ctx();
    Ok(b.iter().all(|y| a.iter().any(|x| ctx.dist_unchecked(x, y).lt_radius(eps))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRow {
    pub index: usize,
    /// `d_H(A, A_n)`
    pub input_distance: DistValue,
    /// `d_H(S(A), S(A_n))`
    pub spectre_distance: DistValue,
    /// `S(A_n) ⊆ S(A)_ε`
    pub usc_ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    ContinuousLooking,
    DiscontinuityWitnessed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    pub epsilon: Rat,
    pub base_spectre: FiniteSet,
    /// Smallest spectre distance on the tail (second half) of the rows.
    pub tail_lower_bound: DistValue,
    pub verdict: ProbeVerdict,
}

impl ProbeReport {
    /// Rows from the middle of the sequence onward.
    pub fn tail(&self) -> &[ProbeRow] {
        &self.rows[self.rows.len() / 2..]
    }

    pub fn usc_holds_on_tail(&self) -> bool {
        self.tail().iter().all(|r| r.usc_ok)
    }

    /// Input distances never increase along the rows.
    pub fn inputs_nonincreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].input_distance.cmp_same(&w[0].input_distance).is_le())
    }
}

/// Compares `A` with each `A_n` of `sequence` and their spectres.
///
/// The verdict is `DiscontinuityWitnessed` when the input distances never
/// increase, the tail lower bound of the spectre distances is positive, and
/// the final input distance has dropped strictly below that bound.
pub fn probe_spectre_continuity(
    a: &FiniteSet,
    sequence: &[FiniteSet],
    eps: &Rat,
) -> Result<ProbeReport> {
    if sequence.is_empty() {
        return Err(Error::InvalidArgument("probe sequence is empty".into()));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    for s in sequence {
        a.same_ctx(s)?;
    }
    let sa = spectre(a, SpectreMode::Fast);
    let rows: Vec<ProbeRow> = sequence
        .par_iter()
        .enumerate()
        .map(|(i, an)| {
            let sn = spectre(an, SpectreMode::Fast);
            ProbeRow {
                index: i + 1,
                input_distance: directed(a, an).max_same(directed(an, a)),
                spectre_distance: directed(&sa, &sn).max_same(directed(&sn, &sa)),
                usc_ok: fatten_contains(&sn, &sa, eps).expect("same ctx"),
            }
        })
        .collect();

    let tail = &rows[rows.len() / 2..];
    let tail_lower_bound = tail
        .iter()
        .map(|r| r.spectre_distance.clone())
        .min_by(|p, q| p.cmp_same(q))
        .expect("nonempty");
    let mut report = ProbeReport {
        rows,
        epsilon: eps.clone(),
        base_spectre: sa,
        tail_lower_bound,
        verdict: ProbeVerdict::ContinuousLooking,
    };
    let last_input = &report.rows[report.rows.len() - 1].input_distance;
    if report.inputs_nonincreasing()
        && !report.tail_lower_bound.is_zero()
        && last_input.cmp_same(&report.tail_lower_bound).is_lt()
    {
        report.verdict = ProbeVerdict::DiscontinuityWitnessed;
    }
    Ok(report)
}

trait MaxSame {
    fn max_same(self, other: DistValue) -> DistValue;
}

impl MaxSame for DistValue {
    fn max_same(self, other: DistValue) -> DistValue {
        if self.cmp_same(&other).is_ge() {
            self
        } else {
            other
        }
    }
}

/// The witness family for discontinuity: `A_n` moves the lexicographically
/// largest element of `A` by `2^-n` along the first coordinate, `n = 1..=count`.
pub fn discontinuity_family(a: &FiniteSet, count: u32) -> Result<Vec<FiniteSet>> {
    let ctx = a.ctx();
    if ctx.is_finite() {
        return Err(Error::Unsupported("finite groups have no small perturbations".into()));
    }
    let top = a.max();
    (1..=count)
        .map(|n| {
            let mut c = top.coords().to_vec();
            c[0] = &c[0] + &Rat::pow2(-(n as i32));
            let mut pts: Vec<Point> = a.iter().filter(|p| *p != top).cloned().collect();
            pts.push(Point::new(c));
            FiniteSet::new(ctx.clone(), pts)
        })
        .collect()
}

/// `η`: the smallest positive distance between elements of `A - A`.
/// `None` for singletons.
pub fn difference_separation(a: &FiniteSet) -> Option<DistValue> {
    let d = difference_set(a);
    let ctx = d.ctx();
    let pts = d.elements();
    let mut best: Option<DistValue> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let v = ctx.dist_unchecked(&pts[i], &pts[j]);
            best = match best {
                Some(b) if b.cmp_same(&v).is_le() => Some(b),
                _ => Some(v),
            };
        }
    }
    best
}

/// The radius `δ = min(η/4, ε/4)` below which a net-set's spectre stays
/// within `ε` of `{0}`. Returned in the same squared/plain form as the
/// ambient distances.
pub fn continuity_radius(a: &FiniteSet, eps: &Rat) -> Result<DistValue> {
    let eta = difference_separation(a)
        .ok_or_else(|| Error::InvalidArgument("need at least two points".into()))?;
    let quarter = Rat::frac(1, 4);
    Ok(if eta.squared {
        let sixteenth = &quarter * &quarter;
        DistValue {
            value: (&eta.value * &sixteenth).min(eps * eps * sixteenth),
            squared: true,
        }
    } else {
        DistValue::plain((&eta.value * &quarter).min(eps * &quarter))
    })
}

/// A random set within Hausdorff distance `δ` of `A` (strictly): every
/// point is moved by less than `δ`, and some points get a nearby twin.
/// Offset coordinates are multiples of `δ / (128 d)`.
pub fn random_perturbation<R: Rng + ?Sized>(
    a: &FiniteSet,
    delta: &DistValue,
    rng: &mut R,
) -> Result<FiniteSet> {
    let ctx = a.ctx();
    let GroupCtx::RationalSpace { dim, .. } = ctx else {
        return Err(Error::Unsupported("finite groups have no small perturbations".into()));
    };
    if delta.is_zero() {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    // Per-coordinate step small enough that any offset has norm < δ in
    // every supported metric: |c_i| <= δ/(2d) gives sup, taxicab and
    // euclidean norms <= δ/2.
    let radius = if delta.squared {
        lower_sqrt_bound(&delta.value)
    } else {
        delta.value.clone()
    };
    let unit = &radius / &Rat::int(2 * (*dim as i64) * 64);
    let offset = |rng: &mut R| {
        Point::new((0..*dim).map(|_| &unit * &Rat::int(rng.gen_range(-64..=64))).collect())
    };
    let mut pts = Vec::new();
    for p in a.iter() {
        pts.push(p.plus(&offset(rng)));
        if rng.gen_bool(0.25) {
            pts.push(p.plus(&offset(rng)));
        }
    }
    FiniteSet::new(ctx.clone(), pts)
}

/// A positive rational `r` with `r^2 <= v` for `v > 0`.
fn lower_sqrt_bound(v: &Rat) -> Rat {
    let mut r = Rat::one();
    while &(&r * &r) > v {
        r = r * Rat::frac(1, 2);
    }
    while &(&r * &r * Rat::int(4)) <= v {
        r = r * Rat::int(2);
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "witness")]
pub enum ImageVerdict {
    Witness(FiniteSet),
    NotInImage,
}

/// Default cap on the number of subsets an exhaustive scan may visit.
pub const DEFAULT_SCAN_BUDGET: u64 = 1 << 20;

/// Scans every nonempty subset `B` of a finite group for `S(B) = target`.
/// Subsets are visited by bitmask over the lexicographically ordered group
/// elements; the first hit in that order is returned.
pub fn refute_spectre_image(ctx: &GroupCtx, target: &FiniteSet, budget: u64) -> Result<ImageVerdict> {
    if !ctx.is_finite() {
        return Err(Error::Unsupported("exhaustive scan needs a finite group".into()));
    }
    if target.ctx() != ctx {
        return Err(Error::ContextMismatch);
    }
    let elems = ctx.elements()?;
    let n = elems.len();
    let total: u128 = if n >= 127 { u128::MAX } else { (1u128 << n) - 1 };
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: if n >= 127 { format!("2^{n}") } else { total.to_string() },
            cap: budget,
        });
    }
    let hit = (1..=total as u64).into_par_iter().find_first(|&mask| {
        let pts: Vec<Point> =
            (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone()).collect();
        let b = FiniteSet::canonical(ctx.clone(), pts);
        spectre(&b, SpectreMode::Fast) == *target
    });
    Ok(match hit {
        Some(mask) => {
            let pts = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone()).collect();
            ImageVerdict::Witness(FiniteSet::new(ctx.clone(), pts)?)
        }
        None => ImageVerdict::NotInImage,
    })
}
