//! Planar achievement sets: x-gaps, y-gaps, rectangular gaps, and the two
//! planar gap lemmas. Also the fixture showing that dominating-gap
//! corners need not be terms in the plane.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Point, Rat};
use crate::pointset::FiniteSet;
use crate::report::LemmaReport;
use crate::series1d::{achievement_set, remainder_sum, subsums, Budget, SeriesSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AxisGap {
    pub axis: Axis,
    pub lo: Rat,
    pub hi: Rat,
}

/// The open rectangle `(a,b) × (c,d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RectGap {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
    pub area: Rat,
}

impl RectGap {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> RectGap {
        let area = (&b - &a) * (&d - &c);
        RectGap { a, b, c, d, area }
    }

    pub fn lower(&self) -> Point {
        Point::new(vec![self.a.clone(), self.c.clone()])
    }

    pub fn upper(&self) -> Point {
        Point::new(vec![self.b.clone(), self.d.clone()])
    }

    fn key(&self) -> (Rat, Rat, Rat, Rat) {
        (self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone())
    }
}

impl std::fmt::Display for RectGap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}) x ({}, {})", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RectReport {
    #[default]
    All,
    LargestByArea,
}

fn require_planar(e: &FiniteSet) -> Result<()> {
    if e.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: e.dim() });
    }
    Ok(())
}

/// All subset sums of a nonnegative planar series.
pub fn achievement_set_2d(s: &SeriesSpec, budget: Budget) -> Result<FiniteSet> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    achievement_set(s, budget)
}

/// Gaps between consecutive distinct x-values, then between consecutive
/// distinct y-values.
pub fn axis_gaps(e: &FiniteSet) -> Result<Vec<AxisGap>> {
    require_planar(e)?;
    let mut out = Vec::new();
    for axis in [Axis::X, Axis::Y] {
        let vals: BTreeSet<&Rat> = e.iter().map(|p| p.coord(axis.index())).collect();
        let vals: Vec<&Rat> = vals.into_iter().collect();
        for w in vals.windows(2) {
            out.push(AxisGap { axis, lo: w[0].clone(), hi: w[1].clone() });
        }
    }
    Ok(out)
}

/// Rectangular gaps of `e`. A sweep over coordinate ranks: for each lower
/// corner `p = (a, c)`, columns to the right are visited in order while
/// tracking the lowest `y ≥ c` already seen; only the lowest point with
/// `y ≥ c` in each column can be an upper corner.
pub fn rect_gaps(e: &FiniteSet, report: RectReport, budget: Budget) -> Result<Vec<RectGap>> {
    require_planar(e)?;
    budget.check_pow(e.len() as u64, 2)?;

    let xs: Vec<Rat> = e.iter().map(|p| p.coord(0).clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let ys: Vec<Rat> = e.iter().map(|p| p.coord(1).clone()).collect::<BTreeSet<_>>().into_iter().collect();
    // Points are sorted lexicographically, so each column's ranks come out sorted.
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); xs.len()];
    for p in e.iter() {
        let xi = xs.binary_search(p.coord(0)).expect("x present");
        let yi = ys.binary_search(p.coord(1)).expect("y present");
        columns[xi].push(yi);
    }

    let mut gaps = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        for (pos, &c) in col.iter().enumerate() {
            let mut m = col.get(pos + 1).copied().unwrap_or(usize::MAX);
            for (j, other) in columns.iter().enumerate().skip(i + 1) {
                let at = other.partition_point(|&y| y < c);
                let Some(&y0) = other.get(at) else { continue };
                if y0 == c {
                    break;
                }
                if y0 < m {
                    gaps.push(RectGap::new(xs[i].clone(), xs[j].clone(), ys[c].clone(), ys[y0].clone()));
                    m = y0;
                }
            }
        }
    }

    if report == RectReport::LargestByArea {
        if let Some(best) = gaps.iter().map(|g| g.area.clone()).max() {
            gaps.retain(|g| g.area == best);
        }
    }
    Ok(gaps)
}

/// Direct check of the defining two-corner property.
pub fn is_rect_gap(e: &FiniteSet, g: &RectGap) -> bool {
    if g.a >= g.b || g.c >= g.d {
        return false;
    }
    let (lo, hi) = (g.lower(), g.upper());
    let inside: Vec<&Point> = e
        .iter()
        .filter(|p| {
            let (x, y) = (p.coord(0), p.coord(1));
            &g.a <= x && x <= &g.b && &g.c <= y && y <= &g.d
        })
        .collect();
    inside.len() == 2 && inside.contains(&&lo) && inside.contains(&&hi)
}

/// A predicted gap together with whether the detectors found it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Confirmed<T> {
    pub predicted: T,
    pub confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstGapReport {
    pub k: usize,
    /// Part a), present when its hypothesis holds.
    pub x_gap: Option<Confirmed<AxisGap>>,
    /// Part b).
    pub y_gap: Option<Confirmed<AxisGap>>,
    /// Part c), only when both index sets coincide.
    pub rect: Option<Confirmed<RectGap>>,
}

impl FirstGapReport {
    pub fn passed(&self) -> bool {
        self.x_gap.as_ref().map_or(true, |g| g.confirmed)
            && self.y_gap.as_ref().map_or(true, |g| g.confirmed)
            && self.rect.as_ref().map_or(true, |g| g.confirmed)
    }

    pub fn to_lemma_report(&self) -> LemmaReport {
        let mut r = LemmaReport::new(format!("first-gap-2d k={}", self.k));
        if let Some(g) = &self.x_gap {
            r.push("x-gap", g.confirmed, format!("({}, {})", g.predicted.lo, g.predicted.hi));
        }
        if let Some(g) = &self.y_gap {
            r.push("y-gap", g.confirmed, format!("({}, {})", g.predicted.lo, g.predicted.hi));
        }
        if let Some(g) = &self.rect {
            r.push("rectangular gap", g.confirmed, g.predicted.to_string());
        }
        if r.checks.is_empty() {
            return LemmaReport::inapplicable(r.lemma, "no part's hypothesis holds");
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondGapReport {
    pub gap: RectGap,
    /// `max{n : x_n ≥ b−a or y_n ≥ d−c}`; absent when no index qualifies.
    pub k: Option<usize>,
    pub upper_in_fk: bool,
    /// `(a,c) − Σ_{n>k}`, reported whether or not it lies in `F_k`.
    pub f: Option<Point>,
    pub f_in_fk: bool,
}

impl SecondGapReport {
    pub fn applicable(&self) -> bool {
        self.k.is_some()
    }

    pub fn passed(&self) -> bool {
        self.k.is_none() || (self.upper_in_fk && self.f_in_fk)
    }

    pub fn to_lemma_report(&self) -> LemmaReport {
        let Some(k) = self.k else {
            return LemmaReport::inapplicable("second-gap-2d", format!("no index qualifies for {}", self.gap));
        };
        let mut r = LemmaReport::new(format!("second-gap-2d k={k}"));
        r.push(format!("{} in F_{k}", self.gap.upper()), self.upper_in_fk, "");
        let f = self.f.as_ref().expect("f is computed whenever k is");
        r.push(format!("f = {f} in F_{k}"), self.f_in_fk, "");
        r
    }
}

/// A planar series with its achievement set, prefix sets and gaps
/// computed once, so that many lemma checks can share them.
#[derive(Clone, Debug)]
pub struct PlanarAnalysis {
    series: SeriesSpec,
    e: FiniteSet,
    prefixes: Vec<FiniteSet>,
    axis: Vec<AxisGap>,
    axis_set: HashSet<AxisGap>,
    rects: Vec<RectGap>,
    rect_set: HashSet<(Rat, Rat, Rat, Rat)>,
}

impl PlanarAnalysis {
    pub fn new(s: &SeriesSpec, budget: Budget) -> Result<PlanarAnalysis> {
        let e = achievement_set_2d(s, budget)?;
        let prefixes = (0..=s.len()).map(|k| subsums(2, &s.terms()[..k])).collect();
        let axis = axis_gaps(&e)?;
        let rects = rect_gaps(&e, RectReport::All, budget)?;
        Ok(PlanarAnalysis {
            series: s.clone(),
            axis_set: axis.iter().cloned().collect(),
            rect_set: rects.iter().map(RectGap::key).collect(),
            e,
            prefixes,
            axis,
            rects,
        })
    }

    pub fn series(&self) -> &SeriesSpec {
        &self.series
    }

    pub fn achievement_set(&self) -> &FiniteSet {
        &self.e
    }

    pub fn axis_gaps(&self) -> &[AxisGap] {
        &self.axis
    }

    pub fn rect_gaps(&self) -> &[RectGap] {
        &self.rects
    }

    /// `F_k` for `0 ≤ k ≤ N`.
    pub fn prefix(&self, k: usize) -> &FiniteSet {
        &self.prefixes[k]
    }

    pub fn first_gap(&self, k: usize) -> Result<FirstGapReport> {
        let n = self.series.len();
        if k == 0 || k > n {
            return Err(Error::InvalidArgument(format!("index {k} outside 1..={n}")));
        }
        let terms = self.series.terms();
        let tk = &terms[k - 1];
        let below = |axis: usize| -> (Vec<usize>, Rat) {
            let idx: Vec<usize> = (0..n).filter(|&i| terms[i].coord(axis) < tk.coord(axis)).collect();
            let sum = idx.iter().map(|&i| terms[i].coord(axis)).sum();
            (idx, sum)
        };
        let (ax, sx) = below(0);
        let (ay, sy) = below(1);
        let hx = tk.coord(0) > &sx;
        let hy = tk.coord(1) > &sy;
        let axis_part = |holds: bool, axis: Axis, lo: &Rat| {
            holds.then(|| {
                let g = AxisGap { axis, lo: lo.clone(), hi: tk.coord(axis.index()).clone() };
                Confirmed { confirmed: self.axis_set.contains(&g), predicted: g }
            })
        };
        let x_gap = axis_part(hx, Axis::X, &sx);
        let y_gap = axis_part(hy, Axis::Y, &sy);
        let rect = (ax == ay && hx && hy).then(|| {
            let g = RectGap::new(sx.clone(), tk.coord(0).clone(), sy.clone(), tk.coord(1).clone());
            Confirmed { confirmed: self.rect_set.contains(&g.key()), predicted: g }
        });
        Ok(FirstGapReport { k, x_gap, y_gap, rect })
    }

    pub fn second_gap(&self, g: &RectGap) -> Result<SecondGapReport> {
        if !self.rect_set.contains(&g.key()) {
            return Err(Error::Precondition(format!("{g} is not a rectangular gap of E")));
        }
        let (w, h) = (&g.b - &g.a, &g.d - &g.c);
        let k = self
            .series
            .terms()
            .iter()
            .rposition(|t| t.coord(0) >= &w || t.coord(1) >= &h)
            .map(|i| i + 1);
        let Some(k) = k else {
            return Ok(SecondGapReport { gap: g.clone(), k: None, upper_in_fk: false, f: None, f_in_fk: false });
        };
        let fk = &self.prefixes[k];
        let f = g.lower().minus(&remainder_sum(&self.series, k)?);
        Ok(SecondGapReport {
            gap: g.clone(),
            k: Some(k),
            upper_in_fk: fk.contains(&g.upper()),
            f_in_fk: fk.contains(&f),
            f: Some(f),
        })
    }
}

pub fn first_gap_lemma_2d(s: &SeriesSpec, k: usize, budget: Budget) -> Result<FirstGapReport> {
    PlanarAnalysis::new(s, budget)?.first_gap(k)
}

pub fn second_gap_lemma_2d(s: &SeriesSpec, g: &RectGap, budget: Budget) -> Result<SecondGapReport> {
    PlanarAnalysis::new(s, budget)?.second_gap(g)
}

/// The four-term planar series whose largest rectangular gap has an upper
/// corner that is not a term.
pub fn example_series() -> SeriesSpec {
    SeriesSpec::planar(vec![
        Point::fracs(&[(7, 8), (1, 8)]),
        Point::fracs(&[(1, 8), (7, 8)]),
        Point::fracs(&[(3, 16), (3, 16)]),
        Point::fracs(&[(3, 16), (3, 16)]),
    ])
    .expect("planar terms")
}

/// The twelve subsums of [`example_series`], as listed by hand.
pub fn example_points() -> Vec<Point> {
    [
        [(0, 1), (0, 1)],
        [(1, 1), (1, 1)],
        [(3, 16), (3, 16)],
        [(3, 8), (3, 8)],
        [(7, 8), (1, 8)],
        [(17, 16), (5, 16)],
        [(5, 4), (1, 2)],
        [(1, 8), (7, 8)],
        [(5, 16), (17, 16)],
        [(1, 2), (5, 4)],
        [(19, 16), (19, 16)],
        [(11, 8), (11, 8)],
    ]
    .iter()
    .map(|p| Point::fracs(p))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarExampleReport {
    pub points: FiniteSet,
    pub matches_listed: bool,
    pub largest_gaps: Vec<RectGap>,
    pub largest_is_expected: bool,
    pub corners_in_e: bool,
    pub corner_is_term: bool,
}

impl PlanarExampleReport {
    pub fn passed(&self) -> bool {
        self.matches_listed && self.largest_is_expected && self.corners_in_e && !self.corner_is_term
    }

    pub fn to_lemma_report(&self) -> LemmaReport {
        let mut r = LemmaReport::new("planar-example");
        r.push("E has the 12 listed points", self.matches_listed, format!("{} points", self.points.len()));
        let gaps: Vec<String> = self.largest_gaps.iter().map(|g| g.to_string()).collect();
        r.push("largest rectangular gap", self.largest_is_expected, gaps.join("; "));
        r.push("gap corners lie in E", self.corners_in_e, "");
        r.push("upper corner is no term", !self.corner_is_term, "");
        r
    }
}

/// Enumerates the example end to end and records each expected fact.
pub fn third_gap_failure_witness() -> PlanarExampleReport {
    let s = example_series();
    let e = achievement_set_2d(&s, Budget::default()).expect("16 subsets");
    let listed = FiniteSet::new(e.ctx().clone(), example_points()).expect("distinct points");
    let largest = rect_gaps(&e, RectReport::LargestByArea, Budget::default()).expect("12 points");
    let expected = RectGap::new(Rat::frac(3, 8), Rat::one(), Rat::frac(3, 8), Rat::one());
    let largest_is_expected = largest.len() == 1 && largest[0] == expected;
    let corners_in_e = e.contains(&expected.lower()) && e.contains(&expected.upper());
    let corner_is_term = s.terms().contains(&expected.upper());
    PlanarExampleReport {
        matches_listed: e == listed,
        points: e,
        largest_gaps: largest,
        largest_is_expected,
        corners_in_e,
        corner_is_term,
    }
}
