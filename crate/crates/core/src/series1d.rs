//! Achievement sets of finite-support series: `F_k`/`E_k` enumeration,
//! gaps and dominating gaps on the line, the Third Gap Lemma check, and the
//! spectre/center theorems for series (which also run verbatim in the
//! plane).
//!
//! Indices in this module are 1-based to match the usual `a_1, a_2, ...`
//! numbering: `k = 1` names the first term.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Point, Rat};
use crate::group::{DistValue, GroupCtx};
use crate::pointset::{center_contains, in_spectre, spectre, FiniteSet, SpectreMode};
use crate::report::LemmaReport;

/// Cap on the number of subset (or coefficient) combinations an
/// enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Budget {
        Budget(1 << 20)
    }
}

impl Budget {
    /// Fails unless `base^exp` combinations fit in the budget.
    pub fn check_pow(self, base: u64, exp: usize) -> Result<()> {
        let required = u32::try_from(exp).ok().and_then(|e| (base as u128).checked_pow(e));
        match required {
            Some(r) if r <= self.0 as u128 => Ok(()),
            _ => Err(Error::BudgetExceeded { required: format!("{base}^{exp}"), cap: self.0 }),
        }
    }
}

/// A series with finitely many terms (followed implicitly by zeros).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesSpec {
    terms: Vec<Point>,
    dim: usize,
    nonincreasing: bool,
    nonnegative: bool,
}

impl SeriesSpec {
    pub fn new(dim: usize, terms: Vec<Point>) -> Result<SeriesSpec> {
        if dim == 0 {
            return Err(Error::InvalidArgument("series dimension must be positive".into()));
        }
        if let Some(t) = terms.iter().find(|t| t.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: t.dim() });
        }
        let nonnegative = terms.iter().all(|t| t.coords().iter().all(|c| !c.is_negative()));
        let nonincreasing = dim == 1 && terms.windows(2).all(|w| w[0] >= w[1]);
        Ok(SeriesSpec { terms, dim, nonincreasing, nonnegative })
    }

    pub fn scalars(terms: impl IntoIterator<Item = Rat>) -> SeriesSpec {
        SeriesSpec::new(1, terms.into_iter().map(Point::scalar).collect()).expect("1D terms")
    }

    pub fn planar(terms: Vec<Point>) -> Result<SeriesSpec> {
        SeriesSpec::new(2, terms)
    }

    pub fn terms(&self) -> &[Point] {
        &self.terms
    }

    /// Term `n` (1-based).
    pub fn term(&self, n: usize) -> &Point {
        &self.terms[n - 1]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.nonincreasing
    }

    pub fn is_nonnegative(&self) -> bool {
        self.nonnegative
    }

    pub fn ctx(&self) -> GroupCtx {
        GroupCtx::rational(self.dim)
    }

    pub fn require_nonnegative(&self) -> Result<()> {
        if !self.nonnegative {
            return Err(Error::Precondition("series has a negative term".into()));
        }
        Ok(())
    }

    pub fn require_nonincreasing(&self) -> Result<()> {
        if !self.nonincreasing {
            return Err(Error::Precondition("terms are not one-dimensional and nonincreasing".into()));
        }
        Ok(())
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k > self.len() {
            return Err(Error::InvalidArgument(format!(
                "index {k} exceeds the {} terms of the series",
                self.len()
            )));
        }
        Ok(())
    }

    /// Scalar terms of a one-dimensional series.
    pub fn scalar_terms(&self) -> Result<Vec<Rat>> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: self.dim });
        }
        Ok(self.terms.iter().map(|t| t.coord(0).clone()).collect())
    }
}

/// Merges two sorted, duplicate-free lists into one.
fn merge_sorted(a: Vec<Point>, b: Vec<Point>) -> Vec<Point> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        let next = match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => match x.cmp(y) {
                std::cmp::Ordering::Less => ia.next(),
                std::cmp::Ordering::Greater => ib.next(),
                std::cmp::Ordering::Equal => {
                    ib.next();
                    ia.next()
                }
            },
            (Some(_), None) => ia.next(),
            (None, Some(_)) => ib.next(),
            (None, None) => break,
        };
        out.extend(next);
    }
    out
}

/// `S ∪ (S + t)`; translation keeps the lexicographic order, so this is a
/// linear merge.
fn extend_by(set: Vec<Point>, t: &Point) -> Vec<Point> {
    if t.is_zero() {
        return set;
    }
    let shifted: Vec<Point> = set.iter().map(|p| p.plus(t)).collect();
    merge_sorted(set, shifted)
}

/// All subsums of `terms`, as a canonical set.
pub fn subsums(dim: usize, terms: &[Point]) -> FiniteSet {
    let mut set = vec![Point::zero(dim)];
    for t in terms {
        set = extend_by(set, t);
    }
    FiniteSet::canonical(GroupCtx::rational(dim), set)
}

/// `F_k`: subsums of the first `k` terms.
pub fn initial_subsums(s: &SeriesSpec, k: usize, budget: Budget) -> Result<FiniteSet> {
    s.check_index(k)?;
    budget.check_pow(2, k)?;
    Ok(subsums(s.dim, &s.terms[..k]))
}

/// `E_k`: subsums of the terms after the `k`-th.
pub fn remainder_subsums(s: &SeriesSpec, k: usize, budget: Budget) -> Result<FiniteSet> {
    s.check_index(k)?;
    budget.check_pow(2, s.len() - k)?;
    Ok(subsums(s.dim, &s.terms[k..]))
}

/// `Σ_{n>k} x_n`.
pub fn remainder_sum(s: &SeriesSpec, k: usize) -> Result<Point> {
    s.check_index(k)?;
    Ok(s.terms[k..].iter().fold(Point::zero(s.dim), |acc, t| acc.plus(t)))
}

/// `E`: all subsums of a nonnegative series.
pub fn achievement_set(s: &SeriesSpec, budget: Budget) -> Result<FiniteSet> {
    s.require_nonnegative()?;
    budget.check_pow(2, s.len())?;
    Ok(subsums(s.dim, &s.terms))
}

/// A bounded component `(alpha, beta)` of the complement of a finite set
/// on the line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gap1D {
    pub alpha: Rat,
    pub beta: Rat,
    /// Strictly longer than every gap to its left.
    pub dominating: bool,
}

impl Gap1D {
    pub fn length(&self) -> Rat {
        &self.beta - &self.alpha
    }
}

/// All gaps of a one-dimensional finite set, left to right.
pub fn find_gaps(e: &FiniteSet) -> Result<Vec<Gap1D>> {
    let vals = e.scalar_values()?;
    let mut longest: Option<Rat> = None;
    let mut gaps = Vec::with_capacity(vals.len().saturating_sub(1));
    for w in vals.windows(2) {
        let len = &w[1] - &w[0];
        let dominating = longest.as_ref().map_or(true, |m| &len > m);
        if dominating {
            longest = Some(len);
        }
        gaps.push(Gap1D { alpha: w[0].clone(), beta: w[1].clone(), dominating });
    }
    Ok(gaps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapMatch {
    pub gap: Gap1D,
    /// Some `m` with `a_m = beta` and `Σ_{n>m} a_n = alpha`.
    pub m: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThirdGapReport {
    pub matches: Vec<GapMatch>,
}

impl ThirdGapReport {
    pub fn passed(&self) -> bool {
        self.matches.iter().all(|g| g.m.is_some())
    }

    pub fn to_lemma_report(&self) -> LemmaReport {
        let mut r = LemmaReport::new("third-gap");
        for g in &self.matches {
            let name = format!("({}, {})", g.gap.alpha, g.gap.beta);
            match g.m {
                Some(m) => r.push(name, true, format!("m = {m}")),
                None => r.push(name, false, "no index m matches this dominating gap"),
            }
        }
        r
    }
}

/// Every dominating gap `(α, β)` of `E` should have `β = a_m` and
/// `α = Σ_{n>m} a_n` for some `m`.
pub fn third_gap_check(s: &SeriesSpec, budget: Budget) -> Result<ThirdGapReport> {
    s.require_nonnegative()?;
    s.require_nonincreasing()?;
    let e = achievement_set(s, budget)?;
    let terms = s.scalar_terms()?;
    // tails[m] = Σ_{n>m} a_n for m = 0..=N
    let mut tails = vec![Rat::zero(); terms.len() + 1];
    for m in (0..terms.len()).rev() {
        tails[m] = &tails[m + 1] + &terms[m];
    }
    let matches = find_gaps(&e)?
        .into_iter()
        .filter(|g| g.dominating)
        .map(|gap| {
            let m = (1..=terms.len())
                .find(|&m| terms[m - 1] == gap.beta && tails[m] == gap.alpha);
            GapMatch { gap, m }
        })
        .collect();
    Ok(ThirdGapReport { matches })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedGap {
    pub alpha: Rat,
    pub beta: Rat,
    /// Found among the gaps of the enumerated achievement set.
    pub confirmed: bool,
}

/// With `A = {n : a_n < a_k}`: if `a_k > Σ_{n∈A} a_n`, the interval
/// `(Σ_{n∈A} a_n, a_k)` is predicted to be a gap. Returns `None` when the
/// hypothesis fails.
pub fn first_gap_check_1d(s: &SeriesSpec, k: usize, budget: Budget) -> Result<Option<PredictedGap>> {
    let terms = s.scalar_terms()?;
    if k == 0 || k > terms.len() {
        return Err(Error::InvalidArgument(format!("index {k} outside 1..={}", terms.len())));
    }
    let e = achievement_set(s, budget)?;
    let ak = &terms[k - 1];
    let below: Rat = terms.iter().filter(|t| *t < ak).sum();
    if *ak <= below {
        return Ok(None);
    }
    let confirmed = find_gaps(&e)?.iter().any(|g| g.alpha == below && &g.beta == ak);
    Ok(Some(PredictedGap { alpha: below, beta: ak.clone(), confirmed }))
}

/// Maximal runs of equal consecutive terms as `(start, length)`, 1-based.
fn equal_runs(terms: &[Point]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=terms.len() {
        if i == terms.len() || terms[i] != terms[start] {
            runs.push((start + 1, i - start));
            start = i;
        }
    }
    runs
}

fn inclusion(r: &mut LemmaReport, name: String, small: &FiniteSet, big: &FiniteSet) {
    let missing = small.iter().find(|p| !big.contains(p));
    match missing {
        None => r.push(name, true, ""),
        Some(p) => r.push(name, false, format!("{p} is missing")),
    }
}

/// Runs every spectre/center statement about achievement sets on `s`:
///
/// * each term lies in `S(E)`;
/// * for a run of `2j-1` equal terms starting at `k`, `j·x_k ∈ S(E)`;
/// * on the line, each `|x_n|` lies in `C(E)`;
/// * `S(F_n) ⊆ S(F_{n+1}) ⊆ S(E)` and `S(E_{n+1}) ⊆ S(E_n) ⊆ S(E)`.
pub fn series_spectre_checks(s: &SeriesSpec, budget: Budget) -> Result<LemmaReport> {
    let e = achievement_set(s, budget)?;
    let ctx = s.ctx();
    let mut r = LemmaReport::new("series-spectre");

    for (n, t) in s.terms.iter().enumerate() {
        r.push(format!("x_{} in S(E)", n + 1), in_spectre(&e, t), t.to_string());
    }

    for (k, len) in equal_runs(&s.terms) {
        for j in 2..=(len + 1) / 2 {
            let z = s.term(k).scaled(&Rat::int(j as i64));
            r.push(format!("{j} x_{k} in S(E)"), in_spectre(&e, &z), z.to_string());
        }
    }

    if s.dim == 1 {
        for (n, t) in s.terms.iter().enumerate() {
            let alpha = DistValue::plain(t.coord(0).abs());
            r.push(format!("|x_{}| in C(E)", n + 1), center_contains(&e, &alpha), alpha.to_string());
        }
    }

    let n_terms = s.len();
    let mut prefixes = Vec::with_capacity(n_terms + 1);
    let mut acc = vec![Point::zero(s.dim)];
    prefixes.push(FiniteSet::canonical(ctx.clone(), acc.clone()));
    for t in &s.terms {
        acc = extend_by(acc, t);
        prefixes.push(FiniteSet::canonical(ctx.clone(), acc.clone()));
    }
    let mut suffixes = vec![FiniteSet::canonical(ctx.clone(), vec![Point::zero(s.dim)]); n_terms + 1];
    let mut acc = vec![Point::zero(s.dim)];
    for n in (0..n_terms).rev() {
        acc = extend_by(acc, &s.terms[n]);
        suffixes[n] = FiniteSet::canonical(ctx.clone(), acc.clone());
    }

    let se = spectre(&e, SpectreMode::Fast);
    let sf: Vec<FiniteSet> = prefixes.iter().map(|f| spectre(f, SpectreMode::Fast)).collect();
    let sr: Vec<FiniteSet> = suffixes.iter().map(|f| spectre(f, SpectreMode::Fast)).collect();
    for n in 0..n_terms {
        inclusion(&mut r, format!("S(F_{n}) in S(F_{})", n + 1), &sf[n], &sf[n + 1]);
        inclusion(&mut r, format!("S(F_{}) in S(E)", n + 1), &sf[n + 1], &se);
        inclusion(&mut r, format!("S(E_{}) in S(E_{n})", n + 1), &sr[n + 1], &sr[n]);
        inclusion(&mut r, format!("S(E_{n}) in S(E)"), &sr[n], &se);
    }
    Ok(r)
}
