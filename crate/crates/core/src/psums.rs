//! Sets of P-sums `{Σ ξ_n a_n : ξ_n ∈ P}` for finite `P` and finitely many
//! terms, the gap-translation predicate, and a two-Cantor-set demo of the
//! translation radius shrinking to zero.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::pointset::FiniteSet;
use crate::series1d::Budget;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PSpec {
    p: Vec<Rat>,
    terms: Vec<Rat>,
}

impl PSpec {
    /// `p` must contain 0 and be nonnegative; duplicates are collapsed.
    pub fn new(mut p: Vec<Rat>, terms: Vec<Rat>) -> Result<PSpec> {
        p.sort();
        p.dedup();
        if p.iter().any(Rat::is_negative) {
            return Err(Error::Precondition("P has a negative element".into()));
        }
        if p.first().map_or(true, |x| !x.is_zero()) {
            return Err(Error::Precondition("P does not contain 0".into()));
        }
        Ok(PSpec { p, terms })
    }

    pub fn p(&self) -> &[Rat] {
        &self.p
    }

    pub fn terms(&self) -> &[Rat] {
        &self.terms
    }
}

/// All coefficient combinations, as a canonical set.
pub fn psum_set(spec: &PSpec, budget: Budget) -> Result<FiniteSet> {
    budget.check_pow(spec.p.len() as u64, spec.terms.len())?;
    let mut set = vec![Rat::zero()];
    for a in &spec.terms {
        let mut next: Vec<Rat> = Vec::with_capacity(set.len() * spec.p.len());
        for xi in &spec.p {
            let shift = xi * a;
            next.extend(set.iter().map(|s| s + &shift));
        }
        next.sort();
        next.dedup();
        set = next;
    }
    FiniteSet::scalars(set)
}

/// `b + (T ∩ [0, ε]) = T ∩ [b, b + ε]`, evaluated directly.
pub fn translation_holds(t: &[Rat], b: &Rat, eps: &Rat) -> bool {
    let left = t.iter().filter(|x| !x.is_negative() && *x <= eps).map(|x| b + x);
    let hi = b + eps;
    let right = t.iter().filter(|x| *x >= b && **x <= hi);
    // both sides come out sorted
    left.eq(right.cloned())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Breakpoint {
    pub eps: Rat,
    pub holds: bool,
}

/// The predicate as a function of `ε > 0`. It is constant on `(0, e_1)`,
/// where it holds, and on every `[e_i, e_{i+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationProfile {
    pub gap: (Rat, Rat),
    pub breakpoints: Vec<Breakpoint>,
    /// The first breakpoint at which the predicate fails; it holds for
    /// every `ε` below it and fails at it.
    pub radius: Rat,
    /// The largest accepted breakpoint below `radius`, or `radius / 2`.
    pub witness: Rat,
}

impl TranslationProfile {
    /// Value of the predicate at `eps`, read off the breakpoints.
    pub fn predicted_at(&self, eps: &Rat) -> bool {
        let i = self.breakpoints.partition_point(|bp| &bp.eps <= eps);
        i == 0 || self.breakpoints[i - 1].holds
    }
}

/// Decides whether some `ε > 0` satisfies the translation identity at the
/// right end `b` of the gap `(a, b)`. For finite `T` with `min T = 0` one
/// always does: on `(0, e_1)` both sides equal `{b}`.
pub fn gap_translation_check(t: &FiniteSet, a: &Rat, b: &Rat) -> Result<TranslationProfile> {
    let vals = t.scalar_values()?;
    if !vals[0].is_zero() {
        return Err(Error::Precondition(format!("min T = {} is not 0", vals[0])));
    }
    let is_gap = vals.windows(2).any(|w| &w[0] == a && &w[1] == b);
    if !is_gap {
        return Err(Error::Precondition(format!("({a}, {b}) is not a gap of T")));
    }
    let mut eps: Vec<Rat> = vals.iter().filter(|x| x.is_positive()).cloned().collect();
    eps.extend(vals.iter().filter(|x| *x > b).map(|x| x - b));
    eps.sort();
    eps.dedup();
    // vals[i] + b == vals[j0 + i] for every i < matched
    let j0 = vals.binary_search(b).expect("gap endpoint is in T");
    let matched = vals.iter().zip(&vals[j0..]).take_while(|(x, y)| &(*x + b) == *y).count();
    let holds = |e: &Rat| {
        let left = vals.partition_point(|x| x <= e);
        let hi = b + e;
        let right = vals.partition_point(|x| x <= &hi) - j0;
        left == right && left <= matched
    };
    let breakpoints: Vec<Breakpoint> = eps.into_iter().map(|e| Breakpoint { holds: holds(&e), eps: e }).collect();
    let first_fail = breakpoints
        .iter()
        .position(|bp| !bp.holds)
        .expect("the predicate fails once eps reaches max T");
    let radius = breakpoints[first_fail].eps.clone();
    let witness = match first_fail {
        0 => &radius / &Rat::int(2),
        i => breakpoints[i - 1].eps.clone(),
    };
    Ok(TranslationProfile { gap: (a.clone(), b.clone()), breakpoints, radius, witness })
}

/// Endpoints after `level` steps of the two-map system on `[0, len]` with
/// contraction `ratio`.
pub fn cantor_endpoints(ratio: &Rat, len: &Rat, level: u32) -> Vec<Rat> {
    let shift = (Rat::one() - ratio) * len;
    let mut set = vec![Rat::zero(), len.clone()];
    for _ in 0..level {
        let low = set.iter().map(|x| ratio * x);
        let high = set.iter().map(|x| ratio * x + &shift);
        let mut next: Vec<Rat> = low.chain(high).collect();
        next.sort();
        next.dedup();
        set = next;
    }
    set
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CantorRow {
    pub level: u32,
    pub points: usize,
    /// Translation radius at the gap `(1/4, 1/2)`.
    pub epsilon: Rat,
    pub witness: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CantorDemo {
    pub note: String,
    pub rows: Vec<CantorRow>,
    /// Over levels `1..`.
    pub strictly_decreasing: bool,
}

pub const MAX_CANTOR_LEVEL: u32 = 8;

/// Builds `A_m = C_m ∪ (D_m + 1/2)` for `m = 0..=levels`, with `C_m`, `D_m`
/// the level-`m` endpoint sets of ratio 1/4 and 1/3 on `[0, 1/4]`, and
/// records the translation radius at the gap `(1/4, 1/2)`.
pub fn cantor_pair_demo(levels: u32) -> Result<CantorDemo> {
    if levels > MAX_CANTOR_LEVEL {
        return Err(Error::InvalidArgument(format!("levels must be at most {MAX_CANTOR_LEVEL}")));
    }
    let quarter = Rat::frac(1, 4);
    let half = Rat::frac(1, 2);
    let rows = (0..=levels)
        .map(|m| {
            let c = cantor_endpoints(&Rat::frac(1, 4), &quarter, m);
            let d = cantor_endpoints(&Rat::frac(1, 3), &quarter, m);
            let a = FiniteSet::scalars(c.into_iter().chain(d.iter().map(|x| x + &half)))?;
            let prof = gap_translation_check(&a, &quarter, &half)?;
            Ok(CantorRow { level: m, points: a.len(), epsilon: prof.radius, witness: prof.witness })
        })
        .collect::<Result<Vec<_>>>()?;
    let tail: Vec<&CantorRow> = rows.iter().filter(|r| r.level >= 1).collect();
    let strictly_decreasing = tail.windows(2).all(|w| w[1].epsilon < w[0].epsilon);
    Ok(CantorDemo {
        note: "finite endpoint approximations only: the radius shrinks with the level, \
               which is the finite trace of the limit losing the translation property"
            .into(),
        rows,
        strictly_decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series1d::{achievement_set, find_gaps, SeriesSpec};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::frac(n, d)
    }

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(n, d)| r(n, d)).collect()
    }

    fn b() -> Budget {
        Budget::default()
    }

    /// Enumerates coefficient vectors as base-|P| digits.
    fn brute_psums(p: &[Rat], terms: &[Rat]) -> FiniteSet {
        let base = p.len();
        let total = base.pow(terms.len() as u32);
        FiniteSet::scalars((0..total).map(|mut code| {
            let mut s = Rat::zero();
            for a in terms {
                s += &(&p[code % base] * a);
                code /= base;
            }
            s
        }))
        .unwrap()
    }

    #[test]
    fn psum_examples() {
        let s = PSpec::new(rats(&[(0, 1), (1, 1)]), rats(&[(1, 2), (1, 4)])).unwrap();
        assert_eq!(psum_set(&s, b()).unwrap(), FiniteSet::scalars(rats(&[(0, 1), (1, 4), (1, 2), (3, 4)])).unwrap());

        let s = PSpec::new(rats(&[(0, 1), (1, 1), (2, 1)]), rats(&[(1, 4), (1, 16)])).unwrap();
        let expected = rats(&[(0, 1), (1, 16), (1, 8), (1, 4), (5, 16), (3, 8), (1, 2), (9, 16), (5, 8)]);
        assert_eq!(psum_set(&s, b()).unwrap(), FiniteSet::scalars(expected).unwrap());

        let s = PSpec::new(vec![Rat::zero()], rats(&[(1, 2), (7, 3)])).unwrap();
        assert_eq!(psum_set(&s, b()).unwrap(), FiniteSet::scalars([Rat::zero()]).unwrap());
    }

    #[test]
    fn pspec_validation() {
        assert!(PSpec::new(rats(&[(1, 1)]), vec![]).is_err());
        assert!(PSpec::new(rats(&[(0, 1), (-1, 1)]), vec![]).is_err());
        let s = PSpec::new(rats(&[(0, 1), (1, 1), (2, 1)]), vec![Rat::one(); 13]).unwrap();
        assert!(matches!(psum_set(&s, b()), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn translation_examples() {
        let t = FiniteSet::scalars(rats(&[(0, 1), (1, 4), (1, 2), (3, 4)])).unwrap();
        let p = gap_translation_check(&t, &r(1, 4), &r(1, 2)).unwrap();
        assert_eq!(p.witness, r(1, 4));
        assert_eq!(p.radius, r(1, 2));

        // fails at eps = 1, yet holds on (0, 1)
        let t = FiniteSet::scalars(rats(&[(0, 1), (1, 1)])).unwrap();
        let p = gap_translation_check(&t, &r(0, 1), &r(1, 1)).unwrap();
        assert_eq!(p.breakpoints, vec![Breakpoint { eps: r(1, 1), holds: false }]);
        assert_eq!(p.witness, r(1, 2));
        assert!(translation_holds(t.scalar_values().unwrap().as_slice(), &r(1, 1), &r(1, 2)));

        let s = PSpec::new(rats(&[(0, 1), (1, 1)]), rats(&[(1, 2), (1, 4), (1, 8)])).unwrap();
        let t = psum_set(&s, b()).unwrap();
        for g in find_gaps(&t).unwrap() {
            let p = gap_translation_check(&t, &g.alpha, &g.beta).unwrap();
            assert!(translation_holds(&t.scalar_values().unwrap(), &g.beta, &p.witness));
        }
    }

    #[test]
    fn translation_rejects_bad_input() {
        let t = FiniteSet::scalars(rats(&[(0, 1), (1, 4), (1, 2)])).unwrap();
        assert!(gap_translation_check(&t, &r(0, 1), &r(1, 2)).is_err());
        let t = FiniteSet::scalars(rats(&[(1, 8), (1, 4)])).unwrap();
        assert!(gap_translation_check(&t, &r(1, 8), &r(1, 4)).is_err());
    }

    #[test]
    fn cantor_endpoint_sets() {
        assert_eq!(cantor_endpoints(&r(1, 4), &r(1, 4), 0), rats(&[(0, 1), (1, 4)]));
        let c1 = cantor_endpoints(&r(1, 4), &r(1, 4), 1);
        assert_eq!(c1, rats(&[(0, 1), (1, 16), (3, 16), (1, 4)]));
        assert_eq!(cantor_endpoints(&r(1, 3), &r(1, 4), 5).len(), 64);
    }

    #[test]
    fn cantor_demo() {
        let d = cantor_pair_demo(6).unwrap();
        assert!(d.strictly_decreasing);
        assert_eq!(d.rows[0].epsilon, r(1, 2));
        // radius at level 2 is the first point where C_2 and D_2 differ
        assert_eq!(d.rows[2].epsilon, r(1, 64));
        for row in &d.rows[1..] {
            assert_eq!(row.epsilon, Rat::frac(1, 4).powu(row.level + 1));
        }
        assert!(cantor_pair_demo(9).is_err());
    }

    fn arb_pspec(max_terms: usize) -> impl Strategy<Value = PSpec> {
        (
            prop::collection::vec(0i64..=4, 0..=3),
            prop::collection::vec((1i64..=12, 1i64..=12), 0..=max_terms),
        )
            .prop_map(|(p, t)| {
                let mut p: Vec<Rat> = p.into_iter().map(Rat::int).collect();
                p.push(Rat::zero());
                PSpec::new(p, t.into_iter().map(|(n, d)| r(n, d)).collect()).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn enumeration_matches_digits_oracle(s in arb_pspec(5)) {
            prop_assert_eq!(psum_set(&s, b()).unwrap(), brute_psums(s.p(), s.terms()));
        }

        #[test]
        fn zero_one_is_achievement_set(t in prop::collection::vec((0i64..=12, 1i64..=12), 0..=8)) {
            let terms: Vec<Rat> = t.into_iter().map(|(n, d)| r(n, d)).collect();
            let s = PSpec::new(rats(&[(0, 1), (1, 1)]), terms.clone()).unwrap();
            prop_assert_eq!(psum_set(&s, b()).unwrap(), achievement_set(&SeriesSpec::scalars(terms), b()).unwrap());
        }

        #[test]
        fn every_gap_translates(s in arb_pspec(5)) {
            let t = psum_set(&s, b()).unwrap();
            let vals = t.scalar_values().unwrap();
            for g in find_gaps(&t).unwrap() {
                let p = gap_translation_check(&t, &g.alpha, &g.beta).unwrap();
                prop_assert!(p.witness.is_positive());
                prop_assert!(translation_holds(&vals, &g.beta, &p.witness));
                prop_assert!(!translation_holds(&vals, &g.beta, &p.radius));
            }
        }

    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn breakpoints_match_dense_sampling(s in arb_pspec(3)) {
            let t = psum_set(&s, b()).unwrap();
            let vals = t.scalar_values().unwrap();
            let top = vals.last().unwrap() + &Rat::one();
            for g in find_gaps(&t).unwrap() {
                let p = gap_translation_check(&t, &g.alpha, &g.beta).unwrap();
                for i in 1..=600 {
                    let eps = &top * &r(i, 600);
                    prop_assert_eq!(p.predicted_at(&eps), translation_holds(&vals, &g.beta, &eps));
                }
                for bp in &p.breakpoints {
                    prop_assert_eq!(p.predicted_at(&bp.eps), bp.holds);
                }
            }
        }
    }
}
