//! JSON file formats: sets, families of sets, series and P-sum specs.
//! Rationals are always `"p/q"` strings.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use spectre_core::psums::PSpec;
use spectre_core::{parse_rat, FiniteSet, GroupCtx, Metric, Point, Rat, SeriesSpec};

/// A decode failure, tagged with the position in the file it refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

type Result<T> = std::result::Result<T, FormatError>;

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum GroupSpec {
    Qd {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        metric: Option<String>,
    },
    FinAb {
        moduli: Vec<u64>,
    },
}

impl GroupSpec {
    pub fn to_ctx(&self) -> Result<GroupCtx> {
        match self {
            GroupSpec::Qd { dim, metric } => {
                if *dim == 0 {
                    return fail("group.dim must be positive");
                }
                let metric = match metric.as_deref() {
                    None => Metric::Sup,
                    Some(m) => match Metric::parse(m) {
                        Some(m) => m,
                        None => return fail(format!("group.metric: unknown metric {m:?}")),
                    },
                };
                Ok(GroupCtx::rational_with(*dim, metric))
            }
            GroupSpec::FinAb { moduli } => GroupCtx::finite(moduli.clone()).map_err(|e| FormatError(format!("group: {e}"))),
        }
    }

    pub fn from_ctx(ctx: &GroupCtx) -> GroupSpec {
        match ctx {
            GroupCtx::RationalSpace { dim, metric } => {
                GroupSpec::Qd { dim: *dim, metric: Some(metric.name().to_string()) }
            }
            GroupCtx::FiniteAbelian { moduli } => GroupSpec::FinAb { moduli: moduli.clone() },
        }
    }

    /// Parses `Z6` or `Z2xZ4`.
    pub fn parse_cyclic_product(text: &str) -> Result<GroupCtx> {
        let moduli = text
            .split(['x', 'X'])
            .map(|part| {
                part.trim()
                    .strip_prefix('Z')
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| FormatError(format!("group {text:?}: expected factors like Z6")))
            })
            .collect::<Result<Vec<u64>>>()?;
        GroupCtx::finite(moduli).map_err(|e| FormatError(format!("group {text:?}: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetFile {
    group: GroupSpec,
    points: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    group: GroupSpec,
    sets: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesFile {
    terms: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PSpecFile {
    #[serde(rename = "P")]
    p: Vec<String>,
    terms: Vec<String>,
}

fn json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| FormatError(format!("invalid JSON: {e}")))
}

fn rat_at(text: &str, at: &str) -> Result<Rat> {
    parse_rat(text).map_err(|e| FormatError(format!("{at}: {e}")))
}

fn point_at(coords: &[String], at: &str) -> Result<Point> {
    let c = coords
        .iter()
        .enumerate()
        .map(|(i, t)| rat_at(t, &format!("{at}[{i}]")))
        .collect::<Result<Vec<Rat>>>()?;
    Ok(Point::new(c))
}

fn points_in(ctx: &GroupCtx, raw: &[Vec<String>], at: &str) -> Result<FiniteSet> {
    if raw.is_empty() {
        return fail(format!("{at}: the set is empty"));
    }
    let mut seen: HashMap<Point, usize> = HashMap::new();
    let mut pts = Vec::with_capacity(raw.len());
    for (i, coords) in raw.iter().enumerate() {
        let here = format!("{at}[{i}]");
        let p = point_at(coords, &here)?;
        ctx.check(&p).map_err(|e| FormatError(format!("{here}: {e}")))?;
        if let Some(j) = seen.insert(p.clone(), i) {
            return fail(format!("{here}: duplicates {at}[{j}]"));
        }
        pts.push(p);
    }
    FiniteSet::new(ctx.clone(), pts).map_err(|e| FormatError(format!("{at}: {e}")))
}

fn raw_points(set: &FiniteSet) -> Vec<Vec<String>> {
    set.iter().map(|p| p.coords().iter().map(Rat::to_string).collect()).collect()
}

pub fn decode_set(text: &str) -> Result<FiniteSet> {
    let f: SetFile = json(text)?;
    let ctx = f.group.to_ctx()?;
    points_in(&ctx, &f.points, "points")
}

pub fn encode_set(set: &FiniteSet) -> String {
    let f = SetFile { group: GroupSpec::from_ctx(set.ctx()), points: raw_points(set) };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn decode_family(text: &str) -> Result<(GroupCtx, Vec<FiniteSet>)> {
    let f: FamilyFile = json(text)?;
    let ctx = f.group.to_ctx()?;
    if f.sets.is_empty() {
        return fail("sets: the family is empty");
    }
    let sets = f
        .sets
        .iter()
        .enumerate()
        .map(|(i, raw)| points_in(&ctx, raw, &format!("sets[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok((ctx, sets))
}

pub fn encode_family(ctx: &GroupCtx, sets: &[FiniteSet]) -> String {
    let f = FamilyFile { group: GroupSpec::from_ctx(ctx), sets: sets.iter().map(raw_points).collect() };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn decode_series(text: &str) -> Result<SeriesSpec> {
    let f: SeriesFile = json(text)?;
    let terms = f
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| point_at(t, &format!("terms[{i}]")))
        .collect::<Result<Vec<Point>>>()?;
    let dim = terms.first().map_or(1, Point::dim);
    if dim == 0 {
        return fail("terms[0]: a term needs at least one coordinate");
    }
    if let Some(i) = terms.iter().position(|t| t.dim() != dim) {
        return fail(format!("terms[{i}]: expected {dim} coordinates, found {}", terms[i].dim()));
    }
    SeriesSpec::new(dim, terms).map_err(|e| FormatError(format!("terms: {e}")))
}

pub fn encode_series(s: &SeriesSpec) -> String {
    let terms = s.terms().iter().map(|p| p.coords().iter().map(Rat::to_string).collect()).collect();
    serde_json::to_string_pretty(&SeriesFile { terms }).expect("serializable")
}

pub fn decode_pspec(text: &str) -> Result<PSpec> {
    let f: PSpecFile = json(text)?;
    let p = f.p.iter().enumerate().map(|(i, t)| rat_at(t, &format!("P[{i}]"))).collect::<Result<Vec<_>>>()?;
    let terms =
        f.terms.iter().enumerate().map(|(i, t)| rat_at(t, &format!("terms[{i}]"))).collect::<Result<Vec<_>>>()?;
    PSpec::new(p, terms).map_err(|e| FormatError(format!("P: {e}")))
}

pub fn encode_pspec(s: &PSpec) -> String {
    let f = PSpecFile {
        p: s.p().iter().map(Rat::to_string).collect(),
        terms: s.terms().iter().map(Rat::to_string).collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use spectre_core::series2d::example_series;

    #[test]
    fn set_round_trip() {
        let text = r#"{"group": {"type": "Qd", "dim": 2, "metric": "taxicab"},
                       "points": [["1/2", "0.25"], ["-3", "6/4"]]}"#;
        let s = decode_set(text).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(decode_set(&encode_set(&s)).unwrap(), s);
    }

    #[test]
    fn planar_series_round_trip() {
        let s = example_series();
        assert_eq!(decode_series(&encode_series(&s)).unwrap(), s);
    }

    #[test]
    fn duplicates_are_rejected_with_position() {
        let text = r#"{"group": {"type": "Qd", "dim": 1}, "points": [["0"], ["1/2"], ["2/4"]]}"#;
        let e = decode_set(text).unwrap_err();
        assert!(e.0.contains("points[2]") && e.0.contains("points[1]"), "{e}");
    }

    #[test]
    fn residues_must_be_below_modulus() {
        let text = r#"{"group": {"type": "FinAb", "moduli": [6]}, "points": [["0"], ["6"]]}"#;
        let e = decode_set(text).unwrap_err();
        assert!(e.0.contains("points[1]"), "{e}");
        let ok = r#"{"group": {"type": "FinAb", "moduli": [6]}, "points": [["0"], ["5"]]}"#;
        assert_eq!(decode_set(ok).unwrap(), FiniteSet::residues(6, &[0, 5]).unwrap());
    }

    #[test]
    fn malformed_inputs() {
        assert!(decode_set(r#"{"group": {"type": "Qd", "dim": 1}, "points": [["1/0"]]}"#).is_err());
        assert!(decode_set(r#"{"group": {"type": "Qd", "dim": 2}, "points": [["1"]]}"#).is_err());
        assert!(decode_set(r#"{"group": {"type": "Qd", "dim": 1}, "points": []}"#).is_err());
        assert!(decode_set(r#"{"group": {"type": "Qd", "dim": 1, "metric": "l7"}, "points": [["1"]]}"#).is_err());
        assert!(decode_series(r#"{"terms": [["1"], ["1", "2"]]}"#).is_err());
        assert!(decode_pspec(r#"{"P": ["1", "2"], "terms": ["1"]}"#).is_err());
    }

    #[test]
    fn pspec_and_family_round_trip() {
        let p = decode_pspec(r#"{"P": ["0", "1", "2"], "terms": ["1/4", "1/16"]}"#).unwrap();
        assert_eq!(decode_pspec(&encode_pspec(&p)).unwrap(), p);
        let ctx = GroupCtx::rational(1);
        let sets = vec![FiniteSet::scalars([Rat::zero()]).unwrap(), FiniteSet::scalars([Rat::one()]).unwrap()];
        assert_eq!(decode_family(&encode_family(&ctx, &sets)).unwrap(), (ctx, sets));
    }

    #[test]
    fn cyclic_products() {
        assert_eq!(GroupSpec::parse_cyclic_product("Z6").unwrap(), GroupCtx::cyclic(6));
        assert_eq!(GroupSpec::parse_cyclic_product("Z2xZ4").unwrap(), GroupCtx::finite(vec![2, 4]).unwrap());
        assert!(GroupSpec::parse_cyclic_product("Q2").is_err());
        assert!(GroupSpec::parse_cyclic_product("Z1").is_err());
    }
}
