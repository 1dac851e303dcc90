use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use spectre_core::hyper::{
    continuity_radius, discontinuity_family, hausdorff, probe_spectre_continuity, random_perturbation,
    refute_spectre_image, ImageVerdict, ProbeReport, ProbeVerdict,
};
use spectre_core::pointset::{center_of_distances, densify_to_netset, is_net_set, is_non_sliding, spectre, SetVerdict};
use spectre_core::psums::{cantor_pair_demo, gap_translation_check, psum_set, PSpec};
use spectre_core::series1d::{
    achievement_set, find_gaps, first_gap_check_1d, series_spectre_checks, third_gap_check,
};
use spectre_core::series2d::{
    achievement_set_2d, axis_gaps, rect_gaps, third_gap_failure_witness, Axis, AxisGap, PlanarAnalysis, RectGap,
    RectReport,
};
use spectre_core::{Budget, DistValue, FiniteSet, LemmaReport, Rat, SeriesSpec, SpectreMode};

use crate::io::{self, FormatError, GroupSpec};
use crate::svg::Scene;
use crate::{
    Cli, CliError, Command, Mode, NetsetAction, NonslidingAction, PlanarAction, ProbeArgs, ProbeKind, PsumAction,
    SeriesAction,
};

/// What a subcommand produced: both renderings, whether every check held,
/// and optionally something to draw.
pub struct Report {
    pub json: Value,
    pub csv: String,
    pub ok: bool,
    pub scene: Option<Scene>,
}

impl Report {
    fn new(json: Value, csv: String) -> Report {
        Report { json, csv, ok: true, scene: None }
    }

    fn ok(mut self, ok: bool) -> Report {
        self.ok = ok;
        self
    }

    fn scene(mut self, scene: Option<Scene>) -> Report {
        self.scene = scene;
        self
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

fn decoded<T>(path: &Path, f: impl Fn(&str) -> std::result::Result<T, FormatError>) -> Result<T> {
    f(&read(path)?).map_err(|e| CliError::Format { path: path.display().to_string(), reason: e.0 })
}

fn load_set(path: &Path) -> Result<FiniteSet> {
    decoded(path, io::decode_set)
}

fn load_series(path: &Path) -> Result<SeriesSpec> {
    decoded(path, io::decode_series)
}

fn load_pspec(path: &Path) -> Result<PSpec> {
    decoded(path, io::decode_pspec)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(|c| field(&c)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn set_csv(set: &FiniteSet) -> String {
    let header: Vec<String> = (1..=set.dim()).map(|i| format!("x{i}")).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv(&header, set.iter().map(|p| p.coords().iter().map(Rat::to_string).collect::<Vec<_>>()))
}

fn set_json(set: &FiniteSet) -> Value {
    json!({ "group": set.ctx().to_string(), "size": set.len(), "points": to_json(set) })
}

fn verdict_report(name: &str, v: &SetVerdict) -> Report {
    let witness = v.witness.as_ref().map_or(String::new(), |w| {
        format!("{{{}, {}}} and {{{}, {}}}", w.pair_a.0, w.pair_a.1, w.pair_b.0, w.pair_b.1)
    });
    Report::new(
        json!({ name: v.holds, "witness": to_json(&v.witness) }),
        csv(&[name, "witness"], [vec![v.holds.to_string(), witness]]),
    )
    .ok(v.holds)
}

fn lemma_csv(reports: &[&LemmaReport]) -> String {
    csv(
        &["lemma", "check", "passed", "detail"],
        reports.iter().flat_map(|r| {
            r.checks.iter().map(|c| vec![r.lemma.clone(), c.name.clone(), c.passed.to_string(), c.detail.clone()])
        }),
    )
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let budget = Budget(cli.budget);
    match &cli.command {
        Command::Spectre { set, mode } => {
            let a = load_set(set)?;
            let mode = match mode {
                Mode::Fast => SpectreMode::Fast,
                Mode::Oracle => SpectreMode::Oracle,
            };
            let s = spectre(&a, mode);
            let mut j = set_json(&s);
            j["display"] = json!(s.to_string());
            Ok(Report::new(j, set_csv(&s)).scene(Scene::of_set(&s)))
        }
        Command::Center { set } => {
            let a = load_set(set)?;
            let c: Vec<String> = center_of_distances(&a).iter().map(DistValue::to_string).collect();
            let rows: Vec<Vec<String>> = c.iter().map(|d| vec![d.clone()]).collect();
            Ok(Report::new(json!({ "group": a.ctx().to_string(), "center": c }), csv(&["distance"], rows)))
        }
        Command::Netset { action: NetsetAction::Check { set } } => {
            Ok(verdict_report("net_set", &is_net_set(&load_set(set)?)))
        }
        Command::Netset { action: NetsetAction::Make { set, eps } } => {
            let b = load_set(set)?;
            let a = densify_to_netset(&b, eps)?;
            let d = hausdorff(&a, &b)?;
            let net = is_net_set(&a).holds;
            let trivial = spectre(&a, SpectreMode::Fast).is_trivial();
            let ok = net && d.lt_radius(eps) && trivial;
            let mut j = set_json(&a);
            j["hausdorff_from_input"] = json!(d.to_string());
            j["net_set"] = json!(net);
            j["spectre_trivial"] = json!(trivial);
            Ok(Report::new(j, set_csv(&a)).ok(ok).scene(Scene::of_set(&a)))
        }
        Command::Nonsliding { action: NonslidingAction::Check { set } } => {
            Ok(verdict_report("non_sliding", &is_non_sliding(&load_set(set)?)))
        }
        Command::Hausdorff { a, b } => {
            let d = hausdorff(&load_set(a)?, &load_set(b)?)?.to_string();
            Ok(Report::new(json!({ "hausdorff": d }), csv(&["hausdorff"], [vec![d.clone()]])))
        }
        Command::Probe { kind } => probe(cli, kind),
        Command::RefuteImage { group, target } => {
            let ctx = GroupSpec::parse_cyclic_product(group).map_err(|e| CliError::Usage(e.0))?;
            let t = load_set(target)?;
            let verdict = refute_spectre_image(&ctx, &t, cli.budget)?;
            let (name, witness) = match &verdict {
                ImageVerdict::Witness(b) => ("witness", b.to_string()),
                ImageVerdict::NotInImage => ("not-in-image", String::new()),
            };
            let scene = match &verdict {
                ImageVerdict::Witness(b) => Scene::of_set(b),
                ImageVerdict::NotInImage => None,
            };
            Ok(Report::new(
                json!({ "group": ctx.to_string(), "target": to_json(&t), "result": to_json(&verdict) }),
                csv(&["verdict", "witness"], [vec![name.to_string(), witness]]),
            )
            .scene(scene))
        }
        Command::Series { action } => series(action, budget),
        Command::Planar { action } => planar(action, budget),
        Command::Psum { action } => psum(action, budget),
    }
}

fn scaled(delta: &DistValue, halvings: u32) -> DistValue {
    let f = Rat::pow2(-(halvings as i32));
    let f = if delta.squared { &f * &f } else { f };
    DistValue { value: &delta.value * &f, squared: delta.squared }
}

fn probe(cli: &Cli, kind: &ProbeKind) -> Result<Report> {
    let (args, usc): (&ProbeArgs, bool) = match kind {
        ProbeKind::Continuity(a) => (a, false),
        ProbeKind::Usc(a) => (a, true),
    };
    let a = load_set(&args.set)?;
    let base_trivial = spectre(&a, SpectreMode::Fast).is_trivial();
    let (family, source) = match &args.family {
        Some(path) => {
            let (ctx, sets) = decoded(path, io::decode_family)?;
            if &ctx != a.ctx() {
                return Err(spectre_core::Error::ContextMismatch.into());
            }
            (sets, "file")
        }
        None if base_trivial => {
            let delta = continuity_radius(&a, &args.eps)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let sets = (0..args.count)
                .map(|n| random_perturbation(&a, &scaled(&delta, n), &mut rng))
                .collect::<spectre_core::Result<Vec<_>>>()?;
            (sets, "random-perturbation")
        }
        None => (discontinuity_family(&a, args.count)?, "moved-maximum"),
    };
    let r: ProbeReport = probe_spectre_continuity(&a, &family, &args.eps)?;
    let ok = if usc {
        r.usc_holds_on_tail()
    } else {
        !(base_trivial && r.verdict == ProbeVerdict::DiscontinuityWitnessed)
    };
    let rows = r.rows.iter().map(|row| {
        vec![
            row.index.to_string(),
            row.input_distance.to_string(),
            row.spectre_distance.to_string(),
            row.usc_ok.to_string(),
        ]
    });
    let table = csv(&["index", "input_distance", "spectre_distance", "usc_ok"], rows);
    let mut j = to_json(&r);
    j["family"] = json!(source);
    j["base_spectre_trivial"] = json!(base_trivial);
    j["usc_holds_on_tail"] = json!(r.usc_holds_on_tail());
    Ok(Report::new(j, table).ok(ok))
}

fn gap_scene(e: &FiniteSet, strips: Vec<AxisGap>, rects: Vec<RectGap>) -> Option<Scene> {
    Scene::of_set(e).map(|s| Scene { strips, rects, ..s })
}

fn series(action: &SeriesAction, budget: Budget) -> Result<Report> {
    match action {
        SeriesAction::Enumerate { series } => {
            let e = achievement_set(&load_series(series)?, budget)?;
            Ok(Report::new(set_json(&e), set_csv(&e)).scene(Scene::of_set(&e)))
        }
        SeriesAction::Gaps { series } => {
            let e = achievement_set(&load_series(series)?, budget)?;
            let gaps = find_gaps(&e)?;
            let rows = gaps.iter().map(|g| {
                vec![g.alpha.to_string(), g.beta.to_string(), g.length().to_string(), g.dominating.to_string()]
            });
            let table = csv(&["alpha", "beta", "length", "dominating"], rows);
            let strips = gaps
                .iter()
                .filter(|g| g.dominating)
                .map(|g| AxisGap { axis: Axis::X, lo: g.alpha.clone(), hi: g.beta.clone() })
                .collect();
            let scene = gap_scene(&e, strips, vec![]);
            Ok(Report::new(json!({ "points": e.len(), "gaps": to_json(&gaps) }), table).scene(scene))
        }
        SeriesAction::ThirdGap { series } => {
            let r = third_gap_check(&load_series(series)?, budget)?;
            let rows = r.matches.iter().map(|m| {
                vec![m.gap.alpha.to_string(), m.gap.beta.to_string(), m.m.map_or(String::new(), |m| m.to_string())]
            });
            let table = csv(&["alpha", "beta", "m"], rows);
            Ok(Report::new(json!({ "passed": r.passed(), "dominating_gaps": to_json(&r.matches) }), table)
                .ok(r.passed()))
        }
        SeriesAction::FirstGap { series, k } => {
            let p = first_gap_check_1d(&load_series(series)?, *k, budget)?;
            let ok = p.as_ref().map_or(true, |p| p.confirmed);
            let row = match &p {
                Some(p) => vec![k.to_string(), "true".into(), p.alpha.to_string(), p.beta.to_string(), p.confirmed.to_string()],
                None => vec![k.to_string(), "false".into(), String::new(), String::new(), String::new()],
            };
            let table = csv(&["k", "hypothesis", "alpha", "beta", "confirmed"], [row]);
            Ok(Report::new(json!({ "k": k, "hypothesis": p.is_some(), "gap": to_json(&p) }), table).ok(ok))
        }
        SeriesAction::SpectreProps { series } => {
            let r = series_spectre_checks(&load_series(series)?, budget)?;
            Ok(Report::new(to_json(&r), lemma_csv(&[&r])).ok(r.passed()))
        }
    }
}

fn planar(action: &PlanarAction, budget: Budget) -> Result<Report> {
    match action {
        PlanarAction::Enumerate { series } => {
            let e = achievement_set_2d(&load_series(series)?, budget)?;
            Ok(Report::new(set_json(&e), set_csv(&e)).scene(Scene::of_set(&e)))
        }
        PlanarAction::Gaps { series, largest } => {
            let e = achievement_set_2d(&load_series(series)?, budget)?;
            let axis = axis_gaps(&e)?;
            let which = if *largest { RectReport::LargestByArea } else { RectReport::All };
            let rects = rect_gaps(&e, which, budget)?;
            let axis_rows = axis.iter().map(|g| {
                let kind = match g.axis {
                    Axis::X => "x-gap",
                    Axis::Y => "y-gap",
                };
                vec![kind.to_string(), g.lo.to_string(), g.hi.to_string(), String::new(), String::new(), String::new()]
            });
            let rect_rows = rects.iter().map(|g| {
                vec![
                    "rect".to_string(),
                    g.a.to_string(),
                    g.b.to_string(),
                    g.c.to_string(),
                    g.d.to_string(),
                    g.area.to_string(),
                ]
            });
            let table = csv(&["kind", "a", "b", "c", "d", "area"], axis_rows.chain(rect_rows));
            let j = json!({ "points": e.len(), "axis_gaps": to_json(&axis), "rect_gaps": to_json(&rects) });
            Ok(Report::new(j, table).scene(gap_scene(&e, axis, rects)))
        }
        PlanarAction::FirstGap { series, k } => {
            let an = PlanarAnalysis::new(&load_series(series)?, budget)?;
            let r = an.first_gap(*k)?;
            let lemma = r.to_lemma_report();
            Ok(Report::new(to_json(&r), lemma_csv(&[&lemma])).ok(r.passed()))
        }
        PlanarAction::SecondGap { series, rect } => {
            let an = PlanarAnalysis::new(&load_series(series)?, budget)?;
            let v = &rect.0;
            let g = RectGap::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
            let r = an.second_gap(&g)?;
            let lemma = r.to_lemma_report();
            let scene = gap_scene(an.achievement_set(), vec![], vec![g]);
            Ok(Report::new(to_json(&r), lemma_csv(&[&lemma])).ok(r.passed()).scene(scene))
        }
        PlanarAction::Example { check } => {
            let r = third_gap_failure_witness();
            let lemma = r.to_lemma_report();
            let mut j = to_json(&r);
            j["display"] = json!(r.points.to_string());
            j["passed"] = json!(r.passed());
            let scene = gap_scene(&r.points, vec![], r.largest_gaps.clone());
            Ok(Report::new(j, lemma_csv(&[&lemma])).ok(!check || r.passed()).scene(scene))
        }
    }
}

fn psum(action: &PsumAction, budget: Budget) -> Result<Report> {
    match action {
        PsumAction::Enumerate { pspec } => {
            let t = psum_set(&load_pspec(pspec)?, budget)?;
            Ok(Report::new(set_json(&t), set_csv(&t)).scene(Scene::of_set(&t)))
        }
        PsumAction::GapTranslate { pspec, gap } => {
            let t = psum_set(&load_pspec(pspec)?, budget)?;
            let (a, b) = (&gap.0[0], &gap.0[1]);
            let p = gap_translation_check(&t, a, b)?;
            let rows = p.breakpoints.iter().map(|bp| vec![bp.eps.to_string(), bp.holds.to_string()]);
            let table = csv(&["epsilon", "holds"], rows);
            let strips = vec![AxisGap { axis: Axis::X, lo: a.clone(), hi: b.clone() }];
            Ok(Report::new(to_json(&p), table).scene(gap_scene(&t, strips, vec![])))
        }
        PsumAction::CantorDemo { levels } => {
            let d = cantor_pair_demo(*levels)?;
            let rows = d.rows.iter().map(|r| vec![r.level.to_string(), r.epsilon.to_string()]);
            Ok(Report::new(to_json(&d), csv(&["level", "epsilon"], rows)).ok(d.strictly_decreasing))
        }
    }
}
