//! Static SVG pictures of planar (or linear) point sets and their gaps.

use std::fmt::Write;

use spectre_core::series2d::{Axis, AxisGap, RectGap};
use spectre_core::{FiniteSet, Rat};

const SIZE: u32 = 800;
const MARGIN: i64 = 40;

/// What to draw. One-dimensional sets are drawn on the horizontal axis.
#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub points: Vec<(Rat, Rat)>,
    pub rects: Vec<RectGap>,
    pub strips: Vec<AxisGap>,
}

impl Scene {
    pub fn of_set(set: &FiniteSet) -> Option<Scene> {
        let points = set
            .iter()
            .map(|p| match p.dim() {
                1 => Some((p.coord(0).clone(), Rat::zero())),
                2 => Some((p.coord(0).clone(), p.coord(1).clone())),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Scene { points, ..Scene::default() })
    }
}

/// Decimal rendering with 12 significant digits, trailing zeros dropped.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

struct Frame {
    xmin: Rat,
    ymin: Rat,
    scale: Rat,
}

impl Frame {
    /// One exact scale for both axes, so shapes keep their proportions.
    fn fit(points: &[(Rat, Rat)]) -> Frame {
        let xs = points.iter().map(|p| &p.0);
        let ys = points.iter().map(|p| &p.1);
        let xmin = xs.clone().min().cloned().unwrap_or_default();
        let xmax = xs.max().cloned().unwrap_or_default();
        let ymin = ys.clone().min().cloned().unwrap_or_default();
        let ymax = ys.max().cloned().unwrap_or_default();
        let span = (&xmax - &xmin).max(&ymax - &ymin);
        let inner = Rat::int(SIZE as i64 - 2 * MARGIN);
        let scale = if span.is_zero() { Rat::one() } else { &inner / &span };
        Frame { xmin, ymin, scale }
    }

    fn x(&self, v: &Rat) -> String {
        sig12((Rat::int(MARGIN) + (v - &self.xmin) * &self.scale).to_f64())
    }

    fn y(&self, v: &Rat) -> String {
        sig12((Rat::int(SIZE as i64 - MARGIN) - (v - &self.ymin) * &self.scale).to_f64())
    }

    fn len(&self, v: &Rat) -> String {
        sig12((v * &self.scale).to_f64())
    }
}

pub fn render(scene: &Scene) -> String {
    let f = Frame::fit(&scene.points);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    for g in &scene.strips {
        let (lo, hi) = (&g.lo, &g.hi);
        let _ = match g.axis {
            Axis::X => writeln!(
                s,
                r##"<rect x="{}" y="0" width="{}" height="{SIZE}" fill="#4a90d9" fill-opacity="0.15"/>"##,
                f.x(lo),
                f.len(&(hi - lo))
            ),
            Axis::Y => writeln!(
                s,
                r##"<rect x="0" y="{}" width="{SIZE}" height="{}" fill="#d9904a" fill-opacity="0.15"/>"##,
                f.y(hi),
                f.len(&(hi - lo))
            ),
        };
    }
    for g in &scene.rects {
        let _ = writeln!(
            s,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
            f.x(&g.a),
            f.y(&g.d),
            f.len(&(&g.b - &g.a)),
            f.len(&(&g.d - &g.c))
        );
    }
    for (x, y) in &scene.points {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="3" fill="black"/>"#, f.x(x), f.y(y));
    }
    s.push_str("</svg>\n");
    s
}
