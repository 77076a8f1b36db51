//! SVG pictures of two-dimensional solution sets.
//!
//! In the plane, the scalar multiples `αx` of a vector form a line of slope 1
//! through it, and the span of a set of generators is the region between the
//! steepest such lines: `d_min <= x₂ − x₁ <= d_max`, where each generator
//! contributes its own `x₂ − x₁` (a generator with a `𝟘` component makes the
//! region unbounded on that side). Regions are clipped to a square window and
//! hatched.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::optimizer::{complete_solution_with, extended_interval, extended_solution, SolveOptions, SpanProblem};

const PANEL: f64 = 300.0;
const MARGIN: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotOptions {
    /// Lower and upper coordinate of the square window.
    pub window: (f64, f64),
    pub solve: SolveOptions,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            window: (-10.0, 10.0),
            solve: SolveOptions::default(),
        }
    }
}

/// One picture: the span of `generators`, their lines, and labelled points.
#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub generators: Matrix,
    pub generator_labels: Vec<String>,
    pub points: Vec<(String, Vector)>,
}

/// Slope-1 offset `x₂ − x₁` of a nonzero 2-vector; `𝟘` components give ±∞.
fn offset(v: &Vector) -> f64 {
    match (v[0].to_f64(), v[1].to_f64()) {
        (Some(a), Some(b)) => b - a,
        (Some(_), None) => f64::NEG_INFINITY,
        (None, Some(_)) => f64::INFINITY,
        (None, None) => f64::NAN,
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// Clips a convex polygon to `y − x <= c` (or `>= c` when `upper` is false).
fn clip(poly: &[(f64, f64)], c: f64, upper: bool) -> Vec<(f64, f64)> {
    if !c.is_finite() {
        return poly.to_vec();
    }
    let side = |p: (f64, f64)| {
        let d = p.1 - p.0 - c;
        if upper {
            -d
        } else {
            d
        }
    };
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let (sa, sb) = (side(a), side(b));
        if sa >= 0.0 {
            out.push(a);
        }
        if (sa >= 0.0) != (sb >= 0.0) {
            let t = sa / (sa - sb);
            out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
        }
    }
    out
}

struct Frame {
    lo: f64,
    hi: f64,
    left: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + MARGIN + (x - self.lo) / (self.hi - self.lo) * PANEL
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN + (self.hi - y) / (self.hi - self.lo) * PANEL
    }

    /// Segment of the line `y − x = d` inside the window, if any.
    fn diagonal(&self, d: f64) -> Option<((f64, f64), (f64, f64))> {
        let x0 = self.lo.max(self.lo - d);
        let x1 = self.hi.min(self.hi - d);
        (x0 <= x1).then_some(((x0, x0 + d), (x1, x1 + d)))
    }
}

fn render_panel(out: &mut String, panel: &Panel, frame: &Frame) {
    let (lo, hi) = (frame.lo, frame.hi);
    let _ = writeln!(
        out,
        r#"  <g class="panel"><text x="{:.1}" y="18" class="title">{}</text>"#,
        frame.left + MARGIN,
        panel.title
    );
    let _ = writeln!(
        out,
        r#"    <rect x="{:.1}" y="{MARGIN}" width="{PANEL}" height="{PANEL}" class="frame"/>"#,
        frame.left + MARGIN
    );
    if lo < 0.0 && hi > 0.0 {
        let _ = writeln!(
            out,
            r#"    <line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" class="axis"/>"#,
            frame.px(lo),
            frame.py(0.0),
            frame.px(hi),
            frame.py(0.0)
        );
        let _ = writeln!(
            out,
            r#"    <line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" class="axis"/>"#,
            frame.px(0.0),
            frame.py(lo),
            frame.px(0.0),
            frame.py(hi)
        );
    }

    let offsets: Vec<f64> = panel.generators.columns().map(|c| offset(&c)).collect();
    let dmin = offsets.iter().copied().fold(f64::INFINITY, f64::min);
    let dmax = offsets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if dmin < dmax {
        let square = [(lo, lo), (hi, lo), (hi, hi), (lo, hi)];
        let region = clip(&clip(&square, dmax, true), dmin, false);
        if region.len() >= 3 {
            let pts: Vec<String> = region
                .iter()
                .map(|&(x, y)| format!("{:.1},{:.1}", frame.px(x), frame.py(y)))
                .collect();
            let _ = writeln!(out, r#"    <polygon points="{}" class="region"/>"#, pts.join(" "));
        }
    }

    for (label, d) in panel.generator_labels.iter().zip(&offsets) {
        if let Some(((x0, y0), (x1, y1))) = d.is_finite().then(|| frame.diagonal(*d)).flatten() {
            let _ = writeln!(
                out,
                r#"    <line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" class="ray"/>"#,
                frame.px(x0),
                frame.py(y0),
                frame.px(x1),
                frame.py(y1)
            );
            let _ = writeln!(
                out,
                r#"    <text x="{:.1}" y="{:.1}" class="label">{label}</text>"#,
                frame.px(x1) - 18.0,
                frame.py(y1) + 14.0
            );
        }
    }

    for (label, p) in &panel.points {
        let (Some(x), Some(y)) = (p[0].to_f64(), p[1].to_f64()) else {
            continue;
        };
        if x < lo || x > hi || y < lo || y > hi {
            continue;
        }
        let _ = writeln!(
            out,
            r#"    <circle cx="{:.1}" cy="{:.1}" r="3" class="point"/><text x="{:.1}" y="{:.1}" class="label">{label}</text>"#,
            frame.px(x),
            frame.py(y),
            frame.px(x) + 5.0,
            frame.py(y) - 5.0
        );
    }
    out.push_str("  </g>\n");
}

/// Side-by-side panels in one SVG document.
pub fn render(panels: &[Panel], window: (f64, f64)) -> Result<String> {
    for p in panels {
        check_dim(p.generators.rows())?;
        if let Some((_, v)) = p.points.iter().find(|(_, v)| v.dim() != 2) {
            return Err(Error::UnsupportedDimension(v.dim()));
        }
    }
    let (lo, hi) = window;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::Validation(format!("empty plot window [{lo}, {hi}]")));
    }
    let width = panels.len() as f64 * (PANEL + 2.0 * MARGIN);
    let height = PANEL + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out.push_str(concat!(
        "  <defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(-45)\">",
        "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#4a6fa5\" stroke-width=\"1\"/></pattern></defs>\n",
        "  <style>.title{font:14px sans-serif}.label{font:12px serif;font-style:italic}",
        ".frame{fill:none;stroke:#999}.axis{stroke:#bbb}.region{fill:url(#hatch);stroke:none}",
        ".ray{stroke:#1d3557;stroke-width:1.5}.point{fill:#e63946}</style>\n",
    ));
    for (i, panel) in panels.iter().enumerate() {
        let frame = Frame {
            lo,
            hi,
            left: i as f64 * (PANEL + 2.0 * MARGIN),
        };
        render_panel(&mut out, panel, &frame);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn labelled(prefix: &str, m: &Matrix) -> Vec<String> {
    (1..=m.cols()).map(|j| format!("{prefix}{j}")).collect()
}

/// Partial (`αq`), extended (`αx′ <= x <= αx″`) and complete (span of `S₀`)
/// solution sets of a two-dimensional problem.
pub fn plot_solution(prob: &SpanProblem, opts: &PlotOptions) -> Result<String> {
    check_dim(prob.q().dim())?;
    let iv = extended_interval(prob);
    let lower = iv.lower().clone();
    let upper = iv.upper().clone();
    let ext = extended_solution(prob).generators().clone();
    let s0 = complete_solution_with(prob, &opts.solve)?.generators.generators().clone();
    let partial = Panel {
        title: "partial".into(),
        generators: prob.q().as_column(),
        generator_labels: vec!["q".into()],
        points: vec![("q".into(), prob.q().clone())],
    };
    let extended = Panel {
        title: "extended".into(),
        generator_labels: if lower == upper { vec![String::new(); ext.cols()] } else { labelled("s", &ext) },
        generators: ext,
        points: vec![("x′".into(), lower), ("x″".into(), upper)],
    };
    let complete = Panel {
        title: "complete".into(),
        generator_labels: labelled("s", &s0),
        generators: s0,
        points: Vec::new(),
    };
    render(&[partial, extended, complete], opts.window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matrix {
        s.parse().unwrap()
    }

    fn v(s: &str) -> Vector {
        s.parse().unwrap()
    }

    fn small() -> SpanProblem {
        SpanProblem::new(m("2 0; 4 1"), v("5 2"), v("1 2")).unwrap()
    }

    #[test]
    fn three_panels_for_small_problem() {
        let svg = plot_solution(&small(), &PlotOptions::default()).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("class=\"panel\"").count(), 3);
        // the strip between x′ and x″ and the half-plane of S₀
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert!(svg.contains(">x′<") && svg.contains(">x″<"));
        assert!(svg.contains(">s1<") && svg.contains(">s2<"));
        assert_eq!(svg, plot_solution(&small(), &PlotOptions::default()).unwrap());
    }

    #[test]
    fn strip_geometry() {
        // offsets of x′ = (1,−1) and x″ = (1,2) are −2 and 1
        let square = [(-10.0, -10.0), (10.0, -10.0), (10.0, 10.0), (-10.0, 10.0)];
        let region = clip(&clip(&square, 1.0, true), -2.0, false);
        assert!(region.iter().all(|&(x, y)| (-2.0 - 1e-9..=1.0 + 1e-9).contains(&(y - x))));
        assert_eq!(region.len(), 6);
        assert_eq!(offset(&v("0 -inf")), f64::NEG_INFINITY);
        assert_eq!(offset(&v("-inf 0")), f64::INFINITY);
    }

    #[test]
    fn degenerate_interval_is_a_single_ray() {
        let panel = Panel {
            title: "ray".into(),
            generators: m("0 1; 2 3"),
            generator_labels: vec!["g".into(), "g".into()],
            points: vec![],
        };
        let svg = render(&[panel], (-10.0, 10.0)).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 0);
        assert_eq!(svg.matches("class=\"ray\"").count(), 2);
        let first = svg.lines().find(|l| l.contains("class=\"ray\"")).unwrap();
        let second = svg.lines().filter(|l| l.contains("class=\"ray\"")).nth(1).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn rejects_other_dimensions() {
        let prob = SpanProblem::new(m("1 2 3"), v("0"), v("0 0 0")).unwrap();
        assert_eq!(
            plot_solution(&prob, &PlotOptions::default()).unwrap_err(),
            Error::UnsupportedDimension(3)
        );
        let bad = PlotOptions {
            window: (1.0, 1.0),
            ..PlotOptions::default()
        };
        assert!(plot_solution(&small(), &bad).is_err());
    }
}
