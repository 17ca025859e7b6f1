//! Self-contained SVG and CSV renderings: root locations of `p` and `p'`,
//! boundary images, and the hyperbola region against the unit disc.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::certify::{region_disjointness, RegionSpec, TIE_TOL};
use crate::oracle::boundary_curve;
use crate::polycore::{roots, Poly, PolyError, DEFAULT_ROOT_TOL};

const SIZE: f64 = 480.0;
const UNIT_CIRCLE_VERTICES: usize = 256;
const HYPERBOLA_VERTICES: usize = 400;

#[derive(Debug, Error)]
pub enum PlotError {
    #[error("unknown plot kind `{0}` (valid kinds: roots, boundary-image, region)")]
    UnknownKind(String),
    #[error("unknown format `{0}` (valid formats: svg, csv)")]
    UnknownFormat(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    Roots,
    BoundaryImage,
    Region,
}

impl FromStr for PlotKind {
    type Err = PlotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "roots" => Ok(PlotKind::Roots),
            "boundary-image" => Ok(PlotKind::BoundaryImage),
            "region" => Ok(PlotKind::Region),
            other => Err(PlotError::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotFormat {
    Svg,
    Csv,
}

impl FromStr for PlotFormat {
    type Err = PlotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(PlotFormat::Svg),
            "csv" => Ok(PlotFormat::Csv),
            other => Err(PlotError::UnknownFormat(other.to_string())),
        }
    }
}

/// Maps a rectangle of the complex plane onto a square canvas, `y` up.
struct Frame {
    x0: f64,
    y0: f64,
    span: f64,
}

impl Frame {
    fn around(points: impl IntoIterator<Item = Complex64>) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
        for p in points {
            x0 = x0.min(p.re);
            x1 = x1.max(p.re);
            y0 = y0.min(p.im);
            y1 = y1.max(p.im);
        }
        let span = (x1 - x0).max(y1 - y0) * 1.15;
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        Frame {
            x0: cx - span / 2.0,
            y0: cy - span / 2.0,
            span,
        }
    }

    fn map(&self, z: Complex64) -> (f64, f64) {
        (
            (z.re - self.x0) / self.span * SIZE,
            SIZE - (z.im - self.y0) / self.span * SIZE,
        )
    }

    fn units(&self, len: f64) -> f64 {
        len / self.span * SIZE
    }
}

struct Svg {
    frame: Frame,
    body: String,
}

impl Svg {
    fn new(frame: Frame, title: &str) -> Self {
        let mut svg = Svg {
            frame,
            body: String::new(),
        };
        let _ = writeln!(svg.body, "<title>{title}</title>");
        svg.body.push_str("<rect width=\"100%\" height=\"100%\" style=\"fill:#ffffff\"/>\n");
        svg.axes();
        svg
    }

    fn axes(&mut self) {
        let f = &self.frame;
        let (ox, oy) = f.map(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            self.body,
            "<line x1=\"0\" y1=\"{oy:.3}\" x2=\"{SIZE}\" y2=\"{oy:.3}\" style=\"stroke:#cccccc;stroke-width:1\"/>"
        );
        let _ = writeln!(
            self.body,
            "<line x1=\"{ox:.3}\" y1=\"0\" x2=\"{ox:.3}\" y2=\"{SIZE}\" style=\"stroke:#cccccc;stroke-width:1\"/>"
        );
    }

    fn polyline(&mut self, pts: &[Complex64], closed: bool, style: &str) {
        let tag = if closed { "polygon" } else { "polyline" };
        let mut coords = String::new();
        for (k, p) in pts.iter().enumerate() {
            let (x, y) = self.frame.map(*p);
            if k > 0 {
                coords.push(' ');
            }
            let _ = write!(coords, "{x:.3},{y:.3}");
        }
        let _ = writeln!(self.body, "<{tag} points=\"{coords}\" style=\"fill:none;{style}\"/>");
    }

    fn dot(&mut self, z: Complex64, radius: f64, style: &str) {
        let (x, y) = self.frame.map(z);
        let _ = writeln!(
            self.body,
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{radius}\" style=\"{style}\"/>"
        );
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n{}</svg>\n",
            self.body
        )
    }
}

fn unit_circle() -> Vec<Complex64> {
    (0..UNIT_CIRCLE_VERTICES)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / UNIT_CIRCLE_VERTICES as f64))
        .collect()
}

const PRIMARY: &str = "fill:#000000";
const SECONDARY: &str = "fill:#888888";
const DISC: &str = "stroke:#4477aa;stroke-width:1;stroke-dasharray:4,3";

/// Roots of `p` (black) and `p'` (grey), with the unit circle for scale.
pub fn roots_plot(p: &Poly<Complex64>, format: PlotFormat) -> Result<String, PlotError> {
    let primary = roots(p, DEFAULT_ROOT_TOL)?;
    let dp = p.derivative();
    let secondary = if dp.degree() >= 1 {
        Some(roots(&dp, DEFAULT_ROOT_TOL)?)
    } else {
        None
    };
    let sets = std::iter::once(("p", &primary)).chain(secondary.iter().map(|s| ("dp", s)));

    match format {
        PlotFormat::Csv => {
            let mut out = String::from("set,re,im,multiplicity\n");
            for (name, set) in sets {
                for (r, m) in set.roots.iter().zip(&set.multiplicities) {
                    let _ = writeln!(out, "{name},{:.12},{:.12},{m}", r.re, r.im);
                }
            }
            Ok(out)
        }
        PlotFormat::Svg => {
            let all: Vec<Complex64> = sets.clone().flat_map(|(_, s)| s.roots.clone()).collect();
            let mut svg = Svg::new(Frame::around(all), "roots of p (black) and p' (grey)");
            svg.polyline(&unit_circle(), true, DISC);
            for (name, set) in sets {
                let (radius, style) = if name == "p" { (5.0, PRIMARY) } else { (4.0, SECONDARY) };
                for r in &set.roots {
                    svg.dot(*r, radius, style);
                }
            }
            Ok(svg.finish())
        }
    }
}

/// Image of the circle `|z| = r` sampled at `n` points.
pub fn boundary_plot(p: &Poly<Complex64>, r: f64, n: usize, format: PlotFormat) -> String {
    let curve = boundary_curve(p, r, n);
    match format {
        PlotFormat::Csv => {
            let mut out = String::from("k,re,im\n");
            for (k, v) in curve.iter().enumerate() {
                let _ = writeln!(out, "{k},{:.12},{:.12}", v.re, v.im);
            }
            out
        }
        PlotFormat::Svg => {
            let mut svg = Svg::new(
                Frame::around(curve.iter().copied()),
                &format!("image of |z| = {r}"),
            );
            svg.polyline(&curve, true, "stroke:#000000;stroke-width:0.8");
            svg.finish()
        }
    }
}

/// Branches of `(x + a)^2 - y^2 = t` within the window `[x0, x1] x [y0, y1]`.
fn hyperbola_branches(a: f64, t: f64, x0: f64, x1: f64, y0: f64, y1: f64) -> Vec<Vec<Complex64>> {
    let n = HYPERBOLA_VERTICES;
    let lerp = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
    let mut branches = Vec::new();
    if t > 0.0 {
        for side in [-1.0, 1.0] {
            let pts = (0..n)
                .map(|k| {
                    let y = lerp(y0, y1, k);
                    Complex64::new(-a + side * (t + y * y).sqrt(), y)
                })
                .collect();
            branches.push(pts);
        }
    } else {
        for side in [-1.0, 1.0] {
            let pts = (0..n)
                .map(|k| {
                    let x = lerp(x0, x1, k);
                    Complex64::new(x, side * ((x + a).powi(2) - t).sqrt())
                })
                .collect();
            branches.push(pts);
        }
    }
    branches
}

/// Unit circle, the level curve `Re((z + a)^2) = t`, and the contact or
/// witness points of the disjointness test.
pub fn region_plot(a: f64, t: f64, format: PlotFormat) -> String {
    let result = region_disjointness(RegionSpec { a, t }, TIE_TOL);
    let (x0, x1) = ((-a - 1.5).min(-1.5), (-a + 1.5).max(1.5));
    let (y0, y1) = (-2.0, 2.0);
    let branches = hyperbola_branches(a, t, x0, x1, y0, y1);
    match format {
        PlotFormat::Csv => {
            let mut out = String::from("curve,x,y\n");
            for z in unit_circle() {
                let _ = writeln!(out, "circle,{:.12},{:.12}", z.re, z.im);
            }
            for (k, branch) in branches.iter().enumerate() {
                for z in branch {
                    let _ = writeln!(out, "hyperbola{k},{:.12},{:.12}", z.re, z.im);
                }
            }
            for z in &result.contact_points {
                let _ = writeln!(out, "{:?},{:.12},{:.12}", result.relation, z.re, z.im);
            }
            out
        }
        PlotFormat::Svg => {
            let frame = Frame::around([Complex64::new(x0, y0), Complex64::new(x1, y1)]);
            let title = format!(
                "Re((z+{a})^2) = {t} against the unit disc: {:?}",
                result.relation
            );
            let mut svg = Svg::new(frame, &title);
            svg.polyline(&unit_circle(), true, "stroke:#000000;stroke-width:1.2");
            for b in &branches {
                svg.polyline(b, false, "stroke:#aa3377;stroke-width:1.2");
            }
            let r = svg.frame.units(0.03).max(3.0);
            for z in &result.contact_points {
                svg.dot(*z, r, "fill:#ee7733");
            }
            svg.finish()
        }
    }
}
