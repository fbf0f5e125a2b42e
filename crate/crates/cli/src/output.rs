//! Artifact emitters: JSON boundary wrapper, CSV point tables, and a small
//! self-contained SVG writer for region/ellipse/cloud plots.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use serde::Serialize;

use cnrange::{Ellipse, Region, C64};

/// Print to stdout or write the file named by `--out`.
pub fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

/// Wire form for a sampled boundary: `{"points": [[re, im], ...]}`.
#[derive(Serialize)]
pub struct Boundary {
    points: Vec<[f64; 2]>,
}

impl Boundary {
    pub fn new(points: &[C64]) -> Self {
        Boundary {
            points: points.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Two-column table with a header row; floats use shortest round-trip form.
pub fn csv_points(points: &[C64]) -> String {
    let mut text = String::from("re,im\n");
    for z in points {
        text.push_str(&format!("{},{}\n", z.re, z.im));
    }
    text
}

/// Boundary points reconstructed from the sampled support function: with
/// `h(θ)` the support value and `h'` its central difference, the touching
/// point of the supporting line at direction `u(θ)` is `h·u + h'·u⊥`.
pub fn region_polygon(region: &Region) -> Vec<C64> {
    let count = region.angle_count();
    let support = region.support();
    let step = 2.0 * std::f64::consts::PI / count as f64;
    (0..count)
        .map(|k| {
            let h = support[k];
            let hp = (support[(k + 1) % count] - support[(k + count - 1) % count]) / (2.0 * step);
            let theta = region.theta(k);
            let (sin, cos) = theta.sin_cos();
            C64::new(h * cos - hp * sin, h * sin + hp * cos)
        })
        .collect()
}

/// Everything one plot can carry: a closed boundary polygon, a point cloud
/// (subsampled when large), and an ellipse overlay.
pub struct Scene {
    pub polygon: Vec<C64>,
    pub cloud: Vec<C64>,
    pub ellipse: Option<Ellipse>,
}

/// Bounding box in mathematical coordinates (y grows upward).
struct BBox {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl BBox {
    fn empty() -> Self {
        BBox {
            min_x: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            min_y: f64::INFINITY,
            max_y: f64::NEG_INFINITY,
        }
    }

    fn add(&mut self, x: f64, y: f64) {
        self.min_x = self.min_x.min(x);
        self.max_x = self.max_x.max(x);
        self.min_y = self.min_y.min(y);
        self.max_y = self.max_y.max(y);
    }
}

/// Fixed six-decimal float form keeps the SVG byte-stable across runs.
fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

impl Scene {
    pub fn new() -> Self {
        Scene {
            polygon: Vec::new(),
            cloud: Vec::new(),
            ellipse: None,
        }
    }

    fn bbox(&self) -> BBox {
        let mut bbox = BBox::empty();
        for z in self.polygon.iter().chain(self.cloud.iter()) {
            bbox.add(z.re, z.im);
        }
        if let Some(ell) = &self.ellipse {
            // Axis-aligned extents of a rotated ellipse around its center.
            let (a, b, phi) = (ell.semi_major(), ell.semi_minor(), ell.angle());
            let dx = ((a * phi.cos()).powi(2) + (b * phi.sin()).powi(2)).sqrt();
            let dy = ((a * phi.sin()).powi(2) + (b * phi.cos()).powi(2)).sqrt();
            let c = ell.center();
            bbox.add(c.re - dx, c.im - dy);
            bbox.add(c.re + dx, c.im + dy);
        }
        if !bbox.min_x.is_finite() {
            bbox = BBox::empty();
            bbox.add(-1.0, -1.0);
            bbox.add(1.0, 1.0);
        }
        bbox
    }

    /// Render as standalone SVG. The viewBox is the content bounding box
    /// plus 5% padding per side; geometry lives in mathematical coordinates
    /// inside a y-flipping group so the picture reads with y upward.
    pub fn render(&self) -> String {
        let mut bbox = self.bbox();
        // Floor for degenerate content (a single point or a flat segment).
        let extent = (bbox.max_x - bbox.min_x).max(bbox.max_y - bbox.min_y);
        let floor = if extent > 1e-9 { 0.0 } else { 1.0 };
        let pad = 0.05 * extent + floor;
        bbox.min_x -= pad;
        bbox.max_x += pad;
        bbox.min_y -= pad;
        bbox.max_y += pad;
        let width = bbox.max_x - bbox.min_x;
        let height = bbox.max_y - bbox.min_y;
        let px_height = (640.0 * height / width).round().max(1.0);
        let stroke = 0.008 * width.max(height);
        let dot = 0.005 * width.max(height);

        let mut svg = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" \
             width=\"640\" height=\"{px_height}\">\n",
            fmt(bbox.min_x),
            fmt(-bbox.max_y),
            fmt(width),
            fmt(height),
        ));
        svg.push_str(
            "  <g transform=\"matrix(1 0 0 -1 0 0)\" fill=\"none\" stroke-linejoin=\"round\" \
             stroke-linecap=\"round\">\n",
        );

        if self.polygon.len() >= 2 {
            let points: Vec<String> = self
                .polygon
                .iter()
                .map(|z| format!("{},{}", fmt(z.re), fmt(z.im)))
                .collect();
            svg.push_str(&format!(
                "    <polygon points=\"{}\" stroke=\"#1f77b4\" stroke-width=\"{}\"/>\n",
                points.join(" "),
                fmt(stroke),
            ));
        }

        if !self.cloud.is_empty() {
            let step = (self.cloud.len() / 1000).max(1);
            for z in self.cloud.iter().step_by(step) {
                svg.push_str(&format!(
                    "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#808080\" \
                     fill-opacity=\"0.45\"/>\n",
                    fmt(z.re),
                    fmt(z.im),
                    fmt(dot),
                ));
            }
        }

        if let Some(ell) = &self.ellipse {
            let c = ell.center();
            if ell.is_degenerate() {
                let tip = C64::from_polar(ell.semi_major(), ell.angle());
                svg.push_str(&format!(
                    "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#d62728\" \
                     stroke-width=\"{}\"/>\n",
                    fmt(c.re - tip.re),
                    fmt(c.im - tip.im),
                    fmt(c.re + tip.re),
                    fmt(c.im + tip.im),
                    fmt(stroke),
                ));
            } else {
                svg.push_str(&format!(
                    "    <ellipse cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" \
                     transform=\"rotate({} {} {})\" stroke=\"#d62728\" stroke-width=\"{}\" \
                     stroke-dasharray=\"{} {}\"/>\n",
                    fmt(c.re),
                    fmt(c.im),
                    fmt(ell.semi_major()),
                    fmt(ell.semi_minor()),
                    fmt(ell.angle().to_degrees()),
                    fmt(c.re),
                    fmt(c.im),
                    fmt(stroke),
                    fmt(4.0 * stroke),
                    fmt(2.5 * stroke),
                ));
            }
        }

        svg.push_str("  </g>\n</svg>\n");
        svg
    }
}
