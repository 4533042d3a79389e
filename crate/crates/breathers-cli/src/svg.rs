//! A small SVG writer: axes, polylines, circles and text. Coordinates print with fixed
//! precision so output bytes depend only on the data.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 480.0;
const MARGIN: f64 = 56.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    pub fn new(min: f64, max: f64) -> Self {
        if max > min {
            Self { min, max }
        } else {
            Self { min: min - 0.5, max: min + 0.5 }
        }
    }

    /// Smallest range holding `vals`, padded by `pad` of its width.
    pub fn covering(vals: impl IntoIterator<Item = f64>, pad: f64) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in vals.into_iter().filter(|v| v.is_finite()) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return Self::new(-1.0, 1.0);
        }
        let w = (hi - lo).max(1e-12);
        Self::new(lo - pad * w, hi + pad * w)
    }
}

pub struct Plot {
    xr: Range,
    yr: Range,
    body: String,
}

impl Plot {
    pub fn new(title: &str, xlabel: &str, ylabel: &str, xr: Range, yr: Range) -> Self {
        let mut p = Self { xr, yr, body: String::new() };
        p.frame(title, xlabel, ylabel);
        p
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.xr.min) / (self.xr.max - self.xr.min) * (W - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        H - MARGIN - (y - self.yr.min) / (self.yr.max - self.yr.min) * (H - 2.0 * MARGIN)
    }

    fn frame(&mut self, title: &str, xlabel: &str, ylabel: &str) {
        let (l, r, t, b) = (MARGIN, W - MARGIN, MARGIN, H - MARGIN);
        let _ = writeln!(self.body, r#"<rect x="{l:.2}" y="{t:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#, r - l, b - t);
        self.text(W / 2.0, 28.0, title, 16, "middle");
        self.text(W / 2.0, H - 14.0, xlabel, 13, "middle");
        let _ = writeln!(
            self.body,
            r#"<text x="16" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
            H / 2.0,
            H / 2.0,
            escape(ylabel)
        );
        for (v, anchor_x) in [(self.xr.min, l), (self.xr.max, r)] {
            self.text(anchor_x, b + 16.0, &tick(v), 11, "middle");
        }
        for (v, anchor_y) in [(self.yr.min, b), (self.yr.max, t)] {
            self.text(l - 6.0, anchor_y + 4.0, &tick(v), 11, "end");
        }
    }

    fn text(&mut self, x: f64, y: f64, s: &str, size: u32, anchor: &str) {
        let _ = writeln!(self.body, r#"<text x="{x:.2}" y="{y:.2}" font-size="{size}" text-anchor="{anchor}">{}</text>"#, escape(s));
    }

    /// Polyline in data coordinates, clipped to the axes by dropping outside points.
    pub fn polyline(&mut self, pts: &[(f64, f64)], color: &str, width: f64) {
        let inside = |p: &&(f64, f64)| {
            let (x, y) = **p;
            x >= self.xr.min && x <= self.xr.max && y >= self.yr.min && y <= self.yr.max && x.is_finite() && y.is_finite()
        };
        let coords: Vec<String> = pts.iter().filter(inside).map(|&(x, y)| format!("{:.2},{:.2}", self.px(x), self.py(y))).collect();
        if coords.len() > 1 {
            let _ = writeln!(self.body, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}"/>"#, coords.join(" "));
        }
    }

    pub fn circle(&mut self, x: f64, y: f64, r: f64, color: &str) {
        if x >= self.xr.min && x <= self.xr.max && y >= self.yr.min && y <= self.yr.max {
            let _ = writeln!(self.body, r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{color}"/>"#, self.px(x), self.py(y));
        }
    }

    /// Legend entry `k` (top-right, stacked).
    pub fn legend(&mut self, k: usize, color: &str, label: &str) {
        let y = MARGIN + 16.0 + 16.0 * k as f64;
        let x = W - MARGIN - 150.0;
        let _ = writeln!(self.body, r#"<rect x="{x:.2}" y="{:.2}" width="10" height="10" fill="{color}"/>"#, y - 9.0);
        self.text(x + 16.0, y, label, 11, "start");
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn tick(v: f64) -> String {
    if v.abs() >= 1e4 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.1e}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
