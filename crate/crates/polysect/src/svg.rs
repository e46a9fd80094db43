//! SVG 1.1 renderings of planar results.

use std::fmt::Write;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 0.05;

enum Item {
    Polygon { points: Vec<[f64; 2]>, class: &'static str },
    Dots { points: Vec<[f64; 2]>, class: &'static str },
    Labels { points: Vec<[f64; 2]>, prefix: &'static str },
}

/// A planar figure drawn in a fixed viewport fitted to its bounding box.
#[derive(Default)]
pub struct Figure {
    title: String,
    items: Vec<Item>,
}

impl Figure {
    pub fn new(title: &str) -> Self {
        Figure {
            title: title.to_string(),
            items: Vec::new(),
        }
    }

    pub fn polygon(mut self, points: Vec<[f64; 2]>, class: &'static str) -> Self {
        self.items.push(Item::Polygon { points, class });
        self
    }

    pub fn dots(mut self, points: Vec<[f64; 2]>, class: &'static str) -> Self {
        self.items.push(Item::Dots { points, class });
        self
    }

    /// Labels `prefix0, prefix1, …` in the given order.
    pub fn labels(mut self, points: Vec<[f64; 2]>, prefix: &'static str) -> Self {
        self.items.push(Item::Labels { points, prefix });
        self
    }

    fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for item in &self.items {
            let pts = match item {
                Item::Polygon { points, .. } | Item::Dots { points, .. } | Item::Labels { points, .. } => points,
            };
            for p in pts {
                for k in 0..2 {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
        }
        if lo[0] > hi[0] {
            return ([-1.0, -1.0], [1.0, 1.0]);
        }
        (lo, hi)
    }

    pub fn render(&self) -> String {
        let (lo, hi) = self.bounds();
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
        let pad = span * MARGIN;
        let scale = SIZE / (span + 2.0 * pad);
        let cx = (lo[0] + hi[0]) / 2.0;
        let cy = (lo[1] + hi[1]) / 2.0;
        // y grows downward in SVG.
        let map = |p: &[f64; 2]| [SIZE / 2.0 + (p[0] - cx) * scale, SIZE / 2.0 - (p[1] - cy) * scale];

        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">",
            s = SIZE
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        out.push_str(
            "<style>.body{fill:#dde6f0;stroke:#1f3b57;stroke-width:1.5}.sample{fill:#1f3b57}\
             .witness{fill:#c0392b}.label{font:12px sans-serif;fill:#111}</style>\n",
        );
        for item in &self.items {
            match item {
                Item::Polygon { points, class } => {
                    let pts: Vec<String> = points
                        .iter()
                        .map(|p| {
                            let q = map(p);
                            format!("{:.3},{:.3}", q[0], q[1])
                        })
                        .collect();
                    let _ = writeln!(out, "<polygon class=\"{class}\" points=\"{}\"/>", pts.join(" "));
                }
                Item::Dots { points, class } => {
                    for p in points {
                        let q = map(p);
                        let _ = writeln!(out, "<circle class=\"{class}\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"2.5\"/>", q[0], q[1]);
                    }
                }
                Item::Labels { points, prefix } => {
                    for (i, p) in points.iter().enumerate() {
                        let q = map(p);
                        let _ = writeln!(
                            out,
                            "<text class=\"label\" x=\"{:.3}\" y=\"{:.3}\">{prefix}{i}</text>",
                            q[0] + 4.0,
                            q[1] - 4.0
                        );
                    }
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
