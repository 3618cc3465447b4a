//! Static SVG pictures of bodies, regions and points.

use std::fmt::Write;

use aip_core::math::vec2;
use aip_core::Vec2;

const SIZE: f64 = 480.0;
const PAD: f64 = 16.0;

#[derive(Default)]
pub struct Scene {
    outlines: Vec<(Vec<Vec2>, &'static str)>,
    points: Vec<(Vec2, &'static str)>,
}

impl Scene {
    pub fn outline(&mut self, pts: &[Vec2], color: &'static str) -> &mut Scene {
        self.outlines.push((pts.to_vec(), color));
        self
    }

    pub fn point(&mut self, p: Vec2, color: &'static str) -> &mut Scene {
        self.points.push((p, color));
        self
    }

    pub fn render(&self) -> String {
        let all = self.outlines.iter().flat_map(|o| o.0.iter()).chain(self.points.iter().map(|p| &p.0));
        let (mut lo, mut hi) = (vec2(f64::INFINITY, f64::INFINITY), vec2(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for v in all {
            lo = vec2(lo.x.min(v.x), lo.y.min(v.y));
            hi = vec2(hi.x.max(v.x), hi.y.max(v.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        let scale = if span.is_finite() && span > 0.0 { (SIZE - 2.0 * PAD) / span } else { 1.0 };
        // y grows downwards in SVG
        let px = |v: Vec2| (PAD + (v.x - lo.x) * scale, SIZE - PAD - (v.y - lo.y) * scale);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for (pts, color) in &self.outlines {
            let coords: Vec<String> = pts
                .iter()
                .map(|&v| {
                    let (x, y) = px(v);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(
                s,
                r#"<polygon points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                coords.join(" ")
            );
        }
        for &(p, color) in &self.points {
            let (x, y) = px(p);
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#);
        }
        s.push_str("</svg>\n");
        s
    }
}
