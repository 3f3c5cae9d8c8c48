//! SVG figures built only from computed objects.
//!
//! Body units map to 100 SVG units, `y` points up in body coordinates, and
//! the drawing is padded by 5% of its extent on every side.

use std::fmt::Write as _;
use std::path::Path;

use crate::format::fmt_sig;
use crate::geom::{AngularSet, Body, BoundaryPiece, Point2};
use crate::incircle::chebyshev_incircle;
use crate::io::{write_atomic, IoError};
use crate::lemma::LemmaCertificate;
use crate::marking::{marked_set, MarkedSet};
use crate::Result;

pub const SCALE: f64 = 100.0;
pub const PADDING: f64 = 0.05;
/// Largest angular step when tracing a marked interval along the boundary.
const TRACE_STEP: f64 = 0.5 * std::f64::consts::PI / 180.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Label {
    pub at: Point2,
    pub text: String,
}

/// Boundary directions about `center` drawn as red strokes on `∂K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Marks {
    pub center: Point2,
    pub set: AngularSet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub body: Body,
    pub incircle: Option<Circle>,
    /// Circle through the configuration's vertices.
    pub outer: Option<Circle>,
    pub marks: Option<Marks>,
    pub polygon: Vec<Point2>,
    pub points: Vec<Point2>,
    pub labels: Vec<Label>,
}

impl Scene {
    pub fn new(body: Body) -> Self {
        Self { body, incircle: None, outer: None, marks: None, polygon: Vec::new(), points: Vec::new(), labels: Vec::new() }
    }

    /// Body plus its incircle (first candidate center) and an `r` label.
    pub fn with_incircle(body: Body) -> Result<Self> {
        let inc = chebyshev_incircle(&body)?;
        let center = crate::incircle::candidate_centers(&body)?[0];
        let mut scene = Scene::new(body);
        scene.labels.push(Label { at: center, text: format!("r = {}", fmt_sig(inc.r, 6)) });
        scene.incircle = Some(Circle { center, radius: inc.r });
        Ok(scene)
    }

    pub fn add_marked(&mut self, center: Point2, m: &MarkedSet) {
        self.marks = Some(Marks { center, set: m.marked.clone() });
        self.labels.push(Label {
            at: center,
            text: format!("R = {}, \u{3b1} = {}", fmt_sig(m.radius, 6), fmt_sig(m.alpha, 6)),
        });
    }

    /// Body, incircle, the configuration polygon, its circumcircle and the
    /// marks at the certificate's `R`.
    pub fn from_certificate(cert: &LemmaCertificate) -> Result<Self> {
        let mut scene = Scene::new(cert.body.clone());
        let r = cert.noncover.body_inradius;
        scene.incircle = Some(Circle { center: cert.center, radius: r });
        scene.labels.push(Label { at: cert.center, text: format!("r = {}", fmt_sig(r, 6)) });
        scene.outer = Some(Circle { center: cert.center, radius: cert.params.radius });
        scene.polygon = cert.points.points.clone();
        scene.points = cert.points.points.clone();
        let m = marked_set(&cert.body, cert.center, cert.params.radius)?;
        scene.add_marked(cert.center, &m);
        Ok(scene)
    }

    fn bounds(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |p: Point2, pad: f64| {
            lo.x = lo.x.min(p.x - pad);
            lo.y = lo.y.min(p.y - pad);
            hi.x = hi.x.max(p.x + pad);
            hi.y = hi.y.max(p.y + pad);
        };
        for &v in self.body.core() {
            grow(v, self.body.rho());
        }
        for c in self.incircle.iter().chain(self.outer.iter()) {
            grow(c.center, c.radius);
        }
        for &p in self.polygon.iter().chain(self.points.iter()) {
            grow(p, 0.0);
        }
        (lo, hi)
    }

    pub fn to_svg(&self) -> String {
        let (lo, hi) = self.bounds();
        let ext = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let pad = PADDING * ext;
        let (x0, y1) = (lo.x - pad, hi.y + pad);
        let w = (hi.x - lo.x + 2.0 * pad) * SCALE;
        let h = (hi.y - lo.y + 2.0 * pad) * SCALE;
        let tx = |p: Point2| ((p.x - x0) * SCALE, (y1 - p.y) * SCALE);
        let num = |x: f64| fmt_sig(x, 12);
        let pt = |p: Point2| {
            let (x, y) = tx(p);
            format!("{} {}", num(x), num(y))
        };

        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = num(w),
            h = num(h)
        );

        let pieces = self.body.boundary();
        let mut d = String::new();
        if let Some(first) = pieces.first() {
            let _ = write!(d, "M {}", pt(first.start_point()));
            for piece in &pieces {
                match *piece {
                    BoundaryPiece::Segment { b, .. } => {
                        let _ = write!(d, " L {}", pt(b));
                    }
                    BoundaryPiece::Arc { radius, sweep, to, .. } => {
                        let large = u8::from(sweep > std::f64::consts::PI);
                        let rr = num(radius * SCALE);
                        let _ = write!(d, " A {rr} {rr} 0 {large} 0 {}", pt(to));
                    }
                }
            }
            d.push_str(" Z");
        }
        let _ = writeln!(s, r#"<path class="body" d="{d}" fill="none" stroke="black" stroke-width="1.5"/>"#);

        if !self.polygon.is_empty() {
            let mut d = format!("M {}", pt(self.polygon[0]));
            for &p in &self.polygon[1..] {
                let _ = write!(d, " L {}", pt(p));
            }
            d.push_str(" Z");
            let _ = writeln!(
                s,
                r#"<path class="polygon" d="{d}" fill="none" stroke="gray" stroke-width="0.75" stroke-dasharray="3 2"/>"#
            );
        }
        if let Some(c) = &self.incircle {
            let (x, y) = tx(c.center);
            let _ = writeln!(
                s,
                r#"<circle class="incircle" cx="{}" cy="{}" r="{}" fill="none" stroke="blue" stroke-width="1"/>"#,
                num(x),
                num(y),
                num(c.radius * SCALE)
            );
        }
        if let Some(c) = &self.outer {
            let (x, y) = tx(c.center);
            let _ = writeln!(
                s,
                r#"<circle class="outer" cx="{}" cy="{}" r="{}" fill="none" stroke="gray" stroke-width="0.5"/>"#,
                num(x),
                num(y),
                num(c.radius * SCALE)
            );
        }
        if let Some(m) = &self.marks {
            for arc in m.set.arcs() {
                let steps = ((arc.length / TRACE_STEP).ceil() as usize).max(1);
                let mut d = String::new();
                for i in 0..=steps {
                    let phi = arc.start + arc.length * i as f64 / steps as f64;
                    let rho = self.body.radial_distance_unchecked(m.center, phi);
                    let p = Point2::polar(m.center, rho, phi);
                    let _ = write!(d, "{}{}", if i == 0 { "M " } else { " L " }, pt(p));
                }
                let _ = writeln!(
                    s,
                    r#"<path class="marked" d="{d}" fill="none" stroke="red" stroke-width="3"/>"#
                );
            }
        }
        for &p in &self.points {
            let (x, y) = tx(p);
            let _ = writeln!(s, r#"<circle class="point" cx="{}" cy="{}" r="2" fill="black"/>"#, num(x), num(y));
        }
        for (i, l) in self.labels.iter().enumerate() {
            let (x, y) = tx(l.at);
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10">{}</text>"#,
                num(x + 4.0),
                num(y - 4.0 + 12.0 * i as f64),
                escape(&l.text)
            );
        }
        s.push_str("</svg>\n");
        s
    }

    pub fn write(&self, path: &Path) -> std::result::Result<(), IoError> {
        write_atomic(path, self.to_svg().as_bytes())
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::samples::square2;

    #[test]
    fn incircle_only_scene() {
        let svg = Scene::with_incircle(square2()).unwrap().to_svg();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(" Z\""));
    }

    #[test]
    fn marked_square_has_four_red_strokes() {
        let mut scene = Scene::with_incircle(square2()).unwrap();
        let m = marked_set(&square2(), Point2::ORIGIN, 1.25).unwrap();
        scene.add_marked(Point2::ORIGIN, &m);
        let svg = scene.to_svg();
        assert_eq!(svg.matches(r#"class="marked""#).count(), 4);
        assert_eq!(svg, scene.to_svg());
    }
}
