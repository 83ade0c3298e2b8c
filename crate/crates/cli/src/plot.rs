//! Orthographic SVG views of the Bloch sphere.
//!
//! The front view looks along `+y` at the x–z plane, so `y > 0` is the far
//! hemisphere. The right view looks along `-x` at the y–z plane, so `x < 0`
//! is the far hemisphere. North is up in both.

use std::fmt::Write;

use stellar_core::{SetLabel, Star};

use crate::files::PlotPoint;

const SIZE: f64 = 400.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 160.0;
const MARKER: f64 = 4.5;
const RED: &str = "#c0392b";
const PURPLE: &str = "#7d3c98";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Front,
    Right,
}

impl View {
    pub fn name(self) -> &'static str {
        match self {
            View::Front => "front",
            View::Right => "right",
        }
    }

    /// Screen position and whether the point sits on the far hemisphere.
    pub fn project(self, theta: f64, phi: f64) -> (f64, f64, bool) {
        let [x, y, z] = Star::new(theta, phi, 1).unit_vector();
        let (horizontal, hidden) = match self {
            View::Front => (x, y > 0.0),
            View::Right => (y, x < 0.0),
        };
        (CENTER + RADIUS * horizontal, CENTER - RADIUS * z, hidden)
    }
}

fn marker(out: &mut String, set: SetLabel, x: f64, y: f64, hidden: bool) {
    let dash = if hidden {
        r#" stroke-dasharray="2,1.5""#
    } else {
        ""
    };
    match set {
        SetLabel::Upper => {
            let fill = if hidden { "none" } else { RED };
            writeln!(
                out,
                r#"<circle class="upper" cx="{x:.3}" cy="{y:.3}" r="{MARKER:.3}" fill="{fill}" stroke="{RED}" stroke-width="1.2"{dash}/>"#
            )
        }
        SetLabel::Lower => writeln!(
            out,
            r#"<circle class="lower" cx="{x:.3}" cy="{y:.3}" r="{MARKER:.3}" fill="none" stroke="{RED}" stroke-width="1.2"{dash}/>"#
        ),
        SetLabel::Pseudo => {
            let (x0, x1, y0, y1) = (x - MARKER, x + MARKER, y - MARKER, y + MARKER);
            writeln!(
                out,
                r#"<path class="pseudo" d="M{x0:.3},{y0:.3} L{x1:.3},{y1:.3} M{x0:.3},{y1:.3} L{x1:.3},{y0:.3}" stroke="{PURPLE}" stroke-width="1.5" fill="none"{dash}/>"#
            )
        }
    }
    .expect("writing to a String");
}

/// Renders the points in input order.
pub fn render(points: &[PlotPoint], view: View) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:.0}" height="{SIZE:.0}" viewBox="0 0 {SIZE:.0} {SIZE:.0}">"#
    );
    let _ = writeln!(w, "<title>Bloch sphere, {} view</title>", view.name());
    let _ = writeln!(w, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        w,
        r##"<circle cx="{CENTER:.3}" cy="{CENTER:.3}" r="{RADIUS:.3}" fill="none" stroke="#333333" stroke-width="1"/>"##
    );
    let (left, right, top, bottom) = (
        CENTER - RADIUS,
        CENTER + RADIUS,
        CENTER - RADIUS,
        CENTER + RADIUS,
    );
    let _ = writeln!(
        w,
        r##"<path d="M{left:.3},{CENTER:.3} L{right:.3},{CENTER:.3} M{CENTER:.3},{top:.3} L{CENTER:.3},{bottom:.3}" stroke="#999999" stroke-width="0.5" stroke-dasharray="3,3"/>"##
    );
    for &(set, theta, phi, multiplicity) in points {
        let (x, y, hidden) = view.project(theta, phi);
        marker(w, set, x, y, hidden);
        if multiplicity > 1 {
            let (tx, ty) = (x + MARKER + 2.0, y - MARKER);
            let _ = writeln!(
                w,
                r#"<text x="{tx:.3}" y="{ty:.3}" font-size="10">×{multiplicity}</text>"#
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
